//! Seeded Monte-Carlo estimation of the outage probability by direct
//! simulation of the per-hop SNRs.
//!
//! Trials are partitioned into chunks; each chunk draws from its own ChaCha
//! stream selected by the chunk index, so the estimate is bit-identical for a
//! given `(seed, chunks)` pair regardless of how many worker threads run the
//! chunks. The reduction is an integer sum of chunk outage counts, which is
//! order-independent.

use rand::distributions::OpenClosed01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, Gamma};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::{self, LinkConfig, MisalignmentParams};
use crate::outage::Scenario;

/// Minimum trial count for which a standard error is reported.
pub const MIN_TRIALS_FOR_STDERR: u64 = 1_000;

/// Monte-Carlo run configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct McConfig {
    /// Total number of trials across all chunks.
    pub trials: u64,
    /// Base seed; combined with the chunk index to derive per-chunk streams.
    pub seed: u64,
    /// Number of independent chunks (each one RNG stream).
    pub chunks: u32,
}

impl Default for McConfig {
    fn default() -> Self {
        Self {
            trials: 1_000_000,
            seed: 42,
            chunks: 64,
        }
    }
}

/// Result of a Monte-Carlo estimation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McEstimate {
    /// Estimated outage probability.
    pub op_hat: f64,
    /// Binomial plug-in standard error √(p(1-p)/N); for an empty (or full)
    /// outage count the rule-of-three ceiling 3/N is reported instead.
    /// `None` when fewer than [`MIN_TRIALS_FOR_STDERR`] trials ran.
    pub stderr: Option<f64>,
    /// Number of trials actually executed.
    pub trials_used: u64,
}

/// One draw of the α-μ fading envelope: ĥ (G/μ)^{1/α} with G ~ Gamma(μ, 1).
pub fn sample_fading<R: Rng + ?Sized>(rng: &mut R, link: &LinkConfig) -> f64 {
    let gamma = Gamma::new(link.fading_mu, 1.0).expect("validated mu");
    let g: f64 = gamma.sample(rng);
    let normalized = g / link.fading_mu;
    if link.fading_alpha == 1.0 {
        link.fading_hhat * normalized
    } else {
        link.fading_hhat * normalized.powf(1.0 / link.fading_alpha)
    }
}

/// One draw of the misalignment coefficient: S_o U^{1/ζ}, the exact
/// inverse-CDF transform of the power law, with U uniform on (0, 1].
pub fn sample_misalignment<R: Rng + ?Sized>(rng: &mut R, mp: &MisalignmentParams) -> f64 {
    let u: f64 = rng.sample(OpenClosed01);
    mp.s_o * u.powf(1.0 / mp.zeta)
}

struct HopSampler {
    mean_snr: f64,
    alpha: f64,
    mu: f64,
    hhat: f64,
    misalignment: Option<MisalignmentParams>,
    gamma: Gamma<f64>,
}

impl HopSampler {
    fn new(link: &LinkConfig, mean_snr: f64) -> Self {
        Self {
            mean_snr,
            alpha: link.fading_alpha,
            mu: link.fading_mu,
            hhat: link.fading_hhat,
            misalignment: link.misalignment,
            gamma: Gamma::new(link.fading_mu, 1.0).expect("validated mu"),
        }
    }

    #[inline]
    fn sample_snr<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let g: f64 = self.gamma.sample(rng);
        let normalized = g / self.mu;
        let h_f = if self.alpha == 1.0 {
            self.hhat * normalized
        } else {
            self.hhat * normalized.powf(1.0 / self.alpha)
        };
        let h = match &self.misalignment {
            Some(mp) => {
                let u: f64 = rng.sample(OpenClosed01);
                h_f * mp.s_o * u.powf(1.0 / mp.zeta)
            }
            None => h_f,
        };
        self.mean_snr * h * h
    }
}

/// Sizes of each chunk: trials split as evenly as possible, first
/// `trials % chunks` chunks take one extra so the partition is exact.
fn chunk_sizes(trials: u64, chunks: u32) -> Vec<u64> {
    let chunks = chunks.max(1) as u64;
    let base = trials / chunks;
    let rem = trials % chunks;
    (0..chunks).map(|i| base + u64::from(i < rem)).collect()
}

/// Estimate OP = Pr(min(ρ_1, ρ_2) ≤ ρ_th) by direct simulation.
///
/// Deterministic for a fixed `(seed, chunks)` pair across runs and across
/// degrees of parallelism.
pub fn estimate_op(scenario: &Scenario, cfg: &McConfig) -> McEstimate {
    let env = &scenario.environment;
    let hop1 = HopSampler::new(&scenario.link1, channel::mean_snr(&scenario.link1, env));
    let hop2 = HopSampler::new(&scenario.link2, channel::mean_snr(&scenario.link2, env));
    let threshold = scenario.snr_threshold;

    let sizes = chunk_sizes(cfg.trials, cfg.chunks);
    debug_assert_eq!(sizes.iter().sum::<u64>(), cfg.trials);

    let outages: u64 = sizes
        .par_iter()
        .enumerate()
        .map(|(chunk_idx, &n)| {
            let mut rng = ChaCha12Rng::seed_from_u64(cfg.seed);
            rng.set_stream(chunk_idx as u64);
            let mut count = 0u64;
            for _ in 0..n {
                let rho1 = hop1.sample_snr(&mut rng);
                let rho2 = hop2.sample_snr(&mut rng);
                if rho1.min(rho2) <= threshold {
                    count += 1;
                }
            }
            count
        })
        .sum();

    let trials = cfg.trials;
    let op_hat = outages as f64 / trials as f64;
    let stderr = if trials >= MIN_TRIALS_FOR_STDERR {
        Some(if outages == 0 || outages == trials {
            3.0 / trials as f64
        } else {
            (op_hat * (1.0 - op_hat) / trials as f64).sqrt()
        })
    } else {
        None
    };
    McEstimate {
        op_hat,
        stderr,
        trials_used: trials,
    }
}

/// Two-sided Kolmogorov-Smirnov statistic of `samples` against `cdf`.
/// Sorts the slice in place.
pub fn ks_statistic<F: Fn(f64) -> f64>(samples: &mut [f64], cdf: F) -> f64 {
    samples.sort_by(|a, b| a.partial_cmp(b).expect("no NaN samples"));
    let n = samples.len() as f64;
    let mut d = 0.0_f64;
    for (i, &x) in samples.iter().enumerate() {
        let f = cdf(x);
        d = d.max(f - i as f64 / n).max((i + 1) as f64 / n - f);
    }
    d
}
