//! Per-link and end-to-end SNR CDFs and the outage probability.
//!
//! A decode-and-forward hop pair has end-to-end SNR ρ_e = min(ρ_1, ρ_2) with
//! independent hops, so every case reduces to combining two per-link CDFs:
//! F_e2e = 1 - (1-F_1)(1-F_2). Three per-link evaluators are provided:
//!
//! * [`cdf_link_bm_closed`]: the closed-form misaligned-link CDF, a finite
//!   sum of upper incomplete gamma terms with (possibly negative) first
//!   argument (αk - ζ)/α. Requires integer μ.
//! * [`cdf_link_nobm`]: the misalignment-free link CDF, a single regularized
//!   incomplete gamma.
//! * [`cdf_link_quadrature`]: the reference oracle, adaptive quadrature of
//!   the product-distribution integral. Accepts any real μ ≥ 1.
//!
//! The closed form is evaluated term-by-term in log space so the
//! z^{ζ/α}·Γ((αk-ζ)/α, z) products survive parameter ranges where either
//! factor alone would overflow.

use serde::{Deserialize, Serialize};

use crate::atmosphere::{self, Environment};
use crate::channel::{self, LinkConfig};
use crate::mcsim::{self, McConfig};
use crate::quad;
use crate::specfun;

/// Absolute tolerance for the product-distribution quadrature oracle.
pub const QUAD_ABS_TOL: f64 = 1e-10;
/// Relative tolerance used alongside the absolute one.
pub const QUAD_REL_TOL: f64 = 1e-10;

/// A full two-hop scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub link1: LinkConfig,
    pub link2: LinkConfig,
    pub environment: Environment,
    /// Outage threshold ρ_th, linear (converted from dB at parse time).
    pub snr_threshold: f64,
}

impl Default for Scenario {
    fn default() -> Self {
        Self {
            link1: LinkConfig::default(),
            link2: LinkConfig::default(),
            environment: Environment::standard(),
            snr_threshold: 1.0,
        }
    }
}

/// Which hops carry beam misalignment; implied by the configs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MisalignmentCase {
    Both,
    FirstOnly,
    SecondOnly,
    Neither,
}

impl Scenario {
    pub fn validate(&self) -> Result<(), OutageError> {
        self.link1.validate()?;
        self.link2.validate()?;
        self.environment.validate()?;
        if !(self.snr_threshold >= 0.0) || !self.snr_threshold.is_finite() {
            return Err(OutageError::BadThreshold(self.snr_threshold));
        }
        Ok(())
    }

    pub fn misalignment_case(&self) -> MisalignmentCase {
        match (
            self.link1.misalignment.is_some(),
            self.link2.misalignment.is_some(),
        ) {
            (true, true) => MisalignmentCase::Both,
            (true, false) => MisalignmentCase::FirstOnly,
            (false, true) => MisalignmentCase::SecondOnly,
            (false, false) => MisalignmentCase::Neither,
        }
    }
}

/// Evaluation method for the outage probability.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Quadrature,
    MonteCarlo,
}

impl Method {
    pub fn label(&self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::Quadrature => "quadrature",
            Method::MonteCarlo => "monte_carlo",
        }
    }
}

/// An outage probability with its provenance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OutageResult {
    /// Outage probability in [0, 1].
    pub op: f64,
    pub method: Method,
    /// Standard error; present iff `method == MonteCarlo`.
    pub stderr: Option<f64>,
}

/// Numerical health counters accumulated during one evaluation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct EvalDiagnostics {
    /// Closed-form CDF values that fell outside [0,1] and were clamped.
    pub clamp_events: u32,
    /// Special-function or quadrature calls that exhausted their budget.
    pub nonconverged_calls: u32,
    /// Hops whose carrier frequency lies outside the fitted 275-425 GHz band.
    pub band_warnings: u32,
}

impl EvalDiagnostics {
    pub fn merge(&mut self, other: &EvalDiagnostics) {
        self.clamp_events += other.clamp_events;
        self.nonconverged_calls += other.nonconverged_calls;
        self.band_warnings += other.band_warnings;
    }

    pub fn is_clean(&self) -> bool {
        self.clamp_events == 0 && self.nonconverged_calls == 0 && self.band_warnings == 0
    }
}

/// An outage result plus the diagnostics gathered while producing it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Evaluation {
    pub result: OutageResult,
    pub diag: EvalDiagnostics,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OutageError {
    #[error("snr_threshold must be a finite value >= 0, got {0}")]
    BadThreshold(f64),
    #[error("link has no misalignment parameters; use the misalignment-free CDF")]
    MissingMisalignment,
    #[error("closed-form evaluation requires integer fading_mu, got {0}")]
    NonIntegerMu(f64),
    #[error("monte_carlo method requires a Monte-Carlo configuration")]
    MissingMcConfig,
    #[error(transparent)]
    Channel(#[from] channel::ChannelError),
    #[error(transparent)]
    Atmosphere(#[from] atmosphere::AtmosphereError),
    #[error(transparent)]
    SpecFun(#[from] specfun::SpecFunError),
    #[error(transparent)]
    Quad(#[from] quad::QuadError),
}

/// Series combination of two independent per-link CDFs:
/// 1 - (1-F1)(1-F2), computed as F1 + F2 - F1·F2 so deep-tail values keep
/// their relative precision.
pub fn combine_links(f1: f64, f2: f64) -> f64 {
    f1 + f2 - f1 * f2
}

// ---------------------------------------------------------------------------
// Per-link CDFs, parameterized by the mean SNR directly.
// ---------------------------------------------------------------------------

/// Closed-form CDF of ρ = ρ̄ (h_f h_m)² at `x`, for a link with misalignment
/// and integer μ:
///
/// F(x) = 1 - Σ_{k=0}^{μ-1} (ζ/α) z^{ζ/α} Γ((αk-ζ)/α, z) / k!,
/// z = μ S_o^{-α} x^{α/2} / (ρ̄^{α/2} ĥ^α).
///
/// Output clamped to [0,1] with the clamp counted; x = 0 returns the
/// probabilistic limit 0 instead of evaluating Γ(·, 0).
pub fn cdf_link_bm_closed_with_mean_snr(
    x: f64,
    link: &LinkConfig,
    mean_snr: f64,
    diag: &mut EvalDiagnostics,
) -> Result<f64, OutageError> {
    let mp = link
        .misalignment
        .as_ref()
        .ok_or(OutageError::MissingMisalignment)?;
    if !link.has_integer_mu() {
        return Err(OutageError::NonIntegerMu(link.fading_mu));
    }
    if x <= 0.0 {
        return Ok(0.0);
    }
    let alpha = link.fading_alpha;
    let mu = link.fading_mu;
    let hhat = link.fading_hhat;
    let t = mp.zeta / alpha;

    // z = μ S_o^{-α} x^{α/2} / (ρ̄^{α/2} ĥ^α), assembled in log space.
    let ln_z = mu.ln() - alpha * mp.s_o.ln() + 0.5 * alpha * (x / mean_snr).ln()
        - alpha * hhat.ln();
    let z = ln_z.exp();

    let mut survival = 0.0_f64;
    for k in 0..(mu as u32) {
        let a_k = k as f64 - t;
        let g = specfun::ln_upper_inc_gamma(a_k, z)?;
        if !g.converged {
            diag.nonconverged_calls += 1;
        }
        let ln_term = t.ln() + t * ln_z + g.value - specfun::ln_gamma(k as f64 + 1.0);
        survival += ln_term.exp();
    }

    let raw = 1.0 - survival;
    if !(0.0..=1.0).contains(&raw) {
        diag.clamp_events += 1;
    }
    Ok(raw.clamp(0.0, 1.0))
}

/// Misalignment-free link CDF at `x`:
/// F(x) = F_fading(√(x/ρ̄)) = P(μ, μ (x/ρ̄)^{α/2} / ĥ^α).
pub fn cdf_link_nobm_with_mean_snr(x: f64, link: &LinkConfig, mean_snr: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let envelope = (x / mean_snr).sqrt();
    let z = link.fading_mu * (envelope / link.fading_hhat).powf(link.fading_alpha);
    specfun::reg_lower_inc_gamma(link.fading_mu, z)
        .map(|r| r.value)
        .unwrap_or(f64::NAN)
}

/// Reference per-link CDF for a misaligned hop by adaptive quadrature of
///
/// F(x) = ∫_0^{S_o} F_fading(√(x/ρ̄)/τ) f_misalignment(τ) dτ
///      = ∫_0^1 F_fading(√(x/ρ̄) / (S_o u^{1/ζ})) du,
///
/// where the substitution u = (τ/S_o)^ζ removes the power-law endpoint.
pub fn cdf_link_quadrature_with_mean_snr(
    x: f64,
    link: &LinkConfig,
    mean_snr: f64,
    diag: &mut EvalDiagnostics,
) -> Result<f64, OutageError> {
    let mp = link
        .misalignment
        .as_ref()
        .ok_or(OutageError::MissingMisalignment)?;
    if x <= 0.0 {
        return Ok(0.0);
    }
    let s = (x / mean_snr).sqrt();
    let result = quad::integrate(
        |u| {
            if u <= 0.0 {
                return 1.0; // h_m -> 0 drives the fading argument to ∞
            }
            let tau = mp.s_o * u.powf(1.0 / mp.zeta);
            channel::fading_cdf(s / tau, link)
        },
        0.0,
        1.0,
        QUAD_ABS_TOL,
        QUAD_REL_TOL,
    )?;
    if !result.converged {
        diag.nonconverged_calls += 1;
    }
    Ok(result.value.clamp(0.0, 1.0))
}

/// Reference CDF for a misalignment-free hop by adaptive quadrature of the
/// fading PDF itself (kept independent of the incomplete-gamma closed form).
pub fn cdf_link_nobm_quadrature_with_mean_snr(
    x: f64,
    link: &LinkConfig,
    mean_snr: f64,
    diag: &mut EvalDiagnostics,
) -> Result<f64, OutageError> {
    if x <= 0.0 {
        return Ok(0.0);
    }
    let s = (x / mean_snr).sqrt();
    let result = quad::integrate(|v| channel::fading_pdf(v, link), 0.0, s, 1e-300, 1e-11)?;
    if !result.converged {
        diag.nonconverged_calls += 1;
    }
    Ok(result.value.clamp(0.0, 1.0))
}

// ---------------------------------------------------------------------------
// Spec-level wrappers that compute ρ̄ from the link and environment.
// ---------------------------------------------------------------------------

/// Closed-form misaligned-link CDF with ρ̄ composed from the link budget.
pub fn cdf_link_bm_closed(
    x: f64,
    link: &LinkConfig,
    env: &Environment,
    diag: &mut EvalDiagnostics,
) -> Result<f64, OutageError> {
    let rho = channel::mean_snr(link, env);
    cdf_link_bm_closed_with_mean_snr(x, link, rho, diag)
}

/// Misalignment-free link CDF with ρ̄ composed from the link budget.
pub fn cdf_link_nobm(x: f64, link: &LinkConfig, env: &Environment) -> f64 {
    cdf_link_nobm_with_mean_snr(x, link, channel::mean_snr(link, env))
}

/// Quadrature-oracle link CDF with ρ̄ composed from the link budget.
pub fn cdf_link_quadrature(
    x: f64,
    link: &LinkConfig,
    env: &Environment,
    diag: &mut EvalDiagnostics,
) -> Result<f64, OutageError> {
    let rho = channel::mean_snr(link, env);
    cdf_link_quadrature_with_mean_snr(x, link, rho, diag)
}

fn per_link_cdf(
    x: f64,
    link: &LinkConfig,
    env: &Environment,
    method: Method,
    diag: &mut EvalDiagnostics,
) -> Result<f64, OutageError> {
    if !atmosphere::is_in_band(link.frequency_hz) {
        diag.band_warnings += 1;
    }
    let rho = channel::mean_snr(link, env);
    match (method, link.misalignment.is_some()) {
        (Method::ClosedForm, true) => cdf_link_bm_closed_with_mean_snr(x, link, rho, diag),
        (Method::ClosedForm, false) => Ok(cdf_link_nobm_with_mean_snr(x, link, rho)),
        (Method::Quadrature, true) => cdf_link_quadrature_with_mean_snr(x, link, rho, diag),
        (Method::Quadrature, false) => cdf_link_nobm_quadrature_with_mean_snr(x, link, rho, diag),
        (Method::MonteCarlo, _) => unreachable!("Monte-Carlo is handled scenario-wide"),
    }
}

/// Outage probability OP = Pr(min(ρ_1, ρ_2) ≤ ρ_th).
///
/// `closed_form` and `quadrature` factor over the two links and combine with
/// [`combine_links`]; `monte_carlo` simulates the whole scenario and needs
/// `mc` to be provided.
pub fn outage_probability(
    scenario: &Scenario,
    method: Method,
    mc: Option<&McConfig>,
) -> Result<Evaluation, OutageError> {
    scenario.validate()?;
    let mut diag = EvalDiagnostics::default();
    match method {
        Method::MonteCarlo => {
            let cfg = mc.ok_or(OutageError::MissingMcConfig)?;
            for link in [&scenario.link1, &scenario.link2] {
                if !atmosphere::is_in_band(link.frequency_hz) {
                    diag.band_warnings += 1;
                }
            }
            let estimate = mcsim::estimate_op(scenario, cfg);
            Ok(Evaluation {
                result: OutageResult {
                    op: estimate.op_hat,
                    method,
                    stderr: estimate.stderr,
                },
                diag,
            })
        }
        _ => {
            if method == Method::ClosedForm {
                for link in [&scenario.link1, &scenario.link2] {
                    if !link.has_integer_mu() {
                        return Err(OutageError::NonIntegerMu(link.fading_mu));
                    }
                }
            }
            let x = scenario.snr_threshold;
            let f1 = per_link_cdf(x, &scenario.link1, &scenario.environment, method, &mut diag)?;
            let f2 = per_link_cdf(x, &scenario.link2, &scenario.environment, method, &mut diag)?;
            Ok(Evaluation {
                result: OutageResult {
                    op: combine_links(f1, f2),
                    method,
                    stderr: None,
                },
                diag,
            })
        }
    }
}
