//! Per-hop channel model: deterministic path gain, α-μ (generalized Gamma)
//! small-scale fading, power-law beam-misalignment fading, and the mean-SNR
//! composition used by the outage expressions.

use serde::{Deserialize, Serialize};

use crate::atmosphere::{self, Environment};
use crate::specfun;
use crate::SPEED_OF_LIGHT;

/// Beam geometry from which a misalignment shape parameter can be derived.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BeamGeometry {
    /// Equivalent beam width at the receiver plane, metres.
    pub beam_width_m: f64,
    /// Pointing-jitter standard deviation at the receiver plane, metres.
    pub jitter_sigma_m: f64,
}

/// Misalignment fading parameters for one hop: the collected fraction under
/// perfect alignment `s_o` and the power-law shape `zeta = w²/(4σ_s²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MisalignmentParams {
    /// Cap of the misalignment coefficient, in (0, 1].
    pub s_o: f64,
    /// Power-law shape; large values mean tight pointing.
    pub zeta: f64,
    /// Geometry the shape was derived from, when it was.
    pub derived_from: Option<BeamGeometry>,
}

impl MisalignmentParams {
    /// Direct (S_o, ζ) entry.
    pub fn from_zeta(s_o: f64, zeta: f64) -> Result<Self, ChannelError> {
        let mp = Self {
            s_o,
            zeta,
            derived_from: None,
        };
        mp.validate()?;
        Ok(mp)
    }

    /// (S_o, w, σ_s) entry with ζ = w²/(4σ_s²) derived.
    pub fn from_geometry(s_o: f64, beam_width_m: f64, jitter_sigma_m: f64) -> Result<Self, ChannelError> {
        if !(beam_width_m > 0.0) || !(jitter_sigma_m > 0.0) {
            return Err(ChannelError::NonPositive("beam geometry"));
        }
        let mp = Self {
            s_o,
            zeta: zeta_from_geometry(beam_width_m, jitter_sigma_m),
            derived_from: Some(BeamGeometry {
                beam_width_m,
                jitter_sigma_m,
            }),
        };
        mp.validate()?;
        Ok(mp)
    }

    pub fn validate(&self) -> Result<(), ChannelError> {
        if !(self.s_o > 0.0 && self.s_o <= 1.0) {
            return Err(ChannelError::CollectedFractionOutOfRange(self.s_o));
        }
        if !(self.zeta > 0.0) {
            return Err(ChannelError::NonPositive("zeta"));
        }
        if let Some(geom) = &self.derived_from {
            let derived = zeta_from_geometry(geom.beam_width_m, geom.jitter_sigma_m);
            if derived != self.zeta {
                return Err(ChannelError::GeometryMismatch {
                    zeta: self.zeta,
                    derived,
                });
            }
        }
        Ok(())
    }
}

/// Full description of one hop.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkConfig {
    /// Carrier frequency in Hz.
    pub frequency_hz: f64,
    /// Link distance in metres.
    pub distance_m: f64,
    /// Transmit antenna gain in dBi.
    pub tx_gain_db: f64,
    /// Receive antenna gain in dBi.
    pub rx_gain_db: f64,
    /// Fading nonlinearity α > 0.
    pub fading_alpha: f64,
    /// Fading clustering μ ≥ 1. The closed-form outage path requires an
    /// integer; quadrature and Monte-Carlo accept any real value.
    pub fading_mu: f64,
    /// α-root mean of the fading envelope, ĥ = E[X^α]^{1/α} > 0.
    pub fading_hhat: f64,
    /// Misalignment parameters; absent means the hop is misalignment-free.
    pub misalignment: Option<MisalignmentParams>,
    /// Transmit power over noise, P/N₀, in dB.
    pub tx_power_over_noise_db: f64,
}

impl Default for LinkConfig {
    /// Scenario defaults: 275 GHz, 10 m, 55 dBi both ends, α=1, μ=3, ĥ=1,
    /// misalignment-free, 50 dB power budget.
    fn default() -> Self {
        Self {
            frequency_hz: 275.0e9,
            distance_m: 10.0,
            tx_gain_db: 55.0,
            rx_gain_db: 55.0,
            fading_alpha: 1.0,
            fading_mu: 3.0,
            fading_hhat: 1.0,
            misalignment: None,
            tx_power_over_noise_db: 50.0,
        }
    }
}

/// Deterministic summary of one hop at given ambient conditions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HopStatistics {
    /// Deterministic path gain h^(l) (positive; exceeds 1 at high antenna gains).
    pub path_gain: f64,
    /// Mean SNR ρ̄ = (P/N₀) · (h^(l))².
    pub mean_snr: f64,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ChannelError {
    #[error("{0} must be positive")]
    NonPositive(&'static str),
    #[error("fading_mu must be >= 1, got {0}")]
    MuOutOfRange(f64),
    #[error("collected fraction s_o must lie in (0, 1], got {0}")]
    CollectedFractionOutOfRange(f64),
    #[error("zeta = {zeta} disagrees with the value {derived} derived from the stored geometry")]
    GeometryMismatch { zeta: f64, derived: f64 },
}

impl LinkConfig {
    pub fn validate(&self) -> Result<(), ChannelError> {
        if !(self.frequency_hz > 0.0) {
            return Err(ChannelError::NonPositive("frequency_hz"));
        }
        if !(self.distance_m > 0.0) {
            return Err(ChannelError::NonPositive("distance_m"));
        }
        if !(self.fading_alpha > 0.0) {
            return Err(ChannelError::NonPositive("fading_alpha"));
        }
        if !(self.fading_mu >= 1.0) {
            return Err(ChannelError::MuOutOfRange(self.fading_mu));
        }
        if !(self.fading_hhat > 0.0) {
            return Err(ChannelError::NonPositive("fading_hhat"));
        }
        if let Some(mp) = &self.misalignment {
            mp.validate()?;
        }
        Ok(())
    }

    /// Whether the closed-form outage path applies (integer μ).
    pub fn has_integer_mu(&self) -> bool {
        self.fading_mu == self.fading_mu.floor()
    }
}

fn db_to_linear(db: f64) -> f64 {
    10.0_f64.powf(db / 10.0)
}

/// Misalignment shape ζ = w²/(4σ_s²).
pub fn zeta_from_geometry(beam_width_m: f64, jitter_sigma_m: f64) -> f64 {
    let w2 = beam_width_m * beam_width_m;
    w2 / (4.0 * jitter_sigma_m * jitter_sigma_m)
}

/// Deterministic path gain with an explicit absorption coefficient:
/// h^(l) = c √(G_tx G_rx) / (4π f d) · exp(-β d / 2).
pub fn path_gain_with_beta(link: &LinkConfig, beta_per_m: f64) -> f64 {
    let g = (db_to_linear(link.tx_gain_db) * db_to_linear(link.rx_gain_db)).sqrt();
    let free_space = SPEED_OF_LIGHT * g
        / (4.0 * std::f64::consts::PI * link.frequency_hz * link.distance_m);
    free_space * (-0.5 * beta_per_m * link.distance_m).exp()
}

/// Deterministic path gain with β(f) taken from the absorption model.
pub fn path_gain(link: &LinkConfig, env: &Environment) -> f64 {
    path_gain_with_beta(link, atmosphere::absorption_coefficient(link.frequency_hz, env))
}

/// Mean SNR of the hop, ρ̄ = (P/N₀)_linear · (h^(l))².
pub fn mean_snr(link: &LinkConfig, env: &Environment) -> f64 {
    let g = path_gain(link, env);
    db_to_linear(link.tx_power_over_noise_db) * g * g
}

/// Both deterministic hop quantities at once.
pub fn hop_statistics(link: &LinkConfig, env: &Environment) -> HopStatistics {
    let path_gain = path_gain(link, env);
    HopStatistics {
        path_gain,
        mean_snr: db_to_linear(link.tx_power_over_noise_db) * path_gain * path_gain,
    }
}

/// α-μ fading envelope PDF,
/// f(x) = α μ^μ x^{αμ-1} / (ĥ^{αμ} Γ(μ)) · exp(-μ (x/ĥ)^α).
pub fn fading_pdf(x: f64, link: &LinkConfig) -> f64 {
    let (alpha, mu, hhat) = (link.fading_alpha, link.fading_mu, link.fading_hhat);
    if x < 0.0 {
        return 0.0;
    }
    let am = alpha * mu;
    if x == 0.0 {
        // x^{αμ-1} limit: finite only when αμ = 1.
        return if am == 1.0 {
            alpha * mu.powf(mu) / (hhat * specfun::ln_gamma(mu).exp())
        } else if am > 1.0 {
            0.0
        } else {
            f64::INFINITY
        };
    }
    let ln_pdf = alpha.ln() + mu * mu.ln() + (am - 1.0) * x.ln()
        - am * hhat.ln()
        - specfun::ln_gamma(mu)
        - mu * (x / hhat).powf(alpha);
    ln_pdf.exp()
}

/// α-μ fading envelope CDF, F(x) = P(μ, μ (x/ĥ)^α) (regularized lower
/// incomplete gamma).
pub fn fading_cdf(x: f64, link: &LinkConfig) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let z = link.fading_mu * (x / link.fading_hhat).powf(link.fading_alpha);
    specfun::reg_lower_inc_gamma(link.fading_mu, z)
        .map(|r| r.value)
        .unwrap_or(f64::NAN)
}

/// Misalignment fading PDF, f(x) = ζ x^{ζ-1} / S_o^ζ on [0, S_o].
pub fn misalignment_pdf(x: f64, mp: &MisalignmentParams) -> f64 {
    if x < 0.0 || x > mp.s_o {
        return 0.0;
    }
    mp.zeta * (x / mp.s_o).powf(mp.zeta - 1.0) / mp.s_o
}

/// Misalignment fading CDF: clamp((x/S_o)^ζ, 0, 1), the exact antiderivative
/// of the power-law PDF.
pub fn misalignment_cdf(x: f64, mp: &MisalignmentParams) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= mp.s_o {
        return 1.0;
    }
    (x / mp.s_o).powf(mp.zeta).clamp(0.0, 1.0)
}

/// Experimental: misalignment parameters from a circular receive aperture
/// illuminated by a Gaussian beam, following the standard equivalent-beam
/// construction: ν = √(π/2)·a/w_z, S_o = erf(ν)²,
/// w_eq² = w_z² √π erf(ν) / (2 ν exp(-ν²)). Not used by any default; the
/// parameter studies enter (S_o, w, σ_s) or (S_o, ζ) directly.
pub fn gaussian_beam_misalignment(
    aperture_radius_m: f64,
    beam_radius_m: f64,
    jitter_sigma_m: f64,
) -> Result<MisalignmentParams, ChannelError> {
    if !(aperture_radius_m > 0.0) || !(beam_radius_m > 0.0) {
        return Err(ChannelError::NonPositive("aperture/beam radius"));
    }
    let nu = (std::f64::consts::PI / 2.0).sqrt() * aperture_radius_m / beam_radius_m;
    let erf_nu = specfun::erf(nu);
    let s_o = erf_nu * erf_nu;
    let w_eq_sq = beam_radius_m * beam_radius_m * std::f64::consts::PI.sqrt() * erf_nu
        / (2.0 * nu * (-nu * nu).exp());
    MisalignmentParams::from_geometry(s_o, w_eq_sq.sqrt(), jitter_sigma_m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad;

    fn assert_rel(actual: f64, expected: f64, tol: f64) {
        let rel = ((actual - expected) / expected).abs();
        assert!(
            rel <= tol,
            "actual={actual:.17e} expected={expected:.17e} rel={rel:.3e}"
        );
    }

    fn unit_link(alpha: f64, mu: f64, hhat: f64) -> LinkConfig {
        LinkConfig {
            fading_alpha: alpha,
            fading_mu: mu,
            fading_hhat: hhat,
            ..LinkConfig::default()
        }
    }

    #[test]
    fn free_space_path_gain() {
        let link = LinkConfig {
            frequency_hz: 300.0e9,
            distance_m: 1.0,
            tx_gain_db: 0.0,
            rx_gain_db: 0.0,
            ..LinkConfig::default()
        };
        // c/(4π f): mpmath 7.9522419320615704e-5
        assert_rel(path_gain_with_beta(&link, 0.0), 7.9522419320615704e-5, 1e-13);
    }

    #[test]
    fn default_scenario_path_gain_and_mean_snr() {
        // mpmath through the full absorption chain: 2.7380028932422997,
        // mean SNR 749665.98434032039 at the 50 dB default budget.
        let link = LinkConfig::default();
        let env = Environment::standard();
        assert_rel(path_gain(&link, &env), 2.7380028932422997, 1e-10);
        assert_rel(mean_snr(&link, &env), 749665.98434032039, 1e-10);

        let stats = hop_statistics(&link, &env);
        assert!(stats.path_gain > 0.0 && stats.mean_snr > 0.0);
        assert_rel(stats.mean_snr, mean_snr(&link, &env), 1e-15);
    }

    #[test]
    fn doubling_distance_halves_free_space_gain() {
        let mut link = LinkConfig {
            distance_m: 1.0,
            ..LinkConfig::default()
        };
        let g1 = path_gain_with_beta(&link, 0.0);
        link.distance_m = 2.0;
        let g2 = path_gain_with_beta(&link, 0.0);
        assert_rel(g2, g1 / 2.0, 1e-14);
    }

    #[test]
    fn path_gain_monotone_in_distance_frequency_beta() {
        let env = Environment::standard();
        let mut link = LinkConfig::default();
        let mut prev = f64::INFINITY;
        for d in [1.0, 5.0, 10.0, 20.0, 50.0] {
            link.distance_m = d;
            let g = path_gain(&link, &env);
            assert!(g < prev);
            prev = g;
        }
        link = LinkConfig::default();
        prev = f64::INFINITY;
        for f in [275e9, 300e9, 350e9, 425e9] {
            link.frequency_hz = f;
            let g = path_gain_with_beta(&link, 1e-3);
            assert!(g < prev);
            prev = g;
        }
        link = LinkConfig::default();
        prev = f64::INFINITY;
        for beta in [0.0, 1e-4, 1e-3, 1e-2] {
            let g = path_gain_with_beta(&link, beta);
            assert!(g < prev);
            prev = g;
        }
    }

    #[test]
    fn fading_pdf_reductions() {
        // α=1, μ=1, ĥ=1: f(x) = e^{-x}
        let link = unit_link(1.0, 1.0, 1.0);
        for x in [0.0, 0.1, 1.0, 3.0] {
            assert_rel(fading_pdf(x, &link).max(1e-300), (-x).exp(), 1e-12);
        }
        // α=2, μ=1, ĥ=1: f(x) = 2x e^{-x²}
        let link = unit_link(2.0, 1.0, 1.0);
        for x in [0.2, 1.0, 2.0] {
            assert_rel(fading_pdf(x, &link), 2.0 * x * (-x * x).exp(), 1e-12);
        }
    }

    #[test]
    fn fading_pdf_normalizes() {
        for alpha in [1.0, 2.0, 3.0] {
            for mu in [1.0, 2.0, 3.0, 4.0] {
                for hhat in [0.5, 1.0, 2.0] {
                    let link = unit_link(alpha, mu, hhat);
                    let total = quad::integrate_half_line(|x| fading_pdf(x, &link), 1e-11, 1e-11)
                        .unwrap()
                        .value;
                    assert!(
                        (total - 1.0).abs() < 1e-8,
                        "pdf integral {total} at α={alpha}, μ={mu}, ĥ={hhat}"
                    );
                }
            }
        }
    }

    #[test]
    fn fading_cdf_values_and_limits() {
        let link = unit_link(1.0, 1.0, 1.0);
        assert_rel(fading_cdf(2.0, &link), 1.0 - (-2.0_f64).exp(), 1e-12);

        // mpmath: 0.57680991887315648468
        let link = unit_link(1.0, 3.0, 1.0);
        assert_rel(fading_cdf(1.0, &link), 0.57680991887315648468, 1e-12);
        assert_eq!(fading_cdf(0.0, &link), 0.0);
        assert!(fading_cdf(60.0, &link) > 1.0 - 1e-12);

        let mut prev = -1.0;
        for i in 0..200 {
            let v = fading_cdf(0.05 * i as f64, &link);
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn fading_cdf_derivative_matches_pdf() {
        let link = unit_link(2.0, 3.0, 1.3);
        let h = 1e-5;
        for i in 1..40 {
            let x = 0.1 * i as f64;
            let deriv = (fading_cdf(x + h, &link) - fading_cdf(x - h, &link)) / (2.0 * h);
            let pdf = fading_pdf(x, &link);
            assert!(
                (deriv - pdf).abs() <= 1e-6 * pdf.max(1.0),
                "x={x}: deriv={deriv} pdf={pdf}"
            );
        }
    }

    #[test]
    fn misalignment_cdf_examples() {
        let mp = MisalignmentParams::from_zeta(0.8, 1.0).unwrap();
        assert_eq!(misalignment_cdf(0.8, &mp), 1.0);
        assert_rel(misalignment_cdf(0.4, &mp), 0.5, 1e-14);

        // ζ = 6.25 (w = 5 σ_s): 2^{-6.25}; mpmath 0.013139006488339290
        let mp = MisalignmentParams::from_geometry(1.0, 0.05, 0.01).unwrap();
        assert_rel(misalignment_cdf(0.5, &mp), 0.013139006488339290, 1e-13);
    }

    #[test]
    fn misalignment_cdf_is_antiderivative_of_pdf() {
        let mp = MisalignmentParams::from_zeta(0.9, 2.5).unwrap();
        for x in [0.1, 0.3, 0.62, 0.9] {
            let integral = quad::integrate(|t| misalignment_pdf(t, &mp), 0.0, x, 1e-12, 1e-12)
                .unwrap()
                .value;
            assert_rel(integral, misalignment_cdf(x, &mp), 1e-9);
        }
    }

    #[test]
    fn zeta_examples() {
        assert_rel(zeta_from_geometry(0.02, 0.01), 1.0, 1e-15);
        assert_rel(zeta_from_geometry(0.05, 0.01), 6.25, 1e-15);
        assert_rel(zeta_from_geometry(0.05, 0.05), 0.25, 1e-15);
    }

    #[test]
    fn mean_snr_db_composition() {
        let mut link = LinkConfig {
            tx_power_over_noise_db: 0.0,
            ..LinkConfig::default()
        };
        link.tx_gain_db = 0.0;
        link.rx_gain_db = 0.0;
        // Force path gain 1 by hand: P/N=0 dB and g=1 → ρ̄ = 1.
        let g = 1.0;
        assert_rel(db_to_linear(link.tx_power_over_noise_db) * g * g, 1.0, 1e-15);
        link.tx_power_over_noise_db = 50.0;
        assert_rel(db_to_linear(link.tx_power_over_noise_db), 1e5, 1e-12);
    }

    #[test]
    fn validation_catches_bad_configs() {
        let link = LinkConfig {
            fading_mu: 0.5,
            ..LinkConfig::default()
        };
        assert!(matches!(link.validate(), Err(ChannelError::MuOutOfRange(_))));

        let link = LinkConfig {
            distance_m: -1.0,
            ..LinkConfig::default()
        };
        assert!(link.validate().is_err());

        assert!(MisalignmentParams::from_zeta(1.5, 1.0).is_err());
        assert!(MisalignmentParams::from_zeta(1.0, -2.0).is_err());
        assert!(MisalignmentParams::from_zeta(1.0, 6.25).is_ok());
    }

    #[test]
    fn gaussian_beam_helper_is_consistent() {
        let mp = gaussian_beam_misalignment(0.05, 0.05, 0.01).unwrap();
        assert!(mp.s_o > 0.0 && mp.s_o <= 1.0);
        let geom = mp.derived_from.unwrap();
        assert_eq!(mp.zeta, zeta_from_geometry(geom.beam_width_m, geom.jitter_sigma_m));
        // Aperture much larger than the beam: S_o -> 1.
        let wide = gaussian_beam_misalignment(1.0, 0.05, 0.01).unwrap();
        assert!(wide.s_o > 0.999999);
    }
}
