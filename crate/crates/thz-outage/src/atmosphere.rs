//! Molecular absorption coefficient β(f) for the 275-425 GHz band, with the
//! humidity model feeding it (saturated vapor pressure and water-vapor
//! mixing ratio).
//!
//! The model is two water-vapor resonance terms plus a cubic polynomial
//! background. The resonance denominator ships in two variants, selectable
//! via [`ResonanceForm`]: squared detuning `B_k + (f/c - δ_k)²`, and linear
//! detuning `B_k + (f/c - δ_k)`, which goes negative below each line center
//! and produces a pole inside the band. The squared form is the default
//! because it is the one whose in-band maximum lands near 383 GHz and stays
//! positive; the `validate` subcommand reports the comparison between both
//! so the difference stays visible.

use serde::{Deserialize, Serialize};

use crate::SPEED_OF_LIGHT;

/// Band over which the fit constants were derived.
pub const BAND_MIN_HZ: f64 = 275.0e9;
/// Upper edge of the fitted band.
pub const BAND_MAX_HZ: f64 = 425.0e9;

/// Fit constants of the absorption model, centralized and immutable.
#[derive(Debug, Clone, Copy)]
pub struct AbsorptionConstants {
    /// Resonance-strength and width fit constants g1..g10 (dimensionless).
    pub g: [f64; 10],
    /// Line-center wavenumbers δ1, δ2 in cm⁻¹.
    pub delta: [f64; 2],
    /// Background polynomial coefficients p0..p3 (units s⁰..s³ over m).
    pub p: [f64; 4],
    /// Buck-equation constants κ1..κ6 (hPa, -, hPa⁻¹, -, K, K).
    pub kappa: [f64; 6],
}

/// The one table of model constants.
pub const ABSORPTION_CONSTANTS: AbsorptionConstants = AbsorptionConstants {
    g: [
        0.2205, 0.1303, 0.0294, 2.014, 0.1702, 0.0303, 0.4093, 0.0925, 0.537, 0.0956,
    ],
    delta: [10.835, 12.664],
    p: [-6.36e-3, 9.06e-14, -3.94e-25, 5.54e-37],
    kappa: [6.1121, 1.0007, 3.46e-6, 17.502, 273.15, 32.18],
};

/// Which resonance denominator to use in the two Lorentzian-like terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResonanceForm {
    /// Squared detuning `B_k + (f/c - δ_k)²`. Positive over the whole band,
    /// in-band maximum near 383 GHz. The shipped default.
    #[default]
    Squared,
    /// Linear detuning `B_k + (f/c - δ_k)`. Has a pole just below each line
    /// center and negative values below it; retained so the comparison can
    /// be tabulated and reported, not for production use.
    Linear,
}

/// Ambient conditions driving the absorption model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Environment {
    /// Ambient temperature in kelvin.
    pub temperature_k: f64,
    /// Atmospheric pressure in hPa.
    pub pressure_hpa: f64,
    /// Relative humidity as a fraction in [0, 1].
    pub relative_humidity: f64,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AtmosphereError {
    #[error("temperature must exceed 100 K, got {0} K")]
    TemperatureOutOfRange(f64),
    #[error("pressure must be positive, got {0} hPa")]
    PressureOutOfRange(f64),
    #[error("relative humidity must lie in [0, 1], got {0}")]
    HumidityOutOfRange(f64),
}

impl Environment {
    /// Standard conditions used throughout the parameter studies:
    /// 296 K, 1013.25 hPa, 50% relative humidity.
    pub fn standard() -> Self {
        Self {
            temperature_k: 296.0,
            pressure_hpa: 1013.25,
            relative_humidity: 0.5,
        }
    }

    pub fn new(
        temperature_k: f64,
        pressure_hpa: f64,
        relative_humidity: f64,
    ) -> Result<Self, AtmosphereError> {
        let env = Self {
            temperature_k,
            pressure_hpa,
            relative_humidity,
        };
        env.validate()?;
        Ok(env)
    }

    pub fn validate(&self) -> Result<(), AtmosphereError> {
        if !(self.temperature_k > 100.0) {
            return Err(AtmosphereError::TemperatureOutOfRange(self.temperature_k));
        }
        if !(self.pressure_hpa > 0.0) {
            return Err(AtmosphereError::PressureOutOfRange(self.pressure_hpa));
        }
        if !(0.0..=1.0).contains(&self.relative_humidity) {
            return Err(AtmosphereError::HumidityOutOfRange(self.relative_humidity));
        }
        Ok(())
    }

    /// Saturated water-vapor partial pressure p_s(T, p_h) in hPa
    /// (Buck equation with the pressure enhancement factor).
    pub fn saturated_vapor_pressure(&self) -> f64 {
        buck_pressure(self.temperature_k, self.pressure_hpa)
    }

    /// Volume mixing ratio of water vapor, v = φ p_s / p_h.
    pub fn mixing_ratio(&self) -> f64 {
        self.relative_humidity * self.saturated_vapor_pressure() / self.pressure_hpa
    }
}

impl Default for Environment {
    fn default() -> Self {
        Self::standard()
    }
}

/// κ1 (κ2 + κ3 p_h) exp(κ4 (T - κ5)/(T - κ6)). The Environment invariant
/// T > 100 K keeps the pole at T = κ6 out of reach.
fn buck_pressure(temperature_k: f64, pressure_hpa: f64) -> f64 {
    let [k1, k2, k3, k4, k5, k6] = ABSORPTION_CONSTANTS.kappa;
    debug_assert!(temperature_k > k6);
    k1 * (k2 + k3 * pressure_hpa) * (k4 * (temperature_k - k5) / (temperature_k - k6)).exp()
}

/// True when the frequency lies inside the fitted 275-425 GHz band.
/// Out-of-band frequencies still evaluate; callers surface a warning.
pub fn is_in_band(frequency_hz: f64) -> bool {
    (BAND_MIN_HZ..=BAND_MAX_HZ).contains(&frequency_hz)
}

/// Molecular absorption coefficient β(f) in 1/m using the default
/// (squared-detuning) resonance form.
pub fn absorption_coefficient(frequency_hz: f64, env: &Environment) -> f64 {
    absorption_coefficient_with_form(frequency_hz, env, ResonanceForm::Squared)
}

/// β(f) in 1/m with an explicit resonance form.
pub fn absorption_coefficient_with_form(
    frequency_hz: f64,
    env: &Environment,
    form: ResonanceForm,
) -> f64 {
    let v = env.mixing_ratio();
    let k = &ABSORPTION_CONSTANTS;
    let a1 = k.g[0] * v * (k.g[1] * v + k.g[2]);
    let b1 = (k.g[6] * v + k.g[7]).powi(2);
    let a2 = k.g[3] * v * (k.g[4] * v + k.g[5]);
    let b2 = (k.g[8] * v + k.g[9]).powi(2);

    // f/c in cm^-1 to match the units of δ_k.
    let wavenumber = frequency_hz / (100.0 * SPEED_OF_LIGHT);
    let (u1, u2) = match form {
        ResonanceForm::Squared => (
            a1 / (b1 + (wavenumber - k.delta[0]).powi(2)),
            a2 / (b2 + (wavenumber - k.delta[1]).powi(2)),
        ),
        ResonanceForm::Linear => (
            a1 / (b1 + (wavenumber - k.delta[0])),
            a2 / (b2 + (wavenumber - k.delta[1])),
        ),
    };
    u1 + u2 + background_polynomial(frequency_hz)
}

/// Cubic background Σ p_l f^l, Horner form to avoid cancellation at f ~ 1e11.
pub fn background_polynomial(frequency_hz: f64) -> f64 {
    let [p0, p1, p2, p3] = ABSORPTION_CONSTANTS.p;
    p0 + frequency_hz * (p1 + frequency_hz * (p2 + frequency_hz * p3))
}
