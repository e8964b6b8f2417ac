//! Configuration ingestion: a single TOML file describes either one scenario
//! or a sweep around one. Unset fields fall back to the standard defaults
//! (275 GHz, 10 m hops, 55 dBi gains, α=1, μ=3, ĥ=1, 296 K, 1013.25 hPa, 50%
//! humidity, 50 dB budgets, 0 dB threshold). All SNR-like quantities are
//! entered in dB and converted to linear once, here.
//!
//! Misalignment for a hop is enabled by the presence of a `misalignment`
//! table, which must carry either `zeta` or the pair
//! (`beam_width_m`, `jitter_sigma_m`); `s_o` defaults to 1.

use std::path::Path;

use serde::Deserialize;

use crate::atmosphere::{AtmosphereError, Environment};
use crate::channel::{ChannelError, LinkConfig, MisalignmentParams};
use crate::outage::{Method, Scenario};
use crate::sweep::{AxisScale, ParameterPath, SweepAxis, SweepSpec};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("config syntax/schema error: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("{field}: {message}")]
    Field { field: String, message: String },
    #[error("{field}: misalignment is under-determined; provide either zeta or both beam_width_m and jitter_sigma_m")]
    UnderDeterminedMisalignment { field: String },
    #[error("{field}: provide either zeta or (beam_width_m, jitter_sigma_m), not both")]
    OverDeterminedMisalignment { field: String },
    #[error("unknown sweep parameter {0:?}; sweepable: snr_threshold_db, or {{link1|link2|both}}.{{frequency_hz|distance_m|tx_gain_db|rx_gain_db|tx_power_over_noise_db|misalignment.jitter_sigma_m|misalignment.zeta}}")]
    UnknownParameter(String),
    #[error("sweep axis: {0}")]
    BadAxis(String),
    #[error("closed_form method requested but {field} has non-integer fading_mu = {mu}; only quadrature and monte_carlo accept non-integer mu")]
    NonIntegerMuForClosedForm { field: String, mu: f64 },
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error(transparent)]
    Atmosphere(#[from] AtmosphereError),
}

/// A parsed configuration: either a single scenario or a sweep.
#[derive(Debug, Clone)]
pub enum ParsedConfig {
    Scenario(Scenario),
    Sweep(SweepSpec),
}

impl ParsedConfig {
    /// View as a sweep, degrading a plain scenario to a one-point grid on
    /// the threshold axis.
    pub fn into_sweep(self) -> SweepSpec {
        match self {
            ParsedConfig::Sweep(s) => s,
            ParsedConfig::Scenario(fixed) => SweepSpec::degenerate(fixed),
        }
    }

    pub fn fixed_scenario(&self) -> &Scenario {
        match self {
            ParsedConfig::Scenario(s) => s,
            ParsedConfig::Sweep(s) => &s.fixed,
        }
    }
}

// ---------------------------------------------------------------------------
// Raw (serde-facing) schema
// ---------------------------------------------------------------------------

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    environment: Option<RawEnvironment>,
    link1: Option<RawLink>,
    link2: Option<RawLink>,
    /// Outage threshold ρ_th in dB (linear internally).
    snr_threshold_db: Option<f64>,
    sweep: Option<RawSweep>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEnvironment {
    temperature_k: Option<f64>,
    pressure_hpa: Option<f64>,
    relative_humidity: Option<f64>,
}

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLink {
    frequency_hz: Option<f64>,
    distance_m: Option<f64>,
    tx_gain_db: Option<f64>,
    rx_gain_db: Option<f64>,
    fading_alpha: Option<f64>,
    fading_mu: Option<f64>,
    fading_hhat: Option<f64>,
    tx_power_over_noise_db: Option<f64>,
    misalignment: Option<RawMisalignment>,
}

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMisalignment {
    s_o: Option<f64>,
    zeta: Option<f64>,
    beam_width_m: Option<f64>,
    jitter_sigma_m: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    axis1: RawAxis,
    axis2: Option<RawAxis>,
    methods: Option<Vec<Method>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAxis {
    parameter: String,
    start: f64,
    stop: f64,
    points: usize,
    scale: Option<AxisScale>,
}

// ---------------------------------------------------------------------------
// Resolution
// ---------------------------------------------------------------------------

fn resolve_environment(raw: Option<RawEnvironment>) -> Result<Environment, ConfigError> {
    let raw = raw.unwrap_or_default();
    let std = Environment::standard();
    Ok(Environment::new(
        raw.temperature_k.unwrap_or(std.temperature_k),
        raw.pressure_hpa.unwrap_or(std.pressure_hpa),
        raw.relative_humidity.unwrap_or(std.relative_humidity),
    )?)
}

fn resolve_misalignment(
    raw: &RawMisalignment,
    field: &str,
) -> Result<MisalignmentParams, ConfigError> {
    let s_o = raw.s_o.unwrap_or(1.0);
    match (raw.zeta, raw.beam_width_m, raw.jitter_sigma_m) {
        (Some(_), Some(_), _) | (Some(_), _, Some(_)) => {
            Err(ConfigError::OverDeterminedMisalignment {
                field: field.to_string(),
            })
        }
        (Some(zeta), None, None) => Ok(MisalignmentParams::from_zeta(s_o, zeta)?),
        (None, Some(w), Some(sigma)) => Ok(MisalignmentParams::from_geometry(s_o, w, sigma)?),
        _ => Err(ConfigError::UnderDeterminedMisalignment {
            field: field.to_string(),
        }),
    }
}

fn resolve_link(raw: Option<RawLink>, field: &str) -> Result<LinkConfig, ConfigError> {
    let raw = raw.unwrap_or_default();
    let defaults = LinkConfig::default();
    let link = LinkConfig {
        frequency_hz: raw.frequency_hz.unwrap_or(defaults.frequency_hz),
        distance_m: raw.distance_m.unwrap_or(defaults.distance_m),
        tx_gain_db: raw.tx_gain_db.unwrap_or(defaults.tx_gain_db),
        rx_gain_db: raw.rx_gain_db.unwrap_or(defaults.rx_gain_db),
        fading_alpha: raw.fading_alpha.unwrap_or(defaults.fading_alpha),
        fading_mu: raw.fading_mu.unwrap_or(defaults.fading_mu),
        fading_hhat: raw.fading_hhat.unwrap_or(defaults.fading_hhat),
        misalignment: match &raw.misalignment {
            Some(mis) => Some(resolve_misalignment(mis, &format!("{field}.misalignment"))?),
            None => None,
        },
        tx_power_over_noise_db: raw
            .tx_power_over_noise_db
            .unwrap_or(defaults.tx_power_over_noise_db),
    };
    link.validate().map_err(|e| ConfigError::Field {
        field: field.to_string(),
        message: e.to_string(),
    })?;
    Ok(link)
}

fn resolve_axis(raw: RawAxis, fixed: &Scenario) -> Result<SweepAxis, ConfigError> {
    let parameter: ParameterPath = raw.parameter.parse()?;
    if raw.points < 1 {
        return Err(ConfigError::BadAxis(format!(
            "{}: points must be >= 1, got {}",
            raw.parameter, raw.points
        )));
    }
    let scale = raw.scale.unwrap_or(AxisScale::Linear);
    if scale == AxisScale::Log && (raw.start <= 0.0 || raw.stop <= 0.0) {
        return Err(ConfigError::BadAxis(format!(
            "{}: log scale requires positive endpoints",
            raw.parameter
        )));
    }
    if scale == AxisScale::Db && !parameter.is_db_valued() {
        return Err(ConfigError::BadAxis(format!(
            "{}: dB scale only applies to dB-valued parameters",
            raw.parameter
        )));
    }
    let axis = SweepAxis {
        parameter,
        start: raw.start,
        stop: raw.stop,
        points: raw.points,
        scale,
    };
    // Fail early if the axis cannot be applied to the base scenario
    // (e.g. sweeping jitter on a hop without geometric misalignment).
    axis.parameter
        .apply(fixed.clone(), raw.start)
        .map_err(|e| ConfigError::BadAxis(format!("{}: {e}", axis.parameter)))?;
    Ok(axis)
}

fn db_to_linear(db: f64) -> f64 {
    10.0_f64.powf(db / 10.0)
}

/// Parse a configuration file into a fully-resolved scenario or sweep.
/// An empty file yields the default scenario.
pub fn parse_config(path: &Path) -> Result<ParsedConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_config_str(&text)
}

/// Same as [`parse_config`], from an in-memory string.
pub fn parse_config_str(text: &str) -> Result<ParsedConfig, ConfigError> {
    let raw: RawConfig = toml::from_str(text)?;
    let scenario = Scenario {
        environment: resolve_environment(raw.environment)?,
        link1: resolve_link(raw.link1, "link1")?,
        link2: resolve_link(raw.link2, "link2")?,
        snr_threshold: db_to_linear(raw.snr_threshold_db.unwrap_or(0.0)),
    };

    match raw.sweep {
        None => Ok(ParsedConfig::Scenario(scenario)),
        Some(sweep) => {
            let axis1 = resolve_axis(sweep.axis1, &scenario)?;
            let axis2 = sweep.axis2.map(|a| resolve_axis(a, &scenario)).transpose()?;
            let methods = sweep.methods.unwrap_or_else(|| vec![Method::Quadrature]);
            if methods.contains(&Method::ClosedForm) {
                for (link, name) in [(&scenario.link1, "link1"), (&scenario.link2, "link2")] {
                    if !link.has_integer_mu() {
                        return Err(ConfigError::NonIntegerMuForClosedForm {
                            field: name.to_string(),
                            mu: link.fading_mu,
                        });
                    }
                }
            }
            Ok(ParsedConfig::Sweep(SweepSpec {
                axis1,
                axis2,
                fixed: scenario,
                methods,
            }))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_yields_default_scenario() {
        let parsed = parse_config_str("").unwrap();
        let ParsedConfig::Scenario(s) = parsed else {
            panic!("expected scenario")
        };
        assert_eq!(s.link1, LinkConfig::default());
        assert_eq!(s.link2, LinkConfig::default());
        assert_eq!(s.environment, Environment::standard());
        assert_eq!(s.snr_threshold, 1.0); // 0 dB
        assert!(s.link1.misalignment.is_none());
    }

    #[test]
    fn threshold_and_budget_enter_in_db() {
        let parsed = parse_config_str(
            r#"
            snr_threshold_db = 10.0
            [link1]
            tx_power_over_noise_db = 30.0
            "#,
        )
        .unwrap();
        let s = parsed.fixed_scenario();
        assert!((s.snr_threshold - 10.0).abs() < 1e-12);
        assert_eq!(s.link1.tx_power_over_noise_db, 30.0);
    }

    #[test]
    fn misalignment_entry_points() {
        let via_zeta = parse_config_str("[link1.misalignment]\nzeta = 6.25\n").unwrap();
        let mp = via_zeta.fixed_scenario().link1.misalignment.unwrap();
        assert_eq!(mp.s_o, 1.0);
        assert_eq!(mp.zeta, 6.25);
        assert!(mp.derived_from.is_none());

        let via_geometry = parse_config_str(
            "[link2.misalignment]\ns_o = 0.9\nbeam_width_m = 0.05\njitter_sigma_m = 0.01\n",
        )
        .unwrap();
        let mp = via_geometry.fixed_scenario().link2.misalignment.unwrap();
        assert_eq!(mp.s_o, 0.9);
        assert!((mp.zeta - 6.25).abs() < 1e-14);
        assert!(mp.derived_from.is_some());
    }

    #[test]
    fn sigma_without_width_or_zeta_is_rejected() {
        let err = parse_config_str("[link1.misalignment]\njitter_sigma_m = 0.01\n").unwrap_err();
        assert!(matches!(
            err,
            ConfigError::UnderDeterminedMisalignment { .. }
        ));
        let err =
            parse_config_str("[link1.misalignment]\nzeta = 2.0\nbeam_width_m = 0.05\n").unwrap_err();
        assert!(matches!(err, ConfigError::OverDeterminedMisalignment { .. }));
    }

    #[test]
    fn non_integer_mu_with_closed_form_is_rejected_at_parse() {
        let err = parse_config_str(
            r#"
            [link1]
            fading_mu = 2.5
            [sweep]
            methods = ["closed_form"]
            [sweep.axis1]
            parameter = "snr_threshold_db"
            start = 0.0
            stop = 10.0
            points = 5
            "#,
        )
        .unwrap_err();
        assert!(matches!(err, ConfigError::NonIntegerMuForClosedForm { .. }));

        // The same scenario parses fine for quadrature.
        let ok = parse_config_str(
            r#"
            [link1]
            fading_mu = 2.5
            [sweep]
            methods = ["quadrature"]
            [sweep.axis1]
            parameter = "snr_threshold_db"
            start = 0.0
            stop = 10.0
            points = 5
            "#,
        );
        assert!(ok.is_ok());
    }

    #[test]
    fn unknown_fields_are_schema_errors() {
        let err = parse_config_str("[link1]\nfrequenzy_hz = 1.0\n").unwrap_err();
        assert!(matches!(err, ConfigError::Toml(_)));
    }

    #[test]
    fn sweep_axis_validation() {
        let err = parse_config_str(
            r#"
            [sweep.axis1]
            parameter = "link1.bogus"
            start = 0.0
            stop = 1.0
            points = 2
            "#,
        )
        .unwrap_err();
        assert!(matches!(err, ConfigError::UnknownParameter(_)));

        // Sweeping jitter requires geometry-based misalignment on that hop.
        let err = parse_config_str(
            r#"
            [sweep.axis1]
            parameter = "link1.misalignment.jitter_sigma_m"
            start = 0.01
            stop = 0.05
            points = 5
            "#,
        )
        .unwrap_err();
        assert!(matches!(err, ConfigError::BadAxis(_)));

        let ok = parse_config_str(
            r#"
            [link1.misalignment]
            beam_width_m = 0.05
            jitter_sigma_m = 0.01
            [sweep.axis1]
            parameter = "link1.misalignment.jitter_sigma_m"
            start = 0.01
            stop = 0.05
            points = 5
            "#,
        )
        .unwrap();
        assert!(matches!(ok, ParsedConfig::Sweep(_)));
    }
}
