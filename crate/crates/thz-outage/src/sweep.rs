//! Parameter-sweep orchestration, CSV emission, and the closed-form vs
//! oracle validation report.
//!
//! A sweep varies one or two scalar parameters of a fixed scenario over a
//! grid and evaluates the outage probability per point with the requested
//! methods. Rows come out in deterministic axis-major order; numbers are
//! printed with 17 significant digits; per-point Monte-Carlo seeds derive
//! from the base seed and the point index so reruns are byte-identical.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::atmosphere::{self, Environment, ResonanceForm};
use crate::channel::MisalignmentParams;
use crate::mcsim::McConfig;
use crate::outage::{self, Evaluation, Method, OutageError, Scenario};

#[derive(Debug, thiserror::Error)]
pub enum SweepError {
    #[error("sweep axis {parameter}: {message}")]
    Apply { parameter: String, message: String },
    #[error(transparent)]
    Outage(#[from] OutageError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// How grid points are spaced between `start` and `stop`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AxisScale {
    /// Arithmetic progression.
    Linear,
    /// Arithmetic progression of dB values (only for dB-valued parameters).
    Db,
    /// Geometric progression.
    Log,
}

/// Which hop(s) a swept link parameter applies to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LinkTarget {
    Link1,
    Link2,
    Both,
}

/// Sweepable per-link fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinkField {
    FrequencyHz,
    DistanceM,
    TxGainDb,
    RxGainDb,
    TxPowerOverNoiseDb,
    JitterSigmaM,
    Zeta,
}

impl LinkField {
    fn name(&self) -> &'static str {
        match self {
            LinkField::FrequencyHz => "frequency_hz",
            LinkField::DistanceM => "distance_m",
            LinkField::TxGainDb => "tx_gain_db",
            LinkField::RxGainDb => "rx_gain_db",
            LinkField::TxPowerOverNoiseDb => "tx_power_over_noise_db",
            LinkField::JitterSigmaM => "misalignment.jitter_sigma_m",
            LinkField::Zeta => "misalignment.zeta",
        }
    }
}

/// A dotted path naming one sweepable scalar.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParameterPath {
    /// Outage threshold in dB.
    SnrThresholdDb,
    Link(LinkTarget, LinkField),
}

impl ParameterPath {
    pub fn is_db_valued(&self) -> bool {
        matches!(
            self,
            ParameterPath::SnrThresholdDb
                | ParameterPath::Link(
                    _,
                    LinkField::TxGainDb | LinkField::RxGainDb | LinkField::TxPowerOverNoiseDb
                )
        )
    }

    /// Produce a scenario with this parameter set to `value`.
    pub fn apply(&self, mut scenario: Scenario, value: f64) -> Result<Scenario, SweepError> {
        let fail = |message: &str| SweepError::Apply {
            parameter: self.to_string(),
            message: message.to_string(),
        };
        match self {
            ParameterPath::SnrThresholdDb => {
                scenario.snr_threshold = 10.0_f64.powf(value / 10.0);
                Ok(scenario)
            }
            ParameterPath::Link(target, field) => {
                let links: Vec<&mut crate::channel::LinkConfig> = match target {
                    LinkTarget::Link1 => vec![&mut scenario.link1],
                    LinkTarget::Link2 => vec![&mut scenario.link2],
                    LinkTarget::Both => vec![&mut scenario.link1, &mut scenario.link2],
                };
                for link in links {
                    match field {
                        LinkField::FrequencyHz => link.frequency_hz = value,
                        LinkField::DistanceM => link.distance_m = value,
                        LinkField::TxGainDb => link.tx_gain_db = value,
                        LinkField::RxGainDb => link.rx_gain_db = value,
                        LinkField::TxPowerOverNoiseDb => link.tx_power_over_noise_db = value,
                        LinkField::JitterSigmaM => {
                            let mp = link
                                .misalignment
                                .as_ref()
                                .ok_or_else(|| fail("hop carries no misalignment table"))?;
                            let geom = mp.derived_from.ok_or_else(|| {
                                fail("jitter sweep needs geometry-derived misalignment (beam_width_m + jitter_sigma_m)")
                            })?;
                            link.misalignment = Some(
                                MisalignmentParams::from_geometry(
                                    mp.s_o,
                                    geom.beam_width_m,
                                    value,
                                )
                                .map_err(|e| fail(&e.to_string()))?,
                            );
                        }
                        LinkField::Zeta => {
                            let mp = link
                                .misalignment
                                .as_ref()
                                .ok_or_else(|| fail("hop carries no misalignment table"))?;
                            link.misalignment = Some(
                                MisalignmentParams::from_zeta(mp.s_o, value)
                                    .map_err(|e| fail(&e.to_string()))?,
                            );
                        }
                    }
                }
                Ok(scenario)
            }
        }
    }
}

impl fmt::Display for ParameterPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParameterPath::SnrThresholdDb => write!(f, "snr_threshold_db"),
            ParameterPath::Link(target, field) => {
                let t = match target {
                    LinkTarget::Link1 => "link1",
                    LinkTarget::Link2 => "link2",
                    LinkTarget::Both => "both",
                };
                write!(f, "{t}.{}", field.name())
            }
        }
    }
}

impl FromStr for ParameterPath {
    type Err = crate::config::ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "snr_threshold_db" {
            return Ok(ParameterPath::SnrThresholdDb);
        }
        let unknown = || crate::config::ConfigError::UnknownParameter(s.to_string());
        let (target, rest) = s.split_once('.').ok_or_else(unknown)?;
        let target = match target {
            "link1" => LinkTarget::Link1,
            "link2" => LinkTarget::Link2,
            "both" => LinkTarget::Both,
            _ => return Err(unknown()),
        };
        let field = match rest {
            "frequency_hz" => LinkField::FrequencyHz,
            "distance_m" => LinkField::DistanceM,
            "tx_gain_db" => LinkField::TxGainDb,
            "rx_gain_db" => LinkField::RxGainDb,
            "tx_power_over_noise_db" => LinkField::TxPowerOverNoiseDb,
            "misalignment.jitter_sigma_m" => LinkField::JitterSigmaM,
            "misalignment.zeta" => LinkField::Zeta,
            _ => return Err(unknown()),
        };
        Ok(ParameterPath::Link(target, field))
    }
}

impl Serialize for ParameterPath {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// One sweep axis: a parameter, endpoints, point count and spacing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepAxis {
    pub parameter: ParameterPath,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub scale: AxisScale,
}

impl SweepAxis {
    /// The grid values, inclusive of both endpoints. A single-point axis
    /// degenerates to `[start]`.
    pub fn values(&self) -> Vec<f64> {
        if self.points <= 1 {
            return vec![self.start];
        }
        let n = self.points;
        match self.scale {
            AxisScale::Linear | AxisScale::Db => (0..n)
                .map(|i| self.start + (self.stop - self.start) * i as f64 / (n - 1) as f64)
                .collect(),
            AxisScale::Log => {
                let (ls, le) = (self.start.ln(), self.stop.ln());
                (0..n)
                    .map(|i| (ls + (le - ls) * i as f64 / (n - 1) as f64).exp())
                    .collect()
            }
        }
    }
}

/// A sweep: one or two axes around a fixed scenario, plus evaluation methods.
#[derive(Debug, Clone, Serialize)]
pub struct SweepSpec {
    pub axis1: SweepAxis,
    pub axis2: Option<SweepAxis>,
    pub fixed: Scenario,
    pub methods: Vec<Method>,
}

impl SweepSpec {
    /// One-point sweep wrapping a plain scenario (used so `point` and
    /// `validate` share the grid machinery).
    pub fn degenerate(fixed: Scenario) -> Self {
        let threshold_db = 10.0 * fixed.snr_threshold.log10();
        SweepSpec {
            axis1: SweepAxis {
                parameter: ParameterPath::SnrThresholdDb,
                start: threshold_db,
                stop: threshold_db,
                points: 1,
                scale: AxisScale::Db,
            },
            axis2: None,
            fixed,
            methods: vec![Method::Quadrature],
        }
    }

    /// Materialize the grid in axis-major order.
    pub fn grid(&self) -> Result<Vec<GridPoint>, SweepError> {
        let mut points = Vec::new();
        for &v1 in &self.axis1.values() {
            let s1 = self.axis1.parameter.apply(self.fixed.clone(), v1)?;
            match &self.axis2 {
                None => points.push(GridPoint {
                    axis1: v1,
                    axis2: None,
                    scenario: s1,
                }),
                Some(axis2) => {
                    for &v2 in &axis2.values() {
                        let s2 = axis2.parameter.apply(s1.clone(), v2)?;
                        points.push(GridPoint {
                            axis1: v1,
                            axis2: Some(v2),
                            scenario: s2,
                        });
                    }
                }
            }
        }
        Ok(points)
    }
}

/// One materialized grid point.
#[derive(Debug, Clone)]
pub struct GridPoint {
    pub axis1: f64,
    pub axis2: Option<f64>,
    pub scenario: Scenario,
}

/// Per-method outcome at one grid point; errors become diagnostics text.
#[derive(Debug, Clone)]
pub struct PointResult {
    pub point: GridPoint,
    pub evals: Vec<(Method, Result<Evaluation, String>)>,
}

impl PointResult {
    pub fn evaluation(&self, method: Method) -> Option<&Evaluation> {
        self.evals
            .iter()
            .find(|(m, _)| *m == method)
            .and_then(|(_, r)| r.as_ref().ok())
    }

    fn diagnostics_cell(&self) -> String {
        let mut parts = Vec::new();
        for (method, eval) in &self.evals {
            match eval {
                Ok(e) if e.diag.is_clean() => {}
                Ok(e) => {
                    let d = e.diag;
                    parts.push(format!(
                        "{}:clamped={};nonconverged={};out_of_band={}",
                        method.label(),
                        d.clamp_events,
                        d.nonconverged_calls,
                        d.band_warnings
                    ));
                }
                Err(msg) => parts.push(format!("{}:error={}", method.label(), msg)),
            }
        }
        if parts.is_empty() {
            "ok".to_string()
        } else {
            parts.join("|")
        }
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E3779B97F4A7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D049BB133111EB);
    x ^ (x >> 31)
}

/// Deterministic per-point Monte-Carlo configuration.
fn point_mc(base: &McConfig, index: usize) -> McConfig {
    McConfig {
        seed: splitmix64(base.seed ^ (index as u64).wrapping_mul(0xA24BAED4963EE407)),
        ..*base
    }
}

/// Evaluate every grid point with every requested method. Points run in
/// parallel; output order is the deterministic grid order.
pub fn evaluate(
    spec: &SweepSpec,
    methods: &[Method],
    mc: &McConfig,
) -> Result<Vec<PointResult>, SweepError> {
    let grid = spec.grid()?;
    let results: Vec<PointResult> = grid
        .into_par_iter()
        .enumerate()
        .map(|(idx, point)| {
            let evals = methods
                .iter()
                .map(|&method| {
                    let mc_cfg = point_mc(mc, idx);
                    let mc_opt = (method == Method::MonteCarlo).then_some(&mc_cfg);
                    let out = outage::outage_probability(&point.scenario, method, mc_opt)
                        .map_err(|e| e.to_string());
                    (method, out)
                })
                .collect();
            PointResult { point, evals }
        })
        .collect();
    Ok(results)
}

/// 17-significant-digit float cell.
fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// Run the sweep and write CSV: one axis column per axis, one OP column per
/// method (plus the Monte-Carlo standard error), one diagnostics column.
pub fn run_sweep<W: Write>(
    spec: &SweepSpec,
    mc: &McConfig,
    out: &mut W,
) -> Result<Vec<PointResult>, SweepError> {
    let methods = normalized_methods(&spec.methods);
    let results = evaluate(spec, &methods, mc)?;

    let mut header = vec![spec.axis1.parameter.to_string()];
    if let Some(axis2) = &spec.axis2 {
        header.push(axis2.parameter.to_string());
    }
    for m in &methods {
        header.push(format!("op_{}", m.label()));
        if *m == Method::MonteCarlo {
            header.push("mc_stderr".to_string());
        }
    }
    header.push("diagnostics".to_string());
    writeln!(out, "{}", header.join(","))?;

    for row in &results {
        let mut cells = vec![fmt_float(row.point.axis1)];
        if let Some(v2) = row.point.axis2 {
            cells.push(fmt_float(v2));
        }
        for (m, eval) in &row.evals {
            match eval {
                Ok(e) => {
                    cells.push(fmt_float(e.result.op));
                    if *m == Method::MonteCarlo {
                        cells.push(e.result.stderr.map(fmt_float).unwrap_or_default());
                    }
                }
                Err(_) => {
                    cells.push("nan".to_string());
                    if *m == Method::MonteCarlo {
                        cells.push(String::new());
                    }
                }
            }
        }
        cells.push(row.diagnostics_cell());
        writeln!(out, "{}", cells.join(","))?;
    }
    Ok(results)
}

/// Canonical method order (and dedup) for column layout.
pub fn normalized_methods(methods: &[Method]) -> Vec<Method> {
    let mut out = Vec::new();
    for m in [Method::ClosedForm, Method::Quadrature, Method::MonteCarlo] {
        if methods.contains(&m) {
            out.push(m);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Validation report
// ---------------------------------------------------------------------------

/// Relative gaps are only meaningful above this quadrature OP floor.
pub const RELATIVE_GAP_FLOOR: f64 = 1e-9;
/// Absolute disagreement floor of the closed-form gate.
pub const ABS_GAP_FLOOR: f64 = 1e-6;

/// One validation row.
#[derive(Debug, Clone)]
pub struct ValidationRow {
    pub axis1: f64,
    pub axis2: Option<f64>,
    pub op_closed: Option<f64>,
    pub op_quadrature: Option<f64>,
    pub op_monte_carlo: Option<f64>,
    pub mc_stderr: Option<f64>,
    /// |closed - quad| / quad, only where quad > RELATIVE_GAP_FLOOR.
    pub relative_gap: Option<f64>,
    pub clamp_events: u32,
    pub nonconverged: u32,
    /// Closed-form disagreement beyond max(ABS_GAP_FLOOR, tol · OP_quad).
    pub flagged: bool,
    pub error: Option<String>,
}

/// Comparison of the two absorption resonance forms over the band.
#[derive(Debug, Clone)]
pub struct AbsorptionFormCheck {
    /// Argmax of β over 275-425 GHz, squared-detuning form (GHz).
    pub squared_argmax_ghz: f64,
    /// Whether that argmax lies inside the expected 370-395 GHz window.
    pub squared_in_window: bool,
    /// Argmax of the linear-detuning form (GHz).
    pub linear_argmax_ghz: f64,
    pub linear_in_window: bool,
    /// The linear-detuning form dips below zero somewhere in the band.
    pub linear_negative_in_band: bool,
}

/// Full closed-form-vs-oracle validation outcome.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub rows: Vec<ValidationRow>,
    pub tolerance: f64,
    pub max_abs_gap: f64,
    pub max_rel_gap: Option<f64>,
    pub flagged_points: usize,
    pub evaluation_errors: usize,
    /// Monte-Carlo estimates within 3 standard errors of the quadrature OP.
    pub mc_within_3_sigma: usize,
    pub mc_points: usize,
    pub absorption: AbsorptionFormCheck,
    pub passed: bool,
}

fn scan_absorption(env: &Environment) -> AbsorptionFormCheck {
    let step = 1e7; // 10 MHz scan
    let n = ((atmosphere::BAND_MAX_HZ - atmosphere::BAND_MIN_HZ) / step) as usize;
    let mut best = [(0.0_f64, f64::MIN), (0.0_f64, f64::MIN)];
    let mut linear_negative = false;
    for i in 0..=n {
        let f = atmosphere::BAND_MIN_HZ + i as f64 * step;
        let squared = atmosphere::absorption_coefficient_with_form(f, env, ResonanceForm::Squared);
        let linear =
            atmosphere::absorption_coefficient_with_form(f, env, ResonanceForm::Linear);
        if squared > best[0].1 {
            best[0] = (f, squared);
        }
        if linear.is_finite() && linear > best[1].1 {
            best[1] = (f, linear);
        }
        if linear < 0.0 {
            linear_negative = true;
        }
    }
    let window = 370.0..=395.0;
    AbsorptionFormCheck {
        squared_argmax_ghz: best[0].0 / 1e9,
        squared_in_window: window.contains(&(best[0].0 / 1e9)),
        linear_argmax_ghz: best[1].0 / 1e9,
        linear_in_window: window.contains(&(best[1].0 / 1e9)) && !linear_negative,
        linear_negative_in_band: linear_negative,
    }
}

/// Evaluate all three methods on the grid and compare the closed form
/// against the quadrature oracle at `max(ABS_GAP_FLOOR, tolerance · OP_quad)`.
pub fn validate(
    spec: &SweepSpec,
    tolerance: f64,
    mc: &McConfig,
) -> Result<ValidationReport, SweepError> {
    let methods = [Method::ClosedForm, Method::Quadrature, Method::MonteCarlo];
    let results = evaluate(spec, &methods, mc)?;

    let mut rows = Vec::with_capacity(results.len());
    let mut max_abs_gap = 0.0_f64;
    let mut max_rel_gap: Option<f64> = None;
    let mut flagged_points = 0;
    let mut errors = 0;
    let mut mc_within = 0;
    let mut mc_points = 0;

    for r in &results {
        let closed = r.evaluation(Method::ClosedForm);
        let quad = r.evaluation(Method::Quadrature);
        let mc_eval = r.evaluation(Method::MonteCarlo);
        let error: Option<String> = r
            .evals
            .iter()
            .filter_map(|(m, e)| e.as_ref().err().map(|msg| format!("{}: {msg}", m.label())))
            .reduce(|a, b| format!("{a}; {b}"));
        if error.is_some() {
            errors += 1;
        }

        let mut row = ValidationRow {
            axis1: r.point.axis1,
            axis2: r.point.axis2,
            op_closed: closed.map(|e| e.result.op),
            op_quadrature: quad.map(|e| e.result.op),
            op_monte_carlo: mc_eval.map(|e| e.result.op),
            mc_stderr: mc_eval.and_then(|e| e.result.stderr),
            relative_gap: None,
            clamp_events: closed.map(|e| e.diag.clamp_events).unwrap_or(0),
            nonconverged: r
                .evals
                .iter()
                .filter_map(|(_, e)| e.as_ref().ok())
                .map(|e| e.diag.nonconverged_calls)
                .sum(),
            flagged: false,
            error,
        };

        if let (Some(c), Some(q)) = (row.op_closed, row.op_quadrature) {
            let gap = (c - q).abs();
            max_abs_gap = max_abs_gap.max(gap);
            if q > RELATIVE_GAP_FLOOR {
                let rel = gap / q;
                row.relative_gap = Some(rel);
                max_rel_gap = Some(max_rel_gap.map_or(rel, |m: f64| m.max(rel)));
            }
            row.flagged = gap > ABS_GAP_FLOOR.max(tolerance * q);
            if row.flagged {
                flagged_points += 1;
            }
        }
        if let (Some(m), Some(q), Some(se)) = (row.op_monte_carlo, row.op_quadrature, row.mc_stderr)
        {
            mc_points += 1;
            if (m - q).abs() <= 3.0 * se {
                mc_within += 1;
            }
        }
        rows.push(row);
    }

    let absorption = scan_absorption(&spec.fixed.environment);
    let passed = flagged_points == 0 && errors == 0;
    Ok(ValidationReport {
        rows,
        tolerance,
        max_abs_gap,
        max_rel_gap,
        flagged_points,
        evaluation_errors: errors,
        mc_within_3_sigma: mc_within,
        mc_points,
        absorption,
        passed,
    })
}

impl ValidationReport {
    /// Human-readable report.
    pub fn write_text<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        writeln!(
            out,
            "{:>14} {:>14} {:>13} {:>13} {:>13} {:>10} {:>10} {:>6} {:>5}",
            "axis1", "axis2", "op_closed", "op_quad", "op_mc", "mc_stderr", "rel_gap", "clamp", "flag"
        )?;
        for r in &self.rows {
            writeln!(
                out,
                "{:>14.6e} {:>14} {:>13} {:>13} {:>13} {:>10} {:>10} {:>6} {:>5}",
                r.axis1,
                r.axis2.map(|v| format!("{v:.6e}")).unwrap_or_else(|| "-".into()),
                r.op_closed.map(|v| format!("{v:.6e}")).unwrap_or_else(|| "-".into()),
                r.op_quadrature.map(|v| format!("{v:.6e}")).unwrap_or_else(|| "-".into()),
                r.op_monte_carlo.map(|v| format!("{v:.6e}")).unwrap_or_else(|| "-".into()),
                r.mc_stderr.map(|v| format!("{v:.2e}")).unwrap_or_else(|| "-".into()),
                r.relative_gap.map(|v| format!("{v:.2e}")).unwrap_or_else(|| "-".into()),
                r.clamp_events,
                if r.flagged { "FAIL" } else { "ok" },
            )?;
            if let Some(err) = &r.error {
                writeln!(out, "    error: {err}")?;
            }
        }
        writeln!(out)?;
        writeln!(
            out,
            "closed-form vs quadrature: max |gap| = {:.3e}, max relative gap = {}, {} of {} points beyond max({:.0e}, {:.2}*OP)",
            self.max_abs_gap,
            self.max_rel_gap
                .map(|v| format!("{v:.3e}"))
                .unwrap_or_else(|| "n/a (OP below floor)".into()),
            self.flagged_points,
            self.rows.len(),
            ABS_GAP_FLOOR,
            self.tolerance,
        )?;
        writeln!(
            out,
            "monte-carlo coverage: {}/{} points within 3 standard errors of quadrature",
            self.mc_within_3_sigma, self.mc_points
        )?;
        let a = &self.absorption;
        writeln!(
            out,
            "absorption forms: squared-detuning argmax {:.2} GHz ({}), linear-detuning argmax {:.2} GHz ({}{})",
            a.squared_argmax_ghz,
            if a.squared_in_window { "inside 370-395 GHz window" } else { "OUTSIDE 370-395 GHz window" },
            a.linear_argmax_ghz,
            if a.linear_in_window { "inside window" } else { "outside window" },
            if a.linear_negative_in_band { "; negative values in band" } else { "" },
        )?;
        writeln!(out, "verdict: {}", if self.passed { "PASS" } else { "FAIL" })?;
        Ok(())
    }

    /// Machine-readable rows (same 17-digit convention as sweep CSV).
    pub fn write_csv<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        writeln!(
            out,
            "axis1,axis2,op_closed,op_quadrature,op_monte_carlo,mc_stderr,relative_gap,clamp_events,nonconverged,flagged"
        )?;
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{}",
                fmt_float(r.axis1),
                r.axis2.map(fmt_float).unwrap_or_default(),
                r.op_closed.map(fmt_float).unwrap_or_default(),
                r.op_quadrature.map(fmt_float).unwrap_or_default(),
                r.op_monte_carlo.map(fmt_float).unwrap_or_default(),
                r.mc_stderr.map(fmt_float).unwrap_or_default(),
                r.relative_gap.map(fmt_float).unwrap_or_default(),
                r.clamp_events,
                r.nonconverged,
                r.flagged,
            )?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Absorption table (the `absorption` subcommand's data product)
// ---------------------------------------------------------------------------

/// Write a β(f) table over `[from_hz, to_hz]` with both resonance forms.
pub fn write_absorption_table<W: Write>(
    env: &Environment,
    from_hz: f64,
    to_hz: f64,
    points: usize,
    out: &mut W,
) -> std::io::Result<()> {
    writeln!(
        out,
        "frequency_hz,beta_squared_per_m,beta_linear_detuning_per_m,in_band"
    )?;
    let n = points.max(2);
    for i in 0..n {
        let f = from_hz + (to_hz - from_hz) * i as f64 / (n - 1) as f64;
        let sq = atmosphere::absorption_coefficient_with_form(f, env, ResonanceForm::Squared);
        let pr = atmosphere::absorption_coefficient_with_form(f, env, ResonanceForm::Linear);
        writeln!(
            out,
            "{},{},{},{}",
            fmt_float(f),
            fmt_float(sq),
            fmt_float(pr),
            atmosphere::is_in_band(f)
        )?;
    }
    Ok(())
}

/// Serialize the fully-resolved run (defaults applied) next to the output so
/// any CSV row can be reproduced.
#[derive(Debug, Serialize)]
pub struct ResolvedRun<'a> {
    pub command: &'a str,
    pub methods: &'a [Method],
    pub mc: &'a McConfig,
    pub scenario: &'a Scenario,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axis1: Option<&'a SweepAxis>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axis2: Option<&'a SweepAxis>,
}

impl ResolvedRun<'_> {
    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).unwrap_or_else(|e| format!("# serialization failed: {e}"))
    }
}
