//! Thin CLI over the library: `point`, `sweep`, `validate`, `absorption`.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use thz_outage::config::{parse_config, ParsedConfig};
use thz_outage::mcsim::McConfig;
use thz_outage::outage::{outage_probability, Method};
use thz_outage::sweep::{self, ResolvedRun, SweepSpec};

#[derive(Parser)]
#[command(
    name = "thz-outage",
    about = "Outage probability of dual-hop decode-and-forward THz relay links",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Closed,
    Quad,
    Mc,
    All,
}

impl MethodArg {
    fn methods(self) -> Vec<Method> {
        match self {
            MethodArg::Closed => vec![Method::ClosedForm],
            MethodArg::Quad => vec![Method::Quadrature],
            MethodArg::Mc => vec![Method::MonteCarlo],
            MethodArg::All => vec![Method::ClosedForm, Method::Quadrature, Method::MonteCarlo],
        }
    }
}

#[derive(Args)]
struct McArgs {
    /// Monte-Carlo trials.
    #[arg(long, default_value_t = 1_000_000)]
    trials: u64,
    /// Monte-Carlo base seed.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Number of independent RNG chunks.
    #[arg(long, default_value_t = 64)]
    chunks: u32,
}

impl McArgs {
    fn config(&self) -> McConfig {
        McConfig {
            trials: self.trials,
            seed: self.seed,
            chunks: self.chunks,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the outage probability of a single scenario.
    Point {
        /// Scenario TOML file (missing fields take the standard defaults).
        #[arg(long)]
        config: PathBuf,
        /// Evaluation method(s).
        #[arg(long, value_enum, default_value = "quad")]
        method: MethodArg,
        #[command(flatten)]
        mc: McArgs,
        /// Optional CSV output (a one-row sweep).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep one or two parameters and write the OP grid as CSV.
    Sweep {
        /// Sweep TOML file (a scenario plus a [sweep] table).
        #[arg(long)]
        config: PathBuf,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
        /// Override the methods listed in the config file.
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
        #[command(flatten)]
        mc: McArgs,
    },
    /// Evaluate closed form, quadrature and Monte-Carlo on a grid and report
    /// their agreement. Exit status reflects the closed-vs-quadrature gate.
    Validate {
        /// Scenario or sweep TOML file.
        #[arg(long)]
        config: PathBuf,
        /// Relative tolerance of the closed-form gate (absolute floor 1e-6).
        #[arg(long, default_value_t = 0.01)]
        tolerance: f64,
        #[command(flatten)]
        mc: McArgs,
        /// Optional CSV output of the per-point rows.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate the molecular absorption coefficient β(f).
    Absorption {
        /// Optional scenario TOML supplying the environment (defaults otherwise).
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
        /// Start of the frequency grid, GHz.
        #[arg(long, default_value_t = 275.0)]
        from_ghz: f64,
        /// End of the frequency grid, GHz.
        #[arg(long, default_value_t = 425.0)]
        to_ghz: f64,
        /// Number of grid points.
        #[arg(long, default_value_t = 1501)]
        points: usize,
    },
}

/// Path of the sidecar file echoing the fully-resolved configuration.
fn sidecar_path(out: Option<&Path>) -> PathBuf {
    match out {
        Some(p) => p.with_extension("resolved.toml"),
        None => PathBuf::from("run.resolved.toml"),
    }
}

fn write_sidecar(path: &Path, echo: &ResolvedRun<'_>) -> Result<()> {
    std::fs::write(path, echo.to_toml())
        .with_context(|| format!("writing sidecar {}", path.display()))
}

fn main() -> Result<ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::Point {
            config,
            method,
            mc,
            out,
        } => {
            let parsed = parse_config(&config)?;
            let scenario = match parsed {
                ParsedConfig::Scenario(s) => s,
                ParsedConfig::Sweep(_) => {
                    bail!("`point` expects a plain scenario config; use `sweep` for sweep files")
                }
            };
            let mc_cfg = mc.config();
            let methods = method.methods();
            let echo = ResolvedRun {
                command: "point",
                methods: &methods,
                mc: &mc_cfg,
                scenario: &scenario,
                axis1: None,
                axis2: None,
            };
            write_sidecar(&sidecar_path(out.as_deref()), &echo)?;

            for m in &methods {
                let mc_opt = (*m == Method::MonteCarlo).then_some(&mc_cfg);
                let eval = outage_probability(&scenario, *m, mc_opt)?;
                match eval.result.stderr {
                    Some(se) => println!(
                        "op_{} = {:.16e} (stderr {:.3e})",
                        m.label(),
                        eval.result.op,
                        se
                    ),
                    None => println!("op_{} = {:.16e}", m.label(), eval.result.op),
                }
                if !eval.diag.is_clean() {
                    println!(
                        "  diagnostics: clamped={} nonconverged={} out_of_band={}",
                        eval.diag.clamp_events,
                        eval.diag.nonconverged_calls,
                        eval.diag.band_warnings
                    );
                }
            }

            if let Some(out_path) = out {
                let mut spec = SweepSpec::degenerate(scenario);
                spec.methods = methods;
                let mut w = BufWriter::new(File::create(&out_path)?);
                sweep::run_sweep(&spec, &mc_cfg, &mut w)?;
                w.flush()?;
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Sweep {
            config,
            out,
            method,
            mc,
        } => {
            let mut spec = parse_config(&config)?.into_sweep();
            if let Some(m) = method {
                spec.methods = m.methods();
            }
            let mc_cfg = mc.config();
            let echo = ResolvedRun {
                command: "sweep",
                methods: &spec.methods,
                mc: &mc_cfg,
                scenario: &spec.fixed,
                axis1: Some(&spec.axis1),
                axis2: spec.axis2.as_ref(),
            };
            write_sidecar(&sidecar_path(Some(&out)), &echo)?;

            let mut w = BufWriter::new(File::create(&out)?);
            let rows = sweep::run_sweep(&spec, &mc_cfg, &mut w)?;
            w.flush()?;
            eprintln!("wrote {} rows to {}", rows.len(), out.display());
            Ok(ExitCode::SUCCESS)
        }

        Command::Validate {
            config,
            tolerance,
            mc,
            out,
        } => {
            let spec = parse_config(&config)?.into_sweep();
            let mc_cfg = mc.config();
            let echo = ResolvedRun {
                command: "validate",
                methods: &[Method::ClosedForm, Method::Quadrature, Method::MonteCarlo],
                mc: &mc_cfg,
                scenario: &spec.fixed,
                axis1: Some(&spec.axis1),
                axis2: spec.axis2.as_ref(),
            };
            write_sidecar(&sidecar_path(out.as_deref()), &echo)?;

            let report = sweep::validate(&spec, tolerance, &mc_cfg)?;
            let mut stdout = std::io::stdout().lock();
            report.write_text(&mut stdout)?;
            if let Some(out_path) = out {
                let mut w = BufWriter::new(File::create(&out_path)?);
                report.write_csv(&mut w)?;
                w.flush()?;
            }
            Ok(if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }

        Command::Absorption {
            config,
            out,
            from_ghz,
            to_ghz,
            points,
        } => {
            let scenario = match config {
                Some(path) => parse_config(&path)?.fixed_scenario().clone(),
                None => Default::default(),
            };
            let mc_cfg = McConfig::default();
            let echo = ResolvedRun {
                command: "absorption",
                methods: &[],
                mc: &mc_cfg,
                scenario: &scenario,
                axis1: None,
                axis2: None,
            };
            write_sidecar(&sidecar_path(Some(&out)), &echo)?;

            let mut w = BufWriter::new(File::create(&out)?);
            sweep::write_absorption_table(
                &scenario.environment,
                from_ghz * 1e9,
                to_ghz * 1e9,
                points,
                &mut w,
            )?;
            w.flush()?;
            eprintln!("wrote absorption table to {}", out.display());
            Ok(ExitCode::SUCCESS)
        }
    }
}
