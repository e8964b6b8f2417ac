//! Outage probability of dual-hop decode-and-forward THz relay links.
//!
//! The end-to-end SNR of a two-hop decode-and-forward link is the minimum of
//! the per-hop SNRs; each hop combines a deterministic path gain (free-space
//! spreading plus molecular absorption in the 275-425 GHz band), α-μ
//! (generalized Gamma) small-scale fading, and optionally a power-law beam
//! misalignment coefficient. This crate evaluates the outage probability
//! Pr(min(ρ₁, ρ₂) ≤ ρ_th) three independent ways and cross-checks them:
//!
//! * closed form: finite sums of (possibly negative-argument) upper
//!   incomplete gamma functions ([`outage::cdf_link_bm_closed`]),
//! * deterministic adaptive quadrature of the defining product-distribution
//!   integral (the reference oracle),
//! * seeded, chunk-parallel Monte-Carlo simulation ([`mcsim`]).
//!
//! Start with the runnable examples (`cargo run --example outage_point`,
//! `--example misalignment_sweep`, ...) or the `thz-outage` binary, which
//! exposes `point`, `sweep`, `validate`, and `absorption` subcommands over a
//! TOML scenario file.

// Frozen oracle values intentionally carry more digits than f64 resolves,
// and domain validation uses negated comparisons so NaN fails closed.
#![allow(clippy::excessive_precision)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod atmosphere;
pub mod channel;
pub mod config;
pub mod mcsim;
pub mod outage;
pub mod quad;
pub mod specfun;
pub mod sweep;

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

pub use atmosphere::{Environment, ResonanceForm};
pub use channel::{BeamGeometry, HopStatistics, LinkConfig, MisalignmentParams};
pub use config::{parse_config, parse_config_str, ConfigError, ParsedConfig};
pub use mcsim::{McConfig, McEstimate};
pub use outage::{
    combine_links, outage_probability, EvalDiagnostics, Evaluation, Method, MisalignmentCase,
    OutageError, OutageResult, Scenario,
};
pub use sweep::{SweepAxis, SweepSpec, ValidationReport};
