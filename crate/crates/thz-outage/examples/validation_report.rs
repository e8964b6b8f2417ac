//! Cross-validate the closed-form outage expressions against the quadrature
//! oracle and Monte-Carlo over a threshold grid, and print the report:
//! the library-level equivalent of the `validate` subcommand.
//!
//! ```bash
//! cargo run --release --example validation_report
//! ```

use thz_outage::channel::MisalignmentParams;
use thz_outage::mcsim::McConfig;
use thz_outage::outage::{Method, Scenario};
use thz_outage::sweep::{validate, AxisScale, ParameterPath, SweepAxis, SweepSpec};

fn main() {
    // Mixed case: only the first hop is misaligned.
    let mut fixed = Scenario::default();
    fixed.link1.misalignment = Some(MisalignmentParams::from_geometry(1.0, 0.05, 0.02).unwrap());
    fixed.link1.tx_power_over_noise_db = 40.0;
    fixed.link2.tx_power_over_noise_db = 40.0;

    let spec = SweepSpec {
        axis1: SweepAxis {
            parameter: ParameterPath::SnrThresholdDb,
            start: -5.0,
            stop: 20.0,
            points: 11,
            scale: AxisScale::Db,
        },
        axis2: None,
        fixed,
        methods: vec![Method::ClosedForm, Method::Quadrature, Method::MonteCarlo],
    };
    let mc = McConfig {
        trials: 1_000_000,
        seed: 99,
        chunks: 64,
    };

    let report = validate(&spec, 0.01, &mc).unwrap();
    let mut stdout = std::io::stdout().lock();
    report.write_text(&mut stdout).unwrap();
}
