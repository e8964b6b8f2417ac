//! One scenario, three independent evaluations: closed form, adaptive
//! quadrature (the reference), and seeded Monte-Carlo.
//!
//! ```bash
//! cargo run --release --example outage_point
//! ```

use thz_outage::channel::MisalignmentParams;
use thz_outage::mcsim::McConfig;
use thz_outage::outage::{outage_probability, Method, Scenario};

fn main() {
    // Both hops misaligned: 5 cm equivalent beam width, 2 cm jitter.
    let mut scenario = Scenario::default();
    for link in [&mut scenario.link1, &mut scenario.link2] {
        link.misalignment = Some(MisalignmentParams::from_geometry(1.0, 0.05, 0.02).unwrap());
        link.tx_power_over_noise_db = 40.0;
    }
    scenario.snr_threshold = 1.0; // 0 dB

    let mc = McConfig {
        trials: 2_000_000,
        seed: 7,
        chunks: 64,
    };

    println!(
        "both hops misaligned (zeta = {:.2}), 40 dB budgets, 0 dB threshold",
        scenario.link1.misalignment.unwrap().zeta
    );
    for method in [Method::ClosedForm, Method::Quadrature, Method::MonteCarlo] {
        let mc_opt = (method == Method::MonteCarlo).then_some(&mc);
        let eval = outage_probability(&scenario, method, mc_opt).unwrap();
        match eval.result.stderr {
            Some(se) => println!(
                "  {:>12} OP = {:.8e}  (stderr {:.2e})",
                method.label(),
                eval.result.op,
                se
            ),
            None => println!("  {:>12} OP = {:.8e}", method.label(), eval.result.op),
        }
        if !eval.diag.is_clean() {
            println!(
                "        diagnostics: clamped={} nonconverged={} out_of_band={}",
                eval.diag.clamp_events, eval.diag.nonconverged_calls, eval.diag.band_warnings
            );
        }
    }
}
