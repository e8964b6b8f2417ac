//! Outage probability versus pointing jitter for several power budgets:
//! both hops share a 5 cm equivalent beam width, the jitter standard
//! deviation sweeps 1 cm to 5 cm, and each column fixes
//! P1/N0 = P2/N0 relative to a 0 dB threshold.
//!
//! ```bash
//! cargo run --example misalignment_sweep
//! ```

use thz_outage::channel::MisalignmentParams;
use thz_outage::outage::{outage_probability, Method, Scenario};

fn scenario(sigma_m: f64, budget_db: f64) -> Scenario {
    let mut s = Scenario::default();
    for link in [&mut s.link1, &mut s.link2] {
        link.tx_power_over_noise_db = budget_db;
        link.misalignment = Some(MisalignmentParams::from_geometry(1.0, 0.05, sigma_m).unwrap());
    }
    s
}

fn main() {
    let budgets = [40.0, 50.0, 60.0];
    print!("{:>10}", "sigma_cm");
    for b in budgets {
        print!("{:>14}", format!("OP@{b}dB"));
    }
    println!();

    for i in 0..=16 {
        let sigma = 0.01 + 0.04 * i as f64 / 16.0;
        print!("{:>10.3}", sigma * 100.0);
        for b in budgets {
            let op = outage_probability(&scenario(sigma, b), Method::Quadrature, None)
                .unwrap()
                .result
                .op;
            print!("{:>14.4e}", op);
        }
        println!();
    }

    let tight = outage_probability(&scenario(0.01, 50.0), Method::Quadrature, None)
        .unwrap()
        .result
        .op;
    let loose = outage_probability(&scenario(0.05, 50.0), Method::Quadrature, None)
        .unwrap()
        .result
        .op;
    println!();
    println!(
        "at 50 dB: OP spans {:.3e} -> {:.3e} ({:.1e}x) as jitter grows 1 cm -> 5 cm",
        tight,
        loose,
        loose / tight
    );
}
