//! Deterministic hop budget: path gain and mean SNR as distance, frequency
//! and humidity vary.
//!
//! ```bash
//! cargo run --example link_budget
//! ```

use thz_outage::atmosphere::Environment;
use thz_outage::channel::{hop_statistics, path_gain};
use thz_outage::LinkConfig;

fn main() {
    let env = Environment::standard();
    let base = LinkConfig::default();

    let stats = hop_statistics(&base, &env);
    println!("default hop: 275 GHz, 10 m, 55 dBi / 55 dBi, 50 dB power budget");
    println!("  path gain h_l = {:.6}", stats.path_gain);
    println!(
        "  mean SNR      = {:.6e} ({:.2} dB)",
        stats.mean_snr,
        10.0 * stats.mean_snr.log10()
    );
    println!();

    println!("{:>8} {:>14} {:>14}", "d_m", "path_gain", "mean_snr_dB");
    for d in [1.0, 5.0, 10.0, 20.0, 50.0, 100.0] {
        let link = LinkConfig {
            distance_m: d,
            ..base.clone()
        };
        let s = hop_statistics(&link, &env);
        println!(
            "{:>8.0} {:>14.6e} {:>14.2}",
            d,
            s.path_gain,
            10.0 * s.mean_snr.log10()
        );
    }
    println!();

    // The absorption line near 380 GHz costs real dB at long range.
    println!("{:>8} {:>14} {:>14}", "f_GHz", "gain@10m", "gain@100m");
    for f_ghz in [275.0, 300.0, 325.0, 350.0, 380.0, 425.0] {
        let mut link = base.clone();
        link.frequency_hz = f_ghz * 1e9;
        link.distance_m = 10.0;
        let g10 = path_gain(&link, &env);
        link.distance_m = 100.0;
        let g100 = path_gain(&link, &env);
        println!("{:>8.0} {:>14.6e} {:>14.6e}", f_ghz, g10, g100);
    }
}
