//! Molecular absorption coefficient β(f) across the 275-425 GHz band for a
//! few humidity levels, plus the location of the in-band extremes.
//!
//! ```bash
//! cargo run --example absorption_spectrum
//! ```

use thz_outage::atmosphere::{absorption_coefficient, Environment};

fn main() {
    let humidities = [0.0, 0.25, 0.5, 1.0];
    let envs: Vec<Environment> = humidities
        .iter()
        .map(|&rh| Environment::new(296.0, 1013.25, rh).unwrap())
        .collect();

    println!("# beta(f) in 1/m at 296 K, 1013.25 hPa");
    print!("{:>10}", "f_GHz");
    for rh in humidities {
        print!("{:>14}", format!("rh={rh}"));
    }
    println!();

    for i in 0..=30 {
        let f = 275e9 + (425e9 - 275e9) * i as f64 / 30.0;
        print!("{:>10.1}", f / 1e9);
        for env in &envs {
            print!("{:>14.4e}", absorption_coefficient(f, env));
        }
        println!();
    }

    // Scan on a fine grid for the extremes at standard conditions.
    let std_env = Environment::standard();
    let mut min = (0.0, f64::MAX);
    let mut max = (0.0, f64::MIN);
    for i in 0..=150_000 {
        let f = 275e9 + 1e6 * i as f64;
        let b = absorption_coefficient(f, &std_env);
        if b < min.1 {
            min = (f, b);
        }
        if b > max.1 {
            max = (f, b);
        }
    }
    println!();
    println!(
        "standard conditions: minimum beta {:.4e} /m at {:.3} GHz, maximum {:.4e} /m at {:.3} GHz",
        min.1,
        min.0 / 1e9,
        max.1,
        max.0 / 1e9
    );
    println!("(the window near the band floor and the water line near 380 GHz drive link planning)");
}
