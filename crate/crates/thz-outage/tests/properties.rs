//! Randomized cross-module invariants: outage-probability monotonicity along
//! every sweepable axis, and closed-form vs quadrature agreement of the
//! misaligned-link CDF over a broad random parameter grid.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use thz_outage::channel::MisalignmentParams;
use thz_outage::outage::{
    self, cdf_link_bm_closed_with_mean_snr, cdf_link_quadrature_with_mean_snr, EvalDiagnostics,
    Method, Scenario,
};
use thz_outage::LinkConfig;

/// Numerical slack for monotonicity: both quadrature tolerance and
/// closed-form round-off sit far below this.
const MONO_SLACK: f64 = 1e-9;

fn quad_op(s: &Scenario) -> f64 {
    outage::outage_probability(s, Method::Quadrature, None)
        .unwrap()
        .result
        .op
}

fn random_bm_scenario(rng: &mut ChaCha12Rng) -> Scenario {
    let mut scenario = Scenario::default();
    for link in [&mut scenario.link1, &mut scenario.link2] {
        link.tx_power_over_noise_db = rng.gen_range(15.0..35.0);
        link.misalignment = Some(
            MisalignmentParams::from_geometry(1.0, 0.05, rng.gen_range(0.01..0.03)).unwrap(),
        );
    }
    scenario.snr_threshold = 10.0_f64.powf(rng.gen_range(-3.0..3.0) / 10.0);
    scenario
}

fn assert_monotone(values: &[f64], nondecreasing: bool, what: &str) {
    for (i, pair) in values.windows(2).enumerate() {
        let ok = if nondecreasing {
            pair[1] >= pair[0] - MONO_SLACK
        } else {
            pair[1] <= pair[0] + MONO_SLACK
        };
        assert!(
            ok,
            "{what}: monotonicity broken at step {i}: {} -> {}",
            pair[0], pair[1]
        );
    }
}

#[test]
fn op_nondecreasing_in_threshold() {
    let mut rng = ChaCha12Rng::seed_from_u64(101);
    for _ in 0..2 {
        let base = random_bm_scenario(&mut rng);
        let ops: Vec<f64> = (0..100)
            .map(|i| {
                let mut s = base.clone();
                s.snr_threshold = 10.0_f64.powf((-20.0 + 0.45 * i as f64) / 10.0);
                quad_op(&s)
            })
            .collect();
        assert_monotone(&ops, true, "rho_th");
    }
}

#[test]
fn op_nonincreasing_in_each_power_budget() {
    let mut rng = ChaCha12Rng::seed_from_u64(102);
    let base = random_bm_scenario(&mut rng);
    for link_idx in 0..2 {
        let ops: Vec<f64> = (0..100)
            .map(|i| {
                let mut s = base.clone();
                let budget = 5.0 + 0.4 * i as f64;
                if link_idx == 0 {
                    s.link1.tx_power_over_noise_db = budget;
                } else {
                    s.link2.tx_power_over_noise_db = budget;
                }
                quad_op(&s)
            })
            .collect();
        assert_monotone(&ops, false, "tx_power_over_noise_db");
    }
}

#[test]
fn op_nonincreasing_in_each_antenna_gain() {
    let mut rng = ChaCha12Rng::seed_from_u64(103);
    let base = random_bm_scenario(&mut rng);
    for which in 0..2 {
        let ops: Vec<f64> = (0..100)
            .map(|i| {
                let mut s = base.clone();
                let gain = 30.0 + 0.3 * i as f64;
                if which == 0 {
                    s.link1.tx_gain_db = gain;
                } else {
                    s.link2.rx_gain_db = gain;
                }
                quad_op(&s)
            })
            .collect();
        assert_monotone(&ops, false, "antenna gain");
    }
}

#[test]
fn op_nondecreasing_in_jitter_sigma() {
    let mut rng = ChaCha12Rng::seed_from_u64(104);
    let base = random_bm_scenario(&mut rng);
    let ops: Vec<f64> = (0..100)
        .map(|i| {
            let mut s = base.clone();
            let sigma = 0.005 + 0.0005 * i as f64;
            for link in [&mut s.link1, &mut s.link2] {
                let mp = link.misalignment.unwrap();
                link.misalignment =
                    Some(MisalignmentParams::from_geometry(mp.s_o, 0.05, sigma).unwrap());
            }
            quad_op(&s)
        })
        .collect();
    assert_monotone(&ops, true, "jitter sigma (zeta recomputed)");
}

#[test]
fn upper_inc_gamma_matches_direct_integration() {
    // Dual route: the series/continued-fraction implementation against
    // adaptive Gauss-Kronrod integration of ∫_x^∞ t^{a-1} e^{-t} dt on a
    // 200-point random grid.
    let mut rng = ChaCha12Rng::seed_from_u64(7071);
    for _ in 0..200 {
        let a: f64 = rng.gen_range(-8.0..12.0);
        let x = 10.0_f64.powf(rng.gen_range(-1.3..1.48)); // [0.05, 30]
        // Truncation: the tail beyond x+80 is below 1e-18 of the integral.
        let upper_limit = x.max(a.abs()) + 80.0;
        let oracle = thz_outage::quad::integrate(
            |t| ((a - 1.0) * t.ln() - t).exp(),
            x,
            upper_limit,
            0.0,
            1e-10,
        )
        .unwrap();
        let got = thz_outage::specfun::upper_inc_gamma(a, x).unwrap();
        assert!(got.converged);
        let rel = ((got.value - oracle.value) / oracle.value).abs();
        assert!(
            rel <= 1e-8,
            "a={a}, x={x}: impl={:.12e} integral={:.12e} rel={rel:.2e}",
            got.value,
            oracle.value
        );
    }
}

#[test]
fn second_hop_on_the_absorption_line_dominates_pointwise() {
    // Sweeping f1 with f2 parked at 383 GHz must sit above the same sweep
    // with f2 at 275 GHz, at every grid point and for every misalignment case.
    let cases = [(true, true), (true, false), (false, true), (false, false)];
    for (bm1, bm2) in cases {
        for i in 0..16 {
            let f1 = 275e9 + (425e9 - 275e9) * i as f64 / 15.0;
            let op_at = |f2: f64| {
                let mut s = Scenario::default();
                s.link1.frequency_hz = f1;
                s.link2.frequency_hz = f2;
                let mp = MisalignmentParams::from_geometry(1.0, 0.05, 0.01).unwrap();
                if bm1 {
                    s.link1.misalignment = Some(mp);
                }
                if bm2 {
                    s.link2.misalignment = Some(mp);
                }
                quad_op(&s)
            };
            let low = op_at(275e9);
            let high = op_at(383e9);
            assert!(
                high >= low,
                "f1={:.0} GHz bm=({bm1},{bm2}): OP(f2=383G)={high:.3e} < OP(f2=275G)={low:.3e}",
                f1 / 1e9
            );
        }
    }
}

#[test]
fn closed_form_tracks_quadrature_on_random_grid() {
    let mut rng = ChaCha12Rng::seed_from_u64(2024);
    let mut worst: (f64, String) = (0.0, String::new());
    for trial in 0..50 {
        let alpha = [1.0, 2.0, 3.0][rng.gen_range(0..3)];
        let mu = rng.gen_range(1..=4) as f64;
        let hhat = rng.gen_range(0.5..2.0);
        let zeta = 10.0_f64.powf(rng.gen_range(-0.7..1.2));
        let s_o = rng.gen_range(0.5..1.0);
        let mean_snr = 10.0_f64.powf(rng.gen_range(1.0..6.0));
        let x = 10.0_f64.powf(rng.gen_range(-2.0..2.0));

        let link = LinkConfig {
            fading_alpha: alpha,
            fading_mu: mu,
            fading_hhat: hhat,
            misalignment: Some(MisalignmentParams::from_zeta(s_o, zeta).unwrap()),
            ..LinkConfig::default()
        };
        let mut diag = EvalDiagnostics::default();
        let closed = cdf_link_bm_closed_with_mean_snr(x, &link, mean_snr, &mut diag).unwrap();
        let quadr = cdf_link_quadrature_with_mean_snr(x, &link, mean_snr, &mut diag).unwrap();
        let gap = (closed - quadr).abs();
        let bound = 1e-9_f64.max(1e-7 * quadr);
        let label = format!(
            "trial {trial}: α={alpha} μ={mu} ĥ={hhat:.3} ζ={zeta:.3} S_o={s_o:.3} ρ̄={mean_snr:.3e} x={x:.3e}: closed={closed:.12e} quad={quadr:.12e}"
        );
        assert!(gap <= bound, "{label} gap={gap:.3e} bound={bound:.3e}");
        if gap / bound > worst.0 {
            worst = (gap / bound, label);
        }
    }
    println!("worst closed-vs-quadrature case: {}", worst.1);
}
