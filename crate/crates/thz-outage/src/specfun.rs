//! Gamma-family special functions: Γ(a), ln Γ(a), the upper and lower
//! incomplete gamma functions, and erf.
//!
//! The upper incomplete gamma function accepts negative first arguments,
//! which the closed-form outage expressions require whenever the
//! misalignment shape exceeds the fading nonlinearity. Evaluation strategy:
//!
//! * `a > 0`: lower-series below the `x = a + 1` crossover, Lentz continued
//!   fraction above it.
//! * `a <= 0`, `x >= 1`: the continued fraction converges directly (all
//!   partial denominators positive and growing).
//! * `a <= 0`, `x < 1`: anchor at `a0` in (-1/2, 1/2] with a cancellation-free
//!   small-`a` series, then recurse downward in the scaled form
//!   `G(a) = Γ(a,x) · x^{-a} · e^x`, for which the recurrence
//!   `G(a-1) = (x·G(a) - 1)/(a - 1)` is a contraction.
//!
//! Everything is plain `f64`; results carry a convergence flag and the
//! iteration count instead of silently returning garbage.

/// Iteration budget for series and continued-fraction loops.
pub const MAX_ITERATIONS: u32 = 10_000;

/// Euler-Mascheroni constant.
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Auxiliary variable for the Lanczos-type `ln_gamma` evaluation.
const GAMMA_R: f64 = 10.900511;

/// Polynomial coefficients for the Lanczos-type `ln_gamma` evaluation
/// (Pugh, "An Analysis of the Lanczos Gamma Approximation", 2004).
const GAMMA_DK: &[f64] = &[
    2.48574089138753565546e-5,
    1.05142378581721974210,
    -3.45687097222016235469,
    4.51227709466894823700,
    -2.98285225323576655721,
    1.05639711577126713077,
    -1.95428773191645869583e-1,
    1.70970543404441224307e-2,
    -5.71926117404305781283e-4,
    4.63399473359905636708e-6,
    -2.71994908488607703910e-9,
];

const LN_PI: f64 = 1.144_729_885_849_400_2;
const LN_2_SQRT_E_OVER_PI: f64 = 0.620_782_237_635_245_2;

/// Outcome of an iterative special-function evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecFunResult {
    /// The computed value.
    pub value: f64,
    /// True when the iteration terminated within budget and the value is finite.
    pub converged: bool,
    /// Number of series/continued-fraction iterations plus recurrence steps.
    pub iterations: u32,
}

impl SpecFunResult {
    fn new(value: f64, converged: bool, iterations: u32) -> Self {
        Self {
            value,
            converged: converged && value.is_finite(),
            iterations,
        }
    }
}

/// Domain violations for the special functions.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpecFunError {
    #[error("gamma function pole at non-positive integer a = {0}")]
    GammaPole(f64),
    #[error("{function}: argument out of domain: {message}")]
    Domain {
        function: &'static str,
        message: String,
    },
}

fn domain(function: &'static str, message: impl Into<String>) -> SpecFunError {
    SpecFunError::Domain {
        function,
        message: message.into(),
    }
}

/// Natural log of Γ(x) for x > 0, accurate to ~16 digits.
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        let s = GAMMA_DK
            .iter()
            .enumerate()
            .skip(1)
            .fold(GAMMA_DK[0], |s, (i, &t)| s + t / (i as f64 - x));
        LN_PI
            - (std::f64::consts::PI * x).sin().ln()
            - s.ln()
            - LN_2_SQRT_E_OVER_PI
            - (0.5 - x) * ((0.5 - x + GAMMA_R) / std::f64::consts::E).ln()
    } else {
        let s = GAMMA_DK
            .iter()
            .enumerate()
            .skip(1)
            .fold(GAMMA_DK[0], |s, (i, &t)| s + t / (x + i as f64 - 1.0));
        s.ln()
            + LN_2_SQRT_E_OVER_PI
            + (x - 0.5) * ((x - 0.5 + GAMMA_R) / std::f64::consts::E).ln()
    }
}

/// Γ(a) for real a, excluding the poles at non-positive integers.
pub fn gamma(a: f64) -> Result<f64, SpecFunError> {
    if a <= 0.0 && a == a.floor() {
        return Err(SpecFunError::GammaPole(a));
    }
    if a < 0.5 {
        // Reflection: Γ(a) Γ(1-a) = π / sin(πa).
        let reflected = ln_gamma(1.0 - a).exp();
        Ok(std::f64::consts::PI / ((std::f64::consts::PI * a).sin() * reflected))
    } else {
        let s = GAMMA_DK
            .iter()
            .enumerate()
            .skip(1)
            .fold(GAMMA_DK[0], |s, (i, &t)| s + t / (a + i as f64 - 1.0));
        const TWO_SQRT_E_OVER_PI: f64 = 1.860_382_734_205_265_7;
        Ok(s * TWO_SQRT_E_OVER_PI * ((a - 0.5 + GAMMA_R) / std::f64::consts::E).powf(a - 0.5))
    }
}

/// Internal representation carrying the value both raw and in log form.
#[derive(Debug, Clone, Copy)]
struct UpperParts {
    ln_value: f64,
    value: f64,
    converged: bool,
    iterations: u32,
}

impl UpperParts {
    fn from_ln(ln_value: f64, converged: bool, iterations: u32) -> Self {
        Self {
            ln_value,
            value: ln_value.exp(),
            converged,
            iterations,
        }
    }

    fn from_value(value: f64, converged: bool, iterations: u32) -> Self {
        Self {
            ln_value: if value > 0.0 { value.ln() } else { f64::NAN },
            value,
            converged: converged && value > 0.0,
            iterations,
        }
    }
}

/// Lentz continued fraction for Γ(a,x) = e^{-x} x^a / (x+1-a - 1(1-a)/(x+3-a - ...)).
fn upper_cf(a: f64, x: f64) -> UpperParts {
    let tiny = 1e-300;
    let eps = f64::EPSILON;
    let b0 = x + 1.0 - a;
    let mut f = if b0.abs() < tiny { tiny } else { b0 };
    let mut c = f;
    let mut d = 0.0_f64;
    for n in 1..=MAX_ITERATIONS {
        let nf = n as f64;
        let an = nf * (a - nf);
        let bn = x + 2.0 * nf + 1.0 - a;
        d = bn + an * d;
        if d.abs() < tiny {
            d = tiny;
        }
        d = 1.0 / d;
        c = bn + an / c;
        if c.abs() < tiny {
            c = tiny;
        }
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < eps {
            let ln = a * x.ln() - x - f.ln();
            return UpperParts::from_ln(ln, true, n);
        }
    }
    let ln = a * x.ln() - x - f.ln();
    UpperParts::from_ln(ln, false, MAX_ITERATIONS)
}

/// Lower-series sum S = Σ_{n>=0} x^n / (a (a+1) ... (a+n)), so that
/// γ(a,x) = S · x^a e^{-x}. Requires a > 0.
fn lower_series_sum(a: f64, x: f64) -> (f64, bool, u32) {
    let eps = f64::EPSILON;
    let mut term = 1.0 / a;
    let mut sum = term;
    let mut ap = a;
    for n in 1..=MAX_ITERATIONS {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if term.abs() < sum.abs() * eps {
            return (sum, true, n);
        }
    }
    (sum, false, MAX_ITERATIONS)
}

/// Γ(a0, x) for |a0| <= 1/2 and 0 < x < ~1.5 via the cancellation-free form
/// Γ(a,x) = (Γ(a+1) - x^a)/a - x^a Σ_{n>=1} (-x)^n / (n! (a+n)).
fn upper_small_a_anchor(a0: f64, x: f64) -> (f64, bool, u32) {
    let ln_x = x.ln();
    let lead = if a0 == 0.0 {
        -EULER_GAMMA - ln_x
    } else {
        let g1 = ln_gamma(a0 + 1.0).exp_m1(); // Γ(a0+1) - 1
        let g2 = (a0 * ln_x).exp_m1(); //        x^a0     - 1
        (g1 - g2) / a0
    };
    let xa = (a0 * ln_x).exp();
    let mut term = 1.0_f64;
    let mut sum = 0.0_f64;
    for n in 1..=MAX_ITERATIONS {
        term *= -x / n as f64;
        let add = term / (a0 + n as f64);
        sum += add;
        if add.abs() < 1e-17 * sum.abs().max(1e-30) {
            return (lead - xa * sum, true, n);
        }
    }
    (lead - xa * sum, false, MAX_ITERATIONS)
}

/// Γ(a, x) for a <= 0 and 0 < x < 1: anchored series plus scaled downward
/// recurrence. The scaled quantity G = Γ(a,x) x^{-a} e^x stays O(1).
fn upper_neg_small_x(a: f64, x: f64) -> UpperParts {
    let mut steps = (-a).floor() as i64 + 1;
    let mut a0 = a + steps as f64; // in (0, 1]
    if a0 > 0.5 {
        a0 -= 1.0;
        steps -= 1;
    }
    let (anchor, ok, iters) = upper_small_a_anchor(a0, x);
    let ln_x = x.ln();
    let mut g = anchor * (-a0 * ln_x + x).exp();
    let mut aa = a0;
    for _ in 0..steps {
        g = (x * g - 1.0) / (aa - 1.0);
        aa -= 1.0;
    }
    if g <= 0.0 || !g.is_finite() {
        // Cancellation destroyed the anchor; surface it rather than guess.
        return UpperParts {
            ln_value: f64::NAN,
            value: f64::NAN,
            converged: false,
            iterations: iters + steps as u32,
        };
    }
    let ln = g.ln() + a * ln_x - x;
    UpperParts {
        ln_value: ln,
        value: ln.exp(),
        converged: ok,
        iterations: iters + steps as u32,
    }
}

fn upper_parts(a: f64, x: f64) -> Result<UpperParts, SpecFunError> {
    if !x.is_finite() || !a.is_finite() {
        return Err(domain("upper_inc_gamma", format!("non-finite input a={a}, x={x}")));
    }
    if x < 0.0 {
        return Err(domain("upper_inc_gamma", format!("x must be >= 0, got {x}")));
    }
    if x == 0.0 {
        // Γ(a, 0) = Γ(a), defined only for a > 0.
        if a > 0.0 {
            return Ok(UpperParts::from_value(gamma(a)?, true, 0));
        }
        return Err(domain(
            "upper_inc_gamma",
            format!("x must be > 0 when a <= 0, got a={a}, x=0"),
        ));
    }
    if a > 0.0 {
        if x < a + 1.0 {
            let (sum, ok, iters) = lower_series_sum(a, x);
            let gam = gamma(a)?;
            let glow = sum * (a * x.ln() - x).exp();
            Ok(UpperParts::from_value(gam - glow, ok, iters))
        } else {
            Ok(upper_cf(a, x))
        }
    } else if x >= 1.0 {
        Ok(upper_cf(a, x))
    } else {
        Ok(upper_neg_small_x(a, x))
    }
}

/// Upper incomplete gamma function Γ(a, x) = ∫_x^∞ t^{a-1} e^{-t} dt.
///
/// Accepts any real `a` (x > 0 required when a <= 0). Relative accuracy is
/// ~1e-13 or better for a in [-20, 50], x in (1e-8, 100].
pub fn upper_inc_gamma(a: f64, x: f64) -> Result<SpecFunResult, SpecFunError> {
    let p = upper_parts(a, x)?;
    Ok(SpecFunResult::new(p.value, p.converged, p.iterations))
}

/// ln Γ(a, x). Same domain as [`upper_inc_gamma`]; useful where Γ(a,x)
/// itself would overflow (very negative `a` with small `x`), since the
/// outage expressions only ever need the product z^{ζ/α}·Γ(a,z).
pub fn ln_upper_inc_gamma(a: f64, x: f64) -> Result<SpecFunResult, SpecFunError> {
    let p = upper_parts(a, x)?;
    Ok(SpecFunResult {
        value: p.ln_value,
        converged: p.converged && p.ln_value.is_finite(),
        iterations: p.iterations,
    })
}

/// Lower incomplete gamma function γ(a, x) = ∫_0^x t^{a-1} e^{-t} dt, a > 0.
pub fn lower_inc_gamma(a: f64, x: f64) -> Result<SpecFunResult, SpecFunError> {
    if !(a > 0.0) {
        return Err(domain("lower_inc_gamma", format!("a must be > 0, got {a}")));
    }
    if !(x >= 0.0) {
        return Err(domain("lower_inc_gamma", format!("x must be >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(SpecFunResult::new(0.0, true, 0));
    }
    if x < a + 1.0 {
        let (sum, ok, iters) = lower_series_sum(a, x);
        let value = sum * (a * x.ln() - x).exp();
        Ok(SpecFunResult::new(value, ok, iters))
    } else {
        let p = upper_cf(a, x);
        Ok(SpecFunResult::new(gamma(a)? - p.value, p.converged, p.iterations))
    }
}

/// Regularized lower incomplete gamma P(a, x) = γ(a,x)/Γ(a), a > 0.
///
/// Keeps full relative precision for small x (series route), which the
/// fading CDF needs in the deep outage tail.
pub fn reg_lower_inc_gamma(a: f64, x: f64) -> Result<SpecFunResult, SpecFunError> {
    if !(a > 0.0) {
        return Err(domain("reg_lower_inc_gamma", format!("a must be > 0, got {a}")));
    }
    if !(x >= 0.0) {
        return Err(domain("reg_lower_inc_gamma", format!("x must be >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(SpecFunResult::new(0.0, true, 0));
    }
    if x < a + 1.0 {
        let (sum, ok, iters) = lower_series_sum(a, x);
        let value = sum * (a * x.ln() - x - ln_gamma(a)).exp();
        Ok(SpecFunResult::new(value, ok, iters))
    } else {
        let p = upper_cf(a, x);
        let q = (p.ln_value - ln_gamma(a)).exp();
        Ok(SpecFunResult::new(1.0 - q, p.converged, p.iterations))
    }
}

/// Regularized upper incomplete gamma Q(a, x) = Γ(a,x)/Γ(a), a > 0.
///
/// Full relative precision for large x (continued-fraction route), which the
/// per-link survival factors need at high SNR margins.
pub fn reg_upper_inc_gamma(a: f64, x: f64) -> Result<SpecFunResult, SpecFunError> {
    if !(a > 0.0) {
        return Err(domain("reg_upper_inc_gamma", format!("a must be > 0, got {a}")));
    }
    if !(x >= 0.0) {
        return Err(domain("reg_upper_inc_gamma", format!("x must be >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(SpecFunResult::new(1.0, true, 0));
    }
    if x < a + 1.0 {
        let (sum, ok, iters) = lower_series_sum(a, x);
        let p = sum * (a * x.ln() - x - ln_gamma(a)).exp();
        Ok(SpecFunResult::new(1.0 - p, ok, iters))
    } else {
        let p = upper_cf(a, x);
        let q = (p.ln_value - ln_gamma(a)).exp();
        Ok(SpecFunResult::new(q, p.converged, p.iterations))
    }
}

/// Error function, odd, range (-1, 1), absolute error well below 1e-12.
///
/// Evaluated through the regularized incomplete gamma: erf(x) = P(1/2, x²).
pub fn erf(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let p = reg_lower_inc_gamma(0.5, x * x)
        .map(|r| r.value)
        .unwrap_or(f64::NAN);
    if x > 0.0 {
        p
    } else {
        -p
    }
}
