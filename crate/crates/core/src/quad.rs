//! Trapezoid-based quadrature: double-exponential rules on the half line and
//! the periodic trapezoid rule on circles.
//!
//! Both rules converge geometrically for the analytic integrands used here, so
//! refinement halves the step and stops once two successive levels agree.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: Complex64,
    /// Difference between the last two refinement levels.
    pub error_estimate: f64,
    pub levels: usize,
    pub evaluations: usize,
}

/// Trapezoid rule on `[lo, hi]` with step halving. The integrand is assumed
/// to be negligible at both ends, so endpoints get full weight.
pub fn trapezoid_refine<F>(
    g: F,
    lo: f64,
    hi: f64,
    h0: f64,
    rel_tol: f64,
    abs_tol: f64,
    max_levels: usize,
) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex64,
{
    if !(hi > lo) || !(h0 > 0.0) {
        return Err(Error::Quadrature(format!("bad interval [{lo}, {hi}] or step {h0}")));
    }
    let n0 = ((hi - lo) / h0).ceil() as usize;
    let h0 = (hi - lo) / n0 as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut evaluations = 0usize;
    for k in 0..=n0 {
        sum += g(lo + k as f64 * h0);
        evaluations += 1;
    }
    let mut h = h0;
    let mut estimate = sum * h;
    let mut n = n0;
    for level in 1..=max_levels {
        let mut mid = Complex64::new(0.0, 0.0);
        for k in 0..n {
            mid += g(lo + (k as f64 + 0.5) * h);
        }
        evaluations += n;
        sum += mid;
        n *= 2;
        h *= 0.5;
        let next = sum * h;
        let diff = (next - estimate).norm();
        if !next.re.is_finite() || !next.im.is_finite() {
            return Err(Error::Quadrature("non-finite integrand value".into()));
        }
        if level >= 2 && diff <= abs_tol.max(rel_tol * next.norm()) {
            return Ok(QuadResult { value: next, error_estimate: diff, levels: level, evaluations });
        }
        estimate = next;
    }
    Err(Error::Quadrature(format!(
        "no convergence after {max_levels} refinements (last estimate {estimate})"
    )))
}

/// `∫_0^∞ f(x) dx` via the exp-sinh map `x = exp(π/2 · sinh t)`.
///
/// `f` must decay at infinity and be integrable at zero; algebraic endpoint
/// singularities are absorbed by the map. Nodes whose abscissa under- or
/// overflows are skipped.
pub fn exp_sinh<F>(f: F, rel_tol: f64, abs_tol: f64, max_levels: usize) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex64,
{
    exp_sinh_on(f, -6.5, 6.5, rel_tol, abs_tol, max_levels)
}

pub fn exp_sinh_on<F>(
    f: F,
    t_lo: f64,
    t_hi: f64,
    rel_tol: f64,
    abs_tol: f64,
    max_levels: usize,
) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex64,
{
    let g = |t: f64| {
        let u = FRAC_PI_2 * t.sinh();
        let x = u.exp();
        if x == 0.0 || !x.is_finite() {
            return Complex64::new(0.0, 0.0);
        }
        let v = f(x);
        if v.re == 0.0 && v.im == 0.0 {
            return v;
        }
        v * (x * FRAC_PI_2 * t.cosh())
    };
    trapezoid_refine(g, t_lo, t_hi, 0.25, rel_tol, abs_tol, max_levels)
}

/// `(1/2πi) ∮ f(s) ds` over the positively oriented circle, `n` equally
/// spaced nodes.
pub fn circle_integral<F>(f: F, center: Complex64, radius: f64, n: usize) -> Complex64
where
    F: Fn(Complex64) -> Complex64,
{
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..n {
        let e = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64);
        acc += f(center + e * radius) * e;
    }
    acc * (radius / n as f64)
}

/// Fallible variant of [`circle_integral`]; the first error aborts.
pub fn try_circle_integral<F>(f: F, center: Complex64, radius: f64, n: usize) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..n {
        let e = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64);
        acc += f(center + e * radius)? * e;
    }
    Ok(acc * (radius / n as f64))
}
