//! Gauss hypergeometric function `₂F₁(a, b; c; z)`.
//!
//! Three evaluation routes:
//! * the defining power series, used for `|z| ≤ 0.75`;
//! * the Pfaff transform `₂F₁(a,b;c;z) = (1-z)^{-a} ₂F₁(a, c-b; c; z/(z-1))`,
//!   used on the negative real axis `z ≤ -1/2` (and for other `z` whose image
//!   lands well inside the unit disc);
//! * the `1/z` connection formula for `|z| > 1.25`, which needs `a - b ∉ ℤ`.
//!
//! The public [`hyp2f1`] dispatches; the individual routes are exported so the
//! overlaps can be cross-checked.

use num_complex::Complex64;

use super::gamma::{gamma, nonpositive_integer, rgamma};
use crate::error::{Error, Result};

const SERIES_RADIUS: f64 = 0.75;
const CONTINUATION_RADIUS: f64 = 1.25;
const MAX_TERMS: usize = 20_000;

fn check_c(c: Complex64) -> Result<()> {
    if let Some(n) = nonpositive_integer(c) {
        return Err(Error::Parameter(format!("c = {n} is a non-positive integer")));
    }
    Ok(())
}

/// Sum of `Σ (a)_k (b)_k / ((c)_k k!) z^k` with a relative stopping rule.
pub fn hyp2f1_series(a: Complex64, b: Complex64, c: Complex64, z: Complex64) -> Result<Complex64> {
    check_c(c)?;
    if z.norm() >= 1.0 {
        return Err(Error::Convergence(format!("power series at |z| = {} >= 1", z.norm())));
    }
    generic_series(a, b, c, z)
}

fn generic_series(a: Complex64, b: Complex64, c: Complex64, z: Complex64) -> Result<Complex64> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut small = 0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term = term * (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        sum += term;
        if term.norm() == 0.0 {
            return Ok(sum);
        }
        // tail is geometric once the term ratio has settled near |z|
        if term.norm() <= 1e-17 * sum.norm().max(1e-300) && kf > (a.norm() + b.norm()) {
            small += 1;
            if small >= 3 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::Convergence(format!("2F1 series did not settle in {MAX_TERMS} terms at z = {z}")))
}

/// Pfaff-transformed series; valid for `z ∉ (1, ∞)` with `|z/(z-1)| < 1`.
pub fn hyp2f1_pfaff(a: Complex64, b: Complex64, c: Complex64, z: Complex64) -> Result<Complex64> {
    check_c(c)?;
    on_cut(z)?;
    let zeta = z / (z - 1.0);
    if zeta.norm() >= 1.0 {
        return Err(Error::Convergence(format!("Pfaff image |z/(z-1)| = {} >= 1", zeta.norm())));
    }
    let pre = (1.0 - z).powc(-a);
    Ok(pre * generic_series(a, c - b, c, zeta)?)
}

/// Connection formula around `z = ∞`:
///
/// `Γ(b-a)Γ(c)/(Γ(b)Γ(c-a)) (-z)^{-a} Σ (a)_k (a-c+1)_k/(k!(a-b+1)_k) z^{-k} + (a ↔ b)`.
pub fn hyp2f1_continuation(a: Complex64, b: Complex64, c: Complex64, z: Complex64) -> Result<Complex64> {
    check_c(c)?;
    on_cut(z)?;
    if z.norm() <= 1.0 {
        return Err(Error::Convergence(format!("1/z expansion needs |z| > 1, got {}", z.norm())));
    }
    let diff = a - b;
    if diff.im.abs() < 1e-13 && (diff.re - diff.re.round()).abs() < 1e-13 {
        return Err(Error::Continuation(format!("a - b = {diff} is an integer")));
    }
    let gc = gamma(c)?;
    let half = |a: Complex64, b: Complex64| -> Result<Complex64> {
        let pre = gamma(b - a)? * gc * rgamma(b) * rgamma(c - a);
        if pre.norm() == 0.0 {
            return Ok(pre);
        }
        let s = generic_series(a, a - c + 1.0, a - b + 1.0, 1.0 / z)?;
        Ok(pre * (-z).powc(-a) * s)
    };
    Ok(half(a, b)? + half(b, a)?)
}

fn on_cut(z: Complex64) -> Result<()> {
    if z.im == 0.0 && z.re > 1.0 {
        return Err(Error::Domain(format!("z = {} lies on the branch cut (1, inf)", z.re)));
    }
    Ok(())
}

/// `₂F₁(a, b; c; z)` on `ℂ ∖ [1, ∞)`, away from a neighbourhood of `z = 1`.
pub fn hyp2f1(a: Complex64, b: Complex64, c: Complex64, z: Complex64) -> Result<Complex64> {
    check_c(c)?;
    on_cut(z)?;
    let r = z.norm();
    if r <= SERIES_RADIUS {
        return hyp2f1_series(a, b, c, z);
    }
    let negative_real = z.im.abs() <= 1e-14 * r && z.re <= -0.5;
    if negative_real && r <= CONTINUATION_RADIUS {
        return hyp2f1_pfaff(a, b, c, z);
    }
    if r > CONTINUATION_RADIUS {
        match hyp2f1_continuation(a, b, c, z) {
            Err(Error::Continuation(msg)) => {
                // the Pfaff image stays inside the disc on the whole negative axis
                if negative_real {
                    return hyp2f1_pfaff(a, b, c, z);
                }
                return Err(Error::Continuation(msg));
            }
            other => return other,
        }
    }
    let zeta = z / (z - 1.0);
    if zeta.norm() <= 0.8 {
        return hyp2f1_pfaff(a, b, c, z);
    }
    if r <= 0.9 {
        return hyp2f1_series(a, b, c, z);
    }
    Err(Error::Convergence(format!("z = {z} is too close to the singular point 1")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn value_at_zero_is_one() {
        assert_eq!(hyp2f1(c(0.3, 1.0), c(2.0, 0.0), c(0.5, 0.0), c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn elementary_evaluations() {
        let nu = 0.25;
        for w in [0.3f64, 1.0, 2.5, 6.0] {
            let z = c(-w * w, 0.0);
            let v = hyp2f1(c(0.5 + nu, 0.0), c(0.5, 0.0), c(0.5, 0.0), z).unwrap();
            let expect = (1.0 + w * w).powf(-0.5 - nu);
            assert!((v.re / expect - 1.0).abs() < 1e-12, "w={w}: {v}");
            let one = hyp2f1(c(nu, 0.0), c(0.0, 0.0), c(0.5, 0.0), z).unwrap();
            assert!((one - 1.0).norm() < 1e-14);
        }
        // ₂F₁(1,1;2;z) = -ln(1-z)/z
        let z = c(0.3, 0.4);
        let v = hyp2f1(c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), z).unwrap();
        assert!((v + (1.0 - z).ln() / z).norm() < 1e-14);
    }

    #[test]
    fn continuation_matches_pfaff_at_minus_four() {
        let (a, b, cc) = (c(0.6, 0.3), c(0.1, -0.2), c(0.5, 0.0));
        let z = c(-4.0, 0.0);
        let x = hyp2f1_continuation(a, b, cc, z).unwrap();
        let y = hyp2f1_pfaff(a, b, cc, z).unwrap();
        assert!((x - y).norm() < 1e-8 * y.norm().max(1.0));
    }

    #[test]
    fn error_paths() {
        assert!(matches!(
            hyp2f1(c(1.0, 0.0), c(1.0, 0.0), c(-2.0, 0.0), c(0.1, 0.0)),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            hyp2f1(c(1.0, 0.0), c(0.5, 0.0), c(1.5, 0.0), c(3.0, 0.0)),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            hyp2f1(c(1.5, 0.0), c(0.5, 0.0), c(1.5, 0.0), c(2.0, 2.0)),
            Err(Error::Continuation(_))
        ));
        // integer a - b on the negative axis falls back to Pfaff
        let v = hyp2f1(c(1.5, 0.0), c(0.5, 0.0), c(0.5, 0.0), c(-3.0, 0.0)).unwrap();
        assert!(v.norm().is_finite());
    }
}
