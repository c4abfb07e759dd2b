//! Complex Gamma function (Lanczos, g = 7) and the functions built on it.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Returns `Some(n)` if `z` is (numerically) the non-positive integer `n`.
pub(crate) fn nonpositive_integer(z: Complex64) -> Option<i64> {
    let r = z.re.round();
    if r <= 0.0 && (z.re - r).abs() <= 1e-13 * r.abs().max(1.0) && z.im.abs() <= 1e-13 {
        Some(r as i64)
    } else {
        None
    }
}

fn ln_gamma_right(z: Complex64) -> Complex64 {
    // valid for Re z >= 1/2
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

/// `ln Γ(z)` up to a multiple of `2πi` (only `exp` of it is used).
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    if nonpositive_integer(z).is_some() {
        return Err(Error::Pole(z));
    }
    if z.re < 0.5 {
        let s = (PI * z).sin();
        Ok(Complex64::new(PI.ln(), 0.0) - s.ln() - ln_gamma_right(1.0 - z))
    } else {
        Ok(ln_gamma_right(z))
    }
}

pub fn gamma(z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 && z.re > 0.0 && z.re < 171.0 && z.re == z.re.round() {
        // exact factorials for small positive integers
        let n = z.re as u32;
        let mut acc = 1.0f64;
        for k in 2..n {
            acc *= k as f64;
        }
        return Ok(Complex64::new(acc, 0.0));
    }
    ln_gamma(z).map(|l| l.exp())
}

/// `1/Γ(z)`, entire; zero at the poles of `Γ`.
pub fn rgamma(z: Complex64) -> Complex64 {
    match gamma(z) {
        Ok(g) => 1.0 / g,
        Err(_) => Complex64::new(0.0, 0.0),
    }
}

/// `Γ_R(s) = π^{-s/2} Γ(s/2)`.
pub fn gamma_r(s: Complex64) -> Result<Complex64> {
    let half = s * 0.5;
    if nonpositive_integer(half).is_some() {
        return Err(Error::Pole(s));
    }
    Ok(Complex64::new(PI, 0.0).powc(-half) * gamma(half)?)
}

/// Rising factorial `x (x+1) ⋯ (x+n-1)`.
pub fn pochhammer(x: Complex64, n: usize) -> Complex64 {
    (0..n).fold(Complex64::new(1.0, 0.0), |acc, k| acc * (x + k as f64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn gamma_r_trivial_values() {
        assert!((gamma_r(c(1.0, 0.0)).unwrap() - 1.0).norm() < 1e-15);
        assert!((gamma_r(c(2.0, 0.0)).unwrap() - 1.0 / PI).norm() < 1e-15);
        assert_eq!(gamma_r(c(0.0, 0.0)), Err(Error::Pole(c(0.0, 0.0))));
        assert!(gamma_r(c(-4.0, 0.0)).is_err());
        assert!(gamma_r(c(-3.0, 0.0)).is_ok());
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(c(3.0, 0.0), 2), c(12.0, 0.0));
        assert_eq!(pochhammer(c(-7.5, 2.0), 0), c(1.0, 0.0));
        assert!((pochhammer(c(0.5, 0.0), 2) - 0.75).norm() < 1e-15);
    }

    #[test]
    fn gamma_known_values() {
        assert!((gamma(c(0.5, 0.0)).unwrap() - PI.sqrt()).norm() < 1e-14);
        assert!((gamma(c(-0.5, 0.0)).unwrap() + 2.0 * PI.sqrt()).norm() < 1e-13);
        // |Γ(1/2 + it)|^2 = π / cosh(πt)
        for t in [0.3, 2.0, 10.0, 30.0] {
            let g = gamma(c(0.5, t)).unwrap();
            let expect = PI / (PI * t).cosh();
            assert!((g.norm_sqr() / expect - 1.0).abs() < 1e-12, "t={t}");
        }
        // recurrence Γ(z+1) = zΓ(z)
        let z = c(0.37, -4.2);
        let lhs = gamma(z + 1.0).unwrap();
        let rhs = z * gamma(z).unwrap();
        assert!((lhs / rhs - 1.0).norm() < 1e-13);
    }

    #[test]
    fn rgamma_vanishes_at_poles() {
        assert_eq!(rgamma(c(0.0, 0.0)), c(0.0, 0.0));
        assert_eq!(rgamma(c(-2.0, 0.0)), c(0.0, 0.0));
        assert!((rgamma(c(1.0, 0.0)) - 1.0).norm() < 1e-15);
    }
}
