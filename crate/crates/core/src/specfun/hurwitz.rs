//! Hurwitz zeta `ζ(s, a) = Σ_{n≥0} (n + a)^{-s}` by Euler–Maclaurin summation.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `B_2, B_4, …, B_24`.
const BERNOULLI: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

pub const DEFAULT_BERNOULLI_TERMS: usize = 12;

/// Hurwitz zeta with the default correction depth.
pub fn hurwitz_zeta(s: Complex64, a: f64) -> Result<Complex64> {
    hurwitz_zeta_with(s, a, DEFAULT_BERNOULLI_TERMS)
}

/// Hurwitz zeta using `terms ≤ 12` Bernoulli corrections. The direct sum runs
/// to `M ≥ max(2|s|, 20)`, which keeps the remainder below binary64 resolution
/// for `|Im s| ≤ 50` at full depth.
pub fn hurwitz_zeta_with(s: Complex64, a: f64, terms: usize) -> Result<Complex64> {
    if (s - 1.0).norm() < 1e-14 {
        return Err(Error::Pole(Complex64::new(1.0, 0.0)));
    }
    euler_maclaurin(s, a, terms, false)
}

/// `ζ(s, a) - 1/(s-1)`, entire in `s`; equals `-ψ(a)` at `s = 1`.
pub fn hurwitz_zeta_regular(s: Complex64, a: f64) -> Result<Complex64> {
    euler_maclaurin(s, a, DEFAULT_BERNOULLI_TERMS, true)
}

/// `(x^{1-s} - 1)/(s-1)`, continuous through `s = 1`.
fn regular_pole_part(s: Complex64, lnx: f64) -> Complex64 {
    let t = (1.0 - s) * lnx;
    let expm1_over_t = if t.norm() < 1e-4 {
        1.0 + t / 2.0 + t * t / 6.0 + t * t * t / 24.0
    } else {
        (t.exp() - 1.0) / t
    };
    -lnx * expm1_over_t
}

fn euler_maclaurin(s: Complex64, a: f64, terms: usize, regular: bool) -> Result<Complex64> {
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::Domain(format!("Hurwitz shift a = {a} outside (0, 1]")));
    }
    if terms == 0 || terms > BERNOULLI.len() {
        return Err(Error::Parameter(format!("Bernoulli depth {terms} outside 1..=12")));
    }
    let m = (2.0 * s.norm()).max(20.0).ceil() as usize;
    let mut head = Complex64::new(0.0, 0.0);
    for n in (0..m).rev() {
        head += (-s * (n as f64 + a).ln()).exp();
    }
    let x = m as f64 + a;
    let lnx = x.ln();
    let x_s = (-s * lnx).exp();
    let pole = if regular { regular_pole_part(s, lnx) } else { x * x_s / (s - 1.0) };
    let mut tail = pole + 0.5 * x_s;
    // running factor (s)_{2j-1} x^{-s-2j+1} / (2j)!
    let mut fac = s * x_s / x / 2.0;
    for (j, b) in BERNOULLI.iter().take(terms).enumerate() {
        if j > 0 {
            let k = 2.0 * j as f64;
            fac = fac * (s + k - 1.0) * (s + k) / (x * x * (k + 1.0) * (k + 2.0));
        }
        tail += fac * *b;
    }
    Ok(head + tail)
}

/// Riemann zeta `ζ(s) = ζ(s, 1)`.
pub fn riemann_zeta(s: Complex64) -> Result<Complex64> {
    hurwitz_zeta(s, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Direct partial sum plus the integral tail `(N+a)^{1-s}/(s-1)` and the
    /// half-term correction; independent of the Bernoulli table.
    fn oracle(s: f64, a: f64) -> f64 {
        let n = 200_000;
        let mut acc = 0.0;
        for k in (0..n).rev() {
            acc += (k as f64 + a).powf(-s);
        }
        let x = n as f64 + a;
        acc + x.powf(1.0 - s) / (s - 1.0) + 0.5 * x.powf(-s)
    }

    #[test]
    fn zeta_two() {
        let v = hurwitz_zeta(c(2.0, 0.0), 1.0).unwrap();
        assert!((v.re - PI * PI / 6.0).abs() < 1e-14);
        assert!((oracle(2.0, 1.0) - PI * PI / 6.0).abs() < 1e-12);
    }

    #[test]
    fn half_shift() {
        let s = c(3.0, 0.0);
        let lhs = hurwitz_zeta(s, 0.5).unwrap();
        let rhs = (2f64.powf(3.0) - 1.0) * riemann_zeta(s).unwrap();
        assert!((lhs - rhs).norm() < 1e-13 * rhs.norm());
        assert!((lhs.re - oracle(3.0, 0.5)).abs() < 1e-12);
    }

    #[test]
    fn continued_values() {
        // ζ(0) = -1/2, ζ(-1) = -1/12, ζ(0, a) = 1/2 - a
        assert!((riemann_zeta(c(0.0, 0.0)).unwrap() - c(-0.5, 0.0)).norm() < 1e-14);
        assert!((riemann_zeta(c(-1.0, 0.0)).unwrap() - c(-1.0 / 12.0, 0.0)).norm() < 1e-14);
        let v = hurwitz_zeta(c(0.0, 0.0), 0.3).unwrap();
        assert!((v - c(0.2, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn first_zero_on_critical_line() {
        let v = riemann_zeta(c(0.5, 14.134725141734693)).unwrap();
        assert!(v.norm() < 1e-12, "{v}");
    }

    #[test]
    fn pole_and_domain() {
        assert_eq!(hurwitz_zeta(c(1.0, 0.0), 0.4), Err(Error::Pole(c(1.0, 0.0))));
        assert!(matches!(hurwitz_zeta(c(2.0, 0.0), 0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn regular_part_is_minus_digamma_at_one() {
        // ψ(1) = -γ, ψ(1/2) = -γ - 2 ln 2
        let gamma_e = 0.577_215_664_901_532_9;
        let one = Complex64::new(1.0, 0.0);
        assert!((hurwitz_zeta_regular(one, 1.0).unwrap().re - gamma_e).abs() < 1e-13);
        assert!((hurwitz_zeta_regular(one, 0.5).unwrap().re - (gamma_e + 2.0 * 2f64.ln())).abs() < 1e-13);
        let s = Complex64::new(0.7, 3.0);
        let d = hurwitz_zeta_regular(s, 0.3).unwrap() - (hurwitz_zeta(s, 0.3).unwrap() - 1.0 / (s - 1.0));
        assert!(d.norm() < 1e-13);
    }
}
