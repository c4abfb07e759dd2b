//! Identity checks on the special functions, seeded for reproducibility.

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{bessel_k, hyp2f1, hyp2f1_continuation, hyp2f1_pfaff};
use crate::error::Result;
use crate::report::{format_point, CheckReport};

/// `₂F₁(a,b;c;z) = (1-z)^{c-a-b} ₂F₁(c-a,c-b;c;z)` on random draws with `|z| ≤ 0.8`.
pub fn euler_identity_report(seed: u64, draws: usize, tol: f64) -> Result<CheckReport> {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CheckReport::new("specfun-euler", "Euler transformation of 2F1", tol)
        .param("seed", seed)
        .param("draws", draws);
    for _ in 0..draws {
        let a = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let b = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let c = Complex64::new(rng.gen_range(0.2..3.0), rng.gen_range(-2.0..2.0));
        let z = Complex64::from_polar(rng.gen_range(0.0..0.8), rng.gen_range(0.0..2.0 * PI));
        let lhs = hyp2f1(a, b, c, z)?;
        let rhs = (1.0 - z).powc(c - a - b) * hyp2f1(c - a, c - b, c, z)?;
        report.push(format!("a={} b={} c={} z={}", format_point(a), format_point(b), format_point(c), format_point(z)), lhs, rhs);
    }
    Ok(report.finish(started))
}

/// `|z| > 1` continuation against the Pfaff transform at `z = -w²`,
/// `w ∈ [1.05, 5]`, for the parameters of the Mellin weights.
pub fn pfaff_agreement_report(points: usize, tol: f64) -> Result<CheckReport> {
    let started = Instant::now();
    let nu = Complex64::new(0.25, 0.0);
    let s = Complex64::new(1.3, 0.7);
    let mut report = CheckReport::new("specfun-pfaff", "2F1 continuation against the Pfaff transform", tol)
        .relative()
        .param("points", points);
    for m in [0.0, 1.0] {
        let (a, b, c) = ((s + nu + m) / 2.0, (s - nu + m) / 2.0, Complex64::new(0.5 + m, 0.0));
        for i in 0..points {
            let w = 1.05 + (5.0 - 1.05) * i as f64 / (points.max(2) - 1) as f64;
            let z = Complex64::new(-w * w, 0.0);
            report.push(format!("m={m} w={w}"), hyp2f1_continuation(a, b, c, z)?, hyp2f1_pfaff(a, b, c, z)?);
        }
    }
    Ok(report.finish(started))
}

/// `K_{1/2}(u) = √(π/2u) e^{-u}` for `u ∈ [0.1, 20]`.
pub fn bessel_half_report(points: usize, tol: f64) -> Result<CheckReport> {
    let started = Instant::now();
    let mut report = CheckReport::new("specfun-k-half", "closed form of K_1/2", tol).relative().param("points", points);
    for i in 0..points {
        let u = 0.1 + (20.0 - 0.1) * i as f64 / (points.max(2) - 1) as f64;
        let exact = Complex64::new((PI / (2.0 * u)).sqrt() * (-u).exp(), 0.0);
        report.push(format!("u={u}"), bessel_k(Complex64::new(0.5, 0.0), u)?, exact);
    }
    Ok(report.finish(started))
}

/// `K_ν(u) = K_{-ν}(u)` on random real and imaginary orders.
pub fn bessel_symmetry_report(seed: u64, draws: usize, tol: f64) -> Result<CheckReport> {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CheckReport::new("specfun-k-symmetry", "K_nu = K_-nu", tol)
        .relative()
        .param("seed", seed)
        .param("draws", draws);
    for _ in 0..draws {
        let nu = if rng.gen_bool(0.5) {
            Complex64::new(rng.gen_range(-0.49..0.49), 0.0)
        } else {
            Complex64::new(0.0, rng.gen_range(-15.0..15.0))
        };
        let u = rng.gen_range(0.05..60.0);
        report.push(format!("nu={} u={u}", format_point(nu)), bessel_k(nu, u)?, bessel_k(-nu, u)?);
    }
    Ok(report.finish(started))
}

/// All special-function checks at their default sizes and tolerances.
pub fn selftest(seed: u64) -> Result<Vec<CheckReport>> {
    Ok(vec![
        euler_identity_report(seed, 100, 1e-10)?,
        pfaff_agreement_report(20, 1e-8)?,
        bessel_half_report(50, 1e-10)?,
        bessel_symmetry_report(seed, 100, 1e-10)?,
    ])
}
