//! Contour form of the involution: for `z = x + iy`, `w = x/y`,
//!
//! `f̃(z) - g̃(-1/Nz) = (1/2πi) ∮ Λ_f(s) ₂F₁((s+ν)/2, (s-ν)/2; 1/2; -w²) y^{1/2-s} ds`
//!
//! over any circle enclosing `{±ν, 1±ν}`, evaluated by the periodic
//! trapezoid rule.

use std::time::Instant;

use num_complex::Complex64;

use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};
use crate::lseries::continued_lambda_eisenstein;
use crate::maassform::{fricke_image, whittaker_part, Family, MaassSpec, Side};
use crate::quad::try_circle_integral;
use crate::report::{cjson, format_point, CheckReport};
use crate::specfun::{hyp2f1, Precision};

/// Poles closer than this to the contour are refused.
pub const CONTOUR_CLEARANCE: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleOptions {
    pub center: Complex64,
    pub radius: f64,
    pub nodes: usize,
}

impl Default for CircleOptions {
    fn default() -> Self {
        Self { center: Complex64::new(0.5, 0.0), radius: 1.25, nodes: 512 }
    }
}

/// Residue of `f` at `pole` from a small circle of the given radius.
pub fn pole_residue<F>(f: F, pole: Complex64, radius: f64, nodes: usize) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    try_circle_integral(f, pole, radius, nodes)
}

/// `f̃(z) - g̃(-1/Nz)` by series against the contour integral.
pub fn circle_integral_residual(
    spec: &MaassSpec,
    z: Complex64,
    opts: &CircleOptions,
    prec: &Precision,
    tol: f64,
) -> Result<CheckReport> {
    if spec.family != Family::Eisenstein {
        return Err(Error::Precondition("contour check needs the continuable Eisenstein family".into()));
    }
    let started = Instant::now();
    let nu = spec.nu.nu();
    let poles = [-nu, nu, 1.0 + nu, 1.0 - nu];
    let mut excluded = Vec::new();
    for &p in &poles {
        let d = (p - opts.center).norm();
        if (d - opts.radius).abs() < CONTOUR_CLEARANCE {
            return Err(Error::PoleOnContour { distance: (d - opts.radius).abs() });
        }
        if d > opts.radius {
            excluded.push(p);
        }
    }
    let (x, y) = (z.re, z.im);
    let w = x / y;
    let trivial = DirichletCharacter::trivial();
    let integrand = |s: Complex64| -> Result<Complex64> {
        let hyp = hyp2f1((s + nu) / 2.0, (s - nu) / 2.0, Complex64::new(0.5, 0.0), Complex64::new(-w * w, 0.0))?;
        Ok(continued_lambda_eisenstein(&trivial, spec.nu, 0, s)? * hyp * Complex64::new(y, 0.0).powc(0.5 - s))
    };
    let rhs = try_circle_integral(integrand, opts.center, opts.radius, opts.nodes)?;
    let lhs = whittaker_part(spec, Side::F, z, prec)?.whittaker
        - whittaker_part(spec, Side::G, fricke_image(spec.level, z), prec)?.whittaker;
    let mut report = CheckReport::new("circle-integral", "contour integral of the completed L-function", tol)
        .param("z", cjson::value(z))
        .param("center", cjson::value(opts.center))
        .param("radius", opts.radius)
        .param("nodes", opts.nodes);
    report.push(format_point(z), lhs, rhs);
    for p in excluded {
        let r = pole_residue(integrand, p, 1e-2, 64)?;
        report.fail(format!(
            "FAIL contract violation: pole {} lies outside the contour, residue {}",
            format_point(p),
            format_point(r)
        ));
    }
    Ok(report.finish(started))
}
