//! Mellin transforms of `K_ν(2y) cos^{(k)}(2wy)` and of Whittaker series along
//! rays `α + (w+i)y`.
//!
//! For odd `k` the closed form carries `(2πiw)^{[k]}`; the factor `2w` fails
//! against direct quadrature by exactly `iπ`.

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;
use num_integer::Integer;

use super::{additive_lambda_eisenstein, completed_lambda, continued_lambda_eisenstein, gamma_factor};
use super::{AdditiveTwist, GammaFactor, Twist};
use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};
use crate::hyperbolic::reduce_sl2z;
use crate::maassform::{constant_term, eval, whittaker_part, Family, MaassSpec, Side};
use crate::quad::{exp_sinh, QuadResult};
use crate::report::{cjson, format_point, CheckReport};
use crate::specfun::{bessel_k, hyp2f1, Precision, SpectralParam};

fn i_pow(k: i32) -> Complex64 {
    Complex64::new(0.0, 1.0).powi(k)
}

/// `₂F₁((s+ν+m)/2, (s-ν+m)/2; 1/2+m; -w²)`.
fn hyp_weight(nu: Complex64, m: u8, w: f64, s: Complex64) -> Result<Complex64> {
    let mf = m as f64;
    hyp2f1((s + nu + mf) / 2.0, (s - nu + mf) / 2.0, Complex64::new(0.5 + mf, 0.0), Complex64::new(-w * w, 0.0))
}

/// Closed form of `4∫₀^∞ K_ν(2y) cos^{(k)}(2wy) y^s dy/y`:
/// `i^k (2πiw)^{[k]} π^s γ^{(-)^{k+ε}}(s) ₂F₁(…; -w²)`.
///
/// The shift of `γ^{(-)^{k+ε}}` is `[k + 2ε] = [k]`, so `ε` cancels.
pub fn mellin_kcos(nu: SpectralParam, eps: u8, k: u32, w: f64, s: Complex64) -> Result<Complex64> {
    let m = (k % 2) as u8;
    if m == 1 && w == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let gamma = gamma_factor(GammaFactor::new((m + eps) % 2, eps, nu), s)?;
    let pre = i_pow(k as i32) * if m == 1 { Complex64::new(0.0, 2.0 * PI * w) } else { Complex64::new(1.0, 0.0) };
    Ok(pre * Complex64::new(PI, 0.0).powc(s) * gamma * hyp_weight(nu.nu(), m, w, s)?)
}

/// `cos^{(k)}(θ)`.
fn cos_derivative(k: u32, theta: f64) -> f64 {
    match k % 4 {
        0 => theta.cos(),
        1 => -theta.sin(),
        2 => -theta.cos(),
        _ => theta.sin(),
    }
}

/// The same integral by exp-sinh quadrature; valid for `Re s > |Re ν| - [k]`.
pub fn mellin_kcos_quadrature(nu: SpectralParam, k: u32, w: f64, s: Complex64, prec: &Precision) -> Result<QuadResult> {
    let v = nu.nu();
    if s.re <= v.re.abs() - (k % 2) as f64 {
        return Err(Error::Domain(format!("Mellin integral diverges at s = {s}")));
    }
    let f = |y: f64| {
        let kv = bessel_k(v, 2.0 * y).unwrap_or(Complex64::new(f64::NAN, 0.0));
        // K underflows long before y^{s-1} overflows; avoid 0 · ∞
        if kv == Complex64::new(0.0, 0.0) {
            return kv;
        }
        4.0 * kv * cos_derivative(k, 2.0 * w * y) * Complex64::new(y, 0.0).powc(s - 1.0)
    };
    exp_sinh(f, prec.rel_tol, prec.abs_tol, prec.quad_levels)
}

/// `f̃(a/q + δ)` for the Eisenstein family. Near the cusp `a/q` the point is
/// first mapped by `γ = (A, B; q, -a)`, `aA ≡ -1 (mod q)`, which sends it to
/// `A/q - 1/(q²δ)`; then `f(z) = f(γz)` and `f̃ = f - f₀`.
fn eisenstein_tilde(spec: &MaassSpec, a: i64, q: u64, delta: Complex64, prec: &Precision) -> Result<Complex64> {
    let y = delta.im;
    let alpha = a as f64 / q as f64;
    if y >= 0.5 {
        return Ok(whittaker_part(spec, Side::F, alpha + delta, prec)?.whittaker);
    }
    let qi = q as i64;
    // -1/δ without squaring |δ|, which underflows near the cusp
    let inv = -(delta.conj() / delta.norm()) / delta.norm();
    let image = if q == 1 {
        inv
    } else {
        let g = a.extended_gcd(&qi);
        if g.gcd != 1 {
            return Err(Error::Parameter(format!("{a}/{q} is not in lowest terms")));
        }
        let big_a = (-g.x).rem_euclid(qi);
        big_a as f64 / q as f64 + inv / (q * q) as f64
    };
    let (reduced, _) = reduce_sl2z(image);
    Ok(eval(spec, Side::F, reduced, prec)? - constant_term(spec, Side::F, y))
}

fn require_eisenstein(spec: &MaassSpec) -> Result<()> {
    if spec.family != Family::Eisenstein {
        return Err(Error::Precondition("needs a spec with a whole-plane continuation (Eisenstein family)".into()));
    }
    Ok(())
}

/// `∫₀^∞ h(α + (w+i)y) y^{s-1/2} dy/y` with `h = f̃`.
pub fn mellin_lhs(spec: &MaassSpec, w: f64, alpha: (i64, u64), s: Complex64, prec: &Precision) -> Result<QuadResult> {
    let t = AdditiveTwist::new(alpha.0, alpha.1, 0)?;
    let (a, q) = (t.num(), t.den());
    let dir = Complex64::new(w, 1.0);
    let integrand = |y: f64| -> Result<Complex64> {
        let delta = dir * y;
        let h = if spec.family == Family::Eisenstein {
            eisenstein_tilde(spec, a, q, delta, prec)?
        } else {
            whittaker_part(spec, Side::F, t.alpha() + delta, prec)?.whittaker
        };
        if h.norm() == 0.0 {
            return Ok(h);
        }
        Ok(h * Complex64::new(y, 0.0).powc(s - 1.5))
    };
    // surface the first evaluation error instead of integrating NaNs
    let failure = std::cell::RefCell::new(None);
    let res = exp_sinh(
        |y| match integrand(y) {
            Ok(v) => v,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                Complex64::new(0.0, 0.0)
            }
        },
        prec.rel_tol,
        prec.abs_tol,
        prec.quad_levels,
    );
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    res
}

/// `Λ_h(s, α, cos^{(j)})` for the spec, completed with shift `[j + ε]`.
fn additive_lambda(spec: &MaassSpec, t: &AdditiveTwist, j: u32, s: Complex64, prec: &Precision) -> Result<Complex64> {
    // sin(2πn a/q) = 0 for every n when q ≤ 2
    if j % 2 == 1 && t.den() <= 2 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    if spec.family == Family::Eisenstein {
        if t.den() == 1 {
            return if j % 2 == 1 {
                Ok(Complex64::new(0.0, 0.0))
            } else {
                continued_lambda_eisenstein(&DirichletCharacter::trivial(), spec.nu, 0, s)
            };
        }
        return additive_lambda_eisenstein(spec.nu, t.den(), t.num(), j, s);
    }
    let tw = Twist::Additive(AdditiveTwist::new(t.num(), t.den(), j)?);
    Ok(completed_lambda(&spec.a, &tw, spec.eps(), spec.nu, s, prec.rel_tol)?.value)
}

/// `Σ_{j∈{0,1}} i^{-j} (2πiw)^{[j+ε]} Λ_h(s, α, cos^{(j)}) ₂F₁(…[j+ε]…; -w²)`.
pub fn mellin_rhs(spec: &MaassSpec, w: f64, alpha: (i64, u64), s: Complex64, prec: &Precision) -> Result<Complex64> {
    let t = AdditiveTwist::new(alpha.0, alpha.1, 0)?;
    let eps = spec.eps() as u32;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..2u32 {
        let m = ((j + eps) % 2) as u8;
        let pre = if m == 1 { Complex64::new(0.0, 2.0 * PI * w) } else { Complex64::new(1.0, 0.0) };
        if pre.norm() == 0.0 {
            continue;
        }
        let lam = additive_lambda(spec, &t, j, s, prec)?;
        if lam.norm() == 0.0 {
            continue;
        }
        acc += i_pow(-(j as i32)) * pre * lam * hyp_weight(spec.nu.nu(), m, w, s)?;
    }
    Ok(acc)
}

/// Both sides of the Mellin identity on a grid of `s`, residual `|Δ|/(1+|RHS|)`.
pub fn mellin_identity_residual(
    spec: &MaassSpec,
    w: f64,
    alpha: (i64, u64),
    grid: &[Complex64],
    prec: &Precision,
    tol: f64,
) -> Result<CheckReport> {
    require_eisenstein(spec).or_else(|e| if spec.eps() == 1 && w == 0.0 && alpha.0 == 0 { Ok(()) } else { Err(e) })?;
    let started = Instant::now();
    let mut report = CheckReport::new("mellin", "Mellin transform of a twisted Whittaker series", tol)
        .param("w", w)
        .param("alpha", format!("{}/{}", alpha.0, alpha.1))
        .param("nu", cjson::value(spec.nu.nu()))
        .param("eps", spec.eps());
    for &s in grid {
        let lhs = mellin_lhs(spec, w, alpha, s, prec)?;
        let rhs = mellin_rhs(spec, w, alpha, s, prec)?;
        report.push(format_point(s), lhs.value, rhs);
    }
    Ok(report.finish(started))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::Parity;
    use crate::corpus::eisenstein_spec;
    use crate::lseries::CoeffSeq;
    use crate::maassform::Residues;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn trivial_cases() {
        let nu = SpectralParam::real(0.25).unwrap();
        assert_eq!(mellin_kcos(nu, 0, 1, 0.0, c(1.2, 0.0)).unwrap(), c(0.0, 0.0));
        let s = c(1.2, 0.3);
        let expect = Complex64::new(PI, 0.0).powc(s) * gamma_factor(GammaFactor::new(0, 0, nu), s).unwrap();
        assert!((mellin_kcos(nu, 0, 0, 0.0, s).unwrap() - expect).norm() < 1e-14 * expect.norm());
        // ε does not enter
        assert_eq!(mellin_kcos(nu, 1, 0, 0.7, s).unwrap(), mellin_kcos(nu, 0, 0, 0.7, s).unwrap());
    }

    #[test]
    fn closed_form_against_quadrature() {
        let nu = SpectralParam::real(0.25).unwrap();
        let p = Precision { rel_tol: 1e-11, ..Precision::default() };
        for k in 0..4u32 {
            let s = c(1.2, 0.0);
            let closed = mellin_kcos(nu, 0, k, 0.5, s).unwrap();
            let quad = mellin_kcos_quadrature(nu, k, 0.5, s, &p).unwrap().value;
            assert!((closed - quad).norm() < 1e-7 * closed.norm(), "k={k}: {closed} vs {quad}");
        }
    }

    #[test]
    fn eisenstein_identity_at_a_few_points() {
        let spec = eisenstein_spec(SpectralParam::real(0.25).unwrap(), 400).unwrap();
        let p = Precision::identity();
        for (w, alpha) in [(0.0, (0, 1)), (0.5, (1, 5))] {
            let r = mellin_identity_residual(&spec, w, alpha, &[c(2.5, 0.0), c(2.5, 3.0)], &p, 1e-6).unwrap();
            assert!(r.pass, "w={w} alpha={alpha:?}: {}", r.max_rel_residual);
        }
    }

    #[test]
    fn odd_spec_on_axis_is_zero() {
        let co = CoeffSeq::with_exponent(vec![c(1.0, 0.0); 64], 0.0).unwrap();
        let spec = MaassSpec::new(
            1,
            DirichletCharacter::trivial(),
            Parity::Odd,
            SpectralParam::imaginary(2.0).unwrap(),
            co.clone(),
            co,
            Residues::zero_polar(),
            Family::Generic,
        )
        .unwrap();
        let p = Precision { min_height: 1e-300, ..Precision::identity() };
        let lhs = mellin_lhs(&spec, 0.0, (0, 1), c(2.5, 0.0), &p).unwrap().value;
        assert_eq!(lhs, c(0.0, 0.0));
        let r = mellin_identity_residual(&spec, 0.0, (0, 1), &[c(2.5, 0.0)], &p, 1e-10).unwrap();
        assert!(r.pass && r.max_abs_residual < 1e-10);
    }
}
