//! Möbius transformations of the upper half-plane, the elliptic matrices
//! `M(q,s,r)`, Cayley transforms, the hyperbolic metric, reduction to the
//! standard fundamental domain of `SL₂(ℤ)`, and a finite-grid surrogate for the
//! statement that a function invariant under two infinite-order elliptic
//! rotations with distinct centres is constant.

use std::f64::consts::PI;
use std::time::Instant;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::CheckReport;

/// Real 2×2 matrix with positive determinant acting by `z ↦ (az+b)/(cz+d)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Moebius {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    det: f64,
}

impl Moebius {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if !(det > 0.0) || !det.is_finite() {
            return Err(Error::Parameter(format!("determinant {det} is not positive")));
        }
        Ok(Self { a, b, c, d, det })
    }

    pub fn identity() -> Self {
        Self { a: 1.0, b: 0.0, c: 0.0, d: 1.0, det: 1.0 }
    }

    /// `T^r = (1 r; 0 1)`.
    pub fn translation(r: f64) -> Self {
        Self { a: 1.0, b: r, c: 0.0, d: 1.0, det: 1.0 }
    }

    /// `(0 1; -N 0)`, acting as `z ↦ -1/(Nz)`.
    pub fn fricke(n: f64) -> Self {
        Self { a: 0.0, b: 1.0, c: -n, d: 0.0, det: n }
    }

    pub fn det(&self) -> f64 {
        self.det
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn act(&self, z: Complex64) -> Complex64 {
        (self.a * z + self.b) / (self.c * z + self.d)
    }

    pub fn compose(&self, other: &Moebius) -> Moebius {
        let (a, b, c, d) = (
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        );
        Moebius { a, b, c, d, det: self.det * other.det }
    }

    pub fn inverse(&self) -> Moebius {
        Moebius { a: self.d / self.det, b: -self.b / self.det, c: -self.c / self.det, d: self.a / self.det, det: 1.0 / self.det }
    }
}

/// `(az+b)/(cz+d)` for `Im z > 0`.
pub fn act(m: &Moebius, z: Complex64) -> Complex64 {
    m.act(z)
}

/// `M(q,s,r) = (1, 2r/q; -2Nr̃/s, -3 + 4/(qs))` in exact arithmetic.
#[derive(Debug, Clone, PartialEq)]
pub struct EllipticMatrix {
    pub q: i64,
    pub s: i64,
    pub r: BigRational,
    pub rtilde: BigRational,
    pub level: i64,
    /// Row-major entries.
    pub entries: [BigRational; 4],
}

impl EllipticMatrix {
    pub fn det(&self) -> BigRational {
        let [a, b, c, d] = &self.entries;
        a * d - b * c
    }

    pub fn trace(&self) -> BigRational {
        &self.entries[0] + &self.entries[3]
    }

    pub fn to_moebius(&self) -> Result<Moebius> {
        let f = |x: &BigRational| x.to_f64().unwrap_or(f64::NAN);
        let [a, b, c, d] = &self.entries;
        Moebius::new(f(a), f(b), f(c), f(d))
    }

    /// `(r/q)(-1 + i/√(qs-1))`, the fixed point in closed form.
    pub fn fixed_point_closed_form(&self) -> Complex64 {
        let ratio = (&self.r / BigRational::from_integer(BigInt::from(self.q))).to_f64().unwrap_or(f64::NAN);
        let qs = (self.q * self.s) as f64;
        ratio * Complex64::new(-1.0, 1.0 / (qs - 1.0).sqrt())
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Builds `M(q,s,r)` after checking `qs = 1 + r r̃ N` exactly.
pub fn build_m(q: i64, s: i64, r: BigRational, rtilde: BigRational, level: i64) -> Result<EllipticMatrix> {
    if q == 0 || s == 0 || level <= 0 {
        return Err(Error::Parameter(format!("need q, s nonzero and N > 0 (q={q}, s={s}, N={level})")));
    }
    let lhs = rat(q * s);
    let rhs = rat(1) + &r * &rtilde * rat(level);
    if lhs != rhs {
        return Err(Error::Relation(format!("q*s = {lhs} but 1 + r*rt*N = {rhs}")));
    }
    let two = rat(2);
    let entries = [
        rat(1),
        &two * &r / rat(q),
        -(&two * rat(level) * &rtilde) / rat(s),
        rat(-3) + rat(4) / rat(q * s),
    ];
    Ok(EllipticMatrix { q, s, r, rtilde, level, entries })
}

/// Integer-parameter convenience wrapper for [`build_m`].
pub fn build_m_int(q: i64, s: i64, r: i64, rtilde: i64, level: i64) -> Result<EllipticMatrix> {
    build_m(q, s, rat(r), rat(rtilde), level)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NonEllipticKind {
    Parabolic,
    Hyperbolic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EllipticCertificate {
    pub matrix: Moebius,
    pub trace: f64,
    #[serde(with = "crate::report::cjson")]
    pub fixed_point: Complex64,
    /// `θ ∈ (0, π)` with `cos θ = tr / (2√det)`.
    pub rotation_angle: f64,
    pub infinite_order: bool,
    /// How `infinite_order` was decided.
    pub order_tag: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Classification {
    Elliptic(EllipticCertificate),
    NonElliptic { kind: NonEllipticKind, normalized_trace: f64 },
}

/// Normalized traces within this of `0` or `±1` count as finite order.
pub const FINITE_ORDER_TOL: f64 = 1e-12;

/// A rational `2cos θ` gives a finite-order rotation iff it is `0`, `±1` or
/// `±2`; any other rational trace has infinite order.
fn order_from_trace(t: f64) -> (bool, String) {
    for (v, order) in [(0.0, 2), (1.0, 6), (-1.0, 3)] {
        if (t - v).abs() <= FINITE_ORDER_TOL {
            return (false, format!("normalized trace {v}: order {order} as a Moebius map"));
        }
    }
    (true, format!("normalized trace {t} not in {{0, 1, -1}}: infinite order for rational traces"))
}

/// Elliptic iff `|tr|/√det < 2`.
pub fn classify(m: &Moebius) -> Classification {
    let t = m.trace() / m.det().sqrt();
    if t.abs() >= 2.0 {
        let kind = if (t.abs() - 2.0).abs() <= 1e-12 { NonEllipticKind::Parabolic } else { NonEllipticKind::Hyperbolic };
        return Classification::NonElliptic { kind, normalized_trace: t };
    }
    let theta = (t / 2.0).acos();
    let fixed = fixed_point(m).expect("elliptic matrices have c != 0");
    let (infinite_order, order_tag) = order_from_trace(t);
    Classification::Elliptic(EllipticCertificate {
        matrix: *m,
        trace: m.trace(),
        fixed_point: fixed,
        rotation_angle: theta,
        infinite_order,
        order_tag,
    })
}

/// Root of `cz² + (d-a)z - b = 0` in the upper half-plane.
pub fn fixed_point(m: &Moebius) -> Result<Complex64> {
    if m.c == 0.0 {
        return Err(Error::Precondition("c = 0: no fixed point in the upper half-plane".into()));
    }
    let disc = Complex64::new((m.d - m.a).powi(2) + 4.0 * m.b * m.c, 0.0);
    let root = disc.sqrt();
    let z1 = (-(m.d - m.a) + root) / (2.0 * m.c);
    let z2 = (-(m.d - m.a) - root) / (2.0 * m.c);
    let z = if z1.im > z2.im { z1 } else { z2 };
    if !(z.im > 0.0) {
        return Err(Error::Precondition("matrix is not elliptic".into()));
    }
    Ok(z)
}

/// `K(z) = (z - z₀)/(z - z̄₀)`, mapping `ℍ` onto the unit disc with `K(z₀) = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cayley {
    pub z0: Complex64,
}

impl Cayley {
    pub fn new(z0: Complex64) -> Result<Self> {
        if !(z0.im > 0.0) {
            return Err(Error::Domain(format!("Cayley centre {z0} is not in the upper half-plane")));
        }
        Ok(Self { z0 })
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        (z - self.z0) / (z - self.z0.conj())
    }

    pub fn invert(&self, u: Complex64) -> Complex64 {
        (self.z0 - u * self.z0.conj()) / (1.0 - u)
    }

    /// `K M K^{-1}` as a complex matrix `[a, b, c, d]`.
    pub fn conjugate(&self, m: &Moebius) -> [Complex64; 4] {
        let one = Complex64::new(1.0, 0.0);
        let k = [one, -self.z0, one, -self.z0.conj()];
        let det_k = self.z0 - self.z0.conj();
        let kinv = [-self.z0.conj() / det_k, self.z0 / det_k, -one / det_k, one / det_k];
        let mm = [m.a.into(), m.b.into(), m.c.into(), m.d.into()];
        mat_mul(&mat_mul(&k, &mm), &kinv)
    }
}

fn mat_mul(x: &[Complex64; 4], y: &[Complex64; 4]) -> [Complex64; 4] {
    [
        x[0] * y[0] + x[1] * y[2],
        x[0] * y[1] + x[1] * y[3],
        x[2] * y[0] + x[3] * y[2],
        x[2] * y[1] + x[3] * y[3],
    ]
}

pub fn cayley(z0: Complex64) -> Result<Cayley> {
    Cayley::new(z0)
}

/// `arcosh(1 + |z₁ - z₂|² / (2 y₁ y₂))`.
pub fn hyp_distance(z1: Complex64, z2: Complex64) -> f64 {
    let num = (z1 - z2).norm_sqr();
    // 2 asinh(|z1 - z2| / (2√(y1 y2))) avoids cancellation near the diagonal
    2.0 * (num.sqrt() / (2.0 * (z1.im * z2.im).sqrt())).asinh()
}

/// Hyperbolic distance in the unit disc.
pub fn disc_distance(u: Complex64, v: Complex64) -> f64 {
    let r = ((u - v) / (1.0 - u.conj() * v)).norm();
    2.0 * r.min(1.0 - f64::EPSILON).atanh()
}

/// Maps `z` into `{|x| ≤ 1/2, |z| ≥ 1}` by translations and `z ↦ -1/z`.
/// Returns the image and the number of inversions used.
pub fn reduce_sl2z(mut z: Complex64) -> (Complex64, usize) {
    let mut inversions = 0;
    for _ in 0..10_000 {
        z.re -= z.re.round();
        if z.norm_sqr() < 1.0 - 1e-14 {
            z = -1.0 / z;
            inversions += 1;
        } else {
            break;
        }
    }
    (z, inversions)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TestFamily {
    Constant,
    /// `exp(-d(z, z₁)²)` around the fixed point of the first matrix.
    Radial,
    ImaginaryPart,
}

impl TestFamily {
    /// Lipschitz constant of the family on the grid, w.r.t. hyperbolic distance.
    pub fn lipschitz(&self, hull_radius: f64, centre: Complex64) -> f64 {
        match self {
            TestFamily::Constant => 0.0,
            // max |d/dd exp(-d²)| = √2 e^{-1/2}
            TestFamily::Radial => 2f64.sqrt() * (-0.5f64).exp(),
            // |∇ Im z|_hyp = Im z, bounded on the grid hull
            TestFamily::ImaginaryPart => centre.im * hull_radius.exp(),
        }
    }

    pub fn evaluate(&self, z: Complex64, z1: Complex64) -> f64 {
        match self {
            TestFamily::Constant => 1.0,
            TestFamily::Radial => (-hyp_distance(z, z1).powi(2)).exp(),
            TestFamily::ImaginaryPart => z.im,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    ConsistentWithConstant,
    NotInvariant { m1: bool, m2: bool },
    /// Both defects small but the spread is not: the surrogate is violated.
    InvariantButNotConstant,
}

impl Verdict {
    pub fn describe(&self) -> String {
        match self {
            Verdict::ConsistentWithConstant => "consistent with constant".into(),
            Verdict::NotInvariant { m1: true, m2: true } => "not invariant under m1 and m2".into(),
            Verdict::NotInvariant { m1: true, .. } => "not invariant under m1".into(),
            Verdict::NotInvariant { .. } => "not invariant under m2".into(),
            Verdict::InvariantButNotConstant => "invariant but not constant".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoCirclesRecord {
    pub defect_m1: f64,
    pub defect_m2: f64,
    pub spread: f64,
    pub eps: f64,
    /// `δ(ε) = C_grid ε`.
    pub delta: f64,
    pub c_grid: f64,
    pub grid_points: usize,
    pub verdict: Verdict,
}

/// Hyperbolic polar grid of `n_r × n_phi` points with radii up to `radius`.
pub fn polar_grid(centre: Complex64, radius: f64, n_r: usize, n_phi: usize) -> Result<Vec<Complex64>> {
    let k = Cayley::new(centre)?;
    let mut pts = Vec::with_capacity(n_r * n_phi);
    for i in 0..n_r {
        let rho = radius * (i + 1) as f64 / n_r as f64;
        let u = (rho / 2.0).tanh();
        for j in 0..n_phi {
            let phi = 2.0 * PI * j as f64 / n_phi as f64;
            pts.push(k.invert(Complex64::from_polar(u, phi)));
        }
    }
    Ok(pts)
}

/// Midpoint of the geodesic segment `[z1, z2]`.
pub fn hyperbolic_midpoint(z1: Complex64, z2: Complex64) -> Result<Complex64> {
    let k = Cayley::new(z1)?;
    let w = k.apply(z2);
    if w.norm() == 0.0 {
        return Ok(z1);
    }
    let d = hyp_distance(z1, z2);
    Ok(k.invert(w / w.norm() * (d / 4.0).tanh()))
}

/// Default grid: 40×40 points on the hyperbolic disc of radius 2 around the
/// midpoint of the two fixed points.
pub fn default_grid(z1: Complex64, z2: Complex64) -> Result<(Vec<Complex64>, Complex64, f64)> {
    let mid = hyperbolic_midpoint(z1, z2)?;
    Ok((polar_grid(mid, 2.0, 40, 40)?, mid, 2.0))
}

/// Measures invariance defects and spread of `h` on `grid`.
pub fn two_circles_test<H>(
    h: H,
    m1: &EllipticCertificate,
    m2: &EllipticCertificate,
    grid: &[Complex64],
    eps: f64,
    c_grid: f64,
) -> Result<TwoCirclesRecord>
where
    H: Fn(Complex64) -> f64,
{
    if (m1.fixed_point - m2.fixed_point).norm() <= 1e-6 {
        return Err(Error::DegenerateFixedPoints(format!("{} vs {}", m1.fixed_point, m2.fixed_point)));
    }
    if grid.is_empty() {
        return Err(Error::Parameter("empty grid".into()));
    }
    let values: Vec<f64> = grid.iter().map(|&z| h(z)).collect();
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let spread = values.iter().map(|v| (v - mean).abs()).fold(0.0, f64::max);
    let defect = |m: &Moebius| {
        grid.iter().zip(&values).map(|(&z, &v)| (h(m.act(z)) - v).abs()).fold(0.0, f64::max)
    };
    let d1 = defect(&m1.matrix);
    let d2 = defect(&m2.matrix);
    let delta = c_grid * eps;
    let verdict = if d1 < eps && d2 < eps {
        if spread <= delta {
            Verdict::ConsistentWithConstant
        } else {
            Verdict::InvariantButNotConstant
        }
    } else {
        Verdict::NotInvariant { m1: d1 >= eps, m2: d2 >= eps }
    };
    Ok(TwoCirclesRecord {
        defect_m1: d1,
        defect_m2: d2,
        spread,
        eps,
        delta,
        c_grid,
        grid_points: grid.len(),
        verdict,
    })
}

/// Default pair of elliptic matrices: `M(3,5,2)` and `M(17,5,12)`, both with
/// `N = 1`, `r̃ = 7`.
pub fn default_pair() -> Result<(EllipticCertificate, EllipticCertificate)> {
    let cert = |q, s, r| -> Result<EllipticCertificate> {
        let m = build_m_int(q, s, r, 7, 1)?.to_moebius()?;
        match classify(&m) {
            Classification::Elliptic(c) => Ok(c),
            _ => Err(Error::Precondition(format!("M({q},{s},{r}) is not elliptic"))),
        }
    };
    Ok((cert(3, 5, 2)?, cert(17, 5, 12)?))
}

/// Largest gap between consecutive points of `{kθ mod 2π : 0 ≤ k ≤ n}`.
pub fn orbit_gap(theta: f64, n: usize) -> f64 {
    let two_pi = 2.0 * PI;
    let mut pts: Vec<f64> = (0..=n).map(|k| (k as f64 * theta).rem_euclid(two_pi)).collect();
    pts.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let mut gap = two_pi - pts[pts.len() - 1] + pts[0];
    for w in pts.windows(2) {
        gap = gap.max(w[1] - w[0]);
    }
    gap
}

/// Exact `|tr| < 2` check.
pub fn trace_is_elliptic(m: &EllipticMatrix) -> bool {
    let t = m.trace();
    let det = m.det();
    // |tr| < 2√det  ⟺  tr² < 4 det (det > 0)
    det.is_positive() && &t * &t < rat(4) * det
}

pub fn det_is_one(m: &EllipticMatrix) -> bool {
    m.det().is_one()
}

/// `r = (qs - 1) / (r̃ N)` as an exact rational.
pub fn solve_r(q: i64, s: i64, rtilde: i64, level: i64) -> Result<BigRational> {
    if rtilde == 0 {
        return Err(Error::Parameter("rtilde must be nonzero".into()));
    }
    let r = rat(q * s - 1) / rat(rtilde * level);
    if r.is_zero() {
        return Err(Error::Parameter("qs = 1 gives r = 0".into()));
    }
    Ok(r)
}

/// `det M = 1`, `|tr M| < 2` (both exact), `M z₁ = z₁` and the closed form of
/// `z₁` on `count` random admissible `(q, s, r, r̃, N)`; for each draw, every
/// divisor `q` of `1 + r r̃ N` must give a different `Re z₁`.
pub fn ellipticity_report(seed: u64, count: usize, tol: f64) -> Result<CheckReport> {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CheckReport::new("ellipticity", "elliptic matrices M(q,s,r) and their fixed points", tol)
        .param("seed", seed)
        .param("count", count);
    let mut checked_pairs = 0usize;
    for _ in 0..count {
        let (r, rt, n) = (rng.gen_range(1..60i64), rng.gen_range(1..60i64), rng.gen_range(1..20i64));
        let m = 1 + r * rt * n;
        let divisors: Vec<i64> = (1..=m).filter(|d| m % d == 0).collect();
        let q = divisors[rng.gen_range(0..divisors.len())];
        let mat = build_m_int(q, m / q, r, rt, n)?;
        let label = format!("q={q} s={} r={r} rt={rt} N={n}", m / q);
        if !det_is_one(&mat) {
            report.fail(format!("FAIL det != 1 for {label}"));
        }
        if !trace_is_elliptic(&mat) {
            report.fail(format!("FAIL |tr| >= 2 for {label}"));
        }
        let mm = mat.to_moebius()?;
        let z = fixed_point(&mm)?;
        let scale = 1.0 + z.norm();
        report.push(format!("{label} Mz"), mm.act(z) / scale, z / scale);
        report.push(format!("{label} closed form"), mat.fixed_point_closed_form() / scale, z / scale);
        let mut reals: Vec<(i64, f64)> = Vec::with_capacity(divisors.len());
        for &d in &divisors {
            let md = build_m_int(d, m / d, r, rt, n)?.to_moebius()?;
            reals.push((d, fixed_point(&md)?.re));
        }
        for (i, a) in reals.iter().enumerate() {
            for b in &reals[..i] {
                checked_pairs += 1;
                if (a.1 - b.1).abs() <= 1e-12 * (1.0 + a.1.abs()) {
                    report.fail(format!("FAIL q={} and q={} share Re z1 = {} ({label})", a.0, b.0, a.1));
                }
            }
        }
    }
    report.set_param("distinct_real_part_pairs", checked_pairs);
    Ok(report.finish(started))
}

/// Runs one test family on the default pair and grid. Passes unless the
/// family is invariant under both rotations without being constant.
pub fn two_circles_report(family: TestFamily, eps: f64) -> Result<CheckReport> {
    let started = Instant::now();
    let (m1, m2) = default_pair()?;
    let (grid, mid, radius) = default_grid(m1.fixed_point, m2.fixed_point)?;
    let z1 = m1.fixed_point;
    let rec = two_circles_test(|z| family.evaluate(z, z1), &m1, &m2, &grid, eps, family.lipschitz(radius, mid))?;
    let mut report = CheckReport::new("two-circles", "invariance under two elliptic rotations forces constancy", eps)
        .param("family", serde_json::to_value(family)?)
        .param("verdict", rec.verdict.describe())
        .param("record", serde_json::to_value(&rec)?)
        .param("m1", "M(3,5,2), rtilde=7, N=1")
        .param("m2", "M(17,5,12), rtilde=7, N=1");
    report.note(format!("verdict: {}", rec.verdict.describe()));
    if rec.verdict == Verdict::InvariantButNotConstant {
        report.fail("FAIL invariant under both rotations but not constant");
    }
    Ok(report.finish(started))
}

/// Largest orbit gap of the rotation of `M(3,5,2)` after `iterates` steps.
pub fn orbit_gap_report(iterates: usize, tol: f64) -> Result<CheckReport> {
    let started = Instant::now();
    let (m1, _) = default_pair()?;
    let gap = orbit_gap(m1.rotation_angle, iterates);
    let mut report = CheckReport::new("orbit-density", "orbit of an infinite-order rotation is dense", tol)
        .param("iterates", iterates)
        .param("theta", m1.rotation_angle)
        .param("order", m1.order_tag.clone());
    report.push(format!("gap after {iterates}"), Complex64::new(gap, 0.0), Complex64::new(0.0, 0.0));
    Ok(report.finish(started))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn basic_actions() {
        let z = c(0.3, 1.7);
        assert_eq!(act(&Moebius::identity(), z), z);
        assert!((act(&Moebius::new(0.0, 1.0, -1.0, 0.0).unwrap(), c(0.0, 1.0)) - c(0.0, 1.0)).norm() < 1e-15);
        assert!((act(&Moebius::translation(0.5), c(0.0, 1.0)) - c(0.5, 1.0)).norm() < 1e-15);
        assert!(Moebius::new(1.0, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn m_three_five_two() {
        let m = build_m_int(3, 5, 2, 7, 1).unwrap();
        let expect = [rat(1), rat(4) / rat(3), rat(-14) / rat(5), rat(-41) / rat(15)];
        assert_eq!(m.entries, expect);
        assert!(det_is_one(&m));
        assert_eq!(m.trace(), rat(-26) / rat(15));
        assert!(trace_is_elliptic(&m));
        assert!(matches!(build_m_int(3, 5, 2, 6, 1), Err(Error::Relation(_))));
        let mm = m.to_moebius().unwrap();
        let Classification::Elliptic(cert) = classify(&mm) else { panic!("not elliptic") };
        assert!(cert.infinite_order, "{}", cert.order_tag);
        assert!((cert.fixed_point - m.fixed_point_closed_form()).norm() < 1e-10);
        assert!((mm.act(cert.fixed_point) - cert.fixed_point).norm() < 1e-12);
        assert!((cert.rotation_angle.cos() - (-13.0 / 15.0)).abs() < 1e-14);
    }

    #[test]
    fn non_elliptic_cases() {
        assert!(matches!(
            classify(&Moebius::translation(1.0)),
            Classification::NonElliptic { kind: NonEllipticKind::Parabolic, .. }
        ));
        assert!(matches!(
            classify(&Moebius::new(2.0, 0.0, 0.0, 0.5).unwrap()),
            Classification::NonElliptic { kind: NonEllipticKind::Hyperbolic, .. }
        ));
        // order-4 rotation z ↦ -1/z is elliptic but of finite order
        let Classification::Elliptic(s) = classify(&Moebius::new(0.0, 1.0, -1.0, 0.0).unwrap()) else { panic!() };
        assert!(!s.infinite_order);
        assert!((s.fixed_point - c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn distances() {
        let z = c(0.2, 0.9);
        assert_eq!(hyp_distance(z, z), 0.0);
        assert!((hyp_distance(c(0.0, 1.0), c(0.0, 2.0)) - 2f64.ln()).abs() < 1e-15);
        let k = Cayley::new(c(0.0, 1.0)).unwrap();
        let (a, b) = (c(0.3, 0.5), c(-1.0, 2.0));
        assert!((disc_distance(k.apply(a), k.apply(b)) - hyp_distance(a, b)).abs() < 1e-12);
    }

    #[test]
    fn cayley_properties() {
        let k = cayley(c(0.0, 1.0)).unwrap();
        assert!(k.apply(c(0.0, 1.0)).norm() < 1e-16);
        let z0 = c(0.4, 0.7);
        let k = cayley(z0).unwrap();
        let mut rng = 12345u64;
        for _ in 0..100 {
            rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let x = ((rng >> 11) as f64 / (1u64 << 53) as f64 - 0.5) * 20.0;
            rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let y = (rng >> 11) as f64 / (1u64 << 53) as f64 * 5.0 + 1e-3;
            let u = k.apply(c(x, y));
            assert!(u.norm() < 1.0);
            assert!((k.invert(u) - c(x, y)).norm() < 1e-9 * (1.0 + x.abs() + y));
        }
        let m = build_m_int(3, 5, 2, 7, 1).unwrap().to_moebius().unwrap();
        let z1 = fixed_point(&m).unwrap();
        let l = cayley(z1).unwrap().conjugate(&m);
        assert!(l[1].norm() < 1e-12 && l[2].norm() < 1e-12);
    }

    #[test]
    fn sl2z_reduction() {
        let (z, inv) = reduce_sl2z(c(0.1, 0.05));
        assert!(z.re.abs() <= 0.5 && z.norm() >= 1.0 - 1e-12);
        assert!(inv >= 1);
        let (z, inv) = reduce_sl2z(c(3.3, 2.0));
        assert_eq!(inv, 0);
        assert!((z - c(0.3, 2.0)).norm() < 1e-14);
    }

    #[test]
    fn two_circles_families() {
        let (m1, m2) = default_pair().unwrap();
        assert!(m1.infinite_order && m2.infinite_order);
        let (grid, mid, radius) = default_grid(m1.fixed_point, m2.fixed_point).unwrap();
        assert_eq!(grid.len(), 1600);
        let z1 = m1.fixed_point;
        let eps = 1e-9;
        for (fam, expect) in [
            (TestFamily::Constant, Verdict::ConsistentWithConstant),
            (TestFamily::Radial, Verdict::NotInvariant { m1: false, m2: true }),
            (TestFamily::ImaginaryPart, Verdict::NotInvariant { m1: true, m2: true }),
        ] {
            let rec =
                two_circles_test(|z| fam.evaluate(z, z1), &m1, &m2, &grid, eps, fam.lipschitz(radius, mid)).unwrap();
            assert_eq!(rec.verdict, expect, "{fam:?}: {rec:?}");
        }
        assert!(matches!(two_circles_test(|_| 0.0, &m1, &m1, &grid, eps, 0.0), Err(Error::DegenerateFixedPoints(_))));
    }

    #[test]
    fn orbit_density() {
        let (m1, _) = default_pair().unwrap();
        assert!(orbit_gap(m1.rotation_angle, 10_000) < 0.01);
    }

    proptest! {
        #[test]
        fn relation_gives_det_one_and_elliptic(r in 1i64..60, rt in 1i64..60, n in 1i64..20, pick in 0usize..100) {
            let m = 1 + r * rt * n;
            let divisors: Vec<i64> = (1..=m).filter(|d| m % d == 0).collect();
            let q = divisors[pick % divisors.len()];
            let s = m / q;
            let mat = build_m_int(q, s, r, rt, n).unwrap();
            prop_assert!(det_is_one(&mat));
            prop_assert!(trace_is_elliptic(&mat));
            let mm = mat.to_moebius().unwrap();
            let z = fixed_point(&mm).unwrap();
            prop_assert!((mm.act(z) - z).norm() < 1e-12 * (1.0 + z.norm()));
            prop_assert!((z - mat.fixed_point_closed_form()).norm() < 1e-10 * (1.0 + z.norm()));
        }

        #[test]
        fn fixed_point_transport(ga in -3.0f64..3.0, gb in -3.0f64..3.0, gc in -3.0f64..3.0) {
            let g = Moebius::new(1.0 + ga * ga, gb, gc, 1.0 + gb * gc / (1.0 + ga * ga) + 0.5).unwrap();
            let m = build_m_int(3, 5, 2, 7, 1).unwrap().to_moebius().unwrap();
            let conj = g.compose(&m).compose(&g.inverse());
            let lhs = fixed_point(&conj).unwrap();
            let rhs = g.act(fixed_point(&m).unwrap());
            prop_assert!((lhs - rhs).norm() < 1e-10 * (1.0 + rhs.norm()));
        }

        #[test]
        fn distance_invariance(x1 in -2.0f64..2.0, y1 in 0.1f64..3.0, x2 in -2.0f64..2.0, y2 in 0.1f64..3.0, t in -2.0f64..2.0, l in 0.2f64..4.0) {
            let g = Moebius::new(l, t, 0.0, 1.0).unwrap().compose(&Moebius::new(0.0, 1.0, -1.0, 0.0).unwrap());
            let (a, b) = (c(x1, y1), c(x2, y2));
            let d = hyp_distance(a, b);
            prop_assert!((hyp_distance(g.act(a), g.act(b)) - d).abs() < 1e-9 * (1.0 + d));
        }
    }

    #[test]
    fn reports() {
        let e = ellipticity_report(3, 25, 1e-12).unwrap();
        assert!(e.pass, "{:?}", e.notes);
        assert!(two_circles_report(TestFamily::Constant, 1e-9).unwrap().pass);
        let radial = two_circles_report(TestFamily::Radial, 1e-9).unwrap();
        assert_eq!(radial.params["verdict"], "not invariant under m2");
        assert!(orbit_gap_report(10_000, 0.01).unwrap().pass);
    }
}
