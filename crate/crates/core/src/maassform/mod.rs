//! The Fourier–Whittaker pair `(f, g)`: truncated series with a certified
//! tail, constant terms from residue data, the weight-0 slash action and the
//! checks of the transformation laws that the converse theorem produces.
//!
//! Negative-index coefficients are never stored. With `a_{-n} = (-1)^ε a_n`
//! the series folds to `Σ_{n≥1} a_n n^{-1/2} W_ν(ny) c_ε(2πnx)` where `c_0 = cos`
//! and `c_1 = i·sin`.

mod io;

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::characters::{DirichletCharacter, Parity};
use crate::error::{Error, Result};
use crate::hyperbolic::Moebius;
use crate::lseries::CoeffSeq;
use crate::report::{cjson, format_point, CheckReport};
use crate::specfun::{whittaker_w, Precision, SpectralParam};

pub use io::{load_spec, read_coeff_csv, save_spec, write_coeff_csv, Growth, SpecFile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    F,
    G,
}

/// Which whole-plane continuation is available for the spec.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// Level 1 Eisenstein series: `Λ_f(s, ψ) = γ L(s+ν, ψ) L(s-ν, ψ)`.
    Eisenstein,
    #[default]
    Generic,
}

/// Residues of the completed L-functions fixing the constant terms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Residues {
    /// `ν ≠ 0`: `Res_{-ν} Λ_f`, `Res_{ν} Λ_f`, `Res_{1+ν} Λ_g`, `Res_{1-ν} Λ_g`.
    Polar {
        #[serde(with = "cjson")]
        f_minus_nu: Complex64,
        #[serde(with = "cjson")]
        f_plus_nu: Complex64,
        #[serde(with = "cjson")]
        g_one_plus_nu: Complex64,
        #[serde(with = "cjson")]
        g_one_minus_nu: Complex64,
    },
    /// `ν = 0`: `Res_0 Λ` and `Res_0 sΛ` for each side.
    Zero {
        #[serde(with = "cjson")]
        f_zero: Complex64,
        #[serde(with = "cjson")]
        f_zero_s: Complex64,
        #[serde(with = "cjson")]
        g_zero: Complex64,
        #[serde(with = "cjson")]
        g_zero_s: Complex64,
    },
}

impl Residues {
    pub fn zero_polar() -> Self {
        let z = Complex64::new(0.0, 0.0);
        Residues::Polar { f_minus_nu: z, f_plus_nu: z, g_one_plus_nu: z, g_one_minus_nu: z }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaassSpec {
    pub level: u64,
    pub chi: DirichletCharacter,
    pub parity: Parity,
    pub nu: SpectralParam,
    pub a: CoeffSeq,
    pub b: CoeffSeq,
    pub residues: Residues,
    pub family: Family,
}

impl MaassSpec {
    pub fn new(
        level: u64,
        chi: DirichletCharacter,
        parity: Parity,
        nu: SpectralParam,
        a: CoeffSeq,
        b: CoeffSeq,
        residues: Residues,
        family: Family,
    ) -> Result<Self> {
        if level == 0 {
            return Err(Error::Parameter("level must be positive".into()));
        }
        if chi.modulus() != level && !(chi.modulus() == 1 && chi.is_principal()) {
            return Err(Error::Parameter(format!("nebentypus modulus {} != level {level}", chi.modulus())));
        }
        if chi.parity() != Parity::Even {
            return Err(Error::Precondition("weight 0 needs an even nebentypus".into()));
        }
        match (&residues, nu.is_zero()) {
            (Residues::Polar { .. }, true) => {
                return Err(Error::Parameter("nu = 0 needs the (Res, Res s) residue quadruple".into()))
            }
            (Residues::Zero { .. }, false) => {
                return Err(Error::Parameter("residue quadruple at 0 given for nu != 0".into()))
            }
            _ => {}
        }
        if family == Family::Eisenstein && (level != 1 || parity != Parity::Even) {
            return Err(Error::Parameter("the Eisenstein family is even of level 1".into()));
        }
        Ok(Self { level, chi, parity, nu, a, b, residues, family })
    }

    pub fn coeffs(&self, side: Side) -> &CoeffSeq {
        match side {
            Side::F => &self.a,
            Side::G => &self.b,
        }
    }

    pub fn eps(&self) -> u8 {
        self.parity.bit()
    }
}

/// Truncation point and certified tail of a Whittaker sum at height `y`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationPlan {
    pub n_max: usize,
    pub tail_bound: f64,
    pub y: f64,
}

/// Bound on `|a_n n^{-1/2} W_ν(ny)|`: `2 C n^{σ-1/2} e^{-2πny}`, from
/// `|K_ν| ≤ K_{1/2}` for `|Re ν| ≤ 1/2`.
fn term_bound(c: f64, sigma: f64, n: f64, y: f64) -> f64 {
    2.0 * c * n.powf(sigma - 0.5) * (-2.0 * PI * n * y).exp()
}

/// Smallest `N` with `Σ_{n>N}` of the term bound below `abs_tol`.
pub fn plan(coeffs: &CoeffSeq, nu: SpectralParam, y: f64, abs_tol: f64) -> Result<TruncationPlan> {
    if nu.nu().re.abs() > 0.5 {
        return Err(Error::Precondition("tail bound needs |Re nu| <= 1/2".into()));
    }
    if !(y > 0.0) {
        return Err(Error::Domain(format!("height {y} is not positive")));
    }
    let (c, sigma) = (coeffs.bound(), coeffs.sigma());
    let decay = (-2.0 * PI * y).exp();
    let mut n = 0usize;
    loop {
        let next = (n + 1) as f64;
        // ratio of consecutive term bounds beyond N
        let r = (1.0 + 1.0 / next).powf(sigma - 0.5).max(1.0) * decay;
        if r < 1.0 {
            let tail = term_bound(c, sigma, next, y) / (1.0 - r);
            if tail < abs_tol {
                if n > coeffs.len() {
                    return Err(Error::InsufficientCoefficients { required: n, available: coeffs.len() });
                }
                return Ok(TruncationPlan { n_max: n, tail_bound: tail, y });
            }
        }
        n += 1;
        if n > 100_000_000 {
            return Err(Error::Convergence(format!("no truncation point found at y = {y}")));
        }
    }
}

/// `Σ_{n≤N} w(n) a_n n^{-1/2} W_ν(ny) c(2πnx)` with `c = cos` for `fold = +1`
/// and `c = i·sin` for `fold = -1`.
pub fn whittaker_sum<W>(
    coeffs: &CoeffSeq,
    nu: SpectralParam,
    fold: f64,
    weight: W,
    z: Complex64,
    prec: &Precision,
) -> Result<(Complex64, TruncationPlan)>
where
    W: Fn(u64) -> Complex64,
{
    let (x, y) = (z.re, z.im);
    if !(y >= prec.min_height) {
        return Err(Error::Domain(format!("Im z = {y} is below the evaluation floor {}", prec.min_height)));
    }
    // sin(2πnx) vanishes for every n when 2x is an integer
    if fold < 0.0 && (2.0 * x - (2.0 * x).round()).abs() == 0.0 {
        return Ok((Complex64::new(0.0, 0.0), TruncationPlan { n_max: 0, tail_bound: 0.0, y }));
    }
    let p = plan(coeffs, nu, y, prec.abs_tol)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for n in (1..=p.n_max).rev() {
        let w = weight(n as u64);
        if w.norm() == 0.0 {
            continue;
        }
        let nf = n as f64;
        let theta = 2.0 * PI * (nf * x).rem_euclid(1.0);
        let trig = if fold > 0.0 { Complex64::new(theta.cos(), 0.0) } else { Complex64::new(0.0, theta.sin()) };
        acc += w * coeffs.get(n) / nf.sqrt() * whittaker_w(nu.nu(), nf * y)? * trig;
    }
    Ok((acc, p))
}

/// `f₀(y)` or `g₀(y)`; identically zero for odd parity.
pub fn constant_term(spec: &MaassSpec, side: Side, y: f64) -> Complex64 {
    if spec.parity == Parity::Odd {
        return Complex64::new(0.0, 0.0);
    }
    let nu = spec.nu.nu();
    let yc = Complex64::new(y, 0.0);
    let up = yc.powc(0.5 + nu);
    let down = yc.powc(0.5 - nu);
    match (spec.residues, side) {
        (Residues::Polar { f_minus_nu, f_plus_nu, .. }, Side::F) => -f_minus_nu * up - f_plus_nu * down,
        (Residues::Polar { g_one_plus_nu, g_one_minus_nu, .. }, Side::G) => {
            let n = Complex64::new(spec.level as f64, 0.0);
            n.powc(0.5 + nu) * g_one_plus_nu * up + n.powc(0.5 - nu) * g_one_minus_nu * down
        }
        (Residues::Zero { f_zero, f_zero_s, .. }, Side::F) => y.sqrt() * (-f_zero + f_zero_s * y.ln()),
        (Residues::Zero { g_zero, g_zero_s, .. }, Side::G) => y.sqrt() * (-g_zero + g_zero_s * y.ln()),
    }
}

/// Value of one side split into its parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub constant: Complex64,
    pub whittaker: Complex64,
    pub plan: TruncationPlan,
}

impl Evaluation {
    pub fn value(&self) -> Complex64 {
        self.constant + self.whittaker
    }
}

fn fold_sign(parity: Parity) -> f64 {
    match parity {
        Parity::Even => 1.0,
        Parity::Odd => -1.0,
    }
}

/// `f̃(z)` or `g̃(z)`.
pub fn whittaker_part(spec: &MaassSpec, side: Side, z: Complex64, prec: &Precision) -> Result<Evaluation> {
    let one = |_| Complex64::new(1.0, 0.0);
    let (w, plan) = whittaker_sum(spec.coeffs(side), spec.nu, fold_sign(spec.parity), one, z, prec)?;
    Ok(Evaluation { constant: constant_term(spec, side, z.im), whittaker: w, plan })
}

pub fn eval_detailed(spec: &MaassSpec, side: Side, z: Complex64, prec: &Precision) -> Result<Evaluation> {
    whittaker_part(spec, side, z, prec)
}

/// `f(z)` or `g(z)` with absolute truncation error below `prec.abs_tol`.
pub fn eval(spec: &MaassSpec, side: Side, z: Complex64, prec: &Precision) -> Result<Complex64> {
    Ok(eval_detailed(spec, side, z, prec)?.value())
}

/// `f_ψ(z) = Σ_{n≠0} ψ(n) a_n (2√|n|)^{-1} W_ν(ny) e(nx)` (or `g_ψ` with `b`).
pub fn twisted_whittaker(
    spec: &MaassSpec,
    side: Side,
    psi: &DirichletCharacter,
    z: Complex64,
    prec: &Precision,
) -> Result<Complex64> {
    let fold = fold_sign(spec.parity) * fold_sign(psi.parity());
    let (v, _) = whittaker_sum(spec.coeffs(side), spec.nu, fold, |n| psi.value(n as i64), z, prec)?;
    Ok(v)
}

/// Weight-0 slash: `(h|γ)(z) = h(γz)`.
pub fn slash<H>(gamma: &Moebius, h: H, z: Complex64) -> Result<Complex64>
where
    H: Fn(Complex64) -> Result<Complex64>,
{
    if !(z.im > 0.0) {
        return Err(Error::Domain(format!("{z} is not in the upper half-plane")));
    }
    h(gamma.act(z))
}

/// `-1/(Nz)`.
pub fn fricke_image(level: u64, z: Complex64) -> Complex64 {
    -1.0 / (level as f64 * z)
}

/// `f(z)` against `g(-1/Nz)`.
pub fn involution_residual(spec: &MaassSpec, points: &[Complex64], prec: &Precision, tol: f64) -> Result<CheckReport> {
    let started = Instant::now();
    let mut report = CheckReport::new("involution", "f(z) = g(-1/Nz)", tol)
        .param("level", spec.level)
        .param("nu", cjson::value(spec.nu.nu()));
    for &z in points {
        let lhs = eval(spec, Side::F, z, prec)?;
        let rhs = eval(spec, Side::G, fricke_image(spec.level, z), prec)?;
        report.push(format_point(z), lhs, rhs);
    }
    Ok(report.finish(started))
}

fn coprime_prime_modulus(spec: &MaassSpec, q: u64) -> Result<()> {
    if q < 3 || !crate::characters::is_prime(q) {
        return Err(Error::Precondition(format!("q = {q} is not an odd prime")));
    }
    if spec.level % q == 0 {
        return Err(Error::Precondition(format!("q = {q} divides the level {}", spec.level)));
    }
    Ok(())
}

/// Right-hand side of the twist transformation:
/// `χ(q) ψ(-N) τ(ψ)/τ(ψ̄) g_ψ̄(-1/(Nq²z))`.
pub fn twist_transform_rhs(spec: &MaassSpec, psi: &DirichletCharacter, z: Complex64, prec: &Precision) -> Result<Complex64> {
    let q = psi.modulus();
    let n = spec.level as i64;
    let pre = spec.chi.value(q as i64) * psi.value(-n) * psi.gauss_sum() / psi.conj().gauss_sum();
    let w = fricke_image(spec.level * q * q, z);
    Ok(pre * twisted_whittaker(spec, Side::G, &psi.conj(), w, prec)?)
}

/// `f_ψ(z)` against `χ(q) ψ(-N) τ(ψ)/τ(ψ̄) g_ψ̄(-1/(Nq²z))`.
pub fn twist_transform_residual(
    spec: &MaassSpec,
    psi: &DirichletCharacter,
    points: &[Complex64],
    prec: &Precision,
    tol: f64,
) -> Result<CheckReport> {
    if psi.is_principal() {
        return Err(Error::Precondition("twist transformation needs a non-principal character".into()));
    }
    coprime_prime_modulus(spec, psi.modulus())?;
    let started = Instant::now();
    let mut report = CheckReport::new("twist-transform", "twisted form transformation", tol)
        .param("q", psi.modulus())
        .param("psi", serde_json::to_value(psi).expect("serializable"));
    for &z in points {
        let lhs = twisted_whittaker(spec, Side::F, psi, z, prec)?;
        let rhs = twist_transform_rhs(spec, psi, z, prec)?;
        report.push(format_point(z), lhs, rhs);
    }
    Ok(report.finish(started))
}

/// `χ(q)/(q-1) Σ_{ψ≠ψ₀} ψ(-N)(ψ(a)-ψ(b)) τ(ψ) g_ψ̄(-1/(Nq²z))`.
pub fn difference_rhs(spec: &MaassSpec, q: u64, a: i64, b: i64, z: Complex64, prec: &Precision) -> Result<Complex64> {
    let group = crate::characters::character_group(q)?;
    let n = spec.level as i64;
    let w = fricke_image(spec.level * q * q, z);
    let mut acc = Complex64::new(0.0, 0.0);
    for psi in group.characters() {
        if psi.is_principal() {
            continue;
        }
        let diff = psi.value(a) - psi.value(b);
        if diff.norm() == 0.0 {
            continue;
        }
        acc += psi.value(-n) * diff * psi.gauss_sum() * twisted_whittaker(spec, Side::G, &psi.conj(), w, prec)?;
    }
    Ok(spec.chi.value(q as i64) * acc / (q as f64 - 1.0))
}

/// `1/(q-1) Σ_{ψ≠ψ₀} τ(ψ̄)(ψ(a)-ψ(b)) f_ψ(z)`, the same difference written
/// through the twisted forms on the `f` side.
pub fn difference_from_twists(spec: &MaassSpec, q: u64, a: i64, b: i64, z: Complex64, prec: &Precision) -> Result<Complex64> {
    let group = crate::characters::character_group(q)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for psi in group.characters() {
        if psi.is_principal() {
            continue;
        }
        let diff = psi.value(a) - psi.value(b);
        if diff.norm() == 0.0 {
            continue;
        }
        acc += psi.conj().gauss_sum() * diff * twisted_whittaker(spec, Side::F, &psi, z, prec)?;
    }
    Ok(acc / (q as f64 - 1.0))
}

/// `f(z + a/q) - f(z + b/q)` against the character expansion of the right-hand side.
pub fn difference_identity_residual(
    spec: &MaassSpec,
    q: u64,
    a: i64,
    b: i64,
    points: &[Complex64],
    prec: &Precision,
    tol: f64,
) -> Result<CheckReport> {
    coprime_prime_modulus(spec, q)?;
    let qi = q as i64;
    if a.rem_euclid(qi) == 0 || b.rem_euclid(qi) == 0 {
        return Err(Error::Precondition(format!("a = {a} and b = {b} must be prime to q = {q}")));
    }
    let started = Instant::now();
    let mut report = CheckReport::new("difference-identity", "difference of additive shifts", tol)
        .param("q", q)
        .param("a", a)
        .param("b", b);
    let qf = q as f64;
    for &z in points {
        let lhs = eval(spec, Side::F, z + a as f64 / qf, prec)? - eval(spec, Side::F, z + b as f64 / qf, prec)?;
        let rhs = difference_rhs(spec, q, a, b, z, prec)?;
        report.push(format_point(z), lhs, rhs);
    }
    Ok(report.finish(started))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::character_group;
    use crate::corpus::eisenstein_spec;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn spec() -> MaassSpec {
        eisenstein_spec(SpectralParam::real(0.25).unwrap(), 600).unwrap()
    }

    fn odd_spec() -> MaassSpec {
        let vals: Vec<Complex64> = (1..=400).map(|n| c(((n * 7 % 11) as f64 - 5.0) / 5.0, 0.0)).collect();
        let co = CoeffSeq::with_exponent(vals, 0.0).unwrap();
        MaassSpec::new(
            1,
            DirichletCharacter::trivial(),
            Parity::Odd,
            SpectralParam::imaginary(3.0).unwrap(),
            co.clone(),
            co,
            Residues::zero_polar(),
            Family::Generic,
        )
        .unwrap()
    }

    #[test]
    fn odd_forms_vanish_on_the_imaginary_axis() {
        let s = odd_spec();
        let p = Precision::default();
        for y in [0.1, 0.5, 2.0] {
            assert_eq!(eval(&s, Side::F, c(0.0, y), &p).unwrap(), c(0.0, 0.0));
            assert_eq!(constant_term(&s, Side::G, y), c(0.0, 0.0));
        }
    }

    #[test]
    fn eisenstein_constant_term_matches_xi() {
        let s = spec();
        let nu = 0.25;
        let xi = |t: f64| crate::lseries::xi(c(t, 0.0)).unwrap();
        let y: f64 = 1.7;
        let expect = xi(1.0 + 2.0 * nu) * y.powf(0.5 + nu) + xi(1.0 - 2.0 * nu) * y.powf(0.5 - nu);
        for side in [Side::F, Side::G] {
            assert!((constant_term(&s, side, y) - expect).norm() < 1e-9);
        }
    }

    #[test]
    fn zero_nu_constant_term() {
        let z = c(0.0, 0.0);
        let r = Residues::Zero { f_zero: c(-2.0, 0.0), f_zero_s: z, g_zero: c(-2.0, 0.0), g_zero_s: c(1.0, 0.0) };
        let co = CoeffSeq::with_exponent(vec![c(1.0, 0.0); 10], 0.0).unwrap();
        let nu0 = SpectralParam::new(z).unwrap();
        let s = MaassSpec::new(1, DirichletCharacter::trivial(), Parity::Even, nu0, co.clone(), co.clone(), r, Family::Generic)
            .unwrap();
        assert!((constant_term(&s, Side::F, 4.0) - c(4.0, 0.0)).norm() < 1e-15);
        assert!((constant_term(&s, Side::G, 4.0) - c(4.0 + 2.0 * 4f64.ln(), 0.0)).norm() < 1e-14);
        assert!(MaassSpec::new(1, DirichletCharacter::trivial(), Parity::Even, nu0, co.clone(), co, Residues::zero_polar(), Family::Generic)
            .is_err());
    }

    #[test]
    fn doubling_n_max_stays_within_tail() {
        let s = spec();
        let p = Precision { abs_tol: 1e-9, ..Precision::default() };
        for z in [c(0.1, 0.3), c(0.37, 0.08), c(-0.2, 1.1)] {
            let (v, plan) = whittaker_sum(&s.a, s.nu, 1.0, |_| c(1.0, 0.0), z, &p).unwrap();
            let doubled = s.a.truncated(2 * plan.n_max);
            let mut acc = c(0.0, 0.0);
            for n in 1..=doubled.len() {
                let nf = n as f64;
                acc += doubled.get(n) / nf.sqrt() * whittaker_w(s.nu.nu(), nf * z.im).unwrap() * (2.0 * PI * nf * z.re).cos();
            }
            assert!((acc - v).norm() <= plan.tail_bound + 1e-15, "{z}");
        }
    }

    #[test]
    fn refuses_low_points_and_short_sequences() {
        let s = spec();
        assert!(matches!(eval(&s, Side::F, c(0.0, 0.01), &Precision::default()), Err(Error::Domain(_))));
        let short = eisenstein_spec(SpectralParam::real(0.25).unwrap(), 20).unwrap();
        assert!(matches!(
            eval(&short, Side::F, c(0.0, 0.06), &Precision::default()),
            Err(Error::InsufficientCoefficients { .. })
        ));
    }

    #[test]
    fn slash_examples() {
        let s = spec();
        let p = Precision::default();
        let f = |z| eval(&s, Side::F, z, &p);
        let z = c(0.3, 0.9);
        assert_eq!(slash(&Moebius::identity(), f, z).unwrap(), f(z).unwrap());
        assert!((slash(&Moebius::translation(1.0), f, z).unwrap() - f(z).unwrap()).norm() < 1e-12);
        let sn = Moebius::fricke(1.0);
        assert_eq!(slash(&sn, f, z).unwrap(), f(fricke_image(1, z)).unwrap());
    }

    #[test]
    fn involution_for_eisenstein() {
        let s = spec();
        let pts = [c(0.0, 0.8), c(0.0, 1.0), c(0.0, 1.25), c(0.3, 0.9)];
        let r = involution_residual(&s, &pts, &Precision::default(), 1e-8).unwrap();
        assert!(r.pass, "{}", r.max_rel_residual);
        assert!(r.grid[1].abs_residual < 1e-13);
    }

    #[test]
    fn twist_and_difference_identities() {
        let s = spec();
        let p = Precision { min_height: 0.02, ..Precision::default() };
        let psi = character_group(5).unwrap().characters().into_iter().find(|x| x.exponent_vector() == [2]).unwrap();
        let r = twist_transform_residual(&s, &psi, &[c(0.0, 0.5)], &p, 1e-6).unwrap();
        assert!(r.pass, "{}", r.max_rel_residual);
        let principal = character_group(5).unwrap().principal();
        assert!(matches!(twist_transform_residual(&s, &principal, &[c(0.0, 0.5)], &p, 1e-6), Err(Error::Precondition(_))));
        let d = difference_identity_residual(&s, 5, 1, 2, &[c(0.0, 1.0)], &p, 1e-6).unwrap();
        assert!(d.pass, "{}", d.max_rel_residual);
        let same = difference_identity_residual(&s, 5, 2, 7, &[c(0.1, 0.7)], &p, 1e-12).unwrap();
        assert_eq!(same.grid[0].lhs.norm() + same.grid[0].rhs.norm() < 1e-12, true);
    }

    #[test]
    fn difference_matches_twist_rearrangement() {
        let s = spec();
        let p = Precision::default();
        for (q, a, b, z) in [(5u64, 1i64, 2i64, c(0.0, 1.0)), (7, 3, 5, c(0.1, 0.8))] {
            let qf = q as f64;
            let lhs = eval(&s, Side::F, z + a as f64 / qf, &p).unwrap() - eval(&s, Side::F, z + b as f64 / qf, &p).unwrap();
            let via = difference_from_twists(&s, q, a, b, z, &p).unwrap();
            assert!((lhs - via).norm() < 1e-8 * (1.0 + lhs.norm()));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn parity_and_periodicity(x in -0.5f64..0.5, y in 0.3f64..2.0) {
            let p = Precision::default();
            for s in [spec(), odd_spec()] {
                let sign = if s.parity == Parity::Odd { -1.0 } else { 1.0 };
                let f0 = constant_term(&s, Side::F, y);
                let v = eval(&s, Side::F, c(x, y), &p).unwrap();
                let m = eval(&s, Side::F, c(-x, y), &p).unwrap();
                prop_assert!((m - (sign * (v - f0) + f0)).norm() < 1e-10);
                let shifted = eval(&s, Side::F, c(x + 1.0, y), &p).unwrap();
                prop_assert!((shifted - v).norm() < 1e-10 * (1.0 + v.norm()));
            }
        }
    }
}
