//! Test vectors: the level-1 real-analytic Eisenstein family, symmetric-square
//! coefficients from Hecke eigenvalues, Möbius deconvolution and ingestion of
//! eigenvalue tables.

use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::characters::{is_prime, DirichletCharacter, Parity};
use crate::error::{Error, Result};
use crate::lseries::{continued_lambda_eisenstein, pole_residue, CoeffSeq};
use crate::maassform::{save_spec, Family, MaassSpec, Residues};
use crate::specfun::SpectralParam;

/// Largest `|Re ν|` accepted by the Eisenstein generator.
pub const EISENSTEIN_MAX_RE_NU: f64 = 0.35;

/// Radius and node count of the residue quadrature.
pub const RESIDUE_RADIUS: f64 = 1e-2;
pub const RESIDUE_NODES: usize = 64;

/// `a_n = σ_{2ν}(n) n^{-ν}` for `1 ≤ n ≤ n_max`.
pub fn eisenstein_coeffs(nu: Complex64, n_max: usize) -> Vec<Complex64> {
    let mut acc = vec![Complex64::new(0.0, 0.0); n_max + 1];
    for d in 1..=n_max {
        let w = Complex64::new(d as f64, 0.0).powc(2.0 * nu);
        for m in (d..=n_max).step_by(d) {
            acc[m] += w;
        }
    }
    (1..=n_max).map(|n| acc[n] * Complex64::new(n as f64, 0.0).powc(-nu)).collect()
}

/// Growth exponent `σ = |Re ν| + κ` with `κ` in the middle of `(0, 1/2 - |Re ν|)`.
pub fn eisenstein_sigma(nu: Complex64) -> f64 {
    let r = nu.re.abs();
    r + (0.5 - r) / 2.0
}

/// Residues of `Λ_f(s) = ξ(s+ν) ξ(s-ν)` at `-ν, ν, 1+ν, 1-ν`, by small-circle
/// quadrature.
pub fn eisenstein_residues(nu: SpectralParam) -> Result<Residues> {
    let trivial = DirichletCharacter::trivial();
    let lambda = |s| continued_lambda_eisenstein(&trivial, nu, 0, s);
    let v = nu.nu();
    let res = |p: Complex64| pole_residue(lambda, p, RESIDUE_RADIUS, RESIDUE_NODES);
    Ok(Residues::Polar {
        f_minus_nu: res(-v)?,
        f_plus_nu: res(v)?,
        g_one_plus_nu: res(1.0 + v)?,
        g_one_minus_nu: res(1.0 - v)?,
    })
}

/// Level-1 Eisenstein spec with `b = a`.
pub fn eisenstein_spec(nu: SpectralParam, n_max: usize) -> Result<MaassSpec> {
    let v = nu.nu();
    if v.re.abs() >= EISENSTEIN_MAX_RE_NU {
        return Err(Error::Parameter(format!(
            "|Re nu| = {} >= {EISENSTEIN_MAX_RE_NU}: growth window too narrow",
            v.re.abs()
        )));
    }
    // ±ν must be separated by more than the residue circles
    if v.norm() <= 2.0 * RESIDUE_RADIUS {
        return Err(Error::Parameter(format!("|nu| = {} is too close to 0", v.norm())));
    }
    if n_max < 16 {
        return Err(Error::Parameter(format!("n_max = {n_max} < 16")));
    }
    let a = CoeffSeq::with_exponent(eisenstein_coeffs(v, n_max), eisenstein_sigma(v))?;
    MaassSpec::new(
        1,
        DirichletCharacter::trivial(),
        Parity::Even,
        nu,
        a.clone(),
        a,
        eisenstein_residues(nu)?,
        Family::Eisenstein,
    )
}

/// Writes `spec.json` and its coefficient CSV into `dir`.
pub fn emit(spec: &MaassSpec, dir: &Path) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join("spec.json");
    save_spec(spec, &path)?;
    Ok(path)
}

/// Hecke eigenvalues `λ_p` for consecutive primes `p ≤ P`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeckeData {
    pub level: u64,
    pub primes: Vec<u64>,
    #[serde(with = "complex_vec")]
    pub lambdas: Vec<Complex64>,
    pub bad: Vec<bool>,
    pub source: String,
    /// SHA-256 of the source file, hex.
    pub checksum: String,
}

mod complex_vec {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|z| (z.re, z.im)).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex64>, D::Error> {
        Ok(Vec::<(f64, f64)>::deserialize(d)?.into_iter().map(|(re, im)| Complex64::new(re, im)).collect())
    }
}

impl HeckeData {
    /// Marks the primes dividing `level` as bad.
    pub fn with_level(mut self, level: u64) -> Self {
        self.level = level;
        self.bad = self.primes.iter().map(|p| level % p == 0).collect();
        self
    }

    pub fn lambda(&self, p: u64) -> Option<Complex64> {
        self.primes.iter().position(|&q| q == p).map(|i| self.lambdas[i])
    }

    pub fn is_bad(&self, p: u64) -> bool {
        self.primes.iter().position(|&q| q == p).is_some_and(|i| self.bad[i])
    }
}

/// `p^{1/2} + p^{-1/2} + 1`.
pub fn hecke_sanity_bound(p: u64) -> f64 {
    let r = (p as f64).sqrt();
    r + 1.0 / r + 1.0
}

fn next_prime(p: u64) -> u64 {
    (p + 1..).find(|&n| is_prime(n)).expect("primes are unbounded")
}

/// Reads a `p,lambda_re,lambda_im` CSV. Primes must be consecutive from 2.
pub fn load_hecke(path: &Path) -> Result<HeckeData> {
    let bytes = fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let checksum = hex::encode(Sha256::digest(&bytes));
    let mut rdr = csv::Reader::from_reader(bytes.as_slice());
    let headers = rdr.headers()?.clone();
    if headers.iter().map(str::trim).collect::<Vec<_>>() != ["p", "lambda_re", "lambda_im"] {
        return Err(Error::Format("header must be p,lambda_re,lambda_im".into()));
    }
    let mut primes = Vec::new();
    let mut lambdas = Vec::new();
    let mut expect = 2u64;
    for row in rdr.deserialize::<(u64, f64, f64)>() {
        let (p, re, im) = row?;
        if !is_prime(p) {
            return Err(Error::Format(format!("{p} is not prime")));
        }
        if p != expect {
            return Err(Error::Format(format!("expected p = {expect}, found {p}")));
        }
        let lam = Complex64::new(re, im);
        if lam.norm() > hecke_sanity_bound(p) {
            return Err(Error::SanityBoundViolation { p, value: lam.norm() });
        }
        primes.push(p);
        lambdas.push(lam);
        expect = next_prime(p);
    }
    if primes.is_empty() {
        return Err(Error::Format("no eigenvalues".into()));
    }
    let bad = vec![false; primes.len()];
    Ok(HeckeData { level: 1, primes, lambdas, bad, source: path.display().to_string(), checksum })
}

/// Smallest prime factor of every `n ≤ n_max`.
fn smallest_prime_factors(n_max: usize) -> Vec<usize> {
    let mut spf = vec![0usize; n_max + 1];
    for i in 2..=n_max {
        if spf[i] == 0 {
            for m in (i..=n_max).step_by(i) {
                if spf[m] == 0 {
                    spf[m] = i;
                }
            }
        }
    }
    spf
}

/// Extends prime-power values multiplicatively to `1..=n_max`.
fn multiplicative_extend<F>(n_max: usize, mut prime_power: F) -> Result<Vec<Complex64>>
where
    F: FnMut(u64, u32) -> Result<Complex64>,
{
    let spf = smallest_prime_factors(n_max);
    let mut out = vec![Complex64::new(0.0, 0.0); n_max + 1];
    if n_max >= 1 {
        out[1] = Complex64::new(1.0, 0.0);
    }
    for n in 2..=n_max {
        let p = spf[n];
        let (mut m, mut k) = (n, 0u32);
        while m % p == 0 {
            m /= p;
            k += 1;
        }
        out[n] = out[m] * prime_power(p as u64, k)?;
    }
    out.remove(0);
    Ok(out)
}

/// Coefficients of `∏_p (1-α²X)^{-1} (1-X)^{-1} (1-β²X)^{-1}`, `X = p^{-s}`,
/// with `α + β = λ_p`, `αβ = 1`.
pub fn sym2_coeffs(h: &HeckeData, n_max: usize) -> Result<CoeffSeq> {
    let mut local: std::collections::HashMap<u64, Vec<Complex64>> = std::collections::HashMap::new();
    let values = multiplicative_extend(n_max, |p, k| {
        if !local.contains_key(&p) {
            if h.is_bad(p) {
                return Err(Error::BadPrimeUnsupported(p));
            }
            let lam = h.lambda(p).ok_or(Error::MissingEigenvalue(p))?;
            // 1/(1 - e1 X + e2 X² - X³) with e1 = e2 = λ² - 1
            let e = lam * lam - 1.0;
            let mut c = vec![Complex64::new(1.0, 0.0)];
            let mut pk = 1u64;
            while pk <= n_max as u64 / p {
                pk *= p;
                let zero = Complex64::new(0.0, 0.0);
                let back = |i: usize| if c.len() >= i { c[c.len() - i] } else { zero };
                let next = e * back(1) - e * back(2) + back(3);
                c.push(next);
            }
            local.insert(p, c);
        }
        Ok(local[&p][k as usize])
    })?;
    let sigma = 0.5 + 0.25;
    CoeffSeq::with_exponent(values, sigma)
}

/// Möbius function `μ(n)` for `n ≤ n_max` (index 0 unused).
pub fn moebius_table(n_max: usize) -> Vec<i8> {
    let spf = smallest_prime_factors(n_max);
    let mut mu = vec![0i8; n_max + 1];
    if n_max >= 1 {
        mu[1] = 1;
    }
    for n in 2..=n_max {
        let p = spf[n];
        let m = n / p;
        mu[n] = if m % p == 0 { 0 } else { -mu[m] };
    }
    mu
}

/// `a_n = Σ_{d|n} μ(d) c_{n/d}`, generic over exact or floating entries.
pub fn moebius_deconvolve_slice<T>(c: &[T]) -> Vec<T>
where
    T: Clone + Zero + std::ops::Sub<Output = T>,
{
    let n_max = c.len();
    let mu = moebius_table(n_max);
    let mut a = vec![T::zero(); n_max];
    for d in 1..=n_max {
        if mu[d] == 0 {
            continue;
        }
        for (j, m) in (d..=n_max).step_by(d).enumerate() {
            let term = c[j].clone();
            a[m - 1] = if mu[d] > 0 { a[m - 1].clone() + term } else { a[m - 1].clone() - term };
        }
    }
    a
}

/// `(a * 1)_n = Σ_{d|n} a_d`.
pub fn convolve_with_one<T>(a: &[T]) -> Vec<T>
where
    T: Clone + Zero,
{
    let n_max = a.len();
    let mut c = vec![T::zero(); n_max];
    for d in 1..=n_max {
        for m in (d..=n_max).step_by(d) {
            c[m - 1] = c[m - 1].clone() + a[d - 1].clone();
        }
    }
    c
}

/// Dirichlet convolution `(c * d)_n = Σ_{e|n} c_e d_{n/e}`.
pub fn dirichlet_convolve<T>(c: &[T], d: &[T]) -> Vec<T>
where
    T: Clone + Zero + std::ops::Mul<Output = T>,
{
    let n_max = c.len().min(d.len());
    let mut out = vec![T::zero(); n_max];
    for e in 1..=n_max {
        for (j, m) in (e..=n_max).step_by(e).enumerate() {
            out[m - 1] = out[m - 1].clone() + c[e - 1].clone() * d[j].clone();
        }
    }
    out
}

/// Coefficients of `(Σ c_n n^{-s}) / ζ(s)`; the growth exponent is refitted.
pub fn moebius_deconvolve(c: &CoeffSeq) -> Result<CoeffSeq> {
    let a = moebius_deconvolve_slice(c.values());
    let sigma = growth_slope(&a).max(0.0);
    CoeffSeq::with_exponent(a, sigma)
}

/// Slope of the least-squares line through `(ln n, ln max_{m≤n} |a_m|)` over
/// the upper half of the index range.
pub fn growth_slope(values: &[Complex64]) -> f64 {
    let mut running = 0.0f64;
    let mut pts = Vec::new();
    let start = values.len() / 2;
    for (i, v) in values.iter().enumerate() {
        running = running.max(v.norm());
        if i + 1 > start.max(1) && running > 0.0 {
            pts.push((((i + 1) as f64).ln(), running.ln()));
        }
    }
    if pts.len() < 2 {
        return 0.0;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// Divisor-sum check used by the corpus tests: `Σ_{d|n} f(d)`.
pub fn divisor_sum<T, F>(n: u64, f: F) -> T
where
    T: Zero,
    F: Fn(u64) -> T,
{
    (1..=n).filter(|d| n % d == 0).fold(T::zero(), |acc, d| acc + f(d))
}

/// `σ_1(n)` as an exact integer.
pub fn sigma_one(n: u64) -> num_bigint::BigInt {
    divisor_sum(n, num_bigint::BigInt::from)
}

/// `δ_1` as an exact sequence.
pub fn unit_sequence<T: Zero + One + Clone>(n_max: usize) -> Vec<T> {
    let mut v = vec![T::zero(); n_max];
    if n_max > 0 {
        v[0] = T::one();
    }
    v
}
