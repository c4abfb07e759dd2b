//! Dirichlet series with additive or multiplicative twists, their gamma
//! factors and completions, the Mellin transform identities, the contour
//! integral check and the Vandermonde coefficient solver.
//!
//! Direct summation is only attempted at `Re s ≥ σ + 1 + 0.25`; the certified
//! tail is `C N^{σ+1-Re s} / (Re s - σ - 1)`. Values elsewhere come from the
//! Hurwitz-zeta continuation available for the Eisenstein family.

mod circle;
mod continuation;
mod mellin;
mod vandermonde;

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::characters::{root_of_unity, DirichletCharacter};
use crate::error::{Error, Result};
use crate::specfun::{gamma_r, SpectralParam};

pub use circle::{circle_integral_residual, pole_residue, CircleOptions};
pub use continuation::{
    additive_fe_residual, additive_lambda_eisenstein, continued_lambda_eisenstein, dirichlet_l, twisted_fe_residual, xi,
};
pub use mellin::{mellin_identity_residual, mellin_kcos, mellin_kcos_quadrature, mellin_lhs, mellin_rhs};
pub use vandermonde::{ratio, vandermonde_coeffs, VandermondeSystem};

/// Margin beyond the abscissa of absolute convergence required for direct sums.
pub const CONVERGENCE_MARGIN: f64 = 0.25;

/// Coefficients `a_1, a_2, …` with a growth certificate `|a_n| ≤ C n^σ`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffSeq {
    values: Vec<Complex64>,
    sigma: f64,
    bound: f64,
}

impl CoeffSeq {
    /// Checks `|a_n| ≤ C n^σ` for every stored `n`.
    pub fn new(values: Vec<Complex64>, sigma: f64, bound: f64) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Parameter("coefficient sequence is empty".into()));
        }
        if !(bound > 0.0) || !sigma.is_finite() {
            return Err(Error::Parameter(format!("bad growth data C = {bound}, sigma = {sigma}")));
        }
        for (i, v) in values.iter().enumerate() {
            let n = (i + 1) as f64;
            if !(v.norm() <= bound * n.powf(sigma) * (1.0 + 1e-12)) {
                return Err(Error::Precondition(format!(
                    "|a_{}| = {} exceeds {} * n^{}",
                    i + 1,
                    v.norm(),
                    bound,
                    sigma
                )));
            }
        }
        Ok(Self { values, sigma, bound })
    }

    /// Smallest `C` certifying the stored values at exponent `σ`.
    pub fn with_exponent(values: Vec<Complex64>, sigma: f64) -> Result<Self> {
        let c = values
            .iter()
            .enumerate()
            .map(|(i, v)| v.norm() / ((i + 1) as f64).powf(sigma))
            .fold(f64::MIN_POSITIVE, f64::max);
        Self::new(values, sigma, c)
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `a_n` for `n ≥ 1`; panics outside the stored range.
    pub fn get(&self, n: usize) -> Complex64 {
        self.values[n - 1]
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn bound(&self) -> f64 {
        self.bound
    }

    pub fn truncated(&self, n: usize) -> Self {
        Self { values: self.values[..n.min(self.values.len())].to_vec(), ..self.clone() }
    }
}

/// Additive twist weight `cos^{(k)}(2π n p/q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdditiveTwist {
    num: i64,
    den: u64,
    k: u32,
}

impl AdditiveTwist {
    /// `α = num/den`, stored in lowest terms.
    pub fn new(num: i64, den: u64, k: u32) -> Result<Self> {
        if den == 0 {
            return Err(Error::Parameter("zero denominator".into()));
        }
        let g = (num.unsigned_abs()).gcd(&den);
        let g = g.max(1);
        Ok(Self { num: num / g as i64, den: den / g, k })
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn alpha(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `cos^{(k)}(2π n α) = Re(i^k e(nα))`.
    pub fn weight(&self, n: u64) -> f64 {
        let t = ((n as i128 * self.num as i128).rem_euclid(self.den as i128)) as u64;
        let e = root_of_unity(t, self.den);
        match self.k % 4 {
            0 => e.re,
            1 => -e.im,
            2 => -e.re,
            _ => e.im,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Twist {
    None,
    Multiplicative(DirichletCharacter),
    Additive(AdditiveTwist),
}

impl Twist {
    /// The `k` entering the gamma-factor shift `[k + ε]`.
    pub fn parity_bit(&self) -> u8 {
        match self {
            Twist::None => 0,
            Twist::Multiplicative(psi) => psi.parity().bit(),
            Twist::Additive(t) => (t.k % 2) as u8,
        }
    }

    fn weight(&self, n: u64) -> Complex64 {
        match self {
            Twist::None => Complex64::new(1.0, 0.0),
            Twist::Multiplicative(psi) => psi.value(n as i64),
            Twist::Additive(t) => Complex64::new(t.weight(n), 0.0),
        }
    }
}

/// `Γ_R(s + shift + ν) Γ_R(s + shift - ν)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaFactor {
    pub shift: u8,
    pub nu: SpectralParam,
}

impl GammaFactor {
    /// Shift `[k + ε]`.
    pub fn new(k: u8, eps: u8, nu: SpectralParam) -> Self {
        Self { shift: (k + eps) % 2, nu }
    }
}

pub fn gamma_factor(gf: GammaFactor, s: Complex64) -> Result<Complex64> {
    let base = s + gf.shift as f64;
    let nu = gf.nu.nu();
    Ok(gamma_r(base + nu)? * gamma_r(base - nu)?)
}

/// A truncated series value with its certified tail bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: Complex64,
    pub tail_bound: f64,
    pub terms: usize,
}

/// Number of terms `N` making the tail bound at most `abs_tol`.
pub fn terms_for_tail(coeffs: &CoeffSeq, re_s: f64, abs_tol: f64) -> Result<usize> {
    let gap = re_s - coeffs.sigma - 1.0;
    if gap < CONVERGENCE_MARGIN - 1e-12 {
        return Err(Error::Convergence(format!(
            "Re s = {re_s} is below sigma + 1 + {CONVERGENCE_MARGIN} = {}",
            coeffs.sigma + 1.0 + CONVERGENCE_MARGIN
        )));
    }
    let n = (coeffs.bound / (abs_tol * gap)).powf(1.0 / gap).ceil();
    let n = if n.is_finite() && n < 1e15 { (n as usize).max(1) } else { usize::MAX };
    if n > coeffs.len() {
        return Err(Error::InsufficientCoefficients { required: n, available: coeffs.len() });
    }
    Ok(n)
}

/// `Σ_{n ≤ N} w(n) a_n n^{-s}` with `N` chosen from the tail bound.
pub fn dirichlet_sum(coeffs: &CoeffSeq, twist: &Twist, s: Complex64, abs_tol: f64) -> Result<SeriesValue> {
    let n_max = terms_for_tail(coeffs, s.re, abs_tol)?;
    let gap = s.re - coeffs.sigma - 1.0;
    let tail = coeffs.bound * (n_max as f64).powf(-gap) / gap;
    let mut acc = Complex64::new(0.0, 0.0);
    for n in (1..=n_max).rev() {
        let w = twist.weight(n as u64);
        if w.norm() == 0.0 {
            continue;
        }
        acc += w * coeffs.get(n) * (-s * (n as f64).ln()).exp();
    }
    Ok(SeriesValue { value: acc, tail_bound: tail, terms: n_max })
}

/// `γ(s) · Σ w(n) a_n n^{-s}` with the gamma shift `[k + ε]` read off the twist.
pub fn completed_lambda(
    coeffs: &CoeffSeq,
    twist: &Twist,
    eps: u8,
    nu: SpectralParam,
    s: Complex64,
    abs_tol: f64,
) -> Result<SeriesValue> {
    let g = gamma_factor(GammaFactor::new(twist.parity_bit(), eps, nu), s)?;
    let sum = dirichlet_sum(coeffs, twist, s, abs_tol)?;
    Ok(SeriesValue { value: g * sum.value, tail_bound: g.norm() * sum.tail_bound, terms: sum.terms })
}

/// Completed additive twist from multiplicative ones mod the odd prime `q`:
///
/// `i^k/(q-1) Σ_{ψ≠ψ₀, ψ(-1)=(-1)^k} τ(ψ̄) ψ(a) Λ(ψ)
///  + [k even] (-1)^{k/2} (Λ - q/(q-1) Λ(ψ₀))`.
///
/// `lambda(None)` must return the untwisted `Λ`, `lambda(Some(ψ))` the twist.
pub fn assemble_additive<F>(q: u64, a: i64, k: u32, mut lambda: F) -> Result<Complex64>
where
    F: FnMut(Option<&DirichletCharacter>) -> Result<Complex64>,
{
    if q < 3 || !crate::characters::is_prime(q) {
        return Err(Error::Precondition(format!("additive assembly needs an odd prime modulus, got {q}")));
    }
    let group = crate::characters::character_group(q)?;
    let qf = q as f64;
    let ik = Complex64::new(0.0, 1.0).powu(k);
    let want = crate::characters::Parity::from_bit((k % 2) as u8);
    let mut acc = Complex64::new(0.0, 0.0);
    for psi in group.characters() {
        if psi.is_principal() || psi.parity() != want {
            continue;
        }
        acc += psi.conj().gauss_sum() * psi.value(a) * lambda(Some(&psi))?;
    }
    acc = acc * ik / (qf - 1.0);
    if k % 2 == 0 {
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        let principal = group.principal();
        acc += sign * (lambda(None)? - qf / (qf - 1.0) * lambda(Some(&principal))?);
    }
    Ok(acc)
}
