//! The symmetric-square / zeta quotient: completed Dirichlet L-functions, the
//! gamma-factor cancellation and the root-number arithmetic of the quotient.
//!
//! Throughout, `ω_ψ` is the idele class character whose L-function is
//! `L(s, ψ̄)`, matching the `ψ̄`-twisted coefficients of the symmetric square.

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::characters::DirichletCharacter;
use crate::corpus::{moebius_deconvolve, sym2_coeffs, HeckeData};
use crate::error::{Error, Result};
use crate::lseries::CoeffSeq;
use crate::report::{cjson, format_point, CheckReport};
use crate::specfun::{gamma, gamma_r, SpectralParam};

pub use crate::lseries::dirichlet_l;

/// How a Dirichlet L-function is completed, and the matching factor in front
/// of `Λ(1-s, ψ)` in its functional equation, for `χ` the character of the
/// L-values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Completion {
    /// `(q/π)^{(s+ε)/2} Γ((s+ε)/2) L`, factor `(-i)^ε τ(χ)/√q`.
    #[default]
    Analytic,
    /// `π^{-(s+ε)/2} Γ((s+ε)/2) L`, factor `(-i)^ε τ(χ) q^{-s}`.
    Arithmetic,
    /// Arithmetic completion with factor `(-i)^ε τ(χ) q^{-1/2} q^{-s}`.
    Literal,
}

impl Completion {
    pub fn name(self) -> &'static str {
        match self {
            Completion::Analytic => "analytic",
            Completion::Arithmetic => "arithmetic",
            Completion::Literal => "literal",
        }
    }

    pub fn gamma_description(self) -> &'static str {
        match self {
            Completion::Analytic => "(q/pi)^((s+eps)/2) Gamma((s+eps)/2)",
            Completion::Arithmetic | Completion::Literal => "pi^(-(s+eps)/2) Gamma((s+eps)/2)",
        }
    }

    pub fn conductor_power(self) -> &'static str {
        match self {
            Completion::Analytic => "q^(-1/2)",
            Completion::Arithmetic => "q^(-s)",
            Completion::Literal => "q^(-1/2) q^(-s)",
        }
    }

    fn completed(self, chi: &DirichletCharacter, s: Complex64) -> Result<Complex64> {
        let eps = chi.parity().bit() as f64;
        let u = (s + eps) / 2.0;
        let q = chi.modulus() as f64;
        let base = match self {
            Completion::Analytic => q / PI,
            Completion::Arithmetic | Completion::Literal => 1.0 / PI,
        };
        Ok(Complex64::new(base, 0.0).powc(u) * gamma(u)? * dirichlet_l(chi, s)?)
    }

    fn root_factor(self, chi: &DirichletCharacter, s: Complex64) -> Complex64 {
        let eps = chi.parity().bit() as u32;
        let q = Complex64::new(chi.modulus() as f64, 0.0);
        let base = Complex64::new(0.0, -1.0).powu(eps) * chi.gauss_sum();
        match self {
            Completion::Analytic => base / q.sqrt(),
            Completion::Arithmetic => base * q.powc(-s),
            Completion::Literal => base / q.sqrt() * q.powc(-s),
        }
    }
}

/// `Λ(ω_ψ, s)` against its functional equation under the given completion.
pub fn dirichlet_fe_residual(
    psi: &DirichletCharacter,
    grid: &[Complex64],
    completion: Completion,
    tolerance: f64,
) -> Result<CheckReport> {
    if psi.modulus() < 2 || !psi.is_primitive() {
        return Err(Error::Precondition("Dirichlet functional equation needs primitive psi, q > 1".into()));
    }
    let started = Instant::now();
    let chi = psi.conj();
    let mut report = CheckReport::new("dirichlet-fe", "functional equation of completed Dirichlet L-functions", tolerance)
        .relative()
        .param("q", psi.modulus())
        .param("character", serde_json::json!(psi.exponent_vector()))
        .param("completion", completion.name())
        .param("gamma_factor", completion.gamma_description())
        .param("conductor_power", completion.conductor_power());
    for &s in grid {
        let lhs = completion.completed(&chi, s)?;
        let rhs = completion.root_factor(&chi, s) * completion.completed(psi, 1.0 - s)?;
        report.push(format_point(s), lhs, rhs);
    }
    Ok(report.finish(started))
}

/// `π^{-3s/2} Γ((s+ε+ν)/2) Γ((s+ε-ν)/2) Γ((s+ε)/2) / (π^{-(s+ε)/2} Γ((s+ε)/2))`
/// divided by `Γ_R(s+ε+ν) Γ_R(s+ε-ν)`.
pub fn quotient_gamma_ratio(eps: u8, nu: SpectralParam, s: Complex64) -> Result<Complex64> {
    let e = eps as f64;
    let v = nu.nu();
    let sym2 = Complex64::new(PI, 0.0).powc(-1.5 * s) * gamma((s + e + v) / 2.0)? * gamma((s + e - v) / 2.0)? * gamma((s + e) / 2.0)?;
    let dirichlet = Complex64::new(PI, 0.0).powc(-(s + e) / 2.0) * gamma((s + e) / 2.0)?;
    Ok(sym2 / dirichlet / (gamma_r(s + e + v)? * gamma_r(s + e - v)?))
}

/// Deviation of the gamma quotient from a constant over `grid`; for `ε = 0`
/// the constant is also compared with 1.
pub fn quotient_gamma_residual(eps: u8, nu: SpectralParam, grid: &[Complex64], tolerance: f64) -> Result<CheckReport> {
    if eps > 1 {
        return Err(Error::Parameter(format!("eps must be 0 or 1, got {eps}")));
    }
    let first = *grid.first().ok_or_else(|| Error::Parameter("empty grid".into()))?;
    let started = Instant::now();
    let constant = quotient_gamma_ratio(eps, nu, first)?;
    let mut report = CheckReport::new("quotient-gamma", "gamma factors of the symmetric-square quotient", tolerance)
        .param("eps", eps)
        .param("nu", cjson::value(nu.nu()))
        .param("dirichlet_gamma", Completion::Arithmetic.gamma_description())
        .param("constant", cjson::value(constant))
        .param("pi_power", (constant.re.ln() / PI.ln() * 1e12).round() / 1e12);
    for &s in grid {
        report.push(format_point(s), quotient_gamma_ratio(eps, nu, s)?, constant);
    }
    if eps == 0 {
        report.push("constant", constant, Complex64::new(1.0, 0.0));
    } else {
        report.note(format!("constant for odd twist: {} (pi^(3/2) = {})", format_point(constant), PI.powf(1.5)));
    }
    Ok(report.finish(started))
}

/// Which root number is used for the twisted symmetric square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Sym2RootNumber {
    /// `(-i)^{3ε} τ(ψ̄)³ q^{-3/2} (Mq³)^{-s}`.
    #[default]
    Stated,
    /// `i^{3ε} ψ̄(M) τ(ψ̄)³ q^{-3/2} (Mq³)^{-s}`.
    Literal,
}

impl Sym2RootNumber {
    pub fn name(self) -> &'static str {
        match self {
            Sym2RootNumber::Stated => "stated",
            Sym2RootNumber::Literal => "literal",
        }
    }

    fn factor(self, psi: &DirichletCharacter, m: u64, s: Complex64) -> Complex64 {
        let eps = psi.parity().bit() as u32;
        let q = psi.modulus() as f64;
        let tau = psi.conj().gauss_sum();
        let pre = match self {
            Sym2RootNumber::Stated => Complex64::new(0.0, -1.0).powu(3 * eps),
            Sym2RootNumber::Literal => Complex64::new(0.0, 1.0).powu(3 * eps) * psi.conj().value(m as i64),
        };
        pre * tau.powu(3) * q.powf(-1.5) * Complex64::new(m as f64 * q.powi(3), 0.0).powc(-s)
    }
}

/// Root number of the quotient: the twisted symmetric-square factor divided
/// by the Dirichlet factor `(-i)^ε τ(ψ̄) q^{-1/2} q^{-s}`, against
/// `(-1)^ε τ(ψ̄)²/q (Mq²)^{-s}`.
pub fn quotient_fe_epsilon_residual(
    psi: &DirichletCharacter,
    m: u64,
    grid: &[Complex64],
    root: Sym2RootNumber,
    tolerance: f64,
) -> Result<CheckReport> {
    let q = psi.modulus();
    if q.gcd(&m) != 1 || m == 0 {
        return Err(Error::Precondition(format!("gcd(q, M) = gcd({q}, {m}) must be 1")));
    }
    let started = Instant::now();
    let eps = psi.parity().bit() as u32;
    let qf = q as f64;
    let tau = psi.conj().gauss_sum();
    let mut report = CheckReport::new("quotient-epsilon", "root number of the symmetric-square quotient", tolerance)
        .param("q", q)
        .param("M", m)
        .param("eps", eps)
        .param("character", serde_json::json!(psi.exponent_vector()))
        .param("sym2_root_number", root.name());
    for &s in grid {
        let dirichlet = Complex64::new(0.0, -1.0).powu(eps) * tau / qf.sqrt() * Complex64::new(qf, 0.0).powc(-s);
        let lhs = root.factor(psi, m, s) / dirichlet;
        let sign = if eps == 0 { 1.0 } else { -1.0 };
        let rhs = sign * tau * tau / qf * Complex64::new(m as f64 * qf * qf, 0.0).powc(-s);
        report.push(format_point(s), lhs, rhs);
    }
    Ok(report.finish(started))
}

/// Symmetric-square data and its zeta quotient.
#[derive(Debug, Clone, Serialize)]
pub struct QuotientSpec {
    #[serde(serialize_with = "coeff_pairs")]
    pub sym2: CoeffSeq,
    #[serde(serialize_with = "coeff_pairs")]
    pub quotient: CoeffSeq,
    pub conductor: u64,
    pub nu: SpectralParam,
    pub eps_psi: u8,
    pub level: u64,
    pub source: String,
    pub checksum: String,
}

fn coeff_pairs<S: serde::Serializer>(c: &CoeffSeq, s: S) -> std::result::Result<S::Ok, S::Error> {
    c.values().iter().map(|z| (z.re, z.im)).collect::<Vec<_>>().serialize(s)
}

impl QuotientSpec {
    /// `conductor` must divide `level²`.
    pub fn new(hecke: &HeckeData, n_max: usize, conductor: u64, nu: SpectralParam, eps_psi: u8) -> Result<Self> {
        let n2 = hecke.level * hecke.level;
        if conductor == 0 || n2 % conductor != 0 {
            return Err(Error::Parameter(format!("conductor {conductor} does not divide N^2 = {n2}")));
        }
        if eps_psi > 1 {
            return Err(Error::Parameter(format!("eps_psi must be 0 or 1, got {eps_psi}")));
        }
        let sym2 = sym2_coeffs(hecke, n_max)?;
        let quotient = moebius_deconvolve(&sym2)?;
        Ok(Self {
            sym2,
            quotient,
            conductor,
            nu,
            eps_psi,
            level: hecke.level,
            source: hecke.source.clone(),
            checksum: hecke.checksum.clone(),
        })
    }

    /// Quotient coefficients twisted by `ψ̄`.
    pub fn twisted_quotient(&self, psi: &DirichletCharacter) -> Vec<Complex64> {
        self.quotient.values().iter().enumerate().map(|(i, a)| psi.conj().value(i as i64 + 1) * a).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::character_group;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn primitive(q: u64) -> Vec<DirichletCharacter> {
        character_group(q).unwrap().characters().into_iter().filter(|p| p.is_primitive()).collect()
    }

    #[test]
    fn dirichlet_fe_under_each_completion() {
        let grid = [c(0.3, 2.0), c(0.5, 0.0), c(-1.0, 0.5), c(0.8, -4.0), c(2.0, 1.0)];
        for q in [3u64, 5, 7, 13] {
            for psi in primitive(q) {
                for conv in [Completion::Analytic, Completion::Arithmetic] {
                    let r = dirichlet_fe_residual(&psi, &grid, conv, 1e-10).unwrap();
                    assert!(r.pass, "q={q} {:?}: {}", conv, r.max_rel_residual);
                }
                let lit = dirichlet_fe_residual(&psi, &grid, Completion::Literal, 1e-8).unwrap();
                assert!(!lit.pass);
                // the literal factor is off by exactly q^{-1/2}
                for p in &lit.grid {
                    assert!((p.rhs * (q as f64).sqrt() - p.lhs).norm() < 1e-10 * (1.0 + p.lhs.norm()));
                }
            }
        }
    }

    #[test]
    fn dirichlet_fe_is_an_involution() {
        let psi = &primitive(5)[0];
        let chi = psi.conj();
        let s = c(0.3, 2.0);
        let conv = Completion::Analytic;
        let there = conv.root_factor(&chi, s);
        let back = conv.root_factor(psi, 1.0 - s);
        assert!((there * back - 1.0).norm() < 1e-12);
    }

    #[test]
    fn gamma_quotient_constants() {
        let grid: Vec<Complex64> = (0..11).map(|j| c(0.5 + 0.2 * j as f64, -5.0 + j as f64)).collect();
        let nu = SpectralParam::real(0.25).unwrap();
        let even = quotient_gamma_residual(0, nu, &grid, 1e-10).unwrap();
        assert!(even.pass);
        let odd = quotient_gamma_residual(1, nu, &grid, 1e-10).unwrap();
        assert!(odd.pass);
        let k = quotient_gamma_ratio(1, nu, c(0.7, 0.0)).unwrap();
        assert!((k - PI.powf(1.5)).norm() < 1e-12);
        assert!(matches!(quotient_gamma_ratio(0, nu, c(-0.25, 0.0)), Err(Error::Pole(_))));
    }

    #[test]
    fn epsilon_identity() {
        let grid = [c(0.7, 0.0), c(0.3, 1.0), c(0.5, 0.0), c(-1.0, 2.0), c(2.0, -3.0)];
        for q in [5u64, 7] {
            for psi in primitive(q) {
                for m in [1u64, 4] {
                    let r = quotient_fe_epsilon_residual(&psi, m, &grid, Sym2RootNumber::Stated, 1e-12).unwrap();
                    assert!(r.pass, "q={q} m={m}: {}", r.max_abs_residual);
                    // |τ|² = q makes both sides have modulus (Mq²)^{-Re s}
                    let half = &r.grid[2];
                    assert!((half.lhs.norm() - half.rhs.norm()).abs() < 1e-12);
                }
            }
        }
        assert!(quotient_fe_epsilon_residual(&primitive(5)[0], 10, &grid, Sym2RootNumber::Stated, 1e-12).is_err());
    }

    #[test]
    fn literal_root_number_is_off_by_psi_of_m() {
        let grid = [c(0.5, 0.0)];
        let psi = primitive(5).into_iter().find(|p| p.parity().bit() == 1).unwrap();
        let r = quotient_fe_epsilon_residual(&psi, 2, &grid, Sym2RootNumber::Literal, 1e-12).unwrap();
        assert!(!r.pass);
        let p = &r.grid[0];
        // literal/stated = ψ̄(M) (-1)^ε
        assert!((p.lhs / p.rhs - psi.conj().value(2) * -1.0).norm() < 1e-12);
    }
}
