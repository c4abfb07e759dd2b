//! Dirichlet characters modulo `q`.
//!
//! `(ℤ/q)^×` is split by CRT into cyclic factors: one per odd prime power
//! (generated by a primitive root), and for `2^e` the factors `⟨-1⟩` (e ≥ 2)
//! and `⟨5⟩` (e ≥ 3). A character is an exponent vector `j` with
//! `ψ(g_i) = e(j_i / ord_i)`; its values are kept as exact angle numerators
//! over the group exponent `E`, so `ψ(n) = e(angle(n) / E)`.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// `0` for even, `1` for odd.
    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn from_bit(k: u8) -> Self {
        if k % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == vec![(n, 1)]
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n).iter().fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    r
}

fn primitive_root(pe: u64, p: u64) -> u64 {
    let phi = euler_phi(pe);
    let divs: Vec<u64> = factorize(phi).into_iter().map(|(r, _)| r).collect();
    (2..pe)
        .find(|&g| g.gcd(&pe) == 1 && divs.iter().all(|&r| pow_mod(g, phi / r, pe) != 1))
        .unwrap_or_else(|| panic!("no primitive root mod {pe} (p = {p})"))
}

/// `x ≡ r (mod m)`, `x ≡ 1 (mod q/m)`, reduced mod `q`.
fn crt_lift(r: u64, m: u64, q: u64) -> u64 {
    let rest = q / m;
    (0..m).map(|t| 1 + t * rest).find(|x| x % m == r % m).map(|x| x % q).unwrap_or(1 % q)
}

#[derive(Debug)]
struct GroupData {
    q: u64,
    generators: Vec<(u64, u64)>,
    exponent: u64,
    /// `dlog[a]` is the exponent vector of `a`, or `None` when `gcd(a, q) > 1`.
    dlog: Vec<Option<Vec<u64>>>,
}

/// The full character group mod `q` with a fixed generator list.
#[derive(Debug, Clone)]
pub struct CharacterGroup {
    data: Arc<GroupData>,
}

impl CharacterGroup {
    pub fn new(q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::Parameter("modulus must be positive".into()));
        }
        let mut generators = Vec::new();
        for (p, e) in factorize(q) {
            let pe = p.pow(e);
            if p == 2 {
                if e >= 2 {
                    generators.push((crt_lift(pe - 1, pe, q), 2));
                }
                if e >= 3 {
                    generators.push((crt_lift(5, pe, q), pe / 4));
                }
            } else {
                generators.push((crt_lift(primitive_root(pe, p), pe, q), euler_phi(pe)));
            }
        }
        let exponent = generators.iter().fold(1u64, |acc, &(_, o)| acc.lcm(&o));
        let mut dlog = vec![None; q as usize];
        let mut vec = vec![0u64; generators.len()];
        loop {
            let a = generators
                .iter()
                .zip(&vec)
                .fold(1 % q, |acc, (&(g, _), &j)| (acc as u128 * pow_mod(g, j, q) as u128 % q as u128) as u64);
            debug_assert!(dlog[a as usize].is_none());
            dlog[a as usize] = Some(vec.clone());
            if !advance(&mut vec, &generators) {
                break;
            }
        }
        Ok(Self { data: Arc::new(GroupData { q, generators, exponent, dlog }) })
    }

    pub fn modulus(&self) -> u64 {
        self.data.q
    }

    /// `(residue, order)` pairs.
    pub fn generators(&self) -> &[(u64, u64)] {
        &self.data.generators
    }

    pub fn order(&self) -> u64 {
        self.data.generators.iter().map(|&(_, o)| o).product()
    }

    /// Lcm of the generator orders; character angles are numerators over it.
    pub fn exponent(&self) -> u64 {
        self.data.exponent
    }

    /// The character with the given exponent vector.
    pub fn character(&self, exponents: &[u64]) -> Result<DirichletCharacter> {
        let gens = &self.data.generators;
        if exponents.len() != gens.len() {
            return Err(Error::Parameter(format!(
                "exponent vector of length {} for {} generators",
                exponents.len(),
                gens.len()
            )));
        }
        let exps: Vec<u64> = exponents.iter().zip(gens).map(|(&j, &(_, o))| j % o).collect();
        let e = self.data.exponent;
        let angles: Vec<Option<u64>> = self
            .data
            .dlog
            .iter()
            .map(|d| {
                d.as_ref().map(|logs| {
                    logs.iter()
                        .zip(&exps)
                        .zip(gens)
                        .fold(0u64, |acc, ((&l, &j), &(_, o))| (acc + l * j % o * (e / o)) % e)
                })
            })
            .collect();
        Ok(DirichletCharacter::from_parts(self.clone(), exps, angles))
    }

    /// All `φ(q)` characters, lexicographic in the exponent vector.
    pub fn characters(&self) -> Vec<DirichletCharacter> {
        let gens = &self.data.generators;
        let mut out = Vec::with_capacity(self.order() as usize);
        let mut vec = vec![0u64; gens.len()];
        loop {
            out.push(self.character(&vec).expect("length matches"));
            if !advance(&mut vec, gens) {
                break;
            }
        }
        out
    }

    pub fn principal(&self) -> DirichletCharacter {
        self.character(&vec![0; self.data.generators.len()]).expect("length matches")
    }

    pub fn primitive_characters(&self) -> Vec<DirichletCharacter> {
        self.characters().into_iter().filter(|c| c.is_primitive()).collect()
    }
}

/// Lexicographic increment with the last coordinate fastest; false on wrap.
fn advance(vec: &mut [u64], gens: &[(u64, u64)]) -> bool {
    for i in (0..vec.len()).rev() {
        vec[i] += 1;
        if vec[i] < gens[i].1 {
            return true;
        }
        vec[i] = 0;
    }
    false
}

pub fn character_group(q: u64) -> Result<CharacterGroup> {
    CharacterGroup::new(q)
}

/// A Dirichlet character with exact rational angles.
#[derive(Clone)]
pub struct DirichletCharacter {
    group: CharacterGroup,
    exponents: Vec<u64>,
    angles: Vec<Option<u64>>,
    parity: Parity,
    conductor: u64,
}

impl DirichletCharacter {
    fn from_parts(group: CharacterGroup, exponents: Vec<u64>, angles: Vec<Option<u64>>) -> Self {
        let q = group.modulus();
        let e = group.exponent();
        let parity = match q {
            1 | 2 => Parity::Even,
            _ => {
                if angles[(q - 1) as usize] == Some(0) {
                    Parity::Even
                } else {
                    debug_assert_eq!(angles[(q - 1) as usize], Some(e / 2));
                    Parity::Odd
                }
            }
        };
        let conductor = (1..=q)
            .filter(|d| q % d == 0)
            .find(|&d| (1..q).step_by(d as usize).all(|a| angles[a as usize].map_or(true, |t| t == 0)))
            .unwrap_or(q);
        Self { group, exponents, angles, parity, conductor }
    }

    /// The trivial character mod 1.
    pub fn trivial() -> Self {
        CharacterGroup::new(1).expect("q = 1").principal()
    }

    pub fn modulus(&self) -> u64 {
        self.group.modulus()
    }

    pub fn group(&self) -> &CharacterGroup {
        &self.group
    }

    pub fn exponent_vector(&self) -> &[u64] {
        &self.exponents
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor == self.modulus()
    }

    pub fn is_principal(&self) -> bool {
        self.exponents.iter().all(|&j| j == 0)
    }

    /// Angle numerator of `ψ(n)` over [`CharacterGroup::exponent`], or `None`
    /// when `gcd(n, q) > 1`.
    pub fn angle(&self, n: i64) -> Option<u64> {
        let q = self.modulus() as i64;
        self.angles[n.rem_euclid(q) as usize]
    }

    pub fn value(&self, n: i64) -> Complex64 {
        match self.angle(n) {
            None => Complex64::new(0.0, 0.0),
            Some(t) => root_of_unity(t, self.group.exponent()),
        }
    }

    pub fn conj(&self) -> Self {
        let neg: Vec<u64> =
            self.exponents.iter().zip(self.group.generators()).map(|(&j, &(_, o))| (o - j) % o).collect();
        self.group.character(&neg).expect("same group")
    }

    /// Product of two characters of the same modulus.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.modulus() != other.modulus() {
            return Err(Error::Parameter("characters have different moduli".into()));
        }
        let sum: Vec<u64> = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .zip(self.group.generators())
            .map(|((&a, &b), &(_, o))| (a + b) % o)
            .collect();
        self.group.character(&sum)
    }

    /// `Σ_{a mod q} ψ(a) e(a/q)`.
    pub fn gauss_sum(&self) -> Complex64 {
        let q = self.modulus();
        let e = self.group.exponent();
        // ψ(a)e(a/q) = e((t q + a E) / (E q)), reduced exactly before the cos/sin call
        let den = e * q;
        (0..q)
            .filter_map(|a| self.angles[a as usize].map(|t| root_of_unity((t * q + a * e) % den, den)))
            .sum()
    }

    /// `Σ_a ψ(a) conj ψ'(a)` in exact arithmetic: `φ(q)` if equal, else 0.
    pub fn inner_product_exact(&self, other: &Self) -> Result<u64> {
        if self.modulus() != other.modulus() {
            return Err(Error::Parameter("characters have different moduli".into()));
        }
        let e = self.group.exponent();
        let mut hist = vec![0u64; e as usize];
        for (x, y) in self.angles.iter().zip(&other.angles) {
            if let (Some(x), Some(y)) = (x, y) {
                hist[((x + e - y) % e) as usize] += 1;
            }
        }
        let total: u64 = hist.iter().sum();
        if hist[0] == total {
            return Ok(total);
        }
        // A nontrivial character takes each value of its image subgroup equally
        // often, and the roots of unity of order d > 1 sum to zero.
        let support: Vec<usize> = (0..e as usize).filter(|&k| hist[k] > 0).collect();
        let d = support.len() as u64;
        let step = e / d;
        let uniform = e % d == 0
            && support.iter().enumerate().all(|(i, &k)| k as u64 == i as u64 * step && hist[k] == total / d);
        if uniform {
            Ok(0)
        } else {
            Err(Error::Precondition("angle table is not a homomorphism".into()))
        }
    }
}

/// `e(t/den)` with the angle reduced to `(-π, π]` first.
pub fn root_of_unity(t: u64, den: u64) -> Complex64 {
    let t = t % den;
    match (t * 4).checked_rem(den) {
        Some(0) => match t * 4 / den {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        },
        _ => {
            let signed = if 2 * t > den { t as f64 - den as f64 } else { t as f64 };
            Complex64::from_polar(1.0, 2.0 * PI * signed / den as f64)
        }
    }
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.modulus() == other.modulus() && self.exponents == other.exponents
    }
}

impl fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "DirichletCharacter(q={}, exps={:?}, {:?}, conductor={})",
            self.modulus(),
            self.exponents,
            self.parity,
            self.conductor
        )
    }
}

/// Serialized form `{modulus, exponent_vector}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterRef {
    pub modulus: u64,
    pub exponent_vector: Vec<u64>,
}

impl Serialize for DirichletCharacter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CharacterRef { modulus: self.modulus(), exponent_vector: self.exponents.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for DirichletCharacter {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = CharacterRef::deserialize(d)?;
        CharacterGroup::new(r.modulus)
            .and_then(|g| g.character(&r.exponent_vector))
            .map_err(serde::de::Error::custom)
    }
}

pub fn gauss_sum(psi: &DirichletCharacter) -> Complex64 {
    psi.gauss_sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TrigKind {
    Cos,
    Sin,
}

/// `|LHS - RHS|` of the expansion of `cos(2πna/q)` (resp. `sin`) in characters
/// mod the odd prime `q`:
///
/// * `cos = 1 - q/(q-1) ψ₀(n) + 1/(q-1) Σ_{ψ≠ψ₀ even} τ(ψ̄) ψ(an)`
/// * `sin = -i/(q-1) Σ_{ψ odd} τ(ψ̄) ψ(an)`
pub fn cos_sin_decomposition_residual(n: i64, a: i64, q: u64, kind: TrigKind) -> Result<f64> {
    let group = CharacterGroup::new(q)?;
    cos_sin_decomposition_residual_in(&group, n, a, kind)
}

/// As [`cos_sin_decomposition_residual`], reusing a prebuilt group.
pub fn cos_sin_decomposition_residual_in(group: &CharacterGroup, n: i64, a: i64, kind: TrigKind) -> Result<f64> {
    let q = group.modulus();
    if q < 3 || !is_prime(q) {
        return Err(Error::Precondition(format!("q = {q} is not an odd prime")));
    }
    if a.rem_euclid(q as i64) == 0 {
        return Err(Error::Precondition(format!("gcd(a, q) > 1 for a = {a}")));
    }
    let qf = q as f64;
    let an = a * n;
    let theta = root_of_unity((an.rem_euclid(q as i64)) as u64, q);
    let chars = group.characters();
    let (lhs, rhs) = match kind {
        TrigKind::Cos => {
            let principal = if n.rem_euclid(q as i64) == 0 { 0.0 } else { 1.0 };
            let sum: Complex64 = chars
                .iter()
                .filter(|c| !c.is_principal() && c.parity() == Parity::Even)
                .map(|c| c.conj().gauss_sum() * c.value(an))
                .sum();
            (Complex64::new(theta.re, 0.0), 1.0 - qf / (qf - 1.0) * principal + sum / (qf - 1.0))
        }
        TrigKind::Sin => {
            let sum: Complex64 =
                chars.iter().filter(|c| c.parity() == Parity::Odd).map(|c| c.conj().gauss_sum() * c.value(an)).sum();
            (Complex64::new(theta.im, 0.0), Complex64::new(0.0, -1.0) * sum / (qf - 1.0))
        }
    };
    Ok((lhs - rhs).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn trivial_modulus_one() {
        let g = character_group(1).unwrap();
        let chars = g.characters();
        assert_eq!(chars.len(), 1);
        for n in -5..20 {
            assert_eq!(chars[0].value(n), Complex64::new(1.0, 0.0));
        }
        assert_eq!(chars[0].gauss_sum(), Complex64::new(1.0, 0.0));
        assert!(chars[0].is_primitive());
    }

    #[test]
    fn mod_five_parities() {
        let chars = character_group(5).unwrap().characters();
        assert_eq!(chars.len(), 4);
        assert_eq!(chars.iter().filter(|c| c.parity() == Parity::Even).count(), 2);
        assert_eq!(chars.iter().filter(|c| c.parity() == Parity::Odd).count(), 2);
        let quad = chars.iter().find(|c| c.exponent_vector() == [2]).unwrap();
        assert!((quad.gauss_sum() - Complex64::new(5f64.sqrt(), 0.0)).norm() < 1e-14);
        // brute definition of the Legendre symbol mod 5
        for n in 0..25 {
            let leg = match n % 5 {
                0 => 0.0,
                1 | 4 => 1.0,
                _ => -1.0,
            };
            assert_eq!(quad.value(n), Complex64::new(leg, 0.0));
        }
    }

    #[test]
    fn mod_twelve_conductors() {
        let chars = character_group(12).unwrap().characters();
        assert_eq!(chars.len(), 4);
        let conductors: Vec<u64> = chars.iter().map(|c| c.conductor()).collect();
        let mut sorted = conductors.clone();
        sorted.sort();
        assert_eq!(sorted, vec![1, 3, 4, 12]);
        for c in chars.iter().filter(|c| c.is_primitive()) {
            assert_eq!(c.conductor(), 12);
        }
    }

    #[test]
    fn group_structure_small_moduli() {
        for q in 1..=200u64 {
            let g = character_group(q).unwrap();
            assert_eq!(g.order(), euler_phi(q), "q={q}");
            // generators generate: every unit received a discrete log
            for a in 0..q {
                assert_eq!(g.data.dlog[a as usize].is_some(), a.gcd(&q) == 1 || q == 1, "q={q} a={a}");
            }
        }
    }

    #[test]
    fn multiplicativity_and_support() {
        for q in [8u64, 15, 16, 24, 45, 49, 60, 97, 128, 200] {
            for c in character_group(q).unwrap().characters() {
                let e = c.group().exponent();
                for a in 0..q as i64 {
                    assert_eq!(c.angle(a).is_none(), (a as u64).gcd(&q) > 1);
                    for b in 0..q as i64 {
                        if let (Some(x), Some(y)) = (c.angle(a), c.angle(b)) {
                            assert_eq!(c.angle(a * b), Some((x + y) % e));
                        }
                    }
                }
                let sign = c.value(-1).re;
                assert_eq!(sign, if c.parity() == Parity::Even { 1.0 } else { -1.0 });
                assert_eq!(q % c.conductor(), 0);
            }
        }
    }

    #[test]
    fn orthogonality_exact() {
        for q in 1..=50u64 {
            let chars = character_group(q).unwrap().characters();
            for (i, x) in chars.iter().enumerate() {
                for (j, y) in chars.iter().enumerate() {
                    let expect = if i == j { euler_phi(q) } else { 0 };
                    assert_eq!(x.inner_product_exact(y).unwrap(), expect, "q={q}");
                }
            }
        }
    }

    #[test]
    fn gauss_sums_of_primitive_characters() {
        for q in 2..=50u64 {
            for c in character_group(q).unwrap().primitive_characters() {
                let t = c.gauss_sum();
                assert!((t.norm() - (q as f64).sqrt()).abs() < 1e-10, "q={q}");
                let conj_side = c.value(-1) * t.conj();
                assert!((c.conj().gauss_sum() - conj_side).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn decomposition_examples() {
        assert!(cos_sin_decomposition_residual(3, 2, 5, TrigKind::Cos).unwrap() < 1e-12);
        assert!(cos_sin_decomposition_residual(10, 1, 5, TrigKind::Cos).unwrap() < 1e-12);
        assert!(cos_sin_decomposition_residual(4, 3, 7, TrigKind::Sin).unwrap() < 1e-12);
        assert!(cos_sin_decomposition_residual(1, 5, 5, TrigKind::Cos).is_err());
        assert!(cos_sin_decomposition_residual(1, 1, 9, TrigKind::Cos).is_err());
    }

    #[test]
    fn serde_roundtrip() {
        let c = character_group(7).unwrap().characters()[3].clone();
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(json, r#"{"modulus":7,"exponent_vector":[3]}"#);
        let back: DirichletCharacter = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
    }

    proptest! {
        #[test]
        fn conj_times_self_is_principal(q in 1u64..300, idx in 0usize..1000) {
            let chars = character_group(q).unwrap().characters();
            let c = &chars[idx % chars.len()];
            prop_assert!(c.mul(&c.conj()).unwrap().is_principal());
        }
    }
}
