//! Coefficients `c_λ` with `Σ_λ c_λ λ^{-t} = δ_{t,t₀}` for `0 ≤ t < 2ℓ₀`,
//! solved exactly over the rationals. With more nodes than equations the
//! least-norm solution `c = Aᵀ(AAᵀ)⁻¹e` is returned.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct VandermondeSystem {
    pub lambdas: Vec<BigRational>,
    pub t0: usize,
    pub ell0: usize,
    pub coeffs: Vec<BigRational>,
}

impl VandermondeSystem {
    pub fn coeffs_complex(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(|c| Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0)).collect()
    }

    /// Exact residual of row `t`.
    pub fn row_residual_exact(&self, t: usize) -> BigRational {
        let sum = self
            .lambdas
            .iter()
            .zip(&self.coeffs)
            .fold(BigRational::zero(), |acc, (l, c)| acc + c * pow_neg(l, t));
        let target = if t == self.t0 { BigRational::one() } else { BigRational::zero() };
        sum - target
    }

    /// Largest row residual evaluated in floating point.
    pub fn max_residual_f64(&self) -> f64 {
        let c = self.coeffs_complex();
        (0..2 * self.ell0)
            .map(|t| {
                let sum: Complex64 = self
                    .lambdas
                    .iter()
                    .zip(&c)
                    .map(|(l, ci)| ci * l.to_f64().unwrap_or(f64::NAN).powi(-(t as i32)))
                    .sum();
                let target = if t == self.t0 { 1.0 } else { 0.0 };
                (sum - target).norm()
            })
            .fold(0.0, f64::max)
    }
}

fn pow_neg(l: &BigRational, t: usize) -> BigRational {
    let inv = l.recip();
    let mut acc = BigRational::one();
    for _ in 0..t {
        acc *= &inv;
    }
    acc
}

/// Solves `M x = b` exactly by Gauss–Jordan elimination.
fn solve_exact(mut m: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Result<Vec<BigRational>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .ok_or_else(|| Error::SingularSystem(format!("no pivot in column {col}")))?;
        m.swap(col, pivot);
        b.swap(col, pivot);
        let inv = m[col][col].recip();
        for j in col..n {
            m[col][j] = &m[col][j] * &inv;
        }
        b[col] = &b[col] * &inv;
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for j in col..n {
                let delta = &factor * &m[col][j];
                m[r][j] -= delta;
            }
            let delta = &factor * &b[col];
            b[r] -= delta;
        }
    }
    Ok(b)
}

pub fn vandermonde_coeffs(lambdas: &[BigRational], t0: usize, ell0: usize) -> Result<VandermondeSystem> {
    let rows = 2 * ell0;
    if ell0 == 0 || t0 >= rows || lambdas.len() < rows {
        return Err(Error::Parameter(format!(
            "need |lambdas| >= 2*ell0 > t0 (|lambdas| = {}, ell0 = {ell0}, t0 = {t0})",
            lambdas.len()
        )));
    }
    if lambdas.iter().any(|l| !l.is_positive()) {
        return Err(Error::Parameter("lambdas must be positive".into()));
    }
    for i in 0..lambdas.len() {
        for j in 0..i {
            if lambdas[i] == lambdas[j] {
                return Err(Error::SingularSystem(format!("duplicate lambda {}", lambdas[i])));
            }
        }
    }
    let a: Vec<Vec<BigRational>> = (0..rows).map(|t| lambdas.iter().map(|l| pow_neg(l, t)).collect()).collect();
    let gram: Vec<Vec<BigRational>> = (0..rows)
        .map(|i| {
            (0..rows)
                .map(|j| a[i].iter().zip(&a[j]).fold(BigRational::zero(), |acc, (x, y)| acc + x * y))
                .collect()
        })
        .collect();
    let mut e = vec![BigRational::zero(); rows];
    e[t0] = BigRational::one();
    let y = solve_exact(gram, e)?;
    let coeffs = (0..lambdas.len())
        .map(|k| (0..rows).fold(BigRational::zero(), |acc, t| acc + &a[t][k] * &y[t]))
        .collect();
    Ok(VandermondeSystem { lambdas: lambdas.to_vec(), t0, ell0, coeffs })
}

/// `p/q` as a rational.
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn two_by_two() {
        let s = vandermonde_coeffs(&[ratio(1, 1), ratio(2, 1)], 0, 1).unwrap();
        assert_eq!(s.coeffs, vec![ratio(-1, 1), ratio(2, 1)]);
    }

    #[test]
    fn least_norm_when_underdetermined() {
        let l = [ratio(1, 1), ratio(2, 1), ratio(3, 1)];
        let s = vandermonde_coeffs(&l, 1, 1).unwrap();
        for t in 0..2 {
            assert!(s.row_residual_exact(t).is_zero());
        }
        // null vector of the rows (1,1,1) and (1,1/2,1/3) is their cross product
        let (r0, r1) = ([ratio(1, 1), ratio(1, 1), ratio(1, 1)], [ratio(1, 1), ratio(1, 2), ratio(1, 3)]);
        let null = [
            &r0[1] * &r1[2] - &r0[2] * &r1[1],
            &r0[2] * &r1[0] - &r0[0] * &r1[2],
            &r0[0] * &r1[1] - &r0[1] * &r1[0],
        ];
        let dot = s.coeffs.iter().zip(&null).fold(BigRational::zero(), |acc, (c, n)| acc + c * n);
        assert!(dot.is_zero());
    }

    #[test]
    fn duplicates_are_singular() {
        assert!(matches!(
            vandermonde_coeffs(&[ratio(1, 2), ratio(2, 4), ratio(3, 1)], 0, 1),
            Err(Error::SingularSystem(_))
        ));
    }

    proptest! {
        #[test]
        fn random_rational_sets(nums in proptest::collection::btree_set((1i64..40, 1i64..12), 2..=12), t0_seed in 0usize..100) {
            let mut lambdas: Vec<BigRational> = nums.iter().map(|&(p, q)| ratio(p, q)).collect();
            lambdas.sort();
            lambdas.dedup();
            prop_assume!(lambdas.len() >= 2);
            let ell0 = lambdas.len() / 2;
            let t0 = t0_seed % (2 * ell0);
            let s = vandermonde_coeffs(&lambdas, t0, ell0).unwrap();
            for t in 0..2 * ell0 {
                prop_assert!(s.row_residual_exact(t).is_zero());
            }
            prop_assert!(s.max_residual_f64() < 1e-10 * s.coeffs_complex().iter().map(|c| c.norm()).fold(1.0, f64::max));
        }
    }
}
