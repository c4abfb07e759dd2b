//! Complex special functions in binary64: `Γ`, `Γ_R`, Pochhammer symbols,
//! `K_ν`, the Whittaker function `W_ν`, Gauss `₂F₁` and Hurwitz `ζ`.
//!
//! Every function here is pure and thread-safe.

mod bessel;
mod gamma;
mod hurwitz;
mod hyp2f1;
pub mod selftest;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use bessel::{bessel_k, bessel_k_envelope, whittaker_w};
pub use gamma::{gamma, gamma_r, ln_gamma, pochhammer, rgamma};
pub use hurwitz::{hurwitz_zeta, hurwitz_zeta_regular, hurwitz_zeta_with, riemann_zeta, DEFAULT_BERNOULLI_TERMS};
pub use hyp2f1::{hyp2f1, hyp2f1_continuation, hyp2f1_pfaff, hyp2f1_series};

/// Whether the spectral parameter is real (complementary series) or purely
/// imaginary (tempered).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectralMode {
    Real,
    Imaginary,
}

/// Spectral parameter `ν` with `1/4 - ν²` real and positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Complex64", into = "Complex64")]
pub struct SpectralParam {
    nu: Complex64,
    mode: SpectralMode,
}

impl SpectralParam {
    pub fn new(nu: Complex64) -> Result<Self> {
        if !nu.re.is_finite() || !nu.im.is_finite() {
            return Err(Error::Parameter(format!("spectral parameter {nu} is not finite")));
        }
        if nu.im == 0.0 {
            if nu.re.abs() >= 0.5 {
                return Err(Error::Parameter(format!("real nu = {} needs |nu| < 1/2", nu.re)));
            }
            Ok(Self { nu, mode: SpectralMode::Real })
        } else if nu.re == 0.0 {
            Ok(Self { nu, mode: SpectralMode::Imaginary })
        } else {
            Err(Error::Parameter(format!("nu = {nu} is neither real nor purely imaginary")))
        }
    }

    pub fn real(nu: f64) -> Result<Self> {
        Self::new(Complex64::new(nu, 0.0))
    }

    pub fn imaginary(t: f64) -> Result<Self> {
        Self::new(Complex64::new(0.0, t))
    }

    pub fn nu(&self) -> Complex64 {
        self.nu
    }

    pub fn mode(&self) -> SpectralMode {
        self.mode
    }

    /// Laplace eigenvalue `1/4 - ν²`.
    pub fn eigenvalue(&self) -> f64 {
        (0.25 - self.nu * self.nu).re
    }

    pub fn is_zero(&self) -> bool {
        self.nu.norm() == 0.0
    }
}

impl TryFrom<Complex64> for SpectralParam {
    type Error = Error;
    fn try_from(nu: Complex64) -> Result<Self> {
        Self::new(nu)
    }
}

impl From<SpectralParam> for Complex64 {
    fn from(p: SpectralParam) -> Self {
        p.nu
    }
}

/// Tolerances and work limits shared by the numerical routines.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Precision {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Cap on series terms (Fourier coefficients, Dirichlet terms).
    pub max_terms: usize,
    /// Cap on step-halving levels in quadrature.
    pub quad_levels: usize,
    /// Smallest `Im z` at which a truncated Fourier series is evaluated.
    pub min_height: f64,
}

impl Default for Precision {
    fn default() -> Self {
        Self { rel_tol: 1e-10, abs_tol: 1e-14, max_terms: 4096, quad_levels: 12, min_height: 0.05 }
    }
}

impl Precision {
    /// Default tolerances for identities that involve quadrature.
    pub fn identity() -> Self {
        Self { rel_tol: 1e-8, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        let unit = |x: f64| x > 0.0 && x < 1.0;
        if !unit(self.rel_tol) || !unit(self.abs_tol) {
            return Err(Error::Parameter("rel_tol and abs_tol must lie in (0, 1)".into()));
        }
        if self.max_terms < 16 {
            return Err(Error::Parameter(format!("max_terms = {} < 16", self.max_terms)));
        }
        if self.quad_levels == 0 {
            return Err(Error::Parameter("quad_levels must be positive".into()));
        }
        if !(self.min_height > 0.0) {
            return Err(Error::Parameter("min_height must be positive".into()));
        }
        Ok(())
    }
}
