use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the numerical routines and the check harness.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("pole at s = {0}")]
    Pole(Complex64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("continuation formula not applicable: {0}")]
    Continuation(String),

    #[error("series did not converge: {0}")]
    Convergence(String),

    #[error("quadrature failed: {0}")]
    Quadrature(String),

    #[error("need at least {required} coefficients, have {available}")]
    InsufficientCoefficients { required: usize, available: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("singular linear system: {0}")]
    SingularSystem(String),

    #[error("matrix relation q*s = 1 + r*rt*N fails: {0}")]
    Relation(String),

    #[error("fixed points coincide: {0}")]
    DegenerateFixedPoints(String),

    #[error("pole within {distance:.3e} of the contour")]
    PoleOnContour { distance: f64 },

    #[error("bad prime {0} is not supported")]
    BadPrimeUnsupported(u64),

    #[error("missing Hecke eigenvalue for p = {0}")]
    MissingEigenvalue(u64),

    #[error("format error: {0}")]
    Format(String),

    #[error("sanity bound violated at p = {p}: |lambda_p| = {value}")]
    SanityBoundViolation { p: u64, value: f64 },

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Numerical failures (quadrature, convergence) as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Convergence(_) | Error::Quadrature(_) | Error::InsufficientCoefficients { .. }
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Format(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
