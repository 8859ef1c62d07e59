use thiserror::Error;

/// Errors raised by the evaluators, scans and solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("alpha must satisfy 0 < alpha <= 1, got {0}")]
    InvalidAlpha(f64),

    #[error("tolerance must satisfy 1e-15 <= rel <= 1e-2 and abs >= 0, got rel={rel}, abs={abs}")]
    InvalidTolerance { rel: f64, abs: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("gamma has a pole at {0}")]
    Pole(f64),

    #[error("gamma({0}) overflows the double range")]
    Overflow(f64),

    #[error("{method} failed to converge after {terms} terms: {reason}")]
    NoConvergence {
        method: &'static str,
        terms: usize,
        reason: &'static str,
    },

    #[error("asymptotic series diverges at t={t}: {reason}")]
    Divergence { t: f64, reason: &'static str },

    #[error("quadrature failed: error estimate {estimate:e} exceeds target {target:e}")]
    QuadratureFailure { estimate: f64, target: f64 },

    #[error("relative error undefined: reference value is zero")]
    ZeroReference,

    #[error("invalid samples: {0}")]
    InvalidSamples(String),

    #[error("solver instability at step {step}: u={value}")]
    Instability { step: usize, value: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
