//! Validated parameters and evaluation results shared by every module.

use std::fmt;

use crate::error::{Error, Result};

/// Order of the relaxation function, `0 < alpha <= 1`.
///
/// `alpha = 1` is admitted and reduces every evaluator to `exp(-t)`; the
/// spectral kernels additionally require `alpha < 1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Alpha(f64);

impl Alpha {
    /// Kernels with `alpha` at or above this value are sharply peaked.
    pub const NEAR_DEGENERATE: f64 = 0.99;

    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value > 0.0 && value <= 1.0 {
            Ok(Self(value))
        } else {
            Err(Error::InvalidAlpha(value))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn is_one(self) -> bool {
        self.0 == 1.0
    }

    pub fn is_near_degenerate(self) -> bool {
        self.0 >= Self::NEAR_DEGENERATE
    }

    /// Fails with a domain error at `alpha = 1`.
    pub(crate) fn require_fractional(self, what: &str) -> Result<()> {
        if self.is_one() {
            Err(Error::Domain(format!("{what} requires alpha < 1")))
        } else {
            Ok(())
        }
    }
}

impl TryFrom<f64> for Alpha {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Self::new(value)
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Accuracy target: relative accuracy `rel` with absolute floor `abs`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    rel: f64,
    abs: f64,
}

impl Tolerance {
    pub const MIN_REL: f64 = 1e-15;
    pub const MAX_REL: f64 = 1e-2;

    pub fn new(rel: f64, abs: f64) -> Result<Self> {
        let ok = (Self::MIN_REL..=Self::MAX_REL).contains(&rel) && abs >= 0.0 && abs.is_finite();
        if ok {
            Ok(Self { rel, abs })
        } else {
            Err(Error::InvalidTolerance { rel, abs })
        }
    }

    pub fn rel(&self) -> f64 {
        self.rel
    }

    pub fn abs(&self) -> f64 {
        self.abs
    }

    /// Same relative target without an absolute floor.
    pub fn relative_only(self) -> Self {
        Self { abs: 0.0, ..self }
    }

    /// Error bound this tolerance allows for a result of magnitude `value`.
    pub fn bound(&self, value: f64) -> f64 {
        self.rel * value.abs() + self.abs
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { rel: 1e-10, abs: 0.0 }
    }
}

/// Which evaluator produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Series,
    Asymptotic,
    Spectral,
    Auto,
    Exponential,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Series => "series",
            Method::Asymptotic => "asymptotic",
            Method::Spectral => "spectral",
            Method::Auto => "auto",
            Method::Exponential => "exponential",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A function value with an estimated absolute error and its provenance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: f64,
    pub err_est: f64,
    pub method: Method,
}

impl EvalResult {
    pub fn new(value: f64, err_est: f64, method: Method) -> Self {
        Self { value, err_est, method }
    }

    /// Whether the error estimate satisfies `tol` for this value.
    pub fn within(&self, tol: &Tolerance) -> bool {
        self.err_est <= tol.bound(self.value)
    }
}
