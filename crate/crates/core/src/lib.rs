//! Numerics for the Mittag-Leffler relaxation function
//! `e_α(t) = E_α(-t^α)`, `0 < α <= 1`, `t >= 0`.
//!
//! The crate evaluates `e_α` by a power series, an asymptotic expansion and a
//! spectral (Laplace-type) integral, exposes the frequency and relaxation-time
//! spectra, compares `e_α` with its stretched-exponential, power-law and
//! rational approximants, and solves the fractional relaxation equation by
//! Grünwald-Letnikov time stepping as an independent check.
//!
//! ```
//! use mlrelax::{eval_auto, Alpha, Tolerance};
//!
//! let e = eval_auto(Alpha::new(0.5)?, 1.0, Tolerance::default())?;
//! assert!((e.value - 0.427_583_576_155_807).abs() < 1e-12);
//! # Ok::<(), mlrelax::Error>(())
//! ```

// Domain checks are written `!(x > 0.0)` on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod dd;

pub mod approx;
pub mod cli;
pub mod error;
pub mod fracsolve;
pub mod gamma;
pub mod grid;
pub mod mlfun;
pub mod quad;
pub mod spectra;
pub mod types;

pub use error::{Error, Result};
pub use gamma::{gamma_real, recip_gamma};
pub use grid::{make_grid, GridSpec, Spacing};
pub use mlfun::{
    eval_asymptotic, eval_auto, eval_auto_with, eval_series, eval_spectral, laplace_check, AutoConfig, LaplacePair,
};
pub use types::{Alpha, EvalResult, Method, Tolerance};
