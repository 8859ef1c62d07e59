//! Frequency and relaxation-time spectra of `e_α(t)`.
//!
//! The frequency density is
//!
//! ```text
//! K_α(r) = (1/π) r^(α-1) sin(απ) / (r^(2α) + 2 r^α cos(απ) + 1)
//! ```
//!
//! so that `e_α(t) = ∫₀^∞ exp(-r t) K_α(r) dr`. Mapping `τ = 1/r` gives the
//! time density `H_α(τ) = τ^(-2) K_α(1/τ)`, which turns out to be the same
//! function of its argument as `K_α`.
//!
//! Under `u = r^α` the measure `K_α(r) dr` becomes
//! `sin(απ)/(απ) · du / (u² + 2u cos(απ) + 1)`, free of the `r^(α-1)`
//! endpoint singularity. The quadratures here and in [`crate::mlfun`] use it.

use std::f64::consts::PI;

use crate::error::{domain, Result};
use crate::grid::GridSpec;
use crate::quad::{integrate, QuadConfig};
use crate::types::{Alpha, Tolerance};

/// Normalisation target used for near-degenerate kernels (`α >= 0.99`).
pub const NEAR_DEGENERATE_REL: f64 = 1e-5;

/// A sample of a spectral density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint {
    /// Frequency `r` or relaxation time `τ`.
    pub abscissa: f64,
    pub density: f64,
}

/// Which spectral variable a density is expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    Frequency,
    Time,
}

fn check(alpha: Alpha, x: f64, name: &str) -> Result<()> {
    alpha.require_fractional("the spectral kernel")?;
    if !(x > 0.0) || x.is_nan() {
        return Err(domain(format!("{name} must be > 0, got {x}")));
    }
    Ok(())
}

/// `x^k K_α(x)`, with the power folded into the exponent so that extreme
/// arguments neither overflow nor produce `0 · ∞`.
fn scaled_density(a: f64, x: f64, k: f64) -> f64 {
    let (s, c) = (a * PI).sin_cos();
    let xa = x.powf(a);
    if xa <= 1.0 {
        x.powf(a - 1.0 + k) * s / (PI * (xa * xa + 2.0 * xa * c + 1.0))
    } else {
        // Divide through by x^(2α) to keep large arguments finite.
        let inv = 1.0 / xa;
        x.powf(-a - 1.0 + k) * s / (PI * (1.0 + 2.0 * inv * c + inv * inv))
    }
}

/// Frequency spectrum `K_α(r)`.
pub fn kernel_freq(alpha: Alpha, r: f64) -> Result<f64> {
    check(alpha, r, "frequency r")?;
    Ok(scaled_density(alpha.value(), r, 0.0))
}

/// Relaxation-time spectrum obtained from `K_α` by `H_α(τ) = τ^(-2) K_α(1/τ)`.
pub fn kernel_time(alpha: Alpha, tau: f64) -> Result<f64> {
    check(alpha, tau, "relaxation time tau")?;
    // τ^-2 K(1/τ) with r = 1/τ is r^2 K(r).
    Ok(scaled_density(alpha.value(), 1.0 / tau, 2.0))
}

/// The closed form of `H_α(τ)`, written directly in `τ`.
pub fn kernel_time_closed_form(alpha: Alpha, tau: f64) -> Result<f64> {
    check(alpha, tau, "relaxation time tau")?;
    let a = alpha.value();
    let (s, c) = (a * PI).sin_cos();
    let ta = tau.powf(a);
    Ok(tau.powf(a - 1.0) * s / (PI * (ta * ta + 2.0 * ta * c + 1.0)))
}

/// Frequency minimising the denominator of `K_α`.
///
/// For `α > 1/2` this is `(-cos απ)^(1/α)`, which tends to 1 as `α → 1`;
/// otherwise the denominator is monotone in `r` and 1 is returned as a
/// neutral split point.
pub fn kernel_peak(alpha: Alpha) -> f64 {
    let a = alpha.value();
    let c = (a * PI).cos();
    if c < 0.0 {
        (-c).powf(1.0 / a)
    } else {
        1.0
    }
}

/// The peak in the variable `u = r^α`, clipped to `(0, 1]`.
pub(crate) fn peak_in_u(alpha: Alpha) -> f64 {
    kernel_peak(alpha).powf(alpha.value()).min(1.0)
}

/// `∫₀^∞ K_α(r) dr`, which must equal `e_α(0) = 1`.
pub fn kernel_normalization(alpha: Alpha, tol: Tolerance) -> Result<f64> {
    alpha.require_fractional("the spectral kernel")?;
    let a = alpha.value();
    let (s, c) = (a * PI).sin_cos();
    let weight = s / (a * PI);
    let rel = if alpha.is_near_degenerate() {
        tol.rel().max(NEAR_DEGENERATE_REL)
    } else {
        tol.rel()
    };
    let cfg = QuadConfig::new(rel, tol.abs());
    let mut points = vec![0.0];
    let peak = peak_in_u(alpha);
    if peak < 1.0 {
        points.push(peak);
    }
    points.push(1.0);
    // [0, 1] in u directly; [1, ∞) through u -> 1/v, whose Jacobian cancels the v^-2.
    let head = integrate(|u| weight / (u * u + 2.0 * u * c + 1.0), &points, &cfg)?;
    let tail = integrate(|v| weight / (1.0 + 2.0 * v * c + v * v), &[0.0, 1.0], &cfg)?;
    Ok(head.value + tail.value)
}

/// Samples `K_α` (frequency) or `H_α` (time) on a grid.
pub fn sample(alpha: Alpha, grid: &GridSpec, which: Domain) -> Result<Vec<SpectralPoint>> {
    grid.points()?
        .into_iter()
        .map(|x| {
            let density = match which {
                Domain::Frequency => kernel_freq(alpha, x)?,
                Domain::Time => kernel_time(alpha, x)?,
            };
            Ok(SpectralPoint { abscissa: x, density })
        })
        .collect()
}
