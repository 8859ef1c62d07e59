//! Approximants of `e_α` and the inequalities between them.
//!
//! Two pairs are provided. The stretched exponential `e⁰_α` and the power law
//! `e^∞_α` are the leading behaviours at small and large `t`. The rational
//! forms `f_α = 1/(1 + t^α/Γ(1+α))` and `g_α = 1/(1 + t^α Γ(1-α))` are the
//! `[0/1]` Padé approximants in `t^α` at the two ends; both are completely
//! monotone, `g_α <= f_α` always holds, and `g_α <= e_α <= f_α` is observed
//! numerically and scanned by [`bounds_scan`].

use std::f64::consts::PI;
use std::fmt;

use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::gamma::{gamma_real, recip_gamma};
use crate::grid::GridSpec;
use crate::mlfun::eval_auto;
use crate::types::{Alpha, EvalResult, Tolerance};

/// Relative error below which an approximant is deemed reliable.
pub const DEFAULT_THRESHOLD: f64 = 0.01;

/// Relative bracket width at which validity endpoints are reported
/// (three significant digits).
const ENDPOINT_REL: f64 = 5e-4;

/// Relative bracket width for sign changes of `e^∞_α - e_α`.
const CROSSING_REL: f64 = 1e-6;

fn check_nonneg(t: f64) -> Result<()> {
    if t.is_nan() || t < 0.0 {
        Err(domain(format!("t must be >= 0, got {t}")))
    } else {
        Ok(())
    }
}

/// `e⁰_α(t) = exp(-t^α / Γ(1+α))`.
pub fn stretched_exp(alpha: Alpha, t: f64) -> Result<f64> {
    check_nonneg(t)?;
    let a = alpha.value();
    Ok((-t.powf(a) * recip_gamma(1.0 + a)).exp())
}

/// `e^∞_α(t) = t^-α / Γ(1-α)`.
pub fn power_law(alpha: Alpha, t: f64) -> Result<f64> {
    alpha.require_fractional("the power law")?;
    if !(t > 0.0) {
        return Err(domain(format!("the power law diverges at t = {t}; requires t > 0")));
    }
    let a = alpha.value();
    Ok(t.powf(-a) * recip_gamma(1.0 - a))
}

/// The same power law written as `sin(απ) Γ(α) / (π t^α)`.
pub fn power_law_reflected(alpha: Alpha, t: f64) -> Result<f64> {
    alpha.require_fractional("the power law")?;
    if !(t > 0.0) {
        return Err(domain(format!("the power law diverges at t = {t}; requires t > 0")));
    }
    let a = alpha.value();
    Ok((a * PI).sin() * gamma_real(a)? / (PI * t.powf(a)))
}

/// `f_α(t) = 1 / (1 + t^α / Γ(1+α))`, the Padé approximant matched at `t = 0`.
pub fn pade_small(alpha: Alpha, t: f64) -> Result<f64> {
    check_nonneg(t)?;
    let a = alpha.value();
    Ok(1.0 / (1.0 + t.powf(a) * recip_gamma(1.0 + a)))
}

/// `g_α(t) = 1 / (1 + t^α Γ(1-α))`, the Padé approximant matched as `t → ∞`.
pub fn pade_large(alpha: Alpha, t: f64) -> Result<f64> {
    alpha.require_fractional("the large-time Padé approximant")?;
    check_nonneg(t)?;
    let a = alpha.value();
    Ok(1.0 / (1.0 + t.powf(a) * gamma_real(1.0 - a)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Approximant {
    StretchedExp,
    PowerLaw,
    PadeSmall,
    PadeLarge,
}

impl Approximant {
    pub const ALL: [Approximant; 4] = [
        Approximant::StretchedExp,
        Approximant::PowerLaw,
        Approximant::PadeSmall,
        Approximant::PadeLarge,
    ];

    pub fn eval(self, alpha: Alpha, t: f64) -> Result<f64> {
        match self {
            Approximant::StretchedExp => stretched_exp(alpha, t),
            Approximant::PowerLaw => power_law(alpha, t),
            Approximant::PadeSmall => pade_small(alpha, t),
            Approximant::PadeLarge => pade_large(alpha, t),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Approximant::StretchedExp => "stretched_exp",
            Approximant::PowerLaw => "power_law",
            Approximant::PadeSmall => "pade_small",
            Approximant::PadeLarge => "pade_large",
        }
    }
}

impl fmt::Display for Approximant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Approximant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Approximant::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| domain(format!("unknown approximant '{s}'")))
    }
}

/// Sign convention of [`rel_error_signed`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// `(approx - e) / e`, non-negative for an upper bound such as `f_α`.
    ApproxMinusExact,
    /// `(e - approx) / e`, non-negative for a lower bound such as `g_α`.
    ExactMinusApprox,
}

fn reference(exact: &EvalResult) -> Result<f64> {
    if exact.value == 0.0 || !exact.value.is_finite() {
        Err(Error::ZeroReference)
    } else {
        Ok(exact.value)
    }
}

/// `|approx - e| / e`.
pub fn rel_error_abs(approx_value: f64, exact: &EvalResult) -> Result<f64> {
    let e = reference(exact)?;
    Ok((approx_value - e).abs() / e)
}

pub fn rel_error_signed(approx_value: f64, exact: &EvalResult, orientation: Orientation) -> Result<f64> {
    let e = reference(exact)?;
    Ok(match orientation {
        Orientation::ApproxMinusExact => (approx_value - e) / e,
        Orientation::ExactMinusApprox => (e - approx_value) / e,
    })
}

/// Maximal sub-intervals of a grid on which an approximant is within
/// `threshold` of `e_α`.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidityRange {
    pub approximant: Approximant,
    pub threshold: f64,
    pub intervals: Vec<(f64, f64)>,
}

/// Whether the approximant is within `threshold` at `t`. Where `e_α` underflows
/// to zero the relative error is only defined (as zero) if the approximant
/// underflows too.
fn within_threshold(alpha: Alpha, which: Approximant, t: f64, tol: Tolerance, threshold: f64) -> Result<bool> {
    let e = eval_auto(alpha, t, tol)?;
    let a = which.eval(alpha, t)?;
    if e.value == 0.0 {
        return Ok(a == 0.0);
    }
    Ok(rel_error_abs(a, &e)? <= threshold)
}

/// Midpoint suited to the grid: geometric on positive brackets.
fn split(lo: f64, hi: f64) -> f64 {
    if lo > 0.0 {
        (lo * hi).sqrt()
    } else {
        0.5 * (lo + hi)
    }
}

/// Bisects `[lo, hi]` on a predicate that is `at_lo` at `lo` and the opposite at
/// `hi`, down to relative width `rel`.
fn bisect<P: FnMut(f64) -> Result<bool>>(mut lo: f64, mut hi: f64, at_lo: bool, rel: f64, mut pred: P) -> Result<f64> {
    for _ in 0..200 {
        if hi - lo <= rel * hi.abs() {
            break;
        }
        let mid = split(lo, hi);
        if !(mid > lo && mid < hi) {
            break;
        }
        if pred(mid)? == at_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(split(lo, hi))
}

/// Scans the absolute relative error over `grid` and returns the runs where
/// it is at most `threshold`, with interior endpoints refined by bisection.
pub fn validity_ranges(
    alpha: Alpha,
    approximant: Approximant,
    grid: &GridSpec,
    threshold: f64,
) -> Result<ValidityRange> {
    if !(threshold > 0.0) {
        return Err(domain(format!("threshold must be > 0, got {threshold}")));
    }
    let ts = grid.points()?;
    if ts[0] <= 0.0 {
        return Err(Error::InvalidGrid("validity ranges need a grid in t > 0".into()));
    }
    let tol = Tolerance::default();
    let ok: Vec<bool> = ts
        .par_iter()
        .map(|&t| within_threshold(alpha, approximant, t, tol, threshold))
        .collect::<Result<_>>()?;
    let good = |t: f64| within_threshold(alpha, approximant, t, tol, threshold);

    let mut intervals = Vec::new();
    let mut i = 0;
    while i < ts.len() {
        if !ok[i] {
            i += 1;
            continue;
        }
        let start = i;
        while i + 1 < ts.len() && ok[i + 1] {
            i += 1;
        }
        let end = i;
        let lo = if start == 0 {
            ts[0]
        } else {
            bisect(ts[start - 1], ts[start], false, ENDPOINT_REL, good)?
        };
        let hi = if end + 1 == ts.len() {
            ts[end]
        } else {
            bisect(ts[end], ts[end + 1], true, ENDPOINT_REL, good)?
        };
        intervals.push((lo, hi));
        i += 1;
    }
    Ok(ValidityRange {
        approximant,
        threshold,
        intervals,
    })
}

fn power_law_gap(alpha: Alpha, t: f64) -> Result<f64> {
    Ok(power_law(alpha, t)? - eval_auto(alpha, t, Tolerance::default())?.value)
}

/// Abscissae where `e^∞_α(t) - e_α(t)` changes sign, bracketed on the grid and
/// refined by bisection. Points where either side cannot be evaluated are
/// skipped, so the result may be empty.
pub fn crossing_points(alpha: Alpha, grid: &GridSpec) -> Result<Vec<f64>> {
    let ts = grid.points()?;
    let signs: Vec<Option<f64>> = ts
        .par_iter()
        .map(|&t| power_law_gap(alpha, t).ok().map(f64::signum))
        .collect();
    let mut out = Vec::new();
    let mut last: Option<(f64, f64)> = None;
    for (&t, s) in ts.iter().zip(signs) {
        let Some(s) = s else { continue };
        if let Some((t0, s0)) = last {
            if s != s0 {
                let above = s0 > 0.0;
                let root = bisect(t0, t, above, CROSSING_REL, |m| {
                    Ok(power_law_gap(alpha, m).map(|d| d > 0.0).unwrap_or(above))
                })?;
                out.push(root);
            }
        }
        last = Some((t, s));
    }
    Ok(out)
}

/// `max (g_α - f_α)` over the grid; never positive.
pub fn check_gf_inequality(alpha: Alpha, grid: &GridSpec) -> Result<f64> {
    alpha.require_fractional("the g <= f inequality")?;
    grid.points()?.into_iter().try_fold(f64::NEG_INFINITY, |worst, t| {
        Ok(worst.max(pade_large(alpha, t)? - pade_small(alpha, t)?))
    })
}

/// One row of a [`BoundsReport`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundsPoint {
    pub t: f64,
    pub g: f64,
    pub e: f64,
    pub f: f64,
    /// Error estimate of `e`.
    pub err_est: f64,
}

impl BoundsPoint {
    /// `max(g - e, e - f)`: negative when the ordering holds strictly.
    pub fn signed_gap(&self) -> f64 {
        (self.g - self.e).max(self.e - self.f)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundsReport {
    pub alpha: Alpha,
    pub points: Vec<BoundsPoint>,
    /// Abscissae where `e_α` could not be evaluated, with the reason.
    pub skipped: Vec<(f64, Error)>,
    /// Count of `g > e + tol.abs + err_est`.
    pub violations_lower: usize,
    /// Count of `e > f + tol.abs + err_est`.
    pub violations_upper: usize,
    /// Largest [`BoundsPoint::signed_gap`]; `-∞` if no point was evaluated.
    pub worst_signed_gap: f64,
}

impl BoundsReport {
    pub fn violations(&self) -> usize {
        self.violations_lower + self.violations_upper
    }
}

/// Evaluates `g_α <= e_α <= f_α` along the grid.
///
/// `e_α` is computed to the relative part of `tol`; a point violates a bound
/// only by more than `tol.abs` plus the evaluator's own error estimate.
pub fn bounds_scan(alpha: Alpha, grid: &GridSpec, tol: Tolerance) -> Result<BoundsReport> {
    alpha.require_fractional("the bounds scan")?;
    let ts = grid.points()?;
    let eval_tol = tol.relative_only();
    let rows: Vec<std::result::Result<BoundsPoint, (f64, Error)>> = ts
        .par_iter()
        .map(|&t| {
            let row = || -> Result<BoundsPoint> {
                let e = eval_auto(alpha, t, eval_tol)?;
                Ok(BoundsPoint {
                    t,
                    g: pade_large(alpha, t)?,
                    e: e.value,
                    f: pade_small(alpha, t)?,
                    err_est: e.err_est,
                })
            };
            row().map_err(|err| (t, err))
        })
        .collect();

    let mut report = BoundsReport {
        alpha,
        points: Vec::with_capacity(rows.len()),
        skipped: Vec::new(),
        violations_lower: 0,
        violations_upper: 0,
        worst_signed_gap: f64::NEG_INFINITY,
    };
    for row in rows {
        match row {
            Ok(p) => {
                let slack = tol.abs() + p.err_est;
                if p.g > p.e + slack {
                    report.violations_lower += 1;
                }
                if p.e > p.f + slack {
                    report.violations_upper += 1;
                }
                report.worst_signed_gap = report.worst_signed_gap.max(p.signed_gap());
                report.points.push(p);
            }
            Err(skip) => report.skipped.push(skip),
        }
    }
    Ok(report)
}
