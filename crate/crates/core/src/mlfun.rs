//! Evaluators for the relaxation function `e_α(t) = E_α(-t^α)`.
//!
//! Three independent routes are provided:
//!
//! * [`eval_series`]: the alternating power series in `x = t^α`, summed in
//!   double-double arithmetic so that moderate cancellation (`x` up to ~2 for
//!   small `α`) does not eat the result.
//! * [`eval_asymptotic`]: the divergent expansion in negative powers of `x`,
//!   truncated at its smallest term.
//! * [`eval_spectral`]: adaptive quadrature of the Laplace-type integral over
//!   the frequency spectrum.
//!
//! [`eval_auto`] picks among them by the size of `x`.

use std::cell::Cell;
use std::f64::consts::PI;

use crate::dd::{self, Dd};
use crate::error::{domain, Error, Result};
use crate::gamma::{ln_gamma, recip_gamma};
use crate::quad::{integrate, QuadConfig};
use crate::spectra::peak_in_u;
use crate::types::{Alpha, EvalResult, Method, Tolerance};

pub const MAX_SERIES_TERMS: usize = 10_000;
pub const MAX_ASYMPTOTIC_TERMS: usize = 100;

/// The series is summed until the next term drops below this fraction of the sum.
const SERIES_TAIL_REL: f64 = 0.25 * f64::EPSILON;

/// Relative error bound of one double-double series term.
const DD_TERM_REL: f64 = 1e-28;

/// The asymptotic expansion is rejected when its truncation error exceeds
/// this fraction of the partial sum.
const ASYMPTOTIC_MAX_REL_ERR: f64 = 0.1;

/// Laplace integrals are cut where `s t` reaches this value (`e^-60 ≈ 9e-27`).
const LAPLACE_CUTOFF: f64 = 60.0;

/// Dispatch thresholds of [`eval_auto_with`], in the variable `x = t^α`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AutoConfig {
    /// Power series for `x <= t_lo`.
    pub t_lo: f64,
    /// Asymptotic expansion tried for `x >= t_hi`.
    pub t_hi: f64,
}

impl Default for AutoConfig {
    fn default() -> Self {
        Self { t_lo: 1.0, t_hi: 15.0 }
    }
}

fn check_time(t: f64) -> Result<()> {
    if t.is_nan() || t < 0.0 || t.is_infinite() {
        Err(domain(format!("t must be finite and >= 0, got {t}")))
    } else {
        Ok(())
    }
}

/// Power series `Σ (-1)^n x^n / Γ(αn + 1)` with `x = t^α`.
///
/// Stops once the terms are decreasing and the next one is below both the
/// tolerance and a quarter ulp of the sum. The error estimate is the first
/// omitted term plus a bound on the rounding error of the double-double sum;
/// the call fails when that rounding bound alone exceeds the tolerance
/// (catastrophic cancellation).
pub fn eval_series(alpha: Alpha, t: f64, tol: Tolerance) -> Result<EvalResult> {
    check_time(t)?;
    let x = t.powf(alpha.value());
    if t == 0.0 || x == 0.0 {
        return Ok(EvalResult::new(1.0, 0.0, Method::Series));
    }
    let a = alpha.value();
    let ln_x = Dd::from_f64(x).ln();
    let mut sum = Dd::ONE;
    let mut abs_sum = 1.0;
    let mut prev = 1.0;
    for n in 1..=MAX_SERIES_TERMS {
        let nf = n as f64;
        let ln_term = ln_x * Dd::from_f64(nf) - dd::ln_gamma(Dd::prod(a, nf) + Dd::ONE);
        if ln_term.hi > 700.0 {
            return Err(Error::NoConvergence {
                method: "series",
                terms: n,
                reason: "terms overflow before the series settles",
            });
        }
        let term = ln_term.exp();
        let mag = term.to_f64();
        let value = sum.to_f64();
        // Summing to full precision costs a few terms at most; the tolerance
        // only decides whether cancellation has made the result unusable.
        if mag < prev && mag <= tol.bound(value).min(SERIES_TAIL_REL * value.abs()) {
            let rounding = DD_TERM_REL * abs_sum;
            if rounding > tol.bound(value) {
                return Err(Error::NoConvergence {
                    method: "series",
                    terms: n,
                    reason: "cancellation exceeds the tolerance",
                });
            }
            let err_est = mag + rounding + f64::EPSILON * value.abs();
            return Ok(EvalResult::new(value, err_est, Method::Series));
        }
        sum = if n % 2 == 0 { sum + term } else { sum - term };
        abs_sum += mag;
        prev = mag;
    }
    Err(Error::NoConvergence {
        method: "series",
        terms: MAX_SERIES_TERMS,
        reason: "term limit reached",
    })
}

/// Magnitude bound `x^-n Γ(αn) / π` of the `n`-th asymptotic term, since
/// `|1/Γ(1 - z)| = |sin(πz)| Γ(z) / π`.
fn asymptotic_envelope(a: f64, ln_x: f64, n: usize) -> f64 {
    let nf = n as f64;
    (ln_gamma(a * nf) - nf * ln_x).exp() / PI
}

/// Asymptotic expansion `Σ_{n>=1} (-1)^(n-1) x^-n / Γ(1 - αn)`, truncated
/// before the smallest term.
///
/// The truncation test uses the envelope `x^-n Γ(αn)/π` rather than the raw
/// term, so terms that vanish or nearly vanish at the poles of `Γ(1 - αn)`
/// neither stop the sum early nor count as its smallest term.
///
/// Near its minimum the envelope is flat over about `√(N/α)` indices, and for
/// α close to 1 the sine factors of those omitted terms need not alternate, so
/// the error estimate is the first omitted envelope scaled by `√(N/α)`.
pub fn eval_asymptotic(alpha: Alpha, t: f64) -> Result<EvalResult> {
    alpha.require_fractional("the asymptotic expansion")?;
    check_time(t)?;
    if t == 0.0 {
        return Err(domain("the asymptotic expansion requires t > 0"));
    }
    let a = alpha.value();
    let x = t.powf(a);
    let ln_x = x.ln();
    let first = recip_gamma(1.0 - a) / x;
    if first > 1.0 {
        return Err(Error::Divergence {
            t,
            reason: "first term exceeds 1",
        });
    }
    let mut sum = 0.0;
    let mut abs_sum = 0.0;
    let mut prev_env = f64::INFINITY;
    let mut omitted = None;
    let mut used = 0;
    for n in 1..=MAX_ASYMPTOTIC_TERMS {
        let env = asymptotic_envelope(a, ln_x, n);
        if env >= prev_env {
            omitted = Some(env);
            break;
        }
        used = n;
        let nf = n as f64;
        let term = (-nf * ln_x).exp() * recip_gamma(1.0 - a * nf);
        let term = if n % 2 == 1 { term } else { -term };
        sum += term;
        abs_sum += term.abs();
        prev_env = env;
    }
    let truncation = omitted.unwrap_or_else(|| asymptotic_envelope(a, ln_x, MAX_ASYMPTOTIC_TERMS + 1));
    let plateau = (used as f64 / a).sqrt().max(1.0);
    let err_est = plateau * truncation + 4.0 * f64::EPSILON * abs_sum;
    if !(err_est <= ASYMPTOTIC_MAX_REL_ERR * sum.abs()) {
        return Err(Error::Divergence {
            t,
            reason: "smallest term is too large for the asymptotic regime",
        });
    }
    Ok(EvalResult::new(sum, err_est, Method::Asymptotic))
}

/// Breakpoints in `u = r^α` for the spectral quadrature at time `t`.
fn spectral_breakpoints(alpha: Alpha, x: f64) -> Vec<f64> {
    let mut pts = vec![0.0, 1.0, peak_in_u(alpha)];
    // Decay scale of exp(-t u^(1/α)) and of its folded twin.
    for p in [0.1 / x, 1.0 / x, 10.0 / x, x] {
        if p > 0.0 && p < 1.0 {
            pts.push(p);
        }
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup_by(|b, a| (*b - *a).abs() <= 1e-12);
    pts
}

/// Spectral integral `∫₀^∞ exp(-r t) K_α(r) dr`.
///
/// With `u = r^α` on `r <= 1` and `u = r^-α` on `r >= 1` both halves live on
/// `[0, 1]` and share the smooth weight `sin(απ)/(απ) / (u² + 2u cos(απ) + 1)`:
///
/// ```text
/// e_α(t) = sin(απ)/(απ) ∫₀¹ [exp(-t u^(1/α)) + exp(-t u^(-1/α))] / (u² + 2u cos(απ) + 1) du
/// ```
pub fn eval_spectral(alpha: Alpha, t: f64, tol: Tolerance) -> Result<EvalResult> {
    alpha.require_fractional("the spectral integral")?;
    check_time(t)?;
    if t == 0.0 {
        return Ok(EvalResult::new(1.0, 0.0, Method::Spectral));
    }
    let a = alpha.value();
    let (s, c) = (a * PI).sin_cos();
    let weight = s / (a * PI);
    let inv_a = 1.0 / a;
    let integrand = |u: f64| {
        let near = (-t * u.powf(inv_a)).exp();
        let far = (-t * u.powf(-inv_a)).exp();
        weight * (near + far) / (u * u + 2.0 * u * c + 1.0)
    };
    let pts = spectral_breakpoints(alpha, t.powf(a));
    let res = integrate(integrand, &pts, &QuadConfig::new(tol.rel(), tol.abs()))?;
    let err_est = res.err + f64::EPSILON * res.value.abs();
    Ok(EvalResult::new(res.value, err_est, Method::Spectral))
}

/// [`eval_auto_with`] using the default thresholds.
pub fn eval_auto(alpha: Alpha, t: f64, tol: Tolerance) -> Result<EvalResult> {
    eval_auto_with(alpha, t, tol, &AutoConfig::default())
}

/// Regime-dispatching evaluator.
///
/// `α = 1` returns `exp(-t)`. Otherwise, with `x = t^α`: the series for
/// `x <= t_lo`, the asymptotic expansion for `x >= t_hi` when its error
/// estimate meets `tol`, and the spectral integral everywhere else or as a
/// fallback. The returned tag names the evaluator that produced the value;
/// [`EvalResult::within`] tells whether `tol` was met.
pub fn eval_auto_with(alpha: Alpha, t: f64, tol: Tolerance, cfg: &AutoConfig) -> Result<EvalResult> {
    check_time(t)?;
    if alpha.is_one() {
        let v = (-t).exp();
        return Ok(EvalResult::new(v, f64::EPSILON * v, Method::Exponential));
    }
    if t == 0.0 {
        return Ok(EvalResult::new(1.0, 0.0, Method::Series));
    }
    let x = t.powf(alpha.value());
    let mut fallback = None;
    if x <= cfg.t_lo {
        match eval_series(alpha, t, tol) {
            Ok(r) => return Ok(r),
            Err(e) => fallback = Some(Err(e)),
        }
    } else if x >= cfg.t_hi {
        match eval_asymptotic(alpha, t) {
            Ok(r) if r.within(&tol) => return Ok(r),
            other => fallback = Some(other),
        }
    }
    match eval_spectral(alpha, t, tol) {
        Ok(r) => Ok(r),
        Err(e) => match fallback {
            Some(Ok(r)) => Ok(r),
            _ => Err(e),
        },
    }
}

/// Both sides of the Laplace pair `∫₀^∞ e^(-st) e_α(t) dt = s^(α-1) / (s^α + 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaplacePair {
    /// Numerical transform of [`eval_auto`] values.
    pub lhs: f64,
    /// Closed form.
    pub rhs: f64,
}

impl LaplacePair {
    pub fn rel_diff(&self) -> f64 {
        (self.lhs - self.rhs).abs() / self.rhs.abs()
    }
}

/// Checks the Laplace pair at a real `s > 0`.
///
/// The transform is integrated in `w = t^α`, which removes the `t^α` cusp of
/// `e_α` at the origin, and cut where `s t = 60`.
pub fn laplace_check(alpha: Alpha, s: f64, tol: Tolerance) -> Result<LaplacePair> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(domain(format!("s must be finite and > 0, got {s}")));
    }
    let a = alpha.value();
    let rhs = s.powf(a - 1.0) / (s.powf(a) + 1.0);
    let w_max = (LAPLACE_CUTOFF / s).powf(a);
    let cfg = AutoConfig::default();
    let failure: Cell<Option<Error>> = Cell::new(None);
    let integrand = |w: f64| {
        let t = w.powf(1.0 / a);
        let jac = w.powf(1.0 / a - 1.0) / a;
        match eval_auto_with(alpha, t, tol, &cfg) {
            Ok(e) => (-s * t).exp() * e.value * jac,
            Err(e) => {
                failure.set(Some(e));
                f64::NAN
            }
        }
    };
    let mut pts = vec![0.0];
    // Dispatch switches sit at w = t^α = t_lo and t_hi.
    for p in [cfg.t_lo, cfg.t_hi] {
        if p < w_max {
            pts.push(p);
        }
    }
    pts.push(w_max);
    let res = integrate(integrand, &pts, &QuadConfig::new(tol.rel(), 0.0));
    if let Some(e) = failure.take() {
        return Err(e);
    }
    Ok(LaplacePair { lhs: res?.value, rhs })
}
