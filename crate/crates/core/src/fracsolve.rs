//! Time stepping for fractional relaxation and discrete fractional derivatives.
//!
//! The relaxation problem is posed in two equivalent ways, the Caputo form
//! `D^α u = -u` and the Riemann-Liouville form `u' = -D^(1-α) u`, both with
//! `u(0) = 1` and exact solution `e_α(t)`. Both are advanced on a uniform grid
//! with Grünwald-Letnikov convolution weights and an implicit diagonal.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::gamma::{gamma_real, recip_gamma};
use crate::mlfun::eval_auto;
use crate::types::{Alpha, Tolerance};

/// Most starting-correction terms used by the Caputo scheme.
const MAX_STARTING_TERMS: usize = 5;

/// Relative deviation from `k h` tolerated when checking for a uniform grid.
const UNIFORM_REL: f64 = 1e-9;

/// Grünwald-Letnikov weights `w_j = (-1)^j binom(μ, j)` for `j = 0..=n`.
pub fn gl_weights(mu: f64, n: usize) -> Vec<f64> {
    let mut w = Vec::with_capacity(n + 1);
    w.push(1.0);
    for j in 1..=n {
        let prev = w[j - 1];
        w.push(prev * (1.0 - (mu + 1.0) / j as f64));
    }
    w
}

fn check_order(mu: f64) -> Result<()> {
    if mu > 0.0 && mu < 1.0 {
        Ok(())
    } else {
        Err(domain(format!("derivative order must lie in (0, 1), got {mu}")))
    }
}

/// Step of a uniform grid that starts at `t = 0`.
fn uniform_step(samples: &[(f64, f64)]) -> Result<f64> {
    if samples.len() < 2 {
        return Err(Error::InvalidSamples("need at least 2 samples".into()));
    }
    if samples[0].0 != 0.0 {
        return Err(Error::InvalidSamples("the grid must start at t = 0".into()));
    }
    let n = samples.len() - 1;
    let h = samples[n].0 / n as f64;
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::InvalidSamples("abscissae must increase".into()));
    }
    let slack = UNIFORM_REL * samples[n].0;
    if samples
        .iter()
        .enumerate()
        .any(|(k, &(t, f))| (t - k as f64 * h).abs() > slack || !f.is_finite())
    {
        return Err(Error::InvalidSamples("grid is not uniform".into()));
    }
    Ok(h)
}

/// Caputo derivative of order `mu` by product integration: `f` is taken as
/// piecewise linear, so `f'` is piecewise constant and each panel integrates
/// exactly against `(t - s)^-μ`.
///
/// Returns `(t_k, D^μ f(t_k))` for `k >= 1`.
pub fn caputo_derivative_discrete(samples: &[(f64, f64)], mu: f64) -> Result<Vec<(f64, f64)>> {
    check_order(mu)?;
    let h = uniform_step(samples)?;
    let p = 1.0 - mu;
    let scale = recip_gamma(2.0 - mu);
    let out = (1..samples.len())
        .map(|n| {
            let tn = samples[n].0;
            let sum: f64 = (1..=n)
                .map(|k| {
                    let slope = (samples[k].1 - samples[k - 1].1) / h;
                    let a = (tn - samples[k].0).max(0.0);
                    let b = tn - samples[k - 1].0;
                    slope * (b.powf(p) - a.powf(p))
                })
                .sum();
            (tn, scale * sum)
        })
        .collect();
    Ok(out)
}

/// Fractional integral `J^(1-μ) f` of the piecewise-linear interpolant at every node.
fn fractional_integral(samples: &[(f64, f64)], h: f64, mu: f64) -> Vec<f64> {
    let p1 = 1.0 - mu;
    let p2 = 2.0 - mu;
    let scale = recip_gamma(1.0 - mu);
    (0..samples.len())
        .map(|k| {
            let tk = samples[k].0;
            let sum: f64 = (0..k)
                .map(|j| {
                    // Panel [t_j, t_{j+1}] in σ = t_k - s runs over [a, b].
                    let a = (tk - samples[j + 1].0).max(0.0);
                    let b = tk - samples[j].0;
                    let i0 = (b.powf(p1) - a.powf(p1)) / p1;
                    let i1 = b * i0 - (b.powf(p2) - a.powf(p2)) / p2;
                    let (fj, fj1) = (samples[j].1, samples[j + 1].1);
                    fj * i0 + (fj1 - fj) / h * i1
                })
                .sum();
            scale * sum
        })
        .collect()
}

/// Riemann-Liouville derivative of order `mu`: the fractional integral of
/// order `1 - mu` of the piecewise-linear interpolant, differenced backward.
///
/// Returns `(t_k, D^μ f(t_k))` for `k >= 1`.
pub fn rl_derivative_discrete(samples: &[(f64, f64)], mu: f64) -> Result<Vec<(f64, f64)>> {
    check_order(mu)?;
    let h = uniform_step(samples)?;
    let j = fractional_integral(samples, h, mu);
    Ok((1..samples.len())
        .map(|k| (samples[k].0, (j[k] - j[k - 1]) / h))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    /// `D^α u = -u` with the Caputo derivative.
    CaputoGl,
    /// `u' = -D^(1-α) u` with the Riemann-Liouville derivative.
    RlGl,
}

impl Scheme {
    pub fn as_str(self) -> &'static str {
        match self {
            Scheme::CaputoGl => "caputo_gl",
            Scheme::RlGl => "rl_gl",
        }
    }
}

impl std::str::FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "caputo_gl" => Ok(Scheme::CaputoGl),
            "rl_gl" => Ok(Scheme::RlGl),
            _ => Err(domain(format!("unknown scheme '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverRun {
    pub alpha: Alpha,
    pub scheme: Scheme,
    pub h: f64,
    pub horizon: f64,
    /// `(t_k, u_k)` with `t_k = k h`.
    pub trajectory: Vec<(f64, f64)>,
    /// `e_α(t_k)` at the same nodes.
    pub analytic: Vec<f64>,
    pub max_abs_err: f64,
}

/// Starting weights `W[n-1][k-1]`, `n = 1..=steps`, `k = 1..=m`, that make the
/// GL operator exact on `t^(lα)` for every `lα < 1`.
///
/// These terms are the non-smooth part of `e_α` near the origin. Without them
/// the scheme converges only like `h^α`.
fn starting_weights(a: f64, w: &[f64], steps: usize) -> Result<Vec<Vec<f64>>> {
    let sigmas: Vec<f64> = (1..=MAX_STARTING_TERMS)
        .map(|l| l as f64 * a)
        .filter(|&s| s < 1.0 - 1e-12)
        .collect();
    let m = sigmas.len();
    if m == 0 {
        return Ok(vec![Vec::new(); steps]);
    }
    let lhs = DMatrix::from_fn(m, m, |l, k| ((k + 1) as f64).powf(sigmas[l]));
    let lu = lhs.lu();
    let ratios: Vec<f64> = sigmas
        .iter()
        .map(|&s| Ok(gamma_real(s + 1.0)? * recip_gamma(s + 1.0 - a)))
        .collect::<Result<_>>()?;
    (1..=steps)
        .map(|n| {
            let nf = n as f64;
            let rhs = DVector::from_fn(m, |l, _| {
                let s = sigmas[l];
                let conv: f64 = (1..=n).map(|j| w[n - j] * (j as f64).powf(s)).sum();
                ratios[l] * nf.powf(s - a) - conv
            });
            lu.solve(&rhs)
                .map(|x| x.iter().copied().collect())
                .ok_or_else(|| domain("singular starting-weight system"))
        })
        .collect()
}

/// Caputo form on `v = u - 1`: `h^-α [Σ_j w_(n-j) v_j + Σ_k W_(n,k) v_k] = -(1 + v_n)`.
fn step_caputo(a: f64, h: f64, steps: usize) -> Result<Vec<f64>> {
    let w = gl_weights(a, steps);
    let corr = starting_weights(a, &w, steps)?;
    let m = corr.first().map_or(0, Vec::len).min(steps);
    let ha = h.powf(a);
    let mut v = vec![0.0; steps + 1];
    if m > 0 {
        // The corrections couple the first m unknowns; solve for them jointly.
        let lhs = DMatrix::from_fn(m, m, |r, c| {
            let (n, k) = (r + 1, c + 1);
            let conv = if k <= n { w[n - k] } else { 0.0 };
            conv + corr[n - 1][k - 1] + if n == k { ha } else { 0.0 }
        });
        let rhs = DVector::from_element(m, -ha);
        let first = lhs.lu().solve(&rhs).ok_or_else(|| domain("singular start-up system"))?;
        v[1..=m].copy_from_slice(first.as_slice());
    }
    for n in m + 1..=steps {
        let conv: f64 = (1..n).map(|j| w[n - j] * v[j]).sum();
        let start: f64 = corr[n - 1].iter().enumerate().map(|(k, c)| c * v[k + 1]).sum();
        v[n] = (-ha - conv - start) / (1.0 + ha);
    }
    Ok(v)
}

/// Riemann-Liouville form on `v = u - 1`. The derivative of the constant part
/// is `t^(α-1)/Γ(α)`, whose integral over a step is known exactly; the rest is
/// a GL sum of order `1 - α` with the newest value implicit.
fn step_rl(a: f64, h: f64, steps: usize) -> Vec<f64> {
    let w = gl_weights(1.0 - a, steps);
    let ha = h.powf(a);
    let g = recip_gamma(1.0 + a);
    let mut v = vec![0.0; steps + 1];
    for n in 1..=steps {
        let conv: f64 = (1..n).map(|j| w[n - j] * v[j]).sum();
        let tn = n as f64 * h;
        let tp = (n - 1) as f64 * h;
        let source = (tn.powf(a) - tp.powf(a)) * g;
        v[n] = (v[n - 1] - ha * conv - source) / (1.0 + ha * w[0]);
    }
    v
}

/// Solves fractional relaxation with `u(0) = 1` on `[0, horizon]`.
///
/// Fails with [`Error::Instability`] if the discrete solution leaves `[0, 1]`
/// or increases, which the exact solution never does.
pub fn solve_relaxation(alpha: Alpha, h: f64, horizon: f64, scheme: Scheme) -> Result<SolverRun> {
    if !(horizon > 0.0) || !horizon.is_finite() {
        return Err(domain(format!("horizon must be finite and > 0, got {horizon}")));
    }
    if !(h > 0.0) || h > horizon / 10.0 {
        return Err(domain(format!("step h must satisfy 0 < h <= horizon/10, got {h}")));
    }
    let steps = (horizon / h).round() as usize;
    let a = alpha.value();
    let v = match scheme {
        Scheme::CaputoGl => step_caputo(a, h, steps)?,
        Scheme::RlGl => step_rl(a, h, steps),
    };
    let mut prev = 1.0;
    let mut trajectory = Vec::with_capacity(steps + 1);
    for (k, vk) in v.iter().enumerate() {
        let u = 1.0 + vk;
        if !(u >= 0.0) || u > prev {
            return Err(Error::Instability { step: k, value: u });
        }
        prev = u;
        trajectory.push((k as f64 * h, u));
    }
    let tol = Tolerance::default();
    let analytic: Vec<f64> = trajectory
        .par_iter()
        .map(|&(t, _)| eval_auto(alpha, t, tol).map(|e| e.value))
        .collect::<Result<_>>()?;
    let max_abs_err = trajectory
        .iter()
        .zip(&analytic)
        .map(|(&(_, u), e)| (u - e).abs())
        .fold(0.0, f64::max);
    Ok(SolverRun {
        alpha,
        scheme,
        h,
        horizon,
        trajectory,
        analytic,
        max_abs_err,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub h: f64,
    pub max_abs_err: f64,
    /// `log(err_prev / err) / log(h_prev / h)`; absent on the first row.
    pub observed_order: Option<f64>,
}

/// Runs the solver for each step in `h_list` and reports pairwise orders.
pub fn convergence_study(alpha: Alpha, h_list: &[f64], horizon: f64, scheme: Scheme) -> Result<Vec<ConvergenceRow>> {
    if h_list.len() < 3 {
        return Err(domain("convergence study needs at least 3 step sizes"));
    }
    if h_list.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(domain("step sizes must be strictly decreasing"));
    }
    let errs: Vec<f64> = h_list
        .par_iter()
        .map(|&h| solve_relaxation(alpha, h, horizon, scheme).map(|r| r.max_abs_err))
        .collect::<Result<_>>()?;
    Ok(h_list
        .iter()
        .zip(&errs)
        .enumerate()
        .map(|(i, (&h, &err))| ConvergenceRow {
            h,
            max_abs_err: err,
            observed_order: (i > 0).then(|| (errs[i - 1] / err).ln() / (h_list[i - 1] / h).ln()),
        })
        .collect())
}
