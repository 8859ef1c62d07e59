//! Oracles shared by the integration tests. Nothing here calls the library's
//! own evaluators.

#![allow(dead_code)]

use std::f64::consts::PI;

/// `exp(x²) erfc(x)` for `x >= 0`.
///
/// Below 5 the product is formed directly from libm's `erfc`; above, where
/// `erfc` heads for underflow, the Laplace continued fraction
/// `1 / (√π (x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))))` is summed backwards.
pub fn erfcx(x: f64) -> f64 {
    assert!(x >= 0.0);
    if x < 5.0 {
        (x * x).exp() * libm::erfc(x)
    } else {
        let mut k = x;
        for n in (1..=120).rev() {
            k = x + 0.5 * n as f64 / k;
        }
        1.0 / (PI.sqrt() * k)
    }
}

/// `e_{1/2}(t) = exp(t) erfc(√t)`.
pub fn e_half(t: f64) -> f64 {
    erfcx(t.sqrt())
}

/// `n` log-spaced points from `lo` to `hi`.
pub fn log_points(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.log10(), hi.log10());
    (0..n)
        .map(|i| 10f64.powf(a + (b - a) * i as f64 / (n - 1) as f64))
        .collect()
}
