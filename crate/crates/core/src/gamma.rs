//! Gamma function on the real line.
//!
//! Positive arguments go through a double-double Stirling series (with upward
//! shift for small arguments), so the double results are essentially correctly
//! rounded. Negative arguments use the reflection formula
//! `Γ(x) Γ(1 - x) = π / sin(π x)`.

use std::f64::consts::PI;

use crate::dd::{self, Dd};
use crate::error::{Error, Result};

/// Distance from a non-positive integer treated as a pole.
const POLE_EPS: f64 = 1e-12;

/// `sin(π x)` with exact argument reduction to `[-1/2, 1/2]`.
pub fn sin_pi(x: f64) -> f64 {
    let n = x.round();
    let r = x - n;
    let s = (PI * r).sin();
    if n.rem_euclid(2.0) == 0.0 {
        s
    } else {
        -s
    }
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

/// `ln |Γ(x)|` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma requires x > 0, got {x}");
    dd::ln_gamma(Dd::from_f64(x)).to_f64()
}

/// `Γ(x)` for real `x`.
///
/// Fails with [`Error::Pole`] within `1e-12` of a non-positive integer and with
/// [`Error::Overflow`] when the result is not representable.
pub fn gamma_real(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::Domain("gamma of NaN".into()));
    }
    if x <= 0.0 && (x - x.round()).abs() < POLE_EPS {
        return Err(Error::Pole(x));
    }
    let value = if x > 0.0 {
        dd::ln_gamma(Dd::from_f64(x)).exp().to_f64()
    } else {
        // Γ(x) = π / (sin(πx) Γ(1-x))
        let g = dd::ln_gamma(Dd::from_f64(1.0 - x)).exp().to_f64();
        PI / (sin_pi(x) * g)
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow(x))
    }
}

/// `1/Γ(x)`, total on the real line.
///
/// Exactly zero at non-positive integers so that pole terms drop out of the
/// series that use it as a denominator.
pub fn recip_gamma(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if is_nonpositive_integer(x) {
        return 0.0;
    }
    if x > 0.0 {
        if x == f64::INFINITY {
            return 0.0;
        }
        (-dd::ln_gamma(Dd::from_f64(x))).exp().to_f64()
    } else {
        if x == f64::NEG_INFINITY {
            return f64::NAN;
        }
        // 1/Γ(x) = sin(πx) Γ(1-x) / π
        let g = dd::ln_gamma(Dd::from_f64(1.0 - x)).exp().to_f64();
        sin_pi(x) * g / PI
    }
}
