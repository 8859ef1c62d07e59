//! Double-double arithmetic: an unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`,
//! good for roughly 32 significant digits.
//!
//! Only what the power series and the gamma routines need: the four operations,
//! `exp`, `ln` and the log-gamma function for positive arguments.

use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

pub(crate) const LN2: Dd = Dd::new(std::f64::consts::LN_2, 2.319_046_813_846_299_6e-17);
pub(crate) const HALF_LN_2PI: Dd = Dd::new(0.918_938_533_204_672_8, -3.878_294_158_067_241_4e-17);

/// Stirling-series coefficients `B_{2k} / (2k (2k - 1))` as exact ratios.
const STIRLING: [(f64, f64); 10] = [
    (1.0, 12.0),
    (-1.0, 360.0),
    (1.0, 1260.0),
    (-1.0, 1680.0),
    (1.0, 1188.0),
    (-691.0, 360_360.0),
    (1.0, 156.0),
    (-3617.0, 122_400.0),
    (43867.0, 244_188.0),
    (-174_611.0, 125_400.0),
];

/// Arguments below this are shifted upward before the Stirling series is used.
const STIRLING_MIN: f64 = 30.0;

impl Dd {
    pub const ZERO: Dd = Dd::new(0.0, 0.0);
    pub const ONE: Dd = Dd::new(1.0, 0.0);

    pub const fn new(hi: f64, lo: f64) -> Self {
        Self { hi, lo }
    }

    #[inline]
    pub fn from_f64(x: f64) -> Self {
        Self::new(x, 0.0)
    }

    /// Exact product of two doubles.
    #[inline]
    pub fn prod(a: f64, b: f64) -> Self {
        let (hi, lo) = two_prod(a, b);
        Self::new(hi, lo)
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    /// Multiplication by `2^k`, exact unless the result leaves the normal range.
    fn ldexp(self, k: i32) -> Self {
        let scale = |x: f64, k: i32| -> f64 {
            let mut x = x;
            let mut k = k;
            while k > 1000 {
                x *= 2f64.powi(1000);
                k -= 1000;
            }
            while k < -1000 {
                x *= 2f64.powi(-1000);
                k += 1000;
            }
            x * 2f64.powi(k)
        };
        Self::new(scale(self.hi, k), scale(self.lo, k))
    }

    pub fn recip(self) -> Self {
        Dd::ONE / self
    }

    pub fn sqr(self) -> Self {
        self * self
    }

    /// `e^x`. Overflows to infinity above ~709.78 and underflows to zero below ~-745.
    pub fn exp(self) -> Self {
        if self.hi > 709.79 {
            return Self::from_f64(f64::INFINITY);
        }
        if self.hi < -745.2 {
            return Self::ZERO;
        }
        if self.hi == 0.0 && self.lo == 0.0 {
            return Self::ONE;
        }
        let k = (self.hi / LN2.hi).round();
        let r = self - LN2 * Dd::from_f64(k);
        // Shrink |r| below ~3.4e-4 so nine Taylor terms reach ~1e-37.
        let r = r.ldexp(-10);
        let mut s = Dd::ZERO;
        for n in (1..=9).rev() {
            s = (s + Dd::ONE) * r / Dd::from_f64(n as f64);
        }
        // (1 + s)^2 - 1 = s (2 + s), kept in expm1 form to preserve precision.
        for _ in 0..10 {
            s = s * (s + Dd::from_f64(2.0));
        }
        (s + Dd::ONE).ldexp(k as i32)
    }

    /// Natural logarithm for `x > 0`: one Newton step on `exp` from the double estimate.
    pub fn ln(self) -> Self {
        if !(self.hi > 0.0) {
            return Self::from_f64(if self.hi == 0.0 { f64::NEG_INFINITY } else { f64::NAN });
        }
        if self.hi.is_infinite() {
            return self;
        }
        let y = Dd::from_f64(self.hi.ln());
        y + self * (-y).exp() - Dd::ONE
    }
}

/// `ln Γ(z)` for `z > 0`, accurate to a few units in the 1e-29 place relative to
/// the larger of 1 and `|ln Γ(z)|`.
pub(crate) fn ln_gamma(z: Dd) -> Dd {
    debug_assert!(z.hi > 0.0);
    let mut w = z;
    let mut shift = Dd::ONE;
    let mut shifted = false;
    while w.hi < STIRLING_MIN {
        shift = shift * w;
        w = w + Dd::ONE;
        shifted = true;
    }
    let ln_w = w.ln();
    let inv = w.recip();
    let inv2 = inv.sqr();
    let mut series = Dd::ZERO;
    let mut pow = inv;
    for &(num, den) in STIRLING.iter() {
        series = series + pow * Dd::from_f64(num) / Dd::from_f64(den);
        pow = pow * inv2;
    }
    let mut lg = (w - Dd::from_f64(0.5)) * ln_w - w + HALF_LN_2PI + series;
    if shifted {
        lg = lg - shift.ln();
    }
    lg
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd::new(-self.hi, -self.lo)
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let s2 = s2 + t1;
        let (s1, s2) = quick_two_sum(s1, s2);
        let s2 = s2 + t2;
        let (hi, lo) = quick_two_sum(s1, s2);
        Dd::new(hi, lo)
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, b.hi);
        let p2 = p2 + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd::new(hi, lo)
    }
}

impl Div for Dd {
    type Output = Dd;
    #[inline]
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b * Dd::from_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b * Dd::from_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd::new(hi, lo) + Dd::from_f64(q3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference hi/lo pairs computed offline at 40 digits.
    fn close(got: Dd, hi: f64, lo: f64, rel: f64) {
        let want = Dd::new(hi, lo);
        let diff = (got - want).to_f64().abs();
        assert!(diff <= rel * hi.abs(), "got {got:?}, want {want:?}, diff {diff:e}");
    }

    #[test]
    fn exp_matches_reference() {
        close(
            Dd::from_f64(10.5).exp(),
            36315.502674246636,
            1.577797006387782e-12,
            1e-30,
        );
        close(
            Dd::from_f64(-300.25).exp(),
            4.009422364622857e-131,
            -9.421845746665655e-148,
            1e-29,
        );
        assert_eq!(Dd::ZERO.exp(), Dd::ONE);
        assert!(Dd::from_f64(800.0).exp().hi.is_infinite());
        assert_eq!(Dd::from_f64(-800.0).exp(), Dd::ZERO);
    }

    #[test]
    fn ln_matches_reference() {
        close(Dd::from_f64(2.0).ln(), LN2.hi, LN2.lo, 1e-31);
        close(Dd::from_f64(3.0).ln(), 1.0986122886681098, -9.07129723500153e-17, 1e-31);
        assert!(Dd::ONE.ln().to_f64().abs() < 1e-32);
    }

    #[test]
    fn ln_gamma_matches_reference() {
        close(
            ln_gamma(Dd::from_f64(0.5)),
            0.5723649429247001,
            5.132975581353913e-18,
            1e-29,
        );
        close(
            ln_gamma(Dd::from_f64(1.25)),
            -0.09827183642181316,
            -6.314779554567454e-18,
            1e-28,
        );
        close(
            ln_gamma(Dd::from_f64(100.5)),
            361.4355404677776,
            -6.226945756445924e-15,
            1e-30,
        );
        assert!(ln_gamma(Dd::ONE).to_f64().abs() < 1e-28);
        assert!(ln_gamma(Dd::from_f64(2.0)).to_f64().abs() < 1e-28);
    }

    #[test]
    fn division_round_trips() {
        let a = Dd::from_f64(1.0) / Dd::from_f64(3.0);
        let back = a * Dd::from_f64(3.0) - Dd::ONE;
        assert!(back.to_f64().abs() < 1e-31);
    }
}
