//! Outward-conservative enclosures for real values.
//!
//! Polynomial and coefficient work elsewhere in the crate is exact rational
//! arithmetic; only transcendental functions (exp, log, roots) and final
//! comparisons pass through floating point. Every such step is padded
//! outward by a configurable number of ulps (default 2, comfortably above
//! the sub-ulp error of the platform libm), so an [`EvalValue`] always
//! satisfies `lower <= true value <= upper`.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::sync::atomic::{AtomicU32, Ordering};

static PAD_ULPS: AtomicU32 = AtomicU32::new(2);

/// Current outward padding applied after every floating-point operation.
pub fn padding_ulps() -> u32 {
    PAD_ULPS.load(Ordering::Relaxed)
}

/// Set the outward padding (process-global; used by robustness tests to
/// verify that verdicts are stable under extra padding).
pub fn set_padding_ulps(ulps: u32) {
    PAD_ULPS.store(ulps.max(1), Ordering::Relaxed);
}

pub fn pad_down(x: f64) -> f64 {
    let mut y = x;
    for _ in 0..padding_ulps() {
        y = y.next_down();
    }
    y
}

pub fn pad_up(x: f64) -> f64 {
    let mut y = x;
    for _ in 0..padding_ulps() {
        y = y.next_up();
    }
    y
}

pub fn add_down(a: f64, b: f64) -> f64 {
    pad_down(a + b)
}
pub fn add_up(a: f64, b: f64) -> f64 {
    pad_up(a + b)
}
pub fn sub_down(a: f64, b: f64) -> f64 {
    pad_down(a - b)
}
pub fn sub_up(a: f64, b: f64) -> f64 {
    pad_up(a - b)
}
pub fn mul_down(a: f64, b: f64) -> f64 {
    pad_down(a * b)
}
pub fn mul_up(a: f64, b: f64) -> f64 {
    pad_up(a * b)
}
pub fn div_down(a: f64, b: f64) -> f64 {
    pad_down(a / b)
}
pub fn div_up(a: f64, b: f64) -> f64 {
    pad_up(a / b)
}
pub fn ln_down(a: f64) -> f64 {
    pad_down(a.ln())
}
pub fn ln_up(a: f64) -> f64 {
    pad_up(a.ln())
}
pub fn exp_down(a: f64) -> f64 {
    pad_down(a.exp())
}
pub fn exp_up(a: f64) -> f64 {
    pad_up(a.exp())
}
pub fn sqrt_down(a: f64) -> f64 {
    pad_down(a.sqrt())
}
pub fn sqrt_up(a: f64) -> f64 {
    pad_up(a.sqrt())
}
pub fn log1p_down(a: f64) -> f64 {
    pad_down(a.ln_1p())
}
pub fn log1p_up(a: f64) -> f64 {
    pad_up(a.ln_1p())
}
pub fn expm1_down(a: f64) -> f64 {
    pad_down(a.exp_m1())
}
pub fn expm1_up(a: f64) -> f64 {
    pad_up(a.exp_m1())
}

/// An interval `[lower, upper]` guaranteed to contain the true value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalValue {
    lower: f64,
    upper: f64,
}

impl EvalValue {
    pub fn new(lower: f64, upper: f64) -> Self {
        assert!(lower <= upper, "inverted enclosure [{lower}, {upper}]");
        EvalValue { lower, upper }
    }

    pub fn exact(x: f64) -> Self {
        EvalValue { lower: x, upper: x }
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    /// Enclose an exact rational. The candidate endpoints are verified by
    /// exact comparison and widened until the enclosure provably contains
    /// the value, then padded outward as usual.
    pub fn from_rational(r: &BigRational) -> Self {
        let approx = rational_to_f64(r);
        if !approx.is_finite() {
            return if approx > 0.0 {
                EvalValue::new(f64::MAX, f64::INFINITY)
            } else {
                EvalValue::new(f64::NEG_INFINITY, f64::MIN)
            };
        }
        let mut lo = approx.next_down();
        let mut hi = approx.next_up();
        while !rational_le_f64(r, hi) {
            hi = hi.next_up();
        }
        while !f64_le_rational(lo, r) {
            lo = lo.next_down();
        }
        EvalValue::new(pad_down(lo), pad_up(hi))
    }

    pub fn add(&self, o: &EvalValue) -> EvalValue {
        EvalValue::new(add_down(self.lower, o.lower), add_up(self.upper, o.upper))
    }

    pub fn sub(&self, o: &EvalValue) -> EvalValue {
        EvalValue::new(sub_down(self.lower, o.upper), sub_up(self.upper, o.lower))
    }

    pub fn neg(&self) -> EvalValue {
        EvalValue::new(-self.upper, -self.lower)
    }

    pub fn mul(&self, o: &EvalValue) -> EvalValue {
        let products = [
            (self.lower, o.lower),
            (self.lower, o.upper),
            (self.upper, o.lower),
            (self.upper, o.upper),
        ];
        let lo = products.iter().map(|&(a, b)| mul_down(a, b)).fold(f64::INFINITY, f64::min);
        let hi = products
            .iter()
            .map(|&(a, b)| mul_up(a, b))
            .fold(f64::NEG_INFINITY, f64::max);
        EvalValue::new(lo, hi)
    }

    pub fn scale(&self, k: f64) -> EvalValue {
        self.mul(&EvalValue::exact(k))
    }

    /// Reciprocal; requires an interval that excludes zero.
    pub fn recip(&self) -> EvalValue {
        assert!(
            self.lower > 0.0 || self.upper < 0.0,
            "reciprocal of an interval containing zero"
        );
        EvalValue::new(div_down(1.0, self.upper), div_up(1.0, self.lower))
    }

    pub fn exp(&self) -> EvalValue {
        EvalValue::new(exp_down(self.lower), exp_up(self.upper))
    }

    /// Natural log; requires a strictly positive interval.
    pub fn ln(&self) -> EvalValue {
        assert!(self.lower > 0.0, "log of a non-positive interval");
        EvalValue::new(ln_down(self.lower), ln_up(self.upper))
    }

    pub fn sqrt(&self) -> EvalValue {
        assert!(self.lower >= 0.0, "sqrt of a negative interval");
        EvalValue::new(sqrt_down(self.lower), sqrt_up(self.upper))
    }

    /// Integer power by repeated directed multiplication (nonnegative base).
    pub fn powi(&self, n: usize) -> EvalValue {
        assert!(self.lower >= 0.0, "powi expects a nonnegative interval");
        let mut lo = 1.0f64;
        let mut hi = 1.0f64;
        for _ in 0..n {
            lo = mul_down(lo, self.lower);
            hi = mul_up(hi, self.upper);
        }
        EvalValue::new(lo, hi)
    }

    /// Pointwise minimum (encloses `min(x, y)` for the enclosed values).
    pub fn min(&self, o: &EvalValue) -> EvalValue {
        EvalValue::new(self.lower.min(o.lower), self.upper.min(o.upper))
    }
}

/// Convert a rational to f64 through the integer parts, scaling to keep both
/// within range. Accuracy is not trusted; callers verify exactly.
fn rational_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let numer = r.numer();
    let denom = r.denom();
    if let (Some(n), Some(d)) = (numer.to_f64(), denom.to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // Out of f64 range somewhere: compare bit lengths and scale by powers of
    // two until both halves convert.
    let shift = (numer.bits() as i64 - denom.bits() as i64).clamp(-2000, 2000);
    let scaled = if shift > 0 {
        r / BigRational::from(BigInt::from(1u8) << shift as usize)
    } else {
        r * BigRational::from(BigInt::from(1u8) << (-shift) as usize)
    };
    let base = scaled
        .numer()
        .to_f64()
        .unwrap_or(f64::NAN)
        / scaled.denom().to_f64().unwrap_or(f64::NAN);
    base * 2f64.powi(shift as i32)
}

/// Exact comparison `r <= x` for finite `x`.
fn rational_le_f64(r: &BigRational, x: f64) -> bool {
    if x == f64::INFINITY {
        return true;
    }
    if !x.is_finite() {
        return false;
    }
    match BigRational::from_float(x) {
        Some(fx) => *r <= fx,
        None => false,
    }
}

/// Exact comparison `x <= r` for finite `x`.
fn f64_le_rational(x: f64, r: &BigRational) -> bool {
    if x == f64::NEG_INFINITY {
        return true;
    }
    if !x.is_finite() {
        return false;
    }
    match BigRational::from_float(x) {
        Some(fx) => fx <= *r,
        None => false,
    }
}
