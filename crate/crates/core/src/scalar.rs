//! Scalar abstraction shared by every numerical module.
//!
//! All math in this crate is written against [`Real`], implemented for `f32`
//! and `f64`. Complex quantities are `num_complex::Complex<T>` built on the
//! same scalar.

use std::fmt::{Debug, Display, LowerExp};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Floating point type usable by the simulation code.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Default
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal into this scalar.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// Converts a count or index into this scalar.
    #[inline]
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable")
    }

    /// Lossy conversion used for reporting.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Complex number over a [`Real`] scalar.
pub type C<T> = Complex<T>;

#[inline]
pub(crate) fn c<T: Real>(re: T, im: T) -> C<T> {
    Complex::new(re, im)
}

#[inline]
pub(crate) fn cr<T: Real>(re: T) -> C<T> {
    Complex::new(re, T::zero())
}

/// `sinh(x)/x`, exact limit 1 at the origin.
pub fn sinhc<T: Real>(x: T) -> T {
    if x.abs() < T::lit(1e-4) {
        let x2 = x * x;
        T::one() + x2 / T::lit(6.0) + x2 * x2 / T::lit(120.0)
    } else {
        x.sinh() / x
    }
}

/// `cosh(x) - 1` without cancellation.
pub fn cosh_m1<T: Real>(x: T) -> T {
    let s = (x / T::lit(2.0)).sinh();
    T::lit(2.0) * s * s
}

/// `(cosh(x) - 1)/x`, limit 0 at the origin.
pub fn cosh_m1_over<T: Real>(x: T) -> T {
    if x.abs() < T::lit(1e-4) {
        let x2 = x * x;
        x / T::lit(2.0) + x * x2 / T::lit(24.0)
    } else {
        cosh_m1(x) / x
    }
}

/// `sinh(x) - x` without cancellation.
pub fn sinh_m_x<T: Real>(x: T) -> T {
    if x.abs() < T::lit(0.1) {
        // odd Taylor tail; 7 terms reach f64 round-off for |x| < 0.1
        let x2 = x * x;
        let mut term = x * x2 / T::lit(6.0);
        let mut sum = term;
        for k in 2..9usize {
            let a = T::from_count(2 * k);
            let b = T::from_count(2 * k + 1);
            term = term * x2 / (a * b);
            sum += term;
        }
        sum
    } else {
        x.sinh() - x
    }
}

/// `(sinh(x)/x - 1)/x`, limit 0 at the origin.
pub fn sinhc_m1_over<T: Real>(x: T) -> T {
    if x == T::zero() {
        T::zero()
    } else {
        sinh_m_x(x) / (x * x)
    }
}

/// Natural log of `n!`.
pub fn ln_factorial<T: Real>(n: usize) -> T {
    let mut acc = 0.0f64;
    for k in 2..=n {
        acc += (k as f64).ln();
    }
    T::lit(acc)
}

/// Table of `ln k!` for `k = 0..=n`.
pub fn ln_factorial_table<T: Real>(n: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = 0.0f64;
    out.push(T::zero());
    for k in 1..=n {
        acc += (k as f64).ln();
        out.push(T::lit(acc));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_argument_series_match_direct_forms() {
        for &x in &[1e-5f64, 5e-5, 2e-4, 0.05, 0.3, 1.7] {
            assert!((sinhc(x) - x.sinh() / x).abs() < 1e-14);
            let want = if x < 0.1 {
                x / 2.0 + x.powi(3) / 24.0 + x.powi(5) / 720.0 + x.powi(7) / 40320.0
            } else {
                (x.cosh() - 1.0) / x
            };
            assert!((cosh_m1_over(x) - want).abs() < 1e-14 * x.max(1e-3), "{x}");
        }
        assert_eq!(sinhc(0.0f64), 1.0);
        assert_eq!(cosh_m1_over(0.0f64), 0.0);
        let x = 0.05f64;
        let direct = x.sinh() - x;
        assert!(((sinh_m_x(x) - direct) / direct).abs() < 1e-9);
    }

    #[test]
    fn log_factorials() {
        let t = ln_factorial_table::<f64>(10);
        assert!((t[5] - 120f64.ln()).abs() < 1e-13);
        assert!((ln_factorial::<f64>(10) - 3628800f64.ln()).abs() < 1e-12);
    }
}
