//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, NumAssign};

/// Real floating-point scalar the dispersion functions are generic over.
///
/// Implemented for `f32` and `f64`. Algorithm constants are written as
/// `f64` literals and converted with [`Real::lit`]; tolerances that depend
/// on the working precision are derived from `Float::epsilon()`.
pub trait Real:
    Float + FloatConst + NumAssign + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal into the working precision.
    fn lit(v: f64) -> Self;

    /// Widens to `f64` (for diagnostics and error payloads).
    fn as_f64(self) -> f64;

    /// Converts a small count into the working precision.
    #[inline]
    fn of(n: usize) -> Self {
        Self::lit(n as f64)
    }
}

impl Real for f64 {
    #[inline]
    fn lit(v: f64) -> Self {
        v
    }
    #[inline]
    fn as_f64(self) -> f64 {
        self
    }
}

impl Real for f32 {
    #[inline]
    fn lit(v: f64) -> Self {
        v as f32
    }
    #[inline]
    fn as_f64(self) -> f64 {
        self as f64
    }
}

/// `i·v` for a real `v`.
#[inline]
pub(crate) fn imag<T: Real>(v: T) -> Complex<T> {
    Complex::new(T::zero(), v)
}

#[inline]
pub(crate) fn real<T: Real>(v: T) -> Complex<T> {
    Complex::new(v, T::zero())
}

#[inline]
pub(crate) fn is_finite<T: Real>(z: Complex<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// `|a - b| / |b|`, falling back to the absolute difference when `b == 0`.
pub fn rel_diff<T: Real>(a: Complex<T>, b: Complex<T>) -> T {
    let d = (a - b).norm();
    let s = b.norm();
    if s > T::zero() {
        d / s
    } else {
        d
    }
}
