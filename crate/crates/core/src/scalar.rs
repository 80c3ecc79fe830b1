//! Scalar abstraction shared by every numerical kernel in the crate.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Floating point scalar the kernels are generic over: `f32` or `f64`.
///
/// Tolerances quoted throughout the crate assume `f64`; `f32` instantiations
/// run the same code paths at single precision.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + LowerExp
    + Default
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// Conversion from a count or index.
    #[inline]
    fn from_count(n: u64) -> Self {
        Self::from_u64(n).expect("count representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    #[inline]
    fn two_pi() -> Self {
        Self::TAU()
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Euclidean remainder of an angle into `[0, 2π)`.
#[inline]
pub fn wrap_angle<T: Real>(x: T) -> T {
    let tau = T::two_pi();
    let mut r = x % tau;
    if r < T::zero() {
        r += tau;
    }
    // `r + tau` can round up to exactly `tau` for tiny negative `r`.
    if r >= tau {
        r = T::zero();
    }
    r
}

/// `base^s` for a positive real base, as `exp(s ln base)`.
#[inline]
pub fn real_pow_complex<T: Real>(base: T, s: Complex<T>) -> Complex<T> {
    let l = base.ln();
    Complex::from_polar((s.re * l).exp(), s.im * l)
}

/// Pairwise (cascade) summation with a fixed, data-independent reduction tree.
pub fn pairwise_sum<T: Real>(xs: &[T]) -> T {
    const BLOCK: usize = 32;
    if xs.len() <= BLOCK {
        let mut acc = T::zero();
        for &x in xs {
            acc += x;
        }
        return acc;
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// Pairwise summation for complex values.
pub fn pairwise_sum_complex<T: Real>(xs: &[Complex<T>]) -> Complex<T> {
    const BLOCK: usize = 32;
    if xs.len() <= BLOCK {
        let mut acc = Complex::new(T::zero(), T::zero());
        for &x in xs {
            acc += x;
        }
        return acc;
    }
    let mid = xs.len() / 2;
    pairwise_sum_complex(&xs[..mid]) + pairwise_sum_complex(&xs[mid..])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrap_angle_range() {
        for &x in &[-1e-18, -7.0, 0.0, std::f64::consts::TAU, 100.0, -100.0] {
            let r = wrap_angle(x);
            assert!((0.0..std::f64::consts::TAU).contains(&r), "{x} -> {r}");
        }
        let r32 = wrap_angle(-1e-9f32);
        assert!((0.0..std::f32::consts::TAU).contains(&r32));
    }

    #[test]
    fn pairwise_matches_naive_for_integers() {
        let xs: Vec<f64> = (1..=1000).map(|k| k as f64).collect();
        assert_eq!(pairwise_sum(&xs), 500500.0);
    }
}
