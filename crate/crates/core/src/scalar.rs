//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive};

/// Floating point type the clustering and aggregation code is generic over.
///
/// Implemented for `f32` and `f64`. All tolerances used by the crate are
/// derived from [`Scalar::tolerance`], so single precision runs get a
/// correspondingly looser comparison threshold.
pub trait Scalar:
    Float + FromPrimitive + Debug + Display + Default + Sum + Send + Sync + 'static
{
    /// Absolute tolerance separating genuine violations from roundoff.
    fn tolerance() -> Self;

    /// Lossy conversion from `f64`, used for literals.
    #[inline]
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("count representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar convertible to f64")
    }

    /// Total order for finite values; NaN compares equal to everything.
    #[inline]
    fn cmp_finite(&self, other: &Self) -> std::cmp::Ordering {
        self.partial_cmp(other).unwrap_or(std::cmp::Ordering::Equal)
    }
}

impl Scalar for f64 {
    #[inline]
    fn tolerance() -> Self {
        1e-12
    }
}

impl Scalar for f32 {
    #[inline]
    fn tolerance() -> Self {
        // 1e-12 is below f32 resolution.
        64.0 * f32::EPSILON
    }
}
