//! Scalar abstraction: the whole library is generic over an IEEE float type.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive};

/// Floating-point scalar the numerics run on (`f32` or `f64`).
pub trait Real: Float + FromPrimitive + Debug + Display + Send + Sync + 'static {}

impl<T> Real for T where T: Float + FromPrimitive + Debug + Display + Send + Sync + 'static {}

/// Shorthand for converting literals and tolerances into the working scalar.
#[inline]
pub fn real<R: Real>(x: f64) -> R {
    R::from_f64(x).expect("f64 literal must convert into the scalar type")
}

/// Convert a small unsigned integer (grid index, degree) into the scalar.
#[inline]
pub fn real_usize<R: Real>(n: usize) -> R {
    R::from_usize(n).expect("usize must convert into the scalar type")
}
