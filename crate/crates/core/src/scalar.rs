//! Floating point abstraction used throughout the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar the geometry is evaluated in: `f32` or `f64`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal. Panics only if the type cannot represent finite `f64` values.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("scalar conversion from f64")
    }

    /// Converts a count.
    fn from_count(v: usize) -> Self {
        Self::from_usize(v).expect("scalar conversion from usize")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar conversion to f64")
    }

    /// Absolute comparison tolerance at unit length scale.
    fn base_tolerance() -> Self;

    /// Tolerance for lengths of scale `len`: `base_tolerance() * max(1, |len|)`.
    fn length_tolerance(len: Self) -> Self {
        Self::base_tolerance() * len.abs().max(Self::one())
    }
}

impl Scalar for f32 {
    fn base_tolerance() -> Self {
        1e-5
    }
}

impl Scalar for f64 {
    fn base_tolerance() -> Self {
        1e-12
    }
}

pub(crate) type Vec3<T> = [T; 3];

pub(crate) fn sub<T: Scalar>(a: Vec3<T>, b: Vec3<T>) -> Vec3<T> {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub(crate) fn cross<T: Scalar>(a: Vec3<T>, b: Vec3<T>) -> Vec3<T> {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub(crate) fn dot<T: Scalar>(a: Vec3<T>, b: Vec3<T>) -> T {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn norm<T: Scalar>(a: Vec3<T>) -> T {
    dot(a, a).sqrt()
}
