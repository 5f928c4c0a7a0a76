//! Scalar abstraction for the geometric and sampling kernels.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, NumAssign, ToPrimitive};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

/// Floating point scalar used by paths, capsules and the spatial index: `f32` or `f64`.
///
/// Random variates are always drawn in `f64` and rounded, so an `f32` run
/// consumes the same stream positions as an `f64` run with the same seed.
pub trait Real:
    Float
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from `f64`.
    fn of(x: f64) -> Self;

    fn as_f64(self) -> f64;

    fn std_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let z: f64 = StandardNormal.sample(rng);
        Self::of(z)
    }

    /// Uniform variate on `[0, 1)`.
    fn unit_uniform<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self::of(rng.random::<f64>())
    }
}

impl Real for f32 {
    #[inline]
    fn of(x: f64) -> Self {
        x as f32
    }
    #[inline]
    fn as_f64(self) -> f64 {
        self as f64
    }
}

impl Real for f64 {
    #[inline]
    fn of(x: f64) -> Self {
        x
    }
    #[inline]
    fn as_f64(self) -> f64 {
        self
    }
}

#[inline]
pub(crate) fn dist2<F: Real>(a: &[F], b: &[F]) -> F {
    a.iter().zip(b).fold(F::zero(), |acc, (&x, &y)| {
        let d = x - y;
        acc + d * d
    })
}

#[inline]
pub(crate) fn dist<F: Real>(a: &[F], b: &[F]) -> F {
    dist2(a, b).sqrt()
}
