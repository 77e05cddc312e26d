//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use rustfft::FftNum;

/// Real floating-point type the numerics are generic over (`f32` or `f64`).
///
/// The golden tolerances quoted throughout the tests (1e-12 and friends)
/// only make sense for `f64`; `f32` instantiations are for smoke use.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + FftNum + Debug + Display + Default + Send + Sync + 'static
{
    /// Machine epsilon scaled to something usable as a rounding floor.
    const ROUNDING: f64;

    /// Converts an `f64` literal into this scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn from_usize_lossy(x: usize) -> Self {
        Self::from_usize(x).expect("usize representable")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn sample_standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self;

    fn sample_unit<R: Rng + ?Sized>(rng: &mut R) -> Self;
}

impl Scalar for f64 {
    const ROUNDING: f64 = 1e-15;

    #[inline]
    fn sample_standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        StandardNormal.sample(rng)
    }

    #[inline]
    fn sample_unit<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.gen::<f64>()
    }
}

impl Scalar for f32 {
    const ROUNDING: f64 = 1e-6;

    #[inline]
    fn sample_standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        StandardNormal.sample(rng)
    }

    #[inline]
    fn sample_unit<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.gen::<f32>()
    }
}
