//! Scalar abstractions shared by the probability and rate computations.

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive, Zero};
use rand::distr::uniform::SampleUniform;

/// Floating point scalar used for geometry, probabilities and rates: f32 or f64.
pub trait Real:
    Float + FloatConst + FromPrimitive + SampleUniform + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal. Panics only if the target cannot represent finite f64 values.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("finite literal")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// A nonnegative symbol weight for Huffman construction.
///
/// Integer counts (`u32`, `u64`, `usize`), floats, and exact rationals such as
/// `num_rational::Ratio<u64>` all qualify.
pub trait Weight:
    Copy + PartialOrd + Zero + Add<Output = Self> + Mul<Output = Self> + FromPrimitive + ToPrimitive + Debug
{
}

impl<W> Weight for W where
    W: Copy + PartialOrd + Zero + Add<Output = W> + Mul<Output = W> + FromPrimitive + ToPrimitive + Debug
{
}

pub(crate) fn to_f64<W: ToPrimitive>(w: W) -> f64 {
    w.to_f64().unwrap_or(f64::NAN)
}
