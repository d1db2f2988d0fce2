//! Scalar abstraction for the numeric engine.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign};

/// Floating-point scalar the numeric engine is generic over.
///
/// `f64` is the working type (all default tolerances assume it); `f32`
/// satisfies the bounds and is useful for cheap smoke checks.
pub trait Real:
    Float + FromPrimitive + NumAssign + Sum + Send + Sync + Debug + Display + 'static
{
    /// Lossy conversion from `f64`, used for tolerances and rational data.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 conversion")
    }
}

impl Real for f32 {}
impl Real for f64 {}
