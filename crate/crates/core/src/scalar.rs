//! Scalar abstractions shared by the exact and floating-point code paths.

use std::fmt::Debug;

use num_traits::{Float, FromPrimitive, Num, Signed, ToPrimitive};

/// A field scalar: `f32`, `f64` or an exact rational.
pub trait Scalar: Clone + Debug + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive {
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("integer representable in scalar")
    }

    /// `num / den` computed in the scalar's own arithmetic.
    fn ratio(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Scalar for T where T: Clone + Debug + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive {}

/// A real floating-point scalar for the analytic kernels.
pub trait RealScalar: Scalar + Float + Send + Sync {
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal representable")
    }
}

impl<T> RealScalar for T where T: Scalar + Float + Send + Sync {}
