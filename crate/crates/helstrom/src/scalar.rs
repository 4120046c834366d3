use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign};

/// Floating-point scalar every computation in this crate is generic over.
///
/// Blanket-implemented for `f32` and `f64`. All tolerances and physics run
/// through this trait so the same code serves both precisions; the crate
/// root exposes `f64` aliases for the common case.
pub trait Scalar:
    Float + FromPrimitive + NumAssign + Sum<Self> + Debug + Display + Send + Sync + 'static
{
    /// Lossy view of the value for error reporting.
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Nearest representable value of an `f64` constant (tolerances, defaults).
    fn from_f64_lossy(value: f64) -> Self {
        Self::from_f64(value).expect("finite f64 constant")
    }

    /// `n` as a scalar; exact for every count this crate can allocate.
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("usize within float range")
    }
}

impl<T> Scalar for T where
    T: Float + FromPrimitive + NumAssign + Sum<T> + Debug + Display + Send + Sync + 'static
{
}

#[cfg(test)]
mod tests {
    use super::*;

    fn takes_scalar<T: Scalar>(v: T) -> f64 {
        v.as_f64()
    }

    #[test]
    fn both_float_widths_are_scalars() {
        assert_eq!(takes_scalar(1.5f32), 1.5);
        assert_eq!(takes_scalar(1.5f64), 1.5);
        assert_eq!(f64::from_count(50), 50.0);
        assert_eq!(f32::from_f64_lossy(0.5), 0.5f32);
    }
}
