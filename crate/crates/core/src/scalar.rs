use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Exact signed integer type used for weight coordinates.
///
/// Blanket-implemented; `i32`, `i64`, `i128` and `BigInt` all qualify.
pub trait Scalar:
    Integer + Signed + Clone + Hash + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    fn from_count(k: usize) -> Self {
        Self::from_usize(k).expect("count fits in scalar type")
    }

    fn two() -> Self {
        Self::one() + Self::one()
    }

    /// Residue mod 2 in `{0, 1}`, also for negative values.
    fn parity(&self) -> u8 {
        if self.is_even() {
            0
        } else {
            1
        }
    }
}

impl<T> Scalar for T where
    T: Integer + Signed + Clone + Hash + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}
