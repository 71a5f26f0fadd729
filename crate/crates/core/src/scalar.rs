//! Scalar traits shared by the geometry and linear-algebra layers.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::Neg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Num, Signed, ToPrimitive};

/// Integer coordinate type.
///
/// Fixed-width implementors surface overflow through the checked operations;
/// `BigInt` never overflows.
pub trait Coord:
    Clone
    + Ord
    + Hash
    + Debug
    + Display
    + Integer
    + Signed
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    fn to_bigint(&self) -> BigInt;
    fn from_bigint(value: &BigInt) -> Option<Self>;
}

macro_rules! fixed_coord {
    ($($t:ty),*) => {$(
        impl Coord for $t {
            #[inline]
            fn to_bigint(&self) -> BigInt {
                BigInt::from(*self)
            }
            #[inline]
            fn from_bigint(value: &BigInt) -> Option<Self> {
                <$t>::try_from(value).ok()
            }
        }
    )*};
}

fixed_coord!(i32, i64, i128);

impl Coord for BigInt {
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
    fn from_bigint(value: &BigInt) -> Option<Self> {
        Some(value.clone())
    }
}

/// Exact field used by the elimination routines.
pub trait ExactField: Num + Clone + Neg<Output = Self> + Debug + Display + Send + Sync + 'static {}

impl<T> ExactField for Ratio<T> where
    T: Clone + Integer + Signed + Debug + Display + Send + Sync + 'static
{
}

/// Converts an integer coordinate into an exact rational of the same base type.
pub fn ratio_of<T: Coord>(value: T) -> Ratio<T> {
    Ratio::from_integer(value)
}

/// Converts a rational over any coordinate type into a big rational.
pub fn to_big_ratio<T: Coord>(value: &Ratio<T>) -> Ratio<BigInt> {
    Ratio::new(value.numer().to_bigint(), value.denom().to_bigint())
}
