//! Integer scalar abstraction shared by the matrix, series and Lie code.
//!
//! Everything in this crate is exact. Fixed-width scalars use checked
//! arithmetic and panic on overflow instead of wrapping.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed, ToPrimitive};

/// A Euclidean ring of integers: `i64`, `i128` or `BigInt`.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + Eq
    + Ord
    + Hash
    + Send
    + Sync
    + Default
    + 'static
    + Integer
    + Signed
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
{
    #[inline]
    fn add_ref(&self, other: &Self) -> Self {
        self.checked_add(other).expect("integer overflow in add")
    }

    #[inline]
    fn sub_ref(&self, other: &Self) -> Self {
        self.checked_sub(other).expect("integer overflow in sub")
    }

    #[inline]
    fn mul_ref(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("integer overflow in mul")
    }

    #[inline]
    fn add_assign_ref(&mut self, other: &Self) {
        *self = self.add_ref(other);
    }

    #[inline]
    fn sub_assign_ref(&mut self, other: &Self) {
        *self = self.sub_ref(other);
    }

    #[inline]
    fn of_i64(v: i64) -> Self {
        <Self as FromPrimitive>::from_i64(v).expect("scalar conversion")
    }

    /// Lossless conversion into an arbitrary-precision integer.
    fn to_bigint(&self) -> BigInt;

    /// Conversion from an arbitrary-precision integer; `None` when out of range.
    fn from_bigint(v: &BigInt) -> Option<Self>;

    /// Convert between scalar types, panicking if the value does not fit.
    fn convert<U: Scalar>(&self) -> U {
        U::from_bigint(&self.to_bigint()).expect("scalar does not fit target type")
    }
}

impl Scalar for i64 {
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn from_bigint(v: &BigInt) -> Option<Self> {
        v.to_i64()
    }
}

impl Scalar for i128 {
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn from_bigint(v: &BigInt) -> Option<Self> {
        v.to_i128()
    }
}

impl Scalar for BigInt {
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
    fn from_bigint(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
}
