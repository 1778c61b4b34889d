//! Scalar abstraction for exact index arithmetic.
//!
//! All index and cost computations are generic over a signed integer type so
//! the same code runs on `i64` (the default, sufficient for orders up to
//! ~10^5) or `i128` when headroom is wanted. Overflow is always detected, not
//! wrapped.

use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, PrimInt, Signed};

use crate::error::{Error, Result};

/// Exact signed integer scalar used for index values and affine costs.
pub trait Int:
    PrimInt
    + Signed
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + num_integer::Integer
    + std::fmt::Display
    + std::fmt::Debug
    + std::hash::Hash
    + Send
    + Sync
    + 'static
{
    fn from_count(v: usize) -> Result<Self> {
        Self::from_usize(v).ok_or(Error::Overflow)
    }
}

impl<T> Int for T where
    T: PrimInt
        + Signed
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + FromPrimitive
        + num_integer::Integer
        + std::fmt::Display
        + std::fmt::Debug
        + std::hash::Hash
        + Send
        + Sync
        + 'static
{
}

#[inline]
pub fn add<T: Int>(a: T, b: T) -> Result<T> {
    a.checked_add(&b).ok_or(Error::Overflow)
}

#[inline]
pub fn sub<T: Int>(a: T, b: T) -> Result<T> {
    a.checked_sub(&b).ok_or(Error::Overflow)
}

#[inline]
pub fn mul<T: Int>(a: T, b: T) -> Result<T> {
    a.checked_mul(&b).ok_or(Error::Overflow)
}
