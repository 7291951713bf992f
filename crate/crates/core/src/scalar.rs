//! Exact integer scalars.
//!
//! Every computation in this crate is exact. The numeric core is generic over
//! [`ExactInt`], which is satisfied by `i64`, `i128` and [`num_bigint::BigInt`].
//! Fixed-width types use checked arithmetic and surface overflow as an error
//! instead of wrapping.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed, ToPrimitive};
use thiserror::Error;

/// An exact signed integer type usable as a coefficient or lattice scalar.
pub trait ExactInt:
    Clone
    + Debug
    + Display
    + Hash
    + Ord
    + Signed
    + Integer
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
}

impl<T> ExactInt for T where
    T: Clone
        + Debug
        + Display
        + Hash
        + Ord
        + Signed
        + Integer
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

/// Arithmetic left the range of the scalar type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("integer overflow in exact arithmetic")]
pub struct Overflow;

#[inline]
pub fn add<T: ExactInt>(a: &T, b: &T) -> Result<T, Overflow> {
    a.checked_add(b).ok_or(Overflow)
}

#[inline]
pub fn sub<T: ExactInt>(a: &T, b: &T) -> Result<T, Overflow> {
    a.checked_sub(b).ok_or(Overflow)
}

#[inline]
pub fn mul<T: ExactInt>(a: &T, b: &T) -> Result<T, Overflow> {
    a.checked_mul(b).ok_or(Overflow)
}

#[inline]
pub fn from_i64<T: ExactInt>(v: i64) -> Result<T, Overflow> {
    T::from_i64(v).ok_or(Overflow)
}

#[inline]
pub fn to_i64<T: ExactInt>(v: &T) -> Result<i64, Overflow> {
    v.to_i64().ok_or(Overflow)
}

/// Dot product with overflow checks.
pub fn dot<T: ExactInt>(a: &[T], b: &[T]) -> Result<T, Overflow> {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = T::zero();
    for (x, y) in a.iter().zip(b) {
        acc = add(&acc, &mul(x, y)?)?;
    }
    Ok(acc)
}

/// Divides a vector by the gcd of its entries (no-op on the zero vector).
pub fn primitive<T: ExactInt>(v: &mut [T]) {
    let g = v.iter().fold(T::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = x.div_floor(&g);
        }
    }
}
