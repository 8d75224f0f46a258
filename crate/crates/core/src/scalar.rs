//! Scalar traits the engine is generic over.
//!
//! Exact work (series, Bailey pairs, identities) runs over any fixed-width
//! signed integer with checked arithmetic; the Tauberian harness runs over
//! `f32` or `f64`.

use std::fmt::{Debug, Display};

use num_traits::{CheckedAdd, CheckedMul, CheckedNeg, CheckedSub, Float, PrimInt, Signed};

use crate::error::{Error, Result};

/// Integer coefficient ring for truncated series: `i32`, `i64`, `i128`.
pub trait Coefficient:
    PrimInt
    + Signed
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + CheckedNeg
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Lossless conversion from a small literal.
    fn lit(v: i64) -> Result<Self> {
        <Self as num_traits::NumCast>::from(v).ok_or(Error::Overflow { op: "literal" })
    }

    fn is_unit(self) -> bool {
        self == Self::one() || self == -Self::one()
    }
}

impl<T> Coefficient for T where
    T: PrimInt
        + Signed
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + CheckedNeg
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}

/// Floating-point type for the numeric harness.
pub trait Real: Float + Debug + Display + Send + Sync + 'static {
    fn from_f64(v: f64) -> Self {
        <Self as num_traits::NumCast>::from(v).expect("f64 literal representable")
    }

    fn from_i64(v: i64) -> Self {
        <Self as num_traits::NumCast>::from(v).expect("integer representable as float")
    }
}

impl Real for f32 {}
impl Real for f64 {}

pub(crate) fn checked_add<C: Coefficient>(a: C, b: C, op: &'static str) -> Result<C> {
    a.checked_add(&b).ok_or(Error::Overflow { op })
}

pub(crate) fn checked_mul<C: Coefficient>(a: C, b: C, op: &'static str) -> Result<C> {
    a.checked_mul(&b).ok_or(Error::Overflow { op })
}

pub(crate) fn checked_sub<C: Coefficient>(a: C, b: C, op: &'static str) -> Result<C> {
    a.checked_sub(&b).ok_or(Error::Overflow { op })
}

pub(crate) fn checked_neg<C: Coefficient>(a: C, op: &'static str) -> Result<C> {
    a.checked_neg().ok_or(Error::Overflow { op })
}
