//! The exact integer abstraction shared by all counting code.
//!
//! Every routine that produces a count is generic over [`Scalar`]. Fixed-width
//! implementors (`i64`, `i128`) use checked arithmetic and surface overflow as
//! [`Error::Overflow`]; [`BigInt`] never overflows. [`with_fallback`] runs a
//! computation on the 128-bit fast path and retries with `BigInt` on overflow.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed, ToPrimitive};

use crate::error::{Error, Result};

pub trait Scalar:
    Integer
    + Signed
    + Clone
    + Debug
    + Display
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
}

impl Scalar for i64 {
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for i128 {
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

pub(crate) fn lift<T: Scalar>(v: i64) -> Result<T> {
    T::from_i64(v).ok_or(Error::Overflow("conversion"))
}

pub(crate) fn lift_u64<T: Scalar>(v: u64) -> Result<T> {
    T::from_u64(v).ok_or(Error::Overflow("conversion"))
}

pub(crate) fn add<T: Scalar>(a: &T, b: &T) -> Result<T> {
    a.checked_add(b).ok_or(Error::Overflow("addition"))
}

pub(crate) fn sub<T: Scalar>(a: &T, b: &T) -> Result<T> {
    a.checked_sub(b).ok_or(Error::Overflow("subtraction"))
}

pub(crate) fn mul<T: Scalar>(a: &T, b: &T) -> Result<T> {
    a.checked_mul(b).ok_or(Error::Overflow("multiplication"))
}

/// Divides `a` by `b`, failing unless the division is exact.
pub fn div_exact<T: Scalar>(a: &T, b: &T) -> Result<T> {
    if b.is_zero() {
        return Err(Error::InexactDivision {
            numerator: a.to_string(),
            denominator: b.to_string(),
        });
    }
    let (q, r) = a.div_rem(b);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::InexactDivision {
            numerator: a.to_string(),
            denominator: b.to_string(),
        })
    }
}

/// Runs `fast` and, only if it overflowed, `exact`.
pub fn with_fallback<F, G>(fast: F, exact: G) -> Result<BigInt>
where
    F: FnOnce() -> Result<i128>,
    G: FnOnce() -> Result<BigInt>,
{
    match fast() {
        Ok(v) => Ok(BigInt::from(v)),
        Err(Error::Overflow(_)) => exact(),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_width_overflow_is_an_error() {
        assert_eq!(mul(&i64::MAX, &2), Err(Error::Overflow("multiplication")));
        assert_eq!(add(&i128::MAX, &1), Err(Error::Overflow("addition")));
    }

    #[test]
    fn exact_division() {
        assert_eq!(div_exact(&12i64, &4), Ok(3));
        assert!(matches!(div_exact(&13i64, &4), Err(Error::InexactDivision { .. })));
        assert!(matches!(div_exact(&1i64, &0), Err(Error::InexactDivision { .. })));
    }

    #[test]
    fn fallback_only_on_overflow() {
        let v = with_fallback(|| Err(Error::Overflow("x")), || Ok(BigInt::from(7))).unwrap();
        assert_eq!(v, BigInt::from(7));
        let e = with_fallback(|| Err(Error::domain("bad")), || Ok(BigInt::from(7)));
        assert!(matches!(e, Err(Error::DomainViolation(_))));
    }
}
