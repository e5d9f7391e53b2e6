//! Coefficient rings for exact polynomial arithmetic.
//!
//! Every computation in this crate is exact. The polynomial and engine types
//! are generic over [`Coefficient`], which is implemented for any signed
//! integer type offering checked arithmetic: `i64`, `i128` and
//! [`num_bigint::BigInt`] all qualify. Fixed-width types overflow loudly
//! (a panic naming the operation), never by wrapping.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, One, ToPrimitive, Zero};

pub trait Coefficient:
    Clone
    + Debug
    + Display
    + FromStr
    + Eq
    + Ord
    + Hash
    + Zero
    + One
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    /// Short name used in diagnostics and cache headers.
    fn type_name() -> &'static str;

    fn add_exact(&self, other: &Self) -> Self {
        self.checked_add(other)
            .unwrap_or_else(|| overflow::<Self>("addition"))
    }

    fn sub_exact(&self, other: &Self) -> Self {
        self.checked_sub(other)
            .unwrap_or_else(|| overflow::<Self>("subtraction"))
    }

    fn mul_exact(&self, other: &Self) -> Self {
        self.checked_mul(other)
            .unwrap_or_else(|| overflow::<Self>("multiplication"))
    }

    fn neg_exact(&self) -> Self {
        Self::zero().sub_exact(self)
    }

    fn from_count(count: u64) -> Self {
        Self::from_u64(count).unwrap_or_else(|| overflow::<Self>("conversion"))
    }
}

#[cold]
fn overflow<C: Coefficient>(op: &str) -> ! {
    panic!(
        "coefficient overflow in {op} over {}; rerun with a wider coefficient type",
        C::type_name()
    )
}

impl Coefficient for i64 {
    fn type_name() -> &'static str {
        "i64"
    }
}

impl Coefficient for i128 {
    fn type_name() -> &'static str {
        "i128"
    }
}

impl Coefficient for num_bigint::BigInt {
    fn type_name() -> &'static str {
        "bigint"
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    #[should_panic(expected = "coefficient overflow in multiplication over i64")]
    fn fixed_width_overflow_is_loud() {
        let big = i64::MAX / 2 + 1;
        let _ = big.mul_exact(&2);
    }

    #[test]
    fn bigint_never_overflows() {
        let big = BigInt::from(i64::MAX);
        let sq = big.mul_exact(&big);
        assert!(sq > BigInt::from(i64::MAX));
        assert_eq!(BigInt::from_count(7), BigInt::from(7));
    }
}
