//! Exact scalar fields used as polynomial coefficients.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, Signed};

/// A field of characteristic zero with exact equality.
///
/// Every identity check in this crate is a structural equality of
/// polynomials, so implementors must not round. Floating point types are
/// deliberately not implemented.
pub trait Scalar:
    Num + Signed + Clone + Eq + Hash + Debug + Display + Send + Sync + 'static
{
    fn from_i64(n: i64) -> Self;

    /// `num / den`; panics if `den == 0`.
    fn from_frac(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    /// Exact conversion from an arbitrary-precision rational, if representable.
    fn from_big_rational(q: &BigRational) -> Option<Self>;

    /// Exact conversion to an arbitrary-precision rational.
    fn to_big_rational(&self) -> BigRational;

    /// Size of the representation; elimination prefers small pivots.
    fn height(&self) -> u64;

    fn half() -> Self {
        Self::from_frac(1, 2)
    }

    fn is_one_value(&self) -> bool {
        self.is_one()
    }
}

impl Scalar for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_big_rational(q: &BigRational) -> Option<Self> {
        Some(q.clone())
    }

    fn to_big_rational(&self) -> BigRational {
        self.clone()
    }

    fn height(&self) -> u64 {
        self.numer().bits() + self.denom().bits()
    }
}

impl Scalar for Ratio<i64> {
    fn from_i64(n: i64) -> Self {
        Ratio::from_integer(n)
    }

    fn from_big_rational(q: &BigRational) -> Option<Self> {
        use num_traits::ToPrimitive;
        Some(Ratio::new(q.numer().to_i64()?, q.denom().to_i64()?))
    }

    fn to_big_rational(&self) -> BigRational {
        BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }

    fn height(&self) -> u64 {
        let bits = |v: i64| 64 - v.unsigned_abs().leading_zeros() as u64;
        bits(*self.numer()) + bits(*self.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    #[test]
    fn rationals_are_normalized() {
        let q = BigRational::from_frac(4, -6);
        assert_eq!(q, BigRational::from_frac(-2, 3));
        assert!(q.denom() > &BigInt::zero());
        assert_eq!(BigRational::from_frac(0, 5), BigRational::zero());
        assert_eq!(BigRational::zero().denom(), &BigInt::one());
    }

    #[test]
    fn small_rational_round_trips_through_big() {
        let q = Ratio::<i64>::from_frac(-7, 12);
        assert_eq!(
            Ratio::<i64>::from_big_rational(&q.to_big_rational()),
            Some(q)
        );
        assert_eq!(q.height(), BigRational::from_frac(-7, 12).height());
    }
}
