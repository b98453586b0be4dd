use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{Num, Signed, ToPrimitive};

/// Exact rational scalars usable as cyclotomic coefficients.
pub trait ExactRational: Num + Signed + Clone + Ord + Hash + Debug {
    fn from_i64(n: i64) -> Self;
    /// `None` when the value does not fit the scalar type.
    fn from_big(numer: &BigInt, denom: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigRational;
}

impl ExactRational for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_big(numer: &BigInt, denom: &BigInt) -> Option<Self> {
        if denom.sign() == num_bigint::Sign::NoSign {
            return None;
        }
        Some(BigRational::new(numer.clone(), denom.clone()))
    }

    fn to_big(&self) -> BigRational {
        self.clone()
    }
}

impl ExactRational for Rational64 {
    fn from_i64(n: i64) -> Self {
        Rational64::from_integer(n)
    }

    fn from_big(numer: &BigInt, denom: &BigInt) -> Option<Self> {
        let (n, d) = (numer.to_i64()?, denom.to_i64()?);
        (d != 0).then(|| Rational64::new(n, d))
    }

    fn to_big(&self) -> BigRational {
        BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
}
