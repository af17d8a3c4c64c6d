//! Exact scalar fields the engine computes over.
//!
//! Everything is generic over [`Scalar`], which is implemented for rationals
//! over `i64`, `i128` and arbitrary-precision integers. The fixed-width
//! variants are convenient for small hand-checked computations; production
//! paths use [`crate::Rational`] (`BigRational`). Floating point is not a
//! `Scalar`: rank over a float field is meaningless for this problem.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, Signed, ToPrimitive};

use crate::error::Error;

/// An exact field of characteristic zero.
pub trait Scalar:
    Clone + Debug + Display + Eq + Ord + Hash + Num + Signed + Send + Sync + 'static
{
    /// `num / den`. Panics if `den == 0`.
    fn from_frac(num: i64, den: i64) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_frac(n, 1)
    }

    fn to_big(&self) -> BigRational;

    /// `None` when the value does not fit the representation.
    fn from_big(q: &BigRational) -> Option<Self>;
}

macro_rules! fixed_width_scalar {
    ($int:ty, $to:ident) => {
        impl Scalar for Ratio<$int> {
            fn from_frac(num: i64, den: i64) -> Self {
                Ratio::new(num as $int, den as $int)
            }

            fn to_big(&self) -> BigRational {
                BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
            }

            fn from_big(q: &BigRational) -> Option<Self> {
                Some(Ratio::new(q.numer().$to()?, q.denom().$to()?))
            }
        }
    };
}

fixed_width_scalar!(i64, to_i64);
fixed_width_scalar!(i128, to_i128);

impl Scalar for BigRational {
    fn from_frac(num: i64, den: i64) -> Self {
        BigRational::new(num.into(), den.into())
    }

    fn to_big(&self) -> BigRational {
        self.clone()
    }

    fn from_big(q: &BigRational) -> Option<Self> {
        Some(q.clone())
    }
}

/// Always `numerator/denominator`, also for integers (`2/1`).
pub fn format_fraction<S: Scalar>(value: &S) -> String {
    let q = value.to_big();
    format!("{}/{}", q.numer(), q.denom())
}

/// Accepts `p/q` or a bare integer `p`.
pub fn parse_fraction<S: Scalar>(text: &str) -> Result<S, Error> {
    let text = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    let q = match text.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str_radix(n.trim(), 10).map_err(|_| bad())?;
            let d = BigInt::from_str_radix(d.trim(), 10).map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            BigRational::new(n, d)
        }
        None => BigRational::from_integer(BigInt::from_str_radix(text, 10).map_err(|_| bad())?),
    };
    S::from_big(&q).ok_or_else(|| Error::Overflow(format!("{text} does not fit the scalar type")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    #[test]
    fn fraction_text_round_trip() {
        let q: BigRational = parse_fraction("-6/4").unwrap();
        assert_eq!(format_fraction(&q), "-3/2");
        let n: Rational64 = parse_fraction("7").unwrap();
        assert_eq!(format_fraction(&n), "7/1");
        assert!(parse_fraction::<BigRational>("1/0").is_err());
        assert!(parse_fraction::<BigRational>("x").is_err());
    }

    #[test]
    fn narrowing_reports_overflow() {
        let big: BigRational = parse_fraction("340282366920938463463374607431768211457").unwrap();
        assert!(Rational64::from_big(&big).is_none());
        assert!(parse_fraction::<Rational64>("340282366920938463463374607431768211457").is_err());
    }
}
