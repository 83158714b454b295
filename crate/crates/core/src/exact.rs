//! Exact integer and rational arithmetic.
//!
//! Integers are [`num_bigint::BigInt`]; rationals are wrapped in [`Rational`],
//! which is always in lowest terms with a positive denominator. Both serialize
//! to JSON as decimal strings so that layer counts never pass through a
//! machine word.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithmeticError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse {0:?} as an exact number")]
    Parse(String),
}

/// Exact rational number in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `num / den`, reducing to lowest terms.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self, ArithmeticError> {
        let den = den.into();
        if den.is_zero() {
            return Err(ArithmeticError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Exact quotient; fails instead of panicking on a zero divisor.
    pub fn checked_div(&self, rhs: &Rational) -> Result<Rational, ArithmeticError> {
        if rhs.is_zero() {
            return Err(ArithmeticError::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn pow(&self, exp: u32) -> Rational {
        Rational(num_traits::pow(self.0.clone(), exp as usize))
    }

    /// Re-reduces the value. Construction already normalizes, so this is the identity.
    pub fn normalize(&self) -> Rational {
        Rational::new(self.numer().clone(), self.denom().clone()).expect("denominator is nonzero")
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0.clone())
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

/// Parses `"p"` or `"p/q"`.
impl FromStr for Rational {
    type Err = ArithmeticError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse_int = |part: &str| {
            BigInt::from_str(part.trim()).map_err(|_| ArithmeticError::Parse(s.to_string()))
        };
        match s.split_once('/') {
            Some((num, den)) => Rational::new(parse_int(num)?, parse_int(den)?),
            None => Ok(Rational::from_integer(parse_int(s)?)),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RationalRepr {
    num: String,
    den: String,
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RationalRepr { num: self.numer().to_string(), den: self.denom().to_string() }
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = RationalRepr::deserialize(deserializer)?;
        let num = BigInt::from_str(&repr.num).map_err(D::Error::custom)?;
        let den = BigInt::from_str(&repr.den).map_err(D::Error::custom)?;
        let value = Rational::new(num.clone(), den.clone()).map_err(D::Error::custom)?;
        // Only canonical forms are accepted, so that parse/serialize round-trips.
        if value.numer() != &num || value.denom() != &den {
            return Err(D::Error::custom(format!("rational {num}/{den} is not in lowest terms")));
        }
        Ok(value)
    }
}

/// Serde adapter writing a [`BigInt`] as a JSON decimal string.
pub mod decimal {
    use std::str::FromStr;

    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &BigInt, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(value)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<BigInt, D::Error> {
        let text = String::deserialize(deserializer)?;
        if text.starts_with('+') {
            return Err(serde::de::Error::custom("leading '+' is not canonical"));
        }
        BigInt::from_str(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn textbook_fractions() {
        assert_eq!(q(1, 2) + q(1, 3), q(5, 6));
        assert_eq!(q(-6, 1).checked_div(&q(1, 1)).unwrap(), q(-6, 1));
        let half = q(2, 4);
        assert_eq!((half.numer().clone(), half.denom().clone()), (BigInt::from(1), BigInt::from(2)));
    }

    #[test]
    fn denominator_sign_is_positive() {
        let x = q(3, -9);
        assert_eq!(x.numer(), &BigInt::from(-1));
        assert_eq!(x.denom(), &BigInt::from(3));
    }

    #[test]
    fn zero_divisor_is_an_error() {
        assert_eq!(Rational::new(1, 0), Err(ArithmeticError::DivisionByZero));
        assert_eq!(q(1, 2).checked_div(&Rational::zero()), Err(ArithmeticError::DivisionByZero));
    }

    #[test]
    fn big_operands_stay_exact() {
        let big: BigInt = BigInt::from(10).pow(40) + 7;
        let x = Rational::new(big.clone() * 3, 3).unwrap();
        assert_eq!(x.numer(), &big);
        assert_eq!(x.to_string(), "10000000000000000000000000000000000000007");
        let text = big.to_string();
        assert_eq!(BigInt::from_str(&text).unwrap(), big);
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("-6".parse::<Rational>().unwrap(), q(-6, 1));
        assert_eq!("10/-4".parse::<Rational>().unwrap(), q(-5, 2));
        assert_eq!(q(-5, 2).to_string(), "-5/2");
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn json_shape() {
        let json = serde_json::to_string(&q(-7, 2)).unwrap();
        assert_eq!(json, r#"{"num":"-7","den":"2"}"#);
        let back: Rational = serde_json::from_str(&json).unwrap();
        assert_eq!(back, q(-7, 2));
        assert!(serde_json::from_str::<Rational>(r#"{"num":"2","den":"4"}"#).is_err());
        assert!(serde_json::from_str::<Rational>(r#"{"num":"2","den":"0"}"#).is_err());
    }

    fn small() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..20).prop_map(|(n, d)| q(n, d))
    }

    proptest! {
        #[test]
        fn field_laws(p in small(), r in small(), s in small()) {
            prop_assert_eq!((&p + &r) + s.clone(), p.clone() + (r.clone() + s.clone()));
            prop_assert_eq!(&p * &(&r + &s), (&p * &r) + (&p * &s));
        }

        #[test]
        fn normalize_is_idempotent(n in -1000i64..1000, d in 1i64..1000) {
            let x = q(n, d);
            prop_assert_eq!(x.normalize().normalize(), x.normalize());
            prop_assert_eq!(x.normalize(), x);
        }

        #[test]
        fn division_inverts_multiplication(p in small(), r in small()) {
            prop_assume!(!r.is_zero());
            prop_assert_eq!((&p * &r).checked_div(&r).unwrap(), p);
        }
    }
}
