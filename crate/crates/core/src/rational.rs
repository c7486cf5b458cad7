//! Arbitrary-precision rational numbers, always in lowest terms with a
//! positive denominator. Serialized as `"p/q"` (or `"p"` when q = 1),
//! never as floating point.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// `p/q` in lowest terms. Fails on a zero denominator.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::InvalidParameter("zero denominator".into()));
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
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

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::InvalidParameter("reciprocal of zero".into()));
        }
        Ok(Rational(self.0.recip()))
    }

    /// The underlying integer when the denominator is 1.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.to_integer())
    }

    /// Decimal rendering of the value itself, rounded to `places` digits.
    pub fn decimal(&self, places: usize) -> String {
        let scale = BigInt::from(10u8).pow(places as u32 + 1);
        let scaled = (self.numer() * &scale) / self.denom();
        render_scaled(scaled, places)
    }

    /// Decimal rendering of the positive square root, rounded to `places`
    /// digits. The radicand itself stays exact; this string is display-only
    /// and never feeds back into a predicate.
    pub fn sqrt_decimal(&self, places: usize) -> Result<String> {
        if self.is_negative() {
            return Err(Error::InvalidParameter(format!(
                "square root of negative value {self}"
            )));
        }
        // sqrt(p/q) = sqrt(p*q)/q; two guard digits absorb the floor error
        // of the integer square root before the final rounding.
        let guard: u32 = 2;
        let scale = BigInt::from(10u8).pow(places as u32 + guard + 1);
        let n = self.numer() * self.denom() * (&scale * &scale);
        let scaled = n.sqrt() / self.denom();
        let rounding = BigInt::from(10u8).pow(guard);
        render_scaled(scaled / rounding, places)
    }
}

/// `scaled` approximates value * 10^(places+1); round the last digit half-up.
fn render_scaled(scaled: BigInt, places: usize) -> String {
    let negative = scaled.is_negative();
    let digits = (scaled.abs() + BigInt::from(5u8)) / BigInt::from(10u8);
    let base = BigInt::from(10u8).pow(places as u32);
    let int_part = &digits / &base;
    let frac_part = &digits % &base;
    let sign = if negative && (!int_part.is_zero() || !frac_part.is_zero()) {
        "-"
    } else {
        ""
    };
    if places == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part:0>places$}")
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::InvalidParameter("empty rational literal".into()));
        }
        let bad = |_| Error::InvalidParameter(format!("malformed rational literal `{s}`"));
        match s.split_once('/') {
            Some((p, q)) => {
                let numer = BigInt::from_str(p.trim()).map_err(bad)?;
                let denom = BigInt::from_str(q.trim()).map_err(bad)?;
                Rational::new(numer, denom)
            }
            None => Ok(Rational::integer(BigInt::from_str(s).map_err(bad)?)),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n)
    }
}

impl From<u64> for Rational {
    fn from(n: u64) -> Self {
        Rational::integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::integer(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero rational");
        Rational(self.0 / rhs.0)
    }
}

impl Div<&Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero rational");
        Rational(&self.0 / &rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q).unwrap()
    }

    #[test]
    fn lowest_terms_and_positive_denominator() {
        let x = r(6, -4);
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
        assert_eq!(x.to_string(), "-3/2");
    }

    #[test]
    fn display_integer_without_denominator() {
        assert_eq!(r(14, 7).to_string(), "2");
        assert_eq!(Rational::zero().to_string(), "0");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("".parse::<Rational>().is_err());
        assert!("1/0".parse::<Rational>().is_err());
        assert!("a/b".parse::<Rational>().is_err());
        assert!("1/2/3".parse::<Rational>().is_err());
    }

    #[test]
    fn sqrt_decimal_examples() {
        assert_eq!(r(1, 1).sqrt_decimal(5).unwrap(), "1.00000");
        assert_eq!(r(1, 4).sqrt_decimal(3).unwrap(), "0.500");
        // sqrt(13/41608) = 0.0176759..., rounds up at the fifth place
        assert_eq!(r(13, 41608).sqrt_decimal(5).unwrap(), "0.01768");
        assert!(r(-1, 2).sqrt_decimal(3).is_err());
    }

    #[test]
    fn decimal_rounds_half_up() {
        assert_eq!(r(1, 8).decimal(2), "0.13");
        assert_eq!(r(-1, 8).decimal(2), "-0.13");
        assert_eq!(r(5, 1).decimal(0), "5");
    }

    #[test]
    fn serde_uses_string_form() {
        let x = r(-3, 2);
        assert_eq!(serde_json::to_string(&x).unwrap(), "\"-3/2\"");
        let back: Rational = serde_json::from_str("\"-3/2\"").unwrap();
        assert_eq!(back, x);
    }

    proptest! {
        #[test]
        fn string_round_trip_is_lossless(p in -10_000_000i64..10_000_000, q in 1i64..1_000_000) {
            let x = r(p, q);
            let back: Rational = x.to_string().parse().unwrap();
            prop_assert_eq!(back, x);
        }

        #[test]
        fn field_axioms_hold_exactly(a in -1000i64..1000, b in 1i64..200, c in -1000i64..1000, d in 1i64..200) {
            let x = r(a, b);
            let y = r(c, d);
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            if !y.is_zero() {
                prop_assert_eq!(&(&x * &y) / &y, x);
            }
        }
    }
}
