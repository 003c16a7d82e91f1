//! Exact rational scalar used for every value, price, probability and revenue.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Arbitrary-precision rational in canonical reduced form (denominator > 0).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse {input:?} as a rational: {reason}")]
pub struct ParseRationalError {
    pub input: String,
    pub reason: &'static str,
}

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        let denom = denom.into();
        assert!(!denom.is_zero(), "zero denominator");
        Rational(BigRational::new(numer.into(), denom))
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

    /// `2^exp` for any signed exponent.
    pub fn pow2(exp: i64) -> Self {
        let mag = BigInt::one() << exp.unsigned_abs();
        if exp >= 0 {
            Rational::from_integer(mag)
        } else {
            Rational::new(1, mag)
        }
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

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        Rational(self.0.recip())
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn powi(&self, exp: i32) -> Self {
        Rational(Pow::pow(&self.0, exp))
    }

    /// Nearest `f64`; only for reporting and fast pre-comparisons.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or_else(|| {
            if self.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        })
    }

    /// Largest rational with denominator `denom` that does not exceed `x`.
    pub fn floor_f64(x: f64, denom: u64) -> Option<Self> {
        if !x.is_finite() || denom == 0 {
            return None;
        }
        let scaled = BigRational::from_float(x)? * BigRational::from_integer(BigInt::from(denom));
        Some(Rational::new(scaled.floor().to_integer(), denom))
    }

    /// Scale by `scale` and return the integer result, if exact.
    pub(crate) fn scaled_to_integer(&self, scale: &BigUint) -> Option<BigInt> {
        let prod = &self.0 * BigRational::from_integer(BigInt::from_biguint(Sign::Plus, scale.clone()));
        prod.is_integer().then(|| prod.to_integer())
    }

    pub fn min<'a>(&'a self, other: &'a Self) -> &'a Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max<'a>(&'a self, other: &'a Self) -> &'a Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Least common multiple of the denominators.
    pub fn lcm_denoms<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigUint {
        values.into_iter().fold(BigUint::one(), |acc, r| {
            acc.lcm(r.denom().magnitude())
        })
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

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    /// Accepts `"num/den"`, integers and finite decimals (`"0.125"`), all exact.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason| ParseRationalError {
            input: s.to_string(),
            reason,
        };
        let t = s.trim();
        if t.is_empty() {
            return Err(err("empty string"));
        }
        if let Some((n, d)) = t.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| err("bad numerator"))?;
            let d: BigInt = d.trim().parse().map_err(|_| err("bad denominator"))?;
            if d.is_zero() {
                return Err(err("zero denominator"));
            }
            return Ok(Rational::new(n, d));
        }
        if let Some((int, frac)) = t.split_once('.') {
            let negative = int.starts_with('-');
            let int_digits = int.trim_start_matches(['-', '+']);
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err("bad decimal fraction"));
            }
            if !int_digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err("bad decimal integer part"));
            }
            let digits = format!("{int_digits}{frac}");
            let mag: BigInt = digits.parse().map_err(|_| err("bad decimal"))?;
            let scale = BigInt::from(10u32).pow(frac.len() as u32);
            let r = Rational::new(mag, scale);
            return Ok(if negative { -r } else { r });
        }
        let n: BigInt = t.parse().map_err(|_| err("not a number"))?;
        Ok(Rational::from_integer(n))
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<u64> for Rational {
    fn from(n: u64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl From<Rational> for BigRational {
    fn from(r: Rational) -> Self {
        r.0
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
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

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl AddAssign<Rational> for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
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

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct RationalVisitor;

        impl Visitor<'_> for RationalVisitor {
            type Value = Rational;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational string like \"3/4\" or an integer")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Rational, E> {
                v.parse().map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
                Ok(Rational::from(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
                Ok(Rational::from(v))
            }
        }

        deserializer.deserialize_any(RationalVisitor)
    }
}

/// Shorthand for building rationals in code and tests: `rat(3, 4)`.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(numer, denom)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_literal_forms() {
        assert_eq!("3/6".parse::<Rational>().unwrap(), rat(1, 2));
        assert_eq!("-4".parse::<Rational>().unwrap(), rat(-4, 1));
        assert_eq!("0.125".parse::<Rational>().unwrap(), rat(1, 8));
        assert_eq!("-1.5".parse::<Rational>().unwrap(), rat(-3, 2));
        assert_eq!(" 7 / 14 ".parse::<Rational>().unwrap(), rat(1, 2));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("abc".parse::<Rational>().is_err());
        assert!("1.".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(rat(6, 4).to_string(), "3/2");
        assert_eq!(rat(8, 4).to_string(), "2");
        assert_eq!(rat(-1, 3).to_string(), "-1/3");
    }

    #[test]
    fn pow2_both_signs() {
        assert_eq!(Rational::pow2(4), rat(16, 1));
        assert_eq!(Rational::pow2(-3), rat(1, 8));
        assert_eq!(Rational::pow2(0), rat(1, 1));
    }

    #[test]
    fn floor_f64_rounds_down() {
        let r = Rational::floor_f64(std::f64::consts::LN_2, 1_000_000).unwrap();
        assert_eq!(r, rat(693_147, 1_000_000));
        assert!(Rational::floor_f64(f64::NAN, 10).is_none());
    }

    #[test]
    fn serde_uses_strings() {
        let json = serde_json::to_string(&rat(3, 2)).unwrap();
        assert_eq!(json, "\"3/2\"");
        let back: Rational = serde_json::from_str("\"3/2\"").unwrap();
        assert_eq!(back, rat(3, 2));
        let int: Rational = serde_json::from_str("5").unwrap();
        assert_eq!(int, rat(5, 1));
    }

    #[test]
    fn lcm_of_denominators() {
        let xs = [rat(1, 2), rat(1, 3), rat(3, 4)];
        assert_eq!(Rational::lcm_denoms(&xs), BigUint::from(12u32));
    }
}
