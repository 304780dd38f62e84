//! Exact rational scalars.
//!
//! Every certified quantity in this crate is a `Rat`: an arbitrary-precision
//! fraction kept in lowest terms with a positive denominator. No floating
//! point enters any certified computation; floats appear only in the numeric
//! constants explorer, which is clearly segregated.

use crate::error::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

/// Exact rational number. Always in lowest terms, denominator > 0.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

impl Rat {
    /// Builds `numer/denom`. Panics if `denom == 0`.
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_int(v: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_big(numer: BigInt, denom: BigInt) -> Self {
        assert!(!denom.is_zero(), "zero denominator");
        Rat(BigRational::new(numer, denom))
    }

    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
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

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn recip(&self) -> Rat {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rat(self.0.recip())
    }

    pub fn min(self, other: Rat) -> Rat {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Rat) -> Rat {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Exact square root, if this is the square of a rational. `None` when
    /// the value is irrational or negative.
    pub fn sqrt_exact(&self) -> Option<Rat> {
        if self.is_negative() {
            return None;
        }
        let ns = self.numer().sqrt();
        let ds = self.denom().sqrt();
        if &(&ns * &ns) == self.numer() && &(&ds * &ds) == self.denom() {
            Some(Rat::from_big(ns, ds))
        } else {
            None
        }
    }

    /// Lossy conversion for the (uncertified) numeric explorer.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // BigRational prints "p/q", or just "p" when q == 1.
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<i64> for Rat {
    fn from(v: i64) -> Self {
        Rat::from_int(v)
    }
}

impl From<usize> for Rat {
    fn from(v: usize) -> Self {
        Rat(BigRational::from_integer(BigInt::from(v)))
    }
}

impl FromStr for Rat {
    type Err = Error;

    /// Accepts `p/q`, plain integers, and decimals such as `1.25` (parsed
    /// exactly as 5/4). A leading sign is allowed on the numerator.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::invalid("empty rational literal"));
        }
        if let Some((num, den)) = s.split_once('/') {
            let n = BigInt::from_str(num.trim())
                .map_err(|_| Error::invalid(format!("bad numerator in {s:?}")))?;
            let d = BigInt::from_str(den.trim())
                .map_err(|_| Error::invalid(format!("bad denominator in {s:?}")))?;
            if d.is_zero() {
                return Err(Error::invalid(format!("zero denominator in {s:?}")));
            }
            return Ok(Rat::from_big(n, d));
        }
        if let Some((int_part, frac_part)) = s.split_once('.') {
            if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::invalid(format!("bad decimal literal {s:?}")));
            }
            let negative = int_part.trim_start().starts_with('-');
            let int = if int_part.is_empty() || int_part == "-" || int_part == "+" {
                BigInt::zero()
            } else {
                BigInt::from_str(int_part)
                    .map_err(|_| Error::invalid(format!("bad decimal literal {s:?}")))?
            };
            let frac = BigInt::from_str(frac_part)
                .map_err(|_| Error::invalid(format!("bad decimal literal {s:?}")))?;
            let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
            let mut numer = int * &scale + if negative { -frac } else { frac };
            if negative && numer.is_positive() {
                // only reachable for inputs like "-0.5" where int == 0
                numer = -numer;
            }
            return Ok(Rat::from_big(numer, scale));
        }
        let n =
            BigInt::from_str(s).map_err(|_| Error::invalid(format!("bad rational literal {s:?}")))?;
        Ok(Rat(BigRational::from_integer(n)))
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((self.0).$method(rhs.0))
            }
        }
        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((&self.0).$method(rhs.0))
            }
        }
        impl $trait<&Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
    };
}

impl_binop!(Add, add);
impl_binop!(Sub, sub);
impl_binop!(Mul, mul);
impl_binop!(Div, div);

macro_rules! impl_assign {
    ($trait:ident, $method:ident) => {
        impl $trait for Rat {
            fn $method(&mut self, rhs: Rat) {
                (self.0).$method(rhs.0);
            }
        }
        impl $trait<&Rat> for Rat {
            fn $method(&mut self, rhs: &Rat) {
                (self.0).$method(&rhs.0);
            }
        }
    };
}

impl_assign!(AddAssign, add_assign);
impl_assign!(SubAssign, sub_assign);
impl_assign!(MulAssign, mul_assign);
impl_assign!(DivAssign, div_assign);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, v| acc + v)
    }
}

impl<'a> Sum<&'a Rat> for Rat {
    fn sum<I: Iterator<Item = &'a Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, v| acc + v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    #[test]
    fn normalizes_to_lowest_terms() {
        assert_eq!(r(2, 4), r(1, 2));
        assert_eq!(r(-3, -6), r(1, 2));
        assert_eq!(r(3, -6).to_string(), "-1/2");
        assert_eq!(r(4, 2).to_string(), "2");
    }

    #[test]
    fn arithmetic_is_exact() {
        assert_eq!(r(1, 3) + r(1, 6), r(1, 2));
        assert_eq!(r(1, 2) - r(1, 2), Rat::zero());
        assert_eq!(r(2, 3) * r(3, 4), r(1, 2));
        assert_eq!(r(1, 2) / r(1, 4), r(2, 1));
        assert_eq!(-r(1, 2), r(-1, 2));
        let sum: Rat = [r(1, 4), r(1, 4), r(1, 2)].into_iter().sum();
        assert_eq!(sum, Rat::one());
    }

    #[test]
    fn parses_fractions_integers_and_decimals() {
        assert_eq!("3/4".parse::<Rat>().unwrap(), r(3, 4));
        assert_eq!("-3/4".parse::<Rat>().unwrap(), r(-3, 4));
        assert_eq!("7".parse::<Rat>().unwrap(), r(7, 1));
        assert_eq!("1.25".parse::<Rat>().unwrap(), r(5, 4));
        assert_eq!("-0.5".parse::<Rat>().unwrap(), r(-1, 2));
        assert_eq!("0.125".parse::<Rat>().unwrap(), r(1, 8));
        assert!("1/0".parse::<Rat>().is_err());
        assert!("".parse::<Rat>().is_err());
        assert!("a/b".parse::<Rat>().is_err());
        assert!("1.2.3".parse::<Rat>().is_err());
    }

    #[test]
    fn sqrt_exact_detects_perfect_squares() {
        assert_eq!(r(1, 4).sqrt_exact(), Some(r(1, 2)));
        assert_eq!(r(9, 16).sqrt_exact(), Some(r(3, 4)));
        assert_eq!(r(0, 1).sqrt_exact(), Some(Rat::zero()));
        assert_eq!(r(1, 2).sqrt_exact(), None);
        assert_eq!(r(-1, 4).sqrt_exact(), None);
    }

    #[test]
    fn serde_round_trips_as_strings() {
        let v = r(22, 7);
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(json, "\"22/7\"");
        let back: Rat = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn ordering_is_numeric() {
        assert!(r(1, 3) < r(1, 2));
        assert!(r(-1, 2) < Rat::zero());
        assert_eq!(r(1, 2).max(r(2, 3)), r(2, 3));
    }
}
