use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::Zero;

use crate::{Error, Result};

/// A valuation or norm exponent: a rational number, or one of the two
/// infinities (`+inf` is the valuation of zero, `-inf` its norm exponent).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RationalExponent {
    NegInf,
    Finite(Rational64),
    PosInf,
}

impl RationalExponent {
    pub const ZERO: Self = RationalExponent::Finite(Rational64::new_raw(0, 1));

    pub fn new(num: i64, den: i64) -> Self {
        RationalExponent::Finite(Rational64::new(num, den))
    }

    pub fn integer(n: i64) -> Self {
        RationalExponent::Finite(Rational64::from_integer(n))
    }

    /// `k / e`: a position measured in places of the uniformizer.
    pub fn from_pi(k: i64, e: u32) -> Self {
        Self::new(k, i64::from(e))
    }

    pub fn finite(&self) -> Option<Rational64> {
        match self {
            RationalExponent::Finite(r) => Some(*r),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, RationalExponent::Finite(_))
    }

    /// `e * self` when that is an integer, i.e. the exponent lies in `(1/e)Z`.
    pub fn to_pi(&self, e: u32) -> Option<i64> {
        let r = self.finite()? * Rational64::from_integer(i64::from(e));
        r.is_integer().then(|| r.to_integer())
    }

    pub fn to_pi_checked(&self, e: u32) -> Result<i64> {
        self.to_pi(e).ok_or_else(|| Error::Domain(format!("exponent {self} is not in the value group (1/{e})Z")))
    }
}

impl Neg for RationalExponent {
    type Output = Self;
    fn neg(self) -> Self {
        match self {
            RationalExponent::NegInf => RationalExponent::PosInf,
            RationalExponent::PosInf => RationalExponent::NegInf,
            RationalExponent::Finite(r) => RationalExponent::Finite(-r),
        }
    }
}

/// Infinite operands absorb finite ones; `+inf + -inf` is a caller bug.
impl Add for RationalExponent {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        use RationalExponent::*;
        match (self, rhs) {
            (Finite(a), Finite(b)) => Finite(a + b),
            (NegInf, PosInf) | (PosInf, NegInf) => panic!("indeterminate sum of opposite infinities"),
            (NegInf, _) | (_, NegInf) => NegInf,
            (PosInf, _) | (_, PosInf) => PosInf,
        }
    }
}

impl Sub for RationalExponent {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl From<i64> for RationalExponent {
    fn from(n: i64) -> Self {
        Self::integer(n)
    }
}

pub(crate) fn fmt_rational(r: &Rational64) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for RationalExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RationalExponent::NegInf => f.write_str("-inf"),
            RationalExponent::PosInf => f.write_str("+inf"),
            RationalExponent::Finite(r) => f.write_str(&fmt_rational(r)),
        }
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<Rational64> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    let r = match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Rational64::new(n, d)
        }
        None => Rational64::from_integer(s.parse().map_err(|_| bad())?),
    };
    Ok(r)
}

impl RationalExponent {
    pub(crate) fn from_str_finite(s: &str) -> Result<Rational64> {
        parse_rational(s)
    }
}

impl FromStr for RationalExponent {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+inf" | "inf" => Ok(RationalExponent::PosInf),
            "-inf" => Ok(RationalExponent::NegInf),
            other => parse_rational(other).map(RationalExponent::Finite),
        }
    }
}

impl serde::Serialize for RationalExponent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for RationalExponent {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_places_infinities_at_the_ends() {
        let xs = [
            RationalExponent::NegInf,
            RationalExponent::new(-3, 2),
            RationalExponent::ZERO,
            RationalExponent::new(1, 2),
            RationalExponent::PosInf,
        ];
        assert!(xs.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn value_group_membership() {
        assert_eq!(RationalExponent::new(1, 2).to_pi(2), Some(1));
        assert_eq!(RationalExponent::new(1, 2).to_pi(1), None);
        assert_eq!(RationalExponent::PosInf.to_pi(3), None);
    }

    #[test]
    fn parse_and_display_agree() {
        for s in ["0", "-3", "1/2", "-7/3", "+inf", "-inf"] {
            let x: RationalExponent = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
        }
        assert_eq!("2/4".parse::<RationalExponent>().unwrap().to_string(), "1/2");
        assert!("1/0".parse::<RationalExponent>().is_err());
    }
}
