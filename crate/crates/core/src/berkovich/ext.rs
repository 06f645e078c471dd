use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{Signed, Zero};

use crate::padic::RationalExponent;
use crate::{Error, Result};

/// An element of the ordered field `{a + b sqrt2 : a, b in Q}` extended by
/// `-inf` and `+inf`. Used for radius exponents, where `b != 0` marks a
/// radius outside the value group `Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ext {
    NegInf,
    Finite { a: Rational64, b: Rational64 },
    PosInf,
}

/// Sign of `x + y sqrt2` by cases, squaring only when the signs differ.
fn sign_surd(x: Rational64, y: Rational64) -> Ordering {
    // clear denominators; both are positive so signs are unchanged
    let xn = BigInt::from(*x.numer()) * BigInt::from(*y.denom());
    let yn = BigInt::from(*y.numer()) * BigInt::from(*x.denom());
    let zero = BigInt::zero();
    match (xn.cmp(&zero), yn.cmp(&zero)) {
        (Ordering::Equal, s) | (s, Ordering::Equal) => s,
        (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
        (Ordering::Less, Ordering::Less) => Ordering::Less,
        (Ordering::Greater, Ordering::Less) => (&xn * &xn).cmp(&(BigInt::from(2) * &yn * &yn)),
        (Ordering::Less, Ordering::Greater) => (BigInt::from(2) * &yn * &yn).cmp(&(&xn * &xn)),
    }
}

impl Ext {
    pub const ZERO: Ext = Ext::Finite { a: Rational64::new_raw(0, 1), b: Rational64::new_raw(0, 1) };

    pub fn new(a: Rational64, b: Rational64) -> Self {
        Ext::Finite { a, b }
    }

    pub fn rational(a: Rational64) -> Self {
        Ext::Finite { a, b: Rational64::zero() }
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(Rational64::from_integer(n))
    }

    pub fn sqrt2() -> Self {
        Ext::Finite { a: Rational64::zero(), b: Rational64::from_integer(1) }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Ext::Finite { .. })
    }

    /// Finite with no `sqrt2` part.
    pub fn is_rational(&self) -> bool {
        matches!(self, Ext::Finite { b, .. } if b.is_zero())
    }

    pub fn as_rational(&self) -> Option<Rational64> {
        match self {
            Ext::Finite { a, b } if b.is_zero() => Some(*a),
            _ => None,
        }
    }

    pub fn checked_add(self, rhs: Ext) -> Result<Ext> {
        match (self, rhs) {
            (Ext::Finite { a, b }, Ext::Finite { a: c, b: d }) => Ok(Ext::Finite { a: a + c, b: b + d }),
            (Ext::NegInf, Ext::PosInf) | (Ext::PosInf, Ext::NegInf) => {
                Err(Error::Domain("sum of opposite infinities".into()))
            }
            (Ext::NegInf, _) | (_, Ext::NegInf) => Ok(Ext::NegInf),
            _ => Ok(Ext::PosInf),
        }
    }

    pub fn checked_sub(self, rhs: Ext) -> Result<Ext> {
        self.checked_add(-rhs)
    }

    /// `n * self` for an integer `n >= 0`; `0 * inf` is 0.
    pub fn scale(self, n: i64) -> Ext {
        if n == 0 {
            return Ext::ZERO;
        }
        match self {
            Ext::Finite { a, b } => {
                let n = Rational64::from_integer(n);
                Ext::Finite { a: a * n, b: b * n }
            }
            inf if n > 0 => inf,
            inf => -inf,
        }
    }

    pub fn abs(self) -> Ext {
        if self < Ext::ZERO {
            -self
        } else {
            self
        }
    }

    /// Sign of the finite value, as an ordering against zero.
    pub fn signum(&self) -> Ordering {
        self.cmp(&Ext::ZERO)
    }
}

impl Ord for Ext {
    fn cmp(&self, other: &Self) -> Ordering {
        use Ext::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Finite { a, b }, Finite { a: c, b: d }) => sign_surd(a - c, b - d),
        }
    }
}

impl PartialOrd for Ext {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Neg for Ext {
    type Output = Ext;
    fn neg(self) -> Ext {
        match self {
            Ext::NegInf => Ext::PosInf,
            Ext::PosInf => Ext::NegInf,
            Ext::Finite { a, b } => Ext::Finite { a: -a, b: -b },
        }
    }
}

/// Panics on `+inf + -inf`; use [`Ext::checked_add`] where that can occur.
impl Add for Ext {
    type Output = Ext;
    fn add(self, rhs: Ext) -> Ext {
        self.checked_add(rhs).expect("indeterminate sum")
    }
}

impl Sub for Ext {
    type Output = Ext;
    fn sub(self, rhs: Ext) -> Ext {
        self + (-rhs)
    }
}

impl From<RationalExponent> for Ext {
    fn from(r: RationalExponent) -> Ext {
        match r {
            RationalExponent::NegInf => Ext::NegInf,
            RationalExponent::PosInf => Ext::PosInf,
            RationalExponent::Finite(a) => Ext::rational(a),
        }
    }
}

impl From<Rational64> for Ext {
    fn from(a: Rational64) -> Ext {
        Ext::rational(a)
    }
}

fn fmt_q(r: Rational64) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn fmt_surd_coeff(b: Rational64) -> String {
    if b == Rational64::from_integer(1) {
        "sqrt2".to_string()
    } else {
        format!("{}*sqrt2", fmt_q(b))
    }
}

/// `a`, `b*sqrt2`, or `a + b*sqrt2` / `a - b*sqrt2`, with `sqrt2` for `b = 1`.
impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::NegInf => f.write_str("-inf"),
            Ext::PosInf => f.write_str("+inf"),
            Ext::Finite { a, b } if b.is_zero() => f.write_str(&fmt_q(*a)),
            Ext::Finite { a, b } if a.is_zero() => {
                if b.is_negative() {
                    write!(f, "-{}", fmt_surd_coeff(-*b))
                } else {
                    f.write_str(&fmt_surd_coeff(*b))
                }
            }
            Ext::Finite { a, b } => {
                let op = if b.is_negative() { '-' } else { '+' };
                write!(f, "{} {op} {}", fmt_q(*a), fmt_surd_coeff(b.abs()))
            }
        }
    }
}

fn parse_q(s: &str) -> Result<Rational64> {
    RationalExponent::from_str_finite(s)
}

fn parse_surd_term(t: &str) -> Result<Rational64> {
    let (sign, body) = match t.as_bytes().first() {
        Some(b'-') => (-1, &t[1..]),
        Some(b'+') => (1, &t[1..]),
        _ => (1, t),
    };
    let coeff = match body.strip_suffix("sqrt2") {
        Some("") => Rational64::from_integer(1),
        Some(c) => parse_q(c.strip_suffix('*').ok_or_else(|| Error::Parse(format!("expected `*sqrt2` in `{t}`")))?)?,
        None => return Err(Error::Parse(format!("expected a sqrt2 term, got `{t}`"))),
    };
    Ok(coeff * Rational64::from_integer(sign))
}

impl FromStr for Ext {
    type Err = Error;
    fn from_str(s: &str) -> Result<Ext> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        match t.as_str() {
            "-inf" => return Ok(Ext::NegInf),
            "+inf" | "inf" => return Ok(Ext::PosInf),
            "" => return Err(Error::Parse("empty exponent".into())),
            _ => {}
        }
        if !t.contains("sqrt2") {
            return parse_q(&t).map(Ext::rational);
        }
        // the rational part has at most a leading sign, so the first later
        // sign separates the two terms
        let split = t.char_indices().skip(1).find(|(_, c)| *c == '+' || *c == '-').map(|(i, _)| i);
        match split {
            Some(i) => Ok(Ext::new(parse_q(&t[..i])?, parse_surd_term(&t[i..])?)),
            None => Ok(Ext::new(Rational64::zero(), parse_surd_term(&t)?)),
        }
    }
}

impl serde::Serialize for Ext {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Ext {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
