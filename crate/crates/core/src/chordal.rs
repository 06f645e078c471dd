//! The chordal distance `u_K` on `K^x x K` and the coarse-graining relations
//! `(z0, z) ~ (w0, w)  iff  u_K <= 1` and `~_m  iff  u_K <= pi^(-2m)`.
//!
//! Both coordinates are measured with the single extended norm of `K`.
//! Distances are returned as exponents `t` with `u = p^t`, `u = 0` being
//! `-inf`, so the boundary cases `u = 1` compare exactly.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::literal::{field, parse_element, parse_fields};
use crate::padic::{DigitExpansion, PAdicElement, RationalExponent, ResidueElement, SpecRef};
use crate::{Error, Result};

/// A point `(z0, z)` of `K^x x K`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductPoint {
    z0: PAdicElement,
    z: PAdicElement,
}

impl ProductPoint {
    pub fn new(z0: PAdicElement, z: PAdicElement) -> Result<Self> {
        if z0.spec() != z.spec() {
            return Err(Error::SpecMismatch);
        }
        if z0.is_zero() {
            return Err(Error::ZeroFirstCoordinate);
        }
        Ok(ProductPoint { z0, z })
    }

    pub fn z0(&self) -> &PAdicElement {
        &self.z0
    }

    pub fn z(&self) -> &PAdicElement {
        &self.z
    }

    /// Parses `z0=<element>,z=<element>`.
    pub fn parse(spec: &SpecRef, s: &str) -> Result<Self> {
        let fields = parse_fields(s)?;
        Self::new(parse_element(spec, field(&fields, "z0")?)?, parse_element(spec, field(&fields, "z")?)?)
    }
}

impl fmt::Display for ProductPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z0={},z={}", self.z0, self.z)
    }
}

/// The canonical representative `(p^omega, z mod pi^(e omega))` of a class
/// `B(z0, z)`; `word` holds the digits of `z` from its valuation up to,
/// but excluding, place `e * omega` (empty on the trunk).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassRep {
    pub omega: RationalExponent,
    pub word: DigitExpansion,
}

/// A class of `~_m`: the base class refined by `m` digits of the unit
/// `z0 / p^omega` and `m` digits of `z` from place `e * omega` on.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LevelClass {
    pub base: ClassRep,
    pub m: u32,
    pub z0_word: Vec<ResidueElement>,
    pub z_word: Vec<ResidueElement>,
}

/// `max(|a|, |b|)` as a norm exponent.
pub fn sup_norm_exponent(a: &PAdicElement, b: &PAdicElement) -> Result<RationalExponent> {
    if a.spec() != b.spec() {
        return Err(Error::SpecMismatch);
    }
    Ok(a.norm_exponent().max(b.norm_exponent()))
}

/// `t` in places of `pi` with `u = p^(t/e)`; `None` encodes `u = 0`.
pub(crate) fn chordal_u_pi(a: &ProductPoint, b: &ProductPoint) -> Result<Option<i64>> {
    let d0 = a.z0.try_sub(&b.z0)?;
    let d1 = a.z.try_sub(&b.z)?;
    let v0 = a.z0.valuation_pi().ok_or(Error::ZeroFirstCoordinate)?;
    let w0 = b.z0.valuation_pi().ok_or(Error::ZeroFirstCoordinate)?;
    let sup = match (d0.valuation_pi(), d1.valuation_pi()) {
        (None, None) => return Ok(None),
        (Some(x), None) | (None, Some(x)) => x,
        (Some(x), Some(y)) => x.min(y),
    };
    // 2 * (-v(sup)) - (-v(z0)) - (-v(w0))
    Ok(Some(v0 + w0 - 2 * sup))
}

/// `t` with `u_K(z0, z; w0, w) = p^t`.
pub fn chordal_u_exponent(a: &ProductPoint, b: &ProductPoint) -> Result<RationalExponent> {
    let e = a.z0.spec().e();
    Ok(match chordal_u_pi(a, b)? {
        None => RationalExponent::NegInf,
        Some(t) => RationalExponent::from_pi(t, e),
    })
}

pub fn equivalent(a: &ProductPoint, b: &ProductPoint) -> Result<bool> {
    equivalent_m(a, b, 0)
}

/// `u_K <= pi^(-2m)`, i.e. `t <= -2m / e`.
pub fn equivalent_m(a: &ProductPoint, b: &ProductPoint, m: u32) -> Result<bool> {
    Ok(within_level(chordal_u_pi(a, b)?, m))
}

pub(crate) fn within_level(u_pi: Option<i64>, m: u32) -> bool {
    match u_pi {
        None => true,
        Some(t) => t <= -2 * i64::from(m),
    }
}

pub fn canonical_class(pt: &ProductPoint) -> Result<ClassRep> {
    let spec = pt.z0.spec();
    let level = pt.z0.valuation_pi().ok_or(Error::ZeroFirstCoordinate)?;
    Ok(ClassRep { omega: RationalExponent::from_pi(level, spec.e()), word: pt.z.digits_below(level)? })
}

/// Class of `pt` under `~_m`.
pub fn canonical_class_m(pt: &ProductPoint, m: u32) -> Result<LevelClass> {
    let base = canonical_class(pt)?;
    let level = pt.z0.valuation_pi().ok_or(Error::ZeroFirstCoordinate)?;
    let hi = level + i64::from(m);
    let z0_word = pt.z0.digits(level, hi)?.digits;
    let z_word = pt.z.digits(level, hi)?.digits;
    Ok(LevelClass { base, m, z0_word, z_word })
}
