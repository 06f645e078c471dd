use std::fmt;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use super::Ext;
use crate::literal::{field, format_element, parse_element, parse_fields};
use crate::padic::{PAdicElement, RationalExponent, SpecRef};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BerkType {
    #[serde(rename = "I")]
    TypeI,
    #[serde(rename = "II")]
    TypeII,
    #[serde(rename = "III")]
    TypeIII,
}

impl fmt::Display for BerkType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BerkType::TypeI => "I",
            BerkType::TypeII => "II",
            BerkType::TypeIII => "III",
        })
    }
}

/// A point of the Berkovich projective line of type I, II or III.
///
/// `Disk` is the closed disk `B(center, p^radius_exp)`; a radius exponent of
/// `-inf` is the type I point `center` itself.
#[derive(Debug, Clone)]
pub enum BerkPoint {
    Disk { center: PAdicElement, radius_exp: Ext },
    Infinity,
}

/// A point of the coarse-grained product space, written `(p^omega, center)`.
#[derive(Debug, Clone)]
pub struct WPoint {
    pub omega: Ext,
    pub center: PAdicElement,
}

fn norm_ext(x: &PAdicElement) -> Ext {
    Ext::from(x.norm_exponent())
}

fn at_infinity() -> Error {
    Error::Domain("operation is undefined at the point at infinity".into())
}

impl BerkPoint {
    pub fn disk(center: PAdicElement, radius_exp: Ext) -> Result<Self> {
        if radius_exp == Ext::PosInf {
            return Err(Error::Domain("radius exponent +inf is not a disk".into()));
        }
        Ok(BerkPoint::Disk { center, radius_exp })
    }

    /// The closed unit disk.
    pub fn gauss(spec: &SpecRef) -> Self {
        BerkPoint::Disk { center: PAdicElement::zero(spec), radius_exp: Ext::ZERO }
    }

    pub fn type_one(center: PAdicElement) -> Self {
        BerkPoint::Disk { center, radius_exp: Ext::NegInf }
    }

    pub fn center(&self) -> Option<&PAdicElement> {
        match self {
            BerkPoint::Disk { center, .. } => Some(center),
            BerkPoint::Infinity => None,
        }
    }

    pub fn radius_exp(&self) -> Option<Ext> {
        match self {
            BerkPoint::Disk { radius_exp, .. } => Some(*radius_exp),
            BerkPoint::Infinity => None,
        }
    }

    fn parts(&self) -> Result<(&PAdicElement, Ext)> {
        match self {
            BerkPoint::Disk { center, radius_exp } => Ok((center, *radius_exp)),
            BerkPoint::Infinity => Err(at_infinity()),
        }
    }

    pub fn classify(&self) -> BerkType {
        match self {
            BerkPoint::Infinity => BerkType::TypeI,
            BerkPoint::Disk { radius_exp: Ext::NegInf, .. } => BerkType::TypeI,
            BerkPoint::Disk { radius_exp, .. } if radius_exp.is_rational() => BerkType::TypeII,
            BerkPoint::Disk { .. } => BerkType::TypeIII,
        }
    }

    /// Closed-disk containment `inner ⊆ outer`.
    pub fn contains(&self, inner: &BerkPoint) -> Result<bool> {
        let (c1, r1) = self.parts()?;
        let (c2, r2) = inner.parts()?;
        Ok(r2 <= r1 && norm_ext(&c1.try_sub(c2)?) <= r1)
    }

    /// The smallest closed disk containing both, centred at `self`'s centre.
    pub fn join(&self, other: &BerkPoint) -> Result<BerkPoint> {
        let (c1, r1) = self.parts()?;
        let (c2, r2) = other.parts()?;
        let d = norm_ext(&c1.try_sub(c2)?);
        Ok(BerkPoint::Disk { center: c1.clone(), radius_exp: r1.max(r2).max(d) })
    }

    /// Equality as sets: same radius and each centre lies in the other disk.
    pub fn equivalent(&self, other: &BerkPoint) -> Result<bool> {
        match (self, other) {
            (BerkPoint::Infinity, BerkPoint::Infinity) => Ok(true),
            (BerkPoint::Infinity, _) | (_, BerkPoint::Infinity) => Ok(false),
            (BerkPoint::Disk { center: c1, radius_exp: r1 }, BerkPoint::Disk { center: c2, radius_exp: r2 }) => {
                Ok(r1 == r2 && norm_ext(&c1.try_sub(c2)?) <= *r1)
            }
        }
    }

    /// Path distance in the hyperbolic skeleton, in units of `log p`.
    pub fn rho(&self, other: &BerkPoint) -> Result<Ext> {
        for pt in [self, other] {
            if pt.classify() == BerkType::TypeI {
                return Err(Error::Domain("rho is defined on type II and III points only".into()));
            }
        }
        let t3 = self.join(other)?.radius_exp().expect("join is a disk");
        let (t1, t2) = (self.radius_exp().unwrap(), other.radius_exp().unwrap());
        Ok((t3 - t1) + (t3 - t2))
    }

    pub fn phi(&self, spec: &SpecRef) -> WPoint {
        match self {
            BerkPoint::Infinity => WPoint { omega: Ext::NegInf, center: PAdicElement::zero(spec) },
            BerkPoint::Disk { center, radius_exp } => WPoint { omega: -*radius_exp, center: center.clone() },
        }
    }

    pub fn to_json_value(&self) -> BerkPointJson {
        let kind = self.classify();
        match self {
            BerkPoint::Infinity => BerkPointJson { center: "inf".into(), radius_exp: Ext::PosInf.to_string(), kind },
            BerkPoint::Disk { center, radius_exp } => {
                BerkPointJson { center: format_element(center), radius_exp: radius_exp.to_string(), kind }
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("plain struct serializes")
    }

    pub fn from_json_value(spec: &SpecRef, v: &BerkPointJson) -> Result<Self> {
        let pt = if v.center == "inf" {
            BerkPoint::Infinity
        } else {
            BerkPoint::disk(parse_element(spec, &v.center)?, v.radius_exp.parse()?)?
        };
        if pt.classify() != v.kind {
            return Err(Error::Parse(format!("type {} does not match the radius exponent", v.kind)));
        }
        Ok(pt)
    }

    pub fn from_json(spec: &SpecRef, s: &str) -> Result<Self> {
        let v: BerkPointJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json_value(spec, &v)
    }

    /// Parses `center=<element>,rexp=<ext>` or `inf`.
    pub fn parse(spec: &SpecRef, s: &str) -> Result<Self> {
        if s.trim() == "inf" {
            return Ok(BerkPoint::Infinity);
        }
        let fields = parse_fields(s)?;
        let center = parse_element(spec, field(&fields, "center")?)?;
        BerkPoint::disk(center, field(&fields, "rexp")?.parse()?)
    }
}

/// Wire form of a [`BerkPoint`]; `type` is derived from the radius.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BerkPointJson {
    pub center: String,
    pub radius_exp: String,
    #[serde(rename = "type")]
    pub kind: BerkType,
}

impl WPoint {
    pub fn new(omega: Ext, center: PAdicElement) -> Self {
        WPoint { omega, center }
    }

    /// Same exponent and `|z - w| <= p^(-omega)`.
    pub fn equivalent(&self, other: &WPoint) -> Result<bool> {
        Ok(self.omega == other.omega && norm_ext(&self.center.try_sub(&other.center)?) <= -self.omega)
    }

    pub fn phi_inv(&self) -> BerkPoint {
        match self.omega {
            Ext::NegInf => BerkPoint::Infinity,
            omega => BerkPoint::Disk { center: self.center.clone(), radius_exp: -omega },
        }
    }

    /// Parses `omega=<ext>,center=<element>`.
    pub fn parse(spec: &SpecRef, s: &str) -> Result<Self> {
        let fields = parse_fields(s)?;
        let omega: Ext = field(&fields, "omega")?.parse()?;
        Ok(WPoint { omega, center: parse_element(spec, field(&fields, "center")?)? })
    }
}

impl fmt::Display for WPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "omega={},center={}", self.omega, format_element(&self.center))
    }
}

impl fmt::Display for BerkPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BerkPoint::Infinity => f.write_str("inf"),
            BerkPoint::Disk { center, radius_exp } => {
                write!(f, "center={},rexp={}", format_element(center), radius_exp)
            }
        }
    }
}

/// The type III point reached by walking an irrational length `w` from the
/// trunk point at exponent `q` towards `p^q * z_unit`.
pub fn type3_from_path(q: Rational64, w: Ext, z_unit: &PAdicElement) -> Result<BerkPoint> {
    if w.is_rational() || w <= Ext::ZERO || !w.is_finite() {
        return Err(Error::Domain(format!("path length {w} must be positive and irrational")));
    }
    if !z_unit.is_unit() {
        return Err(Error::Domain("direction must be a unit".into()));
    }
    let spec = z_unit.spec();
    let center = PAdicElement::p_power(spec, RationalExponent::Finite(q))?.try_mul(z_unit)?;
    Ok(WPoint { omega: w + Ext::rational(q), center }.phi_inv())
}
