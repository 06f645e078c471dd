use std::fmt;

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{BerkPoint, Ext};
use crate::literal::format_element;
use crate::padic::{PAdicElement, SpecRef};
use crate::{Error, Result};

/// A polynomial `sum c_i T^i` over `K`, stored low degree first with no
/// trailing zero coefficients.
#[derive(Debug, Clone)]
pub struct Polynomial {
    spec: SpecRef,
    coeffs: Vec<PAdicElement>,
}

impl Polynomial {
    pub fn new(spec: &SpecRef, coeffs: Vec<PAdicElement>) -> Self {
        let mut out = Polynomial { spec: spec.clone(), coeffs };
        out.trim();
        out
    }

    pub fn zero(spec: &SpecRef) -> Self {
        Polynomial { spec: spec.clone(), coeffs: Vec::new() }
    }

    pub fn constant(c: PAdicElement) -> Self {
        let spec = c.spec().clone();
        Self::new(&spec, vec![c])
    }

    /// The identity polynomial `T`.
    pub fn t(spec: &SpecRef) -> Self {
        Self::new(spec, vec![PAdicElement::zero(spec), PAdicElement::one(spec)])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(PAdicElement::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[PAdicElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = PAdicElement::zero(&self.spec);
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&zero);
                let b = other.coeffs.get(i).unwrap_or(&zero);
                a.try_add(b)
            })
            .collect::<Result<_>>()?;
        Ok(Polynomial::new(&self.spec, coeffs))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.spec));
        }
        let mut coeffs = vec![PAdicElement::zero(&self.spec); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].try_add(&a.try_mul(b)?)?;
            }
        }
        Ok(Polynomial::new(&self.spec, coeffs))
    }

    /// Horner evaluation.
    pub fn eval(&self, z: &PAdicElement) -> Result<PAdicElement> {
        let mut acc = PAdicElement::zero(&self.spec);
        for c in self.coeffs.iter().rev() {
            acc = acc.try_mul(z)?.try_add(c)?;
        }
        Ok(acc)
    }

    /// Coefficients of `f` expanded in powers of `T - a`.
    pub fn taylor_shift(&self, a: &PAdicElement) -> Result<Polynomial> {
        // repeated synthetic division by (T - a)
        let mut c = self.coeffs.clone();
        let n = c.len();
        for k in 0..n {
            for j in (k..n - 1).rev() {
                c[j] = c[j].try_add(&c[j + 1].try_mul(a)?)?;
            }
        }
        Ok(Polynomial::new(&self.spec, c))
    }

    /// Coefficients with valuation at least `lo` places and `len` digits,
    /// degree exactly `deg`.
    pub fn sample<R: Rng + ?Sized>(spec: &SpecRef, deg: usize, lo: i64, rng: &mut R) -> Polynomial {
        let len = spec.precision() as usize;
        let coeffs = (0..=deg)
            .map(|i| {
                if i < deg && rng.gen_bool(0.2) {
                    PAdicElement::zero(spec)
                } else {
                    PAdicElement::sample_digits(spec, lo + rng.gen_range(0..3), len, rng)
                }
            })
            .collect();
        Polynomial::new(spec, coeffs)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({})", format_element(c)),
                1 => format!("({})*T", format_element(c)),
                _ => format!("({})*T^{i}", format_element(c)),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

/// Exponent `t` with `|f|_B = p^t` for the disk `B`, computed from the
/// expansion of `f` around the disk's centre.
pub fn gauss_seminorm(f: &Polynomial, pt: &BerkPoint) -> Result<Ext> {
    let BerkPoint::Disk { center, radius_exp } = pt else {
        return Err(Error::Domain("seminorm at the point at infinity".into()));
    };
    if *radius_exp == Ext::NegInf {
        return Ok(Ext::from(f.eval(center)?.norm_exponent()));
    }
    let shifted = f.taylor_shift(center)?;
    Ok(shifted
        .coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| Ext::from(c.norm_exponent()) + radius_exp.scale(i as i64))
        .max()
        .unwrap_or(Ext::NegInf))
}

/// Largest `|f(z)|` over `n_samples` seeded points `z` of the disk.
///
/// The first sample is the centre; about half of the rest lie on the
/// outermost sphere of the disk that `K` can reach.
pub fn seminorm_sampled_sup(f: &Polynomial, pt: &BerkPoint, n_samples: usize, seed: u64) -> Result<Ext> {
    let BerkPoint::Disk { center, radius_exp } = pt else {
        return Err(Error::Domain("seminorm at the point at infinity".into()));
    };
    if f.is_zero() {
        return Ok(Ext::NegInf);
    }
    if *radius_exp == Ext::NegInf || n_samples <= 1 {
        return Ok(Ext::from(f.eval(center)?.norm_exponent()));
    }
    let r = radius_exp
        .as_rational()
        .ok_or_else(|| Error::Domain(format!("cannot sample a disk of irrational radius exponent {radius_exp}")))?;
    let spec = f.spec.clone();
    // smallest valuation in places of pi that stays inside the disk
    let e = i64::from(spec.e());
    let lo = (-r * Rational64::from_integer(e)).ceil().to_integer();
    let len = spec.precision() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = Ext::from(f.eval(center)?.norm_exponent());
    for i in 1..n_samples {
        let depth = if i % 2 == 1 { 0 } else { rng.gen_range(0..=2 * e) };
        let delta = PAdicElement::sample_digits(&spec, lo + depth, len, &mut rng);
        let z = center.try_add(&delta)?;
        best = best.max(Ext::from(f.eval(&z)?.norm_exponent()));
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::make_extension;

    fn q3() -> SpecRef {
        make_extension(3, 1, 1, 12).unwrap()
    }

    fn int(spec: &SpecRef, n: i128) -> PAdicElement {
        PAdicElement::from_int(spec, n)
    }

    #[test]
    fn identity_on_gauss_point() {
        let s = q3();
        assert_eq!(gauss_seminorm(&Polynomial::t(&s), &BerkPoint::gauss(&s)).unwrap(), Ext::ZERO);
    }

    #[test]
    fn dominant_quadratic() {
        let s = q3();
        let f = Polynomial::new(&s, vec![int(&s, 0), int(&s, 1), int(&s, 3)]);
        let b = BerkPoint::disk(int(&s, 0), Ext::integer(1)).unwrap();
        assert_eq!(gauss_seminorm(&f, &b).unwrap(), Ext::integer(1));
        assert_eq!(seminorm_sampled_sup(&f, &b, 16, 7).unwrap(), Ext::integer(1));
        let third = PAdicElement::from_rational(&s, 1, 3).unwrap();
        assert_eq!(f.eval(&third).unwrap().norm_exponent().to_string(), "1");
    }

    #[test]
    fn constants_and_zero() {
        let s = q3();
        let c = Polynomial::constant(int(&s, 18));
        for b in [BerkPoint::gauss(&s), BerkPoint::disk(int(&s, 4), Ext::sqrt2()).unwrap()] {
            assert_eq!(gauss_seminorm(&c, &b).unwrap(), Ext::integer(-2));
            assert_eq!(gauss_seminorm(&Polynomial::zero(&s), &b).unwrap(), Ext::NegInf);
        }
        assert_eq!(seminorm_sampled_sup(&Polynomial::zero(&s), &BerkPoint::gauss(&s), 5, 0).unwrap(), Ext::NegInf);
    }

    #[test]
    fn type_one_point_is_evaluation() {
        let s = q3();
        let f = Polynomial::new(&s, vec![int(&s, -4), int(&s, 1)]);
        let at4 = BerkPoint::type_one(int(&s, 4));
        assert_eq!(gauss_seminorm(&f, &at4).unwrap(), Ext::NegInf);
        let at13 = BerkPoint::type_one(int(&s, 13));
        assert_eq!(gauss_seminorm(&f, &at13).unwrap(), Ext::integer(-2));
    }

    #[test]
    fn taylor_shift_recovers_values() {
        let s = q3();
        let f = Polynomial::new(&s, vec![int(&s, 2), int(&s, -1), int(&s, 5), int(&s, 1)]);
        let a = int(&s, 7);
        let g = f.taylor_shift(&a).unwrap();
        assert_eq!(g.coeffs()[0], f.eval(&a).unwrap());
        let z = int(&s, 11);
        let shifted_arg = z.try_sub(&a).unwrap();
        assert_eq!(g.eval(&shifted_arg).unwrap(), f.eval(&z).unwrap());
    }

    #[test]
    fn irrational_radius_rejected_by_sampler() {
        let s = q3();
        let b = BerkPoint::disk(int(&s, 0), Ext::sqrt2()).unwrap();
        assert!(seminorm_sampled_sup(&Polynomial::t(&s), &b, 4, 0).is_err());
    }
}
