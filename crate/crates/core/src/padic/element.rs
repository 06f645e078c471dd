use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::spec::mulmod;
use super::{DigitExpansion, RationalExponent, ResidueElement, SpecRef};
use crate::{Error, Result};

/// Absolute precision of values known exactly (the exact zero).
const EXACT: i64 = i64::MAX / 4;

/// An element `x = pi^shift * sum_{j<f, k<e} c[j e + k] zeta^j pi^k` of `K`.
///
/// Nonzero elements are normalised so that the sum is a unit, hence
/// `shift` is the valuation measured in places of `pi`. Coefficients are
/// residues modulo `p^places`. `prec` is the absolute precision: the value
/// is known modulo `pi^prec`. Results never claim more than the inputs
/// guarantee: sums keep the smaller precision, products shift by the other
/// factor's valuation, and cancelled digits are padded with zeros.
#[derive(Clone)]
pub struct PAdicElement {
    spec: SpecRef,
    shift: i64,
    coeffs: Vec<u64>,
    prec: i64,
    zero: bool,
}

fn vp(mut c: u64, p: u64) -> Option<u32> {
    if c == 0 {
        return None;
    }
    let mut v = 0;
    while c.is_multiple_of(p) {
        c /= p;
        v += 1;
    }
    Some(v)
}

fn vp_i128(mut c: i128, p: i128) -> u32 {
    let mut v = 0;
    while c % p == 0 {
        c /= p;
        v += 1;
    }
    v
}

fn inverse_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (i128::from(a), i128::from(m));
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(i128::from(m)) as u64)
}

impl PAdicElement {
    fn raw(spec: &SpecRef, shift: i64, coeffs: Vec<u64>, prec: i64) -> Self {
        PAdicElement { spec: Arc::clone(spec), shift, coeffs, prec, zero: false }.normalized()
    }

    pub fn zero(spec: &SpecRef) -> Self {
        Self::zero_with_precision(spec, EXACT)
    }

    /// Zero known only modulo `pi^prec`.
    pub fn zero_with_precision(spec: &SpecRef, prec: i64) -> Self {
        PAdicElement { spec: Arc::clone(spec), shift: 0, coeffs: vec![0; spec.basis_len()], prec, zero: true }
    }

    pub fn one(spec: &SpecRef) -> Self {
        Self::pi_power(spec, 0)
    }

    /// `pi^k`.
    pub fn pi_power(spec: &SpecRef, k: i64) -> Self {
        let mut coeffs = vec![0; spec.basis_len()];
        coeffs[0] = 1;
        Self::raw(spec, k, coeffs, k + spec.relative_precision())
    }

    pub fn uniformizer(spec: &SpecRef) -> Self {
        Self::pi_power(spec, 1)
    }

    /// `p^q` for `q` in the value group `(1/e)Z`.
    pub fn p_power(spec: &SpecRef, q: RationalExponent) -> Result<Self> {
        Ok(Self::pi_power(spec, q.to_pi_checked(spec.e())?))
    }

    pub fn from_int(spec: &SpecRef, n: i128) -> Self {
        Self::from_rational(spec, n, 1).expect("nonzero denominator")
    }

    /// The image of `num / den` in `K`.
    pub fn from_rational(spec: &SpecRef, num: i128, den: i128) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        if num == 0 {
            return Ok(Self::zero(spec));
        }
        let p = i128::from(spec.p());
        let (vn, vd) = (vp_i128(num, p), vp_i128(den, p));
        let (num, den) = (num / p.pow(vn), den / p.pow(vd));
        let m = spec.modulus();
        let mut n = num.rem_euclid(i128::from(m)) as u64;
        let d = den.rem_euclid(i128::from(m)) as u64;
        let d_inv = inverse_mod(d, m).ok_or_else(|| Error::Internal("unit denominator not invertible".into()))?;
        n = mulmod(n, d_inv, m);
        let shift = (i64::from(vn) - i64::from(vd)) * i64::from(spec.e());
        let mut coeffs = vec![0; spec.basis_len()];
        coeffs[0] = n;
        Ok(Self::raw(spec, shift, coeffs, shift + spec.relative_precision()))
    }

    /// Lift of a residue digit using coordinates in `[0, p)` on powers of `zeta`.
    pub fn from_residue(spec: &SpecRef, d: ResidueElement) -> Self {
        Self::from_digits(spec, &DigitExpansion::new(0, vec![d]))
    }

    /// `sum lift(a_m) pi^m` over the digits of `dx`.
    pub fn from_digits(spec: &SpecRef, dx: &DigitExpansion) -> Self {
        let e = i64::from(spec.e());
        let places = i64::from(spec.places());
        let m = spec.modulus();
        let p = spec.p();
        let rf = spec.residue_field();
        let mut coeffs = vec![0u64; spec.basis_len()];
        for (i, d) in dx.digits.iter().enumerate() {
            if d.is_zero() {
                continue;
            }
            let (a, b) = (i as i64 / e, (i as i64 % e) as usize);
            if a >= places {
                break;
            }
            let scale = p.pow(a as u32);
            for (j, c) in rf.coeffs(*d).into_iter().enumerate() {
                let slot = &mut coeffs[j * e as usize + b];
                *slot = (*slot + mulmod(c, scale, m)) % m;
            }
        }
        let x = Self::raw(spec, dx.lo, coeffs, EXACT);
        x.with_full_precision()
    }

    fn with_full_precision(mut self) -> Self {
        if !self.zero {
            self.prec = self.shift + self.spec.relative_precision();
        }
        self
    }

    /// Pseudo-random element of valuation exactly `target`, with a nonzero
    /// leading digit followed by `precision - 1` uniform digits.
    pub fn sample(spec: &SpecRef, target: RationalExponent, seed: u64) -> Result<Self> {
        let k = target.to_pi_checked(spec.e())?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Ok(Self::sample_digits(spec, k, spec.precision() as usize, &mut rng))
    }

    /// Element with valuation index `lo` (in places of `pi`) and `len` random
    /// digits, the first of them nonzero. `len = 0` gives zero.
    pub fn sample_digits<R: Rng + ?Sized>(spec: &SpecRef, lo: i64, len: usize, rng: &mut R) -> Self {
        if len == 0 {
            return Self::zero(spec);
        }
        let q = spec.q() as u32;
        let rf = spec.residue_field();
        let mut digits = Vec::with_capacity(len);
        digits.push(rf.element(u64::from(rng.gen_range(1..q))).unwrap());
        for _ in 1..len {
            digits.push(rf.element(u64::from(rng.gen_range(0..q))).unwrap());
        }
        Self::from_digits(spec, &DigitExpansion::new(lo, digits))
    }

    pub fn spec(&self) -> &SpecRef {
        &self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    /// Absolute precision in places of `pi`.
    pub fn precision(&self) -> i64 {
        self.prec
    }

    /// Valuation in places of `pi` (`None` for zero).
    pub fn valuation_pi(&self) -> Option<i64> {
        (!self.zero).then_some(self.shift)
    }

    pub fn valuation(&self) -> RationalExponent {
        match self.valuation_pi() {
            None => RationalExponent::PosInf,
            Some(k) => RationalExponent::from_pi(k, self.spec.e()),
        }
    }

    /// `t` with `|x|_K = p^t`; `-inf` for zero.
    pub fn norm_exponent(&self) -> RationalExponent {
        -self.valuation()
    }

    pub fn is_unit(&self) -> bool {
        self.valuation_pi() == Some(0)
    }

    fn normalized(mut self) -> Self {
        let e = self.spec.e() as usize;
        let p = self.spec.p();
        let mut d = i64::MAX;
        for (idx, &c) in self.coeffs.iter().enumerate() {
            if let Some(v) = vp(c, p) {
                d = d.min(i64::from(v) * e as i64 + (idx % e) as i64);
            }
        }
        // digits at or beyond the known precision are not significant
        if d == i64::MAX || self.shift.saturating_add(d) >= self.prec {
            return Self::zero_with_precision(&self.spec, self.prec);
        }
        if d > 0 {
            let mut out = vec![0u64; self.coeffs.len()];
            for (idx, &c) in self.coeffs.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let (j, k) = (idx / e, (idx % e) as i64);
                let t = k - d;
                let a = t.div_euclid(e as i64);
                let b = t.rem_euclid(e as i64) as usize;
                // a <= 0 and p^(-a) divides c by the choice of d
                out[j * e + b] = c / p.pow((-a) as u32);
            }
            self.coeffs = out;
            self.shift += d;
        }
        self.zero = false;
        self
    }

    /// Coefficients of `self * pi^(self.shift - to)`, `to <= self.shift`.
    fn coeffs_at(&self, to: i64) -> Vec<u64> {
        let d = self.shift - to;
        debug_assert!(d >= 0);
        if d == 0 {
            return self.coeffs.clone();
        }
        let e = self.spec.e() as usize;
        let m = self.spec.modulus();
        let places = self.spec.places() as i64;
        let mut out = vec![0u64; self.coeffs.len()];
        for (idx, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let (j, k) = (idx / e, (idx % e) as i64);
            let t = k + d;
            let a = t / e as i64;
            if a >= places {
                continue;
            }
            out[j * e + (t % e as i64) as usize] = mulmod(c, self.spec.p().pow(a as u32), m);
        }
        out
    }

    fn check_spec(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.spec, &other.spec) || self.spec == other.spec {
            Ok(())
        } else {
            Err(Error::SpecMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_spec(other)?;
        let prec = self.prec.min(other.prec);
        match (self.zero, other.zero) {
            (true, true) => return Ok(Self::zero_with_precision(&self.spec, prec)),
            (true, false) => return Ok(other.clone().capped(prec)),
            (false, true) => return Ok(self.clone().capped(prec)),
            _ => {}
        }
        let s = self.shift.min(other.shift);
        let m = self.spec.modulus();
        let a = self.coeffs_at(s);
        let b = other.coeffs_at(s);
        let sum = a.iter().zip(&b).map(|(x, y)| ((u128::from(*x) + u128::from(*y)) % u128::from(m)) as u64).collect();
        Ok(Self::raw(&self.spec, s, sum, prec))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg_ref())
    }

    fn capped(mut self, prec: i64) -> Self {
        self.prec = self.prec.min(prec);
        self
    }

    fn neg_ref(&self) -> Self {
        let m = self.spec.modulus();
        let mut out = self.clone();
        for c in &mut out.coeffs {
            *c = (m - *c) % m;
        }
        out
    }

    /// Product of two coefficient vectors of units (shift 0).
    fn mul_coeffs(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let spec = &self.spec;
        let (e, f) = (spec.e() as usize, spec.f() as usize);
        let m = spec.modulus();
        let p = spec.p() % m;
        // acc[jj][kk] for zeta^jj pi^kk, jj < 2f-1, kk < 2e-1
        let mut acc = vec![vec![0u64; 2 * e - 1]; 2 * f - 1];
        for (ia, &ca) in a.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            let (ja, ka) = (ia / e, ia % e);
            for (ib, &cb) in b.iter().enumerate() {
                if cb == 0 {
                    continue;
                }
                let (jb, kb) = (ib / e, ib % e);
                let slot = &mut acc[ja + jb][ka + kb];
                *slot = (*slot + mulmod(ca, cb, m)) % m;
            }
        }
        let mut out = vec![0u64; e * f];
        for (jj, row) in acc.iter().enumerate() {
            let zp = spec.zeta_power(jj);
            for (kk, &c) in row.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                // pi^e = p
                let (c, k) = if kk >= e { (mulmod(c, p, m), kk - e) } else { (c, kk) };
                for (j, &z) in zp.iter().enumerate() {
                    if z != 0 {
                        let slot = &mut out[j * e + k];
                        *slot = (*slot + mulmod(c, z, m)) % m;
                    }
                }
            }
        }
        out
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_spec(other)?;
        let prec_from = |z: &Self, x: &Self| z.prec.saturating_add(x.valuation_pi().unwrap_or(x.prec)).min(EXACT);
        if self.zero || other.zero {
            let prec = match (self.zero, other.zero) {
                (true, false) => prec_from(self, other),
                (false, true) => prec_from(other, self),
                _ => self.prec.saturating_add(other.prec).min(EXACT),
            };
            return Ok(Self::zero_with_precision(&self.spec, prec));
        }
        let prec = prec_from(self, other).min(prec_from(other, self));
        let coeffs = self.mul_coeffs(&self.coeffs, &other.coeffs);
        let shift = self.shift + other.shift;
        Ok(Self::raw(&self.spec, shift, coeffs, prec.min(shift + self.spec.relative_precision())))
    }

    /// Residue class of the unit part.
    pub fn leading_digit(&self) -> ResidueElement {
        if self.zero {
            return ResidueElement::ZERO;
        }
        let e = self.spec.e() as usize;
        let residue: Vec<u64> = (0..self.spec.f() as usize).map(|j| self.coeffs[j * e]).collect();
        self.spec.residue_field().reduce_coeffs(&residue)
    }

    /// Multiplicative inverse, by inverting the residue and refining the unit
    /// part with Newton steps `y <- y (2 - u y)`.
    pub fn invert(&self) -> Result<Self> {
        if self.zero {
            return Err(Error::DivisionByZero);
        }
        let spec = &self.spec;
        let e = spec.e() as usize;
        let m = spec.modulus();
        let rf = spec.residue_field();
        let r_inv = rf.inv(self.leading_digit())?;
        let mut y = vec![0u64; spec.basis_len()];
        for (j, c) in rf.coeffs(r_inv).into_iter().enumerate() {
            y[j * e] = c;
        }
        let mut one = vec![0u64; spec.basis_len()];
        one[0] = 1 % m;
        let mut converged = false;
        for _ in 0..128 {
            let uy = self.mul_coeffs(&self.coeffs, &y);
            if uy == one {
                converged = true;
                break;
            }
            let two_minus: Vec<u64> = uy
                .iter()
                .enumerate()
                .map(|(i, &c)| {
                    let base = if i == 0 { 2 % m } else { 0 };
                    (base + m - c) % m
                })
                .collect();
            y = self.mul_coeffs(&y, &two_minus);
        }
        if !converged {
            return Err(Error::Internal("Newton inversion did not converge".into()));
        }
        let relative = self.prec - self.shift;
        Ok(Self::raw(spec, -self.shift, y, (-self.shift).saturating_add(relative).min(EXACT)))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.invert()?)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.spec);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Canonical digits at indices `[lo, hi)`, peeled off from the lowest
    /// place: emit the residue of the unit part, subtract its lift, repeat.
    pub fn digits(&self, lo: i64, hi: i64) -> Result<DigitExpansion> {
        if hi <= lo {
            return Ok(DigitExpansion::empty(lo));
        }
        if hi > self.prec {
            return Err(Error::PrecisionExceeded { requested: hi, available: self.prec });
        }
        let e = self.spec.e() as usize;
        let m = self.spec.modulus();
        let rf = self.spec.residue_field();
        let mut out = vec![ResidueElement::ZERO; (hi - lo) as usize];
        let mut y = self.clone();
        while !y.zero && y.shift < hi {
            let d = y.leading_digit();
            if y.shift >= lo {
                out[(y.shift - lo) as usize] = d;
            }
            for (j, c) in rf.coeffs(d).into_iter().enumerate() {
                let slot = &mut y.coeffs[j * e];
                *slot = (*slot + m - c % m) % m;
            }
            y = y.normalized();
        }
        Ok(DigitExpansion::new(lo, out))
    }

    /// Digits from the valuation up to (excluding) `hi`; empty if the
    /// valuation is at least `hi`.
    pub fn digits_below(&self, hi: i64) -> Result<DigitExpansion> {
        match self.valuation_pi() {
            Some(v) if v < hi => self.digits(v, hi),
            _ => Ok(DigitExpansion::empty(hi)),
        }
    }

    /// All carried digits from the valuation upward, trailing zeros removed.
    pub fn significant_digits(&self) -> DigitExpansion {
        match self.valuation_pi() {
            None => DigitExpansion::empty(0),
            Some(v) => {
                let hi = self.prec.min(v + self.spec.relative_precision());
                self.digits(v, hi).expect("window within precision").trimmed()
            }
        }
    }

    /// Equality of the two values modulo the coarser of their precisions.
    pub fn eq_at_precision(&self, other: &Self) -> bool {
        self.try_sub(other).map(|d| d.zero).unwrap_or(false)
    }
}

impl PartialEq for PAdicElement {
    fn eq(&self, other: &Self) -> bool {
        self.eq_at_precision(other)
    }
}

impl fmt::Debug for PAdicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.zero {
            return write!(f, "PAdicElement(0 mod pi^{})", self.prec);
        }
        write!(f, "PAdicElement(pi^{} * {:?} mod pi^{})", self.shift, self.coeffs, self.prec)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&PAdicElement> for &PAdicElement {
            type Output = PAdicElement;
            fn $method(self, rhs: &PAdicElement) -> PAdicElement {
                self.$inner(rhs).expect("operands from the same extension")
            }
        }
        impl $tr<PAdicElement> for PAdicElement {
            type Output = PAdicElement;
            fn $method(self, rhs: PAdicElement) -> PAdicElement {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &PAdicElement {
    type Output = PAdicElement;
    fn neg(self) -> PAdicElement {
        self.neg_ref()
    }
}

impl Neg for PAdicElement {
    type Output = PAdicElement;
    fn neg(self) -> PAdicElement {
        self.neg_ref()
    }
}
