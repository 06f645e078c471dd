use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// An element of `F_q`, `q = p^f`, packed as `sum c_j p^j` where `c_j` are
/// its coordinates in the basis `1, zeta, ..., zeta^(f-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ResidueElement(u32);

impl ResidueElement {
    pub const ZERO: ResidueElement = ResidueElement(0);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for ResidueElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `F_p[x] / (g)` for a monic irreducible `g` of degree `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueField {
    p: u64,
    f: u32,
    /// Monic modulus, low degree first, length `f + 1`.
    poly: Vec<u64>,
}

impl ResidueField {
    pub(crate) fn new(p: u64, f: u32, poly: Vec<u64>) -> Self {
        debug_assert_eq!(poly.len(), f as usize + 1);
        ResidueField { p, f, poly }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.f
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.f)
    }

    pub fn modulus(&self) -> &[u64] {
        &self.poly
    }

    pub fn zero(&self) -> ResidueElement {
        ResidueElement(0)
    }

    pub fn one(&self) -> ResidueElement {
        ResidueElement(1)
    }

    /// All `q` elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = ResidueElement> {
        (0..self.order() as u32).map(ResidueElement)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = ResidueElement> {
        (1..self.order() as u32).map(ResidueElement)
    }

    pub fn element(&self, index: u64) -> Result<ResidueElement> {
        if index >= self.order() {
            return Err(Error::invalid("residue index", format!("{index} >= {}", self.order())));
        }
        Ok(ResidueElement(index as u32))
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<ResidueElement> {
        if coeffs.len() != self.f as usize {
            return Err(Error::invalid(
                "residue digit",
                format!("expected {} coefficients, got {}", self.f, coeffs.len()),
            ));
        }
        let mut idx = 0u64;
        for &c in coeffs.iter().rev() {
            if c >= self.p {
                return Err(Error::invalid("residue digit", format!("coefficient {c} not below {}", self.p)));
            }
            idx = idx * self.p + c;
        }
        Ok(ResidueElement(idx as u32))
    }

    /// Coordinates in `[0, p)`, low degree first.
    pub fn coeffs(&self, a: ResidueElement) -> Vec<u64> {
        let mut idx = u64::from(a.0);
        (0..self.f)
            .map(|_| {
                let c = idx % self.p;
                idx /= self.p;
                c
            })
            .collect()
    }

    pub(crate) fn reduce_coeffs(&self, coeffs: &[u64]) -> ResidueElement {
        let mut idx = 0u64;
        for &c in coeffs.iter().rev() {
            idx = idx * self.p + c % self.p;
        }
        ResidueElement(idx as u32)
    }

    pub fn add(&self, a: ResidueElement, b: ResidueElement) -> ResidueElement {
        let (x, y) = (self.coeffs(a), self.coeffs(b));
        let sum: Vec<u64> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        self.reduce_coeffs(&sum)
    }

    pub fn neg(&self, a: ResidueElement) -> ResidueElement {
        let x: Vec<u64> = self.coeffs(a).iter().map(|c| (self.p - c) % self.p).collect();
        self.reduce_coeffs(&x)
    }

    pub fn sub(&self, a: ResidueElement, b: ResidueElement) -> ResidueElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: ResidueElement, b: ResidueElement) -> ResidueElement {
        let p = self.p;
        let f = self.f as usize;
        let (x, y) = (self.coeffs(a), self.coeffs(b));
        let mut prod = vec![0u64; 2 * f - 1];
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi * yj) % p;
            }
        }
        // x^d = -(g_0 + ... + g_{f-1} x^{f-1}) x^{d-f}, highest degree first
        for d in (f..prod.len()).rev() {
            let top = prod[d];
            if top == 0 {
                continue;
            }
            prod[d] = 0;
            for k in 0..f {
                let sub = top * self.poly[k] % p;
                prod[d - f + k] = (prod[d - f + k] + p - sub) % p;
            }
        }
        self.reduce_coeffs(&prod[..f])
    }

    pub fn pow(&self, a: ResidueElement, mut n: u64) -> ResidueElement {
        let mut base = a;
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// `a^(q-2)`.
    pub fn inv(&self, a: ResidueElement) -> Result<ResidueElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.order() - 2))
    }
}

/// Monic polynomials over `Z/p` of degree `deg`, lexicographic in the
/// coefficients read from degree 0 upward.
fn monic_polys(p: u64, deg: u32) -> impl Iterator<Item = Vec<u64>> {
    let count = p.pow(deg);
    (0..count).map(move |mut n| {
        let mut c = vec![0u64; deg as usize + 1];
        // most significant base-p digit is the constant term
        for k in (0..deg as usize).rev() {
            c[k] = n % p;
            n /= p;
        }
        c[deg as usize] = 1;
        c
    })
}

fn poly_rem(p: u64, num: &[u64], den: &[u64]) -> Vec<u64> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    while r.len() > dd {
        let top = *r.last().unwrap();
        let shift = r.len() - 1 - dd;
        if top != 0 {
            // den is monic
            for (k, &c) in den.iter().enumerate() {
                r[shift + k] = (r[shift + k] + p - top * c % p) % p;
            }
        }
        r.pop();
    }
    r
}

pub(crate) fn is_irreducible(p: u64, poly: &[u64]) -> bool {
    let deg = poly.len() as u32 - 1;
    (1..=deg / 2).all(|d| monic_polys(p, d).all(|g| poly_rem(p, poly, &g).iter().any(|&c| c != 0)))
}

/// Lexicographically smallest monic irreducible polynomial of degree `f`.
/// Degree one uses the convention `x - 0`.
pub(crate) fn smallest_irreducible(p: u64, f: u32) -> Option<Vec<u64>> {
    if f == 1 {
        return Some(vec![0, 1]);
    }
    monic_polys(p, f).find(|g| is_irreducible(p, g))
}
