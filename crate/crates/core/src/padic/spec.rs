use std::fmt;
use std::sync::Arc;

use super::residue::{smallest_irreducible, ResidueField};
use crate::{Error, Result};

/// Largest residue field order accepted by [`make_extension`].
pub const MAX_RESIDUE_ORDER: u64 = 1 << 20;

pub type SpecRef = Arc<ExtensionSpec>;

/// A finite extension `K / Q_p` with ramification index `e` and residual
/// degree `f`, built as `Q_p(zeta)(pi)` where `zeta` is a root of the lifted
/// residue polynomial and `pi^e = p`.
///
/// Elements carry `places` p-adic digits per coefficient, i.e. `e * places`
/// places of `pi`, with `places = ceil(precision / e) + 1`.
#[derive(Clone)]
pub struct ExtensionSpec {
    p: u64,
    e: u32,
    f: u32,
    precision: u32,
    places: u32,
    modulus: u64,
    residue: ResidueField,
    /// `zeta^k` for `k < 2f - 1`, reduced to the basis `1..zeta^(f-1)`
    /// modulo `p^places`.
    zeta_powers: Vec<Vec<u64>>,
}

impl PartialEq for ExtensionSpec {
    fn eq(&self, other: &Self) -> bool {
        (self.p, self.e, self.f, self.precision) == (other.p, other.e, other.f, other.precision)
    }
}

impl Eq for ExtensionSpec {}

impl fmt::Debug for ExtensionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExtensionSpec")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("f", &self.f)
            .field("precision", &self.precision)
            .field("residue_poly", &self.residue.modulus())
            .finish()
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Builds the extension with ramification index `e`, residual degree `f`,
/// carrying at least `precision` places of the uniformizer.
pub fn make_extension(p: u64, e: u32, f: u32, precision: u32) -> Result<SpecRef> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if e == 0 {
        return Err(Error::invalid("e", "ramification index must be positive"));
    }
    if f == 0 {
        return Err(Error::invalid("f", "residual degree must be positive"));
    }
    if precision == 0 {
        return Err(Error::invalid("precision", "must be positive"));
    }
    match p.checked_pow(f) {
        Some(q) if q <= MAX_RESIDUE_ORDER => {}
        _ => return Err(Error::ResidueFieldTooLarge { p, f }),
    }
    let places = precision.div_ceil(e) + 1;
    let modulus = p.checked_pow(places).filter(|m| *m < 1 << 63).ok_or(Error::PrecisionOverflow { p, places })?;
    let poly = smallest_irreducible(p, f)
        .ok_or_else(|| Error::Internal(format!("no irreducible polynomial of degree {f} over F_{p}")))?;
    let zeta_powers = zeta_power_table(&poly, modulus);
    Ok(Arc::new(ExtensionSpec {
        p,
        e,
        f,
        precision,
        places,
        modulus,
        residue: ResidueField::new(p, f, poly),
        zeta_powers,
    }))
}

fn zeta_power_table(poly: &[u64], modulus: u64) -> Vec<Vec<u64>> {
    let f = poly.len() - 1;
    let mut table = Vec::with_capacity(2 * f - 1);
    let mut cur = vec![0u64; f];
    cur[0] = 1 % modulus;
    for _ in 0..2 * f - 1 {
        table.push(cur.clone());
        // multiply by zeta: shift up, fold the x^f term via the monic relation
        let top = cur[f - 1];
        let mut next = vec![0u64; f];
        for k in (1..f).rev() {
            next[k] = cur[k - 1];
        }
        for k in 0..f {
            let sub = mulmod(top, poly[k] % modulus, modulus);
            next[k] = (next[k] + modulus - sub) % modulus;
        }
        cur = next;
    }
    table
}

#[inline]
pub(crate) fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(m)) as u64
}

impl ExtensionSpec {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    /// Extension degree `n = e f`.
    pub fn degree(&self) -> u32 {
        self.e * self.f
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Order of the residue field.
    pub fn q(&self) -> u64 {
        self.p.pow(self.f)
    }

    /// p-adic digits carried per basis coefficient.
    pub fn places(&self) -> u32 {
        self.places
    }

    /// Places of `pi` carried relative to an element's valuation.
    pub fn relative_precision(&self) -> i64 {
        i64::from(self.e) * i64::from(self.places)
    }

    pub(crate) fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residue_field(&self) -> &ResidueField {
        &self.residue
    }

    /// The residue polynomial, monic, coefficients low degree first.
    pub fn residue_poly(&self) -> &[u64] {
        self.residue.modulus()
    }

    pub(crate) fn zeta_power(&self, k: usize) -> &[u64] {
        &self.zeta_powers[k]
    }

    pub(crate) fn basis_len(&self) -> usize {
        (self.e * self.f) as usize
    }
}
