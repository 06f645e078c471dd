#![allow(dead_code)]

use num_rational::Rational64;
use rand::Rng;
use ultratree::berkovich::{BerkPoint, Ext};
use ultratree::padic::{make_extension, PAdicElement, SpecRef};

pub fn spec(p: u64, e: u32, f: u32) -> SpecRef {
    make_extension(p, e, f, 20).unwrap()
}

/// Zero one time in eight, otherwise a short expansion with valuation in
/// `[lo, hi]` places of `pi`.
pub fn element<R: Rng>(k: &SpecRef, lo: i64, hi: i64, rng: &mut R) -> PAdicElement {
    if rng.gen_ratio(1, 8) {
        return PAdicElement::zero(k);
    }
    let len = rng.gen_range(1..=4);
    PAdicElement::sample_digits(k, rng.gen_range(lo..=hi), len, rng)
}

/// A value of the exponent group `(1/e)Z` in `[-3, 3]`.
pub fn lattice_exp<R: Rng>(e: u32, rng: &mut R) -> Ext {
    let e = i64::from(e);
    Ext::rational(Rational64::new(rng.gen_range(-3 * e..=3 * e), e))
}

/// A finite radius exponent, irrational about a third of the time.
pub fn radius<R: Rng>(e: u32, rng: &mut R) -> Ext {
    if rng.gen_ratio(1, 3) {
        let a = Rational64::new(rng.gen_range(-6..=6), rng.gen_range(1..=4));
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        let b = Rational64::new(sign * rng.gen_range(1..=3), rng.gen_range(1..=3));
        Ext::new(a, b)
    } else {
        lattice_exp(e, rng)
    }
}

/// A disk of type II or III with a centre of moderate size.
pub fn hyperbolic_disk<R: Rng>(k: &SpecRef, rng: &mut R) -> BerkPoint {
    let e = i64::from(k.e());
    let center = element(k, -3 * e, 3 * e, rng);
    BerkPoint::disk(center, radius(k.e(), rng)).unwrap()
}

/// Any disk, including type I points.
pub fn any_disk<R: Rng>(k: &SpecRef, rng: &mut R) -> BerkPoint {
    if rng.gen_ratio(1, 6) {
        let e = i64::from(k.e());
        BerkPoint::type_one(element(k, -3 * e, 3 * e, rng))
    } else {
        hyperbolic_disk(k, rng)
    }
}
