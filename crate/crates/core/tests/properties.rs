mod common;

use num_rational::Rational64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ultratree::berkovich::{BerkPoint, BerkType, Ext, WPoint};
use ultratree::chordal::{canonical_class, canonical_class_m, chordal_u_exponent, equivalent, equivalent_m};
use ultratree::coarse_grain::{nesting_audit, stratified_corpus};
use ultratree::padic::{PAdicElement, RationalExponent, SpecRef};
use ultratree::tree::{parse_dot, TreeSlice};

const SPECS: [(u64, u32, u32); 5] = [(2, 1, 1), (3, 1, 1), (2, 2, 1), (2, 1, 2), (5, 2, 1)];

fn setup(idx: usize, seed: u64) -> (SpecRef, ChaCha8Rng) {
    let (p, e, f) = SPECS[idx % SPECS.len()];
    (common::spec(p, e, f), ChaCha8Rng::seed_from_u64(seed))
}

fn unit_or_more(k: &SpecRef, rng: &mut ChaCha8Rng) -> PAdicElement {
    PAdicElement::sample_digits(k, rng.gen_range(-3..=3), 10, rng)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_laws(idx in 0usize..5, seed: u64) {
        let (k, mut rng) = setup(idx, seed);
        let x = unit_or_more(&k, &mut rng);
        let y = unit_or_more(&k, &mut rng);
        let z = unit_or_more(&k, &mut rng);
        prop_assert_eq!(&(&(&x + &y) - &y), &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &x.invert().unwrap(), PAdicElement::one(&k));
        prop_assert_eq!(x.try_div(&y).unwrap().valuation(), x.valuation() - y.valuation());
    }

    #[test]
    fn chordal_relation_matches_classes(idx in 0usize..5, seed: u64, m in 0u32..3) {
        let (k, _) = setup(idx, seed);
        let pts = stratified_corpus(&k, 12, seed);
        for a in &pts {
            for b in &pts {
                prop_assert_eq!(chordal_u_exponent(a, b).unwrap(), chordal_u_exponent(b, a).unwrap());
                prop_assert_eq!(
                    equivalent(a, b).unwrap(),
                    canonical_class(a).unwrap() == canonical_class(b).unwrap()
                );
                prop_assert_eq!(
                    equivalent_m(a, b, m).unwrap(),
                    canonical_class_m(a, m).unwrap() == canonical_class_m(b, m).unwrap()
                );
                if equivalent_m(a, b, m + 1).unwrap() {
                    prop_assert!(equivalent_m(a, b, m).unwrap());
                }
            }
        }
    }

    #[test]
    fn class_words_nest(idx in 0usize..5, seed: u64, start in -4i64..2, steps in prop::collection::vec(1i64..3, 1..5)) {
        let (k, mut rng) = setup(idx, seed);
        let z = common::element(&k, -4, 6, &mut rng);
        let mut level = start;
        let mut chain = vec![RationalExponent::from_pi(level, k.e())];
        for s in steps {
            level += s;
            chain.push(RationalExponent::from_pi(level, k.e()));
        }
        prop_assert!(nesting_audit(&z, &chain).unwrap());
    }

    #[test]
    fn trunk_points_split_by_type(idx in 0usize..5, seed: u64) {
        let (k, mut rng) = setup(idx, seed);
        let omega = common::radius(k.e(), &mut rng);
        let pt = WPoint::new(omega, common::element(&k, -3, 3, &mut rng)).phi_inv();
        let expected = if omega.is_rational() { BerkType::TypeII } else { BerkType::TypeIII };
        prop_assert_eq!(pt.classify(), expected);
    }

    #[test]
    fn descending_chains_end_at_their_last_disk(idx in 0usize..5, seed: u64, len in 2usize..7) {
        let (k, mut rng) = setup(idx, seed);
        let mut chain = vec![common::hyperbolic_disk(&k, &mut rng)];
        for _ in 1..len {
            let BerkPoint::Disk { center, radius_exp } = chain.last().unwrap().clone() else { unreachable!() };
            // a point of the current disk and a smaller radius
            let shrink = Ext::rational(Rational64::new(rng.gen_range(0..4), i64::from(k.e())));
            let inner_r = radius_exp - shrink;
            let depth = match radius_exp.as_rational() {
                Some(r) => (-r * Rational64::from_integer(i64::from(k.e()))).ceil().to_integer(),
                None => 40,
            };
            let offset = PAdicElement::sample_digits(&k, depth.max(-6) + rng.gen_range(0..3), 3, &mut rng);
            chain.push(BerkPoint::disk(center.try_add(&offset).unwrap(), inner_r).unwrap());
        }
        let last = chain.last().unwrap();
        for (i, d) in chain.iter().enumerate() {
            prop_assert!(d.contains(last).unwrap(), "disk {} does not contain the last disk", i);
            for inner in &chain[i..] {
                prop_assert!(d.contains(inner).unwrap());
            }
        }
        // joining any disk of the chain with the last one changes nothing
        for d in &chain {
            prop_assert!(d.join(last).unwrap().equivalent(d).unwrap());
        }
    }

    #[test]
    fn berk_json_round_trip(idx in 0usize..5, seed: u64) {
        let (k, mut rng) = setup(idx, seed);
        let pt = common::any_disk(&k, &mut rng);
        let text = pt.to_json();
        let back = BerkPoint::from_json(&k, &text).unwrap();
        prop_assert!(back.equivalent(&pt).unwrap());
        prop_assert_eq!(back.to_json(), text);
    }

    #[test]
    fn ext_order_is_translation_invariant(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = common::radius(2, &mut rng);
        let y = common::radius(2, &mut rng);
        let z = common::radius(2, &mut rng);
        prop_assert_eq!(x.cmp(&y), (x + z).cmp(&(y + z)));
        prop_assert_eq!((x - y).abs(), (y - x).abs());
    }

    #[test]
    fn element_literals_round_trip(idx in 0usize..5, seed: u64) {
        let (k, mut rng) = setup(idx, seed);
        let x = common::element(&k, -5, 5, &mut rng);
        let text = x.to_string();
        let back = ultratree::literal::parse_element(&k, &text).unwrap();
        prop_assert_eq!(&back, &x);
        prop_assert_eq!(back.to_string(), text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn slice_exports_round_trip(idx in 0usize..4, lo in -2i64..2, span in 0i64..3, depth in 0u32..3) {
        let (k, _) = setup(idx, 0);
        let slice = TreeSlice::build(&k, RationalExponent::integer(lo), RationalExponent::integer(lo + span), depth).unwrap();
        let json = slice.to_json();
        let (_, nodes, edges) = TreeSlice::nodes_from_json(&json).unwrap();
        prop_assert_eq!(nodes, slice.nodes.clone());
        prop_assert_eq!(edges, slice.edges.clone());
        let dot = parse_dot(&slice.to_dot()).unwrap();
        prop_assert_eq!(dot.labels.len(), slice.len());
        prop_assert_eq!(dot.edges, slice.edges.clone());
        let again = TreeSlice::build(&k, RationalExponent::integer(lo), RationalExponent::integer(lo + span), depth).unwrap();
        prop_assert_eq!(again.to_json(), json);
    }
}
