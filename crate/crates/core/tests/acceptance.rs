//! Acceptance gate: prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ultratree::berkovich::{gauss_seminorm, seminorm_sampled_sup, BerkPoint, BerkType, Ext, Polynomial, WPoint};
use ultratree::coarse_grain::{brute_force_partition, census_audit, stratified_corpus};
use ultratree::padic::{make_extension, DigitExpansion, PAdicElement, RationalExponent, SpecRef};
use ultratree::tree::{BruhatTitsTree, LayerNode, SliceNode, TreeNode, TreeSlice};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

const CENSUS_GRID: [(u64, u32, u32); 9] =
    [(2, 1, 1), (2, 1, 2), (2, 1, 3), (3, 1, 1), (3, 1, 2), (5, 1, 1), (2, 2, 1), (2, 2, 2), (3, 2, 1)];

const BERK_SPECS: [(u64, u32, u32); 5] = [(2, 1, 1), (3, 1, 1), (3, 2, 1), (2, 1, 2), (2, 2, 2)];

fn census() -> Outcome {
    let start = Instant::now();
    for (p, f, m) in CENSUS_GRID {
        let k = make_extension(p, 1, f, 8).map_err(err)?;
        let row = census_audit(&k, m..=m).map_err(err)?[0];
        let q = k.q();
        let expected = q.pow(2 * m) - q.pow(2 * m - 1);
        ensure!(row.closed_form == expected && row.agrees(), "p={p} f={f} m={m}: {row:?}");
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(10), "grid took {elapsed:?}");
    Ok(format!("{} grid points in {elapsed:.2?}", CENSUS_GRID.len()))
}

fn split_factors() -> Outcome {
    for (p, f, m) in CENSUS_GRID {
        let k = make_extension(p, 1, f, 8).map_err(err)?;
        let q = k.q();
        let tree = BruhatTitsTree::new(&k);
        let mut layer = vec![LayerNode::Base(TreeNode::trunk(0))];
        for level in 1..=m {
            let expected = if level == 1 { q * q - q } else { q * q };
            let mut next = Vec::new();
            for n in &layer {
                let children = tree.refinement_children(n, level).map_err(err)?;
                ensure!(children.len() as u64 == expected, "p={p} f={f} level {level}: {} children", children.len());
                next.extend(children.into_iter().map(LayerNode::Refined));
            }
            layer = next;
        }
    }
    Ok("q^2 - q then q^2 on every node of the grid".into())
}

fn coordination() -> Outcome {
    let mut checked = 0;
    for (p, f) in [(2, 1), (3, 1), (2, 2), (3, 2)] {
        let k = make_extension(p, 1, f, 8).map_err(err)?;
        let q = k.q() as usize;
        let slice =
            TreeSlice::build(&k, RationalExponent::integer(-1), RationalExponent::integer(2), 2).map_err(err)?;
        let interior = slice.interior_base_nodes(&k);
        ensure!(!interior.is_empty(), "p={p} f={f}: no interior nodes");
        for &i in &interior {
            ensure!(slice.degree(i) == q + 1, "p={p} f={f}: node {i} has degree {}", slice.degree(i));
            checked += 1;
        }
        let root = TreeSlice::build(&k, RationalExponent::integer(0), RationalExponent::integer(0), 0).map_err(err)?;
        let enhanced = root.enhance(&k, 2).map_err(err)?;
        for (i, n) in enhanced.nodes.iter().enumerate() {
            if let SliceNode::Refined(r) = n {
                if r.m == 1 {
                    ensure!(enhanced.degree(i) == q * q + 1, "p={p} f={f}: refined node degree {}", enhanced.degree(i));
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} interior degrees exact"))
}

fn partition() -> Outcome {
    let mut lines = Vec::new();
    for (p, e, f) in [(2, 1, 1), (3, 2, 1), (2, 1, 2), (2, 2, 2)] {
        let k = make_extension(p, e, f, 16).map_err(err)?;
        let start = Instant::now();
        let corpus = stratified_corpus(&k, 600, 0x5eed ^ p);
        let mut classes = Vec::new();
        for level in 0..=2 {
            let r = brute_force_partition(&corpus, level).map_err(err)?;
            ensure!(r.is_consistent(), "({p},{e},{f}) level {level}: {r:?}");
            classes.push(r.n_classes_canonical);
        }
        let elapsed = start.elapsed();
        ensure!(elapsed < Duration::from_secs(30), "({p},{e},{f}) took {elapsed:?}");
        lines.push(format!("({p},{e},{f}) classes {classes:?}"));
    }
    Ok(format!("600 points per spec, no mismatches; {}", lines.join(", ")))
}

fn homeomorphism() -> Outcome {
    let mut contained = 0;
    for (p, e, f) in BERK_SPECS {
        let k = common::spec(p, e, f);
        let gauss = BerkPoint::gauss(&k).phi(&k);
        ensure!(gauss.omega == Ext::ZERO && gauss.center.is_zero(), "gauss point maps to {gauss}");
        let mut rng = ChaCha8Rng::seed_from_u64(p * 100 + u64::from(e * 10 + f));
        for _ in 0..1000 {
            let x = common::any_disk(&k, &mut rng);
            let y = common::any_disk(&k, &mut rng);
            for pt in [&x, &y] {
                let back = pt.phi(&k).phi_inv();
                ensure!(back.equivalent(pt).map_err(err)?, "phi_inv(phi({pt})) = {back}");
                ensure!(back.classify() == pt.classify(), "type changed for {pt}");
            }
            let inside = x.contains(&y).map_err(err)?;
            let joined = x.join(&y).map_err(err)?.equivalent(&x).map_err(err)?;
            ensure!(inside == joined, "contains={inside} join-identity={joined} for {x} / {y}");
            contained += usize::from(inside);

            let w = WPoint::new(-common::radius(k.e(), &mut rng), common::element(&k, -6, 6, &mut rng));
            ensure!(w.phi_inv().phi(&k).equivalent(&w).map_err(err)?, "phi(phi_inv({w})) not equivalent");
        }
    }
    Ok(format!("1000 pairs x {} specs, {contained} containments witnessed", BERK_SPECS.len()))
}

fn node_disk(k: &SpecRef, n: &TreeNode) -> BerkPoint {
    let center = PAdicElement::from_digits(k, n.word());
    let r = Rational64::new(-n.level(), i64::from(k.e()));
    BerkPoint::disk(center, Ext::rational(r)).unwrap()
}

fn metric() -> Outcome {
    for (p, e, f) in BERK_SPECS {
        let k = common::spec(p, e, f);
        let mut rng = ChaCha8Rng::seed_from_u64(7 * p + u64::from(e + f));
        for _ in 0..10_000 / BERK_SPECS.len() {
            let x = common::hyperbolic_disk(&k, &mut rng);
            let y = common::hyperbolic_disk(&k, &mut rng);
            let z = common::hyperbolic_disk(&k, &mut rng);
            let xy = x.rho(&y).map_err(err)?;
            let yz = y.rho(&z).map_err(err)?;
            let xz = x.rho(&z).map_err(err)?;
            ensure!(xy == y.rho(&x).map_err(err)?, "asymmetric on {x} / {y}");
            ensure!(xy >= Ext::ZERO, "negative distance {xy}");
            ensure!((xy == Ext::ZERO) == x.equivalent(&y).map_err(err)?, "zero distance mismatch on {x} / {y}");
            ensure!(xz <= xy + yz, "triangle fails: {xz} > {xy} + {yz}");
        }
        for _ in 0..200 {
            let w1 = common::radius(k.e(), &mut rng);
            let w2 = common::radius(k.e(), &mut rng);
            let zero = PAdicElement::zero(&k);
            let a = WPoint::new(w1, zero.clone()).phi_inv();
            let b = WPoint::new(w2, zero).phi_inv();
            ensure!(a.rho(&b).map_err(err)? == (w1 - w2).abs(), "trunk isometry fails at {w1}, {w2}");
        }
        let tree = BruhatTitsTree::new(&k);
        let slice = TreeSlice::build(&k, RationalExponent::integer(0), RationalExponent::integer(1), 2).map_err(err)?;
        let scale = Ext::integer(i64::from(k.e()));
        for &(a, b) in &slice.edges {
            let (SliceNode::Base(na), SliceNode::Base(nb)) = (&slice.nodes[a], &slice.nodes[b]) else { continue };
            let rho = node_disk(&k, na).rho(&node_disk(&k, nb)).map_err(err)?;
            ensure!(rho.scale(i64::from(k.e())) == Ext::integer(1), "adjacent nodes at rho {rho}");
            if k.e() == 1 {
                ensure!(rho == Ext::integer(1), "adjacent nodes at rho {rho}");
            }
        }
        for _ in 0..200 {
            let pick = |rng: &mut ChaCha8Rng| {
                let z = common::element(&k, 0, 4, rng);
                let level = rng.gen_range(0..=6);
                tree.node_of_point(&z, RationalExponent::from_pi(level, k.e())).unwrap()
            };
            let (na, nb) = (pick(&mut rng), pick(&mut rng));
            let d = Ext::integer(tree.graph_distance(&na, &nb) as i64);
            let rho = node_disk(&k, &na).rho(&node_disk(&k, &nb)).map_err(err)?;
            ensure!(rho.scale(i64::from(k.e())) == d, "graph distance {d} vs rho {rho} (scale {scale})");
        }
    }
    Ok("10^4 triples exact; trunk isometric; adjacent lattice disks at 1 step".into())
}

fn field_arithmetic() -> Outcome {
    let mut fields = 0;
    for p in [2u64, 3, 5, 7, 11, 13] {
        for f in 1..=4u32 {
            if p.pow(f) > 16 {
                continue;
            }
            let k = make_extension(p, 1, f, 4).map_err(err)?;
            let rf = k.residue_field();
            let all: Vec<_> = rf.elements().collect();
            let (zero, one) = (rf.zero(), rf.one());
            for &a in &all {
                ensure!(rf.add(a, zero) == a && rf.mul(a, one) == a, "identities fail in F_{}", k.q());
                ensure!(rf.add(a, rf.neg(a)) == zero, "negation fails in F_{}", k.q());
                if a != zero {
                    ensure!(rf.mul(a, rf.inv(a).map_err(err)?) == one, "inverse fails in F_{}", k.q());
                }
                for &b in &all {
                    ensure!(rf.add(a, b) == rf.add(b, a) && rf.mul(a, b) == rf.mul(b, a), "commutativity");
                    for &c in &all {
                        ensure!(rf.add(rf.add(a, b), c) == rf.add(a, rf.add(b, c)), "additive associativity");
                        ensure!(rf.mul(rf.mul(a, b), c) == rf.mul(a, rf.mul(b, c)), "multiplicative associativity");
                        ensure!(rf.mul(a, rf.add(b, c)) == rf.add(rf.mul(a, b), rf.mul(a, c)), "distributivity");
                    }
                }
            }
            fields += 1;
        }
    }

    for (p, e, f) in BERK_SPECS {
        let k = common::spec(p, e, f);
        let mut rng = ChaCha8Rng::seed_from_u64(31 * p + u64::from(e * f));
        for _ in 0..1000 {
            let x = PAdicElement::sample_digits(&k, rng.gen_range(-4..=4), 12, &mut rng);
            let y = PAdicElement::sample_digits(&k, rng.gen_range(-4..=4), 12, &mut rng);
            let xy = x.try_mul(&y).map_err(err)?;
            ensure!(xy.valuation() == x.valuation() + y.valuation(), "v({x} * {y}) = {}", xy.valuation());
            let s = x.try_add(&y).map_err(err)?;
            let floor = x.valuation().min(y.valuation());
            ensure!(s.valuation() >= floor, "ultrametric law fails for {x} + {y}");
            if x.valuation() != y.valuation() {
                ensure!(s.valuation() == floor, "strict ultrametric equality fails for {x} + {y}");
            }
            let vx = x.valuation_pi().unwrap();
            let dx = x.digits(vx, vx + 12).map_err(err)?;
            ensure!(PAdicElement::from_digits(&k, &dx) == x, "digit round trip fails for {x}");
            let word = DigitExpansion::new(vx, dx.digits.clone());
            ensure!(PAdicElement::from_digits(&k, &word).digits(vx, vx + 12).map_err(err)? == dx, "digits drift");
        }
        let n = rng.gen_range(1..1000i128);
        let d = rng.gen_range(1..1000i128);
        if let Ok(r) = PAdicElement::from_rational(&k, n, d) {
            let back = r.try_mul(&PAdicElement::from_int(&k, d)).map_err(err)?;
            ensure!(back == PAdicElement::from_int(&k, n), "{n}/{d} * {d} != {n}");
        }
    }
    Ok(format!("{fields} residue fields exhaustive; 1000 pairs x {} specs", BERK_SPECS.len()))
}

fn crafted_witnesses(k: &SpecRef, rng: &mut ChaCha8Rng) -> Vec<(Polynomial, BerkPoint)> {
    let e = i64::from(k.e());
    let mut out = vec![
        (Polynomial::t(k), BerkPoint::gauss(k)),
        (Polynomial::constant(PAdicElement::from_int(k, 6)), BerkPoint::gauss(k)),
    ];
    if k.p() == 3 && k.e() == 1 && k.f() == 1 {
        let f = Polynomial::new(k, vec![PAdicElement::zero(k), PAdicElement::one(k), PAdicElement::from_int(k, 3)]);
        out.push((f, BerkPoint::disk(PAdicElement::zero(k), Ext::integer(1)).unwrap()));
    }
    // c (T - a)^j + g with g strictly below the leading term on the disk;
    // integral centres keep the cancellation in Horner's rule within the
    // precision budget
    for _ in 0..20 {
        let a = common::element(k, 0, 2 * e, rng);
        let level = rng.gen_range(0..=2 * e);
        let r = Ext::rational(Rational64::new(-level, e));
        let j = rng.gen_range(1..=3usize);
        let c = PAdicElement::sample_digits(k, rng.gen_range(-2..=2), 6, rng);
        let t_minus_a = Polynomial::new(k, vec![-&a, PAdicElement::one(k)]);
        let mut lead = Polynomial::constant(c.clone());
        for _ in 0..j {
            lead = lead.try_mul(&t_minus_a).unwrap();
        }
        let v_lead = c.valuation_pi().unwrap() + j as i64 * level;
        let small = PAdicElement::sample_digits(k, v_lead + 1, 4, rng);
        let f = lead.try_add(&Polynomial::constant(small)).unwrap();
        out.push((f, BerkPoint::disk(a, r).unwrap()));
    }
    out
}

fn seminorms() -> Outcome {
    let mut witnesses = 0;
    for (p, e, f) in BERK_SPECS {
        let k = common::spec(p, e, f);
        let ei = i64::from(k.e());
        let mut rng = ChaCha8Rng::seed_from_u64(1009 * p + u64::from(e * 3 + f));
        for i in 0..200 {
            let fp = Polynomial::sample(&k, rng.gen_range(0..=5), rng.gen_range(-2 * ei..=2 * ei), &mut rng);
            let gp = Polynomial::sample(&k, rng.gen_range(0..=5), rng.gen_range(-2 * ei..=2 * ei), &mut rng);
            let center = common::element(&k, 0, 2 * ei, &mut rng);
            let pt = BerkPoint::disk(center, common::radius(k.e(), &mut rng)).unwrap();
            let prod = fp.try_mul(&gp).map_err(err)?;
            let lhs = gauss_seminorm(&prod, &pt).map_err(err)?;
            let rhs = gauss_seminorm(&fp, &pt).map_err(err)? + gauss_seminorm(&gp, &pt).map_err(err)?;
            ensure!(lhs == rhs, "|fg| = {lhs} but |f| + |g| = {rhs} at {pt}");
            if pt.classify() == BerkType::TypeII {
                let sup = seminorm_sampled_sup(&fp, &pt, 16, i).map_err(err)?;
                let bound = gauss_seminorm(&fp, &pt).map_err(err)?;
                ensure!(sup <= bound, "sampled sup {sup} exceeds {bound} at {pt}");
            }
        }
        for (i, (fp, pt)) in crafted_witnesses(&k, &mut rng).into_iter().enumerate() {
            let sup = seminorm_sampled_sup(&fp, &pt, 8, i as u64).map_err(err)?;
            let g = gauss_seminorm(&fp, &pt).map_err(err)?;
            ensure!(sup == g, "witness {i}: sampled {sup} vs {g} for {fp} at {pt}");
            witnesses += 1;
        }
    }
    Ok(format!("200 pairs x {} specs multiplicative; {witnesses} crafted witnesses attained", BERK_SPECS.len()))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("census reproduction", census),
        ("split factors", split_factors),
        ("coordination numbers", coordination),
        ("partition agreement", partition),
        ("homeomorphism witnesses", homeomorphism),
        ("metric suite", metric),
        ("field arithmetic", field_arithmetic),
        ("seminorm suite", seminorms),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match check() {
            Ok(detail) => println!("criterion {} PASS {name}: {detail} [{:.2?}]", i + 1, start.elapsed()),
            Err(msg) => {
                failures += 1;
                println!("criterion {} FAIL {name}: {msg}", i + 1);
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
