//! Brute-force checks tying chordal equivalence to canonical classes and to
//! the tree: pairwise partitions, census tables and nesting chains.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::ops::RangeInclusive;

use petgraph::unionfind::UnionFind;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chordal::{canonical_class, canonical_class_m, chordal_u_pi, within_level, ProductPoint};
use crate::padic::{DigitExpansion, PAdicElement, RationalExponent, SpecRef};
use crate::tree::BruhatTitsTree;
use crate::{Error, Result};

/// Largest corpus accepted by [`brute_force_partition`].
pub const MAX_PARTITION_POINTS: usize = 2000;
/// Witnesses kept per report list.
const MAX_WITNESSES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionReport {
    pub level: u32,
    pub n_points: usize,
    pub n_classes_bruteforce: usize,
    pub n_classes_canonical: usize,
    /// Index pairs on which the relation and the canonical classes disagree.
    pub mismatches: Vec<[usize; 2]>,
    /// Index triples `(a, b, c)` with `a ~ b`, `b ~ c` but not `a ~ c`.
    pub transitivity_violations: Vec<[usize; 3]>,
}

impl PartitionReport {
    pub fn is_consistent(&self) -> bool {
        self.mismatches.is_empty()
            && self.transitivity_violations.is_empty()
            && self.n_classes_bruteforce == self.n_classes_canonical
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub m: u32,
    pub closed_form: u64,
    pub tree_enumerated: u64,
    pub class_enumerated: u64,
}

impl CensusRow {
    pub fn agrees(&self) -> bool {
        self.closed_form == self.tree_enumerated && self.closed_form == self.class_enumerated
    }
}

/// Seeded corpus with `z0` valuations spread over `[-2, 2]` and `z` mixing
/// zero and short expansions of valuation in `[-2, 3]`, so that points of
/// different trunk depths land in shared classes.
pub fn stratified_corpus(spec: &SpecRef, n: usize, seed: u64) -> Vec<ProductPoint> {
    let e = i64::from(spec.e());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let v0 = rng.gen_range(-2 * e..=2 * e);
            let len0 = rng.gen_range(1..=3);
            let z0 = PAdicElement::sample_digits(spec, v0, len0, &mut rng);
            let z = if rng.gen_ratio(1, 5) {
                PAdicElement::zero(spec)
            } else {
                let v = rng.gen_range(-2 * e..=3 * e);
                let len = rng.gen_range(1..=3);
                PAdicElement::sample_digits(spec, v, len, &mut rng)
            };
            ProductPoint::new(z0, z).expect("z0 has a nonzero leading digit")
        })
        .collect()
}

/// Partitions `points` by the pairwise relation `~_level` and compares the
/// result with grouping by canonical class.
pub fn brute_force_partition(points: &[ProductPoint], level: u32) -> Result<PartitionReport> {
    let n = points.len();
    if n > MAX_PARTITION_POINTS {
        return Err(Error::SizeBound { what: "partition corpus".into(), limit: MAX_PARTITION_POINTS as u64 });
    }
    if let Some(first) = points.first() {
        if points.iter().any(|pt| pt.z0().spec() != first.z0().spec()) {
            return Err(Error::SpecMismatch);
        }
    }

    let edges: Vec<(usize, usize)> = (0..n)
        .into_par_iter()
        .map(|i| -> Result<Vec<(usize, usize)>> {
            let mut row = Vec::new();
            for j in i + 1..n {
                if within_level(chordal_u_pi(&points[i], &points[j])?, level) {
                    row.push((i, j));
                }
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    let mut uf = UnionFind::<usize>::new(n);
    for &(i, j) in &edges {
        uf.union(i, j);
    }
    let roots = uf.into_labeling();

    let classes = points.iter().map(|pt| canonical_class_m(pt, level)).collect::<Result<Vec<_>>>()?;
    let mut class_ids = HashMap::new();
    let canon: Vec<usize> = classes
        .into_iter()
        .map(|c| {
            let next = class_ids.len();
            *class_ids.entry(c).or_insert(next)
        })
        .collect();

    let edge_set: HashSet<(usize, usize)> = edges.iter().copied().collect();
    let mut mismatches = Vec::new();
    for &(i, j) in &edges {
        if canon[i] != canon[j] && mismatches.len() < MAX_WITNESSES {
            mismatches.push([i, j]);
        }
    }
    let mut members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, &c) in canon.iter().enumerate() {
        members.entry(c).or_default().push(i);
    }
    'groups: for group in members.values() {
        for (a, &i) in group.iter().enumerate() {
            for &j in &group[a + 1..] {
                if mismatches.len() >= MAX_WITNESSES {
                    break 'groups;
                }
                if !edge_set.contains(&(i, j)) {
                    mismatches.push([i, j]);
                }
            }
        }
    }

    let transitivity_violations = transitivity_witnesses(n, &edges, &edge_set, &roots);
    let n_classes_bruteforce = roots.iter().collect::<HashSet<_>>().len();
    Ok(PartitionReport {
        level,
        n_points: n,
        n_classes_bruteforce,
        n_classes_canonical: class_ids.len(),
        mismatches,
        transitivity_violations,
    })
}

/// The relation is transitive exactly when every connected component is a
/// clique. For a component that is not, a shortest path between two
/// unrelated members yields a violating triple.
fn transitivity_witnesses(
    n: usize,
    edges: &[(usize, usize)],
    edge_set: &HashSet<(usize, usize)>,
    roots: &[usize],
) -> Vec<[usize; 3]> {
    let mut size: BTreeMap<usize, u64> = BTreeMap::new();
    for &r in roots {
        *size.entry(r).or_default() += 1;
    }
    let mut inner: BTreeMap<usize, u64> = BTreeMap::new();
    for &(i, _) in edges {
        *inner.entry(roots[i]).or_default() += 1;
    }
    let mut adj = vec![Vec::new(); n];
    for &(i, j) in edges {
        adj[i].push(j);
        adj[j].push(i);
    }
    let related = |a: usize, b: usize| edge_set.contains(&(a.min(b), a.max(b)));

    let mut out = Vec::new();
    for (&root, &k) in &size {
        if inner.get(&root).copied().unwrap_or(0) == k * (k - 1) / 2 {
            continue;
        }
        let start = (0..n).find(|&a| roots[a] == root && adj[a].len() as u64 != k - 1).expect("non-clique");
        // breadth-first search from `start` until an unrelated vertex appears
        let mut prev = vec![usize::MAX; n];
        let mut queue = VecDeque::from([start]);
        prev[start] = start;
        'search: while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if prev[y] != usize::MAX {
                    continue;
                }
                prev[y] = x;
                if y != start && !related(start, y) {
                    out.push([start, x, y]);
                    break 'search;
                }
                queue.push_back(y);
            }
        }
        if out.len() >= MAX_WITNESSES {
            break;
        }
    }
    out
}

/// Census of the level-`m` classes inside the class of `(1, 0)`, computed
/// three ways: closed form, splitting in the tree, and counting distinct
/// canonical classes of all points whose coordinates carry `m + 1` digits.
pub fn census_audit(spec: &SpecRef, m_range: RangeInclusive<u32>) -> Result<Vec<CensusRow>> {
    let tree = BruhatTitsTree::new(spec);
    m_range
        .map(|m| {
            let census = tree.refinement_census(m)?;
            Ok(CensusRow {
                m,
                closed_form: census.closed_form,
                tree_enumerated: census.enumerated,
                class_enumerated: count_level_classes(spec, m)?,
            })
        })
        .collect()
}

fn count_level_classes(spec: &SpecRef, m: u32) -> Result<u64> {
    let q = spec.q();
    let len = m as usize + 1;
    let words = q.checked_pow(len as u32).filter(|w| w.saturating_mul(*w) <= 4 * crate::tree::MAX_CENSUS);
    let words = words.ok_or_else(|| Error::SizeBound {
        what: format!("class enumeration for m = {m}"),
        limit: 4 * crate::tree::MAX_CENSUS,
    })?;
    let rf = spec.residue_field();
    let word = |mut idx: u64| {
        let digits = (0..len)
            .map(|_| {
                let d = rf.element(idx % q).expect("index below q");
                idx /= q;
                d
            })
            .collect();
        DigitExpansion::new(0, digits)
    };
    let mut seen = HashSet::new();
    for a in 0..words {
        let z0 = PAdicElement::from_digits(spec, &word(a));
        if z0.valuation_pi() != Some(0) {
            continue;
        }
        for b in 0..words {
            let z = PAdicElement::from_digits(spec, &word(b));
            let pt = ProductPoint::new(z0.clone(), z)?;
            seen.insert(canonical_class_m(&pt, m)?);
        }
    }
    Ok(seen.len() as u64)
}

/// Whether the classes of `(p^omega_i, z)` along an increasing chain of
/// exponents have nested digit words.
pub fn nesting_audit(z: &PAdicElement, omega_chain: &[RationalExponent]) -> Result<bool> {
    if omega_chain.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("omega_chain", "exponents must increase strictly"));
    }
    let spec = z.spec();
    let words = omega_chain
        .iter()
        .map(|&omega| {
            let z0 = PAdicElement::p_power(spec, omega)?;
            Ok(canonical_class(&ProductPoint::new(z0, z.clone())?)?.word)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(words.windows(2).all(|w| w[0].is_prefix_of(&w[1])))
}
