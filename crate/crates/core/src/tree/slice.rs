use std::collections::HashMap;

use super::{BruhatTitsTree, LayerNode, RefinedNode, TreeNode};
use crate::padic::{DigitExpansion, RationalExponent, ResidueElement, SpecRef};
use crate::{Error, Result};

/// Node budget for materialised slices.
pub const MAX_SLICE_NODES: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SliceNode {
    Base(TreeNode),
    Refined(RefinedNode),
}

/// A finite window of the (possibly enhanced) tree with index-based
/// adjacency. Nodes are ordered by level, then word length, then digits;
/// refinement layers follow the base nodes in breadth-first order.
#[derive(Debug, Clone)]
pub struct TreeSlice {
    pub p: u64,
    pub e: u32,
    pub f: u32,
    pub level_min: i64,
    pub level_max: i64,
    pub digit_depth: u32,
    pub refinement_depth: u32,
    pub nodes: Vec<SliceNode>,
    pub edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

fn words(q: u32, len: usize) -> impl Iterator<Item = Vec<u32>> {
    // leading digit nonzero, the rest free, lexicographic
    let count = if len == 0 { 0 } else { (q - 1) as u64 * u64::from(q).pow(len as u32 - 1) };
    (0..count).map(move |mut n| {
        let mut w = vec![0u32; len];
        for slot in w.iter_mut().skip(1).rev() {
            *slot = (n % u64::from(q)) as u32;
            n /= u64::from(q);
        }
        w[0] = n as u32 + 1;
        w
    })
}

fn check_bound(count: Option<u64>, what: &str) -> Result<u64> {
    match count {
        Some(n) if n <= MAX_SLICE_NODES => Ok(n),
        _ => Err(Error::SizeBound { what: what.to_string(), limit: MAX_SLICE_NODES }),
    }
}

impl TreeSlice {
    /// All nodes with `omega` in `[omega_min, omega_max]` whose branch word
    /// has at most `digit_depth` digits.
    pub fn build(
        spec: &SpecRef,
        omega_min: RationalExponent,
        omega_max: RationalExponent,
        digit_depth: u32,
    ) -> Result<Self> {
        let e = spec.e();
        let lo = omega_min.to_pi_checked(e)?;
        let hi = omega_max.to_pi_checked(e)?;
        let q = spec.q();
        let levels = if hi < lo { 0 } else { (hi - lo + 1) as u64 };
        check_bound(q.checked_pow(digit_depth).and_then(|n| n.checked_mul(levels)), "slice node count")?;

        let mut nodes = Vec::new();
        for level in lo..=hi {
            nodes.push(TreeNode::trunk(level));
            for len in 1..=digit_depth as usize {
                for w in words(q as u32, len) {
                    let rf = spec.residue_field();
                    let digits: Vec<ResidueElement> = w.iter().map(|d| rf.element(u64::from(*d)).unwrap()).collect();
                    let word = DigitExpansion::new(level - len as i64, digits);
                    nodes.push(TreeNode::new(level, word)?);
                }
            }
        }
        let index: HashMap<TreeNode, usize> = nodes.iter().cloned().enumerate().map(|(i, n)| (n, i)).collect();
        let mut edges = Vec::new();
        for (i, n) in nodes.iter().enumerate() {
            if let Some(&j) = index.get(&n.parent()) {
                edges.push((j, i));
            }
        }
        Ok(Self::assemble(spec, lo, hi, digit_depth, 0, nodes.into_iter().map(SliceNode::Base).collect(), edges))
    }

    fn assemble(
        spec: &SpecRef,
        level_min: i64,
        level_max: i64,
        digit_depth: u32,
        refinement_depth: u32,
        nodes: Vec<SliceNode>,
        edges: Vec<(usize, usize)>,
    ) -> Self {
        let mut adjacency = vec![Vec::new(); nodes.len()];
        for &(a, b) in &edges {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        TreeSlice {
            p: spec.p(),
            e: spec.e(),
            f: spec.f(),
            level_min,
            level_max,
            digit_depth,
            refinement_depth,
            nodes,
            edges,
            adjacency,
        }
    }

    /// Attaches `q^2 - q` refinement classes to every base node and `q^2`
    /// to every refined node, down to level `m_max`.
    pub fn enhance(&self, spec: &SpecRef, m_max: u32) -> Result<Self> {
        let tree = BruhatTitsTree::new(spec);
        let q = spec.q();
        let per_base = (0..m_max).try_fold(0u64, |acc, i| {
            let layer = (q * q - q).checked_mul(q.checked_pow(2 * i)?)?;
            acc.checked_add(layer)
        });
        let base_count = self.nodes.len() as u64;
        check_bound(
            per_base.and_then(|n| n.checked_mul(base_count)).and_then(|n| n.checked_add(base_count)),
            "enhanced slice node count",
        )?;

        let mut nodes = self.nodes.clone();
        let mut edges = self.edges.clone();
        let mut frontier: Vec<(usize, LayerNode)> = self
            .nodes
            .iter()
            .enumerate()
            .filter_map(|(i, n)| match n {
                SliceNode::Base(b) => Some((i, LayerNode::Base(b.clone()))),
                SliceNode::Refined(_) => None,
            })
            .collect();
        for level in 1..=m_max {
            let mut next = Vec::new();
            for (pid, node) in &frontier {
                for child in tree.refinement_children(node, level)? {
                    let id = nodes.len();
                    nodes.push(SliceNode::Refined(child.clone()));
                    edges.push((*pid, id));
                    next.push((id, LayerNode::Refined(child)));
                }
            }
            frontier = next;
        }
        Ok(Self::assemble(spec, self.level_min, self.level_max, self.digit_depth, m_max, nodes, edges))
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn degree(&self, id: usize) -> usize {
        self.adjacency[id].len()
    }

    pub fn neighbors(&self, id: usize) -> &[usize] {
        &self.adjacency[id]
    }

    /// Base nodes whose whole neighbourhood in the infinite tree lies inside
    /// the slice.
    pub fn interior_base_nodes(&self, spec: &SpecRef) -> Vec<usize> {
        let tree = BruhatTitsTree::new(spec);
        let present: HashMap<&TreeNode, usize> = self
            .nodes
            .iter()
            .enumerate()
            .filter_map(|(i, n)| match n {
                SliceNode::Base(b) => Some((b, i)),
                SliceNode::Refined(_) => None,
            })
            .collect();
        present
            .iter()
            .filter(|(n, _)| tree.neighbors(n).iter().all(|m| present.contains_key(m)))
            .map(|(_, &i)| i)
            .collect()
    }
}
