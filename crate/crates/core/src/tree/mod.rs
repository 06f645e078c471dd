//! The Bruhat-Tits tree of a finite extension `K`, built directly from digit
//! words: a node is a trunk level `e * omega` together with the digits of a
//! branch point below that place. The trunk carries the zero continuation,
//! so every node has `q + 1` neighbours.

mod export;
mod slice;

pub use export::{parse_dot, DotGraph, ParsedSlice, SliceJson};
pub use slice::{SliceNode, TreeSlice, MAX_SLICE_NODES};

use serde::{Deserialize, Serialize};

use crate::literal::{field, format_digits, parse_digit_list, parse_fields};
use crate::padic::{DigitExpansion, PAdicElement, RationalExponent, ResidueElement, SpecRef};
use crate::{Error, Result};

/// A node of the tree: `level = e * omega` and the digit word of its branch
/// at places `[word.lo, level)`. An empty word is a trunk node.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TreeNode {
    level: i64,
    word: DigitExpansion,
}

impl TreeNode {
    pub fn trunk(level: i64) -> Self {
        TreeNode { level, word: DigitExpansion::empty(level) }
    }

    /// Fails unless the word ends at `level` and has a nonzero leading digit.
    pub fn new(level: i64, word: DigitExpansion) -> Result<Self> {
        if word.is_empty() {
            return Ok(Self::trunk(level));
        }
        if word.hi() != level {
            return Err(Error::invalid("tree node", format!("word ends at {} instead of {level}", word.hi())));
        }
        if word.digits[0].is_zero() {
            return Err(Error::invalid("tree node", "leading digit of a branch word must be nonzero"));
        }
        Ok(TreeNode { level, word })
    }

    pub fn level(&self) -> i64 {
        self.level
    }

    pub fn omega(&self, e: u32) -> RationalExponent {
        RationalExponent::from_pi(self.level, e)
    }

    pub fn word(&self) -> &DigitExpansion {
        &self.word
    }

    pub fn is_trunk(&self) -> bool {
        self.word.is_empty()
    }

    pub fn parent(&self) -> TreeNode {
        if self.word.len() <= 1 {
            return TreeNode::trunk(self.level - 1);
        }
        let mut digits = self.word.digits.clone();
        digits.pop();
        TreeNode { level: self.level - 1, word: DigitExpansion::new(self.word.lo, digits) }
    }

    /// Parses `omega=<exponent>,word=<digit list>`; the word ends at place
    /// `e * omega`.
    pub fn parse(spec: &SpecRef, s: &str) -> Result<Self> {
        let fields = parse_fields(s)?;
        let omega: RationalExponent = field(&fields, "omega")?.parse()?;
        let level = omega.to_pi_checked(spec.e())?;
        let digits = match field(&fields, "word") {
            Ok(w) => parse_digit_list(spec.residue_field(), w)?,
            Err(_) => Vec::new(),
        };
        Self::new(level, DigitExpansion::new(level - digits.len() as i64, digits))
    }

    pub fn to_literal(&self, spec: &SpecRef) -> String {
        format!("omega={},word={}", self.omega(spec.e()), format_digits(spec.residue_field(), &self.word.digits))
    }

    /// The ancestor at level `t <= self.level`.
    pub fn ancestor_at(&self, t: i64) -> TreeNode {
        debug_assert!(t <= self.level);
        if self.word.is_empty() || t <= self.word.lo {
            TreeNode::trunk(t)
        } else {
            TreeNode { level: t, word: self.word.window(self.word.lo, t) }
        }
    }
}

/// A class `B_m` below a base node: `z0_word` are the first `m` digits of
/// the unit `z0 / p^omega` (leading digit nonzero) and `z_word` the `m`
/// digits of `z` from place `e * omega` on.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RefinedNode {
    pub base: TreeNode,
    pub m: u32,
    pub z0_word: Vec<ResidueElement>,
    pub z_word: Vec<ResidueElement>,
}

impl RefinedNode {
    pub fn parent(&self) -> LayerNode {
        if self.m == 1 {
            return LayerNode::Base(self.base.clone());
        }
        let k = self.m as usize - 1;
        LayerNode::Refined(RefinedNode {
            base: self.base.clone(),
            m: self.m - 1,
            z0_word: self.z0_word[..k].to_vec(),
            z_word: self.z_word[..k].to_vec(),
        })
    }
}

/// A node of the enhanced tree: a base node (level 0) or a refinement.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LayerNode {
    Base(TreeNode),
    Refined(RefinedNode),
}

impl LayerNode {
    pub fn refinement_level(&self) -> u32 {
        match self {
            LayerNode::Base(_) => 0,
            LayerNode::Refined(r) => r.m,
        }
    }
}

/// Closed form and enumeration of the `B_m` classes inside one `B` class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub m: u32,
    pub closed_form: u64,
    pub enumerated: u64,
}

/// Largest `q^(2m)` accepted by [`BruhatTitsTree::refinement_census`].
pub const MAX_CENSUS: u64 = 1_000_000;

/// Navigation on the tree of one extension.
#[derive(Debug, Clone)]
pub struct BruhatTitsTree {
    spec: SpecRef,
}

impl BruhatTitsTree {
    pub fn new(spec: &SpecRef) -> Self {
        BruhatTitsTree { spec: spec.clone() }
    }

    pub fn spec(&self) -> &SpecRef {
        &self.spec
    }

    /// Coordination number `p^f + 1`.
    pub fn coordination(&self) -> u64 {
        self.spec.q() + 1
    }

    /// Nodes one level deeper. A branch node extends its word by every digit;
    /// a trunk node continues the trunk and sprouts `q - 1` branches.
    pub fn children(&self, n: &TreeNode) -> Vec<TreeNode> {
        let rf = self.spec.residue_field();
        let next = n.level + 1;
        if n.is_trunk() {
            let mut out = vec![TreeNode::trunk(next)];
            out.extend(
                rf.nonzero_elements().map(|d| TreeNode { level: next, word: DigitExpansion::new(n.level, vec![d]) }),
            );
            out
        } else {
            rf.elements()
                .map(|d| {
                    let mut digits = n.word.digits.clone();
                    digits.push(d);
                    TreeNode { level: next, word: DigitExpansion::new(n.word.lo, digits) }
                })
                .collect()
        }
    }

    pub fn neighbors(&self, n: &TreeNode) -> Vec<TreeNode> {
        let mut out = vec![n.parent()];
        out.extend(self.children(n));
        out
    }

    /// The node `(p^omega, z)` on the branch leading up to `z`.
    pub fn node_of_point(&self, z: &PAdicElement, omega: RationalExponent) -> Result<TreeNode> {
        if z.spec() != &self.spec {
            return Err(Error::SpecMismatch);
        }
        let level = omega.to_pi_checked(self.spec.e())?;
        TreeNode::new(level, z.digits_below(level)?)
    }

    /// Highest common ancestor: the deepest node below which both lie.
    pub fn hca(&self, a: &TreeNode, b: &TreeNode) -> TreeNode {
        a.ancestor_at(self.split_level(a, b))
    }

    fn split_level(&self, a: &TreeNode, b: &TreeNode) -> i64 {
        let top = a.level.min(b.level);
        let start = a.word.lo.min(b.word.lo);
        (start..top).find(|&i| a.word.get(i) != b.word.get(i)).unwrap_or(top)
    }

    /// Number of edges on the path from `a` to `b`.
    pub fn graph_distance(&self, a: &TreeNode, b: &TreeNode) -> u64 {
        let s = self.split_level(a, b);
        ((a.level - s) + (b.level - s)) as u64
    }

    /// Splits a node one refinement level further: `q^2 - q` classes out of
    /// a base node, `q^2` out of a refined one.
    pub fn refinement_children(&self, n: &LayerNode, to_level: u32) -> Result<Vec<RefinedNode>> {
        let from = n.refinement_level();
        if to_level != from + 1 {
            return Err(Error::NonIncrementalLevel { from, expected: from + 1, requested: to_level });
        }
        let rf = self.spec.residue_field();
        let out = match n {
            LayerNode::Base(base) => rf
                .nonzero_elements()
                .flat_map(|d0| {
                    rf.elements().map(move |d| RefinedNode {
                        base: base.clone(),
                        m: 1,
                        z0_word: vec![d0],
                        z_word: vec![d],
                    })
                })
                .collect(),
            LayerNode::Refined(r) => rf
                .elements()
                .flat_map(|d0| {
                    rf.elements().map(move |d| {
                        let mut z0_word = r.z0_word.clone();
                        z0_word.push(d0);
                        let mut z_word = r.z_word.clone();
                        z_word.push(d);
                        RefinedNode { base: r.base.clone(), m: r.m + 1, z0_word, z_word }
                    })
                })
                .collect(),
        };
        Ok(out)
    }

    /// `p^(2fm) (1 - 1/p^f)` next to the number of level-`m` descendants of
    /// a base node obtained by repeated splitting.
    pub fn refinement_census(&self, m: u32) -> Result<Census> {
        if m == 0 {
            return Err(Error::invalid("m", "census levels start at 1"));
        }
        let q = self.spec.q();
        let bound_ok = q.checked_pow(2 * m).is_some_and(|n| n <= MAX_CENSUS);
        if !bound_ok {
            return Err(Error::SizeBound { what: format!("p^(2fm) for m = {m}"), limit: MAX_CENSUS });
        }
        let closed_form = q.pow(2 * m) - q.pow(2 * m - 1);
        let mut layer = vec![LayerNode::Base(TreeNode::trunk(0))];
        for level in 1..=m {
            let mut next = Vec::new();
            for n in &layer {
                next.extend(self.refinement_children(n, level)?.into_iter().map(LayerNode::Refined));
            }
            layer = next;
        }
        Ok(Census { m, closed_form, enumerated: layer.len() as u64 })
    }
}
