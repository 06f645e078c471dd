//! DOT, JSON and plain-text renderings of a [`TreeSlice`].

use serde::{Deserialize, Serialize};

use super::{RefinedNode, SliceNode, TreeNode, TreeSlice};
use crate::padic::{DigitExpansion, RationalExponent, ResidueElement, ResidueField};
use crate::{Error, Result, FORMAT_TAG};

/// A digit on the wire: a plain integer when `f = 1`, else its coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DigitJson {
    Int(u64),
    Tuple(Vec<u64>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecJson {
    pub p: u64,
    pub e: u32,
    pub f: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeJson {
    pub id: usize,
    pub omega: RationalExponent,
    pub word: Vec<DigitJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefinedJson {
    pub id: usize,
    pub parent: usize,
    pub m: u32,
    pub z0_word: Vec<DigitJson>,
    pub z_word: Vec<DigitJson>,
}

/// Wire form of a slice, tagged `ultratree/1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceJson {
    pub format: String,
    pub spec: SpecJson,
    pub nodes: Vec<NodeJson>,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub refinement: Vec<RefinedJson>,
}

/// Digit packing needs only `p` and `f`; the residue polynomial does not
/// enter, so a slice can be decoded without rebuilding the field.
fn digit_to_json(p: u64, f: u32, d: ResidueElement) -> DigitJson {
    if f == 1 {
        return DigitJson::Int(u64::from(d.index()));
    }
    let mut idx = u64::from(d.index());
    DigitJson::Tuple(
        (0..f)
            .map(|_| {
                let c = idx % p;
                idx /= p;
                c
            })
            .collect(),
    )
}

fn digit_from_json(p: u64, f: u32, d: &DigitJson) -> Result<ResidueElement> {
    let coeffs = match d {
        DigitJson::Int(v) if f == 1 => vec![*v],
        DigitJson::Tuple(cs) if cs.len() == f as usize => cs.clone(),
        _ => return Err(Error::Parse(format!("digit {d:?} does not match f = {f}"))),
    };
    let field = ResidueField::new(p, f, vec![0; f as usize + 1]);
    field.from_coeffs(&coeffs).map_err(|e| Error::Parse(e.to_string()))
}

fn words_to_json(p: u64, f: u32, w: &[ResidueElement]) -> Vec<DigitJson> {
    w.iter().map(|d| digit_to_json(p, f, *d)).collect()
}

fn words_from_json(p: u64, f: u32, w: &[DigitJson]) -> Result<Vec<ResidueElement>> {
    w.iter().map(|d| digit_from_json(p, f, d)).collect()
}

/// Spec, nodes and edges recovered from a JSON export.
pub type ParsedSlice = (SpecJson, Vec<SliceNode>, Vec<(usize, usize)>);

impl TreeSlice {
    pub fn to_json_value(&self) -> SliceJson {
        let (p, f) = (self.p, self.f);
        let mut nodes = Vec::new();
        let mut refinement = Vec::new();
        let parent_of: std::collections::HashMap<usize, usize> = self.edges.iter().map(|&(a, b)| (b, a)).collect();
        for (id, n) in self.nodes.iter().enumerate() {
            match n {
                SliceNode::Base(b) => {
                    nodes.push(NodeJson { id, omega: b.omega(self.e), word: words_to_json(p, f, &b.word().digits) })
                }
                SliceNode::Refined(r) => refinement.push(RefinedJson {
                    id,
                    parent: parent_of[&id],
                    m: r.m,
                    z0_word: words_to_json(p, f, &r.z0_word),
                    z_word: words_to_json(p, f, &r.z_word),
                }),
            }
        }
        SliceJson {
            format: FORMAT_TAG.to_string(),
            spec: SpecJson { p, e: self.e, f },
            nodes,
            edges: self.edges.iter().map(|&(a, b)| [a, b]).collect(),
            refinement,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("slice serialises")
    }

    /// Rebuilds the nodes and edges of a slice written by [`TreeSlice::to_json`].
    pub fn nodes_from_json(s: &str) -> Result<ParsedSlice> {
        let doc: SliceJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        if doc.format != FORMAT_TAG {
            return Err(Error::Parse(format!("unsupported format tag `{}`", doc.format)));
        }
        let SpecJson { p, e, f } = doc.spec.clone();
        let total = doc.nodes.len() + doc.refinement.len();
        let mut nodes: Vec<Option<SliceNode>> = vec![None; total];
        for n in &doc.nodes {
            let level = n.omega.to_pi(e).ok_or_else(|| Error::Parse(format!("omega {} outside (1/{e})Z", n.omega)))?;
            let digits = words_from_json(p, f, &n.word)?;
            let word = DigitExpansion::new(level - digits.len() as i64, digits);
            *nodes.get_mut(n.id).ok_or_else(|| Error::Parse("node id out of range".into()))? =
                Some(SliceNode::Base(TreeNode::new(level, word).map_err(|e| Error::Parse(e.to_string()))?));
        }
        // refinement records reference parents with smaller ids
        let mut sorted = doc.refinement.clone();
        sorted.sort_by_key(|r| r.id);
        for r in &sorted {
            let base = match nodes.get(r.parent).cloned().flatten() {
                Some(SliceNode::Base(b)) => b,
                Some(SliceNode::Refined(pr)) => pr.base,
                None => return Err(Error::Parse(format!("refined node {} has unknown parent", r.id))),
            };
            let refined = RefinedNode {
                base,
                m: r.m,
                z0_word: words_from_json(p, f, &r.z0_word)?,
                z_word: words_from_json(p, f, &r.z_word)?,
            };
            *nodes.get_mut(r.id).ok_or_else(|| Error::Parse("node id out of range".into()))? =
                Some(SliceNode::Refined(refined));
        }
        let nodes = nodes
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Parse("node ids are not contiguous".into()))?;
        let edges = doc.edges.iter().map(|[a, b]| (*a, *b)).collect();
        Ok((doc.spec, nodes, edges))
    }

    fn fmt_word(&self, w: &[ResidueElement]) -> String {
        let ds: Vec<String> = w
            .iter()
            .map(|d| match digit_to_json(self.p, self.f, *d) {
                DigitJson::Int(v) => v.to_string(),
                DigitJson::Tuple(cs) => format!("({})", cs.iter().map(u64::to_string).collect::<Vec<_>>().join(",")),
            })
            .collect();
        format!("[{}]", ds.join(","))
    }

    /// `w=<omega>;word=<digits>` plus the refinement words for refined nodes.
    pub fn node_label(&self, id: usize) -> String {
        match &self.nodes[id] {
            SliceNode::Base(b) => format!("w={};word={}", b.omega(self.e), self.fmt_word(&b.word().digits)),
            SliceNode::Refined(r) => format!(
                "w={};word={};m={};z0={};z={}",
                r.base.omega(self.e),
                self.fmt_word(&r.base.word().digits),
                r.m,
                self.fmt_word(&r.z0_word),
                self.fmt_word(&r.z_word)
            ),
        }
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        out.push_str("graph ultratree {\n");
        out.push_str(&format!("  // {FORMAT_TAG} p={} e={} f={}\n", self.p, self.e, self.f));
        for id in 0..self.nodes.len() {
            out.push_str(&format!("  n{id} [label=\"{}\"];\n", self.node_label(id)));
        }
        for &(a, b) in &self.edges {
            out.push_str(&format!("  n{a} -- n{b};\n"));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("# {FORMAT_TAG} p={} e={} f={}\n", self.p, self.e, self.f);
        for id in 0..self.nodes.len() {
            out.push_str(&format!("node {id} {}\n", self.node_label(id)));
        }
        for &(a, b) in &self.edges {
            out.push_str(&format!("edge {a} {b}\n"));
        }
        out
    }
}

/// Node labels and edges read back from [`TreeSlice::to_dot`] output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DotGraph {
    pub labels: Vec<(usize, String)>,
    pub edges: Vec<(usize, usize)>,
}

fn node_id(s: &str) -> Result<usize> {
    s.trim().strip_prefix('n').and_then(|n| n.parse().ok()).ok_or_else(|| Error::Parse(format!("bad node id `{s}`")))
}

pub fn parse_dot(s: &str) -> Result<DotGraph> {
    let mut labels = Vec::new();
    let mut edges = Vec::new();
    for line in s.lines().map(str::trim) {
        if line.is_empty() || line.starts_with("//") || line.starts_with("graph") || line == "}" {
            continue;
        }
        let stmt = line.strip_suffix(';').ok_or_else(|| Error::Parse(format!("missing `;` in `{line}`")))?;
        if let Some((a, b)) = stmt.split_once("--") {
            edges.push((node_id(a)?, node_id(b)?));
        } else if let Some((id, rest)) = stmt.split_once(" [label=\"") {
            let label = rest.strip_suffix("\"]").ok_or_else(|| Error::Parse(format!("bad label in `{line}`")))?;
            labels.push((node_id(id)?, label.to_string()));
        } else {
            return Err(Error::Parse(format!("unrecognised statement `{line}`")));
        }
    }
    Ok(DotGraph { labels, edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::make_extension;

    #[test]
    fn json_round_trip_with_refinement() {
        let k = make_extension(2, 1, 2, 8).unwrap();
        let s = TreeSlice::build(&k, RationalExponent::integer(0), RationalExponent::integer(1), 1)
            .unwrap()
            .enhance(&k, 1)
            .unwrap();
        let json = s.to_json();
        let (spec, nodes, edges) = TreeSlice::nodes_from_json(&json).unwrap();
        assert_eq!(spec, SpecJson { p: 2, e: 1, f: 2 });
        assert_eq!(nodes, s.nodes);
        assert_eq!(edges, s.edges);
    }

    #[test]
    fn dot_round_trip() {
        let k = make_extension(2, 2, 1, 8).unwrap();
        let s = TreeSlice::build(&k, RationalExponent::new(-1, 2), RationalExponent::integer(1), 2).unwrap();
        let dot = s.to_dot();
        assert!(dot.contains("label=\"w=-1/2;word=[]\""));
        let g = parse_dot(&dot).unwrap();
        assert_eq!(g.edges, s.edges);
        assert_eq!(g.labels.len(), s.len());
        for (id, label) in g.labels {
            assert_eq!(label, s.node_label(id));
        }
    }

    #[test]
    fn rejects_foreign_tag() {
        let bad = r#"{"format":"other/2","spec":{"p":2,"e":1,"f":1},"nodes":[],"edges":[]}"#;
        assert!(TreeSlice::nodes_from_json(bad).is_err());
    }
}
