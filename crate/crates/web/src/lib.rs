//! Browser bindings: draw a window of the Bruhat-Tits tree, measure
//! distances, and classify Berkovich points. The plain functions return
//! `Result<String, String>` so they can be tested natively; the exported
//! wrappers turn errors into JavaScript exceptions.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde_json::json;
use ultratree::berkovich::{BerkPoint, WPoint};
use ultratree::chordal::{chordal_u_exponent, ProductPoint};
use ultratree::literal::{format_element, format_power};
use ultratree::padic::{make_extension, RationalExponent, SpecRef};
use ultratree::tree::{BruhatTitsTree, SliceNode, TreeNode, TreeSlice};
use wasm_bindgen::prelude::*;

const DEMO_PRECISION: u32 = 16;
const MAX_DRAWN_NODES: usize = 2000;

fn spec(p: u32, e: u32, f: u32) -> Result<SpecRef, String> {
    make_extension(u64::from(p), e, f, DEMO_PRECISION).map_err(|e| e.to_string())
}

fn exponent(s: &str) -> Result<RationalExponent, String> {
    s.trim().parse().map_err(|e: ultratree::Error| e.to_string())
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// SVG drawing of the slice between two trunk exponents: exponent grows to
/// the right, leaves are spread vertically in depth-first order.
pub fn tree_svg(p: u32, e: u32, f: u32, omega_lo: &str, omega_hi: &str, depth: u32) -> Result<String, String> {
    let k = spec(p, e, f)?;
    let slice = TreeSlice::build(&k, exponent(omega_lo)?, exponent(omega_hi)?, depth).map_err(|e| e.to_string())?;
    if slice.len() > MAX_DRAWN_NODES {
        return Err(format!("{} nodes is too many to draw; narrow the window or the depth", slice.len()));
    }
    let mut children: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut has_parent = vec![false; slice.len()];
    for &(a, b) in &slice.edges {
        children.entry(a).or_default().push(b);
        has_parent[b] = true;
    }
    let level = |id: usize| match &slice.nodes[id] {
        SliceNode::Base(b) => b.level(),
        SliceNode::Refined(r) => r.base.level(),
    };

    let mut y = vec![0.0f64; slice.len()];
    let mut next_leaf = 0.0;
    fn place(id: usize, children: &HashMap<usize, Vec<usize>>, y: &mut [f64], next_leaf: &mut f64) {
        match children.get(&id) {
            Some(cs) if !cs.is_empty() => {
                for &c in cs {
                    place(c, children, y, next_leaf);
                }
                y[id] = cs.iter().map(|&c| y[c]).sum::<f64>() / cs.len() as f64;
            }
            _ => {
                y[id] = *next_leaf;
                *next_leaf += 1.0;
            }
        }
    }
    for id in (0..slice.len()).filter(|&i| !has_parent[i]) {
        place(id, &children, &mut y, &mut next_leaf);
    }

    let (dx, dy, margin) = (90.0, 18.0, 30.0);
    let x = |id: usize| margin + (level(id) - slice.level_min) as f64 * dx;
    let yy = |id: usize| margin + y[id] * dy;
    let width = margin * 2.0 + (slice.level_max - slice.level_min).max(0) as f64 * dx;
    let height = margin * 2.0 + (next_leaf - 1.0).max(0.0) * dy;

    let mut svg = String::new();
    write!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    )
    .unwrap();
    for &(a, b) in &slice.edges {
        write!(svg, r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#8a8f98"/>"##, x(a), yy(a), x(b), yy(b)).unwrap();
    }
    for id in 0..slice.len() {
        let trunk = matches!(&slice.nodes[id], SliceNode::Base(b) if b.is_trunk());
        let fill = if trunk { "#c0392b" } else { "#2c6fbb" };
        write!(
            svg,
            r#"<circle cx="{}" cy="{}" r="4" fill="{fill}"><title>{}</title></circle>"#,
            x(id),
            yy(id),
            escape(&slice.node_label(id))
        )
        .unwrap();
    }
    svg.push_str("</svg>");
    Ok(svg)
}

/// Distance between two literals: `rho` on disks, `chordal` on product
/// points, `graph` on tree nodes.
pub fn distance(p: u32, e: u32, f: u32, metric: &str, a: &str, b: &str) -> Result<String, String> {
    let k = spec(p, e, f)?;
    let s = |e: ultratree::Error| e.to_string();
    match metric {
        "rho" => {
            let x = BerkPoint::parse(&k, a).map_err(s)?;
            let y = BerkPoint::parse(&k, b).map_err(s)?;
            Ok(x.rho(&y).map_err(s)?.to_string())
        }
        "chordal" => {
            let x = ProductPoint::parse(&k, a).map_err(s)?;
            let y = ProductPoint::parse(&k, b).map_err(s)?;
            Ok(format_power(k.p(), chordal_u_exponent(&x, &y).map_err(s)?))
        }
        "graph" => {
            let x = TreeNode::parse(&k, a).map_err(s)?;
            let y = TreeNode::parse(&k, b).map_err(s)?;
            Ok(BruhatTitsTree::new(&k).graph_distance(&x, &y).to_string())
        }
        other => Err(format!("unknown metric `{other}`")),
    }
}

/// Type of a disk `center=..,rexp=..` or of the preimage of a point
/// `omega=..,center=..`, with the point on the other side of the map.
pub fn classify(p: u32, e: u32, f: u32, literal: &str) -> Result<String, String> {
    let k = spec(p, e, f)?;
    let s = |e: ultratree::Error| e.to_string();
    let report = if literal.contains("omega") {
        let disk = WPoint::parse(&k, literal).map_err(s)?.phi_inv();
        json!({ "type": disk.classify(), "phi_preimage": disk.to_json_value() })
    } else {
        let disk = BerkPoint::parse(&k, literal).map_err(s)?;
        let w = disk.phi(&k);
        json!({
            "type": disk.classify(),
            "phi_image": { "omega": w.omega.to_string(), "center": format_element(&w.center) },
        })
    };
    Ok(report.to_string())
}

#[wasm_bindgen(js_name = treeSvg)]
pub fn tree_svg_js(p: u32, e: u32, f: u32, omega_lo: &str, omega_hi: &str, depth: u32) -> Result<String, JsValue> {
    tree_svg(p, e, f, omega_lo, omega_hi, depth).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = distance)]
pub fn distance_js(p: u32, e: u32, f: u32, metric: &str, a: &str, b: &str) -> Result<String, JsValue> {
    distance(p, e, f, metric, a, b).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = classify)]
pub fn classify_js(p: u32, e: u32, f: u32, literal: &str) -> Result<String, JsValue> {
    classify(p, e, f, literal).map_err(|e| JsValue::from_str(&e))
}
