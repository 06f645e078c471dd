use std::fmt::Write as _;

use serde_json::{json, Value};
use ultratree::berkovich::{BerkPoint, Ext, WPoint};
use ultratree::chordal::{canonical_class_m, chordal_u_exponent, ProductPoint};
use ultratree::coarse_grain::{brute_force_partition, census_audit, stratified_corpus, PartitionReport};
use ultratree::literal::{format_digits, format_element, format_power};
use ultratree::padic::{make_extension, PAdicElement, RationalExponent, SpecRef};
use ultratree::tree::{BruhatTitsTree, TreeNode, TreeSlice};
use ultratree::{Error, ErrorClass, FORMAT_TAG};

use crate::{Audit, Cli, Command, Format, MapDir, Metric};

pub const EXIT_INTERNAL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_BOUNDS: u8 = 3;
pub const EXIT_DOMAIN: u8 = 4;
pub const EXIT_AUDIT: u8 = 5;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

/// Attaches the offending flag to a library error and picks its exit code.
trait FlagContext<T> {
    fn flag(self, name: &str) -> Result<T, Failure>;
}

impl<T> FlagContext<T> for Result<T, Error> {
    fn flag(self, name: &str) -> Result<T, Failure> {
        self.map_err(|e| {
            let code = match e.class() {
                ErrorClass::Usage => EXIT_USAGE,
                ErrorClass::Bounds => EXIT_BOUNDS,
                ErrorClass::Domain => EXIT_DOMAIN,
                ErrorClass::Internal => EXIT_INTERNAL,
            };
            Failure { code, message: format!("{name}: {e}") }
        })
    }
}

/// Rendered output, plus a failure to report once it has been written.
struct Output {
    text: String,
    verdict: Option<Failure>,
}

impl From<String> for Output {
    fn from(text: String) -> Self {
        Output { text, verdict: None }
    }
}

pub fn run(cli: &Cli) -> Result<(), Failure> {
    let s = &cli.spec;
    let spec = make_extension(s.p, s.e, s.f, s.precision);
    let flag = match &spec {
        Err(Error::NotPrime(_)) => "--p",
        Err(Error::InvalidParameter { name, .. }) if *name == "e" => "--e",
        Err(Error::InvalidParameter { name, .. }) if *name == "f" => "--f",
        Err(Error::ResidueFieldTooLarge { .. }) => "--p/--f",
        _ => "--precision",
    };
    let spec = spec.flag(flag)?;
    let out = match &cli.command {
        Command::Tree { omega, depth, enhanced } => tree(cli, &spec, omega, *depth, *enhanced)?.into(),
        Command::Distance { metric, a, b } => distance(cli, &spec, *metric, a, b)?.into(),
        Command::Classify { berk, w, point, map, class, m } => {
            let input = Input::pick(berk, w, point)?;
            classify(cli, &spec, input, *map, *class, *m)?.into()
        }
        Command::Audit(Audit::Census { m }) => census(cli, &spec, m)?,
        Command::Audit(Audit::Partition { n, levels }) => partition(cli, &spec, *n, levels)?,
    };
    let mut text = out.text;
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &cli.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure { code: EXIT_INTERNAL, message: format!("--out {}: {e}", path.display()) })?,
        None => print!("{text}"),
    }
    out.verdict.map_or(Ok(()), Err)
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize")
}

fn no_dot(cli: &Cli, default: Format) -> Result<Format, Failure> {
    match cli.format.unwrap_or(default) {
        Format::Dot => Err(Failure::usage("--format: dot output is only available for `tree`")),
        f => Ok(f),
    }
}

fn parse_range<T: std::str::FromStr<Err = Error>>(flag: &str, s: &str) -> Result<(T, T), Failure> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| Failure::usage(format!("{flag}: expected `lo:hi`, got `{s}`")))?;
    Ok((lo.trim().parse().flag(flag)?, hi.trim().parse().flag(flag)?))
}

fn parse_levels(flag: &str, s: &str, single_from_one: bool) -> Result<(u32, u32), Failure> {
    let num = |t: &str| t.trim().parse::<u32>().map_err(|_| Failure::usage(format!("{flag}: `{t}` is not a level")));
    let (lo, hi) = match s.split_once(':') {
        Some((a, b)) => (num(a)?, num(b)?),
        None if single_from_one => (1, num(s)?),
        None => (num(s)?, num(s)?),
    };
    if lo > hi {
        return Err(Failure::usage(format!("{flag}: empty range `{s}`")));
    }
    Ok((lo, hi))
}

fn tree(cli: &Cli, spec: &SpecRef, omega: &str, depth: u32, enhanced: Option<u32>) -> Result<String, Failure> {
    let (lo, hi): (RationalExponent, RationalExponent) = parse_range("--omega", omega)?;
    let mut slice = TreeSlice::build(spec, lo, hi, depth).flag("--omega/--depth")?;
    if let Some(m) = enhanced {
        slice = slice.enhance(spec, m).flag("--enhanced")?;
    }
    Ok(match cli.format.unwrap_or(Format::Json) {
        Format::Json => slice.to_json(),
        Format::Dot => slice.to_dot(),
        Format::Text => slice.to_text(),
    })
}

fn distance(cli: &Cli, spec: &SpecRef, metric: Metric, a: &str, b: &str) -> Result<String, Failure> {
    let format = no_dot(cli, Format::Text)?;
    let (name, value) = match metric {
        Metric::Rho => {
            let x = BerkPoint::parse(spec, a).flag("A")?;
            let y = BerkPoint::parse(spec, b).flag("B")?;
            ("rho", x.rho(&y).flag("--metric rho")?.to_string())
        }
        Metric::Chordal => {
            let x = ProductPoint::parse(spec, a).flag("A")?;
            let y = ProductPoint::parse(spec, b).flag("B")?;
            ("chordal", format_power(spec.p(), chordal_u_exponent(&x, &y).flag("--metric chordal")?))
        }
        Metric::Graph => {
            let x = TreeNode::parse(spec, a).flag("A")?;
            let y = TreeNode::parse(spec, b).flag("B")?;
            ("graph", BruhatTitsTree::new(spec).graph_distance(&x, &y).to_string())
        }
    };
    Ok(match format {
        Format::Json => pretty(&json!({ "format": FORMAT_TAG, "metric": name, "value": value })),
        _ => value,
    })
}

enum Input<'a> {
    Berk(&'a str),
    W(&'a str),
    Point(&'a str),
}

impl<'a> Input<'a> {
    fn pick(berk: &'a Option<String>, w: &'a Option<String>, point: &'a Option<String>) -> Result<Self, Failure> {
        match (berk, w, point) {
            (Some(s), None, None) => Ok(Input::Berk(s)),
            (None, Some(s), None) => Ok(Input::W(s)),
            (None, None, Some(s)) => Ok(Input::Point(s)),
            _ => Err(Failure::usage("classify: give exactly one of --berk, --w, --point")),
        }
    }
}

fn w_json(w: &WPoint) -> Value {
    json!({ "omega": w.omega.to_string(), "center": format_element(&w.center) })
}

fn berk_json(pt: &BerkPoint) -> Value {
    serde_json::to_value(pt.to_json_value()).expect("json values serialize")
}

fn classify(
    cli: &Cli,
    spec: &SpecRef,
    input: Input,
    map: Option<MapDir>,
    class: bool,
    m: u32,
) -> Result<String, Failure> {
    let format = no_dot(cli, Format::Json)?;
    let mut report = serde_json::Map::new();
    report.insert("format".into(), json!(FORMAT_TAG));
    let (disk, product) = match input {
        Input::Berk(s) => {
            let pt = BerkPoint::parse(spec, s).flag("--berk")?;
            match map {
                Some(MapDir::Phi) => {
                    report.insert("phi_image".into(), w_json(&pt.phi(spec)));
                }
                Some(MapDir::PhiInv) => return Err(Failure::usage("--map phi-inv applies to --w and --point")),
                None => {}
            }
            (pt, None)
        }
        Input::W(s) => {
            let w = WPoint::parse(spec, s).flag("--w")?;
            (preimage(&mut report, &w, map)?, None)
        }
        Input::Point(s) => {
            let pt = ProductPoint::parse(spec, s).flag("--point")?;
            let w = WPoint::new(Ext::from(pt.z0().valuation()), pt.z().clone());
            (preimage(&mut report, &w, map)?, Some(pt))
        }
    };
    report.insert("type".into(), json!(disk.classify()));
    if class {
        let pt = product.ok_or_else(|| Failure::usage("--class applies to --point"))?;
        let c = canonical_class_m(&pt, m).flag("--class")?;
        let center = PAdicElement::from_digits(spec, &c.base.word);
        let mut rep = json!({
            "omega": c.base.omega.to_string(),
            "word": format_digits(spec.residue_field(), &c.base.word.digits),
            "center": format_element(&center),
        });
        if m > 0 {
            rep["m"] = json!(m);
            rep["z0_word"] = json!(format_digits(spec.residue_field(), &c.z0_word));
            rep["z_word"] = json!(format_digits(spec.residue_field(), &c.z_word));
        }
        report.insert("class_rep".into(), rep);
    }
    Ok(match format {
        Format::Json => pretty(&Value::Object(report)),
        _ => text_report(&report),
    })
}

fn preimage(
    report: &mut serde_json::Map<String, Value>,
    w: &WPoint,
    map: Option<MapDir>,
) -> Result<BerkPoint, Failure> {
    let disk = w.phi_inv();
    match map {
        Some(MapDir::PhiInv) => {
            report.insert("phi_preimage".into(), berk_json(&disk));
        }
        Some(MapDir::Phi) => return Err(Failure::usage("--map phi applies to --berk")),
        None => {}
    }
    Ok(disk)
}

fn text_report(report: &serde_json::Map<String, Value>) -> String {
    let mut out = String::new();
    for (k, v) in report {
        match v {
            Value::String(s) => writeln!(out, "{k}: {s}"),
            Value::Object(o) => {
                let parts: Vec<String> = o
                    .iter()
                    .map(|(ik, iv)| match iv {
                        Value::String(s) => format!("{ik}={s}"),
                        other => format!("{ik}={other}"),
                    })
                    .collect();
                writeln!(out, "{k}: {}", parts.join(";"))
            }
            other => writeln!(out, "{k}: {other}"),
        }
        .expect("writing to a string");
    }
    out
}

fn spec_json(spec: &SpecRef) -> Value {
    json!({ "p": spec.p(), "e": spec.e(), "f": spec.f() })
}

fn census(cli: &Cli, spec: &SpecRef, m: &str) -> Result<Output, Failure> {
    let format = no_dot(cli, Format::Json)?;
    let (lo, hi) = parse_levels("--m", m, true)?;
    let rows = census_audit(spec, lo..=hi).flag("--m")?;
    let ok = rows.iter().all(|r| r.agrees());
    let text = match format {
        Format::Json => pretty(&json!({
            "format": FORMAT_TAG,
            "audit": "census",
            "spec": spec_json(spec),
            "rows": rows,
            "ok": ok,
        })),
        _ => {
            let mut out = String::from("m closed_form tree_enumerated class_enumerated\n");
            for r in &rows {
                writeln!(out, "{} {} {} {}", r.m, r.closed_form, r.tree_enumerated, r.class_enumerated).unwrap();
            }
            out
        }
    };
    let verdict = (!ok).then(|| Failure { code: EXIT_AUDIT, message: "census counts disagree".into() });
    Ok(Output { text, verdict })
}

fn partition(cli: &Cli, spec: &SpecRef, n: usize, levels: &str) -> Result<Output, Failure> {
    let format = no_dot(cli, Format::Json)?;
    let (lo, hi) = parse_levels("--levels", levels, false)?;
    if n > ultratree::coarse_grain::MAX_PARTITION_POINTS {
        return Err(Failure {
            code: EXIT_BOUNDS,
            message: format!("--n: {n} exceeds {} points", ultratree::coarse_grain::MAX_PARTITION_POINTS),
        });
    }
    let corpus = stratified_corpus(spec, n, cli.seed);
    let reports = (lo..=hi)
        .map(|level| brute_force_partition(&corpus, level))
        .collect::<Result<Vec<PartitionReport>, Error>>()
        .flag("--n")?;
    let ok = reports.iter().all(PartitionReport::is_consistent);
    let text = match format {
        Format::Json => pretty(&json!({
            "format": FORMAT_TAG,
            "audit": "partition",
            "spec": spec_json(spec),
            "n": n,
            "seed": cli.seed,
            "reports": reports,
            "ok": ok,
        })),
        _ => {
            let mut out = String::new();
            for r in &reports {
                writeln!(
                    out,
                    "level {}: points {}, classes {} / {}, mismatches {}, violations {}",
                    r.level,
                    r.n_points,
                    r.n_classes_bruteforce,
                    r.n_classes_canonical,
                    r.mismatches.len(),
                    r.transitivity_violations.len()
                )
                .unwrap();
            }
            out
        }
    };
    let verdict = (!ok).then(|| {
        let mut message = String::from("partition audit failed");
        for r in reports.iter().filter(|r| !r.is_consistent()) {
            for [i, j] in &r.mismatches {
                write!(message, "\n  level {}: mismatch {} / {}", r.level, corpus[*i], corpus[*j]).unwrap();
            }
            for [a, b, c] in &r.transitivity_violations {
                write!(
                    message,
                    "\n  level {}: {} ~ {} ~ {} but not the ends",
                    r.level, corpus[*a], corpus[*b], corpus[*c]
                )
                .unwrap();
            }
        }
        Failure { code: EXIT_AUDIT, message }
    });
    Ok(Output { text, verdict })
}
