use std::fs;
use std::io::{self, Read};
use std::path::Path;

use dhcolor::constructions::{
    lower_bound_construction, oriented_lower_bound, pattern_by_name, star_construction, tightness_construction,
};
use dhcolor::model::{
    dedup_same_support, is_oriented, is_two_one, normalize_three_uniform, parse, serialize, serialize_coloring,
    Coloring, DirectedHypergraph,
};
use dhcolor::oracle::{brute_force_k_colorable, brute_force_polychromatic, contains_subhypergraph, DEFAULT_VERTEX_CAP};
use dhcolor::properties::{
    check_linear, check_property_s, check_property_s_relaxed, check_specboth, is_polychromatic, is_proper_coloring,
    ViolationWitness,
};
use dhcolor::recolor::{color_linear, color_polychromatic, color_specboth};
use dhcolor::two_one::analyze;
use dhcolor::Error;

use crate::report::sha256_hex;
use crate::{Algorithm, GenKind, OracleKind, Property};

/// Assignment cap for `oracle poly` when none is given.
const DEFAULT_POLY_ORACLE_CAP: u128 = 1 << 24;

#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: u8,
    /// Printed to stdout for codes 0 and 1, to stderr otherwise.
    pub message: String,
    /// Short description for the run report.
    pub detail: String,
}

impl Outcome {
    fn new(code: u8, message: impl Into<String>) -> Self {
        let message = message.into();
        Outcome { code, detail: message.clone(), message }
    }

    fn ok(message: impl Into<String>) -> Self {
        Outcome::new(0, message)
    }

    fn negative(message: impl Into<String>) -> Self {
        Outcome::new(1, message)
    }

    fn input(message: impl Into<String>) -> Self {
        Outcome::new(2, message)
    }

    fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Violation(_) | Error::ConditionViolated(_) | Error::NotTwoOne { .. } => 1,
            Error::StructureViolated(_) => 3,
            Error::CapExceeded { .. } => 4,
            _ => 2,
        };
        Outcome::new(code, e.to_string())
    }
}

type Run = Result<Outcome, Outcome>;

fn read_input(path: &str, digest: &mut Option<String>) -> Result<DirectedHypergraph, Outcome> {
    let bytes = if path == "-" {
        let mut buf = Vec::new();
        io::stdin().read_to_end(&mut buf).map(|_| buf)
    } else {
        fs::read(path)
    }
    .map_err(|e| Outcome::input(format!("{path}: {e}")))?;
    *digest = Some(sha256_hex(&bytes));
    let text = String::from_utf8(bytes).map_err(|e| Outcome::input(format!("{path}: {e}")))?;
    parse(&text).map_err(|e| Outcome::input(format!("{path}: {e}")))
}

fn write_output(output: Option<&Path>, text: &str) -> Result<String, Outcome> {
    match output {
        Some(path) => {
            fs::write(path, text).map_err(|e| Outcome::input(format!("{}: {e}", path.display())))?;
            Ok(path.display().to_string())
        }
        None => {
            print!("{text}");
            Ok("stdout".into())
        }
    }
}

fn edge_text(h: &DirectedHypergraph, i: usize) -> String {
    serialize(&h.sub_hypergraph([i])).trim_end().to_string()
}

fn describe(h: &DirectedHypergraph, w: &ViolationWitness) -> String {
    let edges: Vec<String> = w.edges.iter().map(|&i| format!("edge {i} `{}`", edge_text(h, i))).collect();
    let mut out = format!("{:?}: {}", w.kind, edges.join(", "));
    if let Some(v) = w.vertex {
        out.push_str(&format!(" at vertex {}", h.name(v)));
    }
    out
}

/// Like `Outcome::from`, but names the offending edges of a witness.
fn failure(h: &DirectedHypergraph, e: Error) -> Outcome {
    match e {
        Error::Violation(w) => Outcome::negative(format!("violation: {}", describe(h, &w))),
        e => e.into(),
    }
}

fn first_non_two_one(h: &DirectedHypergraph) -> Option<usize> {
    h.edges().iter().position(|e| e.as_two_one().is_none())
}

pub fn check(property: Property, input: &str, digest: &mut Option<String>) -> Run {
    let h = read_input(input, digest)?;
    let witness = |r: Result<(), ViolationWitness>| r.map_err(|w| describe(&h, &w));
    let result = match property {
        Property::PropertyS => witness(check_property_s(&h)),
        Property::PropertySRelaxed => witness(check_property_s_relaxed(&h)),
        Property::Specboth => witness(check_specboth(&h)),
        Property::Linear => witness(check_linear(&h)),
        Property::TwoOne => match first_non_two_one(&h) {
            Some(i) => Err(format!("edge {i} `{}` is not of the form ab -> c", edge_text(&h, i))),
            None => Ok(()),
        },
        Property::Oriented => {
            if is_oriented(&h).map_err(|e| failure(&h, e))? {
                Ok(())
            } else {
                let (_, map) = dedup_same_support(&h);
                let (i, r) = map.removed().next().expect("not oriented, so something was merged");
                let j = map.kept[r];
                Err(format!("edges {j} `{}` and {i} `{}` share their vertices", edge_text(&h, j), edge_text(&h, i)))
            }
        }
    };
    Ok(match result {
        Ok(()) => Outcome::ok("ok"),
        Err(m) => Outcome::negative(format!("violation: {m}")),
    })
}

/// Brings a 3-uniform input into 2->1 form when possible.
fn as_two_one(h: &DirectedHypergraph) -> Option<DirectedHypergraph> {
    if is_two_one(h) {
        Some(h.clone())
    } else {
        normalize_three_uniform(h).ok()
    }
}

fn pick_algorithm(h: &DirectedHypergraph) -> Result<Algorithm, Outcome> {
    if check_specboth(h).is_ok() {
        return Ok(Algorithm::Specboth);
    }
    let property_s = check_property_s(h);
    if property_s.is_ok() {
        if as_two_one(h).is_some() {
            return Ok(Algorithm::Main);
        }
        if check_linear(h).is_ok() {
            return Ok(Algorithm::Linear);
        }
    }
    let why = match property_s {
        Err(w) => describe(h, &w),
        Ok(()) => "Property S holds but the input is neither 2->1 nor linear".into(),
    };
    Err(Outcome::negative(format!("no coloring algorithm applies: {why}")))
}

fn write_structure(target: &str, text: &str) -> Result<(), Outcome> {
    if target == "-" {
        eprint!("{text}");
        Ok(())
    } else {
        fs::write(target, text).map_err(|e| Outcome::input(format!("{target}: {e}")))
    }
}

pub fn color(
    algorithm: Algorithm,
    c: Option<usize>,
    output: Option<&Path>,
    dump_structure: Option<&str>,
    input: &str,
    digest: &mut Option<String>,
) -> Run {
    let h = read_input(input, digest)?;
    let algorithm = match algorithm {
        Algorithm::Auto => pick_algorithm(&h)?,
        a => a,
    };
    if dump_structure.is_some() && algorithm != Algorithm::Main {
        return Err(Outcome::input("--dump-structure needs the main algorithm"));
    }
    let colors = match algorithm {
        Algorithm::Poly => c.ok_or_else(|| Outcome::input("--c is required for poly"))?,
        _ => 2,
    };

    let col: Coloring = match algorithm {
        Algorithm::Main => {
            let g = match as_two_one(&h) {
                Some(g) => g,
                None => {
                    let i = first_non_two_one(&h).expect("not 2->1");
                    return Err(Outcome::negative(format!(
                        "violation: edge {i} `{}` is not of the form ab -> c",
                        edge_text(&h, i)
                    )));
                }
            };
            let analysis = analyze(&g).map_err(|e| failure(&g, e))?;
            if let Some(target) = dump_structure {
                write_structure(target, &analysis.report(&g))?;
            }
            analysis.coloring
        }
        Algorithm::Linear => {
            for w in [check_linear(&h), check_property_s(&h)] {
                w.map_err(|w| Outcome::negative(format!("violation: {}", describe(&h, &w))))?;
            }
            color_linear(&h).map_err(|e| failure(&h, e))?
        }
        Algorithm::Specboth => {
            check_specboth(&h).map_err(|w| Outcome::negative(format!("violation: {}", describe(&h, &w))))?;
            color_specboth(&h).map_err(|e| failure(&h, e))?.0
        }
        Algorithm::Poly => color_polychromatic(&h, colors).map_err(|e| failure(&h, e))?,
        Algorithm::Auto => unreachable!("resolved above"),
    };

    let verified = match algorithm {
        Algorithm::Poly => is_polychromatic(&h, &col, colors),
        _ => is_proper_coloring(&h, &col),
    };
    if let Err(i) = verified {
        return Err(Outcome::new(3, format!("internal error: edge {i} `{}` is not colored correctly", edge_text(&h, i))));
    }

    let name = format!("{algorithm:?}").to_lowercase();
    let written = write_output(output, &serialize_coloring(&h, &col))?;
    let message = if output.is_some() { format!("colored with {name}, written to {written}") } else { String::new() };
    Ok(Outcome::ok(message).with_detail(format!("algorithm {name}, coloring written to {written}")))
}

pub fn generate(kind: GenKind, n: Option<usize>, k: Option<usize>, name: Option<&str>, output: Option<&Path>) -> Run {
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| Outcome::input(format!("--{flag} is required")));
    let h = match kind {
        GenKind::LowerBound => lower_bound_construction(need(n, "n")?)?,
        GenKind::OrientedLowerBound => oriented_lower_bound(need(n, "n")?)?,
        GenKind::Tightness => tightness_construction(need(k, "k")?)?,
        GenKind::Star => star_construction(need(n, "n")?, need(k, "k")?)?,
        GenKind::Pattern => pattern_by_name(name.ok_or_else(|| Outcome::input("--name is required"))?)?.hypergraph,
    };
    let written = write_output(output, &serialize(&h))?;
    let message = if output.is_some() { format!("{} edges written to {written}", h.num_edges()) } else { String::new() };
    Ok(Outcome::ok(message).with_detail(format!("{} edges written to {written}", h.num_edges())))
}

pub fn contains(pattern_name: &str, cap: u128, input: &str, digest: &mut Option<String>) -> Run {
    let pattern = pattern_by_name(pattern_name)?;
    let h = read_input(input, digest)?;
    let p = &pattern.hypergraph;
    Ok(match contains_subhypergraph(&h, p, cap)? {
        None => Outcome::ok(format!("avoids {}", pattern.name)),
        Some(emb) => {
            let vertices: Vec<String> =
                emb.vertex_map.iter().enumerate().map(|(i, &v)| format!("{}={}", p.names()[i], h.name(v))).collect();
            let edges: Vec<String> = emb.edge_map.iter().map(|&i| format!("edge {i} `{}`", edge_text(&h, i))).collect();
            Outcome::negative(format!("contains {}: {}; {}", pattern.name, vertices.join(" "), edges.join(", ")))
        }
    })
}

pub fn oracle(kind: OracleKind, c: Option<usize>, cap: Option<u128>, input: &str, digest: &mut Option<String>) -> Run {
    let h = read_input(input, digest)?;
    let need_c = || c.ok_or_else(|| Outcome::input("--c is required"));
    let vertex_cap = || cap.map_or(DEFAULT_VERTEX_CAP, |v| v.min(usize::MAX as u128) as usize);
    let (colors, found) = match kind {
        OracleKind::TwoColor => (2, brute_force_k_colorable(&h, 2, vertex_cap())?),
        OracleKind::Color => {
            let c = need_c()?;
            (c, brute_force_k_colorable(&h, c, vertex_cap())?)
        }
        OracleKind::Poly => {
            let c = need_c()?;
            (c, brute_force_polychromatic(&h, c, cap.unwrap_or(DEFAULT_POLY_ORACLE_CAP))?)
        }
    };
    match found {
        Some(col) => {
            print!("{}", serialize_coloring(&h, &col));
            Ok(Outcome::ok("").with_detail(format!("colorable with {colors} colors")))
        }
        None => Ok(Outcome::negative(format!("no suitable coloring with {colors} colors"))),
    }
}
