//! Checkers for the intersection hypotheses and for coloring quality.
//!
//! Every hypothesis checker returns the lexicographically first failure in
//! edge-index order, as a [`ViolationWitness`] that can be re-checked on its
//! own edges.

use std::fmt;

use crate::error::{Error, Result};
use crate::model::{Coloring, DirectedHyperedge, DirectedHypergraph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    /// Two edges meet in a single vertex that is a tail vertex of both.
    PropertyS,
    /// Two edges meet in a single vertex that is not a head vertex of both,
    /// or an edge has no tail.
    SpecBoth,
    /// Two edges share two or more vertices.
    Linearity,
    /// Edges drawn from distinct families meet in too few vertices.
    PolyCondition,
    /// An edge has too many head vertices.
    HeadCount,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViolationWitness {
    pub kind: ViolationKind,
    /// Offending edge indices. For [`ViolationKind::PolyCondition`] these index
    /// into the families listed in `families`.
    pub edges: Vec<usize>,
    pub families: Vec<usize>,
    pub vertex: Option<VertexId>,
}

impl ViolationWitness {
    fn edges(kind: ViolationKind, edges: Vec<usize>, vertex: Option<VertexId>) -> Self {
        ViolationWitness { kind, edges, families: Vec::new(), vertex }
    }
}

impl fmt::Display for ViolationWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} on edges {:?}", self.kind, self.edges)?;
        if !self.families.is_empty() {
            write!(f, " of families {:?}", self.families)?;
        }
        if let Some(v) = self.vertex {
            write!(f, " at vertex {v}")?;
        }
        Ok(())
    }
}

pub type Check = std::result::Result<(), ViolationWitness>;

/// How many head vertices an edge may carry relative to its tail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeadBound {
    /// `|head| < |tail|`, the hypothesis of the coloring results.
    Fewer,
    /// `|head| <= |tail|`, the relaxation shown to be insufficient.
    AtMost,
}

/// Scans pairs of edges sharing a vertex, bucketed by that vertex, and returns
/// the smallest `(i, j)` for which `bad(i, j, v)` holds. `bucket(e, v)` decides
/// which edges containing `v` take part at `v`. With `needs_lone_meet`, `bad`
/// only fires on pairs meeting in `v` alone, so a bucket whose edges all share
/// a second vertex is skipped without a pair scan.
fn first_bad_pair(
    h: &DirectedHypergraph,
    bucket: impl Fn(&DirectedHyperedge, VertexId) -> bool,
    needs_lone_meet: bool,
    bad: impl Fn(&DirectedHyperedge, &DirectedHyperedge, VertexId) -> bool,
) -> Option<(usize, usize, VertexId)> {
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); h.n()];
    for (i, e) in h.edges().iter().enumerate() {
        for v in e.vertices() {
            if bucket(e, v) {
                members[v.0].push(i);
            }
        }
    }
    let mut best: Option<(usize, usize, VertexId)> = None;
    for (v, list) in members.iter().enumerate() {
        let v = VertexId(v);
        if needs_lone_meet && shares_second_vertex(h, list, v) {
            continue;
        }
        'scan: for (a, &i) in list.iter().enumerate() {
            if best.is_some_and(|(bi, _, _)| bi < i) {
                break;
            }
            for &j in &list[a + 1..] {
                if best.is_some_and(|(bi, bj, _)| (bi, bj) <= (i, j)) {
                    break 'scan;
                }
                if bad(h.edge(i), h.edge(j), v) {
                    best = Some((i, j, v));
                    break 'scan;
                }
            }
        }
    }
    best
}

fn shares_second_vertex(h: &DirectedHypergraph, list: &[usize], v: VertexId) -> bool {
    let Some(&first) = list.first() else { return true };
    let e = h.edge(first);
    e.tail()
        .iter()
        .chain(e.head())
        .any(|&x| x != v && list.iter().all(|&j| h.edge(j).contains(x)))
}

fn overlap(e: &DirectedHyperedge, f: &DirectedHyperedge) -> usize {
    e.tail().iter().chain(e.head()).filter(|&&v| f.contains(v)).count()
}

fn property_s_with(h: &DirectedHypergraph, bound: HeadBound) -> Check {
    let head_ok = |e: &DirectedHyperedge| match bound {
        HeadBound::Fewer => e.head().len() < e.tail().len(),
        HeadBound::AtMost => e.head().len() <= e.tail().len(),
    };
    let first_head = h.edges().iter().position(|e| !head_ok(e));
    let pair = first_bad_pair(h, |e, v| e.is_tail(v), true, |e, f, _| overlap(e, f) == 1);
    pick_first(first_head, pair, ViolationKind::HeadCount, ViolationKind::PropertyS)
}

/// Orders a single-edge failure and a pair failure lexicographically by their
/// edge lists.
fn pick_first(
    single: Option<usize>,
    pair: Option<(usize, usize, VertexId)>,
    single_kind: ViolationKind,
    pair_kind: ViolationKind,
) -> Check {
    match (single, pair) {
        (None, None) => Ok(()),
        (Some(i), Some((a, _, _))) if i <= a => Err(ViolationWitness::edges(single_kind, vec![i], None)),
        (Some(i), None) => Err(ViolationWitness::edges(single_kind, vec![i], None)),
        (_, Some((a, b, v))) => Err(ViolationWitness::edges(pair_kind, vec![a, b], Some(v))),
    }
}

/// Property S: fewer head than tail vertices in every edge, and no two edges
/// meeting in exactly one vertex that is a tail vertex of both.
pub fn check_property_s(h: &DirectedHypergraph) -> Check {
    property_s_with(h, HeadBound::Fewer)
}

/// Property S with `|head| <= |tail|` allowed.
pub fn check_property_s_relaxed(h: &DirectedHypergraph) -> Check {
    property_s_with(h, HeadBound::AtMost)
}

/// Every edge has a tail vertex, and two edges meeting in a single vertex
/// have it as a head vertex of both.
pub fn check_specboth(h: &DirectedHypergraph) -> Check {
    let no_tail = h.edges().iter().position(|e| e.tail().is_empty());
    let pair = first_bad_pair(
        h,
        |_, _| true,
        true,
        |e, f, v| (e.is_tail(v) || f.is_tail(v)) && overlap(e, f) == 1,
    );
    pick_first(no_tail, pair, ViolationKind::SpecBoth, ViolationKind::SpecBoth)
}

/// Every two edges share at most one vertex.
pub fn check_linear(h: &DirectedHypergraph) -> Check {
    match first_bad_pair(h, |_, _| true, false, |e, f, _| overlap(e, f) >= 2) {
        None => Ok(()),
        Some((i, j, _)) => Err(ViolationWitness::edges(ViolationKind::Linearity, vec![i, j], None)),
    }
}

/// Number of tuples [`check_poly_condition`] would have to inspect.
pub fn poly_condition_size(hs: &[DirectedHypergraph]) -> u128 {
    // sum over nonempty family subsets of the product of their sizes
    hs.iter().fold(1u128, |acc, h| acc.saturating_mul(h.num_edges() as u128 + 1)) - 1
}

/// For every `i`, every choice of `i` edges from `i` distinct families has an
/// empty intersection or one of at least `i` vertices. A single edge must be
/// nonempty. The enumeration is refused with [`Error::CapExceeded`] when more
/// than `cap` tuples would be inspected.
pub fn check_poly_condition(hs: &[DirectedHypergraph], cap: u128) -> Result<Check> {
    let needed = poly_condition_size(hs);
    if needed > cap {
        return Err(Error::CapExceeded { needed, cap });
    }
    let sets: Vec<Vec<Vec<VertexId>>> = hs.iter().map(|h| h.edges().iter().map(|e| e.vertices()).collect()).collect();
    let mut families = Vec::new();
    let mut edges = Vec::new();
    Ok(match poly_search(&sets, 0, None, &mut families, &mut edges) {
        Some(()) => Err(ViolationWitness { kind: ViolationKind::PolyCondition, edges, families, vertex: None }),
        None => Ok(()),
    })
}

/// Depth-first over families in increasing order; `current` is the running
/// intersection of the chosen edges. Returns `Some` with the failing choice
/// left in `families`/`edges`.
fn poly_search(
    sets: &[Vec<Vec<VertexId>>],
    from: usize,
    current: Option<&[VertexId]>,
    families: &mut Vec<usize>,
    edges: &mut Vec<usize>,
) -> Option<()> {
    for f in from..sets.len() {
        for (i, e) in sets[f].iter().enumerate() {
            let meet: Vec<VertexId> = match current {
                None => e.clone(),
                Some(cur) => cur.iter().copied().filter(|v| e.binary_search(v).is_ok()).collect(),
            };
            families.push(f);
            edges.push(i);
            let depth = families.len();
            let bad = if depth == 1 { meet.is_empty() } else { !meet.is_empty() && meet.len() < depth };
            if bad {
                return Some(());
            }
            // an empty intersection stays empty, so nothing deeper can fail
            if !meet.is_empty() && poly_search(sets, f + 1, Some(&meet), families, edges).is_some() {
                return Some(());
            }
            families.pop();
            edges.pop();
        }
    }
    None
}

/// `Err(i)` names the first monochromatic edge.
pub fn is_proper_coloring(h: &DirectedHypergraph, col: &Coloring) -> std::result::Result<(), usize> {
    match h.edges().iter().position(|e| {
        let mut vs = e.tail().iter().chain(e.head()).map(|&v| col.get(v));
        let first = vs.next();
        vs.all(|c| Some(c) == first)
    }) {
        Some(i) => Err(i),
        None => Ok(()),
    }
}

fn sees(e: &DirectedHyperedge, col: &Coloring, color: usize) -> bool {
    e.tail().iter().chain(e.head()).any(|&v| col.get(v) == color)
}

/// Every edge contains all of the colors `0..c`. `Err(i)` names the first edge
/// that misses one.
pub fn is_polychromatic(h: &DirectedHypergraph, col: &Coloring, c: usize) -> std::result::Result<(), usize> {
    match h.edges().iter().position(|e| (0..c).any(|color| !sees(e, col, color))) {
        Some(i) => Err(i),
        None => Ok(()),
    }
}

/// Every edge of `hs[j]` contains a vertex of color `j`. `Err((j, i))` names the
/// first family and edge that fail.
pub fn is_rainbow_cover(hs: &[DirectedHypergraph], col: &Coloring) -> std::result::Result<(), (usize, usize)> {
    for (j, h) in hs.iter().enumerate() {
        if let Some(i) = h.edges().iter().position(|e| !sees(e, col, j)) {
            return Err((j, i));
        }
    }
    Ok(())
}

/// Re-evaluates a witness on the listed edges alone.
pub fn witness_holds(h: &DirectedHypergraph, w: &ViolationWitness) -> bool {
    let sub = h.sub_hypergraph(w.edges.iter().copied());
    let check = match w.kind {
        ViolationKind::PropertyS | ViolationKind::HeadCount => check_property_s(&sub),
        ViolationKind::SpecBoth => check_specboth(&sub),
        ViolationKind::Linearity => check_linear(&sub),
        ViolationKind::PolyCondition => return false,
    };
    check.is_err_and(|re| re.kind == w.kind)
}
