//! Local recoloring algorithms: rainbow covers of several families,
//! polychromatic colorings, the both-heads improvement loop, and peeling for
//! linear hypergraphs.
//!
//! Each improvement loop starts from the all-zero coloring and records a
//! [`RecolorTrace`]. When a loop cannot make progress the input fails the
//! corresponding hypothesis, and the run ends with
//! [`Error::ConditionViolated`] instead of looping.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::model::{Coloring, DirectedHypergraph, VertexId};
use crate::properties::{check_poly_condition, is_polychromatic, is_proper_coloring, is_rainbow_cover};

/// Largest tuple count [`color_polychromatic`] will enumerate to check its
/// hypothesis.
pub const DEFAULT_POLY_CAP: u128 = 50_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RecolorStep {
    pub vertex: VertexId,
    pub old: usize,
    pub new: usize,
    pub bad_before: usize,
    pub bad_after: usize,
    /// Number of chain vertices inspected before a recolorable one was found.
    pub chain_len: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RecolorTrace {
    pub steps: Vec<RecolorStep>,
}

impl RecolorTrace {
    pub fn is_strictly_decreasing(&self) -> bool {
        self.steps.iter().all(|s| s.bad_after < s.bad_before)
            && self.steps.windows(2).all(|w| w[1].bad_before == w[0].bad_after)
    }
}

fn check_same_vertex_set(hs: &[DirectedHypergraph]) -> Result<usize> {
    let n = hs.first().ok_or_else(|| Error::InvalidArgument("need at least one family".into()))?.n();
    if hs.iter().any(|h| h.n() != n) {
        return Err(Error::InvalidArgument("families live on different vertex sets".into()));
    }
    Ok(n)
}

/// Colors the common vertex set of `hs` with `hs.len()` colors so that every
/// edge of `hs[j]` contains color `j`.
///
/// While some edge `H1` of `hs[t]` misses `t`, a chain is grown inside `H1`:
/// the next vertex `v` of the running intersection is moved to `t` unless
/// some edge of `hs[color(v)]` has `v` as its only vertex of that color, in
/// which case that edge joins the intersection and the chain continues.
/// Under the intersection hypothesis the chain always ends in a recoloring
/// that lowers the number of unsatisfied edges.
pub fn color_rainbow(hs: &[DirectedHypergraph]) -> Result<(Coloring, RecolorTrace)> {
    let n = check_same_vertex_set(hs)?;
    let c = hs.len();
    let sets: Vec<Vec<Vec<VertexId>>> = hs.iter().map(|h| h.edges().iter().map(|e| e.vertices()).collect()).collect();
    let incidence: Vec<Vec<Vec<usize>>> = hs.iter().map(|h| h.incidence()).collect();
    let mut col = Coloring::uniform(n, c, 0);
    let mut trace = RecolorTrace::default();

    let has = |col: &Coloring, e: &[VertexId], color: usize| e.iter().any(|&v| col.get(v) == color);
    let bad_count = |col: &Coloring| -> usize {
        sets.iter().enumerate().map(|(j, es)| es.iter().filter(|e| !has(col, e, j)).count()).sum()
    };

    let mut bad = bad_count(&col);
    while bad > 0 {
        let (target, first) = sets
            .iter()
            .enumerate()
            .find_map(|(j, es)| es.iter().position(|e| !has(&col, e, j)).map(|i| (j, i)))
            .expect("positive bad count has a bad edge");

        let mut meet: Vec<VertexId> = sets[target][first].clone();
        let mut used = vec![false; c];
        used[target] = true;
        let mut chain: Vec<VertexId> = Vec::new();
        let step = loop {
            let Some(&v) = meet.iter().find(|v| !chain.contains(v)) else {
                return Err(Error::ConditionViolated(format!(
                    "intersection of {} chained edges has only {} vertices",
                    chain.len() + 1,
                    meet.len()
                )));
            };
            let a = col.get(v);
            if used[a] {
                return Err(Error::ConditionViolated(format!("chain vertex {v} repeats color {a}")));
            }
            // an edge of hs[a] that would lose its only a-colored vertex
            let blocker = incidence[a][v.0]
                .iter()
                .copied()
                .find(|&i| sets[a][i].iter().all(|&u| u == v || col.get(u) != a));
            match blocker {
                Some(i) => {
                    meet.retain(|u| sets[a][i].binary_search(u).is_ok());
                    used[a] = true;
                    chain.push(v);
                }
                None => {
                    col.set(v, target);
                    let after = bad_count(&col);
                    if after >= bad {
                        return Err(Error::ConditionViolated(format!("recoloring {v} did not help")));
                    }
                    break RecolorStep {
                        vertex: v,
                        old: a,
                        new: target,
                        bad_before: bad,
                        bad_after: after,
                        chain_len: chain.len() + 1,
                    };
                }
            }
        };
        bad = step.bad_after;
        trace.steps.push(step);
    }
    debug_assert!(is_rainbow_cover(hs, &col).is_ok());
    Ok((col, trace))
}

/// A `c`-coloring in which every edge of `h` sees all `c` colors.
///
/// The hypothesis is checked first, as the rainbow condition on `c` copies of
/// `h`; it is refused when that check would enumerate more than
/// [`DEFAULT_POLY_CAP`] tuples.
pub fn color_polychromatic(h: &DirectedHypergraph, c: usize) -> Result<Coloring> {
    if c == 0 {
        return Err(Error::InvalidArgument("need at least one color".into()));
    }
    let copies = vec![h.clone(); c];
    check_poly_condition(&copies, DEFAULT_POLY_CAP)?.map_err(Error::Violation)?;
    let (col, _) = color_rainbow(&copies)?;
    if let Err(i) = is_polychromatic(h, &col, c) {
        return Err(Error::ConditionViolated(format!("edge {i} misses a color")));
    }
    Ok(col)
}

/// Proper 2-coloring when every single-vertex intersection is a head vertex of
/// both edges: flip a tail vertex of the first monochromatic edge until none
/// is left.
pub fn color_specboth(h: &DirectedHypergraph) -> Result<(Coloring, RecolorTrace)> {
    let mut col = Coloring::uniform(h.n(), 2, 0);
    let incidence = h.incidence();
    let mono = |col: &Coloring, i: usize| {
        let e = h.edge(i);
        let first = col.get(e.tail().first().or(e.head().first()).copied().unwrap());
        e.tail().iter().chain(e.head()).all(|&v| col.get(v) == first)
    };
    let mut is_mono: Vec<bool> = (0..h.num_edges()).map(|i| mono(&col, i)).collect();
    let mut bad = is_mono.iter().filter(|&&m| m).count();
    let mut trace = RecolorTrace::default();
    while let Some(i) = is_mono.iter().position(|&m| m) {
        let Some(&v) = h.edge(i).tail().first() else {
            return Err(Error::ConditionViolated(format!("monochromatic edge {i} has no tail vertex")));
        };
        let old = col.get(v);
        col.set(v, 1 - old);
        let mut after = bad;
        for &j in &incidence[v.0] {
            let now = mono(&col, j);
            match (is_mono[j], now) {
                (true, false) => after -= 1,
                (false, true) => after += 1,
                _ => {}
            }
            is_mono[j] = now;
        }
        if after >= bad {
            return Err(Error::ConditionViolated(format!("flipping {v} in edge {i} did not help")));
        }
        trace.steps.push(RecolorStep { vertex: v, old, new: 1 - old, bad_before: bad, bad_after: after, chain_len: 1 });
        bad = after;
    }
    debug_assert!(is_proper_coloring(h, &col).is_ok());
    Ok((col, trace))
}

/// Proper 2-coloring of a linear hypergraph by peeling.
///
/// Isolated vertices are removed first; otherwise a vertex of degree one is
/// removed with its edge. Undoing the removals in reverse order, each peeled
/// vertex takes the color opposite to the smallest other vertex of its edge.
/// A hypergraph without a vertex of degree at most one at some step fails
/// the hypothesis and yields [`Error::StructureViolated`].
pub fn color_linear(h: &DirectedHypergraph) -> Result<Coloring> {
    let n = h.n();
    let incidence = h.incidence();
    let mut degree: Vec<usize> = incidence.iter().map(Vec::len).collect();
    let mut edge_alive = vec![true; h.num_edges()];
    let mut vertex_alive = vec![true; n];
    let mut live_edges = h.num_edges();
    let mut by_degree_one: BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut peeled: Vec<(VertexId, usize)> = Vec::new();

    while live_edges > 0 {
        let Some(v) = by_degree_one.pop_first() else {
            return Err(Error::StructureViolated(format!(
                "no vertex of degree at most one among {} remaining edges",
                live_edges
            )));
        };
        let e = incidence[v].iter().copied().find(|&i| edge_alive[i]).expect("degree one");
        if h.edge(e).len() < 2 {
            return Err(Error::ConditionViolated(format!("edge {e} has a single vertex")));
        }
        edge_alive[e] = false;
        live_edges -= 1;
        vertex_alive[v] = false;
        degree[v] = 0;
        for u in h.edge(e).vertices() {
            if u.0 != v && vertex_alive[u.0] {
                degree[u.0] -= 1;
                match degree[u.0] {
                    1 => {
                        by_degree_one.insert(u.0);
                    }
                    0 => {
                        by_degree_one.remove(&u.0);
                    }
                    _ => {}
                }
            }
        }
        peeled.push((VertexId(v), e));
    }

    let mut col = Coloring::uniform(n, 2, 0);
    for &(v, e) in peeled.iter().rev() {
        let other = h.edge(e).vertices().into_iter().find(|&u| u != v).expect("edge has two vertices");
        col.set(v, 1 - col.get(other));
    }
    debug_assert!(is_proper_coloring(h, &col).is_ok());
    Ok(col)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::parse;
    use crate::properties::{check_linear, check_property_s, is_polychromatic};

    fn p(text: &str) -> DirectedHypergraph {
        parse(text).unwrap()
    }

    #[test]
    fn rainbow_two_families_on_a_pair() {
        let h = p("1 2 ->");
        let (col, trace) = color_rainbow(&[h.clone(), h.clone()]).unwrap();
        assert_ne!(col.get(VertexId(0)), col.get(VertexId(1)));
        assert!(is_rainbow_cover(&[h.clone(), h], &col).is_ok());
        assert!(trace.is_strictly_decreasing());
    }

    #[test]
    fn rainbow_single_color() {
        let h = p("1 ->");
        let (col, trace) = color_rainbow(&[h]).unwrap();
        assert_eq!(col.as_slice(), &[0]);
        assert!(trace.steps.is_empty());
    }

    #[test]
    fn rainbow_three_colors_on_a_triple() {
        let h = p("1 2 3 ->");
        let (col, trace) = color_rainbow(&[h.clone(), h.clone(), h.clone()]).unwrap();
        assert_eq!(is_polychromatic(&h, &col, 3), Ok(()));
        assert!(trace.is_strictly_decreasing());
        assert!(trace.steps.iter().all(|s| s.chain_len <= 3));
    }

    #[test]
    fn rainbow_reports_stuck_chain() {
        // {1} must carry both colors, impossible
        let h = p("1 ->\n1 2 ->");
        let err = color_rainbow(&[h.sub_hypergraph([0]), h.sub_hypergraph([0])]).unwrap_err();
        assert!(matches!(err, Error::ConditionViolated(_)), "{err:?}");
    }

    #[test]
    fn polychromatic_examples() {
        let h = p("1 2 ->");
        let col = color_polychromatic(&h, 2).unwrap();
        assert_eq!(is_polychromatic(&h, &col, 2), Ok(()));

        let h = p("1 2 3 ->\n3 4 5 ->");
        assert!(matches!(color_polychromatic(&h, 2), Err(Error::Violation(_))));

        let h = p("1 2 3 ->\n1 2 3 4 ->");
        let col = color_polychromatic(&h, 2).unwrap();
        assert_eq!(is_polychromatic(&h, &col, 2), Ok(()));
    }

    #[test]
    fn specboth_examples() {
        let h = p("1 2 -> 3\n4 5 -> 3");
        let (col, trace) = color_specboth(&h).unwrap();
        assert_eq!(is_proper_coloring(&h, &col), Ok(()));
        assert!(trace.is_strictly_decreasing());

        let (col, trace) = color_specboth(&DirectedHypergraph::new(3)).unwrap();
        assert_eq!(col.len(), 3);
        assert!(trace.steps.is_empty());

        let h = p("1 2 -> 3");
        let (col, trace) = color_specboth(&h).unwrap();
        assert_eq!(is_proper_coloring(&h, &col), Ok(()));
        assert_eq!(trace.steps.len(), 1);
    }

    #[test]
    fn specboth_failure_is_certified() {
        // fixing `3 -> 4` by flipping 3 makes `1 3 ->` monochromatic
        let h = p("1 -> 2\n3 -> 4\n1 3 ->");
        assert!(matches!(color_specboth(&h), Err(Error::ConditionViolated(_))));
        let h = p("-> 1 2");
        assert!(matches!(color_specboth(&h), Err(Error::ConditionViolated(_))));
    }

    #[test]
    fn linear_examples() {
        let h = p("1 2 -> 3\n4 5 -> 3");
        assert!(check_linear(&h).is_ok() && check_property_s(&h).is_ok());
        assert_eq!(is_proper_coloring(&h, &color_linear(&h).unwrap()), Ok(()));

        let empty = DirectedHypergraph::new(3);
        assert_eq!(color_linear(&empty).unwrap().len(), 3);

        let h = p("1 2 3 -> 4");
        assert_eq!(is_proper_coloring(&h, &color_linear(&h).unwrap()), Ok(()));
    }

    #[test]
    fn linear_without_low_degree_vertex_is_rejected() {
        // Fano plane: linear, every vertex has degree three
        let h = p("1 2 -> 3\n1 4 -> 5\n1 6 -> 7\n2 4 -> 6\n2 5 -> 7\n3 4 -> 7\n3 5 -> 6");
        assert!(check_linear(&h).is_ok());
        assert!(matches!(color_linear(&h), Err(Error::StructureViolated(_))));
    }
}
