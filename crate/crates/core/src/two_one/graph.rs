//! The labeled graph of a 2->1 hypergraph: edge `ab` with label `s` for every
//! hyperedge `ab -> s`, the overloaded pairs carrying parallel edges, the
//! simple graph left after thinning them, and the partial orientation.

use std::collections::HashMap;

use super::violation;
use crate::error::{Error, Result};
use crate::model::{DirectedHypergraph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Undirected,
    TowardA,
    TowardB,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LabeledEdge {
    pub a: VertexId,
    pub b: VertexId,
    pub label: VertexId,
    pub orientation: Orientation,
}

impl LabeledEdge {
    pub fn other(&self, v: VertexId) -> VertexId {
        if v == self.a {
            self.b
        } else {
            debug_assert_eq!(v, self.b);
            self.a
        }
    }

    pub fn has(&self, v: VertexId) -> bool {
        v == self.a || v == self.b
    }

    /// Directed towards `v` (possibly also towards the other endpoint).
    pub fn toward(&self, v: VertexId) -> bool {
        matches!(
            (self.orientation, v == self.a),
            (Orientation::Both, _) | (Orientation::TowardA, true) | (Orientation::TowardB, false)
        )
    }

    /// Directed towards `v` and not towards the other endpoint.
    pub fn only_toward(&self, v: VertexId) -> bool {
        self.toward(v) && !self.toward(self.other(v))
    }

    /// Undirected or directed both ways.
    pub fn is_symmetric(&self) -> bool {
        matches!(self.orientation, Orientation::Undirected | Orientation::Both)
    }
}

fn key(a: VertexId, b: VertexId) -> (usize, usize) {
    (a.0.min(b.0), a.0.max(b.0))
}

/// Multigraph with vertex labels on its edges. `origin[i]` is the hyperedge
/// that edge `i` stands for.
#[derive(Debug, Clone)]
pub struct LabeledGraph {
    n: usize,
    edges: Vec<LabeledEdge>,
    origin: Vec<usize>,
    incident: Vec<Vec<usize>>,
    between: HashMap<(usize, usize), Vec<usize>>,
}

impl LabeledGraph {
    fn from_parts(n: usize, edges: Vec<LabeledEdge>, origin: Vec<usize>) -> Self {
        let mut incident = vec![Vec::new(); n];
        let mut between: HashMap<(usize, usize), Vec<usize>> = HashMap::with_capacity(edges.len());
        for (i, e) in edges.iter().enumerate() {
            incident[e.a.0].push(i);
            incident[e.b.0].push(i);
            between.entry(key(e.a, e.b)).or_default().push(i);
        }
        LabeledGraph { n, edges, origin, incident, between }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[LabeledEdge] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &LabeledEdge {
        &self.edges[i]
    }

    pub fn origin(&self, i: usize) -> usize {
        self.origin[i]
    }

    pub fn incident(&self, v: VertexId) -> &[usize] {
        &self.incident[v.0]
    }

    pub fn between(&self, a: VertexId, b: VertexId) -> &[usize] {
        self.between.get(&key(a, b)).map_or(&[], Vec::as_slice)
    }

    pub fn adjacent(&self, a: VertexId, b: VertexId) -> bool {
        self.between.contains_key(&key(a, b))
    }

    /// The unique edge on `{a, b}` of a simple graph.
    pub fn simple_edge(&self, a: VertexId, b: VertexId) -> Option<usize> {
        self.between(a, b).first().copied()
    }

    pub fn is_simple(&self) -> bool {
        self.between.values().all(|es| es.len() == 1)
    }
}

/// One edge per hyperedge `ab -> s`: endpoints `a, b`, label `s`, undirected.
pub fn build_labeled_graph(h: &DirectedHypergraph) -> Result<LabeledGraph> {
    let mut edges = Vec::with_capacity(h.num_edges());
    for (i, e) in h.edges().iter().enumerate() {
        let t = e.as_two_one().ok_or(Error::NotTwoOne { edge: i })?;
        edges.push(LabeledEdge { a: t.tail[0], b: t.tail[1], label: t.head, orientation: Orientation::Undirected });
    }
    Ok(LabeledGraph::from_parts(h.n(), edges, (0..h.num_edges()).collect()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairKind {
    /// `representative` carries a label seen on no other edge at `x` or `y`.
    Weak { representative: usize },
    /// Parallel edges labeled `r` and `q`, plus `x q` labeled `r` and `y r`
    /// labeled `q`, and nothing else at `x` or `y`.
    Strong { r: VertexId, q: VertexId, companion_x: usize, companion_y: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverloadedPair {
    pub x: VertexId,
    pub y: VertexId,
    /// The parallel edges on `{x, y}`.
    pub edges: Vec<usize>,
    pub kind: PairKind,
}

impl OverloadedPair {
    pub fn is_strong(&self) -> bool {
        matches!(self.kind, PairKind::Strong { .. })
    }

    pub fn has(&self, v: VertexId) -> bool {
        v == self.x || v == self.y
    }
}

fn label_count(g: &LabeledGraph, v: VertexId, label: VertexId) -> usize {
    g.incident(v).iter().filter(|&&i| g.edge(i).label == label).count()
}

/// Finds every vertex pair with parallel edges and classifies it.
///
/// Asserts that overloaded pairs are vertex-disjoint and that a strong pair
/// has exactly the shape described on [`PairKind::Strong`].
pub fn classify_overloaded_pairs(g: &LabeledGraph) -> Result<Vec<OverloadedPair>> {
    let mut keys: Vec<(usize, usize)> =
        g.between.iter().filter(|(_, es)| es.len() > 1).map(|(&k, _)| k).collect();
    keys.sort_unstable();

    let mut owner: HashMap<usize, (usize, usize)> = HashMap::new();
    let mut pairs = Vec::with_capacity(keys.len());
    for (xi, yi) in keys {
        let (x, y) = (VertexId(xi), VertexId(yi));
        for v in [xi, yi] {
            if let Some(prev) = owner.insert(v, (xi, yi)) {
                return Err(violation(format!("overloaded pairs {prev:?} and {:?} share vertex {v}", (xi, yi))));
            }
        }
        let edges = g.between(x, y).to_vec();
        let mut labels: Vec<VertexId> = edges.iter().map(|&i| g.edge(i).label).collect();
        labels.sort_unstable();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(violation(format!("parallel edges on {:?} repeat a label", (xi, yi))));
        }

        // the edge itself is counted once at x and once at y
        let representative = edges
            .iter()
            .copied()
            .filter(|&i| {
                let l = g.edge(i).label;
                label_count(g, x, l) + label_count(g, y, l) == 2
            })
            .min_by_key(|&i| g.edge(i).label);
        let kind = match representative {
            Some(representative) => PairKind::Weak { representative },
            None => strong_shape(g, x, y, &edges)?,
        };
        pairs.push(OverloadedPair { x, y, edges, kind });
    }
    Ok(pairs)
}

fn strong_shape(g: &LabeledGraph, x: VertexId, y: VertexId, parallel: &[usize]) -> Result<PairKind> {
    let fail = || violation(format!("strong overloaded pair {{{x}, {y}}} has an unexpected shape"));
    if parallel.len() != 2 || g.incident(x).len() != 3 || g.incident(y).len() != 3 {
        return Err(fail());
    }
    let companion = |v: VertexId| {
        let i = *g.incident(v).iter().find(|i| !parallel.contains(i)).expect("degree three");
        (i, g.edge(i).other(v), g.edge(i).label)
    };
    let (l1, l2) = (g.edge(parallel[0]).label, g.edge(parallel[1]).label);
    let (cx, cx_end, cx_label) = companion(x);
    let (cy, cy_end, cy_label) = companion(y);
    // x q labeled r, y r labeled q, with {r, q} the parallel labels
    for (r, q) in [(l1, l2), (l2, l1)] {
        if cx_label == r && cx_end == q && cy_label == q && cy_end == r {
            return Ok(PairKind::Strong { r, q, companion_x: cx, companion_y: cy });
        }
    }
    Err(fail())
}

/// Drops every parallel edge of a strong pair and all but the representative
/// of a weak pair. Also returns, per deleted edge of `g`, the pair it sat on.
pub fn reduce_to_simple(g: &LabeledGraph, pairs: &[OverloadedPair]) -> (LabeledGraph, Vec<(usize, usize)>) {
    let mut drop = vec![None; g.edges.len()];
    for (p, pair) in pairs.iter().enumerate() {
        for &i in &pair.edges {
            if pair.kind != (PairKind::Weak { representative: i }) {
                drop[i] = Some(p);
            }
        }
    }
    let mut edges = Vec::new();
    let mut origin = Vec::new();
    let mut deleted = Vec::new();
    for (i, e) in g.edges.iter().enumerate() {
        match drop[i] {
            Some(p) => deleted.push((i, p)),
            None => {
                edges.push(*e);
                origin.push(g.origin[i]);
            }
        }
    }
    (LabeledGraph::from_parts(g.n, edges, origin), deleted)
}

/// Directs `ab` towards `a` when `a` is adjacent to the label of `ab`, and
/// likewise towards `b`.
pub fn orient_edges(g: &LabeledGraph) -> LabeledGraph {
    let edges = g
        .edges
        .iter()
        .map(|e| {
            let orientation = match (g.adjacent(e.a, e.label), g.adjacent(e.b, e.label)) {
                (false, false) => Orientation::Undirected,
                (true, false) => Orientation::TowardA,
                (false, true) => Orientation::TowardB,
                (true, true) => Orientation::Both,
            };
            LabeledEdge { orientation, ..*e }
        })
        .collect();
    LabeledGraph::from_parts(g.n, edges, g.origin.clone())
}
