//! Directed hypergraphs, colorings, and the text formats they are stored in.
//!
//! A hyperedge is a pair of disjoint vertex sets, a tail and a head. Vertices
//! are dense indices internally and carry an external string token used by
//! the file formats.
//!
//! Hypergraph file: one hyperedge per line as `<tail tokens> -> <head tokens>`.
//! Lines whose first non-blank character is `#` are comments, blank lines are
//! skipped. Either side of the arrow may be empty, but not both.
//!
//! Coloring file: one `<vertex token> <color>` pair per line, same comment
//! rules.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl From<usize> for VertexId {
    fn from(i: usize) -> Self {
        VertexId(i)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A hyperedge split into a tail and a head. Both sides are kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DirectedHyperedge {
    tail: Vec<VertexId>,
    head: Vec<VertexId>,
}

impl DirectedHyperedge {
    pub fn new(tail: impl IntoIterator<Item = VertexId>, head: impl IntoIterator<Item = VertexId>) -> Result<Self> {
        let mut tail: Vec<VertexId> = tail.into_iter().collect();
        let mut head: Vec<VertexId> = head.into_iter().collect();
        tail.sort_unstable();
        head.sort_unstable();
        if tail.windows(2).any(|w| w[0] == w[1]) || head.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidEdge("repeated vertex".into()));
        }
        if tail.is_empty() && head.is_empty() {
            return Err(Error::InvalidEdge("empty hyperedge".into()));
        }
        if tail.iter().any(|v| head.binary_search(v).is_ok()) {
            return Err(Error::InvalidEdge("tail and head overlap".into()));
        }
        Ok(DirectedHyperedge { tail, head })
    }

    /// Shorthand for the `ab -> c` edges of a 2->1 hypergraph.
    pub fn two_one(a: usize, b: usize, c: usize) -> Result<Self> {
        Self::new([VertexId(a), VertexId(b)], [VertexId(c)])
    }

    pub fn tail(&self) -> &[VertexId] {
        &self.tail
    }

    pub fn head(&self) -> &[VertexId] {
        &self.head
    }

    pub fn len(&self) -> usize {
        self.tail.len() + self.head.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All vertices of the edge in increasing order.
    pub fn vertices(&self) -> Vec<VertexId> {
        let mut all = Vec::with_capacity(self.len());
        all.extend_from_slice(&self.tail);
        all.extend_from_slice(&self.head);
        all.sort_unstable();
        all
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.is_tail(v) || self.is_head(v)
    }

    pub fn is_tail(&self, v: VertexId) -> bool {
        self.tail.binary_search(&v).is_ok()
    }

    pub fn is_head(&self, v: VertexId) -> bool {
        self.head.binary_search(&v).is_ok()
    }

    pub fn as_two_one(&self) -> Option<TwoOneEdge> {
        match (self.tail.as_slice(), self.head.as_slice()) {
            (&[a, b], &[c]) => Some(TwoOneEdge { tail: [a, b], head: c }),
            _ => None,
        }
    }
}

/// Vertex-set intersection of two hyperedges, ignoring the tail/head split.
pub fn intersection(e1: &DirectedHyperedge, e2: &DirectedHyperedge) -> Vec<VertexId> {
    let (a, b) = (e1.vertices(), e2.vertices());
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// `ab -> c` with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TwoOneEdge {
    pub tail: [VertexId; 2],
    pub head: VertexId,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DirectedHypergraph {
    names: Vec<String>,
    edges: Vec<DirectedHyperedge>,
}

impl DirectedHypergraph {
    /// `n` vertices named `1..=n`.
    pub fn new(n: usize) -> Self {
        DirectedHypergraph { names: (1..=n).map(|i| i.to_string()).collect(), edges: Vec::new() }
    }

    pub fn with_names(names: Vec<String>) -> Result<Self> {
        let mut seen = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || name.chars().any(char::is_whitespace) || name == "->" || name.starts_with('#') {
                return Err(Error::InvalidArgument(format!("bad vertex token {name:?}")));
            }
            if seen.insert(name.as_str(), i).is_some() {
                return Err(Error::InvalidArgument(format!("duplicate vertex token {name:?}")));
            }
        }
        Ok(DirectedHypergraph { names, edges: Vec::new() })
    }

    /// Builds a 2->1 hypergraph on vertices `1..=n` from zero-based `(a, b, c)`
    /// triples meaning `ab -> c`.
    pub fn from_two_one(n: usize, triples: &[(usize, usize, usize)]) -> Result<Self> {
        let mut h = Self::new(n);
        for &(a, b, c) in triples {
            h.add_edge(DirectedHyperedge::two_one(a, b, c)?)?;
        }
        Ok(h)
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn edges(&self) -> &[DirectedHyperedge] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &DirectedHyperedge {
        &self.edges[i]
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v.0]
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.names.iter().position(|s| s == name).map(VertexId)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.n()).map(VertexId)
    }

    pub fn add_edge(&mut self, e: DirectedHyperedge) -> Result<usize> {
        if let Some(v) = e.tail.iter().chain(&e.head).find(|v| v.0 >= self.n()) {
            return Err(Error::InvalidEdge(format!("vertex index {} out of range", v.0)));
        }
        self.edges.push(e);
        Ok(self.edges.len() - 1)
    }

    /// Same vertices, edges restricted to `keep`.
    pub fn sub_hypergraph(&self, keep: impl IntoIterator<Item = usize>) -> Self {
        DirectedHypergraph {
            names: self.names.clone(),
            edges: keep.into_iter().map(|i| self.edges[i].clone()).collect(),
        }
    }

    /// For every vertex, the indices of the edges containing it.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n()];
        for (i, e) in self.edges.iter().enumerate() {
            for v in e.tail.iter().chain(&e.head) {
                inc[v.0].push(i);
            }
        }
        inc
    }
}

/// True iff every hyperedge has exactly two tail vertices and one head vertex.
pub fn is_two_one(h: &DirectedHypergraph) -> bool {
    h.edges.iter().all(|e| e.tail.len() == 2 && e.head.len() == 1)
}

fn require_two_one(h: &DirectedHypergraph) -> Result<()> {
    match h.edges.iter().position(|e| e.as_two_one().is_none()) {
        Some(edge) => Err(Error::NotTwoOne { edge }),
        None => Ok(()),
    }
}

/// True iff no two hyperedges of a 2->1 hypergraph share their 3-vertex support.
pub fn is_oriented(h: &DirectedHypergraph) -> Result<bool> {
    require_two_one(h)?;
    let mut seen = std::collections::HashSet::new();
    Ok(h.edges.iter().all(|e| seen.insert(e.vertices())))
}

/// Maps every edge of the input onto the edge kept for its support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportMap {
    /// `representative[i]` is the output edge index standing for input edge `i`.
    pub representative: Vec<usize>,
    /// `kept[j]` is the input index of output edge `j`.
    pub kept: Vec<usize>,
}

impl SupportMap {
    /// Input edges that were dropped, paired with the output edge replacing them.
    pub fn removed(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.representative
            .iter()
            .enumerate()
            .filter(|&(i, &r)| self.kept[r] != i)
            .map(|(i, &r)| (i, r))
    }
}

/// Keeps the first hyperedge for each distinct vertex support.
///
/// A proper 2-coloring of the result is a proper 2-coloring of the input,
/// since properness only depends on the support.
pub fn dedup_same_support(h: &DirectedHypergraph) -> (DirectedHypergraph, SupportMap) {
    let mut index: HashMap<Vec<VertexId>, usize> = HashMap::new();
    let mut kept = Vec::new();
    let mut representative = Vec::with_capacity(h.edges.len());
    for (i, e) in h.edges.iter().enumerate() {
        let next = kept.len();
        let r = *index.entry(e.vertices()).or_insert(next);
        if r == next {
            kept.push(i);
        }
        representative.push(r);
    }
    let out = h.sub_hypergraph(kept.iter().copied());
    (out, SupportMap { representative, kept })
}

/// Rewrites a 3-uniform hypergraph whose edges all have fewer head than tail
/// vertices into 2->1 form by turning the largest tail vertex of every
/// three-tail edge into a head vertex. Tail/head intersections only shrink,
/// so the hypotheses of the 2->1 coloring are preserved.
pub fn normalize_three_uniform(h: &DirectedHypergraph) -> Result<DirectedHypergraph> {
    let mut out = DirectedHypergraph { names: h.names.clone(), edges: Vec::with_capacity(h.edges.len()) };
    for (i, e) in h.edges.iter().enumerate() {
        let e = match (e.tail.len(), e.head.len()) {
            (2, 1) => e.clone(),
            (3, 0) => DirectedHyperedge { tail: e.tail[..2].to_vec(), head: vec![e.tail[2]] },
            _ => return Err(Error::NotTwoOne { edge: i }),
        };
        out.edges.push(e);
    }
    Ok(out)
}

/// A total map from vertices to colors `0..num_colors`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    num_colors: usize,
    colors: Vec<usize>,
}

impl Coloring {
    pub fn uniform(n: usize, num_colors: usize, color: usize) -> Self {
        assert!(color < num_colors, "color {color} out of range for {num_colors} colors");
        Coloring { num_colors, colors: vec![color; n] }
    }

    pub fn from_vec(colors: Vec<usize>, num_colors: usize) -> Result<Self> {
        if let Some(c) = colors.iter().find(|&&c| c >= num_colors) {
            return Err(Error::InvalidArgument(format!("color {c} out of range for {num_colors} colors")));
        }
        Ok(Coloring { num_colors, colors })
    }

    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    #[inline]
    pub fn get(&self, v: VertexId) -> usize {
        self.colors[v.0]
    }

    pub fn set(&mut self, v: VertexId, color: usize) {
        assert!(color < self.num_colors);
        self.colors[v.0] = color;
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.colors
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Parses the hypergraph text format. Vertices are numbered in order of first
/// appearance.
pub fn parse(text: &str) -> Result<DirectedHypergraph> {
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut names: Vec<String> = Vec::new();
    let mut raw: Vec<(usize, Vec<usize>, Vec<usize>)> = Vec::new();
    for (line, content) in content_lines(text) {
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let arrows: Vec<usize> = tokens.iter().enumerate().filter(|(_, t)| **t == "->").map(|(i, _)| i).collect();
        let split = match arrows.as_slice() {
            [i] => *i,
            [] => return Err(Error::Parse { line, message: "missing `->`".into() }),
            _ => return Err(Error::Parse { line, message: "more than one `->`".into() }),
        };
        let mut intern = |t: &str| -> Result<usize> {
            if t.starts_with('#') {
                return Err(Error::Parse { line, message: format!("bad token {t:?}") });
            }
            if let Some(&id) = ids.get(t) {
                return Ok(id);
            }
            names.push(t.to_string());
            ids.insert(t.to_string(), names.len() - 1);
            Ok(names.len() - 1)
        };
        let tail = tokens[..split].iter().map(|t| intern(t)).collect::<Result<Vec<_>>>()?;
        let head = tokens[split + 1..].iter().map(|t| intern(t)).collect::<Result<Vec<_>>>()?;
        raw.push((line, tail, head));
    }
    let mut h = DirectedHypergraph { names, edges: Vec::with_capacity(raw.len()) };
    for (line, tail, head) in raw {
        let e = DirectedHyperedge::new(tail.into_iter().map(VertexId), head.into_iter().map(VertexId))
            .map_err(|e| Error::Parse { line, message: e.to_string() })?;
        h.edges.push(e);
    }
    Ok(h)
}

pub fn serialize(h: &DirectedHypergraph) -> String {
    let mut out = String::new();
    for e in &h.edges {
        let side = |vs: &[VertexId]| vs.iter().map(|&v| h.name(v)).collect::<Vec<_>>().join(" ");
        let (tail, head) = (side(&e.tail), side(&e.head));
        match (tail.is_empty(), head.is_empty()) {
            (false, false) => out.push_str(&format!("{tail} -> {head}\n")),
            (true, _) => out.push_str(&format!("-> {head}\n")),
            (_, true) => out.push_str(&format!("{tail} ->\n")),
        }
    }
    out
}

/// Parses a coloring of `h`. Every vertex must be colored exactly once; the
/// color count is one more than the largest color used.
pub fn parse_coloring(h: &DirectedHypergraph, text: &str) -> Result<Coloring> {
    let ids: HashMap<&str, usize> = h.names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let mut colors: Vec<Option<usize>> = vec![None; h.n()];
    for (line, content) in content_lines(text) {
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let [name, color] = tokens.as_slice() else {
            return Err(Error::Parse { line, message: "expected `<vertex> <color>`".into() });
        };
        let v = *ids.get(name).ok_or_else(|| Error::UnknownVertex(name.to_string()))?;
        let color: usize =
            color.parse().map_err(|_| Error::Parse { line, message: format!("bad color {color:?}") })?;
        if colors[v].replace(color).is_some() {
            return Err(Error::Parse { line, message: format!("vertex {name} colored twice") });
        }
    }
    let colors = colors
        .into_iter()
        .enumerate()
        .map(|(i, c)| c.ok_or_else(|| Error::InvalidArgument(format!("vertex {} has no color", h.names[i]))))
        .collect::<Result<Vec<_>>>()?;
    let num_colors = colors.iter().max().map_or(1, |&m| m + 1);
    Ok(Coloring { num_colors, colors })
}

pub fn serialize_coloring(h: &DirectedHypergraph, col: &Coloring) -> String {
    h.names.iter().zip(&col.colors).map(|(name, c)| format!("{name} {c}\n")).collect()
}
