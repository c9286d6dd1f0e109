//! Exhaustive searches used as ground truth on small instances.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::model::{Coloring, DirectedHypergraph, VertexId};

/// Default vertex cap for the 2-coloring search.
pub const DEFAULT_VERTEX_CAP: usize = 24;

/// Default cap on the number of injections tried by [`contains_subhypergraph`].
pub const DEFAULT_EMBEDDING_CAP: u128 = 100_000_000;

#[derive(Clone, Copy)]
enum Goal {
    Proper,
    Polychromatic,
}

/// Edges grouped by their largest vertex, so an edge is judged as soon as its
/// last vertex gets a color.
fn edges_by_last_vertex(h: &DirectedHypergraph) -> Vec<Vec<Vec<VertexId>>> {
    let mut by_last = vec![Vec::new(); h.n()];
    for e in h.edges() {
        let vs = e.vertices();
        by_last[vs.last().expect("edges are nonempty").0].push(vs);
    }
    by_last
}

/// Depth-first search over assignments in counting order, vertex 0 fixed to
/// color 0 (colors are interchangeable).
fn search(h: &DirectedHypergraph, c: usize, goal: Goal) -> Option<Coloring> {
    let n = h.n();
    if n == 0 {
        return Some(Coloring::uniform(0, c.max(1), 0));
    }
    let by_last = edges_by_last_vertex(h);
    let mut colors = vec![0usize; n];
    let ok = |colors: &[usize], v: usize| {
        by_last[v].iter().all(|e| match goal {
            Goal::Proper => e.iter().any(|u| colors[u.0] != colors[e[0].0]),
            Goal::Polychromatic => (0..c).all(|k| e.iter().any(|u| colors[u.0] == k)),
        })
    };
    // next[v] is the next color to try at v
    let mut v = 0usize;
    let mut next = vec![0usize; n];
    loop {
        let limit = if v == 0 { 1 } else { c };
        if next[v] >= limit {
            next[v] = 0;
            if v == 0 {
                return None;
            }
            v -= 1;
            continue;
        }
        colors[v] = next[v];
        next[v] += 1;
        if ok(&colors, v) {
            if v + 1 == n {
                return Some(Coloring::from_vec(colors, c).expect("colors in range"));
            }
            v += 1;
        }
    }
}

/// A proper `c`-coloring of `h` if one exists. Refused above `cap_vertices`
/// vertices.
pub fn brute_force_k_colorable(h: &DirectedHypergraph, c: usize, cap_vertices: usize) -> Result<Option<Coloring>> {
    if c == 0 {
        return Err(Error::InvalidArgument("need at least one color".into()));
    }
    if h.n() > cap_vertices {
        return Err(Error::CapExceeded { needed: h.n() as u128, cap: cap_vertices as u128 });
    }
    Ok(search(h, c, Goal::Proper))
}

/// A coloring in which every edge sees all `c` colors, if one exists. Refused
/// when `c^n` exceeds `cap`.
pub fn brute_force_polychromatic(h: &DirectedHypergraph, c: usize, cap: u128) -> Result<Option<Coloring>> {
    if c == 0 {
        return Err(Error::InvalidArgument("need at least one color".into()));
    }
    let needed = (c as u128).checked_pow(h.n() as u32).unwrap_or(u128::MAX);
    if needed > cap {
        return Err(Error::CapExceeded { needed, cap });
    }
    Ok(search(h, c, Goal::Polychromatic))
}

/// An injective vertex map carrying every pattern edge onto a distinct host
/// edge with tail onto tail and head onto head.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    /// `vertex_map[p]` is the host image of pattern vertex `p`.
    pub vertex_map: Vec<VertexId>,
    /// `edge_map[i]` is the host edge matched by pattern edge `i`.
    pub edge_map: Vec<usize>,
}

impl Embedding {
    pub fn is_valid(&self, host: &DirectedHypergraph, pattern: &DirectedHypergraph) -> bool {
        let mut seen = vec![false; host.n()];
        if self.vertex_map.len() != pattern.n() || self.edge_map.len() != pattern.num_edges() {
            return false;
        }
        for &v in &self.vertex_map {
            if v.0 >= host.n() || std::mem::replace(&mut seen[v.0], true) {
                return false;
            }
        }
        let mut used = vec![false; host.num_edges()];
        pattern.edges().iter().zip(&self.edge_map).all(|(pe, &he)| {
            if he >= host.num_edges() || std::mem::replace(&mut used[he], true) {
                return false;
            }
            let image = |vs: &[VertexId]| {
                let mut out: Vec<VertexId> = vs.iter().map(|v| self.vertex_map[v.0]).collect();
                out.sort_unstable();
                out
            };
            let target = host.edge(he);
            image(pe.tail()) == target.tail() && image(pe.head()) == target.head()
        })
    }
}

fn injection_count(host_n: usize, pattern_n: usize) -> u128 {
    if pattern_n > host_n {
        return 0;
    }
    (0..pattern_n).fold(1u128, |acc, i| acc.saturating_mul((host_n - i) as u128))
}

type EdgeKey = (Vec<VertexId>, Vec<VertexId>);

struct Matcher<'a> {
    host: &'a DirectedHypergraph,
    pattern: &'a DirectedHypergraph,
    host_edges: HashMap<EdgeKey, Vec<usize>>,
    order: Vec<usize>,
    /// pattern edges that become fully mapped once `order[k]` is assigned
    closing: Vec<Vec<usize>>,
    host_sig: Vec<(usize, usize)>,
    pattern_sig: Vec<(usize, usize)>,
    map: Vec<Option<VertexId>>,
    taken: Vec<bool>,
    /// how many host edges with a given key the current partial map uses
    usage: HashMap<EdgeKey, usize>,
}

fn signatures(h: &DirectedHypergraph) -> Vec<(usize, usize)> {
    let mut sig = vec![(0, 0); h.n()];
    for e in h.edges() {
        for v in e.tail() {
            sig[v.0].0 += 1;
        }
        for v in e.head() {
            sig[v.0].1 += 1;
        }
    }
    sig
}

impl<'a> Matcher<'a> {
    fn new(host: &'a DirectedHypergraph, pattern: &'a DirectedHypergraph) -> Self {
        let mut host_edges: HashMap<EdgeKey, Vec<usize>> = HashMap::new();
        for (i, e) in host.edges().iter().enumerate() {
            host_edges.entry((e.tail().to_vec(), e.head().to_vec())).or_default().push(i);
        }
        let pattern_sig = signatures(pattern);
        let mut order: Vec<usize> = (0..pattern.n()).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(pattern_sig[v].0 + pattern_sig[v].1), v));
        let mut position = vec![0; pattern.n()];
        for (k, &v) in order.iter().enumerate() {
            position[v] = k;
        }
        let mut closing = vec![Vec::new(); pattern.n()];
        for (i, e) in pattern.edges().iter().enumerate() {
            let last = e.vertices().iter().map(|v| position[v.0]).max().expect("nonempty edge");
            closing[last].push(i);
        }
        Matcher {
            host,
            pattern,
            host_edges,
            order,
            closing,
            host_sig: signatures(host),
            pattern_sig,
            map: vec![None; pattern.n()],
            taken: vec![false; host.n()],
            usage: HashMap::new(),
        }
    }

    fn key(&self, edge: usize) -> EdgeKey {
        let e = self.pattern.edge(edge);
        let image = |vs: &[VertexId]| {
            let mut out: Vec<VertexId> = vs.iter().map(|v| self.map[v.0].expect("mapped")).collect();
            out.sort_unstable();
            out
        };
        (image(e.tail()), image(e.head()))
    }

    /// Tries to close the pattern edges finished at depth `k`; on success the
    /// usage counters include them and the keys are returned for undo.
    fn close(&mut self, k: usize) -> Option<Vec<EdgeKey>> {
        let mut added = Vec::new();
        for &i in &self.closing[k] {
            let key = self.key(i);
            let available = self.host_edges.get(&key).map_or(0, Vec::len);
            let used = self.usage.entry(key.clone()).or_insert(0);
            if *used >= available {
                self.release(added);
                return None;
            }
            *used += 1;
            added.push(key);
        }
        Some(added)
    }

    fn release(&mut self, keys: Vec<EdgeKey>) {
        for key in keys {
            *self.usage.get_mut(&key).expect("tracked") -= 1;
        }
    }

    fn extend(&mut self, k: usize) -> bool {
        if k == self.order.len() {
            return true;
        }
        let p = self.order[k];
        let (pt, ph) = self.pattern_sig[p];
        for h in 0..self.host.n() {
            let (ht, hh) = self.host_sig[h];
            if self.taken[h] || ht < pt || hh < ph {
                continue;
            }
            self.map[p] = Some(VertexId(h));
            self.taken[h] = true;
            if let Some(keys) = self.close(k) {
                if self.extend(k + 1) {
                    return true;
                }
                self.release(keys);
            }
            self.taken[h] = false;
            self.map[p] = None;
        }
        false
    }

    fn embedding(&self) -> Embedding {
        let vertex_map: Vec<VertexId> = self.map.iter().map(|v| v.expect("complete")).collect();
        let mut next: HashMap<EdgeKey, usize> = HashMap::new();
        let edge_map = (0..self.pattern.num_edges())
            .map(|i| {
                let key = self.key(i);
                let slot = next.entry(key.clone()).or_insert(0);
                let he = self.host_edges[&key][*slot];
                *slot += 1;
                he
            })
            .collect();
        Embedding { vertex_map, edge_map }
    }
}

/// First embedding of `pattern` into `host` in search order, or `None`.
///
/// Pattern vertices are placed in order of decreasing degree; a host vertex is
/// a candidate only if its tail and head degrees are at least those of the
/// pattern vertex. Refused when the number of injections exceeds `cap`.
pub fn contains_subhypergraph(
    host: &DirectedHypergraph,
    pattern: &DirectedHypergraph,
    cap: u128,
) -> Result<Option<Embedding>> {
    let needed = injection_count(host.n(), pattern.n());
    if needed > cap {
        return Err(Error::CapExceeded { needed, cap });
    }
    if pattern.n() > host.n() || pattern.num_edges() > host.num_edges() {
        return Ok(None);
    }
    let mut m = Matcher::new(host, pattern);
    Ok(m.extend(0).then(|| m.embedding()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::parse;
    use crate::properties::{is_polychromatic, is_proper_coloring};

    fn p(text: &str) -> DirectedHypergraph {
        parse(text).unwrap()
    }

    #[test]
    fn two_colorability() {
        let f0 = p("1 2 -> 3\n1 3 -> 2\n2 3 -> 1");
        let col = brute_force_k_colorable(&f0, 2, DEFAULT_VERTEX_CAP).unwrap().unwrap();
        assert_eq!(is_proper_coloring(&f0, &col), Ok(()));
        assert!(brute_force_k_colorable(&DirectedHypergraph::new(0), 2, 24).unwrap().is_some());
        assert!(brute_force_k_colorable(&DirectedHypergraph::new(5), 2, 4).is_err());
        // K4 as a graph needs three colors
        let k4 = p("1 2 ->\n1 3 ->\n1 4 ->\n2 3 ->\n2 4 ->\n3 4 ->");
        assert!(brute_force_k_colorable(&k4, 2, 24).unwrap().is_none());
        let col = brute_force_k_colorable(&k4, 4, 24).unwrap().unwrap();
        assert_eq!(is_proper_coloring(&k4, &col), Ok(()));
    }

    #[test]
    fn polychromatic_search() {
        let t = p("1 2 3 ->");
        let col = brute_force_polychromatic(&t, 3, 1000).unwrap().unwrap();
        assert_eq!(is_polychromatic(&t, &col, 3), Ok(()));
        assert!(brute_force_polychromatic(&p("1 2 ->"), 3, 1000).unwrap().is_none());
        assert!(brute_force_polychromatic(&DirectedHypergraph::new(2), 4, 1000).unwrap().is_some());
        assert_eq!(
            brute_force_polychromatic(&t, 3, 26),
            Err(Error::CapExceeded { needed: 27, cap: 26 })
        );
    }

    #[test]
    fn containment() {
        let s = p("1 2 -> 3\n1 4 -> 5");
        let emb = contains_subhypergraph(&s, &s, 1000).unwrap().unwrap();
        assert!(emb.is_valid(&s, &s));
        assert!(contains_subhypergraph(&p("1 2 -> 3"), &s, 1000).unwrap().is_none());
        // direction matters: swapping head and tail roles breaks the match
        let host = p("1 2 -> 3\n3 4 -> 5");
        assert!(contains_subhypergraph(&host, &s, 1000).unwrap().is_none());
        let host = p("a b -> c\nx y -> z\na x -> q");
        let emb = contains_subhypergraph(&host, &s, 10_000).unwrap().unwrap();
        assert!(emb.is_valid(&host, &s));
    }

    #[test]
    fn duplicate_pattern_edges_need_duplicate_host_edges() {
        let pattern = p("1 2 -> 3\n1 2 -> 3");
        assert!(contains_subhypergraph(&p("1 2 -> 3\n4 5 -> 6"), &pattern, 1000).unwrap().is_none());
        let host = p("1 2 -> 3\n1 2 -> 3");
        let emb = contains_subhypergraph(&host, &pattern, 1000).unwrap().unwrap();
        assert_eq!(emb.edge_map, vec![0, 1]);
        assert!(emb.is_valid(&host, &pattern));
    }

    #[test]
    fn containment_cap() {
        let big = DirectedHypergraph::new(50);
        let s = p("1 2 -> 3\n1 4 -> 5");
        assert!(matches!(contains_subhypergraph(&big, &s, 1000), Err(Error::CapExceeded { .. })));
    }
}
