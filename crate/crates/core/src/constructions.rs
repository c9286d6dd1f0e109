//! Generators for the fixed patterns and the explicit extremal constructions.
//!
//! Vertices are named `1..=n`; vertex index `i` carries the name `i + 1`.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::model::{DirectedHyperedge, DirectedHypergraph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PatternName {
    /// `{12 -> 3, 14 -> 5}`: two edges meeting in a common tail vertex.
    S,
    /// `{12 -> 3, 13 -> 4, 23 -> 5, 14 -> 2, 25 -> 1}`.
    F,
    /// `{12 -> 3, 13 -> 4, 23 -> 5, 34 -> 2, 35 -> 1}`.
    FAlt,
    /// `{12 -> 3, 13 -> 2, 23 -> 1}`.
    F0,
}

impl PatternName {
    pub const ALL: [PatternName; 4] = [PatternName::S, PatternName::F, PatternName::FAlt, PatternName::F0];

    fn triples(self) -> (usize, &'static [(usize, usize, usize)]) {
        match self {
            PatternName::S => (5, &[(1, 2, 3), (1, 4, 5)]),
            PatternName::F => (5, &[(1, 2, 3), (1, 3, 4), (2, 3, 5), (1, 4, 2), (2, 5, 1)]),
            PatternName::FAlt => (5, &[(1, 2, 3), (1, 3, 4), (2, 3, 5), (3, 4, 2), (3, 5, 1)]),
            PatternName::F0 => (3, &[(1, 2, 3), (1, 3, 2), (2, 3, 1)]),
        }
    }
}

impl fmt::Display for PatternName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PatternName::S => "S",
            PatternName::F => "F",
            PatternName::FAlt => "F_alt",
            PatternName::F0 => "F0",
        })
    }
}

impl FromStr for PatternName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "s" => Ok(PatternName::S),
            "f" => Ok(PatternName::F),
            "f_alt" | "falt" => Ok(PatternName::FAlt),
            "f0" | "f_0" => Ok(PatternName::F0),
            _ => Err(Error::UnknownPattern(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedPattern {
    pub name: PatternName,
    pub hypergraph: DirectedHypergraph,
}

pub fn pattern(name: PatternName) -> NamedPattern {
    let (n, triples) = name.triples();
    let zero_based: Vec<_> = triples.iter().map(|&(a, b, c)| (a - 1, b - 1, c - 1)).collect();
    let hypergraph = DirectedHypergraph::from_two_one(n, &zero_based).expect("fixed patterns are valid");
    NamedPattern { name, hypergraph }
}

pub fn pattern_by_name(name: &str) -> Result<NamedPattern> {
    Ok(pattern(name.parse()?))
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidArgument(msg()))
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of edges of [`lower_bound_construction`]: `2 * C(n, 3)`.
pub fn lower_bound_size(n: usize) -> u64 {
    2 * binomial(n as u64, 3)
}

/// For every triple `i < j < k` the edges `ik -> j` and `jk -> i`. Every edge
/// `ab -> c` has `c < max(a, b)`, which rules out a copy of `F`.
pub fn lower_bound_construction(n: usize) -> Result<DirectedHypergraph> {
    require(n >= 3, || format!("need n >= 3, got {n}"))?;
    let mut triples = Vec::with_capacity(lower_bound_size(n) as usize);
    for (i, j, k) in (0..n).tuple_combinations() {
        triples.push((i, k, j));
        triples.push((j, k, i));
    }
    DirectedHypergraph::from_two_one(n, &triples)
}

/// One edge `ik -> j` per triple `i < j < k`: an oriented subfamily of
/// [`lower_bound_construction`] with `C(n, 3)` edges.
pub fn oriented_lower_bound(n: usize) -> Result<DirectedHypergraph> {
    require(n >= 3, || format!("need n >= 3, got {n}"))?;
    let triples: Vec<_> = (0..n).tuple_combinations().map(|(i, j, k)| (i, k, j)).collect();
    DirectedHypergraph::from_two_one(n, &triples)
}

/// Three parts `V0, V1, V2` of `2k - 1` vertices each; for every `i` (mod 3),
/// every `k` vertices of `V_i` as head together with every `k` vertices of
/// `V_{i+1}` as tail form an edge. Heads and tails have equal size and the
/// result is not properly 2-colorable: some two cyclically consecutive parts
/// share their majority color, which gives a monochromatic edge.
pub fn tightness_construction(k: usize) -> Result<DirectedHypergraph> {
    require(k >= 2, || format!("need k >= 2, got {k}"))?;
    let part = 2 * k - 1;
    let mut h = DirectedHypergraph::new(3 * part);
    let members = |p: usize| (p * part..(p + 1) * part).map(VertexId);
    for i in 0..3 {
        let next = (i + 1) % 3;
        for head in members(i).combinations(k) {
            for tail in members(next).combinations(k) {
                h.add_edge(DirectedHyperedge::new(tail, head.clone())?)?;
            }
        }
    }
    Ok(h)
}

/// Every `k`-set containing vertex `1`, with `1` as the only head vertex.
pub fn star_construction(n: usize, k: usize) -> Result<DirectedHypergraph> {
    require(k >= 3 && n >= k, || format!("need n >= k >= 3, got n = {n}, k = {k}"))?;
    let mut h = DirectedHypergraph::new(n);
    for tail in (1..n).map(VertexId).combinations(k - 1) {
        h.add_edge(DirectedHyperedge::new(tail, [VertexId(0)])?)?;
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{is_oriented, is_two_one, serialize};
    use crate::properties::{check_property_s, check_property_s_relaxed};

    #[test]
    fn patterns_match_their_definitions() {
        assert_eq!(serialize(&pattern(PatternName::S).hypergraph), "1 2 -> 3\n1 4 -> 5\n");
        assert_eq!(serialize(&pattern(PatternName::F0).hypergraph), "1 2 -> 3\n1 3 -> 2\n2 3 -> 1\n");
        assert_eq!(
            serialize(&pattern(PatternName::F).hypergraph),
            "1 2 -> 3\n1 3 -> 4\n2 3 -> 5\n1 4 -> 2\n2 5 -> 1\n"
        );
        assert_eq!(
            serialize(&pattern(PatternName::FAlt).hypergraph),
            "1 2 -> 3\n1 3 -> 4\n2 3 -> 5\n3 4 -> 2\n3 5 -> 1\n"
        );
        assert_eq!(pattern(PatternName::S).hypergraph.n(), 5);
        assert_eq!(pattern(PatternName::F0).hypergraph.n(), 3);
        assert!(is_oriented(&pattern(PatternName::F).hypergraph).unwrap());
        assert!(!is_oriented(&pattern(PatternName::F0).hypergraph).unwrap());
    }

    #[test]
    fn pattern_names_parse() {
        for name in PatternName::ALL {
            assert_eq!(name.to_string().parse::<PatternName>().unwrap(), name);
        }
        assert_eq!("f-alt".parse::<PatternName>().unwrap(), PatternName::FAlt);
        assert_eq!(pattern_by_name("G"), Err(Error::UnknownPattern("G".into())));
    }

    #[test]
    fn lower_bound_small_cases() {
        assert_eq!(serialize(&lower_bound_construction(3).unwrap()), "1 3 -> 2\n2 3 -> 1\n");
        assert_eq!(lower_bound_construction(5).unwrap().num_edges(), 20);
        assert!(lower_bound_construction(2).is_err());
        let h = lower_bound_construction(7).unwrap();
        for e in h.edges() {
            let t = e.as_two_one().unwrap();
            assert!(t.head < t.tail[0].max(t.tail[1]));
        }
    }

    #[test]
    fn oriented_lower_bound_is_a_subfamily() {
        assert_eq!(oriented_lower_bound(5).unwrap().num_edges(), 10);
        assert_eq!(oriented_lower_bound(3).unwrap().num_edges(), 1);
        assert!(is_oriented(&oriented_lower_bound(6).unwrap()).unwrap());
        let full = lower_bound_construction(6).unwrap();
        for e in oriented_lower_bound(6).unwrap().edges() {
            assert!(full.edges().contains(e));
        }
    }

    #[test]
    fn tightness_shape() {
        let h = tightness_construction(2).unwrap();
        assert_eq!((h.n(), h.num_edges()), (9, 27));
        assert!(h.edges().iter().all(|e| e.head().len() == 2 && e.tail().len() == 2));
        assert_eq!(check_property_s_relaxed(&h), Ok(()));
        assert!(check_property_s(&h).is_err());
        assert_eq!(tightness_construction(3).unwrap().num_edges(), 300);
    }

    #[test]
    fn star_shape() {
        let h = star_construction(6, 3).unwrap();
        assert_eq!(h.num_edges(), 10);
        assert!(is_two_one(&h));
        assert_eq!(check_property_s(&h), Ok(()));
        assert_eq!(check_property_s(&star_construction(7, 4).unwrap()), Ok(()));
        assert_eq!(star_construction(9, 5).unwrap().num_edges(), binomial(8, 4) as usize);
        assert!(star_construction(3, 4).is_err());
    }
}
