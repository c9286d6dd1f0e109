//! Instance generators shared by the integration tests. All randomness comes
//! from seeded ChaCha generators.

#![allow(dead_code)]

use dhcolor::model::{intersection, DirectedHyperedge, DirectedHypergraph, VertexId};
use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// All 2->1 edges on `n` vertices as `(a, b, head)` with `a < b`.
pub fn two_one_triples(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for (a, b) in (0..n).tuple_combinations() {
        for c in (0..n).filter(|&c| c != a && c != b) {
            out.push((a, b, c));
        }
    }
    out
}

/// Every 2->1 hypergraph on `n` vertices with at most `max_edges` edges and
/// pairwise distinct supports, in a fixed order.
pub fn all_deduped_two_one(n: usize, max_edges: usize) -> Vec<DirectedHypergraph> {
    let supports: Vec<[usize; 3]> = (0..n).tuple_combinations().map(|(a, b, c)| [a, b, c]).collect();
    let mut out = Vec::new();
    for m in 0..=max_edges {
        for chosen in supports.iter().combinations(m) {
            // each support picks which of its three vertices is the head
            for code in 0..3usize.pow(m as u32) {
                let triples: Vec<_> = chosen
                    .iter()
                    .enumerate()
                    .map(|(i, s)| {
                        let h = code / 3usize.pow(i as u32) % 3;
                        let tail: Vec<usize> = s.iter().copied().filter(|&v| v != s[h]).collect();
                        (tail[0], tail[1], s[h])
                    })
                    .collect();
                out.push(DirectedHypergraph::from_two_one(n, &triples).unwrap());
            }
        }
    }
    out
}

/// Adding `e` keeps Property S: no existing edge meets it in a single
/// vertex that is a tail vertex of both.
pub fn keeps_property_s(h: &DirectedHypergraph, e: &DirectedHyperedge) -> bool {
    h.edges().iter().all(|f| match intersection(e, f).as_slice() {
        [v] => !(e.is_tail(*v) && f.is_tail(*v)),
        _ => true,
    })
}

/// Greedy random 2->1 hypergraph with Property S: shuffled candidate edges
/// are kept when compatible, until `m` edges are in. Edges on a shared
/// support are allowed, so deduplication is exercised too.
pub fn random_property_s(rng: &mut ChaCha8Rng, n: usize, m: usize) -> DirectedHypergraph {
    let mut cands = two_one_triples(n);
    cands.shuffle(rng);
    let mut h = DirectedHypergraph::new(n);
    for (a, b, c) in cands {
        if h.num_edges() >= m {
            break;
        }
        let e = DirectedHyperedge::two_one(a, b, c).unwrap();
        if keeps_property_s(&h, &e) {
            h.add_edge(e).unwrap();
        }
    }
    h
}

/// Uniformly random 2->1 edges, no filtering.
pub fn random_two_one(rng: &mut ChaCha8Rng, n: usize, m: usize) -> DirectedHypergraph {
    let cands = two_one_triples(n);
    let triples: Vec<_> = (0..m).map(|_| *cands.choose(rng).unwrap()).collect();
    DirectedHypergraph::from_two_one(n, &triples).unwrap()
}

fn random_edge(rng: &mut ChaCha8Rng, n: usize, size: usize, heads: usize) -> DirectedHyperedge {
    let mut vs: Vec<usize> = (0..n).collect();
    vs.shuffle(rng);
    let (head, tail) = vs[..size].split_at(heads);
    DirectedHyperedge::new(tail.iter().copied().map(VertexId), head.iter().copied().map(VertexId)).unwrap()
}

/// Random linear hypergraph with Property S: edges of 2 to 5 vertices with
/// fewer head than tail vertices, kept when they meet every earlier edge in
/// at most one vertex and that vertex is not a tail vertex of both.
pub fn random_linear_property_s(rng: &mut ChaCha8Rng, n: usize, attempts: usize) -> DirectedHypergraph {
    let mut h = DirectedHypergraph::new(n);
    for _ in 0..attempts {
        let size = rng.gen_range(2..=5.min(n));
        let heads = rng.gen_range(0..=(size - 1) / 2);
        let e = random_edge(rng, n, size, heads);
        let ok = h.edges().iter().all(|f| match intersection(&e, f).as_slice() {
            [] => true,
            [v] => !(e.is_tail(*v) && f.is_tail(*v)),
            _ => false,
        });
        if ok {
            h.add_edge(e).unwrap();
        }
    }
    h
}

/// Random directed hypergraph with edges of 2 to `max_size` vertices and at
/// least one tail vertex each.
pub fn random_directed(rng: &mut ChaCha8Rng, n: usize, m: usize, max_size: usize) -> DirectedHypergraph {
    let mut h = DirectedHypergraph::new(n);
    for _ in 0..m {
        let size = rng.gen_range(2..=max_size.min(n));
        let heads = rng.gen_range(0..size);
        h.add_edge(random_edge(rng, n, size, heads)).unwrap();
    }
    h
}

/// `c` families on `n` vertices. With `blocks`, the vertex set is cut into
/// blocks of at least `c` vertices and every edge is a union of blocks, so
/// every nonempty intersection has at least `c` vertices; otherwise edges are
/// random sets of at least `c` vertices.
pub fn random_families(rng: &mut ChaCha8Rng, c: usize, n: usize, blocks: bool) -> Vec<DirectedHypergraph> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut parts: Vec<Vec<usize>> = Vec::new();
    let mut rest = order.as_slice();
    while rest.len() >= c {
        let take = if rest.len() >= 2 * c { rng.gen_range(c..=c + 1).min(rest.len()) } else { rest.len() };
        let (part, tail) = rest.split_at(take);
        parts.push(part.to_vec());
        rest = tail;
    }
    if let Some(last) = parts.last_mut() {
        last.extend_from_slice(rest);
    }

    (0..c)
        .map(|_| {
            let mut h = DirectedHypergraph::new(n);
            for _ in 0..rng.gen_range(1..=4) {
                let vs: Vec<usize> = if blocks && !parts.is_empty() {
                    let k = rng.gen_range(1..=parts.len());
                    parts.choose_multiple(rng, k).flatten().copied().collect()
                } else {
                    let size = rng.gen_range(c..=n);
                    order.choose_multiple(rng, size).copied().collect()
                };
                h.add_edge(DirectedHyperedge::new(vs.into_iter().map(VertexId), []).unwrap()).unwrap();
            }
            h
        })
        .collect()
}
