mod common;

use std::collections::BTreeMap;

use dhcolor::model::{DirectedHypergraph, VertexId};
use dhcolor::properties::{check_property_s, is_proper_coloring, witness_holds};
use dhcolor::two_one::{analyze, Analysis, ComponentKind, DNode, BLUE, RED};
use dhcolor::Error;
use proptest::prelude::*;
use rand::Rng;

/// Recomputes the cores from the simple graph without the library's helper.
fn recount_cores(a: &Analysis) -> BTreeMap<VertexId, Vec<VertexId>> {
    let g = &a.simple;
    let mut out: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for v in (0..g.n()).map(VertexId) {
        let mut per_label: BTreeMap<VertexId, usize> = BTreeMap::new();
        for &i in g.incident(v) {
            *per_label.entry(g.edge(i).label).or_default() += 1;
        }
        for (l, c) in per_label {
            if c >= 2 {
                out.entry(l).or_default().push(v);
            }
        }
    }
    out
}

fn check_structure(h: &DirectedHypergraph, a: &Analysis) {
    assert_eq!(is_proper_coloring(h, &a.coloring), Ok(()));
    assert!(a.simple.is_simple());
    let dec = &a.decomposition;
    assert_eq!(recount_cores(a), dec.cores.members);

    // K and R partition the vertices, and R is covered by its components
    for v in (0..h.n()).map(VertexId) {
        assert_eq!(dec.cores.in_core(v), dec.residual.component_of[v.0].is_none());
    }

    for comp in &dec.residual.components {
        if let ComponentKind::Cycle { order } = &comp.kind {
            let len = order.len();
            assert!(len >= 4);
            for i in 0..len {
                let (prev, cur, next) = (order[(i + len - 1) % len], order[i], order[(i + 1) % len]);
                let e = a.simple.edge(a.simple.simple_edge(cur, next).unwrap());
                assert_eq!(e.label, prev);
            }
        }
    }

    // every core has exactly one out-edge in D
    for (&q, _) in &dec.cores.members {
        let t = dec.digraph.target[&q];
        match t {
            DNode::Residual(r) => assert_eq!(r, q),
            DNode::Core(p) => assert_eq!(dec.cores.core_of[q.0], Some(p)),
        }
    }

    for r in &a.rebels {
        assert_eq!(a.coloring.get(r.rebel), BLUE);
        assert_eq!(dec.cores.core_of[r.rebel.0], Some(r.host));
        for &m in &r.minions {
            assert_eq!(a.coloring.get(m), RED);
        }
    }
}

#[test]
fn exhaustive_small_instances_have_the_expected_structure() {
    for h in common::all_deduped_two_one(5, 4) {
        if check_property_s(&h).is_ok() {
            check_structure(&h, &analyze(&h).unwrap());
        }
    }
}

#[test]
fn random_instances_reach_every_phase_path() {
    let mut rng = common::rng(41);
    let (mut rebels, mut strong, mut odd_r, mut even_d) = (0, 0, 0, 0);
    for _ in 0..4_000 {
        let n = rng.gen_range(3..=12);
        let m = rng.gen_range(0..=40);
        let h = common::random_property_s(&mut rng, n, m);
        let a = analyze(&h).unwrap();
        check_structure(&h, &a);
        rebels += a.rebels.len();
        strong += a.stats.strong_pair_exceptions;
        odd_r += a.stats.odd_r_cycles;
        even_d += a.stats.even_d_cycles;
    }
    assert!(rebels > 0, "no odd cycle in D was met");
    assert!(strong > 0, "no strong pair exception was met");
    assert!(even_d > 0, "no even cycle in D was met");
    assert!(odd_r > 0, "no odd cycle in R was met");
}

#[test]
fn instances_without_parallel_edges_take_no_exception_path() {
    let mut rng = common::rng(43);
    let mut checked = 0;
    while checked < 500 {
        let n = rng.gen_range(3..=12);
        let m = rng.gen_range(0..=40);
        let h = common::random_property_s(&mut rng, n, m);
        let a = analyze(&h).unwrap();
        if !a.graph.is_simple() {
            continue;
        }
        checked += 1;
        assert!(a.pairs.is_empty());
        assert_eq!(a.stats.strong_pair_exceptions, 0);
    }
}

#[test]
fn strong_pair_with_isolated_ends_gets_split_colors() {
    // find a strong pair whose two vertices are isolated in R and check that
    // the pair is bichromatic
    let mut rng = common::rng(47);
    for _ in 0..20_000 {
        let n = rng.gen_range(4..=10);
        let m = rng.gen_range(4..=30);
        let h = common::random_property_s(&mut rng, n, m);
        let a = analyze(&h).unwrap();
        if a.stats.strong_pair_exceptions == 0 {
            continue;
        }
        let both_isolated = a.pairs.iter().filter(|p| p.is_strong()).find(|p| {
            [p.x, p.y]
                .iter()
                .all(|&v| a.decomposition.residual.component(v).is_some_and(|c| c.vertices.len() == 1))
        });
        if let Some(p) = both_isolated {
            assert_ne!(a.coloring.get(p.x), a.coloring.get(p.y));
            return;
        }
    }
    panic!("no strong pair with two isolated ends found");
}

#[test]
fn violations_come_with_rechecked_witnesses() {
    let mut rng = common::rng(53);
    let mut rejected = 0;
    for _ in 0..500 {
        let n = rng.gen_range(3..=8);
        let m = rng.gen_range(2..=10);
        let h = common::random_two_one(&mut rng, n, m);
        match analyze(&h) {
            Ok(a) => assert_eq!(is_proper_coloring(&h, &a.coloring), Ok(())),
            Err(Error::Violation(w)) => {
                rejected += 1;
                assert!(witness_holds(&h, &w));
            }
            Err(e) => panic!("unexpected error {e}"),
        }
    }
    assert!(rejected > 0);
}

#[test]
fn report_has_one_line_per_vertex() {
    let mut rng = common::rng(59);
    let h = common::random_property_s(&mut rng, 10, 25);
    let a = analyze(&h).unwrap();
    let report = a.report(&h);
    let body: Vec<&str> = report.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(body.len(), h.n());
    for (v, line) in body.iter().enumerate() {
        assert!(line.starts_with(&format!("{}\t", h.name(VertexId(v)))));
        assert!(line.ends_with("red") || line.ends_with("blue"));
    }
}

proptest! {
    #[test]
    fn pipeline_is_deterministic_and_proper(seed in any::<u64>(), n in 3usize..11, m in 0usize..30) {
        let mut rng = common::rng(seed);
        let h = common::random_property_s(&mut rng, n, m);
        let first = analyze(&h).unwrap();
        let second = analyze(&h).unwrap();
        prop_assert_eq!(&first.coloring, &second.coloring);
        prop_assert!(is_proper_coloring(&h, &first.coloring).is_ok());
    }
}
