//! Library results against small, independent re-implementations.

mod common;

use std::collections::HashSet;

use dhcolor::constructions::{lower_bound_construction, pattern, star_construction, PatternName};
use dhcolor::model::{parse, Coloring, DirectedHypergraph, VertexId};
use dhcolor::oracle::{
    brute_force_k_colorable, brute_force_polychromatic, contains_subhypergraph, DEFAULT_EMBEDDING_CAP,
    DEFAULT_VERTEX_CAP,
};
use dhcolor::properties::{check_linear, check_property_s, check_specboth, is_polychromatic, is_proper_coloring};
use dhcolor::recolor::{color_linear, color_polychromatic, color_rainbow, color_specboth};
use dhcolor::two_one::color_2to1_property_s;
use proptest::prelude::*;

fn support(h: &DirectedHypergraph, i: usize) -> HashSet<usize> {
    let e = h.edge(i);
    e.tail().iter().chain(e.head()).map(|v| v.0).collect()
}

/// Pairwise definition, every pair compared.
fn naive_property_s(h: &DirectedHypergraph) -> bool {
    let heads_ok = h.edges().iter().all(|e| e.head().len() < e.tail().len());
    let pairs_ok = (0..h.num_edges()).all(|i| {
        (i + 1..h.num_edges()).all(|j| {
            let meet: Vec<usize> = support(h, i).intersection(&support(h, j)).copied().collect();
            !(meet.len() == 1 && h.edge(i).is_tail(VertexId(meet[0])) && h.edge(j).is_tail(VertexId(meet[0])))
        })
    });
    heads_ok && pairs_ok
}

/// Bitmask enumeration of all 2-colorings.
fn naive_two_colorable(h: &DirectedHypergraph) -> bool {
    let masks: Vec<u32> = (0..h.num_edges()).map(|i| support(h, i).iter().fold(0, |m, &v| m | 1 << v)).collect();
    (0u32..1 << h.n()).any(|col| masks.iter().all(|&m| col & m != 0 && !col & m != 0))
}

#[test]
fn colorability_examples_agree_with_enumeration() {
    let f0 = pattern(PatternName::F0).hypergraph;
    assert!(naive_two_colorable(&f0));
    let col = brute_force_k_colorable(&f0, 2, DEFAULT_VERTEX_CAP).unwrap().unwrap();
    assert_eq!(is_proper_coloring(&f0, &col), Ok(()));
    assert_eq!(is_proper_coloring(&f0, &color_2to1_property_s(&f0).unwrap()), Ok(()));

    let star = star_construction(6, 3).unwrap();
    assert!(naive_two_colorable(&star));
    assert_eq!(is_proper_coloring(&star, &color_2to1_property_s(&star).unwrap()), Ok(()));

    let empty = DirectedHypergraph::new(0);
    assert!(brute_force_k_colorable(&empty, 2, DEFAULT_VERTEX_CAP).unwrap().is_some());
}

#[test]
fn head_vertex_and_linear_examples() {
    let h = parse("1 2 -> 3\n4 5 -> 3").unwrap();
    assert!(naive_two_colorable(&h));
    assert_eq!(check_specboth(&h), Ok(()));
    assert_eq!(check_linear(&h), Ok(()));
    let (col, _) = color_specboth(&h).unwrap();
    assert_eq!(is_proper_coloring(&h, &col), Ok(()));
    assert_eq!(is_proper_coloring(&h, &color_linear(&h).unwrap()), Ok(()));
}

#[test]
fn polychromatic_examples() {
    let h = parse("1 2 3 ->\n1 2 3 4 ->").unwrap();
    assert!(brute_force_polychromatic(&h, 2, 1 << 20).unwrap().is_some());
    let col = color_polychromatic(&h, 2).unwrap();
    assert_eq!(is_polychromatic(&h, &col, 2), Ok(()));

    let triple = parse("1 2 3 ->").unwrap();
    let (col, _) = color_rainbow(&[triple.clone(), triple.clone(), triple.clone()]).unwrap();
    assert_eq!(is_polychromatic(&triple, &col, 3), Ok(()));
    // 27 colorings, 6 of them rainbow
    let rainbow = (0..27)
        .filter(|&code| {
            let c = Coloring::from_vec(vec![code % 3, code / 3 % 3, code / 9], 3).unwrap();
            is_polychromatic(&triple, &c, 3).is_ok()
        })
        .count();
    assert_eq!(rainbow, 6);
}

#[test]
fn lower_bound_has_no_f() {
    let host = lower_bound_construction(6).unwrap();
    let f = pattern(PatternName::F).hypergraph;
    assert!(contains_subhypergraph(&host, &f, DEFAULT_EMBEDDING_CAP).unwrap().is_none());
    // the full family of 2->1 edges on five vertices does contain it
    let all = DirectedHypergraph::from_two_one(5, &common::two_one_triples(5)).unwrap();
    let emb = contains_subhypergraph(&all, &f, DEFAULT_EMBEDDING_CAP).unwrap().unwrap();
    assert!(emb.is_valid(&all, &f));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn property_s_matches_pairwise_definition(seed in any::<u64>(), n in 3usize..9, m in 0usize..12) {
        let mut rng = common::rng(seed);
        let h = common::random_directed(&mut rng, n, m, 4);
        prop_assert_eq!(check_property_s(&h).is_ok(), naive_property_s(&h));
        let h = common::random_two_one(&mut rng, n, m);
        prop_assert_eq!(check_property_s(&h).is_ok(), naive_property_s(&h));
    }

    #[test]
    fn oracle_matches_enumeration(seed in any::<u64>(), n in 2usize..10, m in 0usize..14) {
        let mut rng = common::rng(seed);
        let h = common::random_directed(&mut rng, n, m, 4);
        let found = brute_force_k_colorable(&h, 2, DEFAULT_VERTEX_CAP).unwrap();
        prop_assert_eq!(found.is_some(), naive_two_colorable(&h));
        if let Some(col) = found {
            prop_assert!(is_proper_coloring(&h, &col).is_ok());
        }
    }

    #[test]
    fn property_s_instances_are_colored(seed in any::<u64>(), n in 3usize..11, m in 0usize..35) {
        let mut rng = common::rng(seed);
        let h = common::random_property_s(&mut rng, n, m);
        prop_assert!(naive_two_colorable(&h));
        let col = color_2to1_property_s(&h).unwrap();
        prop_assert!(is_proper_coloring(&h, &col).is_ok());
    }
}
