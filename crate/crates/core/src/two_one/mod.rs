//! Proper 2-coloring of 2->1 hypergraphs with Property S.
//!
//! Every hyperedge `ab -> s` becomes an edge `ab` labeled `s` of a graph `G`.
//! Parallel edges are thinned to a simple graph, which is partially oriented
//! and split into cores (vertices carrying one label twice) and the rest.
//! The coloring is built phase by phase on that structure, and every local
//! fact the construction depends on is checked as it goes, so a run that
//! returns `Ok` is also a certificate for that instance.

pub mod graph;
pub mod phases;
pub mod structure;

use std::fmt::Write as _;

pub use graph::{
    build_labeled_graph, classify_overloaded_pairs, orient_edges, reduce_to_simple, LabeledEdge, LabeledGraph,
    Orientation, OverloadedPair, PairKind,
};
pub use phases::{run_phases, PhaseStats, RebelRecord, BLUE, RED};
pub use structure::{
    build_contraction_digraph, compute_cores, decompose_residual, ComponentKind, ContractionDigraph, Cores,
    DComponent, DComponentKind, DNode, Decomposition, RComponent, Residual,
};

use crate::error::{Error, Result};
use crate::model::{dedup_same_support, Coloring, DirectedHypergraph, SupportMap, VertexId};
use crate::properties::{check_property_s, is_proper_coloring};

pub(crate) fn violation(msg: String) -> Error {
    Error::StructureViolated(msg)
}

/// The coloring together with every intermediate structure.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub coloring: Coloring,
    pub deduped: DirectedHypergraph,
    pub support: SupportMap,
    pub graph: LabeledGraph,
    pub pairs: Vec<OverloadedPair>,
    /// The simple oriented graph all structure is computed on.
    pub simple: LabeledGraph,
    pub decomposition: Decomposition,
    pub rebels: Vec<RebelRecord>,
    pub stats: PhaseStats,
}

pub fn analyze(h: &DirectedHypergraph) -> Result<Analysis> {
    if let Some(i) = h.edges().iter().position(|e| e.as_two_one().is_none()) {
        return Err(Error::NotTwoOne { edge: i });
    }
    check_property_s(h).map_err(Error::Violation)?;

    let (deduped, support) = dedup_same_support(h);
    let graph = build_labeled_graph(&deduped)?;
    let pairs = classify_overloaded_pairs(&graph)?;
    let (reduced, _) = reduce_to_simple(&graph, &pairs);
    let simple = orient_edges(&reduced);
    let decomposition = Decomposition::build(&simple)?;
    let out = run_phases(&graph, &simple, &pairs, &decomposition)?;

    // vertices are shared with the deduplicated copy, so the coloring lifts
    // unchanged; check it against the original edges
    if let Err(i) = is_proper_coloring(h, &out.coloring) {
        return Err(violation(format!("hyperedge {i} is monochromatic in the final coloring")));
    }
    Ok(Analysis {
        coloring: out.coloring,
        deduped,
        support,
        graph,
        pairs,
        simple,
        decomposition,
        rebels: out.rebels,
        stats: out.stats,
    })
}

/// Proper 2-coloring (red = 0, blue = 1) of a 2->1 hypergraph with Property S.
///
/// Fails with [`Error::Violation`] if Property S does not hold and with
/// [`Error::StructureViolated`] if an internal check fails.
pub fn color_2to1_property_s(h: &DirectedHypergraph) -> Result<Coloring> {
    analyze(h).map(|a| a.coloring)
}

impl Analysis {
    /// One line per vertex: class, component, flags and color.
    pub fn report(&self, h: &DirectedHypergraph) -> String {
        let dec = &self.decomposition;
        let name = |v: VertexId| h.name(v);
        let mut out = String::new();
        let s = &self.stats;
        let _ = writeln!(
            out,
            "# vertices {} edges {} deduped {} overloaded pairs {} ({} strong)",
            h.n(),
            h.num_edges(),
            self.deduped.num_edges(),
            self.pairs.len(),
            self.pairs.iter().filter(|p| p.is_strong()).count()
        );
        let _ = writeln!(
            out,
            "# cores {} R components {} D components {} rebels {}",
            dec.cores.members.len(),
            dec.residual.components.len(),
            dec.digraph.components.len(),
            self.rebels.len()
        );
        let _ = writeln!(
            out,
            "# D cycles even {} odd {} odd R cycles {} minion central edges {} strong pair exceptions {}",
            s.even_d_cycles, s.odd_d_cycles, s.odd_r_cycles, s.minion_central_edges, s.strong_pair_exceptions
        );

        for v in h.vertices() {
            let mut line = format!("{}\t", name(v));
            match dec.cores.core_of[v.0] {
                Some(q) => {
                    let cyclic = dec
                        .digraph
                        .component_of_core
                        .get(&q)
                        .is_some_and(|&c| matches!(dec.digraph.components[c].kind, DComponentKind::Unicyclic { .. }));
                    let class = if cyclic { "K_c" } else { "K_t" };
                    let _ = write!(line, "{class}({})\tD{}", name(q), dec.digraph.component_of_core[&q]);
                }
                None => {
                    let c = dec.residual.component_of[v.0].expect("R vertices have a component");
                    let comp = &dec.residual.components[c];
                    let class = if comp.is_cycle() { "R_c" } else { "R_t" };
                    let _ = write!(line, "{class}\tR{c}");
                    if comp.central().contains(&v) {
                        line.push_str("\tcentral");
                    }
                }
            }
            if let Some(r) = self.rebels.iter().find(|r| r.rebel == v) {
                let _ = write!(line, "\trebel of K({})", name(r.host));
            }
            if let Some(r) = self.rebels.iter().find(|r| r.minions.contains(&v)) {
                let _ = write!(line, "\tminion of {}", name(r.rebel));
            }
            let color = if self.coloring.get(v) == RED { "red" } else { "blue" };
            let _ = writeln!(out, "{line}\t{color}");
        }
        out
    }
}
