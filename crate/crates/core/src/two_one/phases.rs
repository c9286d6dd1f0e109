//! The four coloring phases: cores on cycles of `D`, cycle components of
//! `R`, tree components of `R`, and finally the cores hanging off `R`.

use std::collections::VecDeque;

use super::graph::{LabeledGraph, Orientation, OverloadedPair};
use super::structure::{ComponentKind, DComponentKind, DNode, Decomposition, RComponent};
use super::violation;
use crate::error::Result;
use crate::model::{Coloring, VertexId};

pub const RED: usize = 0;
pub const BLUE: usize = 1;

/// A core vertex `rebel` of `K(host)` recolored blue to break an odd cycle of
/// `D`, with the vertices of `R` joined to it by edges labeled `host`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RebelRecord {
    pub rebel: VertexId,
    pub host: VertexId,
    pub minions: Vec<VertexId>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PhaseStats {
    pub even_d_cycles: usize,
    pub odd_d_cycles: usize,
    pub odd_r_cycles: usize,
    /// Central edges left monochromatic because both ends are minions.
    pub minion_central_edges: usize,
    /// Strong-pair vertices colored against their partner instead of by
    /// the tree rule.
    pub strong_pair_exceptions: usize,
}

#[derive(Debug, Clone)]
pub struct PhaseOutcome {
    pub coloring: Coloring,
    pub rebels: Vec<RebelRecord>,
    pub stats: PhaseStats,
}

struct Phases<'a> {
    g: &'a LabeledGraph,
    gs: &'a LabeledGraph,
    dec: &'a Decomposition,
    color: Vec<Option<usize>>,
    /// Color of every contracted core, by label.
    core_color: Vec<Option<usize>>,
    /// Rebel index of each minion.
    minion_of: Vec<Option<usize>>,
    rebels: Vec<RebelRecord>,
    stats: PhaseStats,
}

/// Colors the vertices red/blue. `g` is the full labeled graph, `gs` the
/// simple oriented graph the decomposition was computed on.
pub fn run_phases(
    g: &LabeledGraph,
    gs: &LabeledGraph,
    pairs: &[OverloadedPair],
    dec: &Decomposition,
) -> Result<PhaseOutcome> {
    let n = gs.n();
    let mut p = Phases {
        g,
        gs,
        dec,
        color: vec![None; n],
        core_color: vec![None; n],
        minion_of: vec![None; n],
        rebels: Vec::new(),
        stats: PhaseStats::default(),
    };
    p.check_core_residual_edges(pairs)?;
    p.cyclic_cores()?;
    p.residual_cycles()?;
    p.residual_trees(pairs)?;
    p.tree_cores()?;

    for v in (0..n).map(VertexId) {
        if let Some(q) = dec.cores.core_of[v.0] {
            p.color[v.0] = p.core_color[q.0];
        }
    }
    for r in &p.rebels {
        if p.color[r.rebel.0] != Some(RED) {
            return Err(violation(format!("rebel {} was not red before recoloring", r.rebel)));
        }
        p.color[r.rebel.0] = Some(BLUE);
    }

    let colors = p
        .color
        .iter()
        .enumerate()
        .map(|(v, c)| c.ok_or_else(|| violation(format!("vertex #{v} left uncolored"))))
        .collect::<Result<Vec<_>>>()?;
    let coloring = Coloring::from_vec(colors, 2)?;
    Ok(PhaseOutcome { coloring, rebels: p.rebels, stats: p.stats })
}

impl Phases<'_> {
    /// For an edge `q x` labeled `r` with `q, r` in cores and `x` in `R`, the
    /// component of `x` is a directed path with sink `x`, or the single
    /// two-way edge `x y` labeled `q` where `q y` is labeled `r` as well. If
    /// `x` sits on a strong pair, both vertices of the pair are isolated in
    /// `R`.
    fn check_core_residual_edges(&self, pairs: &[OverloadedPair]) -> Result<()> {
        let cores = &self.dec.cores;
        for e in self.gs.edges() {
            if cores.in_r(e.label) {
                continue;
            }
            for (q, x) in [(e.a, e.b), (e.b, e.a)] {
                if cores.in_r(q) || cores.in_core(x) {
                    continue;
                }
                self.check_hanging_component(q, x, e.label)?;
                for pair in pairs.iter().filter(|p| p.is_strong() && p.has(x)) {
                    for v in [pair.x, pair.y] {
                        if self.dec.residual.component(v).is_none_or(|c| c.vertices.len() != 1) {
                            return Err(violation(format!(
                                "strong pair {{{}, {}}} tied to a core is not two isolated vertices",
                                pair.x, pair.y
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn check_hanging_component(&self, q: VertexId, x: VertexId, r: VertexId) -> Result<()> {
        let fail = || Err(violation(format!("component of {x}, tied to core vertex {q} by label {r}, has the wrong shape")));
        let Some(comp) = self.dec.residual.component(x) else { return fail() };
        let ComponentKind::Tree { central, central_edge } = &comp.kind else { return fail() };
        match central_edge {
            None if central.as_slice() == [x] => {
                let path = self.r_degree(x) <= 1 && comp.vertices.iter().all(|&v| self.r_degree(v) <= 2);
                if path {
                    Ok(())
                } else {
                    fail()
                }
            }
            Some(i) if comp.vertices.len() == 2 => {
                let e = self.gs.edge(*i);
                let y = e.other(x);
                let partner = self.gs.simple_edge(q, y).map(|j| self.gs.edge(j).label);
                if e.label == q && e.orientation == Orientation::Both && partner == Some(r) {
                    Ok(())
                } else {
                    fail()
                }
            }
            _ => fail(),
        }
    }

    fn r_degree(&self, v: VertexId) -> usize {
        let cores = &self.dec.cores;
        self.gs.incident(v).iter().filter(|&&i| cores.in_r(self.gs.edge(i).other(v))).count()
    }

    fn r_neighbours(&self, v: VertexId) -> impl Iterator<Item = (usize, VertexId)> + '_ {
        let cores = &self.dec.cores;
        self.gs
            .incident(v)
            .iter()
            .map(move |&i| (i, self.gs.edge(i).other(v)))
            .filter(move |&(_, u)| cores.in_r(u))
    }

    /// Neighbours of a core node in the underlying undirected tree/forest of
    /// `D`, restricted to core nodes.
    fn core_neighbours(&self, q: VertexId) -> Vec<VertexId> {
        let d = &self.dec.digraph;
        let mut out: Vec<VertexId> = d.children(DNode::Core(q)).to_vec();
        if let Some(DNode::Core(p)) = d.target.get(&q) {
            out.push(*p);
        }
        out
    }

    /// Phase 1: components of `D` containing a cycle.
    fn cyclic_cores(&mut self) -> Result<()> {
        let d = &self.dec.digraph;
        for comp in &d.components {
            let DComponentKind::Unicyclic { cycle } = &comp.kind else { continue };
            let (q, r) = (cycle[0], cycle[1]);
            let odd = cycle.len() % 2 == 1;
            // for an odd cycle the edge k(q) -> k(r) is left out
            let skip = |a: VertexId, b: VertexId| odd && ((a, b) == (q, r) || (a, b) == (r, q));
            self.core_color[q.0] = Some(RED);
            let mut queue = VecDeque::from([q]);
            while let Some(a) = queue.pop_front() {
                let ca = self.core_color[a.0].expect("queued cores are colored");
                for b in self.core_neighbours(a) {
                    if skip(a, b) {
                        continue;
                    }
                    match self.core_color[b.0] {
                        None => {
                            self.core_color[b.0] = Some(1 - ca);
                            queue.push_back(b);
                        }
                        Some(cb) if cb == ca => {
                            return Err(violation(format!("cores of {a} and {b} clash in a cycle of D")));
                        }
                        Some(_) => {}
                    }
                }
            }
            if !odd {
                self.stats.even_d_cycles += 1;
                continue;
            }
            self.stats.odd_d_cycles += 1;
            if self.core_color[r.0] != Some(RED) {
                return Err(violation(format!("cores of {q} and {r} not both red after cutting the odd cycle")));
            }
            let minions: Vec<VertexId> = self
                .gs
                .incident(q)
                .iter()
                .map(|&i| self.gs.edge(i))
                .filter(|e| e.label == r)
                .map(|e| e.other(q))
                .filter(|&x| self.dec.cores.in_r(x))
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect();
            for &x in &minions {
                if let Some(prev) = self.minion_of[x.0] {
                    return Err(violation(format!("{x} is a minion of both {} and {q}", self.rebels[prev].rebel)));
                }
                self.minion_of[x.0] = Some(self.rebels.len());
            }
            self.rebels.push(RebelRecord { rebel: q, host: r, minions });
        }
        Ok(())
    }

    /// Phase 2: cycle components of `R`.
    fn residual_cycles(&mut self) -> Result<()> {
        for comp in &self.dec.residual.components {
            let ComponentKind::Cycle { order } = &comp.kind else { continue };
            if let Some(&m) = order.iter().find(|v| self.minion_of[v.0].is_some()) {
                return Err(violation(format!("minion {m} lies on a cycle of R")));
            }
            let len = order.len();
            let start = if len % 2 == 0 {
                0
            } else {
                self.stats.odd_r_cycles += 1;
                // c_j, c_{j+1} share a color, c_{j-1} gets the other one
                let j = (0..len)
                    .find(|&j| self.g.between(order[j], order[(j + 1) % len]).len() == 1)
                    .ok_or_else(|| violation(format!("every edge of the odd cycle at {} is overloaded", order[0])))?;
                (j + 1) % len
            };
            for t in 0..len {
                self.color[order[(start + t) % len].0] = Some(t % 2);
            }
        }
        Ok(())
    }

    /// Phase 3: tree components of `R`, then the strong-pair exceptions.
    fn residual_trees(&mut self, pairs: &[OverloadedPair]) -> Result<()> {
        let singleton = |v: VertexId| self.dec.residual.component(v).is_some_and(|c| c.vertices.len() == 1);
        let is_minion = |v: VertexId| self.minion_of[v.0].is_some();

        // (vertex, partner): the vertex takes the color opposite its partner
        let mut deferred: Vec<(VertexId, VertexId)> = Vec::new();
        for pair in pairs.iter().filter(|p| p.is_strong()) {
            let (x, y) = (pair.x, pair.y);
            if self.dec.cores.in_core(x) || self.dec.cores.in_core(y) {
                return Err(violation(format!("strong pair {{{x}, {y}}} meets a core")));
            }
            let entry = match (singleton(x), singleton(y)) {
                (false, false) => continue,
                (true, false) => (x, y),
                (false, true) => (y, x),
                (true, true) => match (is_minion(x), is_minion(y)) {
                    (true, true) => return Err(violation(format!("both vertices of strong pair {{{x}, {y}}} are minions"))),
                    (false, true) => (x, y),
                    _ => (y, x),
                },
            };
            if is_minion(entry.0) {
                return Err(violation(format!("minion {} would be recolored by its strong pair", entry.0)));
            }
            deferred.push(entry);
        }

        for comp in &self.dec.residual.components {
            if comp.is_cycle() || deferred.iter().any(|&(v, _)| comp.vertices == [v]) {
                continue;
            }
            self.color_tree(comp)?;
        }

        for (v, partner) in deferred {
            let c = self.color[partner.0].ok_or_else(|| violation(format!("partner {partner} of {v} uncolored")))?;
            self.color[v.0] = Some(1 - c);
            self.stats.strong_pair_exceptions += 1;
        }
        Ok(())
    }

    fn color_tree(&mut self, comp: &RComponent) -> Result<()> {
        let ComponentKind::Tree { central, central_edge } = &comp.kind else { unreachable!("trees only") };
        if let Some(&m) = comp.vertices.iter().find(|v| self.minion_of[v.0].is_some() && !central.contains(v)) {
            return Err(violation(format!("minion {m} is not a central vertex")));
        }
        let minion = |v: VertexId| self.minion_of[v.0].is_some();
        match central.as_slice() {
            [x] => self.color[x.0] = Some(RED),
            [a, b] => {
                let (ca, cb) = match (minion(*a), minion(*b)) {
                    (true, true) => {
                        let (ra, rb) = (self.minion_of[a.0], self.minion_of[b.0]);
                        let rebel = self.rebels[ra.expect("minion")].rebel;
                        let label = self.gs.edge(central_edge.expect("two central vertices")).label;
                        if ra != rb || label != rebel {
                            return Err(violation(format!("central edge {a}{b} joins minions of different rebels")));
                        }
                        self.stats.minion_central_edges += 1;
                        (RED, RED)
                    }
                    (false, true) => (BLUE, RED),
                    _ => (RED, BLUE),
                };
                self.color[a.0] = Some(ca);
                self.color[b.0] = Some(cb);
            }
            _ => return Err(violation(format!("tree component at {} has no central vertex", comp.vertices[0]))),
        }

        let mut queue: VecDeque<VertexId> = central.iter().copied().collect();
        while let Some(v) = queue.pop_front() {
            let cv = self.color[v.0].expect("queued vertices are colored");
            let next: Vec<(usize, VertexId)> = self.r_neighbours(v).collect();
            for (i, u) in next {
                if Some(i) == *central_edge {
                    continue;
                }
                match self.color[u.0] {
                    None => {
                        self.color[u.0] = Some(1 - cv);
                        queue.push_back(u);
                    }
                    Some(cu) if cu == cv => return Err(violation(format!("tree edge {v}{u} in R is monochromatic"))),
                    Some(_) => {}
                }
            }
        }
        Ok(())
    }

    /// Phase 4: components of `D` that are trees rooted in `R`.
    fn tree_cores(&mut self) -> Result<()> {
        let d = &self.dec.digraph;
        for comp in &d.components {
            let DComponentKind::Tree { root } = comp.kind else { continue };
            let root_color = self.color[root.0].ok_or_else(|| violation(format!("root {root} of D uncolored")))?;
            // the only core pointing at a vertex of R is that vertex's own core
            let mut queue = VecDeque::new();
            for &q in d.children(DNode::Residual(root)) {
                self.core_color[q.0] = Some(1 - root_color);
                queue.push_back(q);
            }
            while let Some(p) = queue.pop_front() {
                let cp = self.core_color[p.0].expect("queued cores are colored");
                for &q in d.children(DNode::Core(p)) {
                    self.core_color[q.0] = Some(1 - cp);
                    queue.push_back(q);
                }
            }
        }
        Ok(())
    }
}
