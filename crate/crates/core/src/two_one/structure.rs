//! Cores, the residual vertex set `R` and its components, and the contraction
//! digraph `D` whose nodes are the vertices of `R` and one node per core.

use std::collections::{BTreeMap, VecDeque};

use super::graph::LabeledGraph;
use super::violation;
use crate::error::Result;
use crate::model::VertexId;

/// `K(q)`: the vertices with at least two incident edges labeled `q`.
#[derive(Debug, Clone, Default)]
pub struct Cores {
    /// `core_of[v] = Some(q)` when `v` lies in `K(q)`.
    pub core_of: Vec<Option<VertexId>>,
    /// Non-empty cores by label, members in increasing order.
    pub members: BTreeMap<VertexId, Vec<VertexId>>,
}

impl Cores {
    pub fn in_core(&self, v: VertexId) -> bool {
        self.core_of[v.0].is_some()
    }

    pub fn in_r(&self, v: VertexId) -> bool {
        self.core_of[v.0].is_none()
    }

    pub fn core(&self, q: VertexId) -> &[VertexId] {
        self.members.get(&q).map_or(&[], Vec::as_slice)
    }
}

/// Computes the cores of the simple oriented graph and checks their local
/// structure: at most three distinct labels around a core vertex, the
/// three-label and two-label shapes, disjointness of cores, and that an edge
/// inside `K(r)` is labeled `r`.
pub fn compute_cores(g: &LabeledGraph) -> Result<Cores> {
    let n = g.n();
    let mut core_of = vec![None; n];
    let mut members: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    let mut counts: BTreeMap<VertexId, usize> = BTreeMap::new();
    for v in (0..n).map(VertexId) {
        counts.clear();
        for &i in g.incident(v) {
            *counts.entry(g.edge(i).label).or_default() += 1;
        }
        let heavy: Vec<VertexId> = counts.iter().filter(|(_, &c)| c >= 2).map(|(&l, _)| l).collect();
        match heavy.as_slice() {
            [] => continue,
            [q] => {
                core_of[v.0] = Some(*q);
                members.entry(*q).or_default().push(v);
            }
            _ => return Err(violation(format!("vertex {v} lies in cores of {heavy:?}"))),
        }
        check_core_vertex(g, v, &counts)?;
    }

    let cores = Cores { core_of, members };
    for e in g.edges() {
        if let (Some(p), Some(q)) = (cores.core_of[e.a.0], cores.core_of[e.b.0]) {
            if p == q && e.label != q {
                return Err(violation(format!("edge {}{} inside K({q}) is labeled {}", e.a, e.b, e.label)));
            }
        }
    }
    Ok(cores)
}

fn check_core_vertex(g: &LabeledGraph, v: VertexId, counts: &BTreeMap<VertexId, usize>) -> Result<()> {
    let fail = |what: &str| Err(violation(format!("core vertex {v}: {what}")));
    let incident = g.incident(v);
    match counts.len() {
        1 => Ok(()),
        2 => {
            // one label is used once, on an edge towards the other label
            let single: Vec<VertexId> = counts.iter().filter(|(_, &c)| c == 1).map(|(&l, _)| l).collect();
            let [s] = single.as_slice() else { return fail("two labels, neither used once") };
            let other = *counts.keys().find(|&&l| l != *s).expect("two labels");
            let e = incident.iter().map(|&i| g.edge(i)).find(|e| e.label == *s).expect("label present");
            if e.other(v) != other {
                return fail("two labels, lone edge not towards the other label");
            }
            Ok(())
        }
        3 => {
            if incident.len() != 3 {
                return fail("three labels on more than three edges");
            }
            let mut neighbours: Vec<VertexId> = incident.iter().map(|&i| g.edge(i).other(v)).collect();
            neighbours.sort_unstable();
            if !neighbours.iter().eq(counts.keys()) {
                return fail("three labels that differ from the neighbourhood");
            }
            Ok(())
        }
        _ => fail("more than three labels"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComponentKind {
    /// `|E| = |V|`: a cycle `c_0 .. c_{L-1}` in which the edge
    /// `c_i c_{i+1}` points only at `c_i` and is labeled `c_{i-1}`.
    Cycle { order: Vec<VertexId> },
    /// `|E| = |V| - 1`. Either one central vertex that every edge leads to,
    /// or one central edge (the only undirected or two-way edge).
    Tree { central: Vec<VertexId>, central_edge: Option<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RComponent {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<usize>,
    pub kind: ComponentKind,
}

impl RComponent {
    pub fn is_cycle(&self) -> bool {
        matches!(self.kind, ComponentKind::Cycle { .. })
    }

    pub fn central(&self) -> &[VertexId] {
        match &self.kind {
            ComponentKind::Tree { central, .. } => central,
            ComponentKind::Cycle { .. } => &[],
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Residual {
    pub components: Vec<RComponent>,
    /// Component index of every vertex of `R`.
    pub component_of: Vec<Option<usize>>,
}

impl Residual {
    pub fn component(&self, v: VertexId) -> Option<&RComponent> {
        self.component_of[v.0].map(|c| &self.components[c])
    }
}

/// Splits `G'[R]` into components, checks the local rules at every vertex of
/// `R`, and classifies each component as a cycle or a tree.
pub fn decompose_residual(g: &LabeledGraph, cores: &Cores) -> Result<Residual> {
    let n = g.n();
    let r_edges = |v: VertexId| g.incident(v).iter().copied().filter(move |&i| cores.in_r(g.edge(i).other(v)));

    for v in (0..n).map(VertexId).filter(|&v| cores.in_r(v)) {
        check_residual_vertex(g, cores, v, &r_edges(v).collect::<Vec<_>>())?;
    }

    let mut component_of = vec![None; n];
    let mut components = Vec::new();
    for start in (0..n).map(VertexId) {
        if cores.in_core(start) || component_of[start.0].is_some() {
            continue;
        }
        let id = components.len();
        let mut vertices = vec![start];
        let mut edges = Vec::new();
        component_of[start.0] = Some(id);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for i in r_edges(v) {
                let u = g.edge(i).other(v);
                if v < u {
                    edges.push(i);
                }
                if component_of[u.0].is_none() {
                    component_of[u.0] = Some(id);
                    vertices.push(u);
                    queue.push_back(u);
                }
            }
        }
        vertices.sort_unstable();
        edges.sort_unstable();
        let kind = classify_component(g, cores, &vertices, &edges)?;
        components.push(RComponent { vertices, edges, kind });
    }
    Ok(Residual { components, component_of })
}

fn check_residual_vertex(g: &LabeledGraph, cores: &Cores, x: VertexId, in_r: &[usize]) -> Result<()> {
    let fail = |what: String| Err(violation(format!("residual vertex {x}: {what}")));

    let away = g.incident(x).iter().filter(|&&i| !g.edge(i).toward(x)).count();
    if away > 1 {
        return fail(format!("{away} incident edges not directed towards it"));
    }

    for &i in in_r {
        let e = g.edge(i);
        let b = e.other(x);
        if e.orientation == super::graph::Orientation::Both && x < b {
            let c = e.label;
            if cores.in_r(c) {
                return fail(format!("two-way edge {x}{b} labeled {c}, which lies in R"));
            }
            let (Some(xc), Some(bc)) = (g.simple_edge(x, c), g.simple_edge(b, c)) else {
                return fail(format!("two-way edge {x}{b} without both edges to its label {c}"));
            };
            let l = g.edge(xc).label;
            if l != g.edge(bc).label || l == x || l == b {
                return fail(format!("edges {x}{c} and {b}{c} around two-way edge {x}{b} are mislabeled"));
            }
        }
    }

    // an edge in R that is not only towards x forces the rest to be a single
    // edge labeled by its other end and pointing only at x
    let loose: Vec<usize> = in_r.iter().copied().filter(|&i| !g.edge(i).only_toward(x)).collect();
    match loose.as_slice() {
        [] => Ok(()),
        [i] => {
            let b = g.edge(*i).other(x);
            match in_r.iter().copied().filter(|j| j != i).collect::<Vec<_>>().as_slice() {
                [] => Ok(()),
                [j] if g.edge(*j).label == b && g.edge(*j).only_toward(x) => Ok(()),
                _ => fail(format!("edge {x}{b} is not only towards it and the remaining edges break the pattern")),
            }
        }
        _ => fail(format!("{} edges in R not directed only towards it", loose.len())),
    }
}

fn classify_component(g: &LabeledGraph, cores: &Cores, vertices: &[VertexId], edges: &[usize]) -> Result<ComponentKind> {
    let fail = |what: &str| Err(violation(format!("component of R at {}: {what}", vertices[0])));
    let degree = |v: VertexId| g.incident(v).iter().filter(|&&i| cores.in_r(g.edge(i).other(v))).count();

    if edges.len() == vertices.len() {
        return match cycle_order(g, cores, vertices) {
            Some(order) => Ok(ComponentKind::Cycle { order }),
            None => fail("unicyclic but not a cycle of the expected labeled shape"),
        };
    }
    if edges.len() + 1 != vertices.len() {
        return fail("more than one cycle");
    }

    let symmetric: Vec<usize> = edges.iter().copied().filter(|&i| g.edge(i).is_symmetric()).collect();
    let (central, central_edge) = match symmetric.as_slice() {
        [] => {
            let sinks: Vec<VertexId> = vertices
                .iter()
                .copied()
                .filter(|&v| g.incident(v).iter().all(|&i| cores.in_core(g.edge(i).other(v)) || g.edge(i).only_toward(v)))
                .collect();
            let [x] = sinks.as_slice() else { return fail("no unique vertex receiving every edge") };
            if degree(*x) > 3 {
                return fail("central vertex of degree above three");
            }
            (vec![*x], None)
        }
        [i] => {
            let e = g.edge(*i);
            for v in [e.a, e.b] {
                let ok = g
                    .incident(v)
                    .iter()
                    .filter(|&&j| j != *i && cores.in_r(g.edge(j).other(v)))
                    .all(|&j| g.edge(j).only_toward(v));
                if !ok {
                    return fail("central edge with an end that sends an edge away");
                }
            }
            (vec![e.a, e.b], Some(*i))
        }
        _ => return fail("more than one undirected or two-way edge"),
    };

    for &y in vertices.iter().filter(|v| !central.contains(v)) {
        let es: Vec<usize> =
            g.incident(y).iter().copied().filter(|&i| cores.in_r(g.edge(i).other(y))).collect();
        let out = es.iter().filter(|&&i| g.edge(i).only_toward(g.edge(i).other(y))).count();
        let inn = es.iter().filter(|&&i| g.edge(i).only_toward(y)).count();
        if !(1..=2).contains(&es.len()) || out != 1 || out + inn != es.len() {
            return fail("non-central vertex off the expected in-tree shape");
        }
    }
    Ok(ComponentKind::Tree { central, central_edge })
}

/// Orders a cycle component so that `c_i c_{i+1}` points only at `c_i` and is
/// labeled `c_{i-1}`. Returns `None` if neither walking direction works.
fn cycle_order(g: &LabeledGraph, cores: &Cores, vertices: &[VertexId]) -> Option<Vec<VertexId>> {
    let neighbours = |v: VertexId| -> Vec<VertexId> {
        g.incident(v).iter().map(|&i| g.edge(i).other(v)).filter(|&u| cores.in_r(u)).collect()
    };
    if vertices.len() < 4 || vertices.iter().any(|&v| neighbours(v).len() != 2) {
        return None;
    }
    let start = vertices[0];
    for first in neighbours(start) {
        let mut order = vec![start, first];
        while order.len() < vertices.len() {
            let (prev, cur) = (order[order.len() - 2], order[order.len() - 1]);
            let next = neighbours(cur).into_iter().find(|&u| u != prev)?;
            order.push(next);
        }
        if !neighbours(*order.last()?).contains(&start) {
            return None;
        }
        let len = order.len();
        let fits = (0..len).all(|i| {
            let (prev, cur, next) = (order[(i + len - 1) % len], order[i], order[(i + 1) % len]);
            g.simple_edge(cur, next).map(|j| g.edge(j)).is_some_and(|e| e.label == prev && e.only_toward(cur))
        });
        if fits {
            return Some(order);
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DNode {
    /// A vertex of `R`.
    Residual(VertexId),
    /// The contracted core `K(q)`.
    Core(VertexId),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DComponentKind {
    /// Every path leads into the vertex `root` of `R`.
    Tree { root: VertexId },
    /// Every path leads into a directed cycle `K(q_0) -> K(q_1) -> ...`;
    /// `cycle` lists the labels `q_i`, starting from the smallest.
    Unicyclic { cycle: Vec<VertexId> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DComponent {
    /// Core labels of the component.
    pub cores: Vec<VertexId>,
    pub kind: DComponentKind,
}

/// `D`: every core `K(q)` has one out-edge, to `q` itself if `q` is in `R`
/// and to the core containing `q` otherwise.
#[derive(Debug, Clone, Default)]
pub struct ContractionDigraph {
    /// Out-neighbour of every core, keyed by label.
    pub target: BTreeMap<VertexId, DNode>,
    /// Cores `K(s)` whose out-edge enters each node.
    pub children: BTreeMap<DNode, Vec<VertexId>>,
    /// Components containing at least one core.
    pub components: Vec<DComponent>,
    pub component_of_core: BTreeMap<VertexId, usize>,
}

impl ContractionDigraph {
    pub fn children(&self, node: DNode) -> &[VertexId] {
        self.children.get(&node).map_or(&[], Vec::as_slice)
    }
}

pub fn build_contraction_digraph(cores: &Cores) -> Result<ContractionDigraph> {
    let mut target = BTreeMap::new();
    let mut children: BTreeMap<DNode, Vec<VertexId>> = BTreeMap::new();
    for &q in cores.members.keys() {
        let t = match cores.core_of[q.0] {
            None => DNode::Residual(q),
            Some(p) if p == q => return Err(violation(format!("{q} lies in its own core"))),
            Some(p) => DNode::Core(p),
        };
        target.insert(q, t);
        children.entry(t).or_default().push(q);
    }

    // walk each core forwards until reaching R, a finished core, or the
    // current path
    let mut components: Vec<DComponent> = Vec::new();
    let mut component_of_core: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut root_component: BTreeMap<VertexId, usize> = BTreeMap::new();
    for &start in cores.members.keys() {
        if component_of_core.contains_key(&start) {
            continue;
        }
        let mut path = vec![start];
        let id = loop {
            let cur = *path.last().expect("non-empty");
            match target[&cur] {
                DNode::Residual(root) => {
                    break *root_component.entry(root).or_insert_with(|| {
                        components.push(DComponent { cores: Vec::new(), kind: DComponentKind::Tree { root } });
                        components.len() - 1
                    });
                }
                DNode::Core(next) => {
                    if let Some(&id) = component_of_core.get(&next) {
                        break id;
                    }
                    if let Some(pos) = path.iter().position(|&q| q == next) {
                        let mut cycle = path[pos..].to_vec();
                        let min = (0..cycle.len()).min_by_key(|&i| cycle[i]).expect("non-empty");
                        cycle.rotate_left(min);
                        if cycle.len() < 2 {
                            return Err(violation(format!("core {next} points at itself")));
                        }
                        components.push(DComponent { cores: Vec::new(), kind: DComponentKind::Unicyclic { cycle } });
                        break components.len() - 1;
                    }
                    path.push(next);
                }
            }
        };
        for q in path {
            component_of_core.insert(q, id);
            components[id].cores.push(q);
        }
    }
    for c in &mut components {
        c.cores.sort_unstable();
    }
    Ok(ContractionDigraph { target, children, components, component_of_core })
}

/// Everything the coloring phases need to know about the simple graph.
#[derive(Debug, Clone, Default)]
pub struct Decomposition {
    pub cores: Cores,
    pub residual: Residual,
    pub digraph: ContractionDigraph,
}

impl Decomposition {
    pub fn build(g: &LabeledGraph) -> Result<Self> {
        let cores = compute_cores(g)?;
        let residual = decompose_residual(g, &cores)?;
        let digraph = build_contraction_digraph(&cores)?;
        Ok(Decomposition { cores, residual, digraph })
    }
}
