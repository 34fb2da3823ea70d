//! Degree reduction by replacing vertices with paths, and its inverse on
//! drawings.
//!
//! Vertex `u` of degree `k` becomes a path `p_0 … p_{k-1}`; `p_i` carries
//! the `i`-th incident edge of `u`. For a planar graph the edges follow the
//! rotation at `u` of its planar embedding, read from the smallest neighbour
//! id in the lexicographically smaller direction, so the reduced graph is
//! planar as well; otherwise they are in ascending order of neighbour id.
//! Carried edges keep their original ids (type 1); path edges get fresh ids
//! (type 2). An isolated vertex becomes a single path vertex.
//!
//! Restoring a drawing contracts every path from both ends toward its middle
//! vertex. A crossing on a contracted path edge is pushed around the
//! contracted part, so it turns into at most `deg(u) - 1` crossings with
//! edges of `u`; see [`RestoreAccounting`].

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::drawing::{Drawing, DrawingError, Sketch};
use crate::graph::{Edge, EdgeId, EdgeLabel, Graph, VertexId};
use crate::inserter::{uncross, uncross_sketch, UncrossOptions};
use crate::planarity::{embed, RotationSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReduceError {
    #[error("drawing does not draw the reduced graph")]
    Mismatch,
    #[error(transparent)]
    Drawing(#[from] DrawingError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GadgetEdge {
    /// Stands for the original edge with the same id.
    Type1,
    /// Lies on the path of the given original vertex.
    Type2(VertexId),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeReduction {
    pub original: Graph,
    pub reduced: Graph,
    /// Reduced vertex to the original vertex and the edge it carries.
    pub slots: BTreeMap<VertexId, (VertexId, Option<EdgeId>)>,
    /// `P_u` for every original vertex.
    pub paths: BTreeMap<VertexId, Vec<VertexId>>,
    pub kinds: BTreeMap<EdgeId, GadgetEdge>,
}

impl DegreeReduction {
    /// The reduced vertex carrying edge `e` at original vertex `u`.
    pub fn vertex_for(&self, u: VertexId, e: EdgeId) -> Option<VertexId> {
        self.paths.get(&u)?.iter().copied().find(|p| self.slots[p].1 == Some(e))
    }

    /// Contracts every path back into its original vertex.
    pub fn contract(&self) -> Graph {
        let mut g = Graph::new();
        for &u in self.paths.keys() {
            g.add_vertex(u);
        }
        for e in self.reduced.edges().filter(|e| self.kinds[&e.id] == GadgetEdge::Type1) {
            let label = self.original.edge(e.id).map_or(EdgeLabel::Original, |o| o.label);
            let mut back = *e;
            back.u = self.slots[&e.u].0;
            back.v = self.slots[&e.v].0;
            back.label = label;
            g.insert_edge(back).expect("original edge ids are unique");
        }
        g
    }
}

/// `(neighbour, edge)` pairs at `u` in path order.
fn path_order(g: &Graph, u: VertexId, planar: Option<&RotationSystem>) -> Vec<(VertexId, EdgeId)> {
    let key = |e: EdgeId| (g.edge(e).expect("incident").other(u), e);
    let Some(rot) = planar.filter(|_| g.degree(u) > 0) else {
        let mut incident: Vec<(VertexId, EdgeId)> = g.incident(u).iter().map(|&e| key(e)).collect();
        incident.sort_unstable();
        return incident;
    };
    let cycle: Vec<(VertexId, EdgeId)> = rot.rotation(u).iter().map(|d| key(d.edge)).collect();
    let k = cycle.len();
    let start = (0..k).min_by_key(|&i| cycle[i]).expect("non-empty rotation");
    let forward: Vec<_> = (0..k).map(|i| cycle[(start + i) % k]).collect();
    let backward: Vec<_> = (0..k).map(|i| cycle[(start + k - i) % k]).collect();
    forward.min(backward)
}

pub fn degree_reduce(g: &Graph) -> DegreeReduction {
    let mut reduced = Graph::new();
    let mut slots = BTreeMap::new();
    let mut paths = BTreeMap::new();
    let mut next_vertex = 0;
    let planar = embed(g);
    for u in g.vertices() {
        let incident = path_order(g, u, planar.as_ref().map(|emb| emb.rotation()));
        let path: Vec<VertexId> = if incident.is_empty() {
            slots.insert(next_vertex, (u, None));
            vec![next_vertex]
        } else {
            incident.iter().enumerate().map(|(i, &(_, e))| {
                slots.insert(next_vertex + i, (u, Some(e)));
                next_vertex + i
            }).collect()
        };
        next_vertex += path.len();
        for &p in &path {
            reduced.add_vertex(p);
        }
        paths.insert(u, path);
    }
    let mut kinds = BTreeMap::new();
    let slot_of: BTreeMap<(VertexId, EdgeId), VertexId> = slots.iter().filter_map(|(&p, &(u, e))| e.map(|e| ((u, e), p))).collect();
    for e in g.edges() {
        let mut t = *e;
        t.u = slot_of[&(e.u, e.id)];
        t.v = slot_of[&(e.v, e.id)];
        t.label = EdgeLabel::GadgetType1;
        reduced.insert_edge(t).expect("ids unique");
        kinds.insert(e.id, GadgetEdge::Type1);
    }
    // type-2 ids start above every original id
    let mut next_edge = g.next_edge_id();
    for (&u, path) in &paths {
        for w in path.windows(2) {
            reduced.insert_edge(Edge { id: next_edge, u: w[0], v: w[1], label: EdgeLabel::GadgetType2 }).expect("fresh id");
            kinds.insert(next_edge, GadgetEdge::Type2(u));
            next_edge += 1;
        }
    }
    DegreeReduction { original: g.clone(), reduced, slots, paths, kinds }
}

/// Upper bound on the crossings of a restored drawing, split by the kinds of
/// the crossing pair in the reduced drawing after repeated and self-crossings
/// are removed. A type-2 edge on the path of `u` weighs `deg(u) - 1`, a
/// type-1 edge weighs one, and each crossing is charged the product of its
/// two weights.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestoreAccounting {
    pub type1_type1: usize,
    pub type1_type2: usize,
    pub type2_type2: usize,
    pub bound: usize,
}

pub fn restore_accounting(d: &Drawing, red: &DegreeReduction) -> Result<RestoreAccounting, ReduceError> {
    if !same_graph(&d.graph, &red.reduced) {
        return Err(ReduceError::Mismatch);
    }
    let d = uncross(d)?;
    let weight = |e: EdgeId| match red.kinds[&e] {
        GadgetEdge::Type1 => 1,
        GadgetEdge::Type2(u) => red.original.degree(u).saturating_sub(1),
    };
    let mut acc = RestoreAccounting::default();
    for c in d.crossings.values() {
        let twos = [c.a, c.b].iter().filter(|&&e| matches!(red.kinds[&e], GadgetEdge::Type2(_))).count();
        match twos {
            0 => acc.type1_type1 += 1,
            1 => acc.type1_type2 += 1,
            _ => acc.type2_type2 += 1,
        }
        acc.bound += weight(c.a) * weight(c.b);
    }
    Ok(acc)
}

fn same_graph(a: &Graph, b: &Graph) -> bool {
    a.vertices().eq(b.vertices()) && a.edges().map(|e| (e.id, e.u, e.v)).eq(b.edges().map(|e| (e.id, e.u, e.v)))
}

/// Contracts every path of a drawing of the reduced graph, yielding a drawing
/// of the original graph. Repeated, self- and adjacent crossings are removed
/// afterwards.
pub fn degree_restore(d: &Drawing, red: &DegreeReduction) -> Result<Drawing, ReduceError> {
    if !same_graph(&d.graph, &red.reduced) {
        return Err(ReduceError::Mismatch);
    }
    let mut sk = Sketch::from_drawing(&uncross(d)?);
    let path_edge = |a: VertexId, b: VertexId| red.reduced.edges_between(a, b).into_iter().find(|e| matches!(red.kinds[e], GadgetEdge::Type2(_)));
    let mut rename = BTreeMap::new();
    for (&u, path) in &red.paths {
        let mid = (path.len() - 1) / 2;
        for i in 0..mid {
            let e = path_edge(path[i], path[i + 1]).expect("consecutive path vertices");
            sk.absorb_along(path[i], e, true)?;
        }
        for i in (mid + 1..path.len()).rev() {
            let e = path_edge(path[i - 1], path[i]).expect("consecutive path vertices");
            sk.absorb_along(path[i], e, true)?;
        }
        rename.insert(path[mid], u);
    }
    sk.rename_vertices(&rename);
    sk.graph = red.original.clone();
    let star: BTreeSet<EdgeId> = d.e_star.iter().copied().filter(|e| red.kinds.get(e) == Some(&GadgetEdge::Type1)).collect();
    sk.e_star = star;
    uncross_sketch(&mut sk, UncrossOptions { adjacent: true })?;
    Ok(sk.finish()?)
}
