//! SPQR trees by recursive splitting at separation pairs.
//!
//! A 2-connected multigraph is split at bundles of parallel edges and at
//! separation pairs until every piece is a triangle, a bond of three edges
//! or a 3-connected simple graph. Adjacent bonds and adjacent polygons are
//! then merged, which yields the unique triconnected components.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use super::DecompError;
use crate::graph::{self, Edge, EdgeId, EdgeLabel, Graph, VertexId, VertexPair};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum NodeKind {
    S,
    P,
    R,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpqrNode {
    pub kind: NodeKind,
    /// Actual edges keep their ids; virtual edges carry an artificial label.
    pub skeleton: Graph,
    pub virtual_edges: BTreeSet<EdgeId>,
}

impl SpqrNode {
    pub fn actual_edges(&self) -> impl Iterator<Item = &Edge> + '_ {
        self.skeleton.edges().filter(|e| !self.virtual_edges.contains(&e.id))
    }
}

/// A tree edge; the shared virtual edge id appears in both skeletons.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeEdge {
    pub a: usize,
    pub b: usize,
    pub virtual_edge: EdgeId,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpqrTree {
    pub nodes: Vec<SpqrNode>,
    pub edges: Vec<TreeEdge>,
}

impl SpqrTree {
    /// Tree neighbours of `x` with the virtual edge they share.
    pub fn neighbors(&self, x: usize) -> Vec<(usize, EdgeId)> {
        let mut out: Vec<(usize, EdgeId)> = self
            .edges
            .iter()
            .filter_map(|t| {
                if t.a == x {
                    Some((t.b, t.virtual_edge))
                } else if t.b == x {
                    Some((t.a, t.virtual_edge))
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Lowest-index P or R node, if any.
    pub fn default_root(&self) -> Option<usize> {
        self.nodes.iter().position(|n| n.kind != NodeKind::S)
    }

    /// Pairs read off the tree: endpoints of virtual edges and non-adjacent
    /// pairs of polygon skeletons.
    pub fn two_separators(&self) -> BTreeSet<VertexPair> {
        let mut out = BTreeSet::new();
        for node in &self.nodes {
            for &v in &node.virtual_edges {
                out.insert(node.skeleton.edge(v).expect("virtual edge").pair());
            }
            if node.kind == NodeKind::S {
                let vs: Vec<VertexId> = node.skeleton.vertices().collect();
                for (i, &a) in vs.iter().enumerate() {
                    for &b in &vs[i + 1..] {
                        if !node.skeleton.has_edge_between(a, b) {
                            out.insert(VertexPair::new(a, b));
                        }
                    }
                }
            }
        }
        out
    }
}

fn is_two_connected(g: &Graph) -> bool {
    g.vertex_count() >= 2 && g.is_connected() && graph::cut_vertices(g).is_empty()
}

fn is_cycle(g: &Graph) -> bool {
    g.vertex_count() >= 3 && g.edge_count() == g.vertex_count() && g.vertices().all(|v| g.degree(v) == 2)
}

fn kind_of(g: &Graph) -> NodeKind {
    if g.vertex_count() == 2 {
        NodeKind::P
    } else if is_cycle(g) {
        NodeKind::S
    } else {
        NodeKind::R
    }
}

/// First separation pair `{a, b}` in ascending order, if any.
fn separation_pair(g: &Graph) -> Option<(VertexId, VertexId)> {
    for a in g.vertices() {
        let mut h = g.clone();
        h.remove_vertex(a);
        if let Some(b) = graph::cut_vertices(&h).into_iter().next() {
            return Some((a, b));
        }
    }
    None
}

struct Splitter {
    next_virtual: EdgeId,
    virtuals: BTreeSet<EdgeId>,
}

impl Splitter {
    fn fresh(&mut self, g: &mut Graph, a: VertexId, b: VertexId) -> EdgeId {
        let id = self.next_virtual;
        self.next_virtual += 1;
        self.virtuals.insert(id);
        g.insert_edge(Edge { id, u: a.min(b), v: a.max(b), label: EdgeLabel::ArtificialType1 }).expect("fresh id");
        id
    }

    /// Splits `c` into two graphs along a new virtual edge, or returns it as
    /// a finished split component.
    fn split(&mut self, c: Graph) -> Result<(Graph, Graph), Graph> {
        if c.edge_count() <= 3 || c.vertex_count() == 2 {
            return Err(c);
        }
        if let Some((pair, bundle)) = c.parallel_classes().into_iter().find(|(_, ids)| ids.len() >= 2) {
            let mut bond = c.edge_subgraph(&bundle);
            let mut rest = c.without_edges(&bundle);
            let id = self.fresh(&mut bond, pair.0, pair.1);
            rest.insert_edge(*bond.edge(id).unwrap()).unwrap();
            return Ok((bond, rest));
        }
        let Some((a, b)) = separation_pair(&c) else {
            return Err(c);
        };
        let removed: HashSet<VertexId> = HashSet::from([a, b]);
        let first = c.components_avoiding(&removed).into_iter().next().expect("separated");
        let class: Vec<EdgeId> = c.edges().filter(|e| first.contains(&e.u) || first.contains(&e.v)).map(|e| e.id).collect();
        let mut one = c.edge_subgraph(&class);
        let mut two = c.without_edges(&class);
        for v in &first {
            two.remove_vertex(*v);
        }
        let id = self.fresh(&mut one, a, b);
        two.insert_edge(*one.edge(id).unwrap()).unwrap();
        Ok((one, two))
    }
}

/// SPQR tree of a 2-connected graph with at least three vertices.
pub fn spqr(g: &Graph) -> Result<SpqrTree, DecompError> {
    if g.vertex_count() < 3 || !is_two_connected(g) {
        return Err(DecompError::NotBiconnected);
    }
    let mut sp = Splitter { next_virtual: g.next_edge_id(), virtuals: BTreeSet::new() };
    let mut work = vec![g.clone()];
    let mut done: Vec<Graph> = Vec::new();
    while let Some(c) = work.pop() {
        match sp.split(c) {
            Ok((x, y)) => {
                work.push(y);
                work.push(x);
            }
            Err(c) => done.push(c),
        }
    }
    // merge adjacent bonds and adjacent polygons
    let mut comps: Vec<Option<Graph>> = done.into_iter().map(Some).collect();
    let mut sides: BTreeMap<EdgeId, Vec<usize>> = BTreeMap::new();
    for (i, c) in comps.iter().enumerate() {
        for e in c.as_ref().unwrap().edge_ids().filter(|e| sp.virtuals.contains(e)) {
            sides.entry(e).or_default().push(i);
        }
    }
    for &v in sides.clone().keys() {
        let (i, j) = (sides[&v][0], sides[&v][1]);
        let (ki, kj) = (kind_of(comps[i].as_ref().unwrap()), kind_of(comps[j].as_ref().unwrap()));
        if ki != kj || ki == NodeKind::R {
            continue;
        }
        let gj = comps[j].take().unwrap();
        let gi = comps[i].as_mut().unwrap();
        gi.remove_edge(v);
        for e in gj.edges().filter(|e| e.id != v) {
            gi.insert_edge(*e).unwrap();
            if let Some(s) = sides.get_mut(&e.id) {
                for x in s.iter_mut().filter(|x| **x == j) {
                    *x = i;
                }
            }
        }
        sides.remove(&v);
    }
    let mut index = BTreeMap::new();
    let mut nodes = Vec::new();
    for (i, c) in comps.into_iter().enumerate() {
        if let Some(skeleton) = c {
            index.insert(i, nodes.len());
            let virtual_edges = skeleton.edge_ids().filter(|e| sp.virtuals.contains(e)).collect();
            nodes.push(SpqrNode { kind: kind_of(&skeleton), skeleton, virtual_edges });
        }
    }
    let edges = sides.iter().map(|(&v, s)| TreeEdge { a: index[&s[0]], b: index[&s[1]], virtual_edge: v }).collect();
    Ok(SpqrTree { nodes, edges })
}
