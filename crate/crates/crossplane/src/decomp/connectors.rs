//! Connector vertices and the five witness paths of every block.
//!
//! For a block `B` with ends `(u, v)` of a 2-connected component `X` of
//! `H = G - E*` (with `G` 3-connected):
//! - `P_out` runs from `u` to `v` outside `B`, and contains the parent's `P_out`.
//! - `P_0` leaves an inner vertex `x` of `B` (the connector) and reaches an
//!   inner vertex `y` of `P_out` in `G - {u, v}`.
//! - `P_in` runs from `u` through `x` to `v` inside `B`.
//!
//! The five segments `P_0`, `P_1,in`, `P_2,in`, `P_1,out` and `P_2,out` meet
//! only at `u`, `v`, `x` and `y`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::blocks::BlockDecomposition;
use super::DecompError;
use crate::flow::disjoint_paths;
use crate::graph::{self, EdgeId, Graph, VertexId, VertexPair};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Connector {
    /// Connector vertex, inner to the block.
    pub x: VertexId,
    /// Attachment vertex, inner to `p_out`.
    pub y: VertexId,
    /// From `x` to `y`.
    pub p0: Vec<VertexId>,
    /// From `u` to `x`.
    pub p1_in: Vec<VertexId>,
    /// From `x` to `v`.
    pub p2_in: Vec<VertexId>,
    /// From `u` to `v` (with `u < v`).
    pub p_out: Vec<VertexId>,
}

impl Connector {
    /// `P_out` split at `y`: from `u` to `y` and from `y` to `v`.
    pub fn out_segments(&self) -> (Vec<VertexId>, Vec<VertexId>) {
        let k = self.p_out.iter().position(|&w| w == self.y).expect("y on p_out");
        (self.p_out[..=k].to_vec(), self.p_out[k..].to_vec())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectorInfo {
    /// Keyed by block index; the root has no entry.
    pub blocks: BTreeMap<usize, Connector>,
}

/// The vertex set `S_X`: cut vertices of `H` inside `X` and vertices of `X`
/// incident to `E*`.
pub fn connector_candidates(g_full: &Graph, x: &Graph, e_star: &BTreeSet<EdgeId>) -> BTreeSet<VertexId> {
    let h = g_full.without_edges(e_star);
    let mut out: BTreeSet<VertexId> = graph::cut_vertices(&h).into_iter().filter(|v| x.contains_vertex(*v)).collect();
    for &e in e_star {
        if let Some(edge) = g_full.edge(e) {
            out.extend([edge.u, edge.v].into_iter().filter(|v| x.contains_vertex(*v)));
        }
    }
    out
}

/// Shortest path from any source to any target avoiding `blocked`; sources
/// and neighbours are explored in ascending order.
fn multi_bfs(g: &Graph, sources: &BTreeSet<VertexId>, targets: &BTreeSet<VertexId>, blocked: &HashSet<VertexId>) -> Option<Vec<VertexId>> {
    let mut prev: HashMap<VertexId, VertexId> = HashMap::new();
    let mut queue: VecDeque<VertexId> = VecDeque::new();
    for &s in sources {
        if g.contains_vertex(s) && !blocked.contains(&s) {
            prev.insert(s, s);
            queue.push_back(s);
        }
    }
    while let Some(a) = queue.pop_front() {
        if targets.contains(&a) {
            let mut path = vec![a];
            let mut cur = a;
            while prev[&cur] != cur {
                cur = prev[&cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        let mut next: Vec<VertexId> = g.neighbors(a).filter(|w| !blocked.contains(w)).collect();
        next.sort_unstable();
        next.dedup();
        for w in next {
            prev.entry(w).or_insert_with(|| {
                queue.push_back(w);
                a
            });
        }
    }
    None
}

fn missing(block: usize, what: &'static str) -> DecompError {
    DecompError::MissingPath { block, what }
}

/// Computes connectors top-down so that `P_out` paths nest along the tree
/// and a connector inherited from the parent is reused whenever it is inner
/// to the child. `E*` enters only through `g_full`, whose extra edges the
/// connector paths may use.
pub fn compute_connectors(
    g_full: &Graph,
    x: &Graph,
    decomp: &BlockDecomposition,
    _e_star: &BTreeSet<EdgeId>,
) -> Result<ConnectorInfo, DecompError> {
    let mut info = ConnectorInfo::default();
    for b in 1..decomp.len() {
        let block = &decomp.blocks[b];
        let VertexPair(u, v) = block.ends.expect("non-root block");
        let inner = block.inner();
        let parent = decomp.parent[b].expect("non-root block");
        let p_out = if parent == 0 {
            let blocked: HashSet<VertexId> = inner.iter().copied().collect();
            let banned: HashSet<EdgeId> = x.edges_between(u, v).into_iter().collect();
            x.bfs_path(u, v, &blocked, &banned).ok_or(missing(b, "outer path"))?
        } else {
            let outer = &info.blocks[&parent].p_out;
            let star_edges: Vec<EdgeId> =
                decomp.blocks[parent].edges.iter().copied().filter(|&e| {
                    let ed = x.edge(e).expect("block edge");
                    !inner.contains(&ed.u) && !inner.contains(&ed.v)
                }).collect();
            let star = x.edge_subgraph(&star_edges);
            let (pu, pv) = (outer[0], *outer.last().unwrap());
            let mut star = star;
            for w in [u, v, pu, pv] {
                star.add_vertex(w);
            }
            let paths = disjoint_paths(&star, &[(u, 1), (v, 1)], &BTreeSet::from([pu, pv]), |_| true, &HashSet::new())
                .ok_or(missing(b, "paths to the parent's ends"))?;
            let from_u = paths.iter().find(|p| p[0] == u).unwrap().clone();
            let from_v = paths.iter().find(|p| p[0] == v).unwrap().clone();
            let mut middle = outer.clone();
            if *from_u.last().unwrap() != pu {
                middle.reverse();
            }
            let mut path = from_u;
            path.extend(middle.into_iter().skip(1));
            path.extend(from_v.into_iter().rev().skip(1));
            path
        };
        let inherited = (parent != 0).then(|| &info.blocks[&parent]).filter(|c| inner.contains(&c.x));
        let (cx, cy, p0) = match inherited {
            Some(c) => (c.x, c.y, c.p0.clone()),
            None => {
                let targets: BTreeSet<VertexId> = p_out[1..p_out.len() - 1].iter().copied().collect();
                let blocked = HashSet::from([u, v]);
                let q = multi_bfs(g_full, &inner, &targets, &blocked).ok_or(missing(b, "connector path"))?;
                (q[0], *q.last().unwrap(), q)
            }
        };
        let inside = x.edge_subgraph(&block.edges);
        let fan = disjoint_paths(&inside, &[(cx, 2)], &BTreeSet::from([u, v]), |_| true, &HashSet::new())
            .ok_or(missing(b, "inner paths"))?;
        let to_u = fan.iter().find(|p| *p.last().unwrap() == u).unwrap();
        let to_v = fan.iter().find(|p| *p.last().unwrap() == v).unwrap();
        let p1_in: Vec<VertexId> = to_u.iter().rev().copied().collect();
        info.blocks.insert(b, Connector { x: cx, y: cy, p0, p1_in, p2_in: to_v.clone(), p_out });
    }
    Ok(info)
}
