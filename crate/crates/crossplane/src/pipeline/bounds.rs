//! Euler-type lower bounds on the crossing number.
//!
//! A planar graph of girth `g` with `n >= 3` vertices has at most
//! `g (n - 2) / (g - 2)` edges, and every crossing can be destroyed by
//! deleting one edge. So `cr >= m - g (n - 2) / (g - 2)`. The crossing number
//! is additive over 2-connected components, so bounds of components add up.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::graph::{biconnected_components, Graph, VertexPair};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentBound {
    pub vertices: usize,
    /// Edges after merging parallel copies.
    pub edges: usize,
    /// `None` for forests.
    pub girth: Option<usize>,
    pub bound: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerBound {
    pub value: usize,
    pub components: Vec<ComponentBound>,
}

/// Length of a shortest cycle of a simple graph.
pub fn girth(g: &Graph) -> Option<usize> {
    let mut best: Option<usize> = None;
    for s in g.vertices() {
        // BFS tree from s; a non-tree edge closes a cycle of length <= d(x) + d(y) + 1
        let mut dist = HashMap::from([(s, 0usize)]);
        let mut parent_edge = HashMap::new();
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &e in g.incident(x) {
                if parent_edge.get(&x) == Some(&e) {
                    continue;
                }
                let y = g.edge(e).expect("incident edge").other(x);
                match dist.get(&y) {
                    None => {
                        dist.insert(y, dist[&x] + 1);
                        parent_edge.insert(y, e);
                        queue.push_back(y);
                    }
                    Some(&dy) => {
                        let len = dist[&x] + dy + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
    }
    best
}

/// `ceil(m - g (n - 2) / (g - 2))`, clamped at zero.
fn euler_bound(n: usize, m: usize, girth: usize) -> usize {
    if n < 3 || girth < 3 {
        return 0;
    }
    let (n, m, g) = (n as i64, m as i64, girth as i64);
    let excess = m * (g - 2) - g * (n - 2);
    if excess <= 0 {
        0
    } else {
        ((excess + g - 3) / (g - 2)) as usize
    }
}

pub fn lower_bound(g: &Graph) -> LowerBound {
    let mut out = LowerBound::default();
    for comp in biconnected_components(g) {
        let pairs: BTreeSet<VertexPair> = comp.graph.edges().map(|e| e.pair()).collect();
        if pairs.len() < 3 {
            continue;
        }
        let mut simple = Graph::new();
        for v in comp.graph.vertices() {
            simple.add_vertex(v);
        }
        for VertexPair(a, b) in &pairs {
            simple.add_edge(*a, *b).expect("distinct ends");
        }
        let girth = girth(&simple);
        let n = simple.vertex_count();
        let bound = girth.map_or(0, |gi| euler_bound(n, pairs.len(), gi));
        out.value += bound;
        out.components.push(ComponentBound { vertices: n, edges: pairs.len(), girth, bound });
    }
    out
}
