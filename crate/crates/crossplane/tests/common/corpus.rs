//! Graph families shared by the integration tests and the acceptance corpus.

use std::collections::BTreeSet;

use crossplane::generators;
use crossplane::graph::{EdgeId, Graph, VertexId};
use rand::Rng;

pub fn edge_id(g: &Graph, a: VertexId, b: VertexId) -> EdgeId {
    g.edges_between(a, b)[0]
}

/// `K5` on the first five vertices with one pendant block of its own
/// attached at 0 and 1: vertices 5 and 6 joined to both and to each other.
pub fn core_with_pendant() -> (Graph, BTreeSet<EdgeId>) {
    let mut g = Graph::complete(5);
    for (a, b) in [(0, 5), (0, 6), (1, 5), (1, 6), (5, 6)] {
        g.add_edge(a, b).unwrap();
    }
    let star = BTreeSet::from([edge_id(&g, 2, 3)]);
    (g, star)
}

/// Rigid gadgets between levels `(a_i, b_i)` and `(a_{i+1}, b_{i+1})`
/// (`a_i a_{i+1}`, `b_i b_{i+1}`, `a_i b_{i+1}`, `b_i a_{i+1}`), capped at
/// both ends by a `K5` that holds one edge of `E*`.
pub fn gadget_chain(levels: usize) -> (Graph, BTreeSet<EdgeId>) {
    let a = |i: usize| 2 * i;
    let b = |i: usize| 2 * i + 1;
    let mut g = Graph::new();
    for i in 0..levels {
        for (x, y) in [(a(i), a(i + 1)), (b(i), b(i + 1)), (a(i), b(i + 1)), (b(i), a(i + 1))] {
            g.add_edge(x, y).unwrap();
        }
    }
    let mut star = BTreeSet::new();
    let mut next = 2 * (levels + 1);
    for level in [0, levels] {
        let cap = [a(level), b(level), next, next + 1, next + 2];
        next += 3;
        for (i, &x) in cap.iter().enumerate() {
            for &y in &cap[i + 1..] {
                g.add_edge(x, y).unwrap();
            }
        }
        star.insert(edge_id(&g, cap[2], cap[3]));
    }
    (g, star)
}

/// Simple 2-connected graph grown from a cycle by random ears.
pub fn ear_graph(seed: u64, n: usize, ears: usize) -> Graph {
    let mut rng = generators::rng(seed);
    let start = rng.gen_range(3..=n.max(3));
    let mut g = Graph::cycle(start);
    let mut next = start;
    for _ in 0..ears {
        let vs: Vec<VertexId> = g.vertices().collect();
        let a = vs[rng.gen_range(0..vs.len())];
        let b = vs[rng.gen_range(0..vs.len())];
        if a == b {
            continue;
        }
        let len = if next < n { rng.gen_range(0..=(n - next).min(3)) } else { 0 };
        if len == 0 {
            if !g.has_edge_between(a, b) {
                g.add_edge(a, b).unwrap();
            }
            continue;
        }
        let mut prev = a;
        for _ in 0..len {
            g.add_edge(prev, next).unwrap();
            prev = next;
            next += 1;
        }
        g.add_edge(prev, b).unwrap();
    }
    g
}

/// Hamiltonian cycle plus random chords: always 2-connected.
pub fn random_biconnected(seed: u64, n: usize, chords: usize) -> Graph {
    let mut rng = generators::rng(seed);
    let mut g = Graph::cycle(n);
    for _ in 0..chords {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a != b && !g.has_edge_between(a, b) {
            g.add_edge(a, b).unwrap();
        }
    }
    g
}
