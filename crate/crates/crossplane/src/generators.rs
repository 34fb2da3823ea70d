//! Seeded random graph families used by tests, the acceptance suite and the CLI.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, VertexId};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform simple graph on `n` vertices with `m` edges (capped at `n choose 2`).
pub fn gnm(n: usize, m: usize, rng: &mut impl Rng) -> Graph {
    let mut pairs: Vec<(VertexId, VertexId)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    pairs.shuffle(rng);
    pairs.truncate(m);
    pairs.sort_unstable();
    let mut g = Graph::with_vertices(n);
    for (a, b) in pairs {
        g.add_edge(a, b).expect("distinct endpoints");
    }
    g
}

/// Connected simple graph: a random spanning tree plus random extra edges.
pub fn connected_gnm(n: usize, m: usize, rng: &mut impl Rng) -> Graph {
    let mut g = Graph::with_vertices(n);
    let mut order: Vec<VertexId> = (0..n).collect();
    order.shuffle(rng);
    for i in 1..n {
        let j = rng.gen_range(0..i);
        g.add_edge(order[j].min(order[i]), order[j].max(order[i])).unwrap();
    }
    let mut rest: Vec<(VertexId, VertexId)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|&(a, b)| !g.has_edge_between(a, b))
        .collect();
    rest.shuffle(rng);
    for (a, b) in rest.into_iter().take(m.saturating_sub(n.saturating_sub(1))) {
        g.add_edge(a, b).unwrap();
    }
    g
}

/// Stacked triangulation on `n >= 3` vertices, which is maximal planar.
pub fn stacked_triangulation(n: usize, rng: &mut impl Rng) -> Graph {
    let mut g = Graph::cycle(3);
    let mut faces: Vec<[VertexId; 3]> = vec![[0, 1, 2], [0, 2, 1]];
    for v in 3..n {
        let i = rng.gen_range(0..faces.len());
        let [a, b, c] = faces.swap_remove(i);
        for x in [a, b, c] {
            g.add_edge(x, v).unwrap();
        }
        faces.extend([[a, b, v], [b, c, v], [c, a, v]]);
    }
    g
}

/// Random planar graph: a stacked triangulation with each edge kept with
/// probability `keep`.
pub fn random_planar(n: usize, keep: f64, rng: &mut impl Rng) -> Graph {
    let full = stacked_triangulation(n.max(3), rng);
    let mut g = Graph::with_vertices(n.max(3));
    for e in full.edges() {
        if rng.gen_bool(keep) {
            g.add_edge(e.u, e.v).unwrap();
        }
    }
    g
}

/// Random graph with maximum degree at most `d`, built by adding random
/// admissible edges until `m` edges exist or no pair is admissible.
pub fn bounded_degree(n: usize, m: usize, d: usize, rng: &mut impl Rng) -> Graph {
    let mut g = Graph::with_vertices(n);
    let mut pairs: Vec<(VertexId, VertexId)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    pairs.shuffle(rng);
    for (a, b) in pairs {
        if g.edge_count() >= m {
            break;
        }
        if g.degree(a) < d && g.degree(b) < d {
            g.add_edge(a, b).unwrap();
        }
    }
    g
}
