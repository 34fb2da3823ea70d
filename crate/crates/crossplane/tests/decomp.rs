mod common;

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crossplane::decomp::{block_decomposition, compute_connectors, connector_candidates, spqr, BlockDecomposition, NodeKind, SpqrTree};
use crossplane::generators;
use crossplane::graph::{self, Graph, VertexId, VertexPair};
use common::corpus::ear_graph;
use proptest::prelude::*;
use rand::Rng;

fn structured() -> Vec<Graph> {
    let mut out = vec![Graph::cycle(3), Graph::cycle(6), Graph::cycle(8), Graph::complete(4), Graph::complete(5), Graph::wheel(6), Graph::complete_bipartite(2, 4), Graph::complete_bipartite(3, 3), Graph::grid(2, 4), Graph::hypercube(3)];
    out.push(Graph::from_pairs(&[(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)]).unwrap());
    // two K4s glued along an edge, and along a vertex pair
    out.push(Graph::from_pairs(&[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (0, 5), (1, 4), (1, 5), (4, 5)]).unwrap());
    out.push(Graph::from_pairs(&[(0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (0, 5), (1, 4), (1, 5), (4, 5)]).unwrap());
    out
}

fn check_tree(g: &Graph, t: &SpqrTree) {
    for node in &t.nodes {
        let sk = &node.skeleton;
        match node.kind {
            NodeKind::S => {
                assert!(sk.vertex_count() >= 3 && sk.edge_count() == sk.vertex_count());
                assert!(sk.vertices().all(|v| sk.degree(v) == 2) && sk.is_connected());
            }
            NodeKind::P => {
                assert_eq!(sk.vertex_count(), 2);
                assert!(sk.edge_count() >= 3);
                assert!(node.actual_edges().count() <= 1);
            }
            NodeKind::R => {
                assert!(sk.vertex_count() > 3);
                assert!(sk.is_simple());
                assert_eq!(common::brute_connectivity(sk), 3);
            }
        }
    }
    for te in &t.edges {
        assert!(t.nodes[te.a].virtual_edges.contains(&te.virtual_edge));
        assert!(t.nodes[te.b].virtual_edges.contains(&te.virtual_edge));
        let (ka, kb) = (t.nodes[te.a].kind, t.nodes[te.b].kind);
        assert!(ka != kb || ka == NodeKind::R, "adjacent {ka:?} nodes");
    }
    assert_eq!(t.edges.len() + 1, t.nodes.len(), "tree shape");
    let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
    for node in &t.nodes {
        for e in node.actual_edges() {
            assert_eq!(g.edge(e.id).map(|x| x.pair()), Some(e.pair()));
            *seen.entry(e.id).or_default() += 1;
        }
    }
    assert_eq!(seen.keys().copied().collect::<Vec<_>>(), g.edge_ids().collect::<Vec<_>>());
    assert!(seen.values().all(|&c| c == 1));
}

fn check_blocks(g: &Graph, d: &BlockDecomposition) {
    let all: BTreeSet<VertexId> = g.vertices().collect();
    assert_eq!(d.blocks[0].vertices, all);
    assert!(d.is_laminar());
    for (i, b) in d.blocks.iter().enumerate().skip(1) {
        let VertexPair(u, v) = b.ends.unwrap();
        assert!(b.vertices.len() >= 3 && b.vertices.len() < all.len(), "block {i} size");
        assert!(b.vertices.contains(&u) && b.vertices.contains(&v));
        let inner = b.inner();
        for e in g.edges() {
            let (iu, iv) = (inner.contains(&e.u), inner.contains(&e.v));
            assert!(!(iu && !b.vertices.contains(&e.v)) && !(iv && !b.vertices.contains(&e.u)), "block {i} leaks");
        }
        assert!(!b.edges.iter().any(|&e| g.edge(e).unwrap().pair() == VertexPair::new(u, v)));
        if d.children[i].len() == 1 {
            assert_ne!(b.ends, d.blocks[d.children[i][0]].ends, "single child of {i} shares its ends");
        }
    }
    // inner vertex sets are nested or disjoint along the tree
    for i in 1..d.len() {
        for j in i + 1..d.len() {
            let (a, b) = (d.blocks[i].inner(), d.blocks[j].inner());
            assert!(a.is_disjoint(&b) || a.is_subset(&b) || b.is_subset(&a));
        }
    }
    for (i, t) in d.tilde_prime.iter().enumerate() {
        assert_eq!(common::brute_connectivity(t), 3, "tilde_prime of block {i}: {t:?}");
    }
    let ends = d.endpoints();
    for pair in common::brute_two_separators(g) {
        for w in [pair.0, pair.1] {
            let covered = ends.contains(&w) || (g.degree(w) == 2 && g.neighbors(w).any(|x| ends.contains(&x)));
            assert!(covered, "separator vertex {w} not covered");
        }
    }
}

#[test]
fn structured_graphs_decompose_correctly() {
    for g in structured() {
        let t = spqr(&g).unwrap();
        check_tree(&g, &t);
        assert_eq!(t.two_separators(), common::brute_two_separators(&g), "{g:?}");
        check_blocks(&g, &block_decomposition(&g).unwrap());
    }
}

#[test]
fn three_connected_graph_is_its_own_decomposition() {
    for g in [Graph::complete(4), Graph::complete(5), Graph::petersen(), Graph::wheel(7)] {
        let d = block_decomposition(&g).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d.tilde[0].edge_count(), g.edge_count());
    }
}

#[test]
fn six_cycle_has_two_peeled_blocks_and_a_closing_block() {
    let g = Graph::cycle(6);
    let d = block_decomposition(&g).unwrap();
    assert_eq!(d.len(), 4);
    let ends: BTreeSet<VertexPair> = d.blocks[1..].iter().map(|b| b.ends.unwrap()).collect();
    assert_eq!(ends, BTreeSet::from([VertexPair::new(0, 3), VertexPair::new(1, 3), VertexPair::new(4, 0)]));
    check_blocks(&g, &d);
}

#[test]
fn subdivided_k4_covers_its_separator() {
    let mut g = Graph::complete(4);
    let e = g.edges_between(0, 1)[0];
    g.remove_edge(e);
    g.add_edge(0, 4).unwrap();
    g.add_edge(4, 1).unwrap();
    assert_eq!(common::brute_two_separators(&g), BTreeSet::from([VertexPair::new(0, 1)]));
    let d = block_decomposition(&g).unwrap();
    assert!(d.endpoints().is_superset(&BTreeSet::from([0, 1])));
    check_blocks(&g, &d);
}

#[test]
fn not_biconnected_is_rejected() {
    assert!(block_decomposition(&Graph::path(5)).is_err());
    let bowtie = Graph::from_pairs(&[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).unwrap();
    assert!(spqr(&bowtie).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn tree_separators_match_enumeration(seed in any::<u64>(), n in 3usize..=8, ears in 0usize..8) {
        let g = ear_graph(seed, n, ears);
        let t = spqr(&g).unwrap();
        check_tree(&g, &t);
        prop_assert_eq!(t.two_separators(), common::brute_two_separators(&g));
        prop_assert_eq!(t.two_separators(), graph::two_separators(&g));
    }

    #[test]
    fn block_decompositions_satisfy_their_invariants(seed in any::<u64>(), n in 3usize..=11, ears in 0usize..10) {
        let g = ear_graph(seed, n, ears);
        check_blocks(&g, &block_decomposition(&g).unwrap());
    }
}

/// 3-connected host, a random `E*`, and its 2-connected pieces.
fn connector_instances(seed: u64, n: usize, k: usize) -> Vec<(Graph, BTreeSet<usize>, Graph)> {
    let mut rng = generators::rng(seed);
    let g = generators::stacked_triangulation(n, &mut rng);
    let ids: Vec<usize> = g.edge_ids().collect();
    let e_star: BTreeSet<usize> = (0..k).map(|_| ids[rng.gen_range(0..ids.len())]).collect();
    let h = g.without_edges(&e_star);
    graph::biconnected_components(&h)
        .into_iter()
        .filter(|c| c.graph.vertex_count() >= 3)
        .map(|c| (g.clone(), e_star.clone(), c.graph))
        .collect()
}

fn assert_internally_disjoint(paths: &[&Vec<VertexId>], allowed: &BTreeSet<VertexId>) {
    let mut seen = HashSet::new();
    for p in paths {
        for &w in p.iter() {
            if !allowed.contains(&w) {
                assert!(seen.insert(w), "vertex {w} shared between paths");
            }
        }
        let distinct: HashSet<_> = p.iter().collect();
        assert_eq!(distinct.len(), p.len(), "path repeats a vertex");
    }
}

fn is_walk(g: &Graph, p: &[VertexId]) -> bool {
    p.windows(2).all(|w| g.has_edge_between(w[0], w[1]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn connectors_satisfy_their_invariants(seed in any::<u64>(), n in 6usize..=16, k in 1usize..6) {
        for (g, e_star, x) in connector_instances(seed, n, k) {
            let d = block_decomposition(&x).unwrap();
            let info = compute_connectors(&g, &x, &d, &e_star).unwrap();
            let s_x = connector_candidates(&g, &x, &e_star);
            prop_assert_eq!(info.blocks.len(), d.len() - 1);
            for (&b, c) in &info.blocks {
                let block = &d.blocks[b];
                let VertexPair(u, v) = block.ends.unwrap();
                prop_assert!(block.is_inner(c.x));
                prop_assert!(s_x.contains(&c.x), "x_B outside S_X");
                prop_assert_eq!((c.p_out[0], *c.p_out.last().unwrap()), (u, v));
                prop_assert!(c.p_out[1..c.p_out.len() - 1].contains(&c.y));
                prop_assert!(c.p_out.iter().all(|w| !block.is_inner(*w)));
                prop_assert!(is_walk(&x, &c.p_out) && is_walk(&g, &c.p0));
                prop_assert!(is_walk(&x, &c.p1_in) && is_walk(&x, &c.p2_in));
                prop_assert!(c.p1_in.iter().chain(&c.p2_in).all(|w| block.vertices.contains(w)));
                prop_assert_eq!((c.p1_in[0], *c.p1_in.last().unwrap(), c.p2_in[0], *c.p2_in.last().unwrap()), (u, c.x, c.x, v));
                prop_assert_eq!((c.p0[0], *c.p0.last().unwrap()), (c.x, c.y));
                let (o1, o2) = c.out_segments();
                assert_internally_disjoint(&[&c.p0, &c.p1_in, &c.p2_in, &o1, &o2], &BTreeSet::from([u, v, c.x, c.y]));
                if let Some(&pc) = d.parent[b].and_then(|p| info.blocks.get(&p)).as_ref() {
                    // P_out of the parent is a contiguous piece of this P_out
                    let s = c.p_out.windows(pc.p_out.len()).any(|w| w == pc.p_out.as_slice() || w.iter().rev().eq(pc.p_out.iter()));
                    prop_assert!(s, "parent P_out not nested");
                    if block.is_inner(pc.x) {
                        prop_assert_eq!(c.x, pc.x);
                        prop_assert_eq!(&c.p0, &pc.p0);
                    }
                }
            }
            // blocks sharing a connector form a connected piece of the tree
            let mut by_x: BTreeMap<VertexId, Vec<usize>> = BTreeMap::new();
            for (&b, c) in &info.blocks {
                by_x.entry(c.x).or_default().push(b);
            }
            for bs in by_x.values() {
                let set: BTreeSet<usize> = bs.iter().copied().collect();
                let tops = bs.iter().filter(|&&b| !d.parent[b].is_some_and(|p| set.contains(&p))).count();
                prop_assert_eq!(tops, 1, "connector blocks not contiguous");
            }
        }
    }
}

#[test]
fn connector_is_the_unique_e_star_endpoint() {
    // hub 0 with rim 1..=7; the spokes to even rim vertices go to E*
    let g = Graph::wheel(7);
    let hub = 0;
    let spokes: Vec<usize> = g.incident(hub).to_vec();
    let rim: BTreeSet<VertexId> = g.vertices().filter(|&v| v != hub).collect();
    let e_star: BTreeSet<usize> = spokes.iter().copied().filter(|&e| g.edge(e).unwrap().other(hub).is_multiple_of(2)).collect();
    let h = g.without_edges(&e_star);
    let x = graph::biconnected_components(&h).into_iter().map(|c| c.graph).find(|c| c.vertex_count() >= 3).unwrap();
    let d = block_decomposition(&x).unwrap();
    let info = compute_connectors(&g, &x, &d, &e_star).unwrap();
    let s_x = connector_candidates(&g, &x, &e_star);
    for (&b, c) in &info.blocks {
        let candidates: Vec<VertexId> = d.blocks[b].inner().intersection(&s_x).copied().collect();
        if candidates.len() == 1 {
            assert_eq!(c.x, candidates[0]);
        }
        assert!(rim.contains(&c.x) || c.x == hub);
    }
}
