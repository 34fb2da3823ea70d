//! Ladder instances whose block trees contain tunnels, with a face-walk
//! oracle for co-faciality that does not use the library's face code.

use std::collections::{BTreeMap, BTreeSet};

use crossplane::decomp::{block_decomposition, compute_connectors, BlockDecomposition, ConnectorInfo};
use crossplane::embedder::{classify_blocks, BlockClassification, Tunnel};
use crossplane::generators;
use crossplane::graph::{self, Edge, EdgeId, Graph, VertexId, VertexPair};
use crossplane::planarity::{embed, Dart, PlanarEmbedding, RotationSystem};
use rand::seq::SliceRandom;
use rand::Rng;

/// Ladder with rungs `(i, len + i)`, capped on the left by two vertices
/// `k`, `z` forming a K4 with the first rung and on the right by a vertex
/// `r` on the last rung. `E*` is the edge `k - r` plus the given chords.
pub struct Ladder {
    pub g: Graph,
    pub e_star: BTreeSet<EdgeId>,
    pub k: VertexId,
    pub r: VertexId,
}

pub fn ladder(len: usize, chords: &[(usize, usize)]) -> Ladder {
    let mut g = Graph::new();
    let (t, b) = (|i: usize| i, |i: usize| len + i);
    for i in 0..len {
        g.add_edge(t(i), b(i)).unwrap();
        if i + 1 < len {
            g.add_edge(t(i), t(i + 1)).unwrap();
            g.add_edge(b(i), b(i + 1)).unwrap();
        }
    }
    let (k, z, r) = (2 * len, 2 * len + 1, 2 * len + 2);
    for (a, c) in [(k, t(0)), (k, b(0)), (z, t(0)), (z, b(0)), (k, z), (r, t(len - 1)), (r, b(len - 1))] {
        g.add_edge(a, c).unwrap();
    }
    let mut e_star = BTreeSet::from([g.add_edge(k, r).unwrap()]);
    for &(i, j) in chords {
        e_star.insert(g.add_edge(t(i), b(j)).unwrap());
    }
    Ladder { g, e_star, k, r }
}

pub struct Instance {
    pub x: Graph,
    pub decomp: BlockDecomposition,
    pub connectors: ConnectorInfo,
    pub cls: BlockClassification,
    pub star: Vec<Edge>,
    pub s1: BTreeSet<VertexId>,
}

pub fn instance(g: &Graph, e_star: &BTreeSet<EdgeId>, x: Graph) -> Instance {
    let h = g.without_edges(e_star);
    let s1 = graph::cut_vertices(&h);
    let star: Vec<Edge> = e_star.iter().map(|&e| *g.edge(e).unwrap()).collect();
    let decomp = block_decomposition(&x).unwrap();
    let connectors = compute_connectors(g, &x, &decomp, e_star).unwrap();
    let cls = classify_blocks(&x, &decomp, &connectors, &star, &s1).unwrap();
    Instance { x, decomp, connectors, cls, star, s1 }
}

pub fn ladder_instance(len: usize) -> (Ladder, Instance) {
    let l = ladder(len, &[]);
    let x = l.g.without_edges(&l.e_star);
    let inst = instance(&l.g, &l.e_star, x);
    (l, inst)
}

/// Vertex sets of the faces of `order` restricted to `keep`, by a direct
/// walk: after arriving at a vertex along `d`, leave along the dart that
/// follows `twin(d)` in the rotation there.
pub fn face_vertex_sets(rot: &RotationSystem, keep: &BTreeSet<EdgeId>) -> Vec<BTreeSet<VertexId>> {
    let order: BTreeMap<VertexId, Vec<Dart>> = rot.order().iter().map(|(&v, ds)| (v, ds.iter().copied().filter(|d| keep.contains(&d.edge)).collect())).collect();
    let tail = |d: Dart| {
        let e = rot.edge(d.edge).unwrap();
        if d.rev { e.v } else { e.u }
    };
    let mut seen = BTreeSet::new();
    let mut faces = Vec::new();
    for ds in order.values() {
        for &start in ds {
            if !seen.insert(start) {
                continue;
            }
            let mut vs = BTreeSet::from([tail(start)]);
            let mut d = start;
            loop {
                let tw = Dart { edge: d.edge, rev: !d.rev };
                let at = &order[&tail(tw)];
                let i = at.iter().position(|&x| x == tw).unwrap();
                d = at[(i + 1) % at.len()];
                if d == start {
                    break;
                }
                seen.insert(d);
                vs.insert(tail(d));
            }
            faces.push(vs);
        }
    }
    faces
}

pub fn frame_edges(inst: &Instance, tunnel: &Tunnel) -> BTreeSet<EdgeId> {
    let top = &inst.decomp.blocks[tunnel.blocks[0]];
    let child_inner = inst.decomp.blocks[tunnel.child].inner();
    let mut keep: BTreeSet<EdgeId> = top.edges.iter().copied().filter(|&e| {
        let ed = inst.x.edge(e).unwrap();
        !child_inner.contains(&ed.u) && !child_inner.contains(&ed.v)
    }).collect();
    let out = &inst.connectors.blocks[&tunnel.blocks[0]];
    let inn = &inst.connectors.blocks[&tunnel.child];
    for p in [&out.p_out, &inn.p1_in, &inn.p2_in] {
        for w in p.windows(2) {
            keep.insert(inst.x.edges_between(w[0], w[1])[0]);
        }
    }
    keep
}

pub fn oracle_cofacial(rot: &RotationSystem, inst: &Instance, tunnel: &Tunnel) -> bool {
    let ends: BTreeSet<VertexId> = tunnel.blocks.iter().chain([&tunnel.child]).flat_map(|&b| {
        let p = inst.decomp.blocks[b].ends.unwrap();
        [p.0, p.1]
    }).collect();
    face_vertex_sets(rot, &frame_edges(inst, tunnel)).iter().any(|f| ends.is_subset(f))
}

/// Mirrors block `b` of the component: used only to produce varied inputs.
pub fn mirrored_block(rot: &RotationSystem, d: &BlockDecomposition, b: usize) -> Option<PlanarEmbedding> {
    let block = &d.blocks[b];
    let inner = block.inner();
    let VertexPair(u, v) = block.ends.unwrap();
    let mut order = rot.order().clone();
    for w in &inner {
        order.get_mut(w).unwrap().reverse();
    }
    for w in [u, v] {
        let r = order.get_mut(&w).unwrap();
        let idx: Vec<usize> = (0..r.len()).filter(|&i| block.edges.contains(&r[i].edge)).collect();
        let vals: Vec<Dart> = idx.iter().rev().map(|&i| r[i]).collect();
        for (i, val) in idx.into_iter().zip(vals) {
            r[i] = val;
        }
    }
    PlanarEmbedding::new(RotationSystem::new(rot.edges().copied(), order).ok()?).ok()
}

pub fn scrambled(inst: &Instance, seed: u64) -> PlanarEmbedding {
    let mut rng = generators::rng(seed);
    let mut emb = embed(&inst.x).unwrap();
    let mut blocks: Vec<usize> = (1..inst.decomp.len()).collect();
    blocks.shuffle(&mut rng);
    for b in blocks.into_iter().take(rng.gen_range(0..inst.decomp.len())) {
        if let Some(next) = mirrored_block(emb.rotation(), &inst.decomp, b) {
            emb = next;
        }
    }
    emb
}
