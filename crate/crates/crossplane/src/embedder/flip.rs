//! Tunnel flipping.
//!
//! Within a tunnel `B_1 ⊃ … ⊃ B_κ` with child `B'`, the embedding is
//! adjusted one block at a time until the ends of `B_1, …, B_κ, B'` all lie
//! on one face of the subgraph `H_Z ∪ P_in ∪ P_out`, where `H_Z` is `B_1`
//! minus the inner vertices of `B'`. Iteration `i` tries, in order: nothing,
//! mirroring `B_i`, moving the edges joining the ends of `B_i` to the other
//! side of `B_i`, and both. The first certified planar candidate that makes
//! the ends of `B_1, …, B_{i+1}` co-facial is kept.

use std::collections::{BTreeMap, BTreeSet};

use super::classify::Tunnel;
use super::EmbedError;
use crate::decomp::{BlockDecomposition, ConnectorInfo};
use crate::graph::{EdgeId, VertexId, VertexPair};
use crate::planarity::{Dart, PlanarEmbedding, RotationSystem};

type Order = BTreeMap<VertexId, Vec<Dart>>;

fn certify(rot: &RotationSystem, order: Order) -> Option<PlanarEmbedding> {
    let rs = RotationSystem::new(rot.edges().copied(), order).ok()?;
    PlanarEmbedding::new(rs).ok()
}

/// Mirrors the block: rotations of inner vertices are reversed, and at each
/// end the block's darts are reversed in place.
fn mirror_block(order: &mut Order, inner: &BTreeSet<VertexId>, ends: VertexPair, edges: &BTreeSet<EdgeId>) {
    for v in inner {
        if let Some(r) = order.get_mut(v) {
            r.reverse();
        }
    }
    for w in [ends.0, ends.1] {
        let r = order.get_mut(&w).expect("block end");
        let slots: Vec<usize> = (0..r.len()).filter(|&i| edges.contains(&r[i].edge)).collect();
        let darts: Vec<Dart> = slots.iter().map(|&i| r[i]).collect();
        for (&i, d) in slots.iter().zip(darts.into_iter().rev()) {
            r[i] = d;
        }
    }
}

/// Moves the runs of end-joining darts adjacent to the block's interval to
/// the opposite side. `None` if the block is not contiguous at an end or no
/// such dart is adjacent to it.
fn swap_end_edges(order: &Order, ends: VertexPair, edges: &BTreeSet<EdgeId>, joining: &BTreeSet<EdgeId>) -> Option<Order> {
    let mut out = order.clone();
    let mut changed = false;
    for w in [ends.0, ends.1] {
        let r = &order[&w];
        let n = r.len();
        let in_b = |i: usize| edges.contains(&r[i % n].edge);
        let start = (0..n).find(|&i| in_b(i) && !in_b(i + n - 1))?;
        let seq: Vec<Dart> = (0..n).map(|k| r[(start + k) % n]).collect();
        let k = seq.iter().take_while(|d| edges.contains(&d.edge)).count();
        if seq[k..].iter().any(|d| edges.contains(&d.edge)) {
            return None;
        }
        let rest = &seq[k..];
        let post = rest.iter().take_while(|d| joining.contains(&d.edge)).count();
        if post == rest.len() {
            continue;
        }
        let pre = rest.iter().rev().take_while(|d| joining.contains(&d.edge)).count();
        if pre + post == 0 {
            continue;
        }
        // cyclically: middle, pre, block, post  becomes  middle, post, block, pre
        let mut new = Vec::with_capacity(n);
        new.extend_from_slice(&rest[post..rest.len() - pre]);
        new.extend_from_slice(&rest[..post]);
        new.extend_from_slice(&seq[..k]);
        new.extend_from_slice(&rest[rest.len() - pre..]);
        out.insert(w, new);
        changed = true;
    }
    changed.then_some(out)
}

/// Edges of `H_Z ∪ P_in ∪ P_out` for a tunnel.
pub(crate) fn tunnel_frame(tunnel: &Tunnel, decomp: &BlockDecomposition, connectors: &ConnectorInfo) -> BTreeSet<EdgeId> {
    let g = &decomp.graph;
    let top = &decomp.blocks[tunnel.blocks[0]];
    let child = &decomp.blocks[tunnel.child];
    let cut = child.inner();
    let mut keep: BTreeSet<EdgeId> = top
        .edges
        .iter()
        .copied()
        .filter(|&e| {
            let ed = g.edge(e).expect("block edge");
            !cut.contains(&ed.u) && !cut.contains(&ed.v)
        })
        .collect();
    let c_out = &connectors.blocks[&tunnel.blocks[0]];
    let c_in = &connectors.blocks[&tunnel.child];
    for path in [&c_out.p_out, &c_in.p1_in, &c_in.p2_in] {
        for w in path.windows(2) {
            keep.insert(g.edges_between(w[0], w[1])[0]);
        }
    }
    keep
}

/// Whether `vs` share a face of `rot` restricted to `frame`.
pub(crate) fn cofacial(rot: &RotationSystem, frame: &BTreeSet<EdgeId>, vs: &[VertexId]) -> bool {
    let sub = rot.restrict_edges(frame);
    let emb = PlanarEmbedding::new(sub).expect("restriction of a planar embedding");
    emb.common_face(vs).is_some()
}

/// Applies the flipping procedure to every tunnel in turn. `psi` embeds the
/// component the decomposition was built for.
pub fn flip_tunnels(
    psi: &PlanarEmbedding,
    tunnels: &[Tunnel],
    decomp: &BlockDecomposition,
    connectors: &ConnectorInfo,
) -> Result<PlanarEmbedding, EmbedError> {
    let mut cur = psi.clone();
    for tunnel in tunnels {
        let frame = tunnel_frame(tunnel, decomp, connectors);
        let pairs = tunnel.end_pairs(decomp);
        for i in 0..tunnel.blocks.len() {
            let targets: Vec<VertexId> = pairs[..=i + 1].iter().flat_map(|p| [p.0, p.1]).collect();
            if cofacial(cur.rotation(), &frame, &targets) {
                continue;
            }
            let b = tunnel.blocks[i];
            let block = &decomp.blocks[b];
            let ends = pairs[i];
            let inner = block.inner();
            let joining: BTreeSet<EdgeId> = decomp.graph.edges_between(ends.0, ends.1).into_iter().collect();
            let base = cur.rotation().order().clone();
            let mut flipped = base.clone();
            mirror_block(&mut flipped, &inner, ends, &block.edges);
            let mut candidates = vec![flipped];
            if let Some(swapped) = swap_end_edges(&base, ends, &block.edges, &joining) {
                let mut both = swapped.clone();
                mirror_block(&mut both, &inner, ends, &block.edges);
                candidates.push(swapped);
                candidates.push(both);
            }
            let next = candidates
                .into_iter()
                .filter_map(|order| certify(cur.rotation(), order))
                .find(|emb| cofacial(emb.rotation(), &frame, &targets));
            cur = next.ok_or(EmbedError::FlipExhausted { block: b, iteration: i + 1 })?;
        }
    }
    Ok(cur)
}
