//! Choosing a planar embedding of `H = G - E*` close to an optimal drawing.
//!
//! Starting from any planar embedding, each 2-connected component is
//! decomposed into blocks, the blocks that can be charged to `E*` are set
//! aside, and the remaining tunnels are flipped so that their block ends
//! become co-facial. Changes stay inside their component.

mod classify;
mod flip;
mod irregular;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

pub use classify::{classify_blocks, find_tunnels, BlockClassification, Tunnel, ANCESTOR_DEPTH};
pub use flip::flip_tunnels;
pub use irregular::{count_irregular, IrregularityReport};

use crate::decomp::{block_decomposition, compute_connectors, BlockDecomposition, ConnectorInfo, DecompError};
use crate::graph::{self, Edge, EdgeId, Graph, VertexId};
use crate::planarity::{embed, Dart, EmbeddingError, PlanarEmbedding, RotationSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbedError {
    #[error("graph is not planar")]
    NotPlanar,
    #[error("contracted skeleton of block {block} is not planar")]
    SkeletonNotPlanar { block: usize },
    #[error("no flip makes the ends of block {block} co-facial (iteration {iteration})")]
    FlipExhausted { block: usize, iteration: usize },
    #[error("rotation systems describe different graphs")]
    GraphMismatch,
    #[error(transparent)]
    Decomp(#[from] DecompError),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

/// Whether the tunnel's block ends share a face of `H_Z ∪ P_in ∪ P_out`.
pub fn tunnel_is_cofacial(
    rot: &RotationSystem,
    tunnel: &Tunnel,
    decomp: &BlockDecomposition,
    connectors: &ConnectorInfo,
) -> bool {
    let frame = flip::tunnel_frame(tunnel, decomp, connectors);
    let vs: Vec<VertexId> = tunnel.end_pairs(decomp).iter().flat_map(|p| [p.0, p.1]).collect();
    flip::cofacial(rot, &frame, &vs)
}

/// Per-component outcome of [`find_close_embedding_with_report`].
#[derive(Clone, Debug, Default)]
pub struct ComponentReport {
    pub vertices: BTreeSet<VertexId>,
    pub blocks: usize,
    pub classification: BlockClassification,
    pub tunnels: Vec<Tunnel>,
}

pub fn find_close_embedding(h: &Graph, g_full: &Graph, e_star: &BTreeSet<EdgeId>) -> Result<PlanarEmbedding, EmbedError> {
    find_close_embedding_with_report(h, g_full, e_star).map(|(emb, _)| emb)
}

pub fn find_close_embedding_with_report(
    h: &Graph,
    g_full: &Graph,
    e_star: &BTreeSet<EdgeId>,
) -> Result<(PlanarEmbedding, Vec<ComponentReport>), EmbedError> {
    let init = embed(h).ok_or(EmbedError::NotPlanar)?;
    let s1 = graph::cut_vertices(h);
    let star_edges: Vec<Edge> = e_star.iter().filter_map(|&e| g_full.edge(e).copied()).collect();
    let mut reports = Vec::new();
    let mut replaced: BTreeMap<usize, RotationSystem> = BTreeMap::new();
    let (classes, _) = graph::biconnected_edge_classes(h);
    let comp_of: BTreeMap<EdgeId, usize> = classes.iter().enumerate().flat_map(|(i, c)| c.iter().map(move |&e| (e, i))).collect();
    for (index, class) in classes.iter().enumerate() {
        let x = h.edge_subgraph(class);
        if x.vertex_count() < 3 {
            continue;
        }
        let decomp = block_decomposition(&x)?;
        let mut report = ComponentReport { vertices: x.vertices().collect(), blocks: decomp.len(), ..Default::default() };
        if decomp.len() > 1 {
            let connectors = compute_connectors(g_full, &x, &decomp, e_star)?;
            let cls = classify_blocks(&x, &decomp, &connectors, &star_edges, &s1)?;
            let tunnels = find_tunnels(&cls, &decomp);
            if !tunnels.is_empty() {
                let ids: BTreeSet<EdgeId> = x.edge_ids().collect();
                let local = PlanarEmbedding::new(init.rotation().restrict_vertices(&report.vertices).restrict_edges(&ids))?;
                let flipped = flip_tunnels(&local, &tunnels, &decomp, &connectors)?;
                if flipped.rotation() != local.rotation() {
                    replaced.insert(index, flipped.into_rotation());
                }
            }
            report.classification = cls;
            report.tunnels = tunnels;
        }
        reports.push(report);
    }
    if replaced.is_empty() {
        return Ok((init, reports));
    }
    Ok((merge(&init, &comp_of, &replaced)?, reports))
}

/// Substitutes the component rotations into `init`, keeping each component's
/// darts in the slots they occupied. If that is not planar, every component
/// is instead placed as one contiguous run around each shared vertex, which
/// always is.
fn merge(init: &PlanarEmbedding, comp_of: &BTreeMap<EdgeId, usize>, parts: &BTreeMap<usize, RotationSystem>) -> Result<PlanarEmbedding, EmbedError> {
    let mut order = init.rotation().order().clone();
    for part in parts.values() {
        for (v, darts) in part.order() {
            let r = order.get_mut(v).expect("component vertex");
            let mut new = darts.iter();
            for slot in r.iter_mut() {
                if part.edge(slot.edge).is_some() {
                    *slot = *new.next().expect("same dart set");
                }
            }
        }
    }
    let edges: Vec<Edge> = init.rotation().edges().copied().collect();
    if let Ok(emb) = PlanarEmbedding::new(RotationSystem::new(edges.iter().copied(), order.clone())?) {
        return Ok(emb);
    }
    for (&v, darts) in order.iter_mut() {
        let mut groups: Vec<(usize, Vec<Dart>)> = Vec::new();
        for &d in darts.iter() {
            let c = comp_of[&d.edge];
            match groups.iter_mut().find(|(k, _)| *k == c) {
                Some((_, ds)) => ds.push(d),
                None => groups.push((c, vec![d])),
            }
        }
        *darts = groups
            .into_iter()
            .flat_map(|(c, ds)| match parts.get(&c) {
                Some(part) => part.rotation(v).to_vec(),
                None => ds,
            })
            .collect();
    }
    Ok(PlanarEmbedding::new(RotationSystem::new(edges, order)?)?)
}
