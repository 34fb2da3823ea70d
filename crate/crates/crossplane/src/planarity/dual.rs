//! Dual graphs of connected planar embeddings.

use serde::{Deserialize, Serialize};

use crate::graph::EdgeId;

use super::rotation::{Dart, EmbeddingError, FaceId, PlanarEmbedding};

/// Dual edge crossing `primal`. `left` is the face of the forward dart.
/// Bridges give self-loops (`left == right`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualEdge {
    pub primal: EdgeId,
    pub left: FaceId,
    pub right: FaceId,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DualGraph {
    pub face_count: usize,
    pub edges: Vec<DualEdge>,
    /// Per face: `(neighbour face, primal edge)` in ascending primal order.
    pub adjacency: Vec<Vec<(FaceId, EdgeId)>>,
}

impl DualGraph {
    pub fn degree(&self, f: FaceId) -> usize {
        self.adjacency[f].len()
    }
}

/// One dual vertex per face and one dual edge per primal edge.
pub fn dual(emb: &PlanarEmbedding) -> Result<DualGraph, EmbeddingError> {
    if !emb.graph().is_connected() {
        return Err(EmbeddingError::Disconnected);
    }
    let face_count = emb.face_count();
    let mut edges = Vec::with_capacity(emb.rotation().edge_count());
    let mut adjacency = vec![Vec::new(); face_count];
    for e in emb.rotation().edges() {
        let left = emb.face_of(Dart::new(e.id, false));
        let right = emb.face_of(Dart::new(e.id, true));
        edges.push(DualEdge { primal: e.id, left, right });
        adjacency[left].push((right, e.id));
        adjacency[right].push((left, e.id));
    }
    Ok(DualGraph { face_count, edges, adjacency })
}
