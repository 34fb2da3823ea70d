//! Planarity testing, combinatorial embeddings and dual graphs.
//!
//! Every `Planar` answer carries an embedding that passed the Euler check, so
//! no unverified planar answer leaves this module.

mod dmp;
mod dual;
mod rotation;

pub use dual::{dual, DualEdge, DualGraph};
pub use rotation::{Dart, EmbeddingError, FaceId, PlanarEmbedding, RotationSystem};
pub(crate) use rotation::UnionFind;


use serde::{Deserialize, Serialize};

use crate::graph::{EdgeId, Graph};

/// Why a graph was rejected: the edges of a 2-connected block admitting no
/// planar embedding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonPlanarVerdict {
    pub block_edges: Vec<EdgeId>,
}

#[derive(Clone, Debug)]
pub enum Planarity {
    Planar(PlanarEmbedding),
    NonPlanar(NonPlanarVerdict),
}

impl Planarity {
    pub fn is_planar(&self) -> bool {
        matches!(self, Planarity::Planar(_))
    }

    pub fn embedding(self) -> Option<PlanarEmbedding> {
        match self {
            Planarity::Planar(emb) => Some(emb),
            Planarity::NonPlanar(_) => None,
        }
    }
}

/// Tests planarity and, for planar input, returns a certified embedding.
pub fn test_planarity(g: &Graph) -> Planarity {
    match dmp::embed_graph(g) {
        Ok(order) => {
            let rotation = RotationSystem::new(g.edges().copied(), order).expect("block rotations cover every dart");
            let emb = PlanarEmbedding::new(rotation).expect("path addition yields a genus-0 rotation");
            Planarity::Planar(emb)
        }
        Err(block_edges) => Planarity::NonPlanar(NonPlanarVerdict { block_edges }),
    }
}

pub fn is_planar(g: &Graph) -> bool {
    dmp::embed_graph(g).is_ok()
}

pub fn embed(g: &Graph) -> Option<PlanarEmbedding> {
    test_planarity(g).embedding()
}
