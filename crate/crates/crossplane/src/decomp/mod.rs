//! SPQR trees, laminar block decompositions and block connectors.

pub mod blocks;
pub mod connectors;
pub mod spqr;

use thiserror::Error;

pub use blocks::{block_decomposition, Block, BlockDecomposition};
pub use connectors::{compute_connectors, connector_candidates, Connector, ConnectorInfo};
pub use spqr::{spqr, NodeKind, SpqrNode, SpqrTree, TreeEdge};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecompError {
    #[error("graph is not 2-connected with at least three vertices")]
    NotBiconnected,
    #[error("block {block}: no {what} exists")]
    MissingPath { block: usize, what: &'static str },
}
