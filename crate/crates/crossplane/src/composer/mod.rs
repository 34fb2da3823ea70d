//! Drawing 2-connected graphs piece by piece.
//!
//! [`decompose_for_drawing`] peels maximal nice blocks (blocks without `E*`
//! edges), splits what is left along its laminar block family and groups
//! single-child chains, so that every piece is planar after removing either
//! one artificial edge or a small augmented planarizing set. The pieces form
//! a binary composition tree whose internal nodes glue two subtrees along a
//! shared artificial edge.
//!
//! Weights flow top-down: original edges weigh one, and the edge shared at a
//! merge weighs the smallest weighted degree of its ends on either side
//! without it. Merging drags the end attaining that minimum along the shared
//! edge's curve, which keeps the weighted crossing cost from growing.

mod merge;
mod pieces;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use pieces::{decompose_for_drawing, BlockReason, Piece, PieceKind, PieceSet, Simplified, TreeNode};

use crate::drawing::{Drawing, DrawingError};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::inserter::{insert_all, InsertError};
use crate::planarity::embed;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecomposeError {
    #[error("edge {0} of the planarizing set is not in the graph")]
    UnknownEdge(EdgeId),
    #[error("graph has parallel edges")]
    NotSimple,
    #[error("graph is not 2-connected with at least three vertices")]
    NotBiconnected,
    #[error("graph minus the planarizing set is not planar")]
    NonPlanarRemainder,
    #[error("inconsistent decomposition: {0}")]
    Internal(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComposeError {
    #[error("no drawing for piece {0}")]
    MissingDrawing(usize),
    #[error("drawing of piece {piece} does not draw its simplified graph")]
    InvalidDrawing { piece: usize },
    #[error("piece {0} minus its planarizing edges is not planar")]
    NonPlanarPiece(usize),
    #[error("edge {0} has no weight")]
    MissingWeight(EdgeId),
    #[error(transparent)]
    Drawing(#[from] DrawingError),
    #[error(transparent)]
    Insert(#[from] InsertError),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightAssignment {
    pub d_max: u64,
    /// One weight per edge id; an edge weighs the same in every graph of the
    /// tree that contains it.
    pub weights: BTreeMap<EdgeId, u64>,
}

impl WeightAssignment {
    pub fn weight(&self, e: EdgeId) -> Option<u64> {
        self.weights.get(&e).copied()
    }

    /// Weighted degree of `x` in `g`, leaving out `skip`.
    pub fn weighted_degree(&self, g: &Graph, x: VertexId, skip: Option<EdgeId>) -> u64 {
        g.incident(x).iter().filter(|&&e| Some(e) != skip).map(|e| self.weights.get(e).copied().unwrap_or(0)).sum()
    }

    /// Weights of a simplified piece: a representative carries its whole class.
    pub fn for_simplified(&self, simple: &Simplified) -> WeightAssignment {
        let mut weights: BTreeMap<EdgeId, u64> = simple.graph.edge_ids().filter_map(|e| Some((e, self.weight(e)?))).collect();
        for (rep, copies) in &simple.copies {
            let extra: u64 = copies.iter().filter_map(|c| self.weight(*c)).sum();
            *weights.entry(*rep).or_default() += extra;
        }
        WeightAssignment { d_max: self.d_max, weights }
    }

    /// Largest weighted degree over every graph of the composition tree.
    pub fn max_weighted_degree(&self, ps: &PieceSet) -> u64 {
        (0..ps.tree.len())
            .map(|node| {
                let g = ps.node_graph(node);
                g.vertices().map(|x| self.weighted_degree(&g, x, None)).max().unwrap_or(0)
            })
            .max()
            .unwrap_or(0)
    }
}

/// Endpoint whose bundle is dragged at a merge, as `(child side, vertex,
/// weighted degree)`. The minimum over both sides and both ends; ties go to
/// the left side, then to the edge's first end.
fn lightest_end(w: &WeightAssignment, sides: [&Graph; 2], edge: EdgeId) -> (usize, VertexId, u64) {
    let e = *sides[0].edge(edge).expect("shared edge");
    let mut best = (0, e.u, u64::MAX);
    for (side, g) in sides.iter().enumerate() {
        for x in [e.u, e.v] {
            let d = w.weighted_degree(g, x, Some(edge));
            if d < best.2 {
                best = (side, x, d);
            }
        }
    }
    best
}

/// Assigns weights top-down along the composition tree.
pub fn assign_weights(ps: &PieceSet, d_max: u64) -> WeightAssignment {
    let mut w = WeightAssignment { d_max, weights: ps.graph.edge_ids().map(|e| (e, 1)).collect() };
    let mut stack = vec![ps.root];
    while let Some(node) = stack.pop() {
        if let TreeNode::Merge { edge, children } = ps.tree[node] {
            let sides = [ps.node_graph(children[0]), ps.node_graph(children[1])];
            let (_, _, weight) = lightest_end(&w, [&sides[0], &sides[1]], edge);
            w.weights.insert(edge, weight);
            stack.extend(children);
        }
    }
    w
}

/// Sum over crossings of the product of the two crossing edges' weights.
pub fn weighted_cr(d: &Drawing, w: &WeightAssignment) -> Result<u64, ComposeError> {
    d.crossings
        .values()
        .map(|c| Ok(w.weight(c.a).ok_or(ComposeError::MissingWeight(c.a))? * w.weight(c.b).ok_or(ComposeError::MissingWeight(c.b))?))
        .sum()
}

/// One merge of the composition, with the weighted costs it relates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MergeLog {
    pub node: usize,
    pub edge: EdgeId,
    /// The end dragged along the shared edge and the child it came from.
    pub moved_vertex: VertexId,
    pub moved_side: usize,
    pub weight: u64,
    pub left_cost: u64,
    pub right_cost: u64,
    pub cost: u64,
}

#[derive(Clone, Debug)]
pub struct Composition {
    pub drawing: Drawing,
    /// Weighted cost of each piece drawing after parallel copies are restored.
    pub piece_costs: Vec<u64>,
    pub merges: Vec<MergeLog>,
}

/// Draws a piece (simplified) by embedding it without its planarizing edges
/// and inserting those one at a time into the fixed embedding.
pub fn draw_by_insertion(ps: &PieceSet, piece: usize) -> Result<Drawing, ComposeError> {
    let simple = ps.pieces[piece].simplified();
    let rest = simple.graph.without_edges(&simple.planarizing);
    let emb = embed(&rest).ok_or(ComposeError::NonPlanarPiece(piece))?;
    let extra: Vec<_> = simple.planarizing.iter().map(|e| *simple.graph.edge(*e).expect("piece edge")).collect();
    Ok(insert_all(&emb, &extra)?.drawing)
}

fn draws_graph(d: &Drawing, g: &Graph) -> bool {
    d.graph.vertices().eq(g.vertices()) && d.graph.edges().map(|e| (e.id, e.u, e.v)).eq(g.edges().map(|e| (e.id, e.u, e.v)))
}

/// Composes drawings of the simplified pieces into a drawing of the whole
/// graph, merging bottom-up in post-order. Every merge checks that the
/// weighted cost does not exceed the sum of its children's costs.
pub fn compose(ps: &PieceSet, w: &WeightAssignment, drawings: &BTreeMap<usize, Drawing>) -> Result<Composition, ComposeError> {
    let mut done: BTreeMap<usize, (Drawing, Graph, u64)> = BTreeMap::new();
    let mut piece_costs = vec![0; ps.pieces.len()];
    let mut merges = Vec::new();
    for node in ps.post_order() {
        let entry = match ps.tree[node] {
            TreeNode::Leaf(p) => {
                let piece = &ps.pieces[p];
                let simple = piece.simplified();
                let d = drawings.get(&p).ok_or(ComposeError::MissingDrawing(p))?;
                if !draws_graph(d, &simple.graph) {
                    return Err(ComposeError::InvalidDrawing { piece: p });
                }
                let full = merge::expand(d, piece, &simple)?;
                let cost = weighted_cr(&full, w)?;
                debug_assert_eq!(Some(cost), weighted_cr(d, &w.for_simplified(&simple)).ok());
                piece_costs[p] = cost;
                (full, piece.graph.clone(), cost)
            }
            TreeNode::Merge { edge, children } => {
                let (d0, g0, c0) = done.remove(&children[0]).expect("post-order");
                let (d1, g1, c1) = done.remove(&children[1]).expect("post-order");
                let (side, x, weight) = lightest_end(w, [&g0, &g1], edge);
                let mut g = g0.clone();
                for v in g1.vertices() {
                    g.add_vertex(v);
                }
                for e in g1.edges().filter(|e| e.id != edge) {
                    g.insert_edge(*e).expect("subtrees share only the merged edge");
                }
                g.remove_edge(edge);
                let (keep, moved) = if side == 0 { (&d1, &d0) } else { (&d0, &d1) };
                let d = merge::merge(keep, moved, edge, x, &g)?;
                let cost = weighted_cr(&d, w)?;
                assert!(cost <= c0 + c1, "merge along {edge} raised the weighted cost from {} to {cost}", c0 + c1);
                log::debug!("merged along {edge}: moved {x}, weight {weight}, cost {c0} + {c1} -> {cost}");
                merges.push(MergeLog { node, edge, moved_vertex: x, moved_side: side, weight, left_cost: c0, right_cost: c1, cost });
                (d, g, cost)
            }
        };
        done.insert(node, entry);
    }
    let (drawing, _, _) = done.remove(&ps.root).expect("root is last");
    Ok(Composition { drawing, piece_costs, merges })
}

/// The augmented planarizing set: union of the block pieces' planarizing sets.
pub fn augmented_star(ps: &PieceSet) -> BTreeSet<EdgeId> {
    ps.pieces.iter().filter(|p| matches!(p.kind, PieceKind::Block(_))).flat_map(|p| p.planarizing.iter().copied()).collect()
}
