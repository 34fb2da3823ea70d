//! Irregular vertices and edges between two rotation systems of one graph.
//!
//! A vertex of degree at least three is irregular when its cyclic edge order
//! differs between the two systems even after allowing a reflection. Every
//! regular vertex of degree at least three then has an orientation: kept or
//! reversed. A path whose ends have degree at least three, whose inner
//! vertices have degree two, and whose ends are regular with different
//! orientations is irregular; its first and last edges are irregular edges.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use super::EmbedError;
use crate::graph::{EdgeId, VertexId};
use crate::planarity::RotationSystem;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrregularityReport {
    pub irregular_vertices: Vec<VertexId>,
    pub irregular_edges: Vec<EdgeId>,
}

impl IrregularityReport {
    pub fn vertex_count(&self) -> usize {
        self.irregular_vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.irregular_edges.len()
    }

    pub fn counts(&self) -> (usize, usize) {
        (self.vertex_count(), self.edge_count())
    }
}

fn is_rotation_of(a: &[EdgeId], b: &[EdgeId]) -> bool {
    a.len() == b.len() && (a.is_empty() || (0..b.len()).any(|s| (0..a.len()).all(|i| a[i] == b[(s + i) % b.len()])))
}

/// `Some(true)` if kept, `Some(false)` if reversed, `None` if irregular.
fn orientation(a: &[EdgeId], b: &[EdgeId]) -> Option<bool> {
    if is_rotation_of(a, b) {
        return Some(true);
    }
    let rev: Vec<EdgeId> = b.iter().rev().copied().collect();
    is_rotation_of(a, &rev).then_some(false)
}

pub fn count_irregular(phi: &RotationSystem, psi: &RotationSystem) -> Result<IrregularityReport, EmbedError> {
    let same_vertices = phi.vertices().eq(psi.vertices());
    let same_edges = phi.edges().map(|e| (e.id, e.pair())).eq(psi.edges().map(|e| (e.id, e.pair())));
    if !same_vertices || !same_edges {
        return Err(EmbedError::GraphMismatch);
    }
    let mut irregular_vertices = Vec::new();
    let mut orient: BTreeMap<VertexId, bool> = BTreeMap::new();
    for v in phi.vertices().filter(|&v| phi.degree(v) >= 3) {
        match orientation(&phi.edge_cycle(v), &psi.edge_cycle(v)) {
            Some(o) => {
                orient.insert(v, o);
            }
            None => irregular_vertices.push(v),
        }
    }
    // walk every maximal path through degree-2 vertices from each branch vertex
    let mut irregular: BTreeSet<EdgeId> = BTreeSet::new();
    let mut walked: HashSet<EdgeId> = HashSet::new();
    for (&x, &ox) in &orient {
        for &first in phi.edge_cycle(x).iter() {
            if walked.contains(&first) {
                continue;
            }
            let (mut prev_edge, mut at) = (first, phi.edge(first).expect("rotation edge").other(x));
            walked.insert(first);
            while phi.degree(at) == 2 && at != x {
                let next = phi.edge_cycle(at).into_iter().find(|&e| e != prev_edge).unwrap_or(prev_edge);
                walked.insert(next);
                prev_edge = next;
                at = phi.edge(next).expect("rotation edge").other(at);
            }
            if at == x {
                continue;
            }
            if let Some(&oy) = orient.get(&at) {
                if ox != oy {
                    irregular.insert(first);
                    irregular.insert(prev_edge);
                }
            }
        }
    }
    Ok(IrregularityReport { irregular_vertices, irregular_edges: irregular.into_iter().collect() })
}
