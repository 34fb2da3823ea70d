//! Planarizing edge sets by recursive balanced cutting.
//!
//! Each iteration cuts every non-planar piece in two with a [`balanced_cut`]
//! and collects the cut edges. A piece whose greedy maximal planar subgraph
//! misses at most `threshold` of its edges is finished greedily instead.
//! Afterwards removed edges are offered back in ascending id order and kept
//! whenever the remainder stays planar.

mod cut;
mod separator;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use cut::{balanced_cut, CutResult, CutStrategy};
pub use separator::{lipton_tarjan_separator, Separator, SEPARATOR_SLACK};

use crate::graph::{EdgeId, Graph};
use crate::planarity::{embed, is_planar, PlanarEmbedding};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PlanarizeError {
    #[error("balanced cut needs at least two vertices, got {0}")]
    TooSmall(usize),
    #[error("balance ratio must lie strictly between 0 and 1, got {0}")]
    InvalidAlpha(f64),
    #[error("unknown cut strategy `{0}` (expected bfs-levels, fm-local or spectral-lite)")]
    UnknownStrategy(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanarizeConfig {
    pub strategy: CutStrategy,
    pub alpha: f64,
    /// Pieces losing at most this many edges to the greedy planar subgraph
    /// are finished greedily.
    pub threshold: usize,
    pub seed: u64,
    /// Offer removed edges back once all pieces are planar.
    pub readd: bool,
}

impl Default for PlanarizeConfig {
    fn default() -> Self {
        PlanarizeConfig { strategy: CutStrategy::BfsLevels, alpha: 2.0 / 3.0, threshold: 8, seed: 0, readd: true }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PieceLog {
    pub vertices: usize,
    pub edges: usize,
    /// Edges cut, or `None` when the piece was finished greedily.
    pub cut: Option<usize>,
    pub greedy_removed: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct IterationLog {
    pub iteration: usize,
    pub pieces: Vec<PieceLog>,
}

#[derive(Clone, Debug)]
pub struct PlanarizationResult {
    pub removed: BTreeSet<EdgeId>,
    pub remainder: Graph,
    pub embedding: PlanarEmbedding,
    pub log: Vec<IterationLog>,
    /// Edges that the re-add pass put back.
    pub readded: Vec<EdgeId>,
}

/// Edges of `g` outside its greedy maximal planar subgraph, built by adding
/// edges in ascending id order. Runs of edges are added by doubling and
/// bisection; the result equals the one-edge-at-a-time greedy because
/// planarity is closed under taking subgraphs.
pub fn greedy_planar_subgraph(g: &Graph) -> BTreeSet<EdgeId> {
    let mut kept = Graph::new();
    for v in g.vertices() {
        kept.add_vertex(v);
    }
    let edges: Vec<_> = g.edges().copied().collect();
    let mut rejected = BTreeSet::new();
    let with = |kept: &Graph, run: &[crate::graph::Edge]| {
        let mut h = kept.clone();
        for e in run {
            h.insert_edge(*e).expect("fresh edge id");
        }
        h
    };
    let mut i = 0;
    let mut step = 1;
    while i < edges.len() {
        let end = (i + step).min(edges.len());
        if is_planar(&with(&kept, &edges[i..end])) {
            kept = with(&kept, &edges[i..end]);
            i = end;
            step *= 2;
            continue;
        }
        // largest planar prefix of the run; the run's first edge alone may fail
        let (mut lo, mut hi) = (i, end - 1);
        while lo < hi {
            let mid = (lo + hi).div_ceil(2);
            if is_planar(&with(&kept, &edges[i..mid])) {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        kept = with(&kept, &edges[i..lo]);
        rejected.insert(edges[lo].id);
        i = lo + 1;
        step = 1;
    }
    rejected
}

/// Lower bound `m - (3n - 6)` on the planarization size of a simple graph
/// with at least three vertices.
fn euler_excess(g: &Graph) -> Option<usize> {
    let n = g.vertex_count();
    (n >= 3 && g.is_simple()).then(|| g.edge_count().saturating_sub(3 * n - 6))
}

pub fn planarize(g: &Graph, config: &PlanarizeConfig) -> Result<PlanarizationResult, PlanarizeError> {
    if !(config.alpha > 0.0 && config.alpha < 1.0) {
        return Err(PlanarizeError::InvalidAlpha(config.alpha));
    }
    let mut removed = BTreeSet::new();
    let mut log = Vec::new();
    let mut pieces: Vec<Graph> = vec![g.clone()];
    let mut iteration = 0;
    while !pieces.is_empty() {
        iteration += 1;
        let mut entry = IterationLog { iteration, pieces: Vec::new() };
        let mut next = Vec::new();
        for piece in pieces.into_iter().filter(|p| !is_planar(p)) {
            let mut plog = PieceLog { vertices: piece.vertex_count(), edges: piece.edge_count(), ..Default::default() };
            if euler_excess(&piece).is_none_or(|x| x <= config.threshold) {
                let greedy = greedy_planar_subgraph(&piece);
                if greedy.len() <= config.threshold {
                    plog.greedy_removed = greedy.len();
                    removed.extend(greedy);
                    entry.pieces.push(plog);
                    continue;
                }
            }
            let cut = balanced_cut(&piece, config.strategy, config.alpha, config.seed.wrapping_add(iteration as u64))?;
            plog.cut = Some(cut.cut_size());
            log::debug!("iteration {iteration}: cut {} edges from a piece of {} vertices", cut.cut_size(), piece.vertex_count());
            removed.extend(cut.cut_edges.iter().copied());
            next.push(piece.induced_subgraph(&cut.a));
            next.push(piece.induced_subgraph(&cut.c));
            entry.pieces.push(plog);
        }
        if !entry.pieces.is_empty() {
            log.push(entry);
        }
        pieces = next;
    }

    let mut remainder = g.without_edges(&removed);
    let mut readded = Vec::new();
    if config.readd {
        for id in removed.clone() {
            let e = *g.edge(id).expect("removed edges come from g");
            remainder.insert_edge(e).expect("edge was removed");
            if is_planar(&remainder) {
                removed.remove(&id);
                readded.push(id);
            } else {
                remainder.remove_edge(id);
            }
        }
    }
    let embedding = embed(&remainder).expect("vertex-disjoint planar pieces form a planar graph");
    Ok(PlanarizationResult { removed, remainder, embedding, log, readded })
}
