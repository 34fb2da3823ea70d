//! Top-level drivers.
//!
//! [`draw_three_connected`] embeds `G - E*` close to a good embedding and
//! inserts `E*`. [`draw`] handles arbitrary graphs: parallel edges are
//! subdivided, 2-connected components are drawn separately (through the
//! composer when they need crossings) and glued at cut vertices.
//! [`approx_crossing_number`] planarizes first. Every result is certified by
//! [`verify`] before it is returned.

mod bounds;
mod verify;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use bounds::{girth, lower_bound, ComponentBound, LowerBound};
pub use verify::{verify, VerifyFailure, VerifyReport};

use crate::composer::{
    assign_weights, compose, decompose_for_drawing, draw_by_insertion, ComposeError, DecomposeError, MergeLog, PieceKind, PieceSet,
};
use crate::drawing::{Drawing, DrawingError, Sketch};
use crate::embedder::{count_irregular, find_close_embedding, EmbedError};
use crate::graph::{biconnected_components, connectivity, subdivide_parallel_edges, EdgeId, Graph};
use crate::inserter::{insert_all, uncross_sketch, uncross_with, InsertError, UncrossOptions};
use crate::planarity::{embed, is_planar, RotationSystem, UnionFind};
use crate::planarizer::{planarize, PlanarizeConfig, PlanarizeError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PipelineError {
    #[error("edge {0} of the planarizing set is not in the graph")]
    UnknownEdge(EdgeId),
    #[error("graph minus the planarizing set is not planar")]
    NonPlanarRemainder,
    #[error("graph is not 3-connected")]
    NotThreeConnected,
    #[error("graph has parallel edges")]
    NotSimple,
    #[error("produced drawing failed verification: {0}")]
    Verification(VerifyFailure),
    #[error(transparent)]
    Embed(#[from] EmbedError),
    #[error(transparent)]
    Insert(#[from] InsertError),
    #[error(transparent)]
    Drawing(#[from] DrawingError),
    #[error(transparent)]
    Decompose(#[from] DecomposeError),
    #[error(transparent)]
    Compose(#[from] ComposeError),
    #[error(transparent)]
    Planarize(#[from] PlanarizeError),
}

/// How one 2-connected component was drawn.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentLog {
    pub vertices: usize,
    pub edges: usize,
    pub star_edges: usize,
    pub crossings: usize,
    pub nice_pieces: usize,
    pub block_pieces: usize,
    pub chain_pieces: usize,
    pub piece_costs: Vec<u64>,
    pub merges: Vec<MergeLog>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostics {
    /// `E*` edges moved into the remainder to connect it.
    pub moved_to_remainder: Vec<EdgeId>,
    /// Irregular vertices and edges of the chosen embeddings against the
    /// initial planarity-test embeddings, summed over 3-connected drawings.
    pub irregular_vertices: usize,
    pub irregular_edges: usize,
    /// Crossings paid by each inserted edge when it was inserted.
    pub insertion_costs: Vec<(EdgeId, usize)>,
    pub components: Vec<ComponentLog>,
    /// Pieces drawn without the close-embedding step, with the reason.
    pub fallbacks: Vec<String>,
    /// Edges removed by the planarizer, when it ran.
    pub planarized: Option<usize>,
    pub lower_bound: Option<LowerBound>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DrawResult {
    pub drawing: Drawing,
    pub crossings: usize,
    /// The planarizing set actually inserted (original edge ids).
    pub e_star: BTreeSet<EdgeId>,
    pub diagnostics: Diagnostics,
}

impl DrawResult {
    /// Crossings over the certified lower bound, when the bound is positive.
    pub fn ratio(&self) -> Option<f64> {
        let lb = self.diagnostics.lower_bound.as_ref()?.value;
        (lb > 0).then(|| self.crossings as f64 / lb as f64)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ApproxConfig {
    pub planarize: PlanarizeConfig,
}

fn check_star(g: &Graph, e_star: &BTreeSet<EdgeId>) -> Result<(), PipelineError> {
    if let Some(&e) = e_star.iter().find(|e| !g.contains_edge(**e)) {
        return Err(PipelineError::UnknownEdge(e));
    }
    if !is_planar(&g.without_edges(e_star)) {
        return Err(PipelineError::NonPlanarRemainder);
    }
    Ok(())
}

fn certified(g: &Graph, result: DrawResult) -> Result<DrawResult, PipelineError> {
    match verify(g, &result.drawing).failure {
        None => Ok(result),
        Some(f) => Err(PipelineError::Verification(f)),
    }
}

/// Moves `E*` edges joining different components of `g - E*` into the
/// remainder, in ascending id order, until no such edge is left.
fn connect_remainder(g: &Graph, e_star: &BTreeSet<EdgeId>) -> (BTreeSet<EdgeId>, Vec<EdgeId>) {
    let h = g.without_edges(e_star);
    let index: BTreeMap<_, _> = g.vertices().enumerate().map(|(i, v)| (v, i)).collect();
    let mut uf = UnionFind::new(index.len());
    for e in h.edges() {
        uf.union(index[&e.u], index[&e.v]);
    }
    let mut star = e_star.clone();
    let mut moved = Vec::new();
    for &id in e_star {
        let e = g.edge(id).expect("checked");
        if uf.union(index[&e.u], index[&e.v]) {
            star.remove(&id);
            moved.push(id);
        }
    }
    (star, moved)
}

/// Draws a 3-connected simple graph: the remainder is embedded close to an
/// optimal drawing and `E*` is inserted edge by edge.
pub fn draw_three_connected(g: &Graph, e_star: &BTreeSet<EdgeId>) -> Result<DrawResult, PipelineError> {
    check_star(g, e_star)?;
    if !g.is_simple() {
        return Err(PipelineError::NotSimple);
    }
    if connectivity(g) < 3 {
        return Err(PipelineError::NotThreeConnected);
    }
    let (star, moved) = connect_remainder(g, e_star);
    let h = g.without_edges(&star);
    let initial = embed(&h).ok_or(PipelineError::NonPlanarRemainder)?;
    let emb = find_close_embedding(&h, g, &star)?;
    let irregular = count_irregular(initial.rotation(), emb.rotation())?;
    let extra: Vec<_> = star.iter().map(|e| *g.edge(*e).expect("checked")).collect();
    let ins = insert_all(&emb, &extra)?;
    let drawing = uncross_with(&ins.drawing, UncrossOptions { adjacent: true })?;
    let diagnostics = Diagnostics {
        moved_to_remainder: moved,
        irregular_vertices: irregular.vertex_count(),
        irregular_edges: irregular.edge_count(),
        insertion_costs: ins.costs,
        ..Default::default()
    };
    certified(g, DrawResult { crossings: drawing.crossing_count(), drawing, e_star: star, diagnostics })
}

/// Draws one piece of a decomposition: block pieces through
/// [`draw_three_connected`], falling back to plain insertion when the piece
/// is not 3-connected; other pieces by insertion.
fn draw_piece(ps: &PieceSet, p: usize, diag: &mut Diagnostics) -> Result<Drawing, PipelineError> {
    let piece = &ps.pieces[p];
    if let PieceKind::Block(_) = piece.kind {
        let simple = piece.simplified();
        match draw_three_connected(&simple.graph, &simple.planarizing) {
            Ok(r) => {
                diag.moved_to_remainder.extend(r.diagnostics.moved_to_remainder.iter().filter(|e| ps.graph.contains_edge(**e)));
                diag.irregular_vertices += r.diagnostics.irregular_vertices;
                diag.irregular_edges += r.diagnostics.irregular_edges;
                diag.insertion_costs.extend(r.diagnostics.insertion_costs);
                return Ok(r.drawing);
            }
            Err(err) => {
                log::info!("piece {p}: drawing with an arbitrary embedding ({err})");
                diag.fallbacks.push(format!("piece {p}: {err}"));
            }
        }
    }
    Ok(draw_by_insertion(ps, p)?)
}

/// Draws a simple 2-connected component with its share of `E*`.
fn draw_component(x: &Graph, e_star: &BTreeSet<EdgeId>, diag: &mut Diagnostics) -> Result<Drawing, PipelineError> {
    let mut log = ComponentLog { vertices: x.vertex_count(), edges: x.edge_count(), star_edges: e_star.len(), ..Default::default() };
    let drawing = if let Some(emb) = embed(x) {
        // E* is not needed here: the component is drawn without crossings
        diag.moved_to_remainder.extend(e_star);
        Drawing::planar(x, emb.rotation())?
    } else {
        let ps = decompose_for_drawing(x, e_star)?;
        log.nice_pieces = ps.count(|k| k == PieceKind::Nice);
        log.block_pieces = ps.count(|k| matches!(k, PieceKind::Block(_)));
        log.chain_pieces = ps.count(|k| k == PieceKind::Chain);
        let mut drawings = BTreeMap::new();
        for p in 0..ps.pieces.len() {
            drawings.insert(p, draw_piece(&ps, p, diag)?);
        }
        let w = assign_weights(&ps, x.max_degree() as u64);
        let out = compose(&ps, &w, &drawings)?;
        log.piece_costs = out.piece_costs;
        log.merges = out.merges;
        out.drawing
    };
    log.crossings = drawing.crossing_count();
    diag.components.push(log);
    Ok(drawing)
}

/// Draws any graph whose remainder `G - E*` is planar.
pub fn draw(g: &Graph, e_star: &BTreeSet<EdgeId>) -> Result<DrawResult, PipelineError> {
    check_star(g, e_star)?;
    let sub = subdivide_parallel_edges(g);
    let mut diag = Diagnostics::default();
    let comps = biconnected_components(&sub.graph);
    let mut drawn = Vec::with_capacity(comps.len());
    for comp in comps {
        let x = comp.graph;
        let local: BTreeSet<EdgeId> = e_star.iter().copied().filter(|e| x.contains_edge(*e)).collect();
        let d = if x.vertex_count() < 3 {
            diag.moved_to_remainder.extend(&local);
            Drawing::planar(&x, &RotationSystem::from_graph_order(&x))?
        } else {
            draw_component(&x, &local, &mut diag)?
        };
        drawn.push(d);
    }

    // glue in block-cut tree order: each new component meets the drawn part
    // in at most one vertex, and its rotation there is appended as one run
    let mut sk = Sketch::new(Graph::new(), &RotationSystem::from_graph_order(&Graph::new()));
    let mut pending: Vec<Drawing> = drawn;
    while !pending.is_empty() {
        let i = pending.iter().position(|d| d.graph.vertices().any(|v| sk.graph.contains_vertex(v))).unwrap_or(0);
        sk.absorb(Sketch::from_drawing(&pending.remove(i)));
    }
    for (&w, &e) in &sub.subdivided {
        sk.dissolve(w, e, sub.paths[&e][1]);
    }
    diag.moved_to_remainder.sort_unstable();
    sk.graph = g.clone();
    sk.e_star = e_star.iter().copied().filter(|e| diag.moved_to_remainder.binary_search(e).is_err()).collect();
    uncross_sketch(&mut sk, UncrossOptions { adjacent: true })?;
    let drawing = sk.finish()?;
    let result = DrawResult { crossings: drawing.crossing_count(), e_star: drawing.e_star.clone(), drawing, diagnostics: diag };
    certified(g, result)
}

/// Planarizes `g` and draws it with the removed edges as `E*`. The Euler
/// lower bound is attached to the diagnostics.
pub fn approx_crossing_number(g: &Graph, config: &ApproxConfig) -> Result<DrawResult, PipelineError> {
    let plan = planarize(g, &config.planarize)?;
    let mut result = draw(g, &plan.removed)?;
    result.diagnostics.planarized = Some(plan.removed.len());
    result.diagnostics.lower_bound = Some(lower_bound(g));
    Ok(result)
}
