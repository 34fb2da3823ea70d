//! Text formats: edge lists, JSON drawing documents and SVG.
//!
//! An edge list has one edge `u v` per line; a line with a single id
//! declares a vertex, `#` starts a comment. Vertex ids are renumbered densely
//! in ascending order and edges keep their line order, so parallel edges
//! survive a round trip.

mod svg;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use svg::{render_svg, SvgOptions};

use crate::drawing::{Crossing, Drawing};
use crate::graph::{Edge, EdgeId, EdgeLabel, Graph, VertexId};
use crate::planarity::{Dart, RotationSystem};

/// Current version of the drawing document schema.
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: expected `u v`, found `{text}`")]
    Malformed { line: usize, text: String },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: u64 },
}

/// Raw vertex ids and edge pairs in file order, without renumbering.
pub fn parse_pairs(text: &str) -> Result<(BTreeSet<u64>, Vec<(u64, u64)>), ParseError> {
    let mut ids: BTreeSet<u64> = BTreeSet::new();
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let malformed = || ParseError::Malformed { line, text: raw.trim().to_string() };
        let tokens: Vec<u64> = body.split_whitespace().map(|t| t.parse::<u64>().map_err(|_| malformed())).collect::<Result<_, _>>()?;
        match tokens[..] {
            [v] => {
                ids.insert(v);
            }
            [u, v] if u == v => return Err(ParseError::SelfLoop { line, vertex: u }),
            [u, v] => {
                ids.extend([u, v]);
                pairs.push((u, v));
            }
            _ => return Err(malformed()),
        }
    }
    Ok((ids, pairs))
}

pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let (ids, pairs) = parse_pairs(text)?;
    let dense: BTreeMap<u64, VertexId> = ids.into_iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut g = Graph::with_vertices(dense.len());
    for (u, v) in pairs {
        g.add_edge(dense[&u], dense[&v]).expect("no self-loops");
    }
    Ok(g)
}

/// Edges in id order; isolated vertices as single-id lines.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("# {} vertices, {} edges\n", g.vertex_count(), g.edge_count());
    for e in g.edges() {
        writeln!(out, "{} {}", e.u, e.v).expect("write to string");
    }
    for v in g.vertices().filter(|&v| g.degree(v) == 0) {
        writeln!(out, "{v}").expect("write to string");
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub id: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
    pub label: EdgeLabel,
}

/// A skeleton segment and the graph edge whose curve it belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentRecord {
    pub id: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
    pub owner: EdgeId,
    pub label: EdgeLabel,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DummyRecord {
    pub vertex: VertexId,
    pub a: EdgeId,
    pub b: EdgeId,
    pub pos_a: usize,
    pub pos_b: usize,
}

/// JSON form of a [`Drawing`]. Darts are `[segment, reversed]` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DrawingDocument {
    pub format: u32,
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeRecord>,
    pub segments: Vec<SegmentRecord>,
    pub rotation: BTreeMap<VertexId, Vec<(EdgeId, bool)>>,
    pub dummies: Vec<DummyRecord>,
    pub paths: BTreeMap<EdgeId, Vec<(EdgeId, bool)>>,
    #[serde(default)]
    pub e_star: Vec<EdgeId>,
}

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format version {0}")]
    Version(u32),
    #[error("inconsistent document: {0}")]
    Inconsistent(String),
}

fn darts(ds: &[Dart]) -> Vec<(EdgeId, bool)> {
    ds.iter().map(|d| (d.edge, d.rev)).collect()
}

fn undarts(ds: &[(EdgeId, bool)]) -> Vec<Dart> {
    ds.iter().map(|&(e, rev)| Dart::new(e, rev)).collect()
}

impl DrawingDocument {
    pub fn from_drawing(d: &Drawing) -> DrawingDocument {
        DrawingDocument {
            format: FORMAT_VERSION,
            vertices: d.graph.vertices().collect(),
            edges: d.graph.edges().map(|e| EdgeRecord { id: e.id, u: e.u, v: e.v, label: e.label }).collect(),
            segments: d
                .skeleton
                .edges()
                .map(|s| SegmentRecord { id: s.id, u: s.u, v: s.v, owner: d.owner[&s.id], label: s.label })
                .collect(),
            rotation: d.skeleton.order().iter().map(|(v, ds)| (*v, darts(ds))).collect(),
            dummies: d
                .crossings
                .iter()
                .map(|(&vertex, c)| DummyRecord { vertex, a: c.a, b: c.b, pos_a: c.pos_a, pos_b: c.pos_b })
                .collect(),
            paths: d.edge_paths.iter().map(|(e, p)| (*e, darts(p))).collect(),
            e_star: d.e_star.iter().copied().collect(),
        }
    }

    /// Rebuilds the drawing without certifying it; run
    /// [`crate::pipeline::verify`] on the result. Only structural problems
    /// that prevent building a rotation system are reported here.
    pub fn to_drawing(&self) -> Result<Drawing, DocumentError> {
        if self.format != FORMAT_VERSION {
            return Err(DocumentError::Version(self.format));
        }
        let mut graph = Graph::new();
        for &v in &self.vertices {
            graph.add_vertex(v);
        }
        for e in &self.edges {
            graph
                .insert_edge(Edge { id: e.id, u: e.u, v: e.v, label: e.label })
                .map_err(|err| DocumentError::Inconsistent(format!("edge {}: {err}", e.id)))?;
        }
        let segments = self.segments.iter().map(|s| Edge { id: s.id, u: s.u, v: s.v, label: s.label });
        let order = self.rotation.iter().map(|(v, ds)| (*v, undarts(ds))).collect();
        let skeleton = RotationSystem::new(segments, order).map_err(|err| DocumentError::Inconsistent(err.to_string()))?;
        Ok(Drawing {
            graph,
            skeleton,
            owner: self.segments.iter().map(|s| (s.id, s.owner)).collect(),
            edge_paths: self.paths.iter().map(|(e, p)| (*e, undarts(p))).collect(),
            crossings: self.dummies.iter().map(|r| (r.vertex, Crossing { a: r.a, b: r.b, pos_a: r.pos_a, pos_b: r.pos_b })).collect(),
            e_star: self.e_star.iter().copied().collect(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn from_json(text: &str) -> Result<DrawingDocument, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Serializes a drawing as a JSON document.
pub fn drawing_to_json(d: &Drawing) -> String {
    DrawingDocument::from_drawing(d).to_json()
}

/// Parses a JSON document into an uncertified drawing.
pub fn drawing_from_json(text: &str) -> Result<Drawing, DocumentError> {
    DrawingDocument::from_json(text)?.to_drawing()
}
