//! Independent certification of a drawing against its graph.
//!
//! Nothing here trusts the derived fields of [`Drawing`]: the rotation index
//! is rebuilt, every curve is walked dart by dart and the crossing registry
//! is recomputed from the skeleton.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::drawing::{is_dummy, Drawing};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::planarity::{Dart, PlanarEmbedding, RotationSystem};

#[derive(Clone, Debug, Error, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "kebab-case")]
pub enum VerifyFailure {
    #[error("graph: drawing does not draw the given graph ({reason})")]
    Graph { reason: String },
    #[error("rotation: {reason}")]
    Rotation { reason: String },
    #[error("planarity: {reason}")]
    Planarity { reason: String },
    #[error("alternation: dummy {dummy}: {reason}")]
    Alternation { dummy: VertexId, reason: String },
    #[error("path: edge {edge}: {reason}")]
    Path { edge: EdgeId, reason: String },
    #[error("count: {reason}")]
    Count { reason: String },
    #[error("contraction: vertex {vertex}: {reason}")]
    Contraction { vertex: VertexId, reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    /// Checks that passed, in the order they ran.
    pub passed: Vec<String>,
    /// The first failing check, if any; later checks are skipped.
    pub failure: Option<VerifyFailure>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }
}

/// Certifies `d` as a drawing of `g`. Edge labels are not compared.
pub fn verify(g: &Graph, d: &Drawing) -> VerifyReport {
    let mut passed = Vec::new();
    let failure = run(g, d, &mut passed).err();
    VerifyReport { passed, failure }
}

fn run(g: &Graph, d: &Drawing, passed: &mut Vec<String>) -> Result<(), VerifyFailure> {
    check_graph(g, d)?;
    passed.push("graph".into());
    let rot = RotationSystem::new(d.skeleton.edges().copied(), d.skeleton.order().clone())
        .map_err(|e| VerifyFailure::Rotation { reason: e.to_string() })?;
    passed.push("rotation".into());
    PlanarEmbedding::new(rot.clone()).map_err(|e| VerifyFailure::Planarity { reason: e.to_string() })?;
    passed.push("planarity".into());
    let owner = check_owners(g, d, &rot)?;
    check_alternation(&rot, &owner)?;
    passed.push("alternation".into());
    check_paths(g, d, &rot, &owner)?;
    passed.push("paths".into());
    check_count(d, &rot, &owner)?;
    passed.push("count".into());
    check_contraction(g, &rot, &owner)?;
    passed.push("contraction".into());
    Ok(())
}

fn check_graph(g: &Graph, d: &Drawing) -> Result<(), VerifyFailure> {
    if !g.vertices().eq(d.graph.vertices()) {
        return Err(VerifyFailure::Graph { reason: "vertex sets differ".into() });
    }
    for e in g.edges() {
        match d.graph.edge(e.id) {
            Some(f) if (f.u, f.v) == (e.u, e.v) => {}
            _ => return Err(VerifyFailure::Graph { reason: format!("edge {} is missing or has other ends", e.id) }),
        }
    }
    if g.edge_count() != d.graph.edge_count() {
        return Err(VerifyFailure::Graph { reason: "drawing has extra edges".into() });
    }
    Ok(())
}

fn check_owners(g: &Graph, d: &Drawing, rot: &RotationSystem) -> Result<BTreeMap<EdgeId, EdgeId>, VerifyFailure> {
    let mut owner = BTreeMap::new();
    for s in rot.edges() {
        match d.owner.get(&s.id) {
            Some(&o) if g.contains_edge(o) => {
                owner.insert(s.id, o);
            }
            _ => {
                let edge = d.owner.get(&s.id).copied().unwrap_or(s.id);
                return Err(VerifyFailure::Path { edge, reason: format!("segment {} has no owning edge", s.id) });
            }
        }
    }
    for v in rot.vertices() {
        if !is_dummy(v) && !g.contains_vertex(v) {
            return Err(VerifyFailure::Contraction { vertex: v, reason: "skeleton vertex is neither real nor a dummy".into() });
        }
    }
    Ok(owner)
}

/// Every dummy has degree four and its opposite darts belong to one edge.
fn check_alternation(rot: &RotationSystem, owner: &BTreeMap<EdgeId, EdgeId>) -> Result<(), VerifyFailure> {
    for v in rot.vertices().filter(|&v| is_dummy(v)) {
        let o: Vec<EdgeId> = rot.rotation(v).iter().map(|d| owner[&d.edge]).collect();
        if o.len() != 4 {
            return Err(VerifyFailure::Alternation { dummy: v, reason: format!("degree {}", o.len()) });
        }
        if o[0] != o[2] || o[1] != o[3] {
            return Err(VerifyFailure::Alternation { dummy: v, reason: format!("owners {o:?} do not alternate") });
        }
    }
    Ok(())
}

fn opposite(rot: &RotationSystem, d: Dart) -> Dart {
    let r = rot.rotation(rot.tail(d));
    let i = r.iter().position(|&x| x == d).expect("dart in its rotation");
    r[(i + 2) % 4]
}

/// Each curve runs from `e.u` to `e.v` through dummies only, straight across
/// each, using segments it owns; together the curves use every segment once.
fn check_paths(g: &Graph, d: &Drawing, rot: &RotationSystem, owner: &BTreeMap<EdgeId, EdgeId>) -> Result<(), VerifyFailure> {
    let mut used: BTreeSet<EdgeId> = BTreeSet::new();
    for e in g.edges() {
        let fail = |reason: String| VerifyFailure::Path { edge: e.id, reason };
        let path = d.edge_paths.get(&e.id).ok_or_else(|| fail("no curve".into()))?;
        let (Some(first), Some(last)) = (path.first(), path.last()) else { return Err(fail("empty curve".into())) };
        for dart in path {
            if rot.edge(dart.edge).is_none() {
                return Err(fail(format!("unknown segment {}", dart.edge)));
            }
            if owner[&dart.edge] != e.id {
                return Err(fail(format!("segment {} belongs to edge {}", dart.edge, owner[&dart.edge])));
            }
            if !used.insert(dart.edge) {
                return Err(fail(format!("segment {} used twice", dart.edge)));
            }
        }
        if rot.tail(*first) != e.u || rot.head(*last) != e.v {
            return Err(fail("curve does not join the edge's ends".into()));
        }
        for w in path.windows(2) {
            let z = rot.head(w[0]);
            if !is_dummy(z) {
                return Err(fail(format!("curve passes through real vertex {z}")));
            }
            if rot.tail(w[1]) != z || opposite(rot, w[0].twin()) != w[1] {
                return Err(fail(format!("curve does not pass straight through {z}")));
            }
        }
    }
    if let Some(s) = rot.edges().map(|s| s.id).find(|s| !used.contains(s)) {
        return Err(VerifyFailure::Path { edge: owner[&s], reason: format!("segment {s} lies on no curve") });
    }
    Ok(())
}

/// The crossing registry lists exactly the dummies, each with its two curves.
fn check_count(d: &Drawing, rot: &RotationSystem, owner: &BTreeMap<EdgeId, EdgeId>) -> Result<(), VerifyFailure> {
    let dummies: Vec<VertexId> = rot.vertices().filter(|&v| is_dummy(v)).collect();
    if dummies.len() != d.crossings.len() {
        return Err(VerifyFailure::Count { reason: format!("{} dummies but {} crossings recorded", dummies.len(), d.crossings.len()) });
    }
    for w in dummies {
        let c = d.crossings.get(&w).ok_or_else(|| VerifyFailure::Count { reason: format!("dummy {w} has no crossing record") })?;
        let r = rot.rotation(w);
        let mut pair = [owner[&r[0].edge], owner[&r[1].edge]];
        pair.sort_unstable();
        if pair != [c.a, c.b] {
            return Err(VerifyFailure::Count { reason: format!("dummy {w} records edges {} and {} but joins {pair:?}", c.a, c.b) });
        }
    }
    Ok(())
}

/// Contracting every curve to an edge gives back the incidences of `g`.
fn check_contraction(g: &Graph, rot: &RotationSystem, owner: &BTreeMap<EdgeId, EdgeId>) -> Result<(), VerifyFailure> {
    for v in g.vertices() {
        let mut at: Vec<EdgeId> = if rot.contains_vertex(v) { rot.rotation(v).iter().map(|d| owner[&d.edge]).collect() } else { Vec::new() };
        let mut expected = g.incident(v).to_vec();
        at.sort_unstable();
        expected.sort_unstable();
        if at != expected {
            return Err(VerifyFailure::Contraction { vertex: v, reason: format!("edge ends {at:?}, expected {expected:?}") });
        }
    }
    Ok(())
}
