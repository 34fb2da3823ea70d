//! Darts, rotation systems and Euler-certified planar embeddings.
//!
//! A dart is an edge with a direction. The rotation at a vertex is the cyclic
//! order of darts leaving it. Faces are the orbits of `d -> next(twin(d))`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Edge, EdgeId, Graph, VertexId};

pub type FaceId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Dart {
    pub edge: EdgeId,
    /// `false` for the dart leaving `edge.u`, `true` for the one leaving `edge.v`.
    pub rev: bool,
}

impl Dart {
    pub fn new(edge: EdgeId, rev: bool) -> Self {
        Dart { edge, rev }
    }

    pub fn twin(self) -> Dart {
        Dart { edge: self.edge, rev: !self.rev }
    }

    /// The dart of `e` leaving `x`.
    pub fn leaving(e: &Edge, x: VertexId) -> Dart {
        Dart { edge: e.id, rev: e.u != x }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbeddingError {
    #[error("dart {0:?} missing from the rotation at its tail")]
    MissingDart(Dart),
    #[error("dart {0:?} listed more than once or at the wrong vertex")]
    MisplacedDart(Dart),
    #[error("rotation references unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("component containing vertex {vertex} violates Euler's formula (V - E + F = {euler})")]
    NotPlanar { vertex: VertexId, euler: i64 },
    #[error("embedding is disconnected")]
    Disconnected,
}

/// Combinatorial embedding: a cyclic order of darts at every vertex.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RotationSystem {
    edges: BTreeMap<EdgeId, Edge>,
    order: BTreeMap<VertexId, Vec<Dart>>,
    #[serde(skip)]
    pos: HashMap<Dart, usize>,
}

impl RotationSystem {
    /// Validates that every dart of every edge appears exactly once, at its tail.
    pub fn new(edges: impl IntoIterator<Item = Edge>, order: BTreeMap<VertexId, Vec<Dart>>) -> Result<Self, EmbeddingError> {
        let edges: BTreeMap<EdgeId, Edge> = edges.into_iter().map(|e| (e.id, e)).collect();
        let mut pos = HashMap::with_capacity(edges.len() * 2);
        for (&v, darts) in &order {
            for (i, &d) in darts.iter().enumerate() {
                let e = edges.get(&d.edge).ok_or(EmbeddingError::UnknownEdge(d.edge))?;
                let tail = if d.rev { e.v } else { e.u };
                if tail != v || pos.insert(d, i).is_some() {
                    return Err(EmbeddingError::MisplacedDart(d));
                }
            }
        }
        for e in edges.values() {
            for d in [Dart::new(e.id, false), Dart::new(e.id, true)] {
                if !pos.contains_key(&d) {
                    return Err(EmbeddingError::MissingDart(d));
                }
            }
        }
        Ok(RotationSystem { edges, order, pos })
    }

    /// Rotation following the incidence order of `g`.
    pub fn from_graph_order(g: &Graph) -> Self {
        let order = g
            .vertices()
            .map(|v| {
                let darts = g.incident(v).iter().map(|e| Dart::leaving(g.edge(*e).unwrap(), v)).collect();
                (v, darts)
            })
            .collect();
        RotationSystem::new(g.edges().copied(), order).expect("incidence lists are consistent")
    }

    /// Rebuilds the position index after deserialisation.
    pub fn reindexed(self) -> Result<Self, EmbeddingError> {
        RotationSystem::new(self.edges.into_values(), self.order)
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.values()
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edges.get(&id)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.order.keys().copied()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.order.contains_key(&v)
    }

    pub fn vertex_count(&self) -> usize {
        self.order.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn order(&self) -> &BTreeMap<VertexId, Vec<Dart>> {
        &self.order
    }

    pub fn into_order(self) -> BTreeMap<VertexId, Vec<Dart>> {
        self.order
    }

    pub fn rotation(&self, v: VertexId) -> &[Dart] {
        self.order.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotation(v).len()
    }

    pub fn tail(&self, d: Dart) -> VertexId {
        let e = &self.edges[&d.edge];
        if d.rev {
            e.v
        } else {
            e.u
        }
    }

    pub fn head(&self, d: Dart) -> VertexId {
        self.tail(d.twin())
    }

    /// Successor of `d` in the rotation at its tail.
    pub fn next(&self, d: Dart) -> Dart {
        let rot = &self.order[&self.tail(d)];
        rot[(self.pos[&d] + 1) % rot.len()]
    }

    pub fn prev(&self, d: Dart) -> Dart {
        let rot = &self.order[&self.tail(d)];
        rot[(self.pos[&d] + rot.len() - 1) % rot.len()]
    }

    /// Next dart along the face to the left of `d`.
    pub fn face_successor(&self, d: Dart) -> Dart {
        self.next(d.twin())
    }

    /// All darts in ascending (edge, direction) order.
    pub fn darts(&self) -> impl Iterator<Item = Dart> + '_ {
        self.edges.keys().flat_map(|&e| [Dart::new(e, false), Dart::new(e, true)])
    }

    /// Face walks, each starting from its smallest dart, ordered by that dart.
    pub fn faces(&self) -> Vec<Vec<Dart>> {
        let mut seen: HashMap<Dart, ()> = HashMap::with_capacity(self.pos.len());
        let mut faces = Vec::new();
        for start in self.darts() {
            if seen.contains_key(&start) {
                continue;
            }
            let mut walk = Vec::new();
            let mut d = start;
            loop {
                seen.insert(d, ());
                walk.push(d);
                d = self.face_successor(d);
                if d == start {
                    break;
                }
            }
            faces.push(walk);
        }
        faces
    }

    pub fn graph(&self) -> Graph {
        let mut g = Graph::new();
        for &v in self.order.keys() {
            g.add_vertex(v);
        }
        for e in self.edges.values() {
            g.insert_edge(*e).expect("consistent edges");
        }
        g
    }

    /// Induced rotation on the given edge subset; all vertices are kept.
    pub fn restrict_edges(&self, keep: &BTreeSet<EdgeId>) -> RotationSystem {
        let order = self
            .order
            .iter()
            .map(|(&v, darts)| (v, darts.iter().copied().filter(|d| keep.contains(&d.edge)).collect()))
            .collect();
        let edges = self.edges.values().filter(|e| keep.contains(&e.id)).copied();
        RotationSystem::new(edges, order).expect("restriction of a valid rotation")
    }

    /// Induced rotation on the subgraph spanned by `vs`.
    pub fn restrict_vertices(&self, vs: &BTreeSet<VertexId>) -> RotationSystem {
        let keep: BTreeSet<EdgeId> = self
            .edges
            .values()
            .filter(|e| vs.contains(&e.u) && vs.contains(&e.v))
            .map(|e| e.id)
            .collect();
        let order = self
            .order
            .iter()
            .filter(|(v, _)| vs.contains(v))
            .map(|(&v, darts)| (v, darts.iter().copied().filter(|d| keep.contains(&d.edge)).collect()))
            .collect();
        let edges = self.edges.values().filter(|e| keep.contains(&e.id)).copied();
        RotationSystem::new(edges, order).expect("restriction of a valid rotation")
    }

    /// The same embedding with every rotation reversed.
    pub fn mirrored(&self) -> RotationSystem {
        let order = self
            .order
            .iter()
            .map(|(&v, darts)| (v, darts.iter().rev().copied().collect()))
            .collect();
        RotationSystem::new(self.edges.values().copied(), order).expect("mirror of a valid rotation")
    }

    /// Cyclic neighbour sequence at `v` (by edge id, so parallel edges stay distinct).
    pub fn edge_cycle(&self, v: VertexId) -> Vec<EdgeId> {
        self.rotation(v).iter().map(|d| d.edge).collect()
    }

    /// `V - E + F` for every connected component, keyed by its smallest vertex.
    pub fn euler_characteristics(&self) -> BTreeMap<VertexId, i64> {
        let vs: Vec<VertexId> = self.order.keys().copied().collect();
        let index: HashMap<VertexId, usize> = vs.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut uf = UnionFind::new(vs.len());
        for e in self.edges.values() {
            uf.union(index[&e.u], index[&e.v]);
        }
        let mut chi: BTreeMap<usize, i64> = BTreeMap::new();
        for i in 0..vs.len() {
            *chi.entry(uf.find(i)).or_default() += 1;
        }
        for e in self.edges.values() {
            *chi.entry(uf.find(index[&e.u])).or_default() -= 1;
        }
        for face in self.faces() {
            let v = self.tail(face[0]);
            *chi.entry(uf.find(index[&v])).or_default() += 1;
        }
        for i in 0..vs.len() {
            if self.order[&vs[i]].is_empty() {
                // an isolated vertex bounds one face
                *chi.entry(uf.find(i)).or_default() += 1;
            }
        }
        let mut smallest: BTreeMap<usize, VertexId> = BTreeMap::new();
        for (i, &v) in vs.iter().enumerate() {
            smallest.entry(uf.find(i)).or_insert(v);
        }
        chi.into_iter().map(|(root, x)| (smallest[&root], x)).collect()
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// A rotation system whose every component satisfies `V - E + F = 2`.
#[derive(Clone, Debug)]
pub struct PlanarEmbedding {
    rotation: RotationSystem,
    faces: Vec<Vec<Dart>>,
    face_of: HashMap<Dart, FaceId>,
}

impl PlanarEmbedding {
    /// Certifies planarity through Euler's formula.
    pub fn new(rotation: RotationSystem) -> Result<Self, EmbeddingError> {
        for (vertex, euler) in rotation.euler_characteristics() {
            if euler != 2 {
                return Err(EmbeddingError::NotPlanar { vertex, euler });
            }
        }
        let faces = rotation.faces();
        let mut face_of = HashMap::with_capacity(rotation.edge_count() * 2);
        for (f, walk) in faces.iter().enumerate() {
            for &d in walk {
                face_of.insert(d, f);
            }
        }
        Ok(PlanarEmbedding { rotation, faces, face_of })
    }

    pub fn rotation(&self) -> &RotationSystem {
        &self.rotation
    }

    pub fn into_rotation(self) -> RotationSystem {
        self.rotation
    }

    pub fn graph(&self) -> Graph {
        self.rotation.graph()
    }

    pub fn faces(&self) -> &[Vec<Dart>] {
        &self.faces
    }

    pub fn face(&self, f: FaceId) -> &[Dart] {
        &self.faces[f]
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Face to the left of `d`, i.e. the walk containing `d`.
    pub fn face_of(&self, d: Dart) -> FaceId {
        self.face_of[&d]
    }

    /// Vertices on the boundary of `f`, in walk order (with repeats).
    pub fn face_vertices(&self, f: FaceId) -> Vec<VertexId> {
        self.faces[f].iter().map(|&d| self.rotation.tail(d)).collect()
    }

    /// Faces incident to `v`.
    pub fn faces_at(&self, v: VertexId) -> BTreeSet<FaceId> {
        self.rotation.rotation(v).iter().map(|&d| self.face_of[&d]).collect()
    }

    /// Smallest face whose boundary contains every vertex of `vs`.
    pub fn common_face(&self, vs: &[VertexId]) -> Option<FaceId> {
        let mut candidates: Option<BTreeSet<FaceId>> = None;
        for &v in vs {
            let here = self.faces_at(v);
            candidates = Some(match candidates {
                None => here,
                Some(c) => c.intersection(&here).copied().collect(),
            });
        }
        candidates.and_then(|c| c.into_iter().next())
    }
}
