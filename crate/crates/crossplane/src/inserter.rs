//! Edge insertion into fixed embeddings and crossing clean-up.
//!
//! `insert_edge` finds a minimum-crossing route for a new edge through the
//! dual of a fixed planar embedding. Ties between shortest routes are broken
//! by the lexicographically smallest face sequence, then by the smallest
//! crossed edge id. `insert_all` inserts a set of edges one at a time in
//! ascending id order; every inserted segment is crossable at unit cost by
//! later edges.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::drawing::{is_dummy, Drawing, DrawingError, Sketch};
use crate::graph::{Edge, EdgeId, VertexId};
use crate::planarity::{Dart, FaceId, PlanarEmbedding};

pub use crate::drawing::Crossing;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InsertError {
    #[error("edge endpoints coincide at vertex {0}")]
    SameEndpoints(VertexId),
    #[error("vertex {0} is not in the embedding")]
    UnknownVertex(VertexId),
    #[error("edge {0} is already drawn")]
    AlreadyPresent(EdgeId),
    #[error(transparent)]
    Drawing(#[from] DrawingError),
}

/// Minimum-crossing route of a new edge `u -> v` through a fixed embedding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InsertionRoute {
    pub u: VertexId,
    pub v: VertexId,
    /// Faces traversed, starting at a face incident to `u`. Empty when `u`
    /// and `v` lie in different components (no crossing is needed).
    pub faces: Vec<FaceId>,
    /// For each step, the crossed dart as seen from the face being left.
    pub crossed: Vec<Dart>,
}

impl InsertionRoute {
    pub fn cost(&self) -> usize {
        self.crossed.len()
    }

    pub fn crossed_edges(&self) -> Vec<EdgeId> {
        self.crossed.iter().map(|d| d.edge).collect()
    }
}

/// Shortest route in the dual from the faces at `u` to the faces at `v`.
pub fn insert_edge(emb: &PlanarEmbedding, u: VertexId, v: VertexId) -> Result<InsertionRoute, InsertError> {
    if u == v {
        return Err(InsertError::SameEndpoints(u));
    }
    for x in [u, v] {
        if !emb.rotation().contains_vertex(x) {
            return Err(InsertError::UnknownVertex(x));
        }
    }
    let sources = emb.faces_at(u);
    let targets = emb.faces_at(v);
    if sources.is_empty() || targets.is_empty() {
        return Ok(InsertionRoute { u, v, faces: vec![], crossed: vec![] });
    }
    // distance to the target set
    let mut dist = vec![usize::MAX; emb.face_count()];
    let mut queue = VecDeque::new();
    for &f in &targets {
        dist[f] = 0;
        queue.push_back(f);
    }
    while let Some(f) = queue.pop_front() {
        for &d in emb.face(f) {
            let g = emb.face_of(d.twin());
            if dist[g] == usize::MAX {
                dist[g] = dist[f] + 1;
                queue.push_back(g);
            }
        }
    }
    let Some(&start) = sources.iter().filter(|&&f| dist[f] != usize::MAX).min_by_key(|&&f| (dist[f], f)) else {
        // different components
        return Ok(InsertionRoute { u, v, faces: vec![], crossed: vec![] });
    };
    let mut faces = vec![start];
    let mut crossed = Vec::new();
    let mut f = start;
    while dist[f] > 0 {
        let (g, d) = emb
            .face(f)
            .iter()
            .map(|&d| (emb.face_of(d.twin()), d))
            .filter(|&(g, _)| dist[g] + 1 == dist[f])
            .min_by_key(|&(g, d)| (g, d))
            .expect("distance decreases along some dual edge");
        crossed.push(d);
        faces.push(g);
        f = g;
    }
    Ok(InsertionRoute { u, v, faces, crossed })
}

/// Draws `edge` into the sketch along `route`, which must have been computed
/// on the sketch's current embedding.
pub(crate) fn realize_route(sk: &mut Sketch, emb: &PlanarEmbedding, route: &InsertionRoute, edge: EdgeId) {
    let (u, v) = (route.u, route.v);
    if route.faces.is_empty() {
        let du = sk.rotation(u).first().copied();
        let dv = sk.rotation(v).first().copied();
        sk.connect(u, du, v, dv, edge);
        return;
    }
    let start = emb.face(route.faces[0]).iter().copied().find(|&d| emb.rotation().tail(d) == u).expect("u on first face");
    let (mut at, mut corner) = (u, start);
    for &c in &route.crossed {
        let (w, dn) = sk.split(c);
        sk.connect(at, Some(corner), w, Some(dn), edge);
        at = w;
        corner = c.twin();
    }
    // walk the current face from the corner until reaching v
    let mut d = corner;
    let end = loop {
        if sk.tail(d) == v {
            break d;
        }
        d = sk.face_next(d);
        assert!(d != corner, "v must lie on the final face");
    };
    sk.connect(at, Some(corner), v, Some(end), edge);
}

/// Result of inserting a set of edges.
#[derive(Clone, Debug)]
pub struct Insertion {
    pub drawing: Drawing,
    /// Crossings paid by each inserted edge at its insertion time.
    pub costs: Vec<(EdgeId, usize)>,
}

/// Inserts `edges` one by one (ascending id) into the embedding of a planar
/// graph. The embedded edges keep their labels from the embedding.
pub fn insert_all(emb: &PlanarEmbedding, edges: &[Edge]) -> Result<Insertion, InsertError> {
    let mut sk = Sketch::new(emb.graph(), emb.rotation());
    let mut sorted = edges.to_vec();
    sorted.sort_by_key(|e| e.id);
    let mut costs = Vec::with_capacity(sorted.len());
    for e in sorted {
        if sk.graph.contains_edge(e.id) {
            return Err(InsertError::AlreadyPresent(e.id));
        }
        let current = sk.embedding().map_err(DrawingError::from)?;
        let route = insert_edge(&current, e.u, e.v)?;
        sk.graph.insert_edge(e).map_err(|_| InsertError::AlreadyPresent(e.id))?;
        sk.e_star.insert(e.id);
        realize_route(&mut sk, &current, &route, e.id);
        costs.push((e.id, route.cost()));
    }
    Ok(Insertion { drawing: sk.finish()?, costs })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct UncrossOptions {
    /// Also remove crossings between edges that share an endpoint.
    pub adjacent: bool,
}

/// Removes self-crossings and repeated crossings of the same pair.
pub fn uncross(d: &Drawing) -> Result<Drawing, DrawingError> {
    uncross_with(d, UncrossOptions::default())
}

pub fn uncross_with(d: &Drawing, opts: UncrossOptions) -> Result<Drawing, DrawingError> {
    let mut sk = Sketch::from_drawing(d);
    uncross_sketch(&mut sk, opts)?;
    sk.finish()
}

pub(crate) fn uncross_sketch(sk: &mut Sketch, opts: UncrossOptions) -> Result<(), DrawingError> {
    loop {
        sk.normalize()?;
        let paths = sk.paths()?;
        if remove_self_loop(sk, &paths) {
            continue;
        }
        if let Some(step) = find_double_crossing(sk, &paths) {
            apply_swap(sk, step)?;
            continue;
        }
        if opts.adjacent {
            if let Some(step) = find_adjacent_crossing(sk, &paths) {
                apply_swap(sk, step)?;
                continue;
            }
        }
        return Ok(());
    }
}

/// Deletes the loop of the first curve that visits a dummy twice.
fn remove_self_loop(sk: &mut Sketch, paths: &BTreeMap<EdgeId, Vec<Dart>>) -> bool {
    for path in paths.values() {
        let mut first: BTreeMap<VertexId, usize> = BTreeMap::new();
        for (i, &d) in path.iter().enumerate() {
            let h = sk.head(d);
            if !is_dummy(h) {
                continue;
            }
            if let Some(&i0) = first.get(&h) {
                for s in &path[i0 + 1..=i] {
                    sk.remove_segment(s.edge);
                }
                return true;
            }
            first.insert(h, i);
        }
    }
    false
}

/// Ownership swap of two arcs plus the dummy splits that reconnect them.
struct Swap {
    arc_a: Vec<Dart>,
    arc_b: Vec<Dart>,
    owner_a: EdgeId,
    owner_b: EdgeId,
    /// Dummy and the two darts to move onto a new vertex.
    splits: Vec<(VertexId, Dart, Dart)>,
}

fn apply_swap(sk: &mut Sketch, step: Swap) -> Result<(), DrawingError> {
    for d in &step.arc_a {
        sk.set_owner(d.edge, step.owner_b);
    }
    for d in &step.arc_b {
        sk.set_owner(d.edge, step.owner_a);
    }
    for (w, x, y) in step.splits {
        if sk.next(x) == y {
            sk.split_off(w, x, y)?;
        } else {
            sk.split_off(w, y, x)?;
        }
    }
    Ok(())
}

/// Index `i` with `head(path[i]) == w`.
fn visit(sk: &Sketch, path: &[Dart], w: VertexId) -> usize {
    path.iter().position(|&d| sk.head(d) == w).expect("curve visits dummy")
}

fn strands(sk: &Sketch, w: VertexId) -> (EdgeId, EdgeId) {
    let r = sk.rotation(w);
    let (a, b) = (sk.owner(r[0]), sk.owner(r[1]));
    (a.min(b), a.max(b))
}

fn find_double_crossing(sk: &Sketch, paths: &BTreeMap<EdgeId, Vec<Dart>>) -> Option<Swap> {
    let mut by_pair: BTreeMap<(EdgeId, EdgeId), Vec<VertexId>> = BTreeMap::new();
    for w in sk.vertices().filter(|&w| is_dummy(w)) {
        by_pair.entry(strands(sk, w)).or_default().push(w);
    }
    let (&(a, b), _) = by_pair.iter().find(|(_, ws)| ws.len() >= 2)?;
    let (pa, pb) = (&paths[&a], &paths[&b]);
    let on_a: Vec<usize> = (0..pa.len() - 1).filter(|&i| strands(sk, sk.head(pa[i])) == (a, b)).collect();
    let (i, j) = (on_a[0], on_a[1]);
    let (w1, w2) = (sk.head(pa[i]), sk.head(pa[j]));
    let (k, l) = (visit(sk, pb, w1), visit(sk, pb, w2));
    let arc_a = pa[i + 1..=j].to_vec();
    // darts of B at w1 and w2 that point away from the arc between them
    let (arc_b, b_other, b_after) =
        if k < l { (pb[k + 1..=l].to_vec(), pb[k].twin(), pb[l + 1]) } else { (pb[l + 1..=k].to_vec(), pb[k + 1], pb[l].twin()) };
    let splits = vec![(w1, pa[i + 1], b_other), (w2, pa[j].twin(), b_after)];
    Some(Swap { arc_a, arc_b, owner_a: a, owner_b: b, splits })
}

fn find_adjacent_crossing(sk: &Sketch, paths: &BTreeMap<EdgeId, Vec<Dart>>) -> Option<Swap> {
    let mut candidates: Vec<((EdgeId, EdgeId), VertexId)> = sk
        .vertices()
        .filter(|&w| is_dummy(w))
        .map(|w| (strands(sk, w), w))
        .filter(|&((a, b), _)| {
            let (ea, eb) = (sk.graph.edge(a).unwrap(), sk.graph.edge(b).unwrap());
            a != b && ea.shares_endpoint(eb)
        })
        .collect();
    candidates.sort_unstable();
    let &((a, b), w) = candidates.first()?;
    let (ea, eb) = (*sk.graph.edge(a).unwrap(), *sk.graph.edge(b).unwrap());
    let x = if eb.touches(ea.u) { ea.u } else { ea.v };
    // arcs from the shared endpoint to w, and the darts at w
    let side = |e: &Edge, path: &[Dart]| -> (Vec<Dart>, Dart, Dart) {
        let i = visit(sk, path, w);
        if e.u == x {
            (path[..=i].to_vec(), path[i].twin(), path[i + 1])
        } else {
            (path[i + 1..].to_vec(), path[i + 1], path[i].twin())
        }
    };
    let (arc_a, a_toward_x, _) = side(&ea, &paths[&a]);
    let (arc_b, _, b_away) = side(&eb, &paths[&b]);
    Some(Swap { arc_a, arc_b, owner_a: a, owner_b: b, splits: vec![(w, a_toward_x, b_away)] })
}
