//! Drawings as planarized skeletons.
//!
//! A drawing of `G` is a planar embedding of the graph obtained by replacing
//! every crossing with a degree-4 dummy vertex. Each skeleton segment is owned
//! by exactly one edge of `G`; an edge's curve is the dart path through its
//! segments, passing straight through dummies (the dart opposite the one it
//! arrived by).
//!
//! All surgery goes through [`Sketch`], a mutable skeleton that is certified
//! again (Euler check, dummy degrees, curve consistency) by [`Sketch::finish`].

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Edge, EdgeId, EdgeLabel, Graph, VertexId};
use crate::planarity::{Dart, EmbeddingError, PlanarEmbedding, RotationSystem};

/// Dummy vertices get ids at or above this value.
pub const DUMMY_BASE: VertexId = 1 << 32;
/// Fresh skeleton segments get ids at or above this value.
pub const SEGMENT_BASE: EdgeId = 1 << 32;

pub fn is_dummy(v: VertexId) -> bool {
    v >= DUMMY_BASE
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DrawingError {
    #[error("skeleton is not a planar embedding: {0}")]
    Embedding(#[from] EmbeddingError),
    #[error("dummy vertex {0} has degree {1}")]
    DummyDegree(VertexId, usize),
    #[error("dummy vertex {0} does not alternate between two curves")]
    NotAlternating(VertexId),
    #[error("edge {0} has no consistent curve")]
    BrokenCurve(EdgeId),
    #[error("surgery failed: {0}")]
    Surgery(String),
}

/// A crossing between edges `a <= b` at a dummy vertex. `pos_a` and `pos_b`
/// index the dart of each curve that ends at the dummy; for a self-crossing
/// they are the two visits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    pub a: EdgeId,
    pub b: EdgeId,
    pub pos_a: usize,
    pub pos_b: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Drawing {
    pub graph: Graph,
    pub skeleton: RotationSystem,
    /// Skeleton segment to the graph edge it belongs to.
    pub owner: BTreeMap<EdgeId, EdgeId>,
    /// Curve of every graph edge, from `e.u` to `e.v`.
    pub edge_paths: BTreeMap<EdgeId, Vec<Dart>>,
    pub crossings: BTreeMap<VertexId, Crossing>,
    /// Edges inserted into a planar remainder (drawn in a distinct colour).
    #[serde(default)]
    pub e_star: BTreeSet<EdgeId>,
}

impl Drawing {
    /// Crossing-free drawing from a planar rotation of `graph`.
    pub fn planar(graph: &Graph, rotation: &RotationSystem) -> Result<Drawing, DrawingError> {
        Sketch::new(graph.clone(), rotation).finish()
    }

    /// Certifies a drawing given by its planarized skeleton and the owning
    /// edge of every skeleton segment. Degree-2 dummies are smoothed away.
    pub fn from_skeleton(
        graph: Graph,
        skeleton: &RotationSystem,
        owner: &BTreeMap<EdgeId, EdgeId>,
        e_star: BTreeSet<EdgeId>,
    ) -> Result<Drawing, DrawingError> {
        for e in skeleton.edges() {
            if !owner.get(&e.id).is_some_and(|o| graph.contains_edge(*o)) {
                return Err(DrawingError::Surgery(format!("segment {} has no owner", e.id)));
            }
        }
        Sketch::from_parts(graph, skeleton, owner, e_star).finish()
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Number of crossings per unordered edge pair.
    pub fn pair_counts(&self) -> BTreeMap<(EdgeId, EdgeId), usize> {
        let mut out = BTreeMap::new();
        for c in self.crossings.values() {
            *out.entry((c.a, c.b)).or_insert(0) += 1;
        }
        out
    }

    /// Sum of `w(a) * w(b)` over crossings.
    pub fn weighted_crossings(&self, w: impl Fn(EdgeId) -> u64) -> u64 {
        self.crossings.values().map(|c| w(c.a) * w(c.b)).sum()
    }

    pub fn skeleton_embedding(&self) -> Result<PlanarEmbedding, EmbeddingError> {
        PlanarEmbedding::new(self.skeleton.clone())
    }

    /// Rotation of the drawn graph read off at its real vertices.
    pub fn vertex_rotation(&self) -> RotationSystem {
        let order = self
            .graph
            .vertices()
            .map(|v| {
                let darts = self
                    .skeleton
                    .rotation(v)
                    .iter()
                    .map(|d| Dart::leaving(self.graph.edge(self.owner[&d.edge]).expect("owner"), v))
                    .collect();
                (v, darts)
            })
            .collect();
        RotationSystem::new(self.graph.edges().copied(), order).expect("owners cover every edge end once")
    }

    /// True if no edge crosses itself, no two adjacent edges cross and no
    /// pair crosses twice.
    pub fn is_good(&self) -> bool {
        self.pair_counts().iter().all(|(&(a, b), &k)| {
            let (ea, eb) = (self.graph.edge(a).unwrap(), self.graph.edge(b).unwrap());
            a != b && k == 1 && !ea.shares_endpoint(eb)
        })
    }
}

/// Mutable planarized skeleton used for all drawing surgery.
#[derive(Clone, Debug)]
pub(crate) struct Sketch {
    pub(crate) graph: Graph,
    pub(crate) e_star: BTreeSet<EdgeId>,
    segs: BTreeMap<EdgeId, Edge>,
    rot: BTreeMap<VertexId, Vec<Dart>>,
    owner: HashMap<EdgeId, EdgeId>,
    next_dummy: VertexId,
    next_seg: EdgeId,
}

impl Sketch {
    /// Crossing-free sketch; `rotation` must be a rotation of `graph`.
    pub(crate) fn new(graph: Graph, rotation: &RotationSystem) -> Sketch {
        let segs = graph.edges().map(|e| (e.id, *e)).collect();
        let owner = graph.edge_ids().map(|e| (e, e)).collect();
        let mut rot: BTreeMap<VertexId, Vec<Dart>> = rotation.order().clone();
        for v in graph.vertices() {
            rot.entry(v).or_default();
        }
        Sketch { graph, e_star: BTreeSet::new(), segs, rot, owner, next_dummy: DUMMY_BASE, next_seg: SEGMENT_BASE }
    }

    pub(crate) fn from_drawing(d: &Drawing) -> Sketch {
        Sketch::from_parts(d.graph.clone(), &d.skeleton, &d.owner, d.e_star.clone())
    }

    fn from_parts(
        graph: Graph,
        skeleton: &RotationSystem,
        owner: &BTreeMap<EdgeId, EdgeId>,
        e_star: BTreeSet<EdgeId>,
    ) -> Sketch {
        let segs: BTreeMap<EdgeId, Edge> = skeleton.edges().map(|e| (e.id, *e)).collect();
        let next_dummy = skeleton.vertices().filter(|&v| is_dummy(v)).max().map_or(DUMMY_BASE, |v| v + 1);
        let next_seg = segs.keys().copied().filter(|&s| s >= SEGMENT_BASE).max().map_or(SEGMENT_BASE, |s| s + 1);
        Sketch {
            graph,
            e_star,
            segs,
            rot: skeleton.order().clone(),
            owner: owner.iter().map(|(&s, &e)| (s, e)).collect(),
            next_dummy,
            next_seg,
        }
    }

    fn fresh_dummy(&mut self) -> VertexId {
        let v = self.next_dummy;
        self.next_dummy += 1;
        v
    }

    fn fresh_seg(&mut self) -> EdgeId {
        let s = self.next_seg;
        self.next_seg += 1;
        s
    }

    pub(crate) fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.rot.keys().copied()
    }

    pub(crate) fn tail(&self, d: Dart) -> VertexId {
        let e = &self.segs[&d.edge];
        if d.rev {
            e.v
        } else {
            e.u
        }
    }

    pub(crate) fn head(&self, d: Dart) -> VertexId {
        self.tail(d.twin())
    }

    pub(crate) fn owner(&self, d: Dart) -> EdgeId {
        self.owner[&d.edge]
    }

    pub(crate) fn rotation(&self, v: VertexId) -> &[Dart] {
        self.rot.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    fn index(&self, d: Dart) -> usize {
        self.rot[&self.tail(d)].iter().position(|&x| x == d).expect("dart in rotation at its tail")
    }

    pub(crate) fn next(&self, d: Dart) -> Dart {
        let r = &self.rot[&self.tail(d)];
        r[(self.index(d) + 1) % r.len()]
    }

    /// Successor along the face to the left of `d`.
    pub(crate) fn face_next(&self, d: Dart) -> Dart {
        self.next(d.twin())
    }

    fn set_tail(&mut self, d: Dart, v: VertexId) {
        let e = self.segs.get_mut(&d.edge).expect("segment");
        if d.rev {
            e.v = v;
        } else {
            e.u = v;
        }
    }

    /// Darts at `v` whose segment belongs to `edge`.
    pub(crate) fn darts_of(&self, v: VertexId, edge: EdgeId) -> Vec<Dart> {
        self.rotation(v).iter().copied().filter(|d| self.owner(*d) == edge).collect()
    }

    /// Subdivides the segment of `d` (from `a` to `b`) with a new dummy `w`.
    /// Afterwards `d` runs from `a` to `w` and the returned dart from `w` to `b`.
    pub(crate) fn split(&mut self, d: Dart) -> (VertexId, Dart) {
        let b = self.head(d);
        let w = self.fresh_dummy();
        let s = self.fresh_seg();
        let old_twin = d.twin();
        let i = self.index(old_twin);
        self.set_tail(old_twin, w);
        let label = self.segs[&d.edge].label;
        self.segs.insert(s, Edge { id: s, u: w, v: b, label });
        self.owner.insert(s, self.owner[&d.edge]);
        let dn = Dart::new(s, false);
        self.rot.get_mut(&b).expect("head")[i] = dn.twin();
        self.rot.insert(w, vec![old_twin, dn]);
        (w, dn)
    }

    /// New segment from `a` to `b` owned by `edge`, placed immediately before
    /// the given darts (or into an empty rotation).
    pub(crate) fn connect(
        &mut self,
        a: VertexId,
        before_a: Option<Dart>,
        b: VertexId,
        before_b: Option<Dart>,
        edge: EdgeId,
    ) -> Dart {
        let s = self.fresh_seg();
        self.segs.insert(s, Edge { id: s, u: a, v: b, label: EdgeLabel::DummyCrossingSegment });
        self.owner.insert(s, edge);
        let d = Dart::new(s, false);
        for (x, anchor, dart) in [(a, before_a, d), (b, before_b, d.twin())] {
            let pos = anchor.map(|t| self.index(t));
            let r = self.rot.entry(x).or_default();
            match pos {
                Some(i) => r.insert(i, dart),
                None => r.push(dart),
            }
        }
        d
    }

    pub(crate) fn remove_segment(&mut self, s: EdgeId) {
        for d in [Dart::new(s, false), Dart::new(s, true)] {
            let t = self.tail(d);
            if let Some(r) = self.rot.get_mut(&t) {
                r.retain(|&x| x != d);
            }
        }
        self.segs.remove(&s);
        self.owner.remove(&s);
    }

    pub(crate) fn set_owner(&mut self, s: EdgeId, edge: EdgeId) {
        self.owner.insert(s, edge);
    }

    /// Contracts the segment of `d`, merging its head into its tail. The head's
    /// darts replace `d` in the tail's rotation, preserving cyclic order.
    pub(crate) fn contract(&mut self, d: Dart) -> Result<(), DrawingError> {
        let (a, b) = (self.tail(d), self.head(d));
        if a == b {
            return Err(DrawingError::Surgery(format!("segment {} is a loop", d.edge)));
        }
        let rb = self.rot[&b].clone();
        let j = rb.iter().position(|&x| x == d.twin()).expect("twin at head");
        let seq: Vec<Dart> = (1..rb.len()).map(|t| rb[(j + t) % rb.len()]).collect();
        if seq.iter().any(|&x| self.head(x) == a) {
            return Err(DrawingError::Surgery(format!("contracting {} would create a loop", d.edge)));
        }
        let i = self.index(d);
        for &x in &seq {
            self.set_tail(x, a);
        }
        let ra = self.rot.get_mut(&a).expect("tail");
        ra.splice(i..=i, seq);
        self.rot.remove(&b);
        self.segs.remove(&d.edge);
        self.owner.remove(&d.edge);
        Ok(())
    }

    /// Moves two consecutive darts at `v` onto a new dummy vertex.
    pub(crate) fn split_off(&mut self, v: VertexId, first: Dart, second: Dart) -> Result<VertexId, DrawingError> {
        if self.next(first) != second {
            return Err(DrawingError::Surgery(format!("darts at {v} are not consecutive")));
        }
        let w = self.fresh_dummy();
        self.rot.get_mut(&v).expect("vertex").retain(|&x| x != first && x != second);
        self.set_tail(first, w);
        self.set_tail(second, w);
        self.rot.insert(w, vec![first, second]);
        Ok(w)
    }

    /// Exchanges two darts between their tails, each taking the other's
    /// place in the rotation.
    pub(crate) fn swap_darts(&mut self, p: Dart, q: Dart) {
        let (a, b) = (self.tail(p), self.tail(q));
        let (i, j) = (self.index(p), self.index(q));
        self.rot.get_mut(&a).expect("tail")[i] = q;
        self.rot.get_mut(&b).expect("tail")[j] = p;
        self.set_tail(p, b);
        self.set_tail(q, a);
    }

    /// Renames real vertices; ids missing from `map` are kept.
    pub(crate) fn rename_vertices(&mut self, map: &BTreeMap<VertexId, VertexId>) {
        let f = |v: VertexId| *map.get(&v).unwrap_or(&v);
        for e in self.segs.values_mut() {
            e.u = f(e.u);
            e.v = f(e.v);
        }
        self.rot = std::mem::take(&mut self.rot).into_iter().map(|(v, r)| (f(v), r)).collect();
    }

    /// Undoes a subdivision at the real vertex `w`: the segments of `drop`
    /// pass to `keep` and `w` becomes a degree-2 dummy that the next
    /// normalization smooths away. The caller restores the graph edge.
    pub(crate) fn dissolve(&mut self, w: VertexId, keep: EdgeId, drop: EdgeId) {
        for o in self.owner.values_mut().filter(|o| **o == drop) {
            *o = keep;
        }
        let z = self.fresh_dummy();
        self.rename_vertices(&BTreeMap::from([(w, z)]));
    }

    /// Adds all of `other` (dummies and fresh segments renumbered). Real
    /// vertices present in both must be glued by the caller; their rotations
    /// are concatenated here.
    pub(crate) fn absorb(&mut self, other: Sketch) {
        let mut vmap: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        for v in other.rot.keys() {
            if is_dummy(*v) {
                let n = self.fresh_dummy();
                vmap.insert(*v, n);
            }
        }
        let mut smap: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();
        for &s in other.segs.keys() {
            let n = if s >= SEGMENT_BASE || self.segs.contains_key(&s) { self.fresh_seg() } else { s };
            smap.insert(s, n);
        }
        let fv = |v: VertexId| *vmap.get(&v).unwrap_or(&v);
        for (s, e) in &other.segs {
            let id = smap[s];
            self.segs.insert(id, Edge { id, u: fv(e.u), v: fv(e.v), label: e.label });
            self.owner.insert(id, other.owner[s]);
        }
        for (v, r) in other.rot {
            let mapped: Vec<Dart> = r.iter().map(|d| Dart::new(smap[&d.edge], d.rev)).collect();
            self.rot.entry(fv(v)).or_default().extend(mapped);
        }
        for e in other.graph.edges() {
            if !self.graph.contains_edge(e.id) {
                self.graph.insert_edge(*e).expect("fresh edge");
            }
        }
        for v in other.graph.vertices() {
            self.graph.add_vertex(v);
        }
        self.e_star.extend(other.e_star);
    }

    fn smooth(&mut self, w: VertexId) -> Result<(), DrawingError> {
        let r = self.rot[&w].clone();
        let (d1, d2) = (r[0], r[1]);
        if self.owner(d1) != self.owner(d2) {
            return Err(DrawingError::NotAlternating(w));
        }
        if d1.edge == d2.edge {
            // closed loop through w alone
            self.segs.remove(&d1.edge);
            self.owner.remove(&d1.edge);
            self.rot.remove(&w);
            return Ok(());
        }
        let (a, b) = (self.head(d1), self.head(d2));
        if a == b {
            if !is_dummy(a) {
                return Err(DrawingError::BrokenCurve(self.owner(d1)));
            }
            // a 2-cycle w-a-w of one curve bounds nothing; drop it
            self.remove_segment(d1.edge);
            self.remove_segment(d2.edge);
            self.rot.remove(&w);
            return Ok(());
        }
        let j = self.index(d2.twin());
        self.set_tail(d1, b);
        self.rot.get_mut(&b).expect("head")[j] = d1;
        self.segs.remove(&d2.edge);
        self.owner.remove(&d2.edge);
        self.rot.remove(&w);
        Ok(())
    }

    /// Smooths degree-2 dummies and drops isolated ones until stable.
    pub(crate) fn normalize(&mut self) -> Result<(), DrawingError> {
        loop {
            let mut changed = false;
            let dummies: Vec<VertexId> = self.rot.range(DUMMY_BASE..).map(|(v, _)| *v).collect();
            for w in dummies {
                let Some(r) = self.rot.get(&w) else { continue };
                match r.len() {
                    0 => {
                        self.rot.remove(&w);
                        changed = true;
                    }
                    2 => {
                        self.smooth(w)?;
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return Ok(());
            }
        }
    }

    /// Curve of every graph edge from `e.u` to `e.v`.
    pub(crate) fn paths(&self) -> Result<BTreeMap<EdgeId, Vec<Dart>>, DrawingError> {
        self.graph.edges().map(|e| Ok((e.id, self.curve(e)?))).collect()
    }

    fn curve(&self, e: &Edge) -> Result<Vec<Dart>, DrawingError> {
        let start = self.darts_of(e.u, e.id);
        if start.len() != 1 {
            return Err(DrawingError::BrokenCurve(e.id));
        }
        let mut path = vec![start[0]];
        let mut d = start[0];
        loop {
            let h = self.head(d);
            if !is_dummy(h) {
                if h != e.v {
                    return Err(DrawingError::BrokenCurve(e.id));
                }
                return Ok(path);
            }
            let r = &self.rot[&h];
            if r.len() != 4 || path.len() > self.segs.len() {
                return Err(DrawingError::BrokenCurve(e.id));
            }
            let i = r.iter().position(|&x| x == d.twin()).expect("twin at head");
            d = r[(i + 2) % 4];
            if self.owner(d) != e.id {
                return Err(DrawingError::BrokenCurve(e.id));
            }
            path.push(d);
        }
    }

    /// Reverses every rotation: the mirror image of the drawing.
    pub(crate) fn mirror(&mut self) {
        for r in self.rot.values_mut() {
            r.reverse();
        }
    }

    /// Draws `copy` (already in `graph`, same ends as `rep`) right beside the
    /// curve of `rep`, on the side of the face corners `(twin(d), next(twin(d)))`.
    /// The copy crosses exactly the curves that `rep` crosses, once each.
    pub(crate) fn double_curve(&mut self, rep: EdgeId, copy: EdgeId) -> Result<(), DrawingError> {
        let e = *self.graph.edge(rep).ok_or(DrawingError::BrokenCurve(rep))?;
        let path = self.curve(&e)?;
        let mut prev = e.u;
        let mut anchor = Some(path[0]);
        for d in &path[..path.len() - 1] {
            // the crossing curve's dart on the copy's side, subdivided next to the dummy
            let side = self.next(d.twin());
            let (w, beyond) = self.split(side);
            self.connect(prev, anchor, w, Some(beyond), copy);
            prev = w;
            anchor = None;
        }
        let last = path[path.len() - 1].twin();
        let at_end = self.next(last);
        self.connect(prev, anchor, e.v, Some(at_end), copy);
        Ok(())
    }

    pub(crate) fn rotation_system(&self) -> Result<RotationSystem, EmbeddingError> {
        RotationSystem::new(self.segs.values().copied(), self.rot.clone())
    }

    pub(crate) fn embedding(&self) -> Result<PlanarEmbedding, EmbeddingError> {
        PlanarEmbedding::new(self.rotation_system()?)
    }

    /// Normalizes, certifies and converts into a [`Drawing`].
    pub(crate) fn finish(mut self) -> Result<Drawing, DrawingError> {
        self.normalize()?;
        for (&v, r) in self.rot.range(DUMMY_BASE..) {
            if r.len() != 4 {
                return Err(DrawingError::DummyDegree(v, r.len()));
            }
        }
        let mut pieces: HashMap<EdgeId, usize> = HashMap::new();
        for o in self.owner.values() {
            *pieces.entry(*o).or_default() += 1;
        }
        // an uncrossed edge is drawn by one segment carrying the edge's own id
        let renames: Vec<(EdgeId, EdgeId)> = self
            .owner
            .iter()
            .filter(|&(&s, &o)| s != o && pieces[&o] == 1 && !self.segs.contains_key(&o))
            .map(|(&s, &o)| (s, o))
            .collect();
        for (s, o) in renames {
            let mut e = self.segs.remove(&s).expect("segment");
            e.id = o;
            self.segs.insert(o, e);
            self.owner.remove(&s);
            self.owner.insert(o, o);
            for r in self.rot.values_mut() {
                for d in r.iter_mut().filter(|d| d.edge == s) {
                    d.edge = o;
                }
            }
        }
        for e in self.segs.values_mut() {
            let o = self.owner[&e.id];
            e.label = if pieces[&o] == 1 { self.graph.edge(o).map_or(e.label, |g| g.label) } else { EdgeLabel::DummyCrossingSegment };
        }
        let skeleton = self.rotation_system()?;
        PlanarEmbedding::new(skeleton.clone())?;
        let edge_paths = self.paths()?;
        let crossings = crossing_registry(&skeleton, &self.owner, &edge_paths)?;
        Ok(Drawing {
            graph: self.graph,
            skeleton,
            owner: self.owner.into_iter().collect(),
            edge_paths,
            crossings,
            e_star: self.e_star,
        })
    }

    /// Removes the crossing at dummy `z`, where the curve arrives from `x`
    /// by `d`, by rerouting the other curve around `x` across every other dart
    /// at `x`. Each such dart gains one crossing.
    fn reroute_around(&mut self, d: Dart) -> Result<(), DrawingError> {
        let x = self.tail(d);
        let z = self.head(d);
        let rz = self.rot[&z].clone();
        if rz.len() != 4 {
            return Err(DrawingError::DummyDegree(z, rz.len()));
        }
        let j = rz.iter().position(|&t| t == d.twin()).expect("twin at head");
        let (fa, fb) = (rz[(j + 1) % 4], rz[(j + 3) % 4]);
        let curve = self.owner(d);
        if self.owner(fa) == curve {
            return Err(DrawingError::Surgery(format!("curve {curve} crosses itself at {z}")));
        }
        // the other curve reaches z straight from x: drop that stub so the
        // curve leaves x through its far side once z is merged into x
        if let Some(stub) = [fa, fb].into_iter().find(|&f| self.head(f) == x) {
            self.remove_segment(stub.edge);
            return Ok(());
        }
        let rx = self.rot[&x].clone();
        let i = rx.iter().position(|&t| t == d).expect("d at x");
        let bundle: Vec<Dart> = (1..rx.len()).map(|t| rx[(i + t) % rx.len()]).collect();
        self.rot.get_mut(&z).expect("z").retain(|&t| t != fa && t != fb);
        if bundle.is_empty() {
            let w = self.fresh_dummy();
            self.set_tail(fa, w);
            self.set_tail(fb, w);
            self.rot.insert(w, vec![fa, fb]);
            return Ok(());
        }
        let other = self.owner(fa);
        let k = bundle.len();
        let mut zs = Vec::with_capacity(k);
        for &b in &bundle {
            let (zi, dn) = self.split(b);
            zs.push((zi, b.twin(), dn));
        }
        let mut chain: Vec<Dart> = Vec::with_capacity(k.saturating_sub(1));
        for t in 0..k.saturating_sub(1) {
            let s = self.fresh_seg();
            self.segs.insert(s, Edge { id: s, u: zs[t].0, v: zs[t + 1].0, label: EdgeLabel::DummyCrossingSegment });
            self.owner.insert(s, other);
            chain.push(Dart::new(s, false));
        }
        self.set_tail(fb, zs[0].0);
        self.set_tail(fa, zs[k - 1].0);
        for (t, &(zi, to_x, to_y)) in zs.iter().enumerate() {
            let to_next = if t + 1 < k { chain[t] } else { fa };
            let to_prev = if t > 0 { chain[t - 1].twin() } else { fb };
            self.rot.insert(zi, vec![to_y, to_next, to_x, to_prev]);
        }
        Ok(())
    }

    /// Contracts the curve of `curve` starting at `from` until it reaches a
    /// real vertex. Crossings on the way are rerouted around `from`. Returns
    /// the surviving vertex: `from` or, with `keep_target`, the far end.
    pub(crate) fn absorb_along(&mut self, from: VertexId, curve: EdgeId, keep_target: bool) -> Result<VertexId, DrawingError> {
        loop {
            let ds = self.darts_of(from, curve);
            if ds.len() != 1 {
                return Err(DrawingError::Surgery(format!("curve {curve} leaves {from} {} times", ds.len())));
            }
            let d = ds[0];
            let z = self.head(d);
            if is_dummy(z) && self.rot[&z].len() == 4 {
                self.reroute_around(d)?;
                self.contract(d)?;
            } else if is_dummy(z) {
                // a degree-2 joint inside the curve
                self.contract(d)?;
            } else if keep_target {
                self.contract(d.twin())?;
                return Ok(z);
            } else {
                self.contract(d)?;
                return Ok(from);
            }
        }
    }
}

fn crossing_registry(
    skeleton: &RotationSystem,
    owner: &HashMap<EdgeId, EdgeId>,
    paths: &BTreeMap<EdgeId, Vec<Dart>>,
) -> Result<BTreeMap<VertexId, Crossing>, DrawingError> {
    let mut visits: HashMap<VertexId, Vec<(EdgeId, usize)>> = HashMap::new();
    for (&e, path) in paths {
        for (i, &d) in path[..path.len() - 1].iter().enumerate() {
            visits.entry(skeleton.head(d)).or_default().push((e, i));
        }
    }
    let mut out = BTreeMap::new();
    for (&w, r) in skeleton.order().range(DUMMY_BASE..) {
        let o: Vec<EdgeId> = r.iter().map(|d| owner[&d.edge]).collect();
        if o.len() != 4 || o[0] != o[2] || o[1] != o[3] {
            return Err(DrawingError::NotAlternating(w));
        }
        let mut seen = visits.remove(&w).unwrap_or_default();
        if seen.len() != 2 {
            return Err(DrawingError::NotAlternating(w));
        }
        seen.sort_unstable();
        let ((a, pos_a), (b, pos_b)) = (seen[0], seen[1]);
        out.insert(w, Crossing { a, b, pos_a, pos_b });
    }
    Ok(out)
}
