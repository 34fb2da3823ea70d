//! Undirected multigraphs with stable vertex and edge identifiers.
//!
//! Vertex and edge ids are arbitrary `usize` values and may be sparse, so a
//! subgraph can keep the ids of its parent. Self-loops are rejected; parallel
//! edges are allowed.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("edge id {0} already in use")]
    DuplicateEdge(EdgeId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
}

/// Provenance of an edge. Everything except `Original` is introduced by a
/// transformation and must be gone from final drawings.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeLabel {
    #[default]
    Original,
    ArtificialType1,
    ArtificialType2,
    GadgetType1,
    GadgetType2,
    DummyCrossingSegment,
}

impl EdgeLabel {
    pub fn is_artificial(self) -> bool {
        matches!(self, EdgeLabel::ArtificialType1 | EdgeLabel::ArtificialType2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub id: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
    #[serde(default)]
    pub label: EdgeLabel,
}

impl Edge {
    pub fn other(&self, x: VertexId) -> VertexId {
        if x == self.u {
            self.v
        } else {
            debug_assert_eq!(x, self.v, "vertex {x} not on edge {}", self.id);
            self.u
        }
    }

    pub fn pair(&self) -> VertexPair {
        VertexPair::new(self.u, self.v)
    }

    pub fn touches(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }

    pub fn shares_endpoint(&self, other: &Edge) -> bool {
        self.touches(other.u) || self.touches(other.v)
    }
}

/// Unordered vertex pair, stored with the smaller id first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexPair(pub VertexId, pub VertexId);

impl VertexPair {
    pub fn new(a: VertexId, b: VertexId) -> Self {
        if a <= b {
            VertexPair(a, b)
        } else {
            VertexPair(b, a)
        }
    }

    pub fn contains(&self, x: VertexId) -> bool {
        self.0 == x || self.1 == x
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Graph {
    adj: BTreeMap<VertexId, Vec<EdgeId>>,
    edges: BTreeMap<EdgeId, Edge>,
    next_edge: EdgeId,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph on vertices `0..n` with no edges.
    pub fn with_vertices(n: usize) -> Self {
        let mut g = Self::new();
        for v in 0..n {
            g.add_vertex(v);
        }
        g
    }

    /// Builds a graph from endpoint pairs; edge `i` gets id `i`.
    pub fn from_pairs(pairs: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let mut g = Self::new();
        for &(u, v) in pairs {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: VertexId) {
        self.adj.entry(v).or_default();
    }

    /// Adds an `Original` edge with the next free id.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId, GraphError> {
        self.add_labeled_edge(u, v, EdgeLabel::Original)
    }

    pub fn add_labeled_edge(&mut self, u: VertexId, v: VertexId, label: EdgeLabel) -> Result<EdgeId, GraphError> {
        let id = self.next_edge;
        self.insert_edge(Edge { id, u, v, label })?;
        Ok(id)
    }

    /// Inserts an edge with a caller-chosen id. Missing endpoints are created.
    pub fn insert_edge(&mut self, e: Edge) -> Result<(), GraphError> {
        if e.u == e.v {
            return Err(GraphError::SelfLoop(e.u));
        }
        if self.edges.contains_key(&e.id) {
            return Err(GraphError::DuplicateEdge(e.id));
        }
        self.adj.entry(e.u).or_default().push(e.id);
        self.adj.entry(e.v).or_default().push(e.id);
        self.edges.insert(e.id, e);
        self.next_edge = self.next_edge.max(e.id + 1);
        Ok(())
    }

    pub fn remove_edge(&mut self, id: EdgeId) -> Option<Edge> {
        let e = self.edges.remove(&id)?;
        for x in [e.u, e.v] {
            if let Some(list) = self.adj.get_mut(&x) {
                list.retain(|&f| f != id);
            }
        }
        Some(e)
    }

    /// Removes a vertex and all incident edges.
    pub fn remove_vertex(&mut self, v: VertexId) {
        if let Some(list) = self.adj.get(&v).cloned() {
            for e in list {
                self.remove_edge(e);
            }
        }
        self.adj.remove(&v);
    }

    pub fn set_label(&mut self, id: EdgeId, label: EdgeLabel) -> Result<(), GraphError> {
        let e = self.edges.get_mut(&id).ok_or(GraphError::UnknownEdge(id))?;
        e.label = label;
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Vertices in ascending id order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.keys().copied()
    }

    /// Edges in ascending id order.
    pub fn edges(&self) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.values()
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.keys().copied()
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edges.get(&id)
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn contains_edge(&self, id: EdgeId) -> bool {
        self.edges.contains_key(&id)
    }

    /// Incident edge ids in insertion order.
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        self.adj.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incident(v).len()
    }

    /// Neighbours with multiplicity, in incidence order.
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.incident(v).iter().map(move |e| self.edges[e].other(v))
    }

    pub fn max_degree(&self) -> usize {
        self.adj.values().map(Vec::len).max().unwrap_or(0)
    }

    /// One past the largest vertex id.
    pub fn next_vertex_id(&self) -> VertexId {
        self.adj.keys().next_back().map_or(0, |v| v + 1)
    }

    /// One past the largest edge id ever inserted.
    pub fn next_edge_id(&self) -> EdgeId {
        self.next_edge
    }

    /// Edges between `a` and `b`, in ascending id order.
    pub fn edges_between(&self, a: VertexId, b: VertexId) -> Vec<EdgeId> {
        let mut out: Vec<EdgeId> = self
            .incident(a)
            .iter()
            .copied()
            .filter(|e| self.edges[e].other(a) == b)
            .collect();
        out.sort_unstable();
        out
    }

    pub fn has_edge_between(&self, a: VertexId, b: VertexId) -> bool {
        self.incident(a).iter().any(|e| self.edges[e].other(a) == b)
    }

    /// Classes of mutually parallel edges, keyed by endpoint pair.
    pub fn parallel_classes(&self) -> BTreeMap<VertexPair, Vec<EdgeId>> {
        let mut classes: BTreeMap<VertexPair, Vec<EdgeId>> = BTreeMap::new();
        for e in self.edges.values() {
            classes.entry(e.pair()).or_default().push(e.id);
        }
        classes
    }

    pub fn is_simple(&self) -> bool {
        self.parallel_classes().values().all(|c| c.len() == 1)
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Connected components as vertex sets, ordered by smallest vertex.
    pub fn components(&self) -> Vec<BTreeSet<VertexId>> {
        self.components_avoiding(&HashSet::new())
    }

    /// Connected components of the graph with `removed` deleted.
    pub fn components_avoiding(&self, removed: &HashSet<VertexId>) -> Vec<BTreeSet<VertexId>> {
        let mut seen: HashSet<VertexId> = HashSet::new();
        let mut out = Vec::new();
        for s in self.vertices() {
            if removed.contains(&s) || !seen.insert(s) {
                continue;
            }
            let mut comp = BTreeSet::from([s]);
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for y in self.neighbors(x) {
                    if !removed.contains(&y) && seen.insert(y) {
                        comp.insert(y);
                        queue.push_back(y);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Subgraph induced by `vs`; edge ids are preserved.
    pub fn induced_subgraph(&self, vs: &BTreeSet<VertexId>) -> Graph {
        let mut g = Graph { next_edge: self.next_edge, ..Graph::default() };
        for &v in vs {
            if self.contains_vertex(v) {
                g.add_vertex(v);
            }
        }
        for e in self.edges.values() {
            if vs.contains(&e.u) && vs.contains(&e.v) {
                g.insert_edge(*e).expect("edge ids unique");
            }
        }
        g
    }

    /// Subgraph formed by the given edges and their endpoints.
    pub fn edge_subgraph<'a>(&self, ids: impl IntoIterator<Item = &'a EdgeId>) -> Graph {
        let mut g = Graph { next_edge: self.next_edge, ..Graph::default() };
        for id in ids {
            if let Some(e) = self.edges.get(id) {
                g.insert_edge(*e).expect("edge ids unique");
            }
        }
        g
    }

    /// Copy with the given edges removed; all vertices are kept.
    pub fn without_edges<'a>(&self, ids: impl IntoIterator<Item = &'a EdgeId>) -> Graph {
        let mut g = self.clone();
        for id in ids {
            g.remove_edge(*id);
        }
        g
    }

    /// Shortest path by edge count from `s` to `t` avoiding `blocked`
    /// vertices (other than `s` and `t`) and `banned` edges. Neighbours are
    /// explored in ascending id order.
    pub fn bfs_path(
        &self,
        s: VertexId,
        t: VertexId,
        blocked: &HashSet<VertexId>,
        banned: &HashSet<EdgeId>,
    ) -> Option<Vec<VertexId>> {
        let mut prev: HashMap<VertexId, VertexId> = HashMap::new();
        let mut queue = VecDeque::from([s]);
        prev.insert(s, s);
        while let Some(x) = queue.pop_front() {
            if x == t {
                let mut path = vec![t];
                let mut cur = t;
                while cur != s {
                    cur = prev[&cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            let mut next: Vec<VertexId> = self
                .incident(x)
                .iter()
                .filter(|e| !banned.contains(e))
                .map(|e| self.edges[e].other(x))
                .filter(|y| *y == t || !blocked.contains(y))
                .collect();
            next.sort_unstable();
            for y in next {
                if let std::collections::hash_map::Entry::Vacant(slot) = prev.entry(y) {
                    slot.insert(x);
                    queue.push_back(y);
                }
            }
        }
        None
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::with_vertices(n);
        for a in 0..n {
            for b in a + 1..n {
                g.add_edge(a, b).expect("distinct endpoints");
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Graph {
        let mut g = Graph::with_vertices(n);
        for a in 0..n {
            g.add_edge(a, (a + 1) % n).expect("n >= 3");
        }
        g
    }

    pub fn path(n: usize) -> Graph {
        let mut g = Graph::with_vertices(n);
        for a in 1..n {
            g.add_edge(a - 1, a).expect("distinct endpoints");
        }
        g
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut g = Graph::with_vertices(a + b);
        for x in 0..a {
            for y in a..a + b {
                g.add_edge(x, y).expect("distinct endpoints");
            }
        }
        g
    }

    pub fn petersen() -> Graph {
        let mut g = Graph::with_vertices(10);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5).unwrap();
            g.add_edge(i, i + 5).unwrap();
            g.add_edge(5 + i, 5 + (i + 2) % 5).unwrap();
        }
        g
    }

    /// `rows x cols` grid; vertex `(r, c)` has id `r * cols + c`.
    pub fn grid(rows: usize, cols: usize) -> Graph {
        let mut g = Graph::with_vertices(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let v = r * cols + c;
                if c + 1 < cols {
                    g.add_edge(v, v + 1).unwrap();
                }
                if r + 1 < rows {
                    g.add_edge(v, v + cols).unwrap();
                }
            }
        }
        g
    }

    /// Wheel with hub `0` and rim `1..=n`.
    pub fn wheel(n: usize) -> Graph {
        let mut g = Graph::with_vertices(n + 1);
        for i in 1..=n {
            g.add_edge(0, i).unwrap();
            g.add_edge(i, i % n + 1).unwrap();
        }
        g
    }

    /// `d`-dimensional hypercube.
    pub fn hypercube(d: u32) -> Graph {
        let n = 1usize << d;
        let mut g = Graph::with_vertices(n);
        for v in 0..n {
            for bit in 0..d {
                let w = v ^ (1 << bit);
                if v < w {
                    g.add_edge(v, w).unwrap();
                }
            }
        }
        g
    }
}

/// Result of subdividing parallel edges.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub graph: Graph,
    /// Original edge id to the edge ids replacing it, ordered from `e.u` to `e.v`.
    pub paths: BTreeMap<EdgeId, Vec<EdgeId>>,
    /// Subdivision vertex to the original edge it splits.
    pub subdivided: BTreeMap<VertexId, EdgeId>,
}

/// Replaces every edge of each parallel class of size at least two by a path
/// of length two. The first half keeps the original id and label.
pub fn subdivide_parallel_edges(g: &Graph) -> Subdivision {
    let mut out = g.clone();
    let mut paths: BTreeMap<EdgeId, Vec<EdgeId>> = g.edge_ids().map(|e| (e, vec![e])).collect();
    let mut subdivided = BTreeMap::new();
    let mut next_v = g.next_vertex_id();
    for class in g.parallel_classes().into_values().filter(|c| c.len() >= 2) {
        for id in class {
            let e = *g.edge(id).expect("class edge");
            out.remove_edge(id);
            let w = next_v;
            next_v += 1;
            out.insert_edge(Edge { id, u: e.u, v: w, label: e.label }).expect("fresh");
            let second = out.add_labeled_edge(w, e.v, e.label).expect("fresh");
            paths.insert(id, vec![id, second]);
            subdivided.insert(w, id);
        }
    }
    Subdivision { graph: out, paths, subdivided }
}

/// A maximal 2-connected piece (or bridge, or isolated vertex) of a graph.
#[derive(Clone, Debug)]
pub struct BiconnectedComponent {
    pub graph: Graph,
    /// Cut vertices of the whole graph that lie in this component.
    pub cut_vertices: BTreeSet<VertexId>,
}

/// Edge classes of the biconnected components plus the cut vertices.
/// Classes are in discovery order of an iterative DFS from ascending roots.
pub fn biconnected_edge_classes(g: &Graph) -> (Vec<Vec<EdgeId>>, BTreeSet<VertexId>) {
    struct Frame {
        v: VertexId,
        parent_edge: Option<EdgeId>,
        next: usize,
    }
    let mut disc: HashMap<VertexId, usize> = HashMap::new();
    let mut low: HashMap<VertexId, usize> = HashMap::new();
    let mut time = 0;
    let mut classes = Vec::new();
    let mut cuts = BTreeSet::new();
    let mut edge_stack: Vec<EdgeId> = Vec::new();
    for root in g.vertices() {
        if disc.contains_key(&root) || g.degree(root) == 0 {
            continue;
        }
        disc.insert(root, time);
        low.insert(root, time);
        time += 1;
        let mut root_children = 0;
        let mut stack = vec![Frame { v: root, parent_edge: None, next: 0 }];
        while let Some(frame) = stack.last_mut() {
            let v = frame.v;
            let inc = g.incident(v);
            if frame.next < inc.len() {
                let e = inc[frame.next];
                frame.next += 1;
                if Some(e) == frame.parent_edge {
                    continue;
                }
                let w = g.edges[&e].other(v);
                match disc.get(&w) {
                    None => {
                        edge_stack.push(e);
                        disc.insert(w, time);
                        low.insert(w, time);
                        time += 1;
                        stack.push(Frame { v: w, parent_edge: Some(e), next: 0 });
                    }
                    Some(&dw) if dw < disc[&v] => {
                        edge_stack.push(e);
                        let lv = low[&v].min(dw);
                        low.insert(v, lv);
                    }
                    Some(_) => {}
                }
            } else {
                let done = stack.pop().expect("non-empty");
                if let Some(parent) = stack.last() {
                    let p = parent.v;
                    let lp = low[&p].min(low[&v]);
                    low.insert(p, lp);
                    if low[&v] >= disc[&p] {
                        let pe = done.parent_edge.expect("non-root frame");
                        let mut class = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            class.push(e);
                            if e == pe {
                                break;
                            }
                        }
                        class.sort_unstable();
                        classes.push(class);
                        if p == root {
                            root_children += 1;
                        } else {
                            cuts.insert(p);
                        }
                    }
                }
            }
        }
        if root_children > 1 {
            cuts.insert(root);
        }
    }
    (classes, cuts)
}

/// Biconnected components; isolated vertices appear as edgeless components so
/// that the union of all components is `g`.
pub fn biconnected_components(g: &Graph) -> Vec<BiconnectedComponent> {
    let (classes, cuts) = biconnected_edge_classes(g);
    let mut out: Vec<BiconnectedComponent> = classes
        .iter()
        .map(|class| {
            let graph = g.edge_subgraph(class);
            let cut_vertices = graph.vertices().filter(|v| cuts.contains(v)).collect();
            BiconnectedComponent { graph, cut_vertices }
        })
        .collect();
    for v in g.vertices().filter(|&v| g.degree(v) == 0) {
        let mut graph = Graph::new();
        graph.add_vertex(v);
        out.push(BiconnectedComponent { graph, cut_vertices: BTreeSet::new() });
    }
    out
}

pub fn cut_vertices(g: &Graph) -> BTreeSet<VertexId> {
    biconnected_edge_classes(g).1
}

fn separates(g: &Graph, removed: &HashSet<VertexId>) -> bool {
    g.components_avoiding(removed).len() >= 2
}

/// Vertex connectivity capped at 3. Disconnected graphs report 0; graphs with
/// no separator of size at most two (including `K_1`, `K_2`, `K_3`) report 3.
pub fn connectivity(g: &Graph) -> u8 {
    if g.vertex_count() == 0 || !g.is_connected() {
        return 0;
    }
    let vs: Vec<VertexId> = g.vertices().collect();
    if vs.len() < 12 {
        for &a in &vs {
            if separates(g, &HashSet::from([a])) {
                return 1;
            }
        }
        for (i, &a) in vs.iter().enumerate() {
            for &b in &vs[i + 1..] {
                if separates(g, &HashSet::from([a, b])) {
                    return 2;
                }
            }
        }
        return 3;
    }
    if !cut_vertices(g).is_empty() {
        return 1;
    }
    for &a in &vs {
        let mut h = g.clone();
        h.remove_vertex(a);
        if !cut_vertices(&h).is_empty() {
            return 2;
        }
    }
    3
}

/// All 2-separators `{a, b}` of a 2-connected `g`: pairs whose removal
/// leaves a disconnected graph.
pub fn two_separators(g: &Graph) -> BTreeSet<VertexPair> {
    let mut out = BTreeSet::new();
    for a in g.vertices() {
        let mut h = g.clone();
        h.remove_vertex(a);
        for b in cut_vertices(&h) {
            out.insert(VertexPair::new(a, b));
        }
    }
    out
}
