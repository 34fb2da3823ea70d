//! Path-addition planarity testing on 2-connected blocks.
//!
//! Each block is grown from a cycle by repeatedly embedding a path of some
//! fragment (bridge) into a face containing all of its attachments. Fragments
//! with a single admissible face are served first; a fragment without any
//! admissible face proves the block non-planar. Faces are kept as dart cycles,
//! so parallel edges need no special treatment.

use std::collections::{BTreeMap, HashSet, VecDeque};

use crate::graph::{biconnected_edge_classes, EdgeId, Graph, VertexId};

use super::rotation::Dart;

/// Local dart encoding: `2 * edge_index + direction`.
type LDart = usize;

struct Block {
    vertices: Vec<VertexId>,
    /// Local endpoints and global id per local edge.
    edges: Vec<(usize, usize, EdgeId)>,
    adj: Vec<Vec<usize>>,
}

impl Block {
    fn new(g: &Graph, class: &[EdgeId]) -> Block {
        let mut vertices: Vec<VertexId> = class
            .iter()
            .flat_map(|e| {
                let e = g.edge(*e).expect("class edge");
                [e.u, e.v]
            })
            .collect();
        vertices.sort_unstable();
        vertices.dedup();
        let local: BTreeMap<VertexId, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut edges = Vec::with_capacity(class.len());
        let mut adj = vec![Vec::new(); vertices.len()];
        for (i, &id) in class.iter().enumerate() {
            let e = g.edge(id).expect("class edge");
            let (a, b) = (local[&e.u], local[&e.v]);
            edges.push((a, b, id));
            adj[a].push(i);
            adj[b].push(i);
        }
        Block { vertices, edges, adj }
    }

    fn tail(&self, d: LDart) -> usize {
        let (a, b, _) = self.edges[d / 2];
        if d.is_multiple_of(2) {
            a
        } else {
            b
        }
    }

    fn head(&self, d: LDart) -> usize {
        self.tail(d ^ 1)
    }

    fn dart_from(&self, e: usize, x: usize) -> LDart {
        if self.edges[e].0 == x {
            2 * e
        } else {
            2 * e + 1
        }
    }

    fn other(&self, e: usize, x: usize) -> usize {
        let (a, b, _) = self.edges[e];
        if a == x {
            b
        } else {
            a
        }
    }
}

struct Fragment {
    attachments: Vec<usize>,
    /// Non-embedded vertices of the fragment (empty for a chord).
    inner: HashSet<usize>,
    chord: Option<usize>,
}

/// Embeds a 2-connected block (or a bond, or a single edge). Returns the
/// rotation at every block vertex, or `None` if the block is non-planar.
pub(crate) fn embed_block(g: &Graph, class: &[EdgeId]) -> Option<BTreeMap<VertexId, Vec<Dart>>> {
    let block = Block::new(g, class);
    let n = block.vertices.len();
    if n == 2 {
        // a bond: reversed orders at the two ends give one face per consecutive pair
        let (a, b) = (block.vertices[0], block.vertices[1]);
        let at_a: Vec<Dart> = block.edges.iter().map(|&(x, _, id)| Dart::new(id, block.vertices[x] != a)).collect();
        let at_b: Vec<Dart> = at_a.iter().rev().map(|d| d.twin()).collect();
        return Some(BTreeMap::from([(a, at_a), (b, at_b)]));
    }
    let mut pairs: Vec<(usize, usize)> = block.edges.iter().map(|&(a, b, _)| (a.min(b), a.max(b))).collect();
    pairs.sort_unstable();
    pairs.dedup();
    if pairs.len() > 3 * n - 6 {
        return None;
    }

    let m = block.edges.len();
    let mut emb_v = vec![false; n];
    let mut emb_e = vec![false; m];
    let mut faces: Vec<Vec<LDart>> = Vec::new();
    let mut face_sets: Vec<HashSet<usize>> = Vec::new();

    let cycle = initial_cycle(&block)?;
    for &d in &cycle {
        emb_e[d / 2] = true;
        emb_v[block.tail(d)] = true;
    }
    let back: Vec<LDart> = cycle.iter().rev().map(|d| d ^ 1).collect();
    for f in [cycle, back] {
        face_sets.push(f.iter().map(|&d| block.tail(d)).collect());
        faces.push(f);
    }

    loop {
        let fragments = fragments(&block, &emb_v, &emb_e);
        if fragments.is_empty() {
            break;
        }
        let mut choice: Option<(usize, usize)> = None;
        for (i, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = (0..faces.len())
                .filter(|&f| frag.attachments.iter().all(|a| face_sets[f].contains(a)))
                .collect();
            match admissible.len() {
                0 => return None,
                1 => {
                    choice = Some((i, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((i, admissible[0]));
                    }
                }
            }
        }
        let (fi, face) = choice.expect("at least one fragment");
        let path = fragment_path(&block, &fragments[fi], &emb_v);
        for &d in &path {
            emb_e[d / 2] = true;
            emb_v[block.tail(d)] = true;
            emb_v[block.head(d)] = true;
        }
        let (fa, fb) = split_face(&block, &faces[face], &path);
        face_sets[face] = fa.iter().map(|&d| block.tail(d)).collect();
        faces[face] = fa;
        face_sets.push(fb.iter().map(|&d| block.tail(d)).collect());
        faces.push(fb);
    }

    // next(twin(d)) = successor of d along its face
    let mut succ = vec![usize::MAX; 2 * m];
    for f in &faces {
        for (i, &d) in f.iter().enumerate() {
            succ[d ^ 1] = f[(i + 1) % f.len()];
        }
    }
    let mut out = BTreeMap::new();
    for x in 0..n {
        let first = block.dart_from(block.adj[x][0], x);
        let mut rot = vec![first];
        let mut d = succ[first];
        while d != first {
            if d == usize::MAX || rot.len() > block.adj[x].len() {
                return None;
            }
            rot.push(d);
            d = succ[d];
        }
        if rot.len() != block.adj[x].len() {
            return None;
        }
        let global = rot.iter().map(|&d| Dart::new(block.edges[d / 2].2, d % 2 == 1)).collect();
        out.insert(block.vertices[x], global);
    }
    Some(out)
}

/// A cycle through the first edge, as a closed dart sequence.
fn initial_cycle(block: &Block) -> Option<Vec<LDart>> {
    let (a, b, _) = block.edges[0];
    // BFS from b to a avoiding edge 0
    let n = block.vertices.len();
    let mut prev: Vec<Option<LDart>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[b] = true;
    let mut queue = VecDeque::from([b]);
    while let Some(x) = queue.pop_front() {
        if x == a {
            break;
        }
        for &e in &block.adj[x] {
            if e == 0 {
                continue;
            }
            let y = block.other(e, x);
            if !seen[y] {
                seen[y] = true;
                prev[y] = Some(block.dart_from(e, x));
                queue.push_back(y);
            }
        }
    }
    if !seen[a] {
        return None;
    }
    let mut path = Vec::new();
    let mut cur = a;
    while cur != b {
        let d = prev[cur].expect("reached");
        path.push(d);
        cur = block.tail(d);
    }
    path.reverse();
    let mut cycle = vec![0];
    cycle.extend(path);
    Some(cycle)
}

fn fragments(block: &Block, emb_v: &[bool], emb_e: &[bool]) -> Vec<Fragment> {
    let n = block.vertices.len();
    let mut out = Vec::new();
    for (i, &(a, b, _)) in block.edges.iter().enumerate() {
        if !emb_e[i] && emb_v[a] && emb_v[b] {
            out.push(Fragment { attachments: vec![a, b], inner: HashSet::new(), chord: Some(i) });
        }
    }
    let mut seen = vec![false; n];
    for s in 0..n {
        if emb_v[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut inner = HashSet::from([s]);
        let mut attachments = Vec::new();
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &e in &block.adj[x] {
                let y = block.other(e, x);
                if emb_v[y] {
                    attachments.push(y);
                } else if !seen[y] {
                    seen[y] = true;
                    inner.insert(y);
                    queue.push_back(y);
                }
            }
        }
        attachments.sort_unstable();
        attachments.dedup();
        out.push(Fragment { attachments, inner, chord: None });
    }
    out
}

/// Darts of a path through the fragment joining two distinct attachments.
fn fragment_path(block: &Block, frag: &Fragment, emb_v: &[bool]) -> Vec<LDart> {
    if let Some(e) = frag.chord {
        return vec![2 * e];
    }
    let start = frag.attachments[0];
    let n = block.vertices.len();
    let mut prev: Vec<Option<LDart>> = vec![None; n];
    let mut queue = VecDeque::new();
    for &e in &block.adj[start] {
        let y = block.other(e, start);
        if frag.inner.contains(&y) && prev[y].is_none() {
            prev[y] = Some(block.dart_from(e, start));
            queue.push_back(y);
        }
    }
    let mut end = None;
    'search: while let Some(x) = queue.pop_front() {
        for &e in &block.adj[x] {
            let y = block.other(e, x);
            if emb_v[y] && y != start {
                prev[y] = Some(block.dart_from(e, x));
                end = Some(y);
                break 'search;
            }
            if frag.inner.contains(&y) && prev[y].is_none() {
                prev[y] = Some(block.dart_from(e, x));
                queue.push_back(y);
            }
        }
    }
    let end = end.expect("2-connected fragments have two attachments");
    let mut path = Vec::new();
    let mut cur = end;
    while cur != start {
        let d = prev[cur].expect("on path");
        path.push(d);
        cur = block.tail(d);
    }
    path.reverse();
    path
}

/// Splits a simple face cycle by a path from `a` to `b` lying inside it.
fn split_face(block: &Block, face: &[LDart], path: &[LDart]) -> (Vec<LDart>, Vec<LDart>) {
    let a = block.tail(path[0]);
    let b = block.head(*path.last().expect("non-empty path"));
    let k = face.len();
    let i = face.iter().position(|&d| block.tail(d) == a).expect("a on face");
    let j = face.iter().position(|&d| block.tail(d) == b).expect("b on face");
    let mut fa: Vec<LDart> = (0..(j + k - i) % k).map(|t| face[(i + t) % k]).collect();
    fa.extend(path.iter().rev().map(|d| d ^ 1));
    let mut fb: Vec<LDart> = (0..(i + k - j) % k).map(|t| face[(j + t) % k]).collect();
    fb.extend(path.iter().copied());
    (fa, fb)
}

/// Rotation for all of `g` (blocks glued at cut vertices), or the edge set of
/// the first non-planar block.
pub(crate) fn embed_graph(g: &Graph) -> Result<BTreeMap<VertexId, Vec<Dart>>, Vec<EdgeId>> {
    let (classes, _) = biconnected_edge_classes(g);
    let mut order: BTreeMap<VertexId, Vec<Dart>> = g.vertices().map(|v| (v, Vec::new())).collect();
    for class in &classes {
        let rot = embed_block(g, class).ok_or_else(|| class.clone())?;
        for (v, darts) in rot {
            order.get_mut(&v).expect("block vertex").extend(darts);
        }
    }
    Ok(order)
}
