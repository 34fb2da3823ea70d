//! Vertex-disjoint paths by unit-capacity augmenting paths on the split graph.
//!
//! Every vertex `x` becomes `x_in -> x_out` with capacity one (or the source
//! capacity), so augmenting paths never share a vertex. Neighbours are
//! explored in ascending id order, which makes the returned paths
//! deterministic.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use crate::graph::{EdgeId, Graph, VertexId};

/// `count` paths from the sources to distinct sinks, pairwise sharing no
/// vertex except that a source with capacity `c > 1` starts `c` paths.
/// Only vertices accepted by `allowed` (plus sources and sinks) are used,
/// and edges in `banned` are skipped. A vertex that is both a source and a
/// sink yields a single-vertex path.
pub fn disjoint_paths(
    g: &Graph,
    sources: &[(VertexId, usize)],
    sinks: &BTreeSet<VertexId>,
    allowed: impl Fn(VertexId) -> bool,
    banned: &HashSet<EdgeId>,
) -> Option<Vec<Vec<VertexId>>> {
    let want: usize = sources.iter().map(|s| s.1).sum();
    let src_cap: BTreeMap<VertexId, usize> = sources.iter().copied().collect();
    let usable = |x: VertexId| src_cap.contains_key(&x) || sinks.contains(&x) || allowed(x);
    // node ids: 0 = S, 1 = T, then 2 + 2i (in) and 3 + 2i (out)
    let verts: Vec<VertexId> = g.vertices().filter(|&x| usable(x)).collect();
    let index: BTreeMap<VertexId, usize> = verts.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let n = 2 + 2 * verts.len();
    let mut cap: Vec<BTreeMap<usize, i64>> = vec![BTreeMap::new(); n];
    let add = |cap: &mut Vec<BTreeMap<usize, i64>>, a: usize, b: usize, c: i64| {
        *cap[a].entry(b).or_insert(0) += c;
        cap[b].entry(a).or_insert(0);
    };
    for (i, &x) in verts.iter().enumerate() {
        let c = src_cap.get(&x).copied().unwrap_or(1).max(1) as i64;
        add(&mut cap, 2 + 2 * i, 3 + 2 * i, c);
        if let Some(&k) = src_cap.get(&x) {
            add(&mut cap, 0, 2 + 2 * i, k as i64);
        }
        if sinks.contains(&x) {
            add(&mut cap, 3 + 2 * i, 1, 1);
        }
    }
    for e in g.edges() {
        if banned.contains(&e.id) {
            continue;
        }
        if let (Some(&a), Some(&b)) = (index.get(&e.u), index.get(&e.v)) {
            add(&mut cap, 3 + 2 * a, 2 + 2 * b, 1);
            add(&mut cap, 3 + 2 * b, 2 + 2 * a, 1);
        }
    }
    let original = cap.clone();
    let mut flow = 0;
    while flow < want {
        let mut prev = vec![usize::MAX; n];
        prev[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(a) = queue.pop_front() {
            if a == 1 {
                break;
            }
            for (&b, &c) in &cap[a] {
                if c > 0 && prev[b] == usize::MAX {
                    prev[b] = a;
                    queue.push_back(b);
                }
            }
        }
        if prev[1] == usize::MAX {
            return None;
        }
        let mut b = 1;
        while b != 0 {
            let a = prev[b];
            *cap[a].get_mut(&b).unwrap() -= 1;
            *cap[b].get_mut(&a).unwrap() += 1;
            b = a;
        }
        flow += 1;
    }
    // used[a][b] = units of flow on a -> b
    let mut used: Vec<BTreeMap<usize, i64>> = vec![BTreeMap::new(); n];
    for a in 0..n {
        for (&b, &c0) in &original[a] {
            let f = c0 - cap[a][&b];
            if f > 0 {
                used[a].insert(b, f);
            }
        }
    }
    let mut paths = Vec::with_capacity(want);
    for _ in 0..want {
        let mut path = Vec::new();
        let mut a = 0;
        while a != 1 {
            let b = *used[a].iter().find(|(_, &f)| f > 0).expect("flow decomposes").0;
            *used[a].get_mut(&b).unwrap() -= 1;
            if b >= 2 && b % 2 == 0 {
                path.push(verts[(b - 2) / 2]);
            }
            a = b;
        }
        paths.push(path);
    }
    Some(paths)
}
