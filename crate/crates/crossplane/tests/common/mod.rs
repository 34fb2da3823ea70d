//! Independent brute-force oracles shared by the integration tests.
#![allow(dead_code)]

pub mod corpus;
pub mod tunnels;

use std::collections::{BTreeSet, HashSet};

use crossplane::graph::{Graph, VertexId, VertexPair};

fn path_through(g: &Graph, a: VertexId, b: VertexId, inner: &[VertexId]) -> bool {
    fn rec(g: &Graph, cur: VertexId, b: VertexId, left: &mut Vec<VertexId>) -> bool {
        if left.is_empty() {
            return g.has_edge_between(cur, b);
        }
        for i in 0..left.len() {
            let x = left[i];
            if g.has_edge_between(cur, x) {
                left.remove(i);
                let ok = rec(g, x, b, left);
                left.insert(i, x);
                if ok {
                    return true;
                }
            }
        }
        false
    }
    rec(g, a, b, &mut inner.to_vec())
}

/// Can every branch pair be joined by internally disjoint paths whose inner
/// vertices come from `spares`?
fn route_pairs(g: &Graph, pairs: &[(VertexId, VertexId)], spares: &mut Vec<VertexId>) -> bool {
    let Some((&(a, b), rest)) = pairs.split_first() else {
        return true;
    };
    let k = spares.len();
    for mask in 0u32..(1 << k) {
        let inner: Vec<VertexId> = (0..k).filter(|i| mask & (1 << i) != 0).map(|i| spares[i]).collect();
        if !path_through(g, a, b, &inner) {
            continue;
        }
        let mut remaining: Vec<VertexId> = (0..k).filter(|i| mask & (1 << i) == 0).map(|i| spares[i]).collect();
        if route_pairs(g, rest, &mut remaining) {
            return true;
        }
    }
    false
}

fn subsets(items: &[VertexId], k: usize) -> Vec<Vec<VertexId>> {
    if k == 0 {
        return vec![vec![]];
    }
    if items.len() < k {
        return vec![];
    }
    let mut out = subsets(&items[1..], k - 1);
    for s in &mut out {
        s.insert(0, items[0]);
    }
    out.extend(subsets(&items[1..], k));
    out
}

/// Exhaustive search for a subdivided K5 or K3,3; exact for graphs with at
/// most 8 vertices, where such subdivisions have at most three spare vertices.
pub fn has_kuratowski_subdivision(g: &Graph) -> bool {
    let vs: Vec<VertexId> = g.vertices().collect();
    assert!(vs.len() <= 8, "oracle is exact only up to 8 vertices");
    for branch in subsets(&vs, 5) {
        if branch.iter().any(|&v| g.degree(v) < 4) {
            continue;
        }
        let spares: Vec<VertexId> = vs.iter().copied().filter(|v| !branch.contains(v)).collect();
        let pairs: Vec<(VertexId, VertexId)> =
            (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).map(|(i, j)| (branch[i], branch[j])).collect();
        if route_pairs(g, &pairs, &mut spares.clone()) {
            return true;
        }
    }
    for six in subsets(&vs, 6) {
        if six.iter().any(|&v| g.degree(v) < 3) {
            continue;
        }
        let spares: Vec<VertexId> = vs.iter().copied().filter(|v| !six.contains(v)).collect();
        for left in subsets(&six[1..], 2) {
            let left: Vec<VertexId> = std::iter::once(six[0]).chain(left).collect();
            let right: Vec<VertexId> = six.iter().copied().filter(|v| !left.contains(v)).collect();
            let pairs: Vec<(VertexId, VertexId)> =
                left.iter().flat_map(|&a| right.iter().map(move |&b| (a, b))).collect();
            if route_pairs(g, &pairs, &mut spares.clone()) {
                return true;
            }
        }
    }
    false
}

/// Pairs whose removal disconnects the graph, by direct enumeration.
pub fn brute_two_separators(g: &Graph) -> BTreeSet<VertexPair> {
    let vs: Vec<VertexId> = g.vertices().collect();
    let mut out = BTreeSet::new();
    for (i, &a) in vs.iter().enumerate() {
        for &b in &vs[i + 1..] {
            let removed: HashSet<VertexId> = HashSet::from([a, b]);
            if g.components_avoiding(&removed).len() >= 2 {
                out.insert(VertexPair::new(a, b));
            }
        }
    }
    out
}

/// Vertex connectivity capped at 3, by enumerating vertex subsets.
pub fn brute_connectivity(g: &Graph) -> u8 {
    if g.vertex_count() == 0 || g.components().len() != 1 {
        return 0;
    }
    let vs: Vec<VertexId> = g.vertices().collect();
    for k in 1..=2 {
        for cut in subsets(&vs, k) {
            let removed: HashSet<VertexId> = cut.into_iter().collect();
            if g.components_avoiding(&removed).len() >= 2 {
                return k as u8;
            }
        }
    }
    3
}

/// Minimum balanced cut by enumerating all bipartitions.
pub fn brute_min_balanced_cut(g: &Graph, alpha: f64) -> usize {
    let vs: Vec<VertexId> = g.vertices().collect();
    let n = vs.len();
    let cap = (alpha * n as f64 + 1e-9).floor() as usize;
    let mut best = usize::MAX;
    for mask in 0u64..(1 << n) {
        let ones = mask.count_ones() as usize;
        if ones > cap || n - ones > cap {
            continue;
        }
        let side = |v: VertexId| mask & (1 << vs.iter().position(|&x| x == v).unwrap()) != 0;
        let cut = g.edges().filter(|e| side(e.u) != side(e.v)).count();
        best = best.min(cut);
    }
    best
}

/// Fewest edges whose removal leaves a planar graph, by exhaustive search over
/// removal sets of increasing size.
pub fn brute_skewness(g: &Graph, planar: impl Fn(&Graph) -> bool) -> usize {
    let ids: Vec<usize> = g.edge_ids().collect();
    for k in 0..=ids.len() {
        for removed in subsets(&ids, k) {
            if planar(&g.without_edges(&removed)) {
                return k;
            }
        }
    }
    ids.len()
}

/// Independent validity check of a drawing: the skeleton satisfies Euler's
/// formula per component, every dummy has degree four with alternating
/// owners, and every curve runs from its edge's tail to its head.
pub fn assert_valid_drawing(d: &crossplane::drawing::Drawing) {
    use crossplane::drawing::is_dummy;
    use crossplane::planarity::Dart;
    use std::collections::HashMap;

    let sk = &d.skeleton;
    let mut pos: HashMap<Dart, (VertexId, usize)> = HashMap::new();
    for (&v, r) in sk.order() {
        for (i, &x) in r.iter().enumerate() {
            pos.insert(x, (v, i));
        }
    }
    let next = |x: Dart| {
        let (v, i) = pos[&x];
        let r = sk.rotation(v);
        r[(i + 1) % r.len()]
    };
    let mut seen: HashSet<Dart> = HashSet::new();
    let mut faces_per_root: HashMap<VertexId, i64> = HashMap::new();
    let skg = sk.graph();
    let comps = skg.components();
    let root_of = |v: VertexId| comps.iter().find(|c| c.contains(&v)).map(|c| *c.iter().min().unwrap()).unwrap();
    for &x in pos.keys() {
        if seen.contains(&x) {
            continue;
        }
        let mut y = x;
        loop {
            seen.insert(y);
            y = next(y.twin());
            if y == x {
                break;
            }
        }
        *faces_per_root.entry(root_of(pos[&x].0)).or_default() += 1;
    }
    for c in &comps {
        let root = *c.iter().min().unwrap();
        let v = c.len() as i64;
        let e = skg.edges().filter(|e| c.contains(&e.u)).count() as i64;
        let f = if e == 0 { 1 } else { faces_per_root[&root] };
        assert_eq!(v - e + f, 2, "skeleton component at {root} is not plane");
    }
    let mut dummies = 0;
    for (&v, r) in sk.order() {
        if is_dummy(v) {
            dummies += 1;
            assert_eq!(r.len(), 4);
            let o: Vec<usize> = r.iter().map(|x| d.owner[&x.edge]).collect();
            assert!(o[0] == o[2] && o[1] == o[3], "dummy {v} is not a crossing");
        }
    }
    assert_eq!(dummies, d.crossing_count());
    for e in d.graph.edges() {
        let p = &d.edge_paths[&e.id];
        assert_eq!(sk.tail(p[0]), e.u);
        assert_eq!(sk.head(*p.last().unwrap()), e.v);
        assert!(p.iter().all(|x| d.owner[&x.edge] == e.id));
    }
}

/// Fewest dual steps between a face at `u` and a face at `v`.
pub fn dual_distance(emb: &crossplane::planarity::PlanarEmbedding, u: VertexId, v: VertexId) -> usize {
    let dg = crossplane::planarity::dual(emb).expect("connected");
    let mut dist = vec![usize::MAX; dg.face_count];
    let mut queue = std::collections::VecDeque::new();
    for f in emb.faces_at(u) {
        dist[f] = 0;
        queue.push_back(f);
    }
    while let Some(f) = queue.pop_front() {
        for &(g, _) in &dg.adjacency[f] {
            if dist[g] == usize::MAX {
                dist[g] = dist[f] + 1;
                queue.push_back(g);
            }
        }
    }
    emb.faces_at(v).into_iter().map(|f| dist[f]).min().unwrap()
}

/// Random drawing from geometry: vertices at random points, edges as random
/// polylines, crossings found by segment intersection and rotations read off
/// by angle. Self-crossings, repeated crossings and crossings of adjacent
/// edges all occur naturally.
pub fn polyline_drawing(seed: u64, n: usize, m: usize, bends: usize) -> crossplane::drawing::Drawing {
    use rand::Rng;
    let mut rng = crossplane::generators::rng(seed);
    let g = crossplane::generators::gnm(n, m, &mut rng);
    let pos = (0..n).map(|v| (v, (rng.gen(), rng.gen()))).collect();
    polyline_drawing_of(&g, &pos, bends, &mut rng)
}

/// Polyline drawing of `g` with vertices at `pos` and `bends` random bends
/// per edge.
pub fn polyline_drawing_of(
    g: &Graph,
    pos: &std::collections::BTreeMap<VertexId, (f64, f64)>,
    bends: usize,
    rng: &mut impl rand::Rng,
) -> crossplane::drawing::Drawing {
    use crossplane::drawing::{Drawing, DUMMY_BASE, SEGMENT_BASE};
    use crossplane::graph::{Edge, EdgeLabel};
    use crossplane::planarity::{Dart, RotationSystem};
    use std::collections::BTreeMap;

    type P = (f64, f64);
    let lines: BTreeMap<usize, Vec<P>> = g
        .edges()
        .map(|e| {
            let mut pts = vec![pos[&e.u]];
            pts.extend((0..bends).map(|_| (rng.gen::<f64>(), rng.gen::<f64>())));
            pts.push(pos[&e.v]);
            (e.id, pts)
        })
        .collect();
    let pieces: Vec<(usize, usize, P, P)> =
        lines.iter().flat_map(|(&e, pts)| pts.windows(2).enumerate().map(move |(k, w)| (e, k, w[0], w[1]))).collect();
    // curve parameter (piece index plus offset) -> node
    let mut marks: BTreeMap<usize, Vec<(f64, usize)>> = BTreeMap::new();
    for e in g.edges() {
        marks.insert(e.id, vec![(0.0, e.u), ((bends + 1) as f64, e.v)]);
    }
    let mut next_dummy = DUMMY_BASE;
    let eps = 1e-9;
    for i in 0..pieces.len() {
        for j in i + 1..pieces.len() {
            let (e1, k1, p, p2) = pieces[i];
            let (e2, k2, q, q2) = pieces[j];
            if e1 == e2 && k1.abs_diff(k2) <= 1 {
                continue;
            }
            let r = (p2.0 - p.0, p2.1 - p.1);
            let s = (q2.0 - q.0, q2.1 - q.1);
            let den = r.0 * s.1 - r.1 * s.0;
            if den.abs() < 1e-12 {
                continue;
            }
            let t = ((q.0 - p.0) * s.1 - (q.1 - p.1) * s.0) / den;
            let u = ((q.0 - p.0) * r.1 - (q.1 - p.1) * r.0) / den;
            if t > eps && t < 1.0 - eps && u > eps && u < 1.0 - eps {
                marks.get_mut(&e1).unwrap().push((k1 as f64 + t, next_dummy));
                marks.get_mut(&e2).unwrap().push((k2 as f64 + u, next_dummy));
                next_dummy += 1;
            }
        }
    }
    let mut segs = Vec::new();
    let mut owner = BTreeMap::new();
    let mut leaving: BTreeMap<usize, Vec<(f64, Dart)>> = g.vertices().map(|v| (v, vec![])).collect();
    let mut next_seg = SEGMENT_BASE;
    let angle = |a: P, b: P| (b.1 - a.1).atan2(b.0 - a.0);
    for (&e, ms) in marks.iter_mut() {
        ms.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let pts = &lines[&e];
        for w in ms.windows(2) {
            let ((ta, a), (tb, b)) = (w[0], w[1]);
            let ka = ta.floor() as usize;
            let kb = if tb.fract() == 0.0 { tb as usize - 1 } else { tb.floor() as usize };
            let (s, t) = (next_seg, next_seg + 1);
            next_seg += 2;
            if a == b {
                // a kink loop: route it through a degree-2 dummy
                let mid = next_dummy;
                next_dummy += 1;
                segs.push(Edge { id: s, u: a, v: mid, label: EdgeLabel::Original });
                segs.push(Edge { id: t, u: mid, v: b, label: EdgeLabel::Original });
                owner.insert(s, e);
                owner.insert(t, e);
                leaving.insert(mid, vec![(0.0, Dart::new(s, true)), (1.0, Dart::new(t, false))]);
                leaving.entry(a).or_default().push((angle(pts[ka], pts[ka + 1]), Dart::new(s, false)));
                leaving.entry(b).or_default().push((angle(pts[kb + 1], pts[kb]), Dart::new(t, true)));
                continue;
            }
            segs.push(Edge { id: s, u: a, v: b, label: EdgeLabel::Original });
            owner.insert(s, e);
            leaving.entry(a).or_default().push((angle(pts[ka], pts[ka + 1]), Dart::new(s, false)));
            leaving.entry(b).or_default().push((angle(pts[kb + 1], pts[kb]), Dart::new(s, true)));
        }
    }
    let order = leaving
        .into_iter()
        .map(|(v, mut ds)| {
            ds.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            (v, ds.into_iter().map(|x| x.1).collect())
        })
        .collect();
    let skeleton = RotationSystem::new(segs, order).expect("consistent skeleton");
    Drawing::from_skeleton(g.clone(), &skeleton, &owner, Default::default()).expect("geometric drawings are valid")
}

/// Shortest cycle length by exhaustive simple-path search (small graphs).
pub fn brute_girth(g: &Graph) -> Option<usize> {
    fn rec(g: &Graph, start: VertexId, cur: VertexId, len: usize, seen: &mut Vec<VertexId>, best: &mut Option<usize>) {
        if best.is_some_and(|b| len + 1 >= b) {
            return;
        }
        for y in g.neighbors(cur).collect::<Vec<_>>() {
            if y == start && len >= 2 {
                *best = Some(len + 1);
            } else if y > start && !seen.contains(&y) {
                seen.push(y);
                rec(g, start, y, len + 1, seen, best);
                seen.pop();
            }
        }
    }
    let mut best = None;
    for s in g.vertices() {
        rec(g, s, s, 0, &mut vec![s], &mut best);
    }
    best
}
