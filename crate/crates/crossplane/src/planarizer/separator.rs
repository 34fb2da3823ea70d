//! Planar vertex separators by BFS levels and a fundamental cycle.
//!
//! Levels `l0 <= l1 < l2` around the median BFS level are chosen so that
//! `|L(l0)| + 2(l1 - l0)` and `|L(l2)| + 2(l2 - l1 - 1)` are minimal; both
//! are at most `2 sqrt(n)`. If the levels strictly between them still hold
//! more than `2n/3` vertices, the lower levels are contracted into a root,
//! the middle graph is triangulated and the best fundamental cycle of its BFS
//! tree is added to the separator. The result satisfies `|B| <= 4 sqrt(n) + 4`.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexId};
use crate::planarity::{embed, Dart, PlanarEmbedding, RotationSystem};

/// Additive slack in the separator bound `4 sqrt(n) + SEPARATOR_SLACK`.
pub const SEPARATOR_SLACK: f64 = 4.0;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separator {
    pub a: BTreeSet<VertexId>,
    pub b: BTreeSet<VertexId>,
    pub c: BTreeSet<VertexId>,
}

impl Separator {
    /// `4 sqrt(n) + SEPARATOR_SLACK`.
    pub fn size_bound(n: usize) -> f64 {
        4.0 * (n as f64).sqrt() + SEPARATOR_SLACK
    }
}

fn side_limit(n: usize) -> usize {
    2 * n / 3
}

pub fn lipton_tarjan_separator(emb: &PlanarEmbedding) -> Separator {
    let g = emb.graph();
    let n = g.vertex_count();
    if n == 0 {
        return Separator::default();
    }
    let comps = g.components();
    let largest = comps.iter().max_by_key(|c| (c.len(), std::cmp::Reverse(c.iter().next().copied()))).expect("non-empty");
    let inner = separate_connected(&g.induced_subgraph(largest));
    let mut pieces = vec![inner.a, inner.c];
    pieces.extend(comps.iter().filter(|c| *c != largest).cloned());
    let (a, c) = combine(pieces, n);
    shrink(&g, Separator { a, b: inner.b, c })
}

/// Groups pieces of at most `2n/3` vertices into two sides of at most `2n/3`.
fn combine(mut pieces: Vec<BTreeSet<VertexId>>, n: usize) -> (BTreeSet<VertexId>, BTreeSet<VertexId>) {
    pieces.retain(|p| !p.is_empty());
    pieces.sort_by(|x, y| y.len().cmp(&x.len()).then_with(|| x.iter().next().cmp(&y.iter().next())));
    let mut a = BTreeSet::new();
    let mut c = BTreeSet::new();
    // one large piece alone, or small pieces until a third is reached
    for p in pieces {
        if 3 * a.len() < n && a.len() + p.len() <= side_limit(n) {
            a.extend(p);
        } else {
            c.extend(p);
        }
    }
    (a, c)
}

/// Moves separator vertices into a side they have no edge across from, while
/// that side stays within the limit.
fn shrink(g: &Graph, mut sep: Separator) -> Separator {
    let n = g.vertex_count();
    let limit = side_limit(n).max(if n <= 3 { n.saturating_sub(1) } else { 0 });
    for v in sep.b.clone() {
        let touches = |side: &BTreeSet<VertexId>| g.neighbors(v).any(|w| side.contains(&w));
        if !touches(&sep.c) && sep.a.len() < limit {
            sep.b.remove(&v);
            sep.a.insert(v);
        } else if !touches(&sep.a) && sep.c.len() < limit {
            sep.b.remove(&v);
            sep.c.insert(v);
        }
    }
    sep
}

fn separate_connected(g: &Graph) -> Separator {
    let n = g.vertex_count();
    let root = g.vertices().next().expect("non-empty");
    let mut level: BTreeMap<VertexId, usize> = BTreeMap::from([(root, 0)]);
    let mut queue = VecDeque::from([root]);
    let mut levels: Vec<Vec<VertexId>> = vec![vec![root]];
    while let Some(v) = queue.pop_front() {
        let lv = level[&v];
        for w in g.neighbors(v).collect::<BTreeSet<_>>() {
            if let std::collections::btree_map::Entry::Vacant(e) = level.entry(w) {
                e.insert(lv + 1);
                if levels.len() <= lv + 1 {
                    levels.push(Vec::new());
                }
                levels[lv + 1].push(w);
                queue.push_back(w);
            }
        }
    }
    let depth = levels.len() as i64;
    let size = |l: i64| if l < 0 || l >= depth { 0 } else { levels[l as usize].len() };

    let mut below = 0;
    let mut l1 = 0i64;
    for (l, vs) in levels.iter().enumerate() {
        if 2 * (below + vs.len()) >= n {
            l1 = l as i64;
            break;
        }
        below += vs.len();
    }
    let l0 = (-1..=l1).min_by_key(|&l| (size(l) + 2 * (l1 - l) as usize, std::cmp::Reverse(l))).expect("range non-empty");
    let l2 = (l1 + 1..=depth).min_by_key(|&l| (size(l) + 2 * (l - l1 - 1) as usize, l)).expect("range non-empty");

    let in_range = |lo: i64, hi: i64| -> BTreeSet<VertexId> { level.iter().filter(|(_, &l)| (l as i64) > lo && (l as i64) < hi).map(|(&v, _)| v).collect() };
    let low = in_range(-1, l0);
    let middle = in_range(l0, l2);
    let high = in_range(l2, depth + 1);
    let mut b: BTreeSet<VertexId> = [l0, l2].iter().filter(|&&l| l >= 0 && l < depth).flat_map(|&l| levels[l as usize].iter().copied()).collect();

    let mut pieces = vec![low, high];
    if middle.len() <= side_limit(n) {
        pieces.push(middle);
    } else {
        let (cycle, inside, outside) = cycle_split(g, &middle, l0, &level);
        b.extend(cycle);
        pieces.push(inside);
        pieces.push(outside);
    }
    let (a, c) = combine(pieces, n);
    Separator { a, b, c }
}

/// Contracts everything below the middle levels into a root, triangulates and
/// returns the best fundamental cycle as `(cycle ∩ middle, one side, other)`.
fn cycle_split(
    g: &Graph,
    middle: &BTreeSet<VertexId>,
    l0: i64,
    level: &BTreeMap<VertexId, usize>,
) -> (BTreeSet<VertexId>, BTreeSet<VertexId>, BTreeSet<VertexId>) {
    let mut m = g.induced_subgraph(middle);
    let mut fresh = g.vertices().last().expect("non-empty") + 1;
    let root = fresh;
    fresh += 1;
    m.add_vertex(root);
    for &v in middle.iter().filter(|&&v| level[&v] as i64 == l0 + 1) {
        m.add_edge(root, v).expect("distinct endpoints");
    }
    let emb = embed(&m).expect("contraction and deletion keep planarity");
    // star-triangulate faces longer than three with a fresh weightless vertex
    let mut order: BTreeMap<VertexId, Vec<Dart>> = emb.rotation().order().clone();
    let mut t = m.clone();
    for face in emb.faces().iter().filter(|f| f.len() > 3) {
        let hub = fresh;
        fresh += 1;
        t.add_vertex(hub);
        let mut hub_darts = Vec::new();
        for &d in face {
            let corner = emb.rotation().tail(d);
            let e = t.add_edge(corner, hub).expect("distinct endpoints");
            let out = Dart::new(e, false);
            // the new dart sits just before `d`, inside the face
            let r = order.get_mut(&corner).expect("corner");
            let at = r.iter().position(|&x| x == d).expect("face dart at its tail");
            r.insert(at, out);
            hub_darts.push(out.twin());
        }
        hub_darts.reverse();
        order.insert(hub, hub_darts);
    }
    let rot = RotationSystem::new(t.edges().copied(), order).expect("darts cover every edge");
    let tri = PlanarEmbedding::new(rot).expect("star triangulation stays planar");

    // BFS tree of the triangulation from the contracted root
    let mut parent: HashMap<VertexId, (VertexId, usize)> = HashMap::new();
    let mut seen = BTreeSet::from([root]);
    let mut queue = VecDeque::from([root]);
    let mut tree_edges = BTreeSet::new();
    while let Some(v) = queue.pop_front() {
        let mut inc: Vec<usize> = t.incident(v).to_vec();
        inc.sort_unstable();
        for e in inc {
            let w = t.edge(e).expect("incident").other(v);
            if seen.insert(w) {
                parent.insert(w, (v, e));
                tree_edges.insert(e);
                queue.push_back(w);
            }
        }
    }
    let weight = |v: &VertexId| middle.contains(v);
    let total = middle.len();
    let mut best: Option<(usize, Vec<VertexId>, BTreeSet<VertexId>, BTreeSet<VertexId>)> = None;
    for e in t.edges().filter(|e| !tree_edges.contains(&e.id)) {
        let cycle = fundamental_cycle(&parent, e.u, e.v);
        let Some((left, right)) = sides(&t, tri.rotation(), &cycle, e.id, &parent) else { continue };
        let (wl, wr) = (left.iter().filter(|v| weight(v)).count(), right.iter().filter(|v| weight(v)).count());
        let key = wl.max(wr);
        if best.as_ref().is_none_or(|b| key < b.0) {
            best = Some((key, cycle, left, right));
        }
        if 3 * key <= 2 * total {
            break;
        }
    }
    let Some((_, cycle, left, right)) = best else {
        return (middle.clone(), BTreeSet::new(), BTreeSet::new());
    };
    let keep = |s: BTreeSet<VertexId>| -> BTreeSet<VertexId> { s.into_iter().filter(|v| weight(v)).collect() };
    (keep(cycle.into_iter().collect()), keep(left), keep(right))
}

/// Tree path `u -> lca -> v`; the closing edge runs from `v` back to `u`.
fn fundamental_cycle(parent: &HashMap<VertexId, (VertexId, usize)>, u: VertexId, v: VertexId) -> Vec<VertexId> {
    let up = |mut x: VertexId| {
        let mut path = vec![x];
        while let Some(&(p, _)) = parent.get(&x) {
            path.push(p);
            x = p;
        }
        path
    };
    let (pu, pv) = (up(u), up(v));
    let on_v: BTreeSet<VertexId> = pv.iter().copied().collect();
    let lca_pos = pu.iter().position(|x| on_v.contains(x)).expect("common root");
    let lca = pu[lca_pos];
    let mut cycle: Vec<VertexId> = pu[..=lca_pos].to_vec();
    let v_pos = pv.iter().position(|&x| x == lca).expect("lca on both paths");
    cycle.extend(pv[..v_pos].iter().rev());
    cycle
}

/// Vertices off the cycle on its left and right, found from the darts
/// leaving each cycle vertex strictly between its two cycle darts.
fn sides(
    t: &Graph,
    rot: &RotationSystem,
    cycle: &[VertexId],
    closing: usize,
    parent: &HashMap<VertexId, (VertexId, usize)>,
) -> Option<(BTreeSet<VertexId>, BTreeSet<VertexId>)> {
    let on: BTreeSet<VertexId> = cycle.iter().copied().collect();
    let k = cycle.len();
    let edge_between = |x: VertexId, y: VertexId| -> usize {
        if let Some(&(p, e)) = parent.get(&x) {
            if p == y {
                return e;
            }
        }
        if let Some(&(p, e)) = parent.get(&y) {
            if p == x {
                return e;
            }
        }
        closing
    };
    let mut seeds = BTreeSet::new();
    for i in 0..k {
        let (prev, cur, next) = (cycle[(i + k - 1) % k], cycle[i], cycle[(i + 1) % k]);
        let out_e = if k == 2 && i == 1 { closing } else { edge_between(cur, next) };
        let back_e = if k == 2 && i == 0 { closing } else { edge_between(prev, cur) };
        if k == 2 && out_e == back_e {
            return None;
        }
        let r = rot.rotation(cur);
        let out = r.iter().position(|d| d.edge == out_e)?;
        let back = r.iter().position(|d| d.edge == back_e)?;
        let mut j = (out + 1) % r.len();
        while j != back {
            let w = t.edge(r[j].edge).expect("rotation edge").other(cur);
            if !on.contains(&w) {
                seeds.insert(w);
            }
            j = (j + 1) % r.len();
        }
    }
    let mut left = BTreeSet::new();
    let mut stack: Vec<VertexId> = seeds.into_iter().collect();
    while let Some(v) = stack.pop() {
        if on.contains(&v) || !left.insert(v) {
            continue;
        }
        stack.extend(t.neighbors(v));
    }
    let right = t.vertices().filter(|v| !on.contains(v) && !left.contains(v)).collect();
    Some((left, right))
}
