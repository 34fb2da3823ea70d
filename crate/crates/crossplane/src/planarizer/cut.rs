//! Balanced vertex bipartitions with few crossing edges.
//!
//! Every strategy produces a vertex order or a partition; the balance cap is
//! `floor(alpha * n)` vertices per side, and both sides are non-empty.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::PlanarizeError;
use crate::generators;
use crate::graph::{EdgeId, Graph, VertexId};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CutStrategy {
    #[default]
    BfsLevels,
    FmLocal,
    SpectralLite,
}

impl CutStrategy {
    pub const ALL: [CutStrategy; 3] = [CutStrategy::BfsLevels, CutStrategy::FmLocal, CutStrategy::SpectralLite];

    pub fn name(self) -> &'static str {
        match self {
            CutStrategy::BfsLevels => "bfs-levels",
            CutStrategy::FmLocal => "fm-local",
            CutStrategy::SpectralLite => "spectral-lite",
        }
    }
}

impl fmt::Display for CutStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CutStrategy {
    type Err = PlanarizeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CutStrategy::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| PlanarizeError::UnknownStrategy(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CutResult {
    pub a: BTreeSet<VertexId>,
    pub c: BTreeSet<VertexId>,
    pub cut_edges: Vec<EdgeId>,
    /// `max(|A|, |C|) / |V|`.
    pub balance: f64,
    /// False when no partition within the cap exists and the most even split
    /// was returned instead.
    pub balanced: bool,
}

impl CutResult {
    pub fn cut_size(&self) -> usize {
        self.cut_edges.len()
    }
}

/// Dense view of a graph: vertices `0..n` in ascending id order, adjacency
/// with one entry per edge end (parallel edges repeat).
struct Dense {
    ids: Vec<VertexId>,
    adj: Vec<Vec<usize>>,
}

impl Dense {
    fn new(g: &Graph) -> Self {
        let ids: Vec<VertexId> = g.vertices().collect();
        let index: HashMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut adj = vec![Vec::new(); ids.len()];
        for e in g.edges() {
            let (a, b) = (index[&e.u], index[&e.v]);
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Dense { ids, adj }
    }

    fn n(&self) -> usize {
        self.ids.len()
    }

    fn cut_of(&self, side: &[bool]) -> usize {
        (0..self.n()).map(|v| self.adj[v].iter().filter(|&&w| side[v] && !side[w]).count()).sum()
    }
}

/// Largest side allowed and whether it reflects `alpha` or the fallback.
fn side_cap(n: usize, alpha: f64) -> (usize, bool) {
    let cap = ((alpha * n as f64) + 1e-9).floor() as usize;
    let cap = cap.min(n - 1);
    let even = n.div_ceil(2);
    if cap >= even {
        (cap, true)
    } else {
        (even, false)
    }
}

/// Best balanced prefix of `order` as `(k, cut)`, minimizing the cut and
/// then the larger side.
fn best_prefix(d: &Dense, order: &[usize], cap: usize) -> Option<(usize, usize)> {
    let n = d.n();
    let mut inside = vec![false; n];
    let mut cut: i64 = 0;
    let mut best: Option<(usize, usize, usize)> = None;
    for (k, &v) in order.iter().enumerate().take(n - 1) {
        for &w in &d.adj[v] {
            cut += if inside[w] { -1 } else { 1 };
        }
        inside[v] = true;
        let size = k + 1;
        if size > cap || n - size > cap {
            continue;
        }
        let key = (cut as usize, size.max(n - size), size);
        if best.is_none_or(|b| (key.0, key.1) < (b.0, b.1)) {
            best = Some(key);
        }
    }
    best.map(|(cut, _, size)| (size, cut))
}

fn bfs_order(d: &Dense, root: usize) -> Vec<usize> {
    let n = d.n();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    // remaining components follow in ascending order of their lowest vertex
    for start in std::iter::once(root).chain(0..n) {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &d.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

/// BFS roots: every vertex on small graphs, otherwise the last vertex of a
/// BFS from 0 (a pseudo-peripheral vertex) plus seeded random picks.
fn bfs_roots(d: &Dense, seed: u64) -> Vec<usize> {
    const ALL_ROOTS_UP_TO: usize = 64;
    const SAMPLED: usize = 16;
    let n = d.n();
    if n <= ALL_ROOTS_UP_TO {
        return (0..n).collect();
    }
    let far = *bfs_order(d, 0).last().expect("non-empty");
    let mut roots = vec![0, far];
    let mut rng = generators::rng(seed);
    roots.extend((0..SAMPLED).map(|_| rng.gen_range(0..n)));
    roots.sort_unstable();
    roots.dedup();
    roots
}

fn sweep_partition(d: &Dense, orders: impl IntoIterator<Item = Vec<usize>>, cap: usize) -> Vec<bool> {
    let mut best: Option<((usize, usize), Vec<bool>)> = None;
    for order in orders {
        if let Some((k, cut)) = best_prefix(d, &order, cap) {
            let key = (cut, k.max(d.n() - k));
            if best.as_ref().is_none_or(|(b, _)| key < *b) {
                let mut side = vec![false; d.n()];
                for &v in &order[..k] {
                    side[v] = true;
                }
                best = Some((key, side));
            }
        }
    }
    best.expect("cap admits a prefix").1
}

fn fm_partition(d: &Dense, cap: usize, seed: u64) -> Vec<bool> {
    const RESTARTS: u64 = 4;
    let n = d.n();
    let mut best: Option<((usize, usize), Vec<bool>)> = None;
    for restart in 0..RESTARTS {
        let mut rng = generators::rng(seed.wrapping_add(restart));
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let mut side = vec![false; n];
        for &v in &perm[..n / 2] {
            side[v] = true;
        }
        fm_refine(d, &mut side, cap);
        let size = side.iter().filter(|&&s| s).count();
        let key = (d.cut_of(&side), size.max(n - size));
        if best.as_ref().is_none_or(|(b, _)| key < *b) {
            best = Some((key, side));
        }
    }
    best.expect("at least one restart").1
}

/// Fiduccia–Mattheyses passes: move the unlocked vertex of largest gain that
/// keeps both sides within `[n - cap, cap]`, then roll back to the best
/// prefix of the pass. Stops when a pass does not improve the cut.
fn fm_refine(d: &Dense, side: &mut [bool], cap: usize) {
    let n = d.n();
    let gain = |side: &[bool], v: usize| -> i64 { d.adj[v].iter().map(|&w| if side[w] == side[v] { -1 } else { 1 }).sum() };
    loop {
        let mut size_a = side.iter().filter(|&&s| s).count();
        let mut locked = vec![false; n];
        let mut gains: Vec<i64> = (0..n).map(|v| gain(side, v)).collect();
        let (mut total, mut best_total, mut best_len) = (0i64, 0i64, 0usize);
        let mut moves = Vec::new();
        loop {
            let pick = (0..n)
                .filter(|&v| !locked[v])
                .filter(|&v| {
                    let next_a = if side[v] { size_a - 1 } else { size_a + 1 };
                    next_a >= 1 && next_a <= cap && n - next_a >= 1 && n - next_a <= cap
                })
                .max_by_key(|&v| (gains[v], std::cmp::Reverse(v)));
            let Some(v) = pick else { break };
            total += gains[v];
            side[v] = !side[v];
            size_a = if side[v] { size_a + 1 } else { size_a - 1 };
            locked[v] = true;
            gains[v] = -gains[v];
            for &w in &d.adj[v] {
                gains[w] += if side[w] == side[v] { -2 } else { 2 };
            }
            moves.push(v);
            if total > best_total {
                best_total = total;
                best_len = moves.len();
            }
        }
        for &v in &moves[best_len..] {
            side[v] = !side[v];
        }
        if best_total <= 0 {
            return;
        }
    }
}

/// Approximate Fiedler vector by power iteration on `c I - L`, deflating the
/// constant vector.
fn fiedler(d: &Dense, seed: u64) -> Vec<f64> {
    const ITERATIONS: usize = 500;
    let n = d.n();
    let max_deg = d.adj.iter().map(Vec::len).max().unwrap_or(0) as f64;
    let c = 2.0 * max_deg + 1.0;
    let mut rng = generators::rng(seed);
    let mut x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let normalize = |x: &mut Vec<f64>| {
        let mean = x.iter().sum::<f64>() / n as f64;
        x.iter_mut().for_each(|v| *v -= mean);
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm > 0.0 {
            x.iter_mut().for_each(|v| *v /= norm);
        }
    };
    normalize(&mut x);
    for _ in 0..ITERATIONS {
        let mut y: Vec<f64> = (0..n).map(|v| (c - d.adj[v].len() as f64) * x[v] + d.adj[v].iter().map(|&w| x[w]).sum::<f64>()).collect();
        normalize(&mut y);
        let delta: f64 = y.iter().zip(&x).map(|(a, b)| (a - b).abs()).sum();
        x = y;
        if delta < 1e-10 {
            break;
        }
    }
    x
}

/// Splits `g` into two non-empty sides of at most `floor(alpha * |V|)`
/// vertices each, or the most even split if that cap is infeasible.
pub fn balanced_cut(g: &Graph, strategy: CutStrategy, alpha: f64, seed: u64) -> Result<CutResult, PlanarizeError> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(PlanarizeError::InvalidAlpha(alpha));
    }
    let d = Dense::new(g);
    let n = d.n();
    if n < 2 {
        return Err(PlanarizeError::TooSmall(n));
    }
    let (cap, balanced) = side_cap(n, alpha);
    let side = match strategy {
        CutStrategy::BfsLevels => sweep_partition(&d, bfs_roots(&d, seed).into_iter().map(|r| bfs_order(&d, r)), cap),
        CutStrategy::FmLocal => fm_partition(&d, cap, seed),
        CutStrategy::SpectralLite => {
            let f = fiedler(&d, seed);
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&a, &b| f[a].total_cmp(&f[b]).then(a.cmp(&b)));
            let mut reversed = order.clone();
            reversed.reverse();
            sweep_partition(&d, [order, reversed], cap)
        }
    };
    let a: BTreeSet<VertexId> = (0..n).filter(|&v| side[v]).map(|v| d.ids[v]).collect();
    let c: BTreeSet<VertexId> = (0..n).filter(|&v| !side[v]).map(|v| d.ids[v]).collect();
    let cut_edges = g.edges().filter(|e| a.contains(&e.u) != a.contains(&e.v)).map(|e| e.id).collect();
    let balance = a.len().max(c.len()) as f64 / n as f64;
    Ok(CutResult { a, c, cut_edges, balance, balanced })
}
