//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. Every expected value is recomputed here
//! by an oracle that does not call the code under test.

mod common;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::panic;
use std::time::{Duration, Instant};

use common::corpus::{core_with_pendant, ear_graph, gadget_chain, random_biconnected};
use common::tunnels::{ladder_instance, oracle_cofacial, scrambled};
use crossplane::composer::{assign_weights, compose, decompose_for_drawing, draw_by_insertion, weighted_cr, PieceSet};
use crossplane::decomp::{block_decomposition, spqr};
use crossplane::drawing::Drawing;
use crossplane::embedder::{count_irregular, find_tunnels, flip_tunnels};
use crossplane::generators;
use crossplane::graph::{EdgeId, Graph, VertexId};
use crossplane::inserter::insert_edge;
use crossplane::pipeline::{approx_crossing_number, draw, verify, ApproxConfig, DrawResult};
use crossplane::planarity::{embed, is_planar, Dart, RotationSystem};
use crossplane::planarizer::{greedy_planar_subgraph, planarize, PlanarizeConfig};
use crossplane::reducer::{degree_reduce, degree_restore};
use rand::Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

struct Entry {
    name: String,
    graph: Graph,
}

fn entry(name: impl Into<String>, graph: Graph) -> Entry {
    Entry { name: name.into(), graph }
}

fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let shift = a.next_vertex_id();
    let mut g = a.clone();
    for v in b.vertices() {
        g.add_vertex(v + shift);
    }
    for e in b.edges() {
        g.add_edge(e.u + shift, e.v + shift).unwrap();
    }
    g
}

/// Named graphs plus seeded random families. Every graph is simple.
fn corpus() -> Vec<Entry> {
    let mut subdivided_k5 = Graph::complete(5);
    subdivided_k5.remove_edge(subdivided_k5.edges_between(0, 1)[0]);
    for (a, b) in [(0, 5), (5, 1)] {
        subdivided_k5.add_edge(a, b).unwrap();
    }
    let theta = Graph::from_pairs(&[(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)]).unwrap();
    let k5 = Graph::complete(5);
    let mut two_k5s = k5.clone();
    for (a, b) in [(0, 5), (0, 6), (0, 7), (0, 8), (5, 6), (5, 7), (5, 8), (6, 7), (6, 8), (7, 8)] {
        two_k5s.add_edge(a, b).unwrap();
    }
    let mut out = vec![
        entry("K4", Graph::complete(4)),
        entry("K5", k5.clone()),
        entry("K6", Graph::complete(6)),
        entry("K7", Graph::complete(7)),
        entry("K3,3", Graph::complete_bipartite(3, 3)),
        entry("K3,4", Graph::complete_bipartite(3, 4)),
        entry("K4,4", Graph::complete_bipartite(4, 4)),
        entry("K2,5", Graph::complete_bipartite(2, 5)),
        entry("Petersen", Graph::petersen()),
        entry("Q3", Graph::hypercube(3)),
        entry("Q4", Graph::hypercube(4)),
        entry("grid 3x4", Graph::grid(3, 4)),
        entry("grid 4x5", Graph::grid(4, 5)),
        entry("wheel 7", Graph::wheel(7)),
        entry("wheel 10", Graph::wheel(10)),
        entry("C7", Graph::cycle(7)),
        entry("theta", theta),
        entry("subdivided K5", subdivided_k5),
        entry("K5 with pendant block", core_with_pendant().0),
        entry("gadget chain 3", gadget_chain(3).0),
        entry("gadget chain 5", gadget_chain(5).0),
        entry("two K5 at a vertex", two_k5s),
        entry("K5 + K3,3", disjoint_union(&k5, &Graph::complete_bipartite(3, 3))),
    ];
    for seed in 0..110 {
        out.push(entry(format!("ears {seed}"), ear_graph(seed, 4 + seed as usize % 5, seed as usize % 7)));
    }
    for seed in 0..16 {
        out.push(entry(format!("cycle+chords {seed}"), random_biconnected(seed, 8 + seed as usize % 7, 3 + seed as usize % 9)));
    }
    for seed in 0..8u64 {
        let mut rng = generators::rng(1000 + seed);
        let k = seed as usize;
        out.push(entry(format!("stacked {seed}"), generators::stacked_triangulation(6 + 2 * k, &mut rng)));
        out.push(entry(format!("planar {seed}"), generators::random_planar(8 + k, 0.7, &mut rng)));
        out.push(entry(format!("degree-4 {seed}"), generators::bounded_degree(12 + k, 22 + k, 4, &mut rng)));
        out.push(entry(format!("connected {seed}"), generators::connected_gnm(10 + k, 16 + 2 * k, &mut rng)));
    }
    out
}

/// The 200 seeded random graphs with `n <= 30` and `m <= 60`.
fn random_suite() -> Vec<Entry> {
    (0..200u64)
        .map(|seed| {
            let mut rng = generators::rng(seed);
            let n = rng.gen_range(1..=30usize);
            let m = rng.gen_range(0..=(n * (n - 1) / 2).min(60));
            entry(format!("random {seed} (n={n}, m={m})"), generators::gnm(n, m, &mut rng))
        })
        .collect()
}

/// Vertex connectivity at least two, on at least three vertices.
fn biconnected(g: &Graph) -> bool {
    g.vertex_count() >= 3 && common::brute_connectivity(g) >= 2
}

/// `ceil(m - g(n-2)/(g-2))` for a simple graph of girth `g`, or zero.
fn euler_bound(g: &Graph) -> usize {
    let Some(girth) = common::brute_girth(g) else { return 0 };
    let (n, m, gi) = (g.vertex_count() as i64, g.edge_count() as i64, girth as i64);
    let num = m * (gi - 2) - gi * (n - 2);
    if num <= 0 {
        0
    } else {
        ((num + gi - 3) / (gi - 2)) as usize
    }
}

fn reported_bound(r: &DrawResult) -> Option<usize> {
    r.diagnostics.lower_bound.as_ref().map(|b| b.value)
}

fn check_output(name: &str, what: &str, g: &Graph, r: &DrawResult) -> Result<(), String> {
    let rep = verify(g, &r.drawing);
    ensure!(rep.ok(), "{name}: {what} output rejected: {:?}", rep.failure);
    common::assert_valid_drawing(&r.drawing);
    ensure!(r.crossings == r.drawing.crossing_count(), "{name}: {what} reports {} crossings for {} dummies", r.crossings, r.drawing.crossing_count());
    Ok(())
}

fn criterion_1() -> Outcome {
    const BUDGET: Duration = Duration::from_secs(60);
    let start = Instant::now();
    let mut graphs = random_suite();
    graphs.extend(corpus());
    let mut outputs = 0;
    for e in &graphs {
        let g = &e.graph;
        let approx = approx_crossing_number(g, &ApproxConfig::default()).map_err(|err| format!("{}: approx failed: {err}", e.name))?;
        check_output(&e.name, "approx", g, &approx)?;
        let drawn = draw(g, &greedy_planar_subgraph(g)).map_err(|err| format!("{}: draw failed: {err}", e.name))?;
        check_output(&e.name, "draw", g, &drawn)?;
        outputs += 2;
    }
    let took = start.elapsed();
    ensure!(took < BUDGET, "{outputs} outputs verified but took {:.1}s", took.as_secs_f64());
    Ok(format!("{outputs} outputs of {} graphs verified in {:.1}s", graphs.len(), took.as_secs_f64()))
}

fn criterion_2() -> Outcome {
    let mut seen = Vec::new();
    for (name, g) in [("K5", Graph::complete(5)), ("K3,3", Graph::complete_bipartite(3, 3))] {
        let bound = euler_bound(&g);
        ensure!(bound == 1, "{name}: oracle bound {bound}");
        let r = approx_crossing_number(&g, &ApproxConfig::default()).map_err(|e| e.to_string())?;
        check_output(name, "approx", &g, &r)?;
        ensure!(r.crossings == 1, "{name}: {} crossings", r.crossings);
        ensure!(reported_bound(&r) == Some(1), "{name}: reported bound {:?}", reported_bound(&r));
        seen.push(format!("{name}={}", r.crossings));
    }
    Ok(seen.join(", "))
}

fn criterion_3() -> Outcome {
    let mut seen = Vec::new();
    for (name, g, cap, bound) in [("K6", Graph::complete(6), 9, 3), ("Petersen", Graph::petersen(), 6, 2)] {
        ensure!(euler_bound(&g) == bound, "{name}: oracle bound {} != {bound}", euler_bound(&g));
        let r = approx_crossing_number(&g, &ApproxConfig::default()).map_err(|e| e.to_string())?;
        check_output(name, "approx", &g, &r)?;
        ensure!(r.crossings <= cap, "{name}: {} crossings > {cap}", r.crossings);
        ensure!(r.crossings >= bound, "{name}: {} crossings below the bound {bound}", r.crossings);
        ensure!(reported_bound(&r) == Some(bound), "{name}: reported bound {:?} != {bound}", reported_bound(&r));
        seen.push(format!("{name}={} (bound {bound})", r.crossings));
    }
    Ok(seen.join(", "))
}

fn tail(rot: &RotationSystem, d: Dart) -> VertexId {
    let e = rot.edge(d.edge).unwrap();
    if d.rev {
        e.v
    } else {
        e.u
    }
}

/// Face index of every dart, by walking: after arriving along `d`, leave
/// along the dart that follows `twin(d)` in the rotation at its head.
fn face_walk(rot: &RotationSystem) -> (HashMap<Dart, usize>, usize) {
    let mut at: HashMap<Dart, (VertexId, usize)> = HashMap::new();
    for (&v, ds) in rot.order() {
        for (i, &d) in ds.iter().enumerate() {
            at.insert(d, (v, i));
        }
    }
    let mut face = HashMap::new();
    let mut count = 0;
    for ds in rot.order().values() {
        for &start in ds {
            if face.contains_key(&start) {
                continue;
            }
            let mut d = start;
            loop {
                face.insert(d, count);
                let twin = Dart { edge: d.edge, rev: !d.rev };
                let (v, i) = at[&twin];
                let r = &rot.order()[&v];
                d = r[(i + 1) % r.len()];
                if d == start {
                    break;
                }
            }
            count += 1;
        }
    }
    (face, count)
}

/// `V - E + F` equals twice the number of components: faces by the walk
/// above, one face for each isolated vertex.
fn euler_planar(rot: &RotationSystem) -> bool {
    let g = rot.graph();
    let (_, faces) = face_walk(rot);
    let isolated = g.vertices().filter(|&v| g.degree(v) == 0).count();
    g.vertex_count() as i64 - g.edge_count() as i64 + (faces + isolated) as i64 == 2 * g.components().len() as i64
}

/// Fewest edge crossings for a curve from `u` to `v`: enumerates every
/// simple path of the dual from a face at `u`, keeping the shortest that
/// ends at a face at `v`.
fn exhaustive_insertion_cost(rot: &RotationSystem, u: VertexId, v: VertexId) -> usize {
    let (face, count) = face_walk(rot);
    let mut adj = vec![BTreeSet::new(); count];
    for e in rot.edges() {
        let (a, b) = (face[&Dart { edge: e.id, rev: false }], face[&Dart { edge: e.id, rev: true }]);
        if a != b {
            adj[a].insert(b);
            adj[b].insert(a);
        }
    }
    let faces_at = |x: VertexId| -> BTreeSet<usize> { face.iter().filter(|(d, _)| tail(rot, **d) == x).map(|(_, &f)| f).collect() };
    let targets = faces_at(v);
    fn walk(f: usize, depth: usize, adj: &[BTreeSet<usize>], targets: &BTreeSet<usize>, on_path: &mut Vec<bool>, best: &mut usize) {
        if targets.contains(&f) {
            *best = (*best).min(depth);
        }
        on_path[f] = true;
        for &h in &adj[f] {
            if !on_path[h] {
                walk(h, depth + 1, adj, targets, on_path, best);
            }
        }
        on_path[f] = false;
    }
    let mut best = usize::MAX;
    for f in faces_at(u) {
        walk(f, 0, &adj, &targets, &mut vec![false; count], &mut best);
    }
    best
}

fn criterion_4() -> Outcome {
    const MAX_FACES: usize = 12;
    let (mut embeddings, mut pairs) = (0, 0);
    for e in corpus() {
        let star = greedy_planar_subgraph(&e.graph);
        let h = e.graph.without_edges(&star);
        if !h.is_connected() {
            continue;
        }
        let emb = embed(&h).ok_or(format!("{}: remainder not planar", e.name))?;
        if emb.face_count() > MAX_FACES {
            continue;
        }
        let (_, walked) = face_walk(emb.rotation());
        ensure!(walked == emb.face_count(), "{}: {} faces walked, {} reported", e.name, walked, emb.face_count());
        let vs: Vec<VertexId> = h.vertices().collect();
        let mut requests: BTreeSet<(VertexId, VertexId)> = star.iter().map(|&s| e.graph.edge(s).unwrap()).map(|s| (s.u, s.v)).collect();
        for (i, &a) in vs.iter().enumerate() {
            for &b in &vs[i + 1..] {
                if !h.has_edge_between(a, b) {
                    requests.insert((a, b));
                }
            }
        }
        for (a, b) in requests {
            let got = insert_edge(&emb, a, b).map_err(|err| format!("{}: insert {a}-{b}: {err}", e.name))?.cost();
            let want = exhaustive_insertion_cost(emb.rotation(), a, b);
            ensure!(got == want, "{}: insert {a}-{b} costs {got}, enumeration gives {want}", e.name);
            pairs += 1;
        }
        embeddings += 1;
    }
    ensure!(embeddings >= 50, "only {embeddings} embeddings with at most {MAX_FACES} faces");
    Ok(format!("{pairs} insertions on {embeddings} embeddings match enumeration"))
}

fn criterion_5() -> Outcome {
    let mut checked = 0;
    for e in corpus() {
        let g = &e.graph;
        if g.vertex_count() > 8 || !biconnected(g) {
            continue;
        }
        let tree = spqr(g).map_err(|err| format!("{}: {err}", e.name))?;
        let (got, want) = (tree.two_separators(), common::brute_two_separators(g));
        ensure!(got == want, "{}: tree gives {got:?}, enumeration {want:?}", e.name);
        checked += 1;
    }
    ensure!(checked >= 100, "only {checked} instances with at most 8 vertices");
    Ok(format!("{checked} graphs agree"))
}

fn nested_or_disjoint<T: Ord>(a: &BTreeSet<T>, b: &BTreeSet<T>) -> bool {
    a.is_disjoint(b) || a.is_subset(b) || b.is_subset(a)
}

fn criterion_6() -> Outcome {
    let (mut graphs, mut blocks, mut separators) = (0, 0, 0);
    for e in corpus() {
        let g = &e.graph;
        if !biconnected(g) {
            continue;
        }
        let d = block_decomposition(g).map_err(|err| format!("{}: {err}", e.name))?;
        // triconnected-component sense: no cut vertex or separation pair, so
        // bonds of P-nodes and triangles of peeled cycle blocks qualify
        for (i, t) in d.tilde_prime.iter().enumerate() {
            ensure!(common::brute_connectivity(t) == 3, "{}: closed block {i} has a separating set of at most two vertices", e.name);
        }
        for i in 0..d.len() {
            for j in i + 1..d.len() {
                let (a, b) = (&d.blocks[i], &d.blocks[j]);
                ensure!(nested_or_disjoint(&a.edges, &b.edges), "{}: blocks {i} and {j} overlap", e.name);
            }
        }
        let ends = d.endpoints();
        for pair in common::brute_two_separators(g) {
            for w in [pair.0, pair.1] {
                let covered = ends.contains(&w) || (g.degree(w) == 2 && g.neighbors(w).any(|x| ends.contains(&x)));
                ensure!(covered, "{}: separator vertex {w} is neither an endpoint nor next to one", e.name);
            }
            separators += 1;
        }
        graphs += 1;
        blocks += d.len();
    }
    Ok(format!("{graphs} graphs, {blocks} blocks, {separators} separators covered"))
}

fn criterion_7() -> Outcome {
    let mut checked = 0;
    let mut sizes = BTreeMap::new();
    for e in corpus() {
        let g = &e.graph;
        let res = planarize(g, &PlanarizeConfig::default()).map_err(|err| format!("{}: {err}", e.name))?;
        let kept: BTreeSet<EdgeId> = g.edge_ids().filter(|id| !res.removed.contains(id)).collect();
        ensure!(res.remainder.edge_ids().eq(kept.iter().copied()), "{}: remainder is not g minus the removed set", e.name);
        let rot = res.embedding.rotation();
        ensure!(rot.edges().map(|x| x.id).eq(kept.iter().copied()), "{}: embedding does not cover the remainder", e.name);
        ensure!(euler_planar(rot), "{}: remainder embedding fails the Euler check", e.name);
        if g.vertex_count() <= 8 {
            ensure!(!common::has_kuratowski_subdivision(&res.remainder), "{}: remainder contains a Kuratowski subdivision", e.name);
        }
        sizes.insert(e.name.clone(), res.removed.len());
        checked += 1;
    }
    let euler = |g: &Graph, bipartite: bool| {
        let (n, m) = (g.vertex_count(), g.edge_count());
        m - if bipartite { 2 * n - 4 } else { 3 * n - 6 }
    };
    let mut seen = Vec::new();
    for (name, g, bipartite, factor) in [
        ("K5", Graph::complete(5), false, 1),
        ("K3,3", Graph::complete_bipartite(3, 3), true, 1),
        ("K6", Graph::complete(6), false, 2),
        ("K7", Graph::complete(7), false, 2),
        ("K4,4", Graph::complete_bipartite(4, 4), true, 2),
    ] {
        let (got, lb) = (sizes[name], euler(&g, bipartite));
        if factor == 1 {
            ensure!(got == lb, "{name}: |E'| = {got}, expected {lb}");
        } else {
            ensure!(got <= factor * lb, "{name}: |E'| = {got} > {factor} x {lb}");
        }
        seen.push(format!("{name}={got}/{lb}"));
    }
    Ok(format!("{checked} remainders planar; |E'|/bound {}", seen.join(" ")))
}

fn criterion_8() -> Outcome {
    let (mut instances, mut needed) = (0, 0);
    for len in 9..=18 {
        for seed in 0..3 {
            let (_, inst) = ladder_instance(len);
            let tunnels = find_tunnels(&inst.cls, &inst.decomp);
            ensure!(!tunnels.is_empty(), "ladder {len}: no tunnel");
            let emb = scrambled(&inst, 17 * len as u64 + seed);
            if !tunnels.iter().all(|t| oracle_cofacial(emb.rotation(), &inst, t)) {
                needed += 1;
            }
            let out = flip_tunnels(&emb, &tunnels, &inst.decomp, &inst.connectors).map_err(|err| format!("ladder {len}: {err}"))?;
            ensure!(euler_planar(out.rotation()), "ladder {len} seed {seed}: flipped embedding is not planar");
            ensure!(out.rotation().edges().map(|x| x.id).eq(inst.x.edge_ids()), "ladder {len} seed {seed}: edges changed");
            for (i, t) in tunnels.iter().enumerate() {
                ensure!(oracle_cofacial(out.rotation(), &inst, t), "ladder {len} seed {seed}: tunnel {i} ends not co-facial");
            }
            instances += 1;
        }
    }
    ensure!(instances >= 10 && needed > 0, "{instances} instances, {needed} needing flips");
    Ok(format!("{instances} instances co-facial and planar, {needed} needed flips"))
}

fn insertion_drawings(ps: &PieceSet) -> Result<BTreeMap<usize, Drawing>, String> {
    (0..ps.pieces.len()).map(|p| draw_by_insertion(ps, p).map(|d| (p, d)).map_err(|e| e.to_string())).collect()
}

/// Straight-line drawings of the simplified pieces at random positions.
fn random_drawings(ps: &PieceSet, seed: u64) -> BTreeMap<usize, Drawing> {
    let mut rng = generators::rng(seed);
    (0..ps.pieces.len())
        .map(|p| {
            let g = ps.pieces[p].simplified().graph;
            let pos = g.vertices().map(|v| (v, (rng.gen(), rng.gen()))).collect();
            (p, common::polyline_drawing_of(&g, &pos, 0, &mut rng))
        })
        .collect()
}

fn criterion_9() -> Outcome {
    let (mut merges, mut compositions) = (0, 0);
    for e in corpus() {
        let g = &e.graph;
        // merges made inside the pipeline
        let r = approx_crossing_number(g, &ApproxConfig::default()).map_err(|err| format!("{}: {err}", e.name))?;
        for m in r.diagnostics.components.iter().flat_map(|c| &c.merges) {
            ensure!(m.cost <= m.left_cost + m.right_cost, "{}: pipeline merge at node {}: {} > {} + {}", e.name, m.node, m.cost, m.left_cost, m.right_cost);
            merges += 1;
        }
        if !biconnected(g) {
            continue;
        }
        // direct composition of insertion and of random geometric piece drawings
        let star = greedy_planar_subgraph(g);
        let ps = decompose_for_drawing(g, &star).map_err(|err| format!("{}: {err}", e.name))?;
        if ps.pieces.len() < 2 {
            continue;
        }
        let w = assign_weights(&ps, g.max_degree() as u64);
        for drawings in [insertion_drawings(&ps)?, random_drawings(&ps, e.graph.edge_count() as u64)] {
            let out = compose(&ps, &w, &drawings).map_err(|err| format!("{}: {err}", e.name))?;
            for m in &out.merges {
                ensure!(m.cost <= m.left_cost + m.right_cost, "{}: merge at node {}: {} > {} + {}", e.name, m.node, m.cost, m.left_cost, m.right_cost);
                merges += 1;
            }
            let mut pieces = 0;
            for (p, d) in &drawings {
                pieces += weighted_cr(d, &w.for_simplified(&ps.pieces[*p].simplified())).map_err(|err| err.to_string())?;
            }
            let total = weighted_cr(&out.drawing, &w).map_err(|err| err.to_string())?;
            ensure!(total <= pieces, "{}: composed drawing costs {total} > {pieces} over its pieces", e.name);
            compositions += 1;
        }
    }
    ensure!(merges > 0, "no merge happened on the corpus");
    Ok(format!("{merges} merges over {compositions} direct compositions and the pipeline, no violation"))
}

fn criterion_10() -> Outcome {
    const FACTOR: usize = 9;
    let (mut planar, mut other, mut worst) = (0, 0, 0.0f64);
    for e in corpus() {
        let g = &e.graph;
        let red = degree_reduce(g);
        ensure!(red.reduced.max_degree() <= 3, "{}: reduced degree {}", e.name, red.reduced.max_degree());
        let r = approx_crossing_number(&red.reduced, &ApproxConfig::default()).map_err(|err| format!("{}: {err}", e.name))?;
        let back = degree_restore(&r.drawing, &red).map_err(|err| format!("{}: {err}", e.name))?;
        let rep = verify(g, &back);
        ensure!(rep.ok(), "{}: restored drawing rejected: {:?}", e.name, rep.failure);
        if is_planar(g) {
            ensure!(back.crossing_count() == 0, "{}: planar graph restored with {} crossings (reduced drawing had {})", e.name, back.crossing_count(), r.crossings);
            planar += 1;
        } else {
            ensure!(back.crossing_count() <= FACTOR * r.crossings, "{}: {} restored > {FACTOR} x {}", e.name, back.crossing_count(), r.crossings);
            if r.crossings > 0 {
                worst = worst.max(back.crossing_count() as f64 / r.crossings as f64);
            }
            other += 1;
        }
    }
    Ok(format!("{planar} planar round trips crossing-free; {other} others within {FACTOR}x (worst ratio {worst:.2})"))
}

fn transposed(rot: &RotationSystem, v: VertexId) -> RotationSystem {
    let mut order = rot.order().clone();
    order.get_mut(&v).unwrap().swap(0, 1);
    RotationSystem::new(rot.edges().copied(), order).unwrap()
}

fn criterion_11() -> Outcome {
    let k4 = Graph::complete(4);
    let phi = embed(&k4).unwrap().into_rotation();
    let counts = |a: &RotationSystem, b: &RotationSystem| count_irregular(a, b).map_err(|e| e.to_string());
    ensure!(counts(&phi, &phi)?.counts() == (0, 0), "identical embeddings: {:?}", counts(&phi, &phi)?.counts());
    let mirror = phi.mirrored();
    ensure!(counts(&phi, &mirror)?.counts() == (0, 0), "mirrored embeddings: {:?}", counts(&phi, &mirror)?.counts());
    let psi = transposed(&phi, 0);
    let rep = counts(&phi, &psi)?;
    ensure!(
        rep.vertex_count() == 1 && rep.irregular_vertices == [0],
        "transposed rotation at vertex 0 of K4: counts {:?}, vertex witnesses {:?}, edge witnesses {:?}",
        rep.counts(),
        rep.irregular_vertices,
        rep.irregular_edges
    );
    Ok("identical (0,0), mirrored (0,0), transposed vertex reported".into())
}

fn panic_message(p: Box<dyn std::any::Any + Send>) -> String {
    p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("validity suite", criterion_1),
        ("exact small counts", criterion_2),
        ("bounded counts with lower bounds", criterion_3),
        ("insertion optimality", criterion_4),
        ("2-separators from the SPQR tree", criterion_5),
        ("block decomposition properties", criterion_6),
        ("planarizer guarantee", criterion_7),
        ("tunnel flips", criterion_8),
        ("composition inequality", criterion_9),
        ("degree-reduction round trip", criterion_10),
        ("irregularity metric", criterion_11),
    ];
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(run).unwrap_or_else(|p| Err(format!("panicked: {}", panic_message(p))));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {title}: {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {title}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
