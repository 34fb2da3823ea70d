//! SVG rendering of a drawing through a straight-line layout of its skeleton.
//!
//! Each connected component of the skeleton gets a Tutte layout: the vertices
//! of its largest face sit on a circle and every other vertex is the average
//! of its neighbours. Inner faces with more than three corners receive a
//! hidden centre vertex joined to all corners, which keeps non-3-connected
//! skeletons from collapsing. If two vertices still coincide, the component
//! falls back to a layered layout by BFS depth.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::drawing::{is_dummy, Drawing};
use crate::graph::VertexId;
use crate::planarity::{RotationSystem, UnionFind};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SvgOptions {
    pub width: f64,
    pub height: f64,
    pub margin: f64,
    pub vertex_radius: f64,
    pub show_labels: bool,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions { width: 800.0, height: 800.0, margin: 30.0, vertex_radius: 5.0, show_labels: true }
    }
}

const SWEEPS: usize = 5000;
const TOLERANCE: f64 = 1e-10;
const DEGENERATE: f64 = 1e-6;

type Point = (f64, f64);

/// Unit-box coordinates for every skeleton vertex of one component.
fn layout_component(rot: &RotationSystem, vs: &BTreeSet<VertexId>) -> BTreeMap<VertexId, Point> {
    if vs.len() == 1 {
        return vs.iter().map(|&v| (v, (0.5, 0.5))).collect();
    }
    let faces: Vec<Vec<VertexId>> = rot
        .faces()
        .into_iter()
        .filter(|f| vs.contains(&rot.tail(f[0])))
        .map(|f| {
            let mut seen = BTreeSet::new();
            f.iter().map(|&d| rot.tail(d)).filter(|v| seen.insert(*v)).collect()
        })
        .collect();
    let outer = (0..faces.len()).max_by_key(|&i| (faces[i].len(), std::cmp::Reverse(i))).expect("component has a face");

    // nodes: skeleton vertices, then one hidden centre per stellated face
    let index: HashMap<VertexId, usize> = vs.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); vs.len()];
    for &v in vs {
        for d in rot.rotation(v) {
            adj[index[&v]].push(index[&rot.head(*d)]);
        }
    }
    for (i, f) in faces.iter().enumerate() {
        if i != outer && f.len() > 3 {
            let c = adj.len();
            adj.push(f.iter().map(|v| index[v]).collect());
            for v in f {
                adj[index[v]].push(c);
            }
        }
    }
    let mut pos: Vec<Point> = vec![(0.5, 0.5); adj.len()];
    let mut fixed = vec![false; adj.len()];
    let k = faces[outer].len();
    for (j, v) in faces[outer].iter().enumerate() {
        let a = 2.0 * PI * j as f64 / k as f64;
        pos[index[v]] = (0.5 + 0.5 * a.cos(), 0.5 + 0.5 * a.sin());
        fixed[index[v]] = true;
    }
    for _ in 0..SWEEPS {
        let mut delta: f64 = 0.0;
        for i in 0..adj.len() {
            if fixed[i] || adj[i].is_empty() {
                continue;
            }
            let n = adj[i].len() as f64;
            let (sx, sy) = adj[i].iter().fold((0.0, 0.0), |(x, y), &j| (x + pos[j].0, y + pos[j].1));
            let p = (sx / n, sy / n);
            delta = delta.max((p.0 - pos[i].0).abs() + (p.1 - pos[i].1).abs());
            pos[i] = p;
        }
        if delta < TOLERANCE {
            break;
        }
    }
    let out: BTreeMap<VertexId, Point> = vs.iter().map(|&v| (v, pos[index[&v]])).collect();
    if degenerate(&out) {
        log::warn!("Tutte layout degenerate on a component of {} vertices; using a layered layout", vs.len());
        return layered(rot, vs);
    }
    out
}

fn degenerate(pos: &BTreeMap<VertexId, Point>) -> bool {
    let pts: Vec<Point> = pos.values().copied().collect();
    pts.iter().enumerate().any(|(i, p)| pts[i + 1..].iter().any(|q| (p.0 - q.0).hypot(p.1 - q.1) < DEGENERATE))
}

/// Rows by BFS depth from the smallest vertex, evenly spaced within a row.
fn layered(rot: &RotationSystem, vs: &BTreeSet<VertexId>) -> BTreeMap<VertexId, Point> {
    let start = *vs.iter().next().expect("non-empty");
    let mut depth = BTreeMap::from([(start, 0usize)]);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for d in rot.rotation(x) {
            let y = rot.head(*d);
            if !depth.contains_key(&y) {
                depth.insert(y, depth[&x] + 1);
                queue.push_back(y);
            }
        }
    }
    let rows = depth.values().max().copied().unwrap_or(0) + 1;
    let mut by_row: Vec<Vec<VertexId>> = vec![Vec::new(); rows];
    for (&v, &r) in &depth {
        by_row[r].push(v);
    }
    let mut out = BTreeMap::new();
    for (r, row) in by_row.iter().enumerate() {
        for (i, &v) in row.iter().enumerate() {
            out.insert(v, ((i as f64 + 1.0) / (row.len() as f64 + 1.0), (r as f64 + 0.5) / rows as f64));
        }
    }
    out
}

fn components(rot: &RotationSystem) -> Vec<BTreeSet<VertexId>> {
    let vs: Vec<VertexId> = rot.vertices().collect();
    let index: HashMap<VertexId, usize> = vs.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut uf = UnionFind::new(vs.len());
    for e in rot.edges() {
        uf.union(index[&e.u], index[&e.v]);
    }
    let mut groups: BTreeMap<usize, BTreeSet<VertexId>> = BTreeMap::new();
    for &v in &vs {
        groups.entry(uf.find(index[&v])).or_default().insert(v);
    }
    groups.into_values().collect()
}

/// Coordinates of every skeleton vertex in the canvas, components in a grid.
fn layout(d: &Drawing, opts: &SvgOptions) -> BTreeMap<VertexId, Point> {
    let comps = components(&d.skeleton);
    let cols = (comps.len() as f64).sqrt().ceil().max(1.0) as usize;
    let rows = comps.len().div_ceil(cols).max(1);
    let (cw, ch) = ((opts.width - 2.0 * opts.margin) / cols as f64, (opts.height - 2.0 * opts.margin) / rows as f64);
    let pad = 0.1;
    let mut out = BTreeMap::new();
    for (i, vs) in comps.iter().enumerate() {
        let (ox, oy) = (opts.margin + (i % cols) as f64 * cw, opts.margin + (i / cols) as f64 * ch);
        for (v, (x, y)) in layout_component(&d.skeleton, vs) {
            out.insert(v, (ox + cw * (pad + (1.0 - 2.0 * pad) * x), oy + ch * (pad + (1.0 - 2.0 * pad) * y)));
        }
    }
    out
}

/// SVG text: segments coloured by whether their edge was inserted (`E*`),
/// real vertices as filled circles and each crossing as one marked point.
pub fn render_svg(d: &Drawing, opts: &SvgOptions) -> String {
    let pos = layout(d, opts);
    let mut s = String::new();
    writeln!(s, "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">", opts.width, opts.height)
        .expect("write");
    s.push_str(
        "<style>.h{stroke:#333;stroke-width:1.5}.estar{stroke:#c0392b;stroke-width:2}\
         .vertex{fill:#1f4e79}.crossing{fill:none;stroke:#c0392b;stroke-width:1.5}\
         text{font:10px sans-serif;fill:#555}</style>\n",
    );
    for seg in d.skeleton.edges() {
        let owner = d.owner.get(&seg.id).copied().unwrap_or(seg.id);
        let class = if d.e_star.contains(&owner) { "estar" } else { "h" };
        let ((x1, y1), (x2, y2)) = (pos[&seg.u], pos[&seg.v]);
        writeln!(s, "<line class=\"edge {class}\" data-edge=\"{owner}\" x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\"/>").expect("write");
    }
    for (&v, &(x, y)) in &pos {
        if is_dummy(v) {
            let c = d.crossings.get(&v);
            let (a, b) = c.map_or((0, 0), |c| (c.a, c.b));
            writeln!(s, "<circle class=\"crossing\" data-edges=\"{a} {b}\" cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"{:.1}\"/>", opts.vertex_radius)
                .expect("write");
        } else {
            writeln!(s, "<circle class=\"vertex\" cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"{:.1}\"/>", opts.vertex_radius).expect("write");
            if opts.show_labels {
                writeln!(s, "<text x=\"{:.2}\" y=\"{:.2}\">{v}</text>", x + opts.vertex_radius + 1.0, y - opts.vertex_radius - 1.0).expect("write");
            }
        }
    }
    s.push_str("</svg>\n");
    s
}
