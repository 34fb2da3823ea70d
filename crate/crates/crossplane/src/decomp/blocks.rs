//! Laminar block decompositions of 2-connected graphs.
//!
//! Blocks come from the SPQR tree rooted at its lowest-index P or R node:
//! one block per tree node (the union of its subtree), except P-nodes left
//! with a single child, plus a nested chain of peeled blocks inside every
//! polygon. The peeled blocks shrink the polygon path alternately from the
//! far and the near end, so that every contracted skeleton is a triangle.
//! Pure cycles are handled directly.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::spqr::{spqr, NodeKind, SpqrTree};
use super::DecompError;
use crate::graph::{Edge, EdgeId, EdgeLabel, Graph, VertexId, VertexPair};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub vertices: BTreeSet<VertexId>,
    /// `None` only for the root, which is the whole graph.
    pub ends: Option<VertexPair>,
    /// Induced edges, minus any edge joining the two ends.
    pub edges: BTreeSet<EdgeId>,
}

impl Block {
    pub fn inner(&self) -> BTreeSet<VertexId> {
        match self.ends {
            Some(p) => self.vertices.iter().copied().filter(|&v| !p.contains(v)).collect(),
            None => self.vertices.clone(),
        }
    }

    pub fn is_inner(&self, v: VertexId) -> bool {
        self.vertices.contains(&v) && !self.ends.is_some_and(|p| p.contains(v))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BlockDecomposition {
    pub graph: Graph,
    /// Index 0 is the root.
    pub blocks: Vec<Block>,
    pub parent: Vec<Option<usize>>,
    pub children: Vec<Vec<usize>>,
    /// Block with every child replaced by its artificial edge.
    pub tilde: Vec<Graph>,
    /// `tilde` plus the artificial edge joining the block's own ends.
    pub tilde_prime: Vec<Graph>,
    /// The artificial edge standing for block `i` has id `artificial_base + i`.
    pub artificial_base: EdgeId,
    /// Actual edges moved from a P-node skeleton to its parent's skeleton:
    /// `(edge, from node, to node)`. Empty for cycles.
    pub moved_edges: Vec<(EdgeId, usize, usize)>,
}

impl BlockDecomposition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn artificial_edge(&self, block: usize) -> EdgeId {
        self.artificial_base + block
    }

    /// Tree degree (parent plus children).
    pub fn tree_degree(&self, b: usize) -> usize {
        self.children[b].len() + usize::from(self.parent[b].is_some())
    }

    /// Ancestors from the parent upward.
    pub fn ancestors(&self, b: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = self.parent[b];
        while let Some(p) = cur {
            out.push(p);
            cur = self.parent[p];
        }
        out
    }

    /// Every vertex that is an end of some block.
    pub fn endpoints(&self) -> BTreeSet<VertexId> {
        self.blocks.iter().filter_map(|b| b.ends).flat_map(|p| [p.0, p.1]).collect()
    }

    /// Edge sets of any two blocks are nested or disjoint.
    pub fn is_laminar(&self) -> bool {
        self.blocks.iter().enumerate().all(|(i, a)| {
            self.blocks[i + 1..].iter().all(|b| a.edges.is_subset(&b.edges) || b.edges.is_subset(&a.edges) || a.edges.is_disjoint(&b.edges))
        })
    }
}

/// Laminar block decomposition of a 2-connected graph.
pub fn block_decomposition(g: &Graph) -> Result<BlockDecomposition, DecompError> {
    let cyc = g.vertex_count() >= 3 && g.edge_count() == g.vertex_count() && g.vertices().all(|v| g.degree(v) == 2);
    if cyc && g.is_connected() {
        return Ok(assemble(g, cycle_blocks(g), vec![]));
    }
    let tree = spqr(g)?;
    let (raw, moved) = tree_blocks(&tree);
    Ok(assemble(g, raw, moved))
}

type RawBlock = (BTreeSet<VertexId>, VertexPair);

/// Cyclic vertex order starting at the smallest vertex towards its smaller
/// neighbour.
fn cycle_order(g: &Graph, start: VertexId, next: VertexId) -> Vec<VertexId> {
    let mut order = vec![start];
    let (mut prev, mut cur) = (start, next);
    while cur != start {
        order.push(cur);
        let nxt = g.neighbors(cur).find(|&w| w != prev).expect("cycle");
        prev = cur;
        cur = nxt;
    }
    order
}

fn cycle_blocks(g: &Graph) -> Vec<RawBlock> {
    let a1 = g.vertices().next().unwrap();
    let a2 = g.neighbors(a1).min().unwrap();
    let a = cycle_order(g, a1, a2);
    let s = a.len();
    let mut out = Vec::new();
    for i in 1..=s.saturating_sub(4) {
        // a_{1+floor(i/2)} .. a_{s-1-ceil(i/2)}, 1-based
        let lo = i / 2;
        let hi = s - 2 - i.div_ceil(2);
        out.push((a[lo..=hi].iter().copied().collect(), VertexPair::new(a[lo], a[hi])));
    }
    if s > 3 {
        // the closing block keeps a_1 so that it has three vertices
        out.push((BTreeSet::from([a[s - 2], a[s - 1], a[0]]), VertexPair::new(a[s - 2], a[0])));
    }
    out
}

fn tree_blocks(tree: &SpqrTree) -> (Vec<RawBlock>, Vec<(EdgeId, usize, usize)>) {
    let root = tree.default_root().expect("a non-cycle has a P or R node");
    let n = tree.nodes.len();
    let mut parent: Vec<Option<(usize, EdgeId)>> = vec![None; n];
    let mut order = vec![root];
    let mut queue = VecDeque::from([root]);
    let mut seen = vec![false; n];
    seen[root] = true;
    while let Some(x) = queue.pop_front() {
        for (y, v) in tree.neighbors(x) {
            if !seen[y] {
                seen[y] = true;
                parent[y] = Some((x, v));
                order.push(y);
                queue.push_back(y);
            }
        }
    }
    let children = |x: usize| -> Vec<(usize, EdgeId)> { tree.neighbors(x).into_iter().filter(|&(y, _)| parent[y].is_some_and(|p| p.0 == x)).collect() };
    let mut subtree: Vec<BTreeSet<VertexId>> = tree.nodes.iter().map(|nd| nd.skeleton.vertices().collect()).collect();
    for &x in order.iter().rev() {
        if let Some((p, _)) = parent[x] {
            let vs = subtree[x].clone();
            subtree[p].extend(vs);
        }
    }
    let mut moved = Vec::new();
    let mut raw = Vec::new();
    for &x in &order {
        let Some((p, pv)) = parent[x] else { continue };
        let node = &tree.nodes[x];
        let ends = node.skeleton.edge(pv).expect("parent edge").pair();
        if node.kind == NodeKind::P {
            for e in node.actual_edges() {
                moved.push((e.id, x, p));
            }
            if children(x).len() == 1 {
                continue;
            }
        }
        raw.push((subtree[x].clone(), ends));
        if node.kind != NodeKind::S {
            continue;
        }
        let a = cycle_order(&node.skeleton, ends.0, {
            let e = node.skeleton.incident(ends.0).iter().copied().find(|&e| e != pv).expect("polygon");
            node.skeleton.edge(e).unwrap().other(ends.0)
        });
        let s = a.len();
        let slot_child: BTreeMap<usize, usize> = children(x)
            .into_iter()
            .map(|(y, v)| {
                let VertexPair(p0, p1) = node.skeleton.edge(v).unwrap().pair();
                let j = (0..s - 1).find(|&j| VertexPair::new(a[j], a[j + 1]) == VertexPair(p0, p1)).expect("slot");
                (j, y)
            })
            .collect();
        for i in 1..=s.saturating_sub(3) {
            // a_{1+floor(i/2)} .. a_{s-ceil(i/2)}, 1-based
            let lo = i / 2;
            let hi = s - 1 - i.div_ceil(2);
            let mut vs: BTreeSet<VertexId> = a[lo..=hi].iter().copied().collect();
            for j in lo..hi {
                if let Some(&y) = slot_child.get(&j) {
                    vs.extend(subtree[y].iter().copied());
                }
            }
            raw.push((vs, VertexPair::new(a[lo], a[hi])));
        }
    }
    (raw, moved)
}

fn block_edges(g: &Graph, vs: &BTreeSet<VertexId>, ends: Option<VertexPair>) -> BTreeSet<EdgeId> {
    g.edges()
        .filter(|e| vs.contains(&e.u) && vs.contains(&e.v))
        .filter(|e| ends.is_none_or(|p| e.pair() != p))
        .map(|e| e.id)
        .collect()
}

fn assemble(g: &Graph, raw: Vec<RawBlock>, moved_edges: Vec<(EdgeId, usize, usize)>) -> BlockDecomposition {
    let mut blocks: Vec<Block> = Vec::new();
    for (vs, ends) in raw {
        let b = Block { edges: block_edges(g, &vs, Some(ends)), vertices: vs, ends: Some(ends) };
        if !blocks.contains(&b) {
            blocks.push(b);
        }
    }
    blocks.sort_by(|x, y| y.edges.len().cmp(&x.edges.len()).then_with(|| x.vertices.cmp(&y.vertices)).then(x.ends.cmp(&y.ends)));
    let root = Block { vertices: g.vertices().collect(), ends: None, edges: g.edge_ids().collect() };
    blocks.insert(0, root);
    let k = blocks.len();
    let mut parent = vec![None; k];
    let mut children = vec![Vec::new(); k];
    for i in 1..k {
        // smallest strictly larger block containing this one; earlier blocks are larger
        let p = (0..i).rev().find(|&j| blocks[j].edges.len() > blocks[i].edges.len() && blocks[i].edges.is_subset(&blocks[j].edges)).expect("root contains all");
        parent[i] = Some(p);
        children[p].push(i);
    }
    let artificial_base = g.next_edge_id();
    let mut tilde = Vec::with_capacity(k);
    let mut tilde_prime = Vec::with_capacity(k);
    for b in 0..k {
        let mut inner_of_children = BTreeSet::new();
        let mut child_edges = BTreeSet::new();
        for &c in &children[b] {
            inner_of_children.extend(blocks[c].inner());
            child_edges.extend(blocks[c].edges.iter().copied());
        }
        let mut t = Graph::new();
        for &v in blocks[b].vertices.difference(&inner_of_children) {
            t.add_vertex(v);
        }
        for &e in blocks[b].edges.difference(&child_edges) {
            t.insert_edge(*g.edge(e).unwrap()).expect("edge of block");
        }
        for &c in &children[b] {
            let VertexPair(u, v) = blocks[c].ends.unwrap();
            t.insert_edge(Edge { id: artificial_base + c, u, v, label: EdgeLabel::ArtificialType1 }).unwrap();
        }
        let mut tp = t.clone();
        if let Some(VertexPair(u, v)) = blocks[b].ends {
            tp.insert_edge(Edge { id: artificial_base + b, u, v, label: EdgeLabel::ArtificialType1 }).unwrap();
        }
        tilde.push(t);
        tilde_prime.push(tp);
    }
    BlockDecomposition { graph: g.clone(), blocks, parent, children, tilde, tilde_prime, artificial_base, moved_edges }
}
