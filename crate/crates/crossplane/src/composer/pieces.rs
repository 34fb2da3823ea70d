//! Splitting a 2-connected graph into drawable pieces.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use super::DecomposeError;
use crate::decomp::{block_decomposition, BlockDecomposition};
use crate::graph::{self, Edge, EdgeId, EdgeLabel, Graph, VertexId, VertexPair};
use crate::planarity::is_planar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BlockReason {
    /// The whole remaining graph.
    Root,
    /// Contains an edge of `E*`.
    StarEdge,
    /// Has at least two children.
    Branching,
    /// Lies below the last block of a chain with a nice path between its ends.
    ChainEnd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PieceKind {
    /// A peeled nice block plus the type-1 edge joining its ends.
    Nice,
    /// A contracted block of the laminar family.
    Block(BlockReason),
    /// The part of a single-child chain above its last block with a nice
    /// path, closed by two artificial edges.
    Chain,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Piece {
    pub kind: PieceKind,
    pub graph: Graph,
    /// Removing these edges leaves the piece planar: the augmented set for
    /// block pieces, one artificial edge for nice and chain pieces.
    pub planarizing: BTreeSet<EdgeId>,
    /// Blocks of the laminar family whose own edges the piece holds.
    pub blocks: Vec<usize>,
}

/// A piece with every parallel class collapsed onto its lowest id.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Simplified {
    pub graph: Graph,
    /// Representative to the other edges of its class.
    pub copies: BTreeMap<EdgeId, Vec<EdgeId>>,
    /// Representatives of classes meeting the piece's planarizing set.
    pub planarizing: BTreeSet<EdgeId>,
}

impl Piece {
    pub fn artificial_edges(&self) -> impl Iterator<Item = &Edge> + '_ {
        self.graph.edges().filter(|e| e.label.is_artificial())
    }

    pub fn simplified(&self) -> Simplified {
        let mut graph = self.graph.clone();
        let mut copies = BTreeMap::new();
        let mut planarizing = BTreeSet::new();
        for class in self.graph.parallel_classes().into_values() {
            let rep = class[0];
            if class.iter().any(|e| self.planarizing.contains(e)) {
                planarizing.insert(rep);
            }
            if class.len() > 1 {
                for e in &class[1..] {
                    graph.remove_edge(*e);
                }
                copies.insert(rep, class[1..].to_vec());
            }
        }
        Simplified { graph, copies, planarizing }
    }
}

/// Node of the binary composition tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TreeNode {
    Leaf(usize),
    /// Composition of two subtrees along the one artificial edge they share.
    Merge { edge: EdgeId, children: [usize; 2] },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PieceSet {
    pub graph: Graph,
    pub e_star: BTreeSet<EdgeId>,
    /// The graph left after peeling nice blocks.
    pub peeled: Graph,
    /// Nice pieces first, then block and chain pieces in block order.
    pub pieces: Vec<Piece>,
    pub tree: Vec<TreeNode>,
    pub root: usize,
}

impl PieceSet {
    pub fn count(&self, pred: impl Fn(PieceKind) -> bool) -> usize {
        self.pieces.iter().filter(|p| pred(p.kind)).count()
    }

    /// Pieces below `node`, left to right.
    pub fn leaves(&self, node: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![node];
        while let Some(x) = stack.pop() {
            match self.tree[x] {
                TreeNode::Leaf(p) => out.push(p),
                TreeNode::Merge { children, .. } => {
                    stack.push(children[1]);
                    stack.push(children[0]);
                }
            }
        }
        out
    }

    /// Graph composed at `node`: the union of its pieces without the
    /// artificial edges shared inside the subtree.
    pub fn node_graph(&self, node: usize) -> Graph {
        let mut g = Graph::new();
        let mut seen: BTreeMap<EdgeId, usize> = BTreeMap::new();
        for p in self.leaves(node) {
            for v in self.pieces[p].graph.vertices() {
                g.add_vertex(v);
            }
            for e in self.pieces[p].graph.edges() {
                *seen.entry(e.id).or_default() += 1;
                if !g.contains_edge(e.id) {
                    g.insert_edge(*e).expect("fresh id");
                }
            }
        }
        for (e, k) in seen {
            if k > 1 {
                g.remove_edge(e);
            }
        }
        g
    }

    /// Tree nodes with every child before its parent; children left first.
    pub fn post_order(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.tree.len());
        let mut stack = vec![(self.root, false)];
        while let Some((x, expanded)) = stack.pop() {
            match self.tree[x] {
                TreeNode::Merge { children, .. } if !expanded => {
                    stack.push((x, true));
                    stack.push((children[1], false));
                    stack.push((children[0], false));
                }
                _ => out.push(x),
            }
        }
        out
    }
}

/// Decomposes a 2-connected simple graph whose remainder `g \ e_star` is
/// planar into nice, block and chain pieces plus their composition tree.
pub fn decompose_for_drawing(g: &Graph, e_star: &BTreeSet<EdgeId>) -> Result<PieceSet, DecomposeError> {
    if let Some(&e) = e_star.iter().find(|e| !g.contains_edge(**e)) {
        return Err(DecomposeError::UnknownEdge(e));
    }
    if !g.is_simple() {
        return Err(DecomposeError::NotSimple);
    }
    if g.vertex_count() < 3 || !g.is_connected() || !graph::cut_vertices(g).is_empty() {
        return Err(DecomposeError::NotBiconnected);
    }
    if !is_planar(&g.without_edges(e_star)) {
        return Err(DecomposeError::NonPlanarRemainder);
    }

    let mut peeled = g.clone();
    let mut pieces = Vec::new();
    while let Some((vs, ends)) = max_nice_block(&peeled, e_star) {
        let VertexPair(a, b) = ends;
        let mut piece = peeled.induced_subgraph(&vs);
        for e in piece.edges_between(a, b) {
            piece.remove_edge(e);
        }
        for &x in vs.iter().filter(|&&x| !ends.contains(x)) {
            peeled.remove_vertex(x);
        }
        let id = peeled.add_labeled_edge(a, b, EdgeLabel::ArtificialType1).expect("ends survive");
        piece.insert_edge(*peeled.edge(id).unwrap()).expect("fresh id");
        pieces.push(Piece { kind: PieceKind::Nice, graph: piece, planarizing: BTreeSet::from([id]), blocks: vec![] });
    }

    // the laminar family ignores parallel copies; they follow their representative
    let mut rep_of: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();
    for class in peeled.parallel_classes().into_values() {
        for &e in &class[1..] {
            rep_of.insert(e, class[0]);
        }
    }
    let simple = peeled.without_edges(rep_of.keys());
    let dec = block_decomposition(&simple).map_err(|_| DecomposeError::NotBiconnected)?;
    let covered = family_pieces(&dec, e_star);
    for (kind, blocks, graph, planarizing) in covered {
        let mut graph = graph;
        for (&copy, rep) in &rep_of {
            if graph.contains_edge(*rep) {
                graph.insert_edge(*peeled.edge(copy).unwrap()).expect("fresh id");
            }
        }
        pieces.push(Piece { kind, graph, planarizing, blocks });
    }

    let (tree, root) = composition_tree(&pieces)?;
    Ok(PieceSet { graph: g.clone(), e_star: e_star.clone(), peeled, pieces, tree, root })
}

/// Largest nice block of `h` (fewest vertices outside it), ties broken by
/// the smallest vertex set. At a separator whose components are all nice,
/// the smallest component stays outside.
fn max_nice_block(h: &Graph, e_star: &BTreeSet<EdgeId>) -> Option<(BTreeSet<VertexId>, VertexPair)> {
    let mut best: Option<(BTreeSet<VertexId>, VertexPair)> = None;
    for pair in graph::two_separators(h) {
        let VertexPair(a, b) = pair;
        let comps = h.components_avoiding(&HashSet::from([a, b]));
        let nice: Vec<bool> = comps
            .iter()
            .map(|c| c.iter().all(|&x| h.incident(x).iter().all(|e| !e_star.contains(e))))
            .collect();
        let mut chosen: Vec<usize> = (0..comps.len()).filter(|&i| nice[i]).collect();
        if chosen.is_empty() {
            continue;
        }
        if chosen.len() == comps.len() {
            let smallest = (0..comps.len()).min_by_key(|&i| (comps[i].len(), comps[i].first().copied())).unwrap();
            chosen.retain(|&i| i != smallest);
        }
        let mut vs: BTreeSet<VertexId> = chosen.iter().flat_map(|&i| comps[i].iter().copied()).collect();
        vs.extend([a, b]);
        let better = best.as_ref().is_none_or(|(bv, _)| vs.len() > bv.len() || vs.len() == bv.len() && vs < *bv);
        if better {
            best = Some((vs, pair));
        }
    }
    best
}

type FamilyPiece = (PieceKind, Vec<usize>, Graph, BTreeSet<EdgeId>);

fn relabeled(mut g: Graph, dec: &BlockDecomposition) -> Graph {
    let ids: Vec<EdgeId> = g.edge_ids().filter(|&e| e >= dec.artificial_base).collect();
    for e in ids {
        g.set_label(e, EdgeLabel::ArtificialType2).expect("edge present");
    }
    g
}

/// Block and chain pieces of the laminar family, in block order.
fn family_pieces(dec: &BlockDecomposition, e_star: &BTreeSet<EdgeId>) -> Vec<FamilyPiece> {
    let k = dec.len();
    let mut reason: Vec<Option<BlockReason>> = vec![None; k];
    reason[0] = Some(BlockReason::Root);
    for b in 1..k {
        if dec.tilde_prime[b].edge_ids().any(|e| e_star.contains(&e)) {
            reason[b] = Some(BlockReason::StarEdge);
        } else if dec.children[b].len() >= 2 {
            reason[b] = Some(BlockReason::Branching);
        }
    }
    // chains of the remaining single-child blocks, listed from the top
    let mut chain_of: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for b in 1..k {
        if reason[b].is_some() || dec.parent[b].is_some_and(|p| reason[p].is_none()) {
            continue;
        }
        let mut chain = vec![b];
        while let [c] = dec.children[*chain.last().unwrap()][..] {
            if reason[c].is_some() {
                break;
            }
            chain.push(c);
        }
        let has_nice_path = |x: usize| {
            let VertexPair(u, v) = dec.blocks[x].ends.expect("non-root block");
            let banned: HashSet<EdgeId> = e_star.iter().copied().collect();
            dec.graph.edge_subgraph(&dec.blocks[x].edges).bfs_path(u, v, &HashSet::new(), &banned).is_some()
        };
        // 0-based i*; without any nice path the whole chain stays in blocks
        let star = (0..chain.len()).rev().find(|&i| has_nice_path(chain[i])).unwrap_or(0);
        for &x in &chain[star..] {
            reason[x] = Some(BlockReason::ChainEnd);
        }
        if star > 0 {
            chain_of.insert(b, chain[..star].to_vec());
        }
    }

    let mut out = Vec::new();
    for b in 0..k {
        if let Some(r) = reason[b] {
            let g = relabeled(dec.tilde_prime[b].clone(), dec);
            let planarizing = g.edges().filter(|e| e_star.contains(&e.id) || e.label == EdgeLabel::ArtificialType2).map(|e| e.id).collect();
            out.push((PieceKind::Block(r), vec![b], g, planarizing));
        } else if let Some(chain) = chain_of.get(&b) {
            let mut g = Graph::new();
            for &x in chain {
                for v in dec.tilde[x].vertices() {
                    g.add_vertex(v);
                }
                for e in dec.tilde[x].edges() {
                    g.insert_edge(*e).expect("chain blocks share no edges");
                }
            }
            for &x in &chain[1..] {
                g.remove_edge(dec.artificial_edge(x));
            }
            let top = dec.artificial_edge(b);
            let VertexPair(u, v) = dec.blocks[b].ends.expect("non-root block");
            g.insert_edge(Edge { id: top, u, v, label: EdgeLabel::ArtificialType1 }).expect("fresh id");
            out.push((PieceKind::Chain, chain.clone(), relabeled(g, dec), BTreeSet::from([top])));
        }
    }
    out
}

/// Folds the pieces into a binary tree. Pieces sharing an artificial edge
/// are adjacent; from the piece holding the root block, every piece absorbs
/// its child subtrees one by one in ascending piece order.
fn composition_tree(pieces: &[Piece]) -> Result<(Vec<TreeNode>, usize), DecomposeError> {
    let mut holders: BTreeMap<EdgeId, Vec<usize>> = BTreeMap::new();
    for (i, p) in pieces.iter().enumerate() {
        for e in p.artificial_edges() {
            holders.entry(e.id).or_default().push(i);
        }
    }
    if holders.len() + 1 != pieces.len() {
        return Err(DecomposeError::Internal(format!("{} pieces share {} artificial edges", pieces.len(), holders.len())));
    }
    let mut adjacent: Vec<Vec<(usize, EdgeId)>> = vec![Vec::new(); pieces.len()];
    for (&e, hs) in &holders {
        let [a, b] = hs[..] else {
            return Err(DecomposeError::Internal(format!("artificial edge {e} lies in {} pieces", hs.len())));
        };
        adjacent[a].push((b, e));
        adjacent[b].push((a, e));
    }
    for list in &mut adjacent {
        list.sort_unstable();
    }
    let root_piece = pieces.iter().position(|p| p.blocks.first() == Some(&0)).expect("root block has a piece");

    let mut tree = Vec::new();
    let mut visited = vec![false; pieces.len()];
    // explicit stack: (piece, current node, next child index)
    visited[root_piece] = true;
    tree.push(TreeNode::Leaf(root_piece));
    let mut stack: Vec<(usize, usize, usize)> = vec![(root_piece, 0, 0)];
    let mut finished: Option<usize> = None;
    while let Some(top) = stack.last_mut() {
        if let Some(sub) = finished.take() {
            let (_, node, i) = *top;
            let edge = adjacent[top.0][i - 1].1;
            tree.push(TreeNode::Merge { edge, children: [node, sub] });
            top.1 = tree.len() - 1;
        }
        let (p, node, i) = *top;
        if let Some(&(c, _)) = adjacent[p].get(i) {
            top.2 += 1;
            if visited[c] {
                continue;
            }
            visited[c] = true;
            tree.push(TreeNode::Leaf(c));
            stack.push((c, tree.len() - 1, 0));
        } else {
            stack.pop();
            if !stack.is_empty() {
                finished = Some(node);
            } else {
                let root = node;
                if visited.iter().any(|v| !v) {
                    return Err(DecomposeError::Internal("pieces are not connected by artificial edges".into()));
                }
                return Ok((tree, root));
            }
        }
    }
    unreachable!("the root frame returns")
}
