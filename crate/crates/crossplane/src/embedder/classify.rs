//! Block sets R1, R2, R3 of one 2-connected component and the tunnels they
//! leave behind.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::EmbedError;
use crate::decomp::{BlockDecomposition, ConnectorInfo};
use crate::graph::{self, Edge, EdgeId, Graph, VertexId, VertexPair};
use crate::planarity::embed;

/// How many ancestors are pulled into R1 and R2 alongside a block.
pub const ANCESTOR_DEPTH: usize = 5;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockClassification {
    pub r1: BTreeSet<usize>,
    pub r2: BTreeSet<usize>,
    pub r3: BTreeSet<usize>,
    /// Cut vertices of `H` in the component plus endpoints of `E*` edges in it.
    pub s_x: BTreeSet<VertexId>,
    /// Cut vertices of `H` lying in the component.
    pub s1: BTreeSet<VertexId>,
    /// Vertices outside `s1` belonging to a 2-separator of the component.
    pub s2: BTreeSet<VertexId>,
    /// Component edges incident to `s1`.
    pub e1: BTreeSet<EdgeId>,
    /// Component edges with both ends in `s2`.
    pub e2: BTreeSet<EdgeId>,
}

impl BlockClassification {
    /// `R1 ∪ R2 ∪ R3`.
    pub fn r(&self) -> BTreeSet<usize> {
        self.r1.iter().chain(&self.r2).chain(&self.r3).copied().collect()
    }
}

/// A maximal chain `B_1 ⊃ … ⊃ B_κ` of blocks outside `R`, listed from the
/// top, together with the unique child of `B_κ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tunnel {
    pub blocks: Vec<usize>,
    pub child: usize,
}

impl Tunnel {
    /// Ends of `B_1, …, B_κ` followed by the ends of the child.
    pub fn end_pairs(&self, decomp: &BlockDecomposition) -> Vec<VertexPair> {
        self.blocks.iter().chain([&self.child]).map(|&b| decomp.blocks[b].ends.expect("tunnel blocks are not the root")).collect()
    }
}

fn with_ancestors(decomp: &BlockDecomposition, b: usize, into: &mut BTreeSet<usize>) {
    into.insert(b);
    into.extend(decomp.ancestors(b).into_iter().take(ANCESTOR_DEPTH));
}

/// Classifies the blocks of component `x`. `e_star` lists the removed edges
/// with their endpoints; `s1` holds the cut vertices of `H`.
pub fn classify_blocks(
    x: &Graph,
    decomp: &BlockDecomposition,
    connectors: &ConnectorInfo,
    e_star: &[Edge],
    s1: &BTreeSet<VertexId>,
) -> Result<BlockClassification, EmbedError> {
    let s1: BTreeSet<VertexId> = s1.iter().copied().filter(|&v| x.contains_vertex(v)).collect();
    let mut s_x = s1.clone();
    for e in e_star {
        s_x.extend([e.u, e.v].into_iter().filter(|&v| x.contains_vertex(v)));
    }
    let s2: BTreeSet<VertexId> = graph::two_separators(x).into_iter().flat_map(|p| [p.0, p.1]).filter(|v| !s1.contains(v)).collect();
    let e1 = x.edges().filter(|e| s1.contains(&e.u) || s1.contains(&e.v)).map(|e| e.id).collect();
    let e2 = x.edges().filter(|e| s2.contains(&e.u) && s2.contains(&e.v)).map(|e| e.id).collect();

    let mut r1 = BTreeSet::new();
    // a component without 2-separators has nothing to charge
    let blocks = if decomp.len() > 1 { 0..decomp.len() } else { 0..0 };
    for b in blocks {
        let children = &decomp.children[b];
        let own_connector = decomp.blocks[b].vertices.iter().any(|v| s_x.contains(v) && children.iter().all(|&c| !decomp.blocks[c].vertices.contains(v)));
        if b == 0 || children.is_empty() || decomp.tree_degree(b) > 2 || own_connector {
            with_ancestors(decomp, b, &mut r1);
        }
    }

    let mut r2 = BTreeSet::new();
    let connector_vertices: BTreeSet<VertexId> = connectors.blocks.values().map(|c| c.x).collect();
    for x_vertex in connector_vertices {
        // blocks sharing a connector are nested; the smallest has the fewest edges
        let smallest = connectors
            .blocks
            .iter()
            .filter(|(_, c)| c.x == x_vertex)
            .map(|(&b, _)| b)
            .min_by_key(|&b| (decomp.blocks[b].edges.len(), std::cmp::Reverse(b)))
            .expect("connector of some block");
        with_ancestors(decomp, smallest, &mut r2);
    }

    let mut r3 = BTreeSet::new();
    for b in 0..decomp.len() {
        if r1.contains(&b) || r2.contains(&b) || decomp.children[b].len() != 1 {
            continue;
        }
        let child = decomp.children[b][0];
        let VertexPair(u, v) = decomp.blocks[b].ends.expect("non-root");
        let VertexPair(u2, v2) = decomp.blocks[child].ends.expect("non-root");
        let emb = embed(&decomp.tilde_prime[b]).ok_or(EmbedError::SkeletonNotPlanar { block: b })?;
        if emb.common_face(&[u, v, u2, v2]).is_none() {
            r3.insert(b);
        }
    }

    Ok(BlockClassification { r1, r2, r3, s_x, s1, s2, e1, e2 })
}

/// Maximal tree paths of blocks outside `R`, ordered by their top block.
pub fn find_tunnels(cls: &BlockClassification, decomp: &BlockDecomposition) -> Vec<Tunnel> {
    let r = cls.r();
    let outside = |b: usize| !r.contains(&b) && b != 0;
    let mut out = Vec::new();
    for top in (1..decomp.len()).filter(|&b| outside(b)) {
        if decomp.parent[top].is_some_and(outside) {
            continue;
        }
        let mut blocks = vec![top];
        let mut cur = top;
        loop {
            // blocks outside R have exactly one child
            let child = decomp.children[cur][0];
            if outside(child) {
                blocks.push(child);
                cur = child;
            } else {
                out.push(Tunnel { blocks, child });
                break;
            }
        }
    }
    out
}
