//! Drawing surgery for composition: parallel copies and merges along a
//! shared artificial edge.

use crate::drawing::{Drawing, DrawingError, Sketch, DUMMY_BASE};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::inserter::{uncross_sketch, UncrossOptions};

use super::pieces::{Piece, Simplified};

/// Turns a drawing of a simplified piece into a drawing of the piece: every
/// parallel copy runs right beside its representative.
pub(super) fn expand(d: &Drawing, piece: &Piece, simple: &Simplified) -> Result<Drawing, DrawingError> {
    if simple.copies.is_empty() {
        return Ok(d.clone());
    }
    let mut sk = Sketch::from_drawing(d);
    sk.graph = piece.graph.clone();
    for (&rep, copies) in &simple.copies {
        for &c in copies {
            sk.double_curve(rep, c)?;
        }
    }
    sk.finish()
}

/// Merges `moved` into `keep` along their shared edge `edge`. The copy of
/// `u` in `moved` travels along the curve of `edge` through both drawings
/// into `u`, dragging its other edges with it, so every curve crossing
/// `edge` in either drawing crosses that bundle instead. The copy of the
/// other end joins its twin through a curve that crosses nothing.
pub(super) fn merge(keep: &Drawing, moved: &Drawing, edge: EdgeId, u: VertexId, merged: &Graph) -> Result<Drawing, DrawingError> {
    let e = *keep.graph.edge(edge).ok_or(DrawingError::BrokenCurve(edge))?;
    let v = e.other(u);
    let fresh = keep.graph.next_vertex_id().max(moved.graph.next_vertex_id());
    if fresh + 2 > DUMMY_BASE {
        return Err(DrawingError::Surgery("vertex ids reach the dummy range".into()));
    }
    let (u2, v2) = (fresh, fresh + 1);
    let joint = keep.graph.next_edge_id().max(moved.graph.next_edge_id());
    let mut other = Sketch::from_drawing(moved);
    other.rename_vertices(&[(u, u2), (v, v2)].into_iter().collect());

    for mirrored in [false, true] {
        let mut sk = Sketch::from_drawing(keep);
        let mut o = other.clone();
        if mirrored {
            o.mirror();
        }
        sk.absorb(o);
        // cut both curves next to v and reconnect them crosswise: v to its
        // copy, and the two remaining halves of `edge` into one curve
        let [a1] = sk.darts_of(v, edge)[..] else { return Err(DrawingError::BrokenCurve(edge)) };
        let [a2] = sk.darts_of(v2, edge)[..] else { return Err(DrawingError::BrokenCurve(edge)) };
        sk.swap_darts(a1.twin(), a2);
        sk.set_owner(a1.edge, joint);
        if sk.embedding().is_err() {
            continue;
        }
        sk.absorb_along(v2, joint, true)?;
        sk.absorb_along(u2, edge, true)?;
        sk.graph = merged.clone();
        sk.e_star.retain(|x| merged.contains_edge(*x));
        uncross_sketch(&mut sk, UncrossOptions { adjacent: true })?;
        return sk.finish();
    }
    Err(DrawingError::Surgery(format!("no orientation joins the drawings along {edge}")))
}
