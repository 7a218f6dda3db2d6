//! Constructive Hamiltonian path of a blow-up graph.
//!
//! The tour of a subtree enters its root triangle at the top-left vertex and
//! leaves it at the top-right vertex. Between them it descends into the left
//! child along the child's descent barrier (the one ending at the child's
//! top-left vertex), tours it, and climbs back along the other barrier, which
//! ends at the bottom vertex; the right child is handled the same way from
//! the bottom vertex back up to the top-right vertex. Ribs are never used.

use super::{barrier_endpoints, BlowupGraph, Side, BOTTOM, TOP_LEFT, TOP_RIGHT};
use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::skeleton::NodeId;

fn barrier_interior(g: &BlowupGraph, t: NodeId, side: Side, out: &mut Vec<VertexId>, reverse: bool) {
    let range = g.ribbed().barrier(t);
    if reverse {
        for b in range.rev() {
            out.extend([2, 1, 0].map(|k| g.rep(b, side, k)));
        }
    } else {
        for b in range {
            out.extend([0, 1, 2].map(|k| g.rep(b, side, k)));
        }
    }
}

fn tour(g: &BlowupGraph, s: NodeId, out: &mut Vec<VertexId>) {
    let st = g.ribbed().skeleton();
    let [lt, rt, bottom] = g.triangle(s);
    out.push(lt);
    let children = [st.left(s), st.right(s)];
    if children.iter().all(Option::is_none) {
        out.extend([bottom, rt]);
        return;
    }
    for (c, exit) in children.into_iter().zip([bottom, rt]) {
        let Some(c) = c else { continue };
        let left = st.is_left_child(c);
        // descend on the side that ends at the child's top-left vertex
        let (down, up) = match (barrier_endpoints(left, Side::Left), barrier_endpoints(left, Side::Right)) {
            ((_, TOP_LEFT), _) => (Side::Left, Side::Right),
            _ => (Side::Right, Side::Left),
        };
        debug_assert_eq!(barrier_endpoints(left, up).1, TOP_RIGHT);
        debug_assert_eq!(barrier_endpoints(left, up).0, if left { BOTTOM } else { TOP_RIGHT });
        barrier_interior(g, c, down, out, false);
        tour(g, c, out);
        barrier_interior(g, c, up, out, true);
        out.push(exit);
    }
}

/// A Hamiltonian path of `g`, checked before it is returned.
pub fn hamiltonian_path(g: &BlowupGraph) -> Result<Vec<VertexId>> {
    let mut path = Vec::with_capacity(g.vertex_count());
    tour(g, g.ribbed().skeleton().root(), &mut path);
    let report = super::check_path(g.graph(), &path, true, false);
    let failure = report.failures().next().map(|c| c.to_string());
    match failure {
        None => Ok(path),
        Some(c) => Err(Error::HamiltonianFailed(c)),
    }
}
