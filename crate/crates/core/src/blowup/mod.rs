//! The blow-up `G(T)` of a ribbed-tree.
//!
//! Every tree-node `n` becomes a triangle with vertex ids `3n` (top-left),
//! `3n + 1` (top-right) and `3n + 2` (bottom); the top edge joins the first
//! two. Blocking node `b` becomes two paths `x1 x2 x3`, one per barrier side,
//! with ids `3N + 6b + 3 side + k`. Barrier endpoints are identified with
//! triangle vertices, so no extra vertices exist for `s` and `t`.

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexId};
use crate::ribbed::RibbedTree;
use crate::skeleton::NodeId;

pub mod certificate;
pub mod degeneracy;
pub mod export;
pub mod hamiltonian;

pub use certificate::{check_path, PathCertificate, PathKind};
pub use degeneracy::{degeneracy, verify_degeneracy, DegeneracyCertificate};
pub use hamiltonian::hamiltonian_path;

/// How barrier endpoints are glued to triangles, recorded in every export.
pub const CONVENTION: &str = "left child t of s: left barrier LT(s)..LT(t), right barrier B(s)..RT(t); \
right child t of s: right barrier RT(s)..RT(t), left barrier B(s)..LT(t); \
representatives ordered x1 x2 x3 from s to t; ribs x1-B, x2-RT, x3-LT of the rib-top triangle";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VertexKind {
    TriangleTopLeft,
    TriangleTopRight,
    TriangleBottom,
    RepresentativeX1,
    RepresentativeX2,
    RepresentativeX3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeKind {
    TriangleTop,
    TriangleOther,
    Barrier,
    RibE1,
    RibE2,
    RibE3,
    HoppingRibE1,
    HoppingRibE2,
    HoppingRibE3,
}

impl EdgeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeKind::TriangleTop => "triangle-top",
            EdgeKind::TriangleOther => "triangle-other",
            EdgeKind::Barrier => "barrier",
            EdgeKind::RibE1 => "rib-e1",
            EdgeKind::RibE2 => "rib-e2",
            EdgeKind::RibE3 => "rib-e3",
            EdgeKind::HoppingRibE1 => "hopping-rib-e1",
            EdgeKind::HoppingRibE2 => "hopping-rib-e2",
            EdgeKind::HoppingRibE3 => "hopping-rib-e3",
        }
    }

    pub fn is_rib(self) -> bool {
        !matches!(self, EdgeKind::TriangleTop | EdgeKind::TriangleOther | EdgeKind::Barrier)
    }
}

pub const TOP_LEFT: u32 = 0;
pub const TOP_RIGHT: u32 = 1;
pub const BOTTOM: u32 = 2;

#[derive(Clone, Debug)]
pub struct BlowupGraph {
    ribbed: RibbedTree,
    graph: Graph,
    /// Deduplicated `(u, v, kind)` with `u < v`, sorted; the first kind
    /// generated wins when two rules produce the same pair.
    edges: Vec<(VertexId, VertexId, EdgeKind)>,
}

impl BlowupGraph {
    pub fn build(ribbed: RibbedTree) -> Self {
        Self::build_inner(ribbed, false)
    }

    /// Variant gluing every left child with the right-child rule and vice versa.
    pub(crate) fn build_inner(ribbed: RibbedTree, mirrored: bool) -> Self {
        let st = ribbed.skeleton();
        let n = st.len() as VertexId;
        let tri = |node: NodeId, role: u32| 3 * node + role;
        let rep = |b: usize, side: u32, k: u32| 3 * n + 6 * b as VertexId + 3 * side + k;
        let mut edges: Vec<(VertexId, VertexId, EdgeKind)> = Vec::new();
        for node in 0..n {
            edges.push((tri(node, TOP_LEFT), tri(node, TOP_RIGHT), EdgeKind::TriangleTop));
            edges.push((tri(node, TOP_LEFT), tri(node, BOTTOM), EdgeKind::TriangleOther));
            edges.push((tri(node, TOP_RIGHT), tri(node, BOTTOM), EdgeKind::TriangleOther));
        }
        for (s, t) in st.edges() {
            for side in [Side::Left, Side::Right] {
                let (a, z) = barrier_endpoints(st.is_left_child(t) != mirrored, side);
                let sd = side as u32;
                let mut prev = tri(s, a);
                for b in ribbed.barrier(t) {
                    edges.push((prev, rep(b, sd, 0), EdgeKind::Barrier));
                    edges.push((rep(b, sd, 0), rep(b, sd, 1), EdgeKind::Barrier));
                    edges.push((rep(b, sd, 1), rep(b, sd, 2), EdgeKind::Barrier));
                    prev = rep(b, sd, 2);
                }
                edges.push((prev, tri(t, z), EdgeKind::Barrier));
            }
        }
        for (b, blk) in ribbed.blocking_nodes().iter().enumerate() {
            let kinds = if blk.hopping {
                [EdgeKind::HoppingRibE1, EdgeKind::HoppingRibE2, EdgeKind::HoppingRibE3]
            } else {
                [EdgeKind::RibE1, EdgeKind::RibE2, EdgeKind::RibE3]
            };
            for sd in 0..2 {
                edges.push((rep(b, sd, 0), tri(blk.rib_top, BOTTOM), kinds[0]));
                edges.push((rep(b, sd, 1), tri(blk.rib_top, TOP_RIGHT), kinds[1]));
                edges.push((rep(b, sd, 2), tri(blk.rib_top, TOP_LEFT), kinds[2]));
            }
        }
        // keep the first kind per pair: stable sort on the normalized pair
        let mut keyed: Vec<(VertexId, VertexId, usize, EdgeKind)> =
            edges.into_iter().enumerate().map(|(i, (u, v, k))| (u.min(v), u.max(v), i, k)).collect();
        keyed.sort_unstable_by_key(|&(u, v, i, _)| (u, v, i));
        keyed.dedup_by_key(|e| (e.0, e.1));
        let edges: Vec<_> = keyed.into_iter().map(|(u, v, _, k)| (u, v, k)).collect();
        let count = 3 * ribbed.tree_node_count() + 6 * ribbed.blocking_count();
        let graph = Graph::from_edges(count, edges.iter().map(|&(u, v, _)| (u, v)));
        BlowupGraph { ribbed, graph, edges }
    }

    pub fn ribbed(&self) -> &RibbedTree {
        &self.ribbed
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn ell(&self) -> usize {
        self.ribbed.ell()
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn typed_edges(&self) -> &[(VertexId, VertexId, EdgeKind)] {
        &self.edges
    }

    pub fn edge_kind(&self, u: VertexId, v: VertexId) -> Option<EdgeKind> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search_by_key(&key, |&(a, b, _)| (a, b)).ok().map(|i| self.edges[i].2)
    }

    pub fn triangle_vertex_count(&self) -> VertexId {
        3 * self.ribbed.tree_node_count() as VertexId
    }

    pub fn is_triangle(&self, v: VertexId) -> bool {
        v < self.triangle_vertex_count()
    }

    /// Skeleton node of a triangle-vertex.
    pub fn node(&self, v: VertexId) -> Option<NodeId> {
        self.is_triangle(v).then_some(v / 3)
    }

    /// Blocking node, side and position (0..3) of a representative.
    pub fn representative(&self, v: VertexId) -> Option<(usize, Side, u32)> {
        let off = v.checked_sub(self.triangle_vertex_count())?;
        let side = if (off % 6) < 3 { Side::Left } else { Side::Right };
        Some(((off / 6) as usize, side, off % 3))
    }

    pub fn triangle(&self, node: NodeId) -> [VertexId; 3] {
        [3 * node, 3 * node + 1, 3 * node + 2]
    }

    pub fn rep(&self, b: usize, side: Side, k: u32) -> VertexId {
        self.triangle_vertex_count() + 6 * b as VertexId + 3 * side as u32 + k
    }

    pub fn kind(&self, v: VertexId) -> VertexKind {
        match (self.is_triangle(v), v % 3, self.representative(v)) {
            (true, 0, _) => VertexKind::TriangleTopLeft,
            (true, 1, _) => VertexKind::TriangleTopRight,
            (true, _, _) => VertexKind::TriangleBottom,
            (false, _, Some((_, _, 0))) => VertexKind::RepresentativeX1,
            (false, _, Some((_, _, 1))) => VertexKind::RepresentativeX2,
            _ => VertexKind::RepresentativeX3,
        }
    }

    pub fn rank(&self, v: VertexId) -> usize {
        match self.node(v) {
            Some(n) => self.ribbed.skeleton().rank(n),
            None => self.ribbed.blocking(self.representative(v).expect("in range").0).rank,
        }
    }

    /// Ribbed-tree node a vertex originates from.
    pub fn pi(&self, v: VertexId) -> usize {
        match self.node(v) {
            Some(n) => n as usize,
            None => self.ribbed.tree_node_count() + self.representative(v).expect("in range").0,
        }
    }

    pub fn side(&self, v: VertexId) -> Option<Side> {
        self.representative(v).map(|(_, s, _)| s)
    }

    /// Rib-top node of a representative.
    pub fn rib_top(&self, v: VertexId) -> Option<NodeId> {
        self.representative(v).map(|(b, _, _)| self.ribbed.blocking(b).rib_top)
    }
}

/// Triangle roles of the `(s, t)` endpoints of one barrier side.
pub(crate) fn barrier_endpoints(left_child: bool, side: Side) -> (u32, u32) {
    match (left_child, side) {
        (true, Side::Left) => (TOP_LEFT, TOP_LEFT),
        (true, Side::Right) => (BOTTOM, TOP_RIGHT),
        (false, Side::Right) => (TOP_RIGHT, TOP_RIGHT),
        (false, Side::Left) => (BOTTOM, TOP_LEFT),
    }
}
