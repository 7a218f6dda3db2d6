//! Ribbed-trees: skeleton edges subdivided into barrier-paths whose blocking
//! nodes are tied by ribs to zone-ancestors.
//!
//! Tree-nodes keep their skeleton ids `0..n`. Blocking node `k` has ribbed id
//! `n + k`. The blocking nodes of one skeleton edge are stored contiguously,
//! ordered from the parent `s` to the child `t`.

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::barrier_words::{collapse, BarrierIndex};
use crate::check::{Check, Report};
use crate::error::{Error, Result};
use crate::index_tree::IndexTree;
use crate::skeleton::{NodeId, SkeletonTree};

/// A subdivision node of a barrier-path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Blocking {
    /// Child endpoint `t` of the skeleton edge `(s, t)` carrying this node.
    pub edge: NodeId,
    /// Index represented; equals the rank of `rib_top`.
    pub rank: usize,
    /// Top endpoint of the rib, a zone-ancestor of `s`.
    pub rib_top: NodeId,
    /// Position of the represented letter in its source word: `B(i, i-1)`
    /// for a parent of rank `i >= 2`, `B(j, 1)` for a parent of rank 1.
    pub word_pos: usize,
    /// Whether the rib is the hopping rib of a rank-1 parent edge.
    pub hopping: bool,
}

#[derive(Clone, Debug)]
pub struct RibbedTree {
    skeleton: SkeletonTree,
    tree: IndexTree,
    /// `start[t]..start[t + 1]` indexes the blocking nodes of the edge into `t`.
    start: Vec<u32>,
    pub(crate) blocking: Vec<Blocking>,
}

/// Ranks of the blocking nodes of an edge from a rank-`i` parent to a
/// rank-`j` child, in order from parent to child, with source positions.
fn barrier_letters(idx: &BarrierIndex, i: usize, j: usize) -> Vec<(usize, usize)> {
    if i >= 2 {
        let f = idx.factor(i, i - 1).expect("i - 1 < i");
        (1..f.len() - 1).map(|k| (f[k], k)).collect()
    } else if j == 1 {
        vec![(1, 0)]
    } else {
        // y_p .. y_1 read from s, then z carrying j
        let f = idx.factor(j, 1).expect("1 < j");
        let mut out: Vec<(usize, usize)> = (1..f.len() - 1).rev().map(|k| (f[k], k)).collect();
        out.push((j, 0));
        out
    }
}

impl RibbedTree {
    pub fn build(skeleton: SkeletonTree, tree: &IndexTree) -> Result<Self> {
        if skeleton.ell() != tree.ell() {
            return Err(Error::EllMismatch { tree: tree.ell(), skeleton: skeleton.ell() });
        }
        tree.validate()?;
        let ell = tree.ell();
        let idx = BarrierIndex::new(tree);
        // letters per (parent rank, child rank); only (i, i-1) and (1, j) occur
        let mut table: Vec<Vec<Option<Vec<(usize, usize)>>>> = vec![vec![None; ell + 1]; ell + 1];
        let n = skeleton.len();
        let mut start = Vec::with_capacity(n + 1);
        let mut blocking = Vec::new();
        start.push(0);
        start.push(0);
        for t in 1..n as NodeId {
            let s = skeleton.parent(t).expect("non-root");
            let (i, j) = (skeleton.rank(s), skeleton.rank(t));
            let letters = table[i][j].get_or_insert_with(|| barrier_letters(&idx, i, j));
            let len = letters.len();
            for (k, &(rank, word_pos)) in letters.iter().enumerate() {
                let hopping = i == 1 && k + 1 == len;
                blocking.push(Blocking { edge: t, rank, rib_top: skeleton.za(s, rank), word_pos, hopping });
            }
            start.push(blocking.len() as u32);
        }
        Ok(RibbedTree { skeleton, tree: tree.clone(), start, blocking })
    }

    pub fn ell(&self) -> usize {
        self.skeleton.ell()
    }

    pub fn skeleton(&self) -> &SkeletonTree {
        &self.skeleton
    }

    pub fn index_tree(&self) -> &IndexTree {
        &self.tree
    }

    pub fn tree_node_count(&self) -> usize {
        self.skeleton.len()
    }

    pub fn blocking_count(&self) -> usize {
        self.blocking.len()
    }

    pub fn node_count(&self) -> usize {
        self.tree_node_count() + self.blocking_count()
    }

    pub fn blocking(&self, k: usize) -> &Blocking {
        &self.blocking[k]
    }

    pub fn blocking_nodes(&self) -> &[Blocking] {
        &self.blocking
    }

    /// Blocking-node indices on the edge into `t`, from parent to child.
    pub fn barrier(&self, t: NodeId) -> std::ops::Range<usize> {
        self.start[t as usize] as usize..self.start[t as usize + 1] as usize
    }

    /// Rank of a ribbed node id (tree-node or `n + k`).
    pub fn rank(&self, id: usize) -> usize {
        let n = self.tree_node_count();
        if id < n {
            self.skeleton.rank(id as NodeId)
        } else {
            self.blocking[id - n].rank
        }
    }

    /// Typed edges over ribbed ids, barrier-paths first, in skeleton edge order.
    pub fn typed_edges(&self) -> Vec<(usize, usize, RibbedEdgeKind)> {
        let n = self.tree_node_count();
        let mut out = Vec::new();
        for (s, t) in self.skeleton.edges() {
            let mut prev = s as usize;
            for k in self.barrier(t) {
                out.push((prev, n + k, RibbedEdgeKind::BarrierPath));
                prev = n + k;
            }
            out.push((prev, t as usize, RibbedEdgeKind::BarrierPath));
        }
        for (k, b) in self.blocking.iter().enumerate() {
            let kind = if b.hopping { RibbedEdgeKind::HoppingRib } else { RibbedEdgeKind::Rib };
            out.push((n + k, b.rib_top as usize, kind));
        }
        out
    }

    pub fn to_json(&self) -> RibbedJson {
        let n = self.tree_node_count();
        let nodes = (0..self.node_count())
            .map(|id| RibbedNodeJson {
                id,
                kind: if id < n { RibbedNodeKind::Tree } else { RibbedNodeKind::Blocking },
                rank: self.rank(id),
            })
            .collect();
        let edges = self.typed_edges().into_iter().map(|(u, v, kind)| RibbedEdgeJson { u, v, kind }).collect();
        RibbedJson { format_version: crate::index_tree::FORMAT_VERSION, ell: self.ell(), nodes, edges }
    }

    /// `u v kind` lines.
    pub fn to_edge_list(&self) -> String {
        let mut s = String::new();
        for (u, v, kind) in self.typed_edges() {
            s.push_str(&format!("{u} {v} {}\n", kind.as_str()));
        }
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RibbedNodeKind {
    Tree,
    Blocking,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RibbedEdgeKind {
    BarrierPath,
    Rib,
    HoppingRib,
}

impl RibbedEdgeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RibbedEdgeKind::BarrierPath => "barrier-path",
            RibbedEdgeKind::Rib => "rib",
            RibbedEdgeKind::HoppingRib => "hopping-rib",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RibbedJson {
    pub format_version: u32,
    pub ell: usize,
    pub nodes: Vec<RibbedNodeJson>,
    pub edges: Vec<RibbedEdgeJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RibbedNodeJson {
    pub id: usize,
    pub kind: RibbedNodeKind,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RibbedEdgeJson {
    pub u: usize,
    pub v: usize,
    pub kind: RibbedEdgeKind,
}

/// Per-edge barrier words, rib endpoints and hopping ribs.
pub fn verify_ribbed(rt: &RibbedTree) -> Report {
    let st = rt.skeleton();
    let idx = BarrierIndex::new(rt.index_tree());
    let mut r = Report::new();

    // expected rank word of the whole barrier-path, read from s to t
    let expected_trace = |i: usize, j: usize| -> Vec<usize> {
        if i >= 2 {
            idx.factor(i, i - 1).map(|f| f.to_vec()).unwrap_or_default()
        } else if j == 1 {
            vec![1]
        } else {
            idx.factor(j, 1).map(|f| f.iter().rev().copied().collect()).unwrap_or_default()
        }
    };

    let mut ranks_witness = None;
    let mut trace_witness = None;
    let mut hop_witness = None;
    for (s, t) in st.edges() {
        let (i, j) = (st.rank(s), st.rank(t));
        let nodes = &rt.blocking[rt.barrier(t)];
        let ranks: Vec<usize> = nodes.iter().map(|b| b.rank).collect();
        let expect = expected_trace(i, j);
        let internal: Vec<usize> = if i >= 2 {
            expect[1..expect.len() - 1].to_vec()
        } else if j == 1 {
            vec![1]
        } else {
            expect[1..].to_vec()
        };
        if ranks_witness.is_none() && ranks != internal {
            ranks_witness = Some(json!({ "edge": [s, t], "ranks": ranks, "expected": internal }));
        }
        let mut word = vec![i];
        word.extend(&ranks);
        word.push(j);
        let trace = collapse(&word).into_letters();
        if trace_witness.is_none() && trace != expect {
            trace_witness = Some(json!({ "edge": [s, t], "trace": trace, "expected": expect }));
        }
        let hops: Vec<usize> = nodes.iter().enumerate().filter(|(_, b)| b.hopping).map(|(k, _)| k).collect();
        let hop_ok = if i == 1 { hops == [nodes.len() - 1] } else { hops.is_empty() };
        if hop_witness.is_none() && !hop_ok {
            hop_witness = Some(json!({ "edge": [s, t], "hopping_positions": hops }));
        }
    }
    r.push(Check::from_witness("blocking-ranks-match-barrier", ranks_witness));
    r.push(Check::from_witness("barrier-trace", trace_witness));
    r.push(Check::from_witness("hopping-rib-placement", hop_witness));

    let witness = rt.blocking.iter().enumerate().find_map(|(k, b)| {
        let s = st.parent(b.edge)?;
        let expect = st.zone_ancestor(s, b.rank).ok();
        (expect != Some(b.rib_top) || st.rank(b.rib_top) != b.rank)
            .then(|| json!({ "blocking": k, "rib_top": b.rib_top, "expected": expect }))
    });
    r.push(Check::from_witness("rib-top-is-zone-ancestor", witness));
    r
}
