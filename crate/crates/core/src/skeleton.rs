//! Skeleton-trees `st_ell`: complete binary trees whose nodes carry a rank
//! and belong to nested zones.
//!
//! Zones are never materialized. Each node stores its chain of zone-ancestors
//! (one node per rank from its own rank up to `ell`), which answers every
//! zone query downstream.

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::check::{Check, Report};
use crate::error::{Error, Result};

pub type NodeId = u32;

const NONE: NodeId = NodeId::MAX;

/// Largest `ell` built without an explicit override.
pub const MEMORY_GUARD: usize = 4;

/// `2^(2^ell - 1) - 1`, the node count of `st_ell`, or `None` on overflow.
pub fn skeleton_size(ell: usize) -> Option<u64> {
    if ell == 0 {
        return Some(0);
    }
    let exp = 1u32.checked_shl(ell as u32)?.checked_sub(1)?;
    1u64.checked_shl(exp).map(|p| p - 1)
}

#[derive(Clone, Debug)]
pub struct SkeletonTree {
    ell: usize,
    parent: Vec<NodeId>,
    left: Vec<NodeId>,
    right: Vec<NodeId>,
    pub(crate) rank: Vec<u8>,
    depth: Vec<u32>,
    /// `zone[t * ell + (i - 1)]` is the zone-ancestor of rank `i`; unused below `rank(t)`.
    pub(crate) zone: Vec<NodeId>,
}

fn opt(id: NodeId) -> Option<NodeId> {
    (id != NONE).then_some(id)
}

struct Builder {
    ell: usize,
    parent: Vec<NodeId>,
    left: Vec<NodeId>,
    right: Vec<NodeId>,
    rank: Vec<u8>,
    zone: Vec<NodeId>,
}

impl Builder {
    fn node(&mut self, rank: usize, chain: &[NodeId]) -> NodeId {
        let id = self.rank.len() as NodeId;
        self.parent.push(NONE);
        self.left.push(NONE);
        self.right.push(NONE);
        self.rank.push(rank as u8);
        self.zone.extend_from_slice(chain);
        self.zone[id as usize * self.ell + rank - 1] = id;
        id
    }

    fn attach(&mut self, s: NodeId, l: NodeId, r: NodeId) {
        self.left[s as usize] = l;
        self.right[s as usize] = r;
        self.parent[l as usize] = s;
        self.parent[r as usize] = s;
    }

    /// Builds a copy of `st_rank` below the zone-ancestors in `chain` and
    /// returns its root and its leaves.
    fn copy(&mut self, rank: usize, chain: &[NodeId]) -> (NodeId, Vec<NodeId>) {
        let root = self.node(rank, chain);
        if rank == 1 {
            return (root, vec![root]);
        }
        let mut inner = chain.to_vec();
        inner[rank - 1] = root;
        let (a, la) = self.copy(rank - 1, &inner);
        let (b, lb) = self.copy(rank - 1, &inner);
        self.attach(root, a, b);
        let mut leaves = Vec::new();
        for t in la.into_iter().chain(lb) {
            let (c, lc) = self.copy(rank - 1, &inner);
            let (d, ld) = self.copy(rank - 1, &inner);
            self.attach(t, c, d);
            leaves.extend(lc);
            leaves.extend(ld);
        }
        (root, leaves)
    }
}

impl SkeletonTree {
    /// `st_ell` with the default memory guard.
    pub fn build(ell: usize) -> Result<Self> {
        Self::build_with_override(ell, false)
    }

    /// `st_ell`; `allow_large` lifts the memory guard.
    pub fn build_with_override(ell: usize, allow_large: bool) -> Result<Self> {
        if ell == 0 || ell > u8::MAX as usize {
            return Err(Error::IndexOutOfRange { index: ell, max: u8::MAX as usize });
        }
        if ell > MEMORY_GUARD && !allow_large {
            return Err(Error::MemoryGuard { ell, guard: MEMORY_GUARD });
        }
        let size = skeleton_size(ell).filter(|&n| n < NONE as u64).ok_or(Error::MemoryGuard { ell, guard: MEMORY_GUARD })?;
        let n = size as usize;
        let mut b = Builder {
            ell,
            parent: Vec::with_capacity(n),
            left: Vec::with_capacity(n),
            right: Vec::with_capacity(n),
            rank: Vec::with_capacity(n),
            zone: Vec::with_capacity(n * ell),
        };
        b.copy(ell, &vec![NONE; ell]);
        Ok(Self::renumber_bfs(b))
    }

    fn renumber_bfs(b: Builder) -> Self {
        let n = b.rank.len();
        let ell = b.ell;
        let mut order = Vec::with_capacity(n);
        let mut new_id = vec![NONE; n];
        order.push(0 as NodeId);
        new_id[0] = 0;
        let mut head = 0;
        while head < order.len() {
            let v = order[head] as usize;
            head += 1;
            for c in [b.left[v], b.right[v]] {
                if c != NONE {
                    new_id[c as usize] = order.len() as NodeId;
                    order.push(c);
                }
            }
        }
        let map = |id: NodeId| if id == NONE { NONE } else { new_id[id as usize] };
        let mut st = SkeletonTree {
            ell,
            parent: Vec::with_capacity(n),
            left: Vec::with_capacity(n),
            right: Vec::with_capacity(n),
            rank: Vec::with_capacity(n),
            depth: Vec::with_capacity(n),
            zone: Vec::with_capacity(n * ell),
        };
        for &old in &order {
            let o = old as usize;
            st.parent.push(map(b.parent[o]));
            st.left.push(map(b.left[o]));
            st.right.push(map(b.right[o]));
            st.rank.push(b.rank[o]);
            st.zone.extend(b.zone[o * ell..(o + 1) * ell].iter().map(|&z| map(z)));
            let d = match opt(st.parent[st.parent.len() - 1]) {
                None => 1,
                Some(p) => st.depth[p as usize] + 1,
            };
            st.depth.push(d);
        }
        st
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    pub fn root(&self) -> NodeId {
        0
    }

    pub fn parent(&self, t: NodeId) -> Option<NodeId> {
        opt(self.parent[t as usize])
    }

    pub fn left(&self, t: NodeId) -> Option<NodeId> {
        opt(self.left[t as usize])
    }

    pub fn right(&self, t: NodeId) -> Option<NodeId> {
        opt(self.right[t as usize])
    }

    pub fn is_leaf(&self, t: NodeId) -> bool {
        self.left[t as usize] == NONE
    }

    pub fn rank(&self, t: NodeId) -> usize {
        self.rank[t as usize] as usize
    }

    /// Node depth, the root having depth 1.
    pub fn depth_of(&self, t: NodeId) -> u32 {
        self.depth[t as usize]
    }

    /// Number of nodes on a longest root-to-leaf path.
    pub fn depth(&self) -> u32 {
        self.depth.iter().copied().max().unwrap_or(0)
    }

    /// The node of rank `i` whose zone contains `t`; `t` itself when `i = rank(t)`.
    pub fn zone_ancestor(&self, t: NodeId, i: usize) -> Result<NodeId> {
        let r = self.rank(t);
        if i < r || i > self.ell {
            return Err(Error::RankOutOfRange { rank: i, min: r, max: self.ell });
        }
        Ok(self.zone[t as usize * self.ell + i - 1])
    }

    /// Unchecked variant for hot loops; `rank(t) <= i <= ell`.
    #[inline]
    pub(crate) fn za(&self, t: NodeId, i: usize) -> NodeId {
        self.zone[t as usize * self.ell + i - 1]
    }

    /// Whether `t` lies in `zone(s)`.
    pub fn in_zone(&self, t: NodeId, s: NodeId) -> bool {
        let i = self.rank(s);
        i >= self.rank(t) && self.za(t, i) == s
    }

    /// `(parent, child)` pairs in id order of the child.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        (1..self.len() as NodeId).map(move |t| (self.parent[t as usize], t))
    }

    /// Whether `t` is the left child of its parent.
    pub fn is_left_child(&self, t: NodeId) -> bool {
        self.parent(t).is_some_and(|s| self.left[s as usize] == t)
    }

    /// Number of nodes of each rank (slot 0 unused).
    pub fn rank_counts(&self) -> Vec<u64> {
        let mut c = vec![0u64; self.ell + 1];
        for &r in &self.rank {
            c[r as usize] += 1;
        }
        c
    }

    pub fn to_json(&self) -> SkeletonJson {
        SkeletonJson {
            format_version: crate::index_tree::FORMAT_VERSION,
            ell: self.ell,
            nodes: (0..self.len() as NodeId)
                .map(|t| SkeletonNodeJson {
                    id: t,
                    rank: self.rank(t),
                    depth: self.depth_of(t),
                    parent: self.parent(t),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SkeletonJson {
    pub format_version: u32,
    pub ell: usize,
    pub nodes: Vec<SkeletonNodeJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SkeletonNodeJson {
    pub id: NodeId,
    pub rank: usize,
    pub depth: u32,
    pub parent: Option<NodeId>,
}

/// Size, depth, rank-adjacency and zone-ancestor consistency checks.
pub fn verify_skeleton(st: &SkeletonTree) -> Report {
    let ell = st.ell();
    let mut r = Report::new();
    let expect = skeleton_size(ell).unwrap_or(u64::MAX);
    r.push(if st.len() as u64 == expect {
        Check::pass("node-count")
    } else {
        Check::fail("node-count", json!({ "expected": expect, "actual": st.len() }))
    });
    let expect_depth = (1u64 << ell) - 1;
    r.push(if st.depth() as u64 == expect_depth {
        Check::pass("depth")
    } else {
        Check::fail("depth", json!({ "expected": expect_depth, "actual": st.depth() }))
    });

    let witness = (|| {
        if st.rank(st.root()) != ell || st.rank_counts()[ell] != 1 {
            return Some(json!({ "root_rank": st.rank(st.root()), "rank_ell_nodes": st.rank_counts()[ell] }));
        }
        None
    })();
    r.push(Check::from_witness("unique-root-of-rank-ell", witness));

    let witness = st.edges().find_map(|(s, t)| {
        let (i, j) = (st.rank(s), st.rank(t));
        let ok = if i >= 2 { j == i - 1 } else { (1..ell.max(2)).contains(&j) };
        (!ok).then(|| json!({ "parent": s, "child": t, "parent_rank": i, "child_rank": j }))
    });
    r.push(Check::from_witness("rank-adjacency", witness));

    let witness = (0..st.len() as NodeId).find_map(|t| zone_witness(st, t));
    r.push(Check::from_witness("zone-ancestor-consistency", witness));
    r
}

fn zone_witness(st: &SkeletonTree, t: NodeId) -> Option<serde_json::Value> {
    let ell = st.ell();
    if st.za(t, st.rank(t)) != t {
        return Some(json!({ "node": t, "reason": "own rank does not map to itself" }));
    }
    // zone-ancestors lie on the path to the root, with increasing rank and depth decreasing
    let mut prev_depth = st.depth_of(t);
    for i in st.rank(t)..=ell {
        let s = st.za(t, i);
        if s as usize >= st.len() || st.rank(s) != i {
            return Some(json!({ "node": t, "rank": i, "ancestor": s, "reason": "wrong rank" }));
        }
        if st.depth_of(s) > prev_depth {
            return Some(json!({ "node": t, "rank": i, "ancestor": s, "reason": "not above" }));
        }
        prev_depth = st.depth_of(s);
        let mut x = t;
        while x != s {
            match st.parent(x) {
                Some(p) => x = p,
                None => return Some(json!({ "node": t, "rank": i, "ancestor": s, "reason": "not an ancestor" })),
            }
        }
        for k in i..=ell {
            if st.za(s, k) != st.za(t, k) {
                return Some(json!({ "node": t, "rank": i, "ancestor": s, "disagrees_at": k }));
            }
        }
    }
    // the parent's zone-ancestors of rank > rank(parent) are shared, except
    // across a rank-1 parent, whose child roots a fresh copy
    if let Some(p) = st.parent(t) {
        let from = st.rank(p).max(st.rank(t)) + 1;
        for k in from..=ell {
            if st.za(p, k) != st.za(t, k) {
                return Some(json!({ "node": t, "parent": p, "disagrees_at": k }));
            }
        }
    }
    None
}
