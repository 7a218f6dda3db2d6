//! Index-trees: partial binary trees on `1..=ell` labeled by reverse
//! left-child-first depth-first order.
//!
//! The labeling makes every subtree a contiguous integer range ending at its
//! root: `T(i) = lo(i)..=i`. Left subtrees carry larger labels than right
//! subtrees, and every index exceeds all of its descendants.

use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `m` for which `floor(m / alpha)` is computed exactly in `f64`.
pub const MAX_EXACT_M: u64 = 1 << 40;

/// Parameter of the unbalanced family `T_alpha(m)`; always strictly above 2.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Alpha(f64);

impl Alpha {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value > 2.0 {
            Ok(Alpha(value))
        } else {
            Err(Error::InvalidAlpha(value))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Parameter used for left subtrees: `alpha * (alpha - 1)`.
    pub fn left(self) -> Alpha {
        Alpha(self.0 * (self.0 - 1.0))
    }

    fn split(self, m: u64) -> u64 {
        (m as f64 / self.0).floor() as u64
    }
}

impl TryFrom<f64> for Alpha {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Alpha::new(value)
    }
}

impl From<Alpha> for f64 {
    fn from(a: Alpha) -> f64 {
        a.0
    }
}

/// Unlabeled binary shape. Arena slots are arbitrary; labels are assigned by
/// [`IndexTree::from_shape`].
#[derive(Clone, Debug, Default)]
pub struct TreeShape {
    children: Vec<(Option<usize>, Option<usize>)>,
    root: Option<usize>,
}

impl TreeShape {
    pub fn len(&self) -> usize {
        self.children.len()
    }

    pub fn is_empty(&self) -> bool {
        self.children.is_empty()
    }

    fn node(&mut self) -> usize {
        self.children.push((None, None));
        self.children.len() - 1
    }

    /// Complete binary shape with `depth` levels.
    pub fn complete(depth: u32) -> Self {
        fn grow(s: &mut TreeShape, depth: u32) -> Option<usize> {
            if depth == 0 {
                return None;
            }
            let v = s.node();
            let l = grow(s, depth - 1);
            let r = grow(s, depth - 1);
            s.children[v] = (l, r);
            Some(v)
        }
        let mut s = TreeShape::default();
        s.root = grow(&mut s, depth);
        s
    }

    /// Shape of `T_alpha(m)`: left child `T_{alpha(alpha-1)}(floor(m/alpha))`,
    /// right child `T_alpha(m - floor(m/alpha) - 1)`.
    pub fn unbalanced(m: u64, alpha: Alpha) -> Result<Self> {
        if m > MAX_EXACT_M {
            return Err(Error::TooLarge(m));
        }
        fn grow(s: &mut TreeShape, m: u64, alpha: Alpha) -> Option<usize> {
            if m == 0 {
                return None;
            }
            let v = s.node();
            let k = alpha.split(m);
            let l = grow(s, k, alpha.left());
            let r = grow(s, m - k - 1, alpha);
            s.children[v] = (l, r);
            Some(v)
        }
        let mut s = TreeShape::default();
        s.root = grow(&mut s, m, alpha);
        Ok(s)
    }

    /// Most balanced shape on `n` nodes: `ceil((n-1)/2)` nodes go left.
    /// Coincides with [`TreeShape::complete`] when `n = 2^d - 1`.
    pub fn balanced(n: usize) -> Self {
        fn grow(s: &mut TreeShape, n: usize) -> Option<usize> {
            if n == 0 {
                return None;
            }
            let v = s.node();
            let rest = n - 1;
            let l = grow(s, rest - rest / 2);
            let r = grow(s, rest / 2);
            s.children[v] = (l, r);
            Some(v)
        }
        let mut s = TreeShape::default();
        s.root = grow(&mut s, n);
        s
    }
}

/// An `ell`-index-tree. Slot 0 of every per-index table is unused.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexTree {
    ell: usize,
    parent: Vec<Option<usize>>,
    left: Vec<Option<usize>>,
    right: Vec<Option<usize>>,
    /// Smallest index of `T(i)`.
    lo: Vec<usize>,
}

impl IndexTree {
    /// The empty tree (`T_alpha(0)`).
    pub fn empty() -> Self {
        IndexTree { ell: 0, parent: vec![None], left: vec![None], right: vec![None], lo: vec![0] }
    }

    /// Labels a shape by one reverse left-child-first DFS pass.
    pub fn from_shape(shape: &TreeShape) -> Self {
        let ell = shape.len();
        let mut label = vec![0usize; ell];
        let mut next = ell;
        let mut stack: Vec<usize> = shape.root.into_iter().collect();
        while let Some(v) = stack.pop() {
            label[v] = next;
            next -= 1;
            let (l, r) = shape.children[v];
            stack.extend(r);
            stack.extend(l);
        }
        let mut links = Vec::with_capacity(ell);
        for (v, &(l, r)) in shape.children.iter().enumerate() {
            links.push((label[v], l.map(|c| label[c]), r.map(|c| label[c])));
        }
        let t = IndexTree::from_links_unchecked(ell, &links);
        debug_assert!(t.validate().is_ok());
        t
    }

    /// Builds a tree from `(index, left, right)` triples without checking the
    /// labeling; call [`IndexTree::validate`] before relying on it.
    pub fn from_links_unchecked(ell: usize, links: &[(usize, Option<usize>, Option<usize>)]) -> Self {
        let mut t = IndexTree {
            ell,
            parent: vec![None; ell + 1],
            left: vec![None; ell + 1],
            right: vec![None; ell + 1],
            lo: (0..=ell).collect(),
        };
        for &(i, l, r) in links {
            if i == 0 || i > ell {
                continue;
            }
            t.left[i] = l;
            t.right[i] = r;
            for c in [l, r].into_iter().flatten() {
                if (1..=ell).contains(&c) {
                    t.parent[c] = Some(i);
                }
            }
        }
        t.compute_lo();
        t
    }

    fn compute_lo(&mut self) {
        let Some(root) = self.root() else { return };
        // post-order with a visited guard so malformed input cannot loop
        let mut seen = vec![false; self.ell + 1];
        let mut stack = vec![(root, false)];
        while let Some((v, done)) = stack.pop() {
            if done {
                let mut lo = v;
                for c in self.children(v) {
                    if (1..=self.ell).contains(&c) {
                        lo = lo.min(self.lo[c]);
                    }
                }
                self.lo[v] = lo;
                continue;
            }
            if seen[v] {
                continue;
            }
            seen[v] = true;
            stack.push((v, true));
            for c in self.children(v) {
                if (1..=self.ell).contains(&c) && !seen[c] {
                    stack.push((c, false));
                }
            }
        }
    }

    /// Complete binary index-tree; `ell` must be `2^d - 1`.
    pub fn build_complete(ell: usize) -> Result<Self> {
        if ell == 0 || !(ell + 1).is_power_of_two() {
            return Err(Error::NotComplete(ell));
        }
        Ok(IndexTree::from_shape(&TreeShape::complete((ell + 1).trailing_zeros())))
    }

    /// The unbalanced tree `T_alpha(m)`.
    pub fn build_unbalanced(m: u64, alpha: Alpha) -> Result<Self> {
        Ok(IndexTree::from_shape(&TreeShape::unbalanced(m, alpha)?))
    }

    /// Balanced tree on `ell` indices; equal to [`IndexTree::build_complete`]
    /// whenever that one is defined.
    pub fn build_balanced(ell: usize) -> Self {
        IndexTree::from_shape(&TreeShape::balanced(ell))
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn is_empty(&self) -> bool {
        self.ell == 0
    }

    pub fn root(&self) -> Option<usize> {
        (self.ell > 0).then_some(self.ell)
    }

    fn check(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.ell {
            Err(Error::IndexOutOfRange { index: i, max: self.ell })
        } else {
            Ok(())
        }
    }

    pub fn parent(&self, i: usize) -> Option<usize> {
        self.parent[i]
    }

    /// Left child `i^-`.
    pub fn left(&self, i: usize) -> Option<usize> {
        self.left[i]
    }

    /// Right child `i^+`.
    pub fn right(&self, i: usize) -> Option<usize> {
        self.right[i]
    }

    pub fn children(&self, i: usize) -> impl Iterator<Item = usize> {
        self.left[i].into_iter().chain(self.right[i])
    }

    pub fn child_count(&self, i: usize) -> usize {
        self.left[i].is_some() as usize + self.right[i].is_some() as usize
    }

    pub fn is_leaf(&self, i: usize) -> bool {
        self.child_count(i) == 0
    }

    /// Indices of `T(i)`, as the contiguous range `lo(i)..=i`.
    pub fn subtree_indices(&self, i: usize) -> Result<RangeInclusive<usize>> {
        self.check(i)?;
        Ok(self.lo[i]..=i)
    }

    /// Whether `j` lies in `T(k)`.
    pub fn in_subtree(&self, j: usize, k: usize) -> bool {
        (1..=self.ell).contains(&k) && self.lo[k] <= j && j <= k
    }

    pub fn subtree_size(&self, i: usize) -> usize {
        i + 1 - self.lo[i]
    }

    /// `i` followed by its ancestors up to the root.
    pub fn ancestors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        std::iter::successors(Some(i), move |&v| self.parent[v])
    }

    /// Order of a longest root-to-leaf path (root has depth 1); 0 when empty.
    pub fn depth(&self) -> usize {
        let mut depth = vec![0usize; self.ell + 1];
        let mut best = 0;
        // parents carry larger labels, so a descending sweep sees them first
        for i in (1..=self.ell).rev() {
            depth[i] = self.parent[i].map_or(1, |p| depth[p] + 1);
            best = best.max(depth[i]);
        }
        best
    }

    /// Checks every structural and labeling invariant, reporting the first
    /// violation with a witnessing index.
    pub fn validate(&self) -> Result<()> {
        let ell = self.ell;
        let bad = |reason: &str, witness: usize| Err(Error::InvalidTree { reason: reason.to_string(), witness });
        if self.parent.len() != ell + 1 || self.left.len() != ell + 1 || self.right.len() != ell + 1 {
            return bad("table sizes disagree with ell", ell);
        }
        if ell == 0 {
            return Ok(());
        }
        let mut incoming = vec![0usize; ell + 1];
        for i in 1..=ell {
            if let (Some(l), Some(r)) = (self.left[i], self.right[i]) {
                if l == r {
                    return bad("left and right child coincide", i);
                }
            }
            for c in self.children(i) {
                if c == 0 || c > ell {
                    return bad("child index out of range", i);
                }
                if c == i {
                    return bad("index is its own child", i);
                }
                if self.parent[c] != Some(i) {
                    return bad("parent map disagrees with child map", c);
                }
                incoming[c] += 1;
            }
        }
        if self.parent[ell].is_some() || incoming[ell] != 0 {
            return bad("root ell has a parent", ell);
        }
        for i in 1..ell {
            if incoming[i] != 1 {
                return bad("non-root index must have exactly one parent", i);
            }
            match self.parent[i] {
                Some(p) if self.left[p] == Some(i) || self.right[p] == Some(i) => {}
                _ => return bad("parent map disagrees with child map", i),
            }
        }
        // reverse left-first preorder must read ell, ell-1, ..., 1
        let mut seen = vec![false; ell + 1];
        let mut expect = ell;
        let mut stack = vec![ell];
        while let Some(v) = stack.pop() {
            if seen[v] {
                return bad("structure is not a tree", v);
            }
            seen[v] = true;
            if v != expect {
                return bad("label differs from reverse left-child DFS order", v);
            }
            expect -= 1;
            stack.extend(self.right[v]);
            stack.extend(self.left[v]);
        }
        if let Some(i) = (1..=ell).find(|&i| !seen[i]) {
            return bad("index unreachable from the root", i);
        }
        Ok(())
    }

    pub fn to_json(&self) -> IndexTreeJson {
        IndexTreeJson {
            format_version: FORMAT_VERSION,
            ell: self.ell,
            nodes: (1..=self.ell)
                .rev()
                .map(|i| NodeJson { id: i, left: self.left[i], right: self.right[i] })
                .collect(),
        }
    }

    /// Parses and validates the JSON form.
    pub fn from_json(json: &IndexTreeJson) -> Result<Self> {
        let links: Vec<_> = json.nodes.iter().map(|n| (n.id, n.left, n.right)).collect();
        let mut ids: Vec<usize> = json.nodes.iter().map(|n| n.id).collect();
        ids.sort_unstable();
        if ids != (1..=json.ell).collect::<Vec<_>>() {
            return Err(Error::InvalidTree {
                reason: "node ids must be exactly 1..=ell".into(),
                witness: ids.iter().copied().find(|&i| i == 0 || i > json.ell).unwrap_or(json.ell),
            });
        }
        let t = IndexTree::from_links_unchecked(json.ell, &links);
        t.validate()?;
        Ok(t)
    }
}

pub const FORMAT_VERSION: u32 = 1;

fn default_version() -> u32 {
    FORMAT_VERSION
}

/// `{ "ell": L, "nodes": [ { "id": i, "left": j|null, "right": k|null } ] }`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndexTreeJson {
    #[serde(default = "default_version")]
    pub format_version: u32,
    pub ell: usize,
    pub nodes: Vec<NodeJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NodeJson {
    pub id: usize,
    pub left: Option<usize>,
    pub right: Option<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn links(t: &IndexTree) -> Vec<(usize, Option<usize>, Option<usize>)> {
        (1..=t.ell()).rev().map(|i| (i, t.left(i), t.right(i))).collect()
    }

    #[test]
    fn complete_one_and_three() {
        let t = IndexTree::build_complete(1).unwrap();
        assert_eq!(links(&t), vec![(1, None, None)]);
        let t = IndexTree::build_complete(3).unwrap();
        assert_eq!(links(&t), vec![(3, Some(2), Some(1)), (2, None, None), (1, None, None)]);
    }

    #[test]
    fn complete_seven() {
        let t = IndexTree::build_complete(7).unwrap();
        assert_eq!(t.root(), Some(7));
        assert_eq!((t.left(7), t.right(7)), (Some(6), Some(3)));
        assert_eq!((t.left(6), t.right(6)), (Some(5), Some(4)));
        assert_eq!((t.left(3), t.right(3)), (Some(2), Some(1)));
        assert!([5, 4, 2, 1].iter().all(|&i| t.is_leaf(i)));
    }

    #[test]
    fn complete_rejects_other_sizes() {
        for ell in [0, 2, 4, 5, 6, 8, 12] {
            assert!(matches!(IndexTree::build_complete(ell), Err(Error::NotComplete(_))), "ell={ell}");
        }
    }

    #[test]
    fn unbalanced_small_cases() {
        let a3 = Alpha::new(3.0).unwrap();
        assert!(IndexTree::build_unbalanced(0, a3).unwrap().is_empty());
        for a in [2.1, 3.0, 8.0] {
            let t = IndexTree::build_unbalanced(1, Alpha::new(a).unwrap()).unwrap();
            assert_eq!(links(&t), vec![(1, None, None)]);
        }
        let t = IndexTree::build_unbalanced(7, a3).unwrap();
        assert_eq!(
            links(&t),
            vec![
                (7, Some(6), Some(4)),
                (6, None, Some(5)),
                (5, None, None),
                (4, Some(3), Some(2)),
                (3, None, None),
                (2, None, Some(1)),
                (1, None, None),
            ]
        );
    }

    #[test]
    fn alpha_must_exceed_two() {
        for a in [2.0, 1.0, -3.0, f64::NAN, f64::INFINITY] {
            assert!(Alpha::new(a).is_err());
        }
        assert!(TreeShape::unbalanced(MAX_EXACT_M + 1, Alpha::new(3.0).unwrap()).is_err());
    }

    #[test]
    fn subtree_ranges() {
        let t = IndexTree::build_complete(7).unwrap();
        assert_eq!(t.subtree_indices(6).unwrap(), 4..=6);
        assert_eq!(t.subtree_indices(7).unwrap(), 1..=7);
        assert_eq!(t.subtree_indices(1).unwrap(), 1..=1);
        assert!(t.subtree_indices(0).is_err());
        assert!(t.subtree_indices(8).is_err());
    }

    #[test]
    fn validate_catches_swapped_subtrees() {
        // node 3 with left child 1 and right child 2: right label exceeds left
        let t = IndexTree::from_links_unchecked(3, &[(3, Some(1), Some(2)), (2, None, None), (1, None, None)]);
        let err = t.validate().unwrap_err();
        assert!(matches!(err, Error::InvalidTree { .. }), "{err}");
    }

    #[test]
    fn validate_catches_forest_and_bad_root() {
        let t = IndexTree::from_links_unchecked(3, &[(3, Some(2), None), (2, None, None), (1, None, None)]);
        assert!(t.validate().is_err());
        let t = IndexTree::from_links_unchecked(2, &[(1, Some(2), None), (2, None, None)]);
        assert!(t.validate().is_err());
    }

    #[test]
    fn constructed_trees_validate() {
        IndexTree::build_complete(7).unwrap().validate().unwrap();
        IndexTree::build_unbalanced(100, Alpha::new(3.0).unwrap()).unwrap().validate().unwrap();
        for n in 0..40 {
            IndexTree::build_balanced(n).validate().unwrap();
        }
    }

    #[test]
    fn balanced_matches_complete() {
        for ell in [1, 3, 7, 15, 31] {
            assert_eq!(IndexTree::build_balanced(ell), IndexTree::build_complete(ell).unwrap());
        }
    }

    #[test]
    fn json_round_trip_and_rejection() {
        let t = IndexTree::build_unbalanced(9, Alpha::new(3.0).unwrap()).unwrap();
        let json = serde_json::to_string(&t.to_json()).unwrap();
        let back: IndexTreeJson = serde_json::from_str(&json).unwrap();
        assert_eq!(IndexTree::from_json(&back).unwrap(), t);
        let bad = IndexTreeJson {
            format_version: 1,
            ell: 2,
            nodes: vec![NodeJson { id: 2, left: None, right: Some(3) }, NodeJson { id: 1, left: None, right: None }],
        };
        assert!(IndexTree::from_json(&bad).is_err());
    }

    /// Independent relabeling: recursive left-first preorder over the shape
    /// read from the tree itself.
    fn relabel(t: &IndexTree) -> Vec<usize> {
        fn go(t: &IndexTree, v: usize, out: &mut Vec<usize>) {
            out.push(v);
            if let Some(l) = t.left(v) {
                go(t, l, out);
            }
            if let Some(r) = t.right(v) {
                go(t, r, out);
            }
        }
        let mut out = Vec::new();
        if let Some(r) = t.root() {
            go(t, r, &mut out);
        }
        out
    }

    #[test]
    fn node_count_of_unbalanced_family() {
        for a in [2.1, 2.5, 3.0, 4.0, 8.0] {
            let alpha = Alpha::new(a).unwrap();
            for m in 0..=2000u64 {
                let shape = TreeShape::unbalanced(m, alpha).unwrap();
                assert_eq!(shape.len() as u64, m, "alpha={a} m={m}");
            }
        }
    }

    #[test]
    fn depth_of_t3_within_five_log() {
        // brute force over the range: max depth(T_3(m)) / log2(3m) is 4.87,
        // reached at m = 1962 (depth 61); 4 already fails at m = 1116
        let alpha = Alpha::new(3.0).unwrap();
        for m in 1..=2000u64 {
            let t = IndexTree::build_unbalanced(m, alpha).unwrap();
            assert!(t.depth() as f64 <= 5.0 * ((3 * m) as f64).log2(), "m={m} depth={}", t.depth());
        }
    }

    proptest! {
        #[test]
        fn labeling_is_reverse_preorder(m in 0u64..400, a in prop::sample::select(vec![2.1, 2.5, 3.0, 4.0, 8.0])) {
            let t = IndexTree::build_unbalanced(m, Alpha::new(a).unwrap()).unwrap();
            let order = relabel(&t);
            let expect: Vec<usize> = (1..=t.ell()).rev().collect();
            prop_assert_eq!(order, expect);
        }

        #[test]
        fn right_subtree_below_left_below_root(n in 1usize..200) {
            let t = IndexTree::build_balanced(n);
            for i in 1..=n {
                if let (Some(l), Some(r)) = (t.left(i), t.right(i)) {
                    let lr = t.subtree_indices(l).unwrap();
                    let rr = t.subtree_indices(r).unwrap();
                    prop_assert!(rr.end() < lr.start() && lr.end() < &i);
                }
            }
        }
    }
}
