//! Numeric barrier-size bounds for the unbalanced family `T_alpha(m)`.

use serde::Serialize;

use super::barrier_lengths;
use crate::error::{Error, Result};
use crate::index_tree::{Alpha, IndexTree};

/// Barrier lengths with the padded one-child convention
/// `B(i) = i i B(i-1) i i`, which dominates the real barrier.
pub fn padded_barrier_lengths(t: &IndexTree) -> Vec<u64> {
    let mut len = vec![0u64; t.ell() + 1];
    for i in 1..=t.ell() {
        let l = t.left(i).map_or(0, |c| len[c]);
        let r = t.right(i).map_or(0, |c| len[c]);
        len[i] = if t.is_leaf(i) { 1 } else { 2 * l + r + 4 };
    }
    len
}

/// `4 m log2(alpha m) / log2(alpha - 1)`; zero for the empty tree.
pub fn barrier_bound(m: u64, alpha: Alpha) -> f64 {
    if m == 0 {
        return 0.0;
    }
    let a = alpha.value();
    4.0 * m as f64 * (a * m as f64).log2() / (a - 1.0).log2()
}

/// `4 m log2(alpha m) alpha / log2(alpha - 1)`.
pub fn chain_bound(m: u64, alpha: Alpha) -> f64 {
    barrier_bound(m, alpha) * alpha.value()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BarrierLengthBound {
    pub m: u64,
    pub alpha: f64,
    /// `|B(m)|` with the one-child rule `i B(i-1) i`.
    pub actual: u64,
    /// `|B(m)|` with the padded one-child rule.
    pub padded: u64,
    pub bound: f64,
}

impl BarrierLengthBound {
    pub fn holds(&self) -> bool {
        self.actual <= self.padded && self.padded as f64 <= self.bound
    }
}

/// Root barrier length of `T_alpha(m)` in both conventions, and the bound.
pub fn barrier_length_bound(m: u64, alpha: Alpha) -> Result<BarrierLengthBound> {
    let t = IndexTree::build_unbalanced(m, alpha)?;
    let (actual, padded) = match t.root() {
        Some(r) => (barrier_lengths(&t)[r], padded_barrier_lengths(&t)[r]),
        None => (0, 0),
    };
    Ok(BarrierLengthBound { m, alpha: alpha.value(), actual, padded, bound: barrier_bound(m, alpha) })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainBound {
    pub chain: Vec<usize>,
    pub sum: u64,
    pub bound: f64,
}

impl ChainBound {
    pub fn holds(&self) -> bool {
        self.sum as f64 <= self.bound
    }
}

/// `sum |B(k_i)|` over a chain where each `T(k_{i+1})` is a proper subtree of
/// `T(k_i)`, against the bound for `t = T_alpha(ell)`.
pub fn nested_chain_sum_bound(t: &IndexTree, alpha: Alpha, chain: &[usize]) -> Result<ChainBound> {
    for &k in chain {
        if k == 0 || k > t.ell() {
            return Err(Error::IndexOutOfRange { index: k, max: t.ell() });
        }
    }
    for pair in chain.windows(2) {
        let (outer, inner) = (pair[0], pair[1]);
        if inner == outer || !t.in_subtree(inner, outer) {
            return Err(Error::NotNested { outer, inner });
        }
    }
    let lens = barrier_lengths(t);
    Ok(ChainBound {
        chain: chain.to_vec(),
        sum: chain.iter().map(|&k| lens[k]).sum(),
        bound: chain_bound(t.ell() as u64, alpha),
    })
}

/// Properly nested chain from the root maximizing `sum |B(k_i)|`.
///
/// Barrier lengths are positive, so an optimal chain always continues into a
/// child; `best(k) = |B(k)| + max over children best(c)`.
pub fn max_nested_chain(t: &IndexTree) -> (Vec<usize>, u64) {
    let Some(root) = t.root() else { return (Vec::new(), 0) };
    let lens = barrier_lengths(t);
    let mut best = vec![0u64; t.ell() + 1];
    let mut pick = vec![None; t.ell() + 1];
    for i in 1..=t.ell() {
        let mut top = 0;
        for c in t.children(i) {
            if best[c] > top {
                top = best[c];
                pick[i] = Some(c);
            }
        }
        best[i] = lens[i] + top;
    }
    let chain: Vec<usize> = std::iter::successors(Some(root), |&k| pick[k]).collect();
    (chain, best[root])
}
