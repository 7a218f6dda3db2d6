//! Exhaustive checker for the structural statements about index-barriers.
//!
//! Every statement is tested over all applicable index tuples, and where a
//! statement quantifies over factors of `B(ell)`, over all factors. A factor
//! property that is monotone under extension is checked on all pairs of
//! endpoint positions, which covers every factor.

use serde_json::json;

use super::{collapse, full_barrier, is_factor, BarrierIndex};
use crate::check::{Check, Report};
use crate::error::{Error, Result};
use crate::index_tree::IndexTree;

/// Largest `ell` accepted by [`check_word_properties`].
pub const EXHAUSTIVE_CAP: usize = 12;

/// Runs every statement and returns one [`Check`] per statement.
pub fn check_word_properties(t: &IndexTree) -> Result<Report> {
    if t.ell() > EXHAUSTIVE_CAP {
        return Err(Error::AboveCap { ell: t.ell(), cap: EXHAUSTIVE_CAP });
    }
    t.validate()?;
    let cx = Ctx::new(t);
    let mut report = Report::new();
    report.push(Check::from_witness("descendant-smaller", cx.descendant_smaller()));
    report.push(Check::from_witness("factors-contain-shortest-path", cx.factors_contain_shortest_path()));
    report.push(Check::from_witness("decreasing-first-occurrences", cx.decreasing_first_occurrences()));
    report.push(Check::from_witness("concatenation-of-barriers", cx.concatenation_of_barriers()));
    report.push(Check::from_witness("i-j-intermediate", cx.i_j_intermediate()));
    report.push(Check::from_witness("i-iminusone-intermediate", cx.i_iminusone_intermediate()));
    report.push(Check::from_witness("smaller-index-incomparable-right-child", cx.smaller_index_placement()));
    report.push(Check::from_witness("parent-to-descendant-consecutive", cx.parent_to_descendant()));
    report.push(Check::from_witness("factors-bounded-by-b-are-equal", cx.bounded_factors_equal()));
    report.push(Check::from_witness("reach-is-equivalence", cx.reach_is_equivalence()));
    report.push(Check::from_witness("same-subtree", cx.same_subtree()));
    Ok(report)
}

struct Ctx<'a> {
    t: &'a IndexTree,
    ell: usize,
    idx: BarrierIndex,
}

impl<'a> Ctx<'a> {
    fn new(t: &'a IndexTree) -> Self {
        Ctx { t, ell: t.ell(), idx: BarrierIndex::new(t) }
    }

    fn word(&self) -> &[usize] {
        self.idx.word()
    }

    /// Indices on the tree path between `i` and `j`, endpoints included.
    fn tree_path(&self, i: usize, j: usize) -> Vec<usize> {
        let up_i: Vec<usize> = self.t.ancestors(i).collect();
        let up_j: Vec<usize> = self.t.ancestors(j).collect();
        let lca = *up_i.iter().find(|k| up_j.contains(k)).expect("connected tree");
        let mut path: Vec<usize> = up_i.iter().copied().take_while(|&k| k != lca).collect();
        path.push(lca);
        let down: Vec<usize> = up_j.iter().copied().take_while(|&k| k != lca).collect();
        path.extend(down.into_iter().rev());
        path
    }

    /// Subtrees that may host an index below `b`: `T(b^-)` and `T(k^+)` for
    /// every ancestor `k` of `b` (including `b`).
    fn hosts(&self, b: usize) -> Vec<usize> {
        let mut roots: Vec<usize> = self.t.left(b).into_iter().collect();
        roots.extend(self.t.ancestors(b).filter_map(|k| self.t.right(k)));
        roots
    }

    fn descendant_smaller(&self) -> Option<serde_json::Value> {
        for i in 1..=self.ell {
            if let (Some(l), Some(r)) = (self.t.left(i), self.t.right(i)) {
                let bl = full_barrier(self.t, l).ok()?;
                let br = full_barrier(self.t, r).ok()?;
                let (lmin, lmax) = (*bl.iter().min()?, *bl.iter().max()?);
                let rmax = *br.iter().max()?;
                if !(rmax < lmin && lmax < i) {
                    return Some(json!({ "i": i, "max_right": rmax, "min_left": lmin, "max_left": lmax }));
                }
            }
        }
        None
    }

    fn factors_contain_shortest_path(&self) -> Option<serde_json::Value> {
        let w = self.word();
        let mut paths = vec![vec![Vec::new(); self.ell + 1]; self.ell + 1];
        for i in 1..=self.ell {
            for j in 1..=self.ell {
                paths[i][j] = self.tree_path(i, j);
            }
        }
        for p in 0..w.len() {
            let mut present = vec![false; self.ell + 1];
            for q in p..w.len() {
                present[w[q]] = true;
                if let Some(&miss) = paths[w[p]][w[q]].iter().find(|&&k| !present[k]) {
                    return Some(json!({ "from": p, "to": q, "i": w[p], "j": w[q], "missing": miss }));
                }
            }
        }
        None
    }

    fn decreasing_first_occurrences(&self) -> Option<serde_json::Value> {
        for k in 1..=self.ell {
            let bk = full_barrier(self.t, k).ok()?;
            let mut first = vec![usize::MAX; k + 1];
            for (pos, &l) in bk.iter().enumerate() {
                first[l] = first[l].min(pos);
            }
            for i in 1..k {
                for j in 1..i {
                    if first[i] != usize::MAX && first[j] != usize::MAX && first[i] > first[j] {
                        return Some(json!({ "k": k, "i": i, "j": j }));
                    }
                }
            }
        }
        None
    }

    fn concatenation_of_barriers(&self) -> Option<serde_json::Value> {
        if self.ell < 2 {
            return None;
        }
        for mask in 0u32..(1 << self.ell) {
            if mask.count_ones() < 2 {
                continue;
            }
            let seq: Vec<usize> = (1..=self.ell).rev().filter(|&i| mask & (1 << (i - 1)) != 0).collect();
            let mut cat = Vec::new();
            for pair in seq.windows(2) {
                cat.extend_from_slice(self.idx.factor(pair[0], pair[1]).ok()?);
            }
            let c = collapse(&cat);
            if !is_factor(&c, self.word()) {
                return Some(json!({ "sequence": seq, "collapsed": c.letters() }));
            }
        }
        None
    }

    fn i_j_intermediate(&self) -> Option<serde_json::Value> {
        for i in 2..=self.ell {
            let to_one = self.idx.factor(i, 1).ok();
            for j in 1..i {
                let f = self.idx.factor(i, j).ok()?;
                let all_between = (j..=i).all(|k| f.contains(&k));
                let internal_j = f[..f.len() - 1].contains(&j);
                let below_j = f.iter().any(|&k| k < j);
                // prefix of B(i,1) up to its first j is B(i,j)
                let prefix_ok = match (to_one, j) {
                    (_, 1) => true,
                    (Some(b1), _) => b1.iter().position(|&k| k == j).map(|p| &b1[..=p]) == Some(f),
                    (None, _) => false,
                };
                if !all_between || internal_j || below_j || !prefix_ok {
                    return Some(json!({ "i": i, "j": j, "factor": f }));
                }
            }
        }
        None
    }

    fn i_iminusone_intermediate(&self) -> Option<serde_json::Value> {
        for i in 2..=self.ell {
            let f = self.idx.factor(i, i - 1).ok()?;
            let internal = &f[1..f.len() - 1];
            if f.iter().any(|&k| k < i - 1) || internal.contains(&i) || internal.contains(&(i - 1)) {
                return Some(json!({ "i": i, "factor": f }));
            }
        }
        None
    }

    fn smaller_index_placement(&self) -> Option<serde_json::Value> {
        for b in 1..=self.ell {
            let hosts = self.hosts(b);
            for i in 1..b {
                if !hosts.iter().any(|&h| self.t.in_subtree(i, h)) {
                    return Some(json!({ "i": i, "b": b }));
                }
            }
        }
        None
    }

    fn parent_to_descendant(&self) -> Option<serde_json::Value> {
        let w = self.word();
        for i in 1..self.ell {
            let Some(ip) = self.t.parent(i) else { continue };
            for j in self.t.subtree_indices(i).ok()? {
                for p in 0..w.len() {
                    if w[p] != ip && w[p] != j {
                        continue;
                    }
                    let other = if w[p] == ip { j } else { ip };
                    let mut present = vec![false; self.ell + 1];
                    for q in p..w.len() {
                        present[w[q]] = true;
                        if w[q] == other && q > p && !(j..=i).all(|k| present[k]) {
                            return Some(json!({ "i": i, "parent": ip, "j": j, "from": p, "to": q }));
                        }
                    }
                }
            }
        }
        None
    }

    fn bounded_factors_equal(&self) -> Option<serde_json::Value> {
        let w = self.word();
        for b in 1..=self.ell {
            let occ: Vec<usize> = (0..w.len()).filter(|&p| w[p] == b).collect();
            for i in 1..b {
                let mut seen: Option<&[usize]> = None;
                for pair in occ.windows(2) {
                    let f = &w[pair[0]..=pair[1]];
                    if !f.contains(&i) {
                        continue;
                    }
                    match seen {
                        None => seen = Some(f),
                        Some(s) if s != f => return Some(json!({ "b": b, "i": i, "first": s, "other": f })),
                        _ => {}
                    }
                }
            }
        }
        None
    }

    /// Relation matrix of the raw definition (no closure) for blocking index `b`.
    fn raw_reach(&self, b: usize) -> Vec<Vec<bool>> {
        let n = b.min(self.ell + 1);
        let mut rel = vec![vec![false; n]; n];
        for blk in self.idx.blocks_avoiding(b) {
            let members: Vec<usize> = {
                let mut m: Vec<usize> = blk.iter().copied().filter(|&l| l < b).collect();
                m.sort_unstable();
                m.dedup();
                m
            };
            for &x in &members {
                for &y in &members {
                    rel[x][y] = true;
                }
            }
        }
        rel
    }

    fn reach_is_equivalence(&self) -> Option<serde_json::Value> {
        for b in 1..=self.ell + 1 {
            let rel = self.raw_reach(b);
            let n = rel.len();
            for i in 1..n {
                if !rel[i][i] {
                    return Some(json!({ "b": b, "not_reflexive": i }));
                }
                for j in 1..n {
                    if rel[i][j] != rel[j][i] {
                        return Some(json!({ "b": b, "not_symmetric": [i, j] }));
                    }
                    if !rel[i][j] {
                        continue;
                    }
                    for k in 1..n {
                        if rel[j][k] && !rel[i][k] {
                            return Some(json!({ "b": b, "not_transitive": [i, j, k] }));
                        }
                    }
                }
            }
            // the union-find classes must agree with the raw relation
            let classes = self.idx.reach_classes(b).ok()?;
            for i in 1..n {
                for j in 1..n {
                    if classes.related(i, j) != rel[i][j] {
                        return Some(json!({ "b": b, "class_mismatch": [i, j] }));
                    }
                }
            }
        }
        None
    }

    fn same_subtree(&self) -> Option<serde_json::Value> {
        for b in 1..=self.ell {
            let rel = self.raw_reach(b);
            let hosts = self.hosts(b);
            for i in 1..b {
                for j in 1..b {
                    if rel[i][j] && !hosts.iter().any(|&h| self.t.in_subtree(i, h) && self.t.in_subtree(j, h)) {
                        return Some(json!({ "b": b, "i": i, "j": j }));
                    }
                }
            }
        }
        None
    }
}
