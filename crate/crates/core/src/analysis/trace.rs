//! Traces of vertex sequences and the confinement bookkeeping of an induced
//! path: triangle sequence, index-locks, burned indices, correctness, ranges.

use serde::Serialize;

use crate::barrier_words::{collapse, BarrierIndex, ReachClasses, Word};
use crate::blowup::{check_path, BlowupGraph};
use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::index_tree::IndexTree;
use crate::skeleton::NodeId;

/// Collapsed rank word of a vertex sequence, without validation.
pub(crate) fn trace_slice(g: &BlowupGraph, path: &[VertexId]) -> Word {
    let ranks: Vec<usize> = path.iter().map(|&v| g.rank(v)).collect();
    collapse(&ranks)
}

/// Collapsed rank word of a path of `g`.
pub fn trace_of(g: &BlowupGraph, path: &[VertexId]) -> Result<Word> {
    if let Some(c) = check_path(g.graph(), path, false, false).failures().next() {
        return Err(Error::InvalidCertificate(c.to_string()));
    }
    Ok(trace_slice(g, path))
}

/// One entry of the triangle sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangleVisit {
    /// Position in the path.
    pub position: usize,
    pub vertex: VertexId,
    pub node: NodeId,
    pub rank: usize,
    /// Rank of the latest earlier visit whose zone strictly contains this
    /// triangle, or `ell + 1`.
    pub index_lock: usize,
    /// Root `k` of the range `T(k)`.
    pub range_root: usize,
    /// Indices burned at this vertex, ascending.
    pub burned: Vec<usize>,
    /// Indices that must be burned for correctness, ascending.
    pub required: Vec<usize>,
    pub correct: bool,
    /// The next visit lies in this vertex's zone.
    pub locking: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceAnalysis {
    pub ell: usize,
    pub path: Vec<VertexId>,
    pub trace: Word,
    /// Largest rank of a triangle-vertex of the path; larger indices are ghosts.
    pub max_rank: usize,
    pub triangle_seq: Vec<TriangleVisit>,
    /// Indices into `triangle_seq`: the first visit, the locking ones, the last.
    pub special_seq: Vec<usize>,
}

impl TraceAnalysis {
    pub fn special(&self) -> impl Iterator<Item = &TriangleVisit> {
        self.special_seq.iter().map(|&i| &self.triangle_seq[i])
    }

    pub fn all_correct(&self) -> bool {
        self.triangle_seq.iter().all(|v| v.correct)
    }
}

/// Reach classes for every blocking index `b` in `1..=ell+1`.
pub(crate) struct ReachTable {
    classes: Vec<ReachClasses>,
}

impl ReachTable {
    pub(crate) fn new(bi: &BarrierIndex) -> Result<Self> {
        let classes = (1..=bi.ell() + 1).map(|b| bi.reach_classes(b)).collect::<Result<_>>()?;
        Ok(ReachTable { classes })
    }

    pub(crate) fn get(&self, b: usize) -> &ReachClasses {
        &self.classes[b - 1]
    }
}

/// Highest `k` on the ancestor chain of `a` (inclusive) whose subtree avoids `b`.
pub(crate) fn range_root(t: &IndexTree, a: usize, b: usize) -> usize {
    t.ancestors(a).take_while(|&k| !t.in_subtree(b, k)).last().unwrap_or(a)
}

/// Runs the bookkeeping on an induced path whose endpoints are
/// triangle-vertices and whose first vertex has the largest triangle rank.
pub fn analyze_path(g: &BlowupGraph, t: &IndexTree, path: &[VertexId]) -> Result<TraceAnalysis> {
    let bi = BarrierIndex::new(t);
    let reach = ReachTable::new(&bi)?;
    analyze_with(g, t, &reach, path)
}

pub(crate) fn analyze_with(g: &BlowupGraph, t: &IndexTree, reach: &ReachTable, path: &[VertexId]) -> Result<TraceAnalysis> {
    let ell = g.ell();
    if t.ell() != ell {
        return Err(Error::EllMismatch { tree: t.ell(), skeleton: ell });
    }
    if path.is_empty() {
        return Err(Error::InvalidCertificate("empty path".into()));
    }
    if let Some(c) = check_path(g.graph(), path, false, true).failures().next() {
        return Err(Error::InvalidCertificate(c.to_string()));
    }
    let (first, last) = (path[0], path[path.len() - 1]);
    if !g.is_triangle(first) || !g.is_triangle(last) {
        return Err(Error::Convention("endpoints must be triangle-vertices; trim the path to its first and last triangle-vertex".into()));
    }
    let max_rank = path.iter().filter(|&&v| g.is_triangle(v)).map(|&v| g.rank(v)).max().expect("first is a triangle-vertex");
    if g.rank(first) != max_rank {
        return Err(Error::Convention(format!(
            "first endpoint has rank {} but the path reaches rank {max_rank}; cut at a vertex of largest rank or reverse",
            g.rank(first)
        )));
    }

    let st = g.ribbed().skeleton();
    // rib tops whose rib has its bottom endpoint in the prefix scanned so far
    let mut hit = vec![false; st.len()];
    let mut seq: Vec<TriangleVisit> = Vec::new();
    for (pos, &v) in path.iter().enumerate() {
        if let Some(top) = g.rib_top(v) {
            hit[top as usize] = true;
            continue;
        }
        let node = g.node(v).expect("triangle-vertex");
        if seq.last().is_some_and(|u| u.node == node) {
            continue;
        }
        let rank = st.rank(node);
        let index_lock = seq
            .iter()
            .rev()
            .find(|u| u.node != node && st.in_zone(node, u.node))
            .map_or(ell + 1, |u| u.rank);
        let burned: Vec<usize> = (rank..=ell).filter(|&i| i > max_rank || hit[st.za(node, i) as usize]).collect();
        let required = if rank < index_lock { reach.get(index_lock).above(rank)? } else { Vec::new() };
        let correct = required.iter().all(|i| burned.binary_search(i).is_ok());
        seq.push(TriangleVisit {
            position: pos,
            vertex: v,
            node,
            rank,
            index_lock,
            range_root: range_root(t, rank, index_lock),
            burned,
            required,
            correct,
            locking: false,
        });
    }
    for i in 0..seq.len().saturating_sub(1) {
        let (u, next) = (seq[i].node, seq[i + 1].node);
        seq[i].locking = st.in_zone(next, u);
    }
    let mut special = vec![0];
    special.extend((1..seq.len()).filter(|&i| seq[i].locking));
    if *special.last().expect("non-empty") != seq.len() - 1 {
        special.push(seq.len() - 1);
    }
    Ok(TraceAnalysis {
        ell,
        path: path.to_vec(),
        trace: trace_slice(g, path),
        max_rank,
        triangle_seq: seq,
        special_seq: special,
    })
}
