//! Random maximal induced paths trimmed to analyzable form.

use rand::Rng;

use super::solver::{random_maximal_induced_path, sample_rng};
use crate::blowup::BlowupGraph;
use crate::graph::VertexId;

/// Longest subpath that starts at a triangle-vertex of largest triangle rank
/// and ends at a triangle-vertex, oriented from that start. `None` when the
/// path has no triangle-vertex.
///
/// Every start of largest rank is tried in both directions; ties keep the
/// earliest candidate.
pub fn trim_to_convention(g: &BlowupGraph, path: &[VertexId]) -> Option<Vec<VertexId>> {
    let tri: Vec<usize> = (0..path.len()).filter(|&i| g.is_triangle(path[i])).collect();
    let (&lo, &hi) = (tri.first()?, tri.last()?);
    let top = tri.iter().map(|&i| g.rank(path[i])).max()?;
    let mut best: Option<(usize, usize, bool)> = None;
    for &i in tri.iter().filter(|&&i| g.rank(path[i]) == top) {
        for (len, backward) in [(hi - i + 1, false), (i - lo + 1, true)] {
            if best.is_none_or(|(l, _, _)| len > l) {
                best = Some((len, i, backward));
            }
        }
    }
    let (_, i, backward) = best?;
    Some(if backward { path[lo..=i].iter().rev().copied().collect() } else { path[i..=hi].to_vec() })
}

/// A random maximal induced path grown from a uniform triangle-vertex, before
/// trimming.
pub fn sample_maximal_path<R: Rng>(g: &BlowupGraph, rng: &mut R) -> Vec<VertexId> {
    let start = rng.random_range(0..g.triangle_vertex_count());
    random_maximal_induced_path(g.graph(), start, rng)
}

/// Sample `counter` of the seeded family, trimmed to analyzable form.
pub fn sample_induced_path(g: &BlowupGraph, seed: u64, counter: u64) -> Vec<VertexId> {
    let mut rng = sample_rng(seed, counter);
    let raw = sample_maximal_path(g, &mut rng);
    trim_to_convention(g, &raw).expect("grown from a triangle-vertex")
}
