//! Longest induced path: exact branch-and-bound and randomized growth.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::blowup::{PathCertificate, PathKind};
use crate::graph::{Graph, VertexId};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InducedPathResult {
    pub path: Vec<VertexId>,
    pub order: usize,
    /// No longer induced path exists.
    pub exact: bool,
    pub budget_exhausted: bool,
    /// Search nodes expanded by the exact solver (0 for the heuristic).
    pub expansions: u64,
}

impl InducedPathResult {
    pub fn certificate(&self, ell: usize, tree: &str) -> PathCertificate {
        PathCertificate::new(PathKind::Induced, ell, tree, self.path.clone())
    }
}

/// Per-sample generator: the seed selects the stream family, the counter the stream.
pub fn sample_rng(seed: u64, counter: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(counter);
    rng
}

/// Incremental induced-path state. `touch[w]` counts path vertices adjacent to `w`.
pub(crate) struct PathState<'g> {
    g: &'g Graph,
    pub(crate) in_path: Vec<bool>,
    pub(crate) touch: Vec<u32>,
}

impl<'g> PathState<'g> {
    pub(crate) fn new(g: &'g Graph) -> Self {
        let n = g.vertex_count();
        PathState { g, in_path: vec![false; n], touch: vec![0; n] }
    }

    pub(crate) fn add(&mut self, v: VertexId) {
        self.in_path[v as usize] = true;
        for &w in self.g.neighbors(v) {
            self.touch[w as usize] += 1;
        }
    }

    pub(crate) fn remove(&mut self, v: VertexId) {
        self.in_path[v as usize] = false;
        for &w in self.g.neighbors(v) {
            self.touch[w as usize] -= 1;
        }
    }

    /// Neighbors of the endpoint `end` that keep the path induced.
    pub(crate) fn extensions(&self, end: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.g.neighbors(end).iter().copied().filter(move |&w| !self.in_path[w as usize] && self.touch[w as usize] == 1)
    }
}

/// Grows a random maximal induced path from `start`, extending either end
/// uniformly among all chord-free extensions.
pub fn random_maximal_induced_path<R: Rng>(g: &Graph, start: VertexId, rng: &mut R) -> Vec<VertexId> {
    let mut st = PathState::new(g);
    let mut path = std::collections::VecDeque::from([start]);
    st.add(start);
    let mut options: Vec<(bool, VertexId)> = Vec::new();
    loop {
        options.clear();
        let (front, back) = (path[0], path[path.len() - 1]);
        options.extend(st.extensions(back).map(|w| (false, w)));
        if path.len() > 1 {
            options.extend(st.extensions(front).map(|w| (true, w)));
        }
        let Some(&(at_front, w)) = options.choose(rng) else { break };
        st.add(w);
        if at_front {
            path.push_front(w);
        } else {
            path.push_back(w);
        }
    }
    path.into()
}

/// Best of `seeds` random maximal induced paths from uniform start vertices.
pub fn lip_heuristic(g: &Graph, seeds: usize, rng_seed: u64) -> InducedPathResult {
    let n = g.vertex_count();
    if n == 0 {
        return InducedPathResult { path: Vec::new(), order: 0, exact: true, budget_exhausted: false, expansions: 0 };
    }
    let best = (0..seeds.max(1) as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(rng_seed, i);
            let start = rng.random_range(0..n as VertexId);
            random_maximal_induced_path(g, start, &mut rng)
        })
        // longest, ties to the lowest sample index
        .reduce_with(|a, b| if b.len() > a.len() { b } else { a })
        .unwrap_or_default();
    InducedPathResult { order: best.len(), path: best, exact: false, budget_exhausted: false, expansions: 0 }
}

struct Search<'g> {
    state: PathState<'g>,
    path: Vec<VertexId>,
    best: Vec<VertexId>,
    budget: u64,
    expansions: u64,
    exhausted: bool,
    // scratch for the reachability bound
    mark: Vec<u32>,
    stamp: u32,
    queue: Vec<VertexId>,
}

impl Search<'_> {
    /// `|path| + |vertices reachable from the tail's extensions through
    /// untouched vertices|`: every later vertex is untouched now, except the
    /// immediate next one.
    fn bound(&mut self, tail: VertexId) -> usize {
        self.stamp += 1;
        self.queue.clear();
        let g = self.state.g;
        for w in self.state.extensions(tail) {
            self.mark[w as usize] = self.stamp;
            self.queue.push(w);
        }
        let mut head = 0;
        while head < self.queue.len() {
            let x = self.queue[head];
            head += 1;
            for &y in g.neighbors(x) {
                let yu = y as usize;
                if self.mark[yu] != self.stamp && !self.state.in_path[yu] && self.state.touch[yu] == 0 {
                    self.mark[yu] = self.stamp;
                    self.queue.push(y);
                }
            }
        }
        self.path.len() + self.queue.len()
    }

    fn dfs(&mut self) {
        if self.path.len() > self.best.len() {
            self.best = self.path.clone();
        }
        if self.budget != 0 && self.expansions >= self.budget {
            self.exhausted = true;
            return;
        }
        self.expansions += 1;
        let tail = *self.path.last().expect("non-empty");
        if self.bound(tail) <= self.best.len() {
            return;
        }
        let next: Vec<VertexId> = self.state.extensions(tail).collect();
        for w in next {
            self.state.add(w);
            self.path.push(w);
            self.dfs();
            self.path.pop();
            self.state.remove(w);
            if self.exhausted {
                return;
            }
        }
    }
}

/// Exact longest induced path by depth-first branch-and-bound, one start
/// vertex at a time, growing from the tail only.
///
/// `budget` caps the number of expanded search nodes (0 = unbounded). The
/// incumbent is seeded with `incumbent` (e.g. a heuristic path), which only
/// tightens pruning. The search is sequential, so results do not depend on
/// the thread count.
pub fn lip_exact(g: &Graph, budget: u64, incumbent: Option<&[VertexId]>) -> InducedPathResult {
    let n = g.vertex_count();
    let mut s = Search {
        state: PathState::new(g),
        path: Vec::new(),
        best: incumbent.map(<[VertexId]>::to_vec).unwrap_or_default(),
        budget,
        expansions: 0,
        exhausted: false,
        mark: vec![0; n],
        stamp: 0,
        queue: Vec::new(),
    };
    for v in 0..n as VertexId {
        s.state.add(v);
        s.path.push(v);
        s.dfs();
        s.path.pop();
        s.state.remove(v);
        if s.exhausted {
            break;
        }
    }
    InducedPathResult {
        order: s.best.len(),
        path: s.best,
        exact: !s.exhausted,
        budget_exhausted: s.exhausted,
        expansions: s.expansions,
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::blowup::check_path;
    use proptest::prelude::{prop_assert, prop_assert_eq, proptest, ProptestConfig};

    /// Exhaustive oracle: every induced path is enumerated from every start,
    /// with chords checked against the whole path at each step.
    pub(crate) fn oracle_lip(g: &Graph) -> usize {
        fn go(g: &Graph, path: &mut Vec<VertexId>, best: &mut usize) {
            *best = (*best).max(path.len());
            let tail = *path.last().unwrap();
            for &w in g.neighbors(tail) {
                if path.contains(&w) {
                    continue;
                }
                if path[..path.len() - 1].iter().any(|&x| g.has_edge(x, w)) {
                    continue;
                }
                path.push(w);
                go(g, path, best);
                path.pop();
            }
        }
        let mut best = 0;
        for v in 0..g.vertex_count() as VertexId {
            go(g, &mut vec![v], &mut best);
        }
        best
    }

    fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
        let mut rng = sample_rng(seed, 0);
        let mut e = Vec::new();
        for u in 0..n as VertexId {
            for v in u + 1..n as VertexId {
                if rng.random_bool(p) {
                    e.push((u, v));
                }
            }
        }
        Graph::from_edges(n, e)
    }

    #[test]
    fn small_families() {
        assert_eq!(lip_exact(&Graph::complete(3), 0, None).order, 2);
        assert_eq!(lip_exact(&Graph::path(5), 0, None).order, 5);
        assert_eq!(lip_exact(&Graph::cycle(7), 0, None).order, 6);
        assert_eq!(lip_exact(&Graph::complete(1), 0, None).order, 1);
        assert_eq!(lip_exact(&Graph::default(), 0, None).order, 0);
        assert_eq!(lip_heuristic(&Graph::path(5), 16, 1).order, 5);
        assert_eq!(lip_heuristic(&Graph::complete(3), 4, 1).order, 2);
    }

    #[test]
    fn budget_is_reported() {
        let g = random_graph(40, 0.15, 3);
        let r = lip_exact(&g, 5, None);
        assert!(r.budget_exhausted && !r.exact);
        assert!(check_path(&g, &r.path, false, true).passed());
    }

    #[test]
    fn heuristic_is_deterministic_and_induced() {
        let g = random_graph(30, 0.2, 5);
        let a = lip_heuristic(&g, 50, 9);
        let b = lip_heuristic(&g, 50, 9);
        assert_eq!(a, b);
        assert!(check_path(&g, &a.path, false, true).passed());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn exact_matches_oracle(n in 1usize..14, p in 0.1f64..0.6, seed in 0u64..1000) {
            let g = random_graph(n, p, seed);
            let r = lip_exact(&g, 0, None);
            prop_assert!(r.exact);
            prop_assert_eq!(r.order, oracle_lip(&g));
            prop_assert!(check_path(&g, &r.path, false, true).passed());
            let seeded = lip_exact(&g, 0, Some(&lip_heuristic(&g, 8, seed).path));
            prop_assert_eq!(seeded.order, r.order);
        }
    }
}
