//! Compact undirected simple graph used by the solvers and checkers.

/// Vertex identifier. Graphs in this crate stay well below `u32::MAX` vertices.
pub type VertexId = u32;

/// Undirected simple graph in compressed adjacency form.
///
/// Neighbor lists are sorted and free of duplicates and self-loops, so
/// adjacency queries are a binary search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<VertexId>,
}

impl Default for Graph {
    fn default() -> Self {
        Graph { offsets: vec![0], targets: Vec::new() }
    }
}

impl Graph {
    /// Builds a graph on `n` vertices. Parallel edges and self-loops are dropped.
    pub fn from_edges<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut degree = vec![0usize; n];
        let mut pairs: Vec<(VertexId, VertexId)> = Vec::new();
        for (u, v) in edges {
            assert!((u as usize) < n && (v as usize) < n, "edge ({u},{v}) out of range for n = {n}");
            if u == v {
                continue;
            }
            pairs.push((u, v));
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets.clone();
        let mut targets = vec![0; *offsets.last().unwrap()];
        for (u, v) in pairs {
            targets[fill[u as usize]] = v;
            fill[u as usize] += 1;
            targets[fill[v as usize]] = u;
            fill[v as usize] += 1;
        }
        // sort + dedup each list, then compact
        let mut compact_offsets = Vec::with_capacity(n + 1);
        compact_offsets.push(0);
        let mut write = 0;
        for v in 0..n {
            let (lo, hi) = (offsets[v], offsets[v + 1]);
            targets[lo..hi].sort_unstable();
            let mut last = None;
            for k in lo..hi {
                let t = targets[k];
                if last != Some(t) {
                    targets[write] = t;
                    write += 1;
                    last = Some(t);
                }
            }
            compact_offsets.push(write);
        }
        targets.truncate(write);
        Graph { offsets: compact_offsets, targets }
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        let v = v as usize;
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        self.neighbors(a).binary_search(&b).is_ok()
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        (0..self.vertex_count() as VertexId)
            .flat_map(move |u| self.neighbors(u).iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn complete(n: usize) -> Self {
        let n32 = n as VertexId;
        Graph::from_edges(n, (0..n32).flat_map(|u| (u + 1..n32).map(move |v| (u, v))))
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n as VertexId).map(|v| (v - 1, v)))
    }

    pub fn cycle(n: usize) -> Self {
        let n32 = n as VertexId;
        Graph::from_edges(n, (0..n32).map(|v| (v, (v + 1) % n32)))
    }
}
