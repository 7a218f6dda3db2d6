//! Min-degree peeling and its certificate.

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::check::{Check, Report};
use crate::graph::{Graph, VertexId};

/// Elimination order with the number of neighbors of each vertex that come
/// later in the order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegeneracyCertificate {
    pub order: Vec<VertexId>,
    pub back_degree: Vec<u32>,
}

impl DegeneracyCertificate {
    /// Largest back-degree; the degeneracy when the order is a min-degree peeling.
    pub fn degeneracy(&self) -> u32 {
        self.back_degree.iter().copied().max().unwrap_or(0)
    }
}

/// Repeatedly removes a vertex of minimum remaining degree (bucket queue,
/// ties broken by smallest id for determinism).
pub fn degeneracy(g: &Graph) -> DegeneracyCertificate {
    let n = g.vertex_count();
    let mut deg: Vec<usize> = (0..n as VertexId).map(|v| g.degree(v)).collect();
    let max_deg = deg.iter().copied().max().unwrap_or(0);
    let mut buckets: Vec<Vec<VertexId>> = vec![Vec::new(); max_deg + 1];
    for v in (0..n as VertexId).rev() {
        buckets[deg[v as usize]].push(v);
    }
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut back_degree = Vec::with_capacity(n);
    let mut low = 0;
    while order.len() < n {
        // stale entries (degree changed or removed) are skipped lazily
        let v = loop {
            while buckets[low].is_empty() {
                low += 1;
            }
            let v = buckets[low].pop().expect("non-empty");
            if !removed[v as usize] && deg[v as usize] == low {
                break v;
            }
        };
        removed[v as usize] = true;
        order.push(v);
        back_degree.push(deg[v as usize] as u32);
        for &w in g.neighbors(v) {
            if !removed[w as usize] {
                deg[w as usize] -= 1;
                buckets[deg[w as usize]].push(w);
                low = low.min(deg[w as usize]);
            }
        }
    }
    DegeneracyCertificate { order, back_degree }
}

/// Recomputes back-degrees from scratch and checks them against `max`.
pub fn verify_degeneracy(g: &Graph, cert: &DegeneracyCertificate, max: u32) -> Report {
    let n = g.vertex_count();
    let mut r = Report::new();
    let mut pos = vec![usize::MAX; n];
    let mut perm = None;
    if cert.order.len() != n || cert.back_degree.len() != n {
        perm = Some(json!({ "order_len": cert.order.len(), "vertices": n }));
    } else {
        for (i, &v) in cert.order.iter().enumerate() {
            if v as usize >= n || pos[v as usize] != usize::MAX {
                perm = Some(json!({ "position": i, "vertex": v }));
                break;
            }
            pos[v as usize] = i;
        }
    }
    let ok = perm.is_none();
    r.push(Check::from_witness("order-is-permutation", perm));
    if !ok {
        return r;
    }
    let wrong = cert.order.iter().enumerate().find_map(|(i, &v)| {
        let later = g.neighbors(v).iter().filter(|&&w| pos[w as usize] > i).count() as u32;
        (later != cert.back_degree[i]).then(|| json!({ "vertex": v, "claimed": cert.back_degree[i], "actual": later }))
    });
    r.push(Check::from_witness("back-degrees-match", wrong));
    let worst = cert.order.iter().zip(&cert.back_degree).find(|&(_, &d)| d > max);
    r.push(Check::from_witness(
        format!("degeneracy-at-most-{max}"),
        worst.map(|(&v, &d)| json!({ "vertex": v, "back_degree": d })),
    ));
    r
}
