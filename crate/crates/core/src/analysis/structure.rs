//! Runtime checks of the confinement statements over sampled induced paths.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::sampler::sample_induced_path;
use super::trace::{analyze_with, trace_slice, ReachTable, TraceAnalysis};
use crate::barrier_words::{barrier_lengths, is_factor, BarrierIndex};
use crate::blowup::BlowupGraph;
use crate::check::{Check, Report};
use crate::error::Result;
use crate::index_tree::IndexTree;

/// Statement names, in report order.
pub const STATEMENTS: [&str; 10] = [
    "triangle-seq-correct",
    "trace-factor",
    "index-lock-exceeds-rank",
    "locking-next-rank-smaller",
    "post-lock-ranks-smaller",
    "next-in-lock-zone",
    "between-locks-range",
    "between-locks-length",
    "ranges-nested",
    "total-order",
];

/// Instances checked and failed for one statement on one path, with the
/// first failure.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub checked: u64,
    pub failed: u64,
    pub witness: Option<Value>,
}

impl Outcome {
    fn record(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }
}

/// Shared per-graph data for the checks.
pub struct StructureContext<'a> {
    g: &'a BlowupGraph,
    t: &'a IndexTree,
    word: Vec<usize>,
    lens: Vec<u64>,
    reach: ReachTable,
}

impl<'a> StructureContext<'a> {
    pub fn new(g: &'a BlowupGraph, t: &'a IndexTree) -> Result<Self> {
        let bi = BarrierIndex::new(t);
        let reach = ReachTable::new(&bi)?;
        Ok(StructureContext { g, t, word: bi.word().letters().to_vec(), lens: barrier_lengths(t), reach })
    }

    pub fn analyze(&self, path: &[crate::graph::VertexId]) -> Result<TraceAnalysis> {
        analyze_with(self.g, self.t, &self.reach, path)
    }

    /// `13 * sum |B(k_i)| + 1` over the special sequence's range roots.
    pub fn total_order_bound(&self, a: &TraceAnalysis) -> u64 {
        13 * a.special().map(|v| self.lens[v.range_root]).sum::<u64>() + 1
    }

    /// Evaluates every statement of [`STATEMENTS`] on one analyzed path.
    pub fn check(&self, a: &TraceAnalysis) -> [Outcome; 10] {
        let (g, t, lens) = (self.g, self.t, &self.lens);
        let st = g.ribbed().skeleton();
        let ell = a.ell;
        let seq = &a.triangle_seq;
        let mut out: [Outcome; 10] = Default::default();

        for v in seq {
            out[0].record(v.correct, || json!({ "position": v.position, "rank": v.rank, "index_lock": v.index_lock, "required": v.required, "burned": v.burned }));
            out[2].record(v.rank < v.index_lock, || json!({ "position": v.position, "rank": v.rank, "index_lock": v.index_lock }));
        }
        for (i, pair) in seq.windows(2).enumerate() {
            let (u, v) = (&pair[0], &pair[1]);
            let trace = trace_slice(g, &a.path[u.position..=v.position]);
            out[1].record(is_factor(trace.letters(), &self.word), || json!({ "from": u.position, "to": v.position, "trace": trace }));
            let b = u.index_lock;
            let same_zone = b == ell + 1 || (v.rank <= b && st.za(v.node, b) == st.za(u.node, b));
            out[5].record(same_zone, || json!({ "from": u.position, "to": v.position, "index_lock": b }));
            if u.locking {
                out[3].record(v.rank < u.rank, || json!({ "position": u.position, "rank": u.rank, "next_rank": v.rank }));
                let later = seq[i + 1..].iter().find(|w| w.rank >= u.rank);
                out[4].record(later.is_none(), || json!({ "position": u.position, "rank": u.rank, "later": later.map(|w| (w.position, w.rank)) }));
            }
        }
        for pair in a.special_seq.windows(2) {
            let (iu, iv) = (pair[0], pair[1]);
            let (u1, v) = (&seq[iu + 1], &seq[iv]);
            let k = v.range_root;
            let sub = &a.path[u1.position..=v.position];
            let stray = sub.iter().position(|&x| g.is_triangle(x) && !t.in_subtree(g.rank(x), k));
            let other_range = seq[iu + 1..=iv].iter().find(|w| w.range_root != k);
            out[6].record(stray.is_none() && other_range.is_none(), || {
                json!({ "from": u1.position, "to": v.position, "range_root": k, "stray": stray.map(|p| u1.position + p), "other_range": other_range.map(|w| (w.position, w.range_root)) })
            });
            let len = sub.len() as u64;
            out[7].record(len <= 10 * lens[k], || json!({ "from": u1.position, "to": v.position, "order": len, "bound": 10 * lens[k] }));
        }
        let ks: Vec<usize> = a.special().map(|v| v.range_root).collect();
        for i in 1..ks.len().saturating_sub(1) {
            let (outer, inner) = (ks[i], ks[i + 1]);
            out[8].record(inner != outer && t.in_subtree(inner, outer), || json!({ "ranges": ks }));
        }
        let bound = self.total_order_bound(a);
        out[9].record(a.path.len() as u64 <= bound, || json!({ "order": a.path.len(), "bound": bound, "ranges": ks }));
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StatementTally {
    pub statement: String,
    pub checked: u64,
    pub failed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub ell: usize,
    pub seed: u64,
    pub samples: u64,
    pub tallies: Vec<StatementTally>,
    /// Longest analyzed path and the largest `order / (13 sum + 1)`.
    pub max_order: usize,
    pub max_bound_ratio: f64,
    #[serde(skip)]
    pub report: Report,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }

    pub fn tally(&self, statement: &str) -> Option<&StatementTally> {
        self.tallies.iter().find(|s| s.statement == statement)
    }
}

/// Samples `samples` trimmed random induced paths (sample `c` drawn from the
/// stream `(seed, c)`) and checks every statement on each. A failing
/// statement's counterexample carries the offending path.
pub fn check_structure_lemmas(g: &BlowupGraph, t: &IndexTree, samples: u64, seed: u64) -> Result<StructureReport> {
    let ctx = StructureContext::new(g, t)?;
    let per_sample: Vec<(Vec<u32>, [Outcome; 10], u64)> = (0..samples)
        .into_par_iter()
        .map(|c| {
            let path = sample_induced_path(g, seed, c);
            let a = ctx.analyze(&path)?;
            let bound = ctx.total_order_bound(&a);
            Ok((path, ctx.check(&a), bound))
        })
        .collect::<Result<_>>()?;

    let mut totals: [Outcome; 10] = Default::default();
    let (mut max_order, mut max_ratio) = (0, 0.0f64);
    for (c, (path, outcomes, bound)) in per_sample.into_iter().enumerate() {
        max_order = max_order.max(path.len());
        max_ratio = max_ratio.max(path.len() as f64 / bound as f64);
        for (total, o) in totals.iter_mut().zip(outcomes) {
            total.checked += o.checked;
            total.failed += o.failed;
            if total.witness.is_none() {
                if let Some(w) = o.witness {
                    total.witness = Some(json!({ "sample": c, "seed": seed, "detail": w, "path": path }));
                }
            }
        }
    }
    let mut report = Report::new();
    let mut tallies = Vec::new();
    for (name, o) in STATEMENTS.iter().zip(totals) {
        tallies.push(StatementTally { statement: name.to_string(), checked: o.checked, failed: o.failed });
        report.push(Check::from_witness(*name, o.witness));
    }
    Ok(StructureReport { ell: g.ell(), seed, samples, tallies, max_order, max_bound_ratio: max_ratio, report })
}
