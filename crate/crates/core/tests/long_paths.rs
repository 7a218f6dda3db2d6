//! The structure statements on long induced paths found by the solvers,
//! rather than random maximal ones.

use lipgraph::analysis::{lip_exact, lip_heuristic, trim_to_convention, StructureContext, STATEMENTS};
use lipgraph::blowup::BlowupGraph;
use lipgraph::ribbed::RibbedTree;
use lipgraph::skeleton::SkeletonTree;
use lipgraph::{Alpha, IndexTree, VertexId};

fn graph(t: &IndexTree) -> BlowupGraph {
    BlowupGraph::build(RibbedTree::build(SkeletonTree::build(t.ell()).unwrap(), t).unwrap())
}

fn assert_statements_hold(g: &BlowupGraph, t: &IndexTree, path: &[VertexId]) -> usize {
    let ctx = StructureContext::new(g, t).unwrap();
    let trimmed = trim_to_convention(g, path).unwrap();
    let a = ctx.analyze(&trimmed).unwrap();
    for (name, o) in STATEMENTS.iter().zip(ctx.check(&a)) {
        assert_eq!(o.failed, 0, "{name}: {:?} on {trimmed:?}", o.witness);
    }
    assert!(a.all_correct());
    trimmed.len()
}

#[test]
fn exact_longest_paths_small_trees() {
    for ell in 1..=2 {
        for t in [IndexTree::build_balanced(ell), IndexTree::build_unbalanced(ell as u64, Alpha::new(3.0).unwrap()).unwrap()] {
            let g = graph(&t);
            let r = lip_exact(g.graph(), 0, None);
            assert!(r.exact);
            assert_statements_hold(&g, &t, &r.path);
        }
    }
}

#[test]
fn budgeted_paths_ell_three_and_four() {
    for ell in 3..=4 {
        for t in [IndexTree::build_balanced(ell), IndexTree::build_unbalanced(ell as u64, Alpha::new(3.0).unwrap()).unwrap()] {
            let g = graph(&t);
            let h = lip_heuristic(g.graph(), 100, 5);
            let r = lip_exact(g.graph(), 50_000, Some(&h.path));
            assert!(r.order >= h.order);
            assert_statements_hold(&g, &t, &h.path);
            let n = assert_statements_hold(&g, &t, &r.path);
            assert!(n >= 2);
        }
    }
}

/// Many restarts, keeping every path rather than the best one.
#[test]
fn heuristic_restarts_ell_three() {
    let t = IndexTree::build_balanced(3);
    let g = graph(&t);
    for seed in 0..300 {
        let h = lip_heuristic(g.graph(), 4, seed);
        assert_statements_hold(&g, &t, &h.path);
    }
}

/// Checks every induced path that meets the convention; returns how many.
fn every_convention_path(t: &IndexTree) -> u64 {
    let g = graph(t);
    let ctx = StructureContext::new(&g, t).unwrap();
    let gr = g.graph();
    let mut count = 0u64;
    let mut stack: Vec<Vec<VertexId>> = (0..g.triangle_vertex_count()).map(|v| vec![v]).collect();
    while let Some(p) = stack.pop() {
        let tail = *p.last().unwrap();
        if g.is_triangle(tail) {
            let a = ctx.analyze(&p).unwrap();
            for (name, o) in STATEMENTS.iter().zip(ctx.check(&a)) {
                assert_eq!(o.failed, 0, "{name}: {:?} on {p:?}", o.witness);
            }
            count += 1;
        }
        for &w in gr.neighbors(tail) {
            // triangle ranks may not exceed the start's
            let rank_ok = !g.is_triangle(w) || g.rank(w) <= g.rank(p[0]);
            if rank_ok && !p.contains(&w) && !p[..p.len() - 1].iter().any(|&x| gr.has_edge(x, w)) {
                let mut q = p.clone();
                q.push(w);
                stack.push(q);
            }
        }
    }
    count
}

#[test]
fn every_convention_path_up_to_ell_three() {
    for ell in 1..=3 {
        for t in [IndexTree::build_balanced(ell), IndexTree::build_unbalanced(ell as u64, Alpha::new(3.0).unwrap()).unwrap()] {
            assert!(every_convention_path(&t) > 0);
        }
    }
}
