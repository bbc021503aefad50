//! Iterative rankings against the dense reference solver.

mod support;

use citegraph_core::ranking::{
    invariant_scores, normalize_columns, pagerank, power_iteration, DanglingPolicy,
};
use citegraph_core::{JournalGraph, JournalId};
use support::dense;

fn name(i: usize) -> JournalId {
    JournalId::new(&format!("j{i}")).unwrap()
}

fn journal_graph(n: usize, edges: &[(usize, usize, u64)]) -> JournalGraph {
    JournalGraph::from_parts(
        (0..n).map(|i| (name(i), 1)),
        edges.iter().map(|&(s, t, w)| (name(s), name(t), w)),
    )
    .unwrap()
}

#[test]
fn power_iteration_matches_dense_solve_on_four_journals() {
    let edges = dense::random_strongly_connected(4, 4, 6, 9);
    let graph = journal_graph(4, &edges);
    let matrix = normalize_columns(&graph, DanglingPolicy::Error).unwrap();
    let (scores, diag) = power_iteration(&matrix, 1e-12, 100_000).unwrap();
    let expected = dense::stationary(&dense::transition_matrix(4, &edges));
    assert!(diag.converged);
    assert!(dense::linf(scores.values(), &expected) <= 1e-8);
}

#[test]
fn invariant_scores_match_dense_solve_on_five_journals() {
    let edges = dense::random_strongly_connected(5, 5, 8, 9);
    let graph = journal_graph(5, &edges);
    let (scores, _) = invariant_scores(&graph).unwrap();
    let expected = dense::stationary(&dense::transition_matrix(5, &edges));
    assert!(dense::linf(scores.values(), &expected) <= 1e-8);
}

#[test]
fn invariant_scores_match_dense_solve_on_random_sample() {
    let mut checked = 0;
    for seed in 0..600u64 {
        let n = 2 + (seed % 5) as usize;
        let edges = dense::random_strongly_connected(seed, n, (seed % 11) as usize, 9);
        let graph = journal_graph(n, &edges);
        let (scores, diag) = invariant_scores(&graph).unwrap();
        let expected = dense::stationary(&dense::transition_matrix(n, &edges));
        let err = dense::linf(scores.values(), &expected);
        assert!(err <= 1e-8, "seed {seed}: error {err}");
        assert!(diag.residual_l1 <= 1e-12);
        checked += 1;
    }
    assert!(checked >= 500);
}

#[test]
fn pagerank_star_matches_dense_solve() {
    // a -> b, c -> b; b is dangling and falls back to a uniform column.
    let edges = [(0, 1, 1), (2, 1, 1)];
    let graph = journal_graph(3, &edges);
    let (scores, diag) = pagerank(&graph, 0.85, 1e-12, 100_000).unwrap();
    let expected = dense::damped(&dense::transition_matrix(3, &edges), 0.85);
    assert!(diag.converged);
    assert!(dense::linf(scores.values(), &expected) <= 1e-8);
    assert!(scores.values()[1] > scores.values()[0]);
}

#[test]
fn pagerank_matches_dense_solve_on_random_graphs() {
    for seed in 0..200u64 {
        let n = 1 + (seed % 6) as usize;
        let mut edges = dense::random_strongly_connected(seed, n, 3, 9);
        // Drop a few edges so some journals dangle.
        edges.retain(|&(s, t, _)| (s + t + seed as usize) % 3 != 0);
        let graph = journal_graph(n, &edges);
        let damping = 0.5 + (seed % 5) as f64 * 0.1;
        let (scores, _) = pagerank(&graph, damping, 1e-13, 100_000).unwrap();
        let expected = dense::damped(&dense::transition_matrix(n, &edges), damping);
        assert!(
            dense::linf(scores.values(), &expected) <= 1e-8,
            "seed {seed}"
        );
    }
}
