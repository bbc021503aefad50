use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::power::{check_params, iterate};
use super::{
    normalize_columns, power_iteration, strongly_connected_components, ConvergenceDiagnostics,
    DanglingPolicy, RankError, ScoreVector, DEFAULT_MAX_ITER, DEFAULT_TOLERANCE,
};
use crate::graph::{CitationGraph, JournalGraph, SelfLoopPolicy};
use crate::ids::JournalId;

/// Dominant eigenvector of the reference-normalized journal matrix, with
/// the default tolerance and iteration cap.
pub fn invariant_scores(
    graph: &JournalGraph,
) -> Result<(ScoreVector, ConvergenceDiagnostics), RankError> {
    invariant_scores_with(graph, DEFAULT_TOLERANCE, DEFAULT_MAX_ITER)
}

/// Undamped spectral scores. Self-loops are ignored; the remaining graph
/// must be strongly connected.
pub fn invariant_scores_with(
    graph: &JournalGraph,
    tol: f64,
    max_iter: usize,
) -> Result<(ScoreVector, ConvergenceDiagnostics), RankError> {
    check_params(tol, max_iter)?;
    if graph.is_empty() {
        return Err(RankError::EmptyGraph);
    }
    let loopless = graph.without_self_loops();
    let components = strongly_connected_components(&loopless);
    if components.len() > 1 {
        return Err(RankError::NotStronglyConnected { components });
    }
    if loopless.len() == 1 {
        let diagnostics = ConvergenceDiagnostics {
            iterations: 0,
            residual_l1: 0.0,
            converged: true,
        };
        return Ok((
            ScoreVector::from_normalized(loopless.journals().to_vec(), alloc::vec![1.0]),
            diagnostics,
        ));
    }
    let matrix = normalize_columns(&loopless, DanglingPolicy::Error)?;
    power_iteration(&matrix, tol, max_iter)
}

/// Damped scores: fixed point of `v = d M v + (1 - d) u` with `u` uniform
/// and dangling columns spread uniformly.
///
/// The reported residual is `‖G v − v‖₁` for the damped operator `G`.
pub fn pagerank(
    graph: &JournalGraph,
    damping: f64,
    tol: f64,
    max_iter: usize,
) -> Result<(ScoreVector, ConvergenceDiagnostics), RankError> {
    if !(damping > 0.0 && damping < 1.0) {
        return Err(RankError::InvalidParameter("damping must lie in (0, 1)"));
    }
    check_params(tol, max_iter)?;
    let matrix = normalize_columns(graph, DanglingPolicy::Uniform)?;
    let n = matrix.dim();
    let teleport = (1.0 - damping) / n as f64;
    iterate(
        matrix.order().to_vec(),
        |v, out| {
            matrix.apply(v, out);
            let mass: f64 = v.iter().sum();
            for x in out.iter_mut() {
                *x = damping * *x + teleport * mass;
            }
        },
        false,
        tol,
        max_iter,
    )
}

/// Journal scores divided by article counts, without renormalization.
///
/// Journals with a zero score and no articles map to zero.
pub fn per_article_scores(
    scores: &ScoreVector,
    graph: &JournalGraph,
) -> Result<BTreeMap<JournalId, f64>, RankError> {
    scores
        .iter()
        .map(|(journal, score)| {
            let articles = graph.article_count(journal)?;
            let value = match articles {
                0 if score > 0.0 => return Err(RankError::EmptyJournal(journal.clone())),
                0 => 0.0,
                n => score / n as f64,
            };
            Ok((journal.clone(), value))
        })
        .collect()
}

/// Incoming citations per article for every journal.
///
/// Citations between two articles of the same journal count only when
/// `include_intra` is set. Every journal must have at least one article.
pub fn citation_rate(
    graph: &CitationGraph,
    include_intra: bool,
) -> Result<BTreeMap<JournalId, f64>, RankError> {
    let aggregated = graph.aggregate(SelfLoopPolicy::Keep);
    let mut incoming: Vec<u64> = aggregated.in_weights();
    if !include_intra {
        for (s, t, w) in aggregated.indexed_edges() {
            if s == t {
                incoming[t] -= w;
            }
        }
    }
    aggregated
        .journals()
        .iter()
        .zip(aggregated.article_counts())
        .zip(incoming)
        .map(|((journal, &articles), cited)| {
            if articles == 0 {
                return Err(RankError::EmptyJournal(journal.clone()));
            }
            Ok((journal.clone(), cited as f64 / articles as f64))
        })
        .collect()
}
