//! Journal scores from a [`JournalGraph`](crate::JournalGraph).
//!
//! Two families are provided. Counting methods ([`citation_rate`]) divide
//! incoming citations by journal size. Spectral methods take the dominant
//! eigenvector of the column-stochastic journal matrix, either undamped
//! ([`invariant_scores`], which needs a strongly connected graph) or with
//! uniform teleportation ([`pagerank`]).

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::GraphError;
use crate::ids::JournalId;

mod matrix;
mod methods;
mod power;
mod scc;

pub use matrix::{normalize_columns, DanglingPolicy, StochasticMatrix};
pub use methods::{
    citation_rate, invariant_scores, invariant_scores_with, pagerank, per_article_scores,
};
pub use power::power_iteration;
pub use scc::strongly_connected_components;

/// Default L1 residual tolerance for the iterative methods.
pub const DEFAULT_TOLERANCE: f64 = 1e-12;
/// Default iteration cap for the iterative methods.
pub const DEFAULT_MAX_ITER: usize = 100_000;
/// Default probability of following a citation in [`pagerank`].
pub const DEFAULT_DAMPING: f64 = 0.85;

/// Absolute tolerance on the sum of a [`ScoreVector`].
pub const SCORE_SUM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RankError {
    #[error("journal graph has no journals")]
    EmptyGraph,
    #[error("journal {0} has no outgoing citations")]
    DanglingJournal(JournalId),
    #[error("journal graph is not strongly connected: {}", DisplayComponents(.components))]
    NotStronglyConnected { components: Vec<Vec<JournalId>> },
    #[error(
        "did not converge after {} iterations (residual {:e})",
        .0.diagnostics.iterations,
        .0.diagnostics.residual_l1
    )]
    NotConverged(Box<PartialScores>),
    #[error("journal {0} has a score but no articles")]
    EmptyJournal(JournalId),
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("invalid score vector: {0}")]
    InvalidScores(&'static str),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Last iterate of a run that hit its iteration cap.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialScores {
    pub scores: ScoreVector,
    pub diagnostics: ConvergenceDiagnostics,
}

struct DisplayComponents<'a>(&'a [Vec<JournalId>]);

impl fmt::Display for DisplayComponents<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} components", self.0.len())?;
        for (i, component) in self.0.iter().enumerate() {
            f.write_str(if i == 0 { ": {" } else { ", {" })?;
            for (k, j) in component.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{j}")?;
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceDiagnostics {
    pub iterations: usize,
    /// `‖Mv − v‖₁` of the returned vector, against the non-lazy operator.
    pub residual_l1: f64,
    pub converged: bool,
}

/// Nonnegative per-journal scores summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreVector {
    order: Vec<JournalId>,
    scores: Vec<f64>,
}

impl ScoreVector {
    /// Validates that scores are finite, nonnegative and sum to one within
    /// [`SCORE_SUM_TOLERANCE`].
    pub fn new(order: Vec<JournalId>, scores: Vec<f64>) -> Result<Self, RankError> {
        if order.len() != scores.len() {
            return Err(RankError::InvalidScores("length mismatch"));
        }
        if scores.iter().any(|s| !s.is_finite() || *s < 0.0) {
            return Err(RankError::InvalidScores("negative or non-finite score"));
        }
        let sum: f64 = scores.iter().sum();
        if (sum - 1.0).abs() > SCORE_SUM_TOLERANCE {
            return Err(RankError::InvalidScores("scores do not sum to one"));
        }
        Ok(Self { order, scores })
    }

    /// Wraps a vector the caller has already normalized.
    pub(crate) fn from_normalized(order: Vec<JournalId>, scores: Vec<f64>) -> Self {
        debug_assert!((scores.iter().sum::<f64>() - 1.0).abs() <= SCORE_SUM_TOLERANCE);
        Self { order, scores }
    }

    pub fn order(&self) -> &[JournalId] {
        &self.order
    }

    pub fn values(&self) -> &[f64] {
        &self.scores
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn get(&self, journal: &JournalId) -> Option<f64> {
        self.order
            .iter()
            .position(|j| j == journal)
            .map(|i| self.scores[i])
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = (&JournalId, f64)> + '_ {
        self.order.iter().zip(self.scores.iter().copied())
    }

    pub fn to_map(&self) -> BTreeMap<JournalId, f64> {
        self.iter().map(|(j, s)| (j.clone(), s)).collect()
    }
}

pub(crate) fn normalize_l1(v: &mut [f64]) {
    let sum: f64 = v.iter().sum();
    if sum > 0.0 {
        for x in v.iter_mut() {
            *x /= sum;
        }
    }
}

/// Ranking method recorded in a [`RankReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Invariant,
    PageRank,
    CitationRate,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Invariant => "invariant",
            Method::PageRank => "pagerank",
            Method::CitationRate => "citation-rate",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankEntry {
    /// 1-based position.
    pub rank: usize,
    pub journal: JournalId,
    pub score: f64,
}

/// Sorts scores descending, breaking ties by ascending journal identifier.
pub fn rank_order<'a, I>(scores: I) -> Vec<RankEntry>
where
    I: IntoIterator<Item = (&'a JournalId, f64)>,
{
    let mut pairs: Vec<(&JournalId, f64)> = scores.into_iter().collect();
    pairs.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    pairs
        .into_iter()
        .enumerate()
        .map(|(i, (journal, score))| RankEntry {
            rank: i + 1,
            journal: journal.clone(),
            score,
        })
        .collect()
}

/// Ordered journals with scores and how they were obtained.
#[derive(Debug, Clone, PartialEq)]
pub struct RankReport {
    pub method: Method,
    pub per_article: bool,
    pub entries: Vec<RankEntry>,
    pub diagnostics: Option<ConvergenceDiagnostics>,
}

impl RankReport {
    pub fn new<'a, I>(
        method: Method,
        per_article: bool,
        scores: I,
        diagnostics: Option<ConvergenceDiagnostics>,
    ) -> Self
    where
        I: IntoIterator<Item = (&'a JournalId, f64)>,
    {
        Self {
            method,
            per_article,
            entries: rank_order(scores),
            diagnostics,
        }
    }

    pub fn journals(&self) -> impl Iterator<Item = &JournalId> + '_ {
        self.entries.iter().map(|e| &e.journal)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn j(s: &str) -> JournalId {
        JournalId::new(s).unwrap()
    }

    #[test]
    fn rank_order_cases() {
        let (v1, v2, v3) = (j("v1"), j("v2"), j("v3"));
        let ranked = rank_order([(&v1, 1.0 / 15.0), (&v2, 1.0 / 15.0), (&v3, 1.0 / 12.0)]);
        let names: Vec<_> = ranked.iter().map(|e| e.journal.as_str()).collect();
        assert_eq!(names, ["v3", "v1", "v2"]);
        assert_eq!(ranked[0].rank, 1);

        let ranked = rank_order([(&v3, 0.5), (&v1, 0.5), (&v2, 0.5)]);
        let names: Vec<_> = ranked.iter().map(|e| e.journal.as_str()).collect();
        assert_eq!(names, ["v1", "v2", "v3"]);

        assert!(rank_order(core::iter::empty()).is_empty());
    }

    #[test]
    fn score_vector_validation() {
        assert!(ScoreVector::new(vec![j("a"), j("b")], vec![0.25, 0.75]).is_ok());
        assert!(ScoreVector::new(vec![j("a")], vec![0.5]).is_err());
        assert!(ScoreVector::new(vec![j("a"), j("b")], vec![-0.5, 1.5]).is_err());
        assert!(ScoreVector::new(vec![j("a")], vec![1.0, 0.0]).is_err());
    }

    #[test]
    fn not_strongly_connected_lists_components() {
        let err = RankError::NotStronglyConnected {
            components: vec![vec![j("a")], vec![j("b"), j("c")]],
        };
        assert_eq!(
            err.to_string(),
            "journal graph is not strongly connected: 2 components: {a}, {b c}"
        );
    }
}
