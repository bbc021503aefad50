//! Article-level citation graphs, their aggregation into weighted journal
//! graphs, and journal ranking by citation counting and by the dominant
//! eigenvector of the reference-normalized journal matrix.
//!
//! The crate is `no_std` and only needs `alloc`. Reading and writing the
//! CSV/DOT formats lives in the `citegraph` companion crate.

#![no_std]

extern crate alloc;

mod graph;
mod ids;
pub mod ranking;
pub mod synth;

pub use graph::{CitationGraph, GraphError, JournalGraph, SelfLoopPolicy};
pub use ids::{ArticleId, IdError, JournalId};
pub use ranking::{
    ConvergenceDiagnostics, DanglingPolicy, Method, RankEntry, RankError, RankReport, ScoreVector,
    StochasticMatrix,
};
