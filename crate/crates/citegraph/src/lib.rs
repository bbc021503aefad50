//! Reading and writing citation datasets, journal graphs and rankings, and
//! the `citegraph` command-line tool built on `citegraph-core`.

pub mod cli;
pub mod export;
pub mod ingest;

pub use citegraph_core as core;
