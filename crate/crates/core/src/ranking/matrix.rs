use alloc::vec::Vec;

use super::RankError;
use crate::graph::JournalGraph;
use crate::ids::JournalId;

/// Column fallback for journals without outgoing citations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum DanglingPolicy {
    /// Spread the column uniformly over all journals.
    #[default]
    Uniform,
    /// Refuse with [`RankError::DanglingJournal`].
    Error,
}

/// Column-stochastic journal matrix in sparse column form.
///
/// Column `j` holds the share of journal `j`'s outgoing citations received
/// by each target journal. Rows and columns follow the canonical journal
/// order of the source graph.
#[derive(Debug, Clone, PartialEq)]
pub struct StochasticMatrix {
    order: Vec<JournalId>,
    columns: Vec<Vec<(usize, f64)>>,
}

impl StochasticMatrix {
    pub fn order(&self) -> &[JournalId] {
        &self.order
    }

    pub fn dim(&self) -> usize {
        self.order.len()
    }

    /// Nonzero entries of column `col` as `(row, probability)`, rows ascending.
    pub fn column(&self, col: usize) -> &[(usize, f64)] {
        &self.columns[col]
    }

    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.columns[col]
            .binary_search_by_key(&row, |&(r, _)| r)
            .map(|i| self.columns[col][i].1)
            .unwrap_or(0.0)
    }

    /// Writes `M v` into `out`.
    pub fn apply(&self, v: &[f64], out: &mut [f64]) {
        assert_eq!(v.len(), self.dim());
        assert_eq!(out.len(), self.dim());
        out.fill(0.0);
        for (col, entries) in self.columns.iter().enumerate() {
            let x = v[col];
            if x == 0.0 {
                continue;
            }
            for &(row, p) in entries {
                out[row] += p * x;
            }
        }
    }

    /// Dense row-major copy, for small matrices.
    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.dim();
        let mut dense = alloc::vec![alloc::vec![0.0; n]; n];
        for (col, entries) in self.columns.iter().enumerate() {
            for &(row, p) in entries {
                dense[row][col] = p;
            }
        }
        dense
    }
}

/// Divides each journal's outgoing weights by its out-weight.
///
/// Self-loops present in `graph` are kept as diagonal entries.
pub fn normalize_columns(
    graph: &JournalGraph,
    dangling: DanglingPolicy,
) -> Result<StochasticMatrix, RankError> {
    let n = graph.len();
    if n == 0 {
        return Err(RankError::EmptyGraph);
    }
    let out = graph.out_weights();
    let mut columns: Vec<Vec<(usize, f64)>> = alloc::vec![Vec::new(); n];
    for (s, t, w) in graph.indexed_edges() {
        columns[s].push((t, w as f64 / out[s] as f64));
    }
    for (col, entries) in columns.iter_mut().enumerate() {
        if !entries.is_empty() {
            continue;
        }
        match dangling {
            DanglingPolicy::Uniform => {
                let p = 1.0 / n as f64;
                entries.extend((0..n).map(|row| (row, p)));
            }
            DanglingPolicy::Error => {
                return Err(RankError::DanglingJournal(graph.journals()[col].clone()))
            }
        }
    }
    Ok(StochasticMatrix {
        order: graph.journals().to_vec(),
        columns,
    })
}
