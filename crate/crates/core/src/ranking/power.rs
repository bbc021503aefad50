use alloc::boxed::Box;
use alloc::vec::Vec;

use super::{
    normalize_l1, ConvergenceDiagnostics, PartialScores, RankError, ScoreVector, StochasticMatrix,
};

/// Fixed point of the lazy operator `(M + I) / 2`, starting from the
/// uniform vector.
///
/// The lazy operator has the same fixed points as `M` but no periodic
/// orbits, so cycles such as `a -> b -> c -> a` converge. Convergence is
/// judged on `‖Mv − v‖₁` against the original `M`.
pub fn power_iteration(
    matrix: &StochasticMatrix,
    tol: f64,
    max_iter: usize,
) -> Result<(ScoreVector, ConvergenceDiagnostics), RankError> {
    check_params(tol, max_iter)?;
    let n = matrix.dim();
    if n == 0 {
        return Err(RankError::EmptyGraph);
    }
    iterate(
        matrix.order().to_vec(),
        |v, out| matrix.apply(v, out),
        true,
        tol,
        max_iter,
    )
}

pub(super) fn check_params(tol: f64, max_iter: usize) -> Result<(), RankError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(RankError::InvalidParameter("tolerance must be positive"));
    }
    if max_iter == 0 {
        return Err(RankError::InvalidParameter("max_iter must be positive"));
    }
    Ok(())
}

/// Runs `v <- T v` (or `v <- (T v + v) / 2` when `lazy`) from the uniform
/// vector until `‖T v − v‖₁ <= tol`.
pub(super) fn iterate<F>(
    order: Vec<crate::JournalId>,
    mut apply: F,
    lazy: bool,
    tol: f64,
    max_iter: usize,
) -> Result<(ScoreVector, ConvergenceDiagnostics), RankError>
where
    F: FnMut(&[f64], &mut [f64]),
{
    let n = order.len();
    let mut v = alloc::vec![1.0 / n as f64; n];
    let mut image = alloc::vec![0.0; n];
    let mut iterations = 0;
    loop {
        normalize_l1(&mut v);
        apply(&v, &mut image);
        let residual: f64 = image.iter().zip(&v).map(|(a, b)| (a - b).abs()).sum();
        if residual <= tol || iterations == max_iter {
            let diagnostics = ConvergenceDiagnostics {
                iterations,
                residual_l1: residual,
                converged: residual <= tol,
            };
            let scores = ScoreVector::from_normalized(order, v);
            if diagnostics.converged {
                return Ok((scores, diagnostics));
            }
            return Err(RankError::NotConverged(Box::new(PartialScores {
                scores,
                diagnostics,
            })));
        }
        if lazy {
            for (x, y) in v.iter_mut().zip(&image) {
                *x = 0.5 * (*x + *y);
            }
        } else {
            core::mem::swap(&mut v, &mut image);
        }
        iterations += 1;
    }
}
