//! Dense reference solver for small stationary-distribution problems.
//!
//! Builds the transition matrix straight from edge weights and solves the
//! linear systems by Gaussian elimination with partial pivoting. Nothing
//! here touches the sparse matrix or the iterative code it is compared to.

#![allow(dead_code)]

/// Column-stochastic matrix `m[row][col]` from `(source, target, weight)`
/// edges over `n` nodes. Columns without weight become uniform.
pub fn transition_matrix(n: usize, edges: &[(usize, usize, u64)]) -> Vec<Vec<f64>> {
    let mut out = vec![0u64; n];
    for &(s, _, w) in edges {
        out[s] += w;
    }
    let mut m = vec![vec![0.0; n]; n];
    for &(s, t, w) in edges {
        m[t][s] += w as f64 / out[s] as f64;
    }
    for (col, &total) in out.iter().enumerate() {
        if total == 0 {
            for row in m.iter_mut() {
                row[col] = 1.0 / n as f64;
            }
        }
    }
    m
}

/// Solves `a x = b` in place. Panics on a singular system.
pub fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &k| a[i][col].abs().total_cmp(&a[k][col].abs()))
            .unwrap();
        assert!(a[pivot][col].abs() > 1e-14, "singular system");
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            if factor == 0.0 {
                continue;
            }
            for k in col..n {
                a[row][k] -= factor * a[col][k];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let tail: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - tail) / a[row][row];
    }
    x
}

/// Null vector of `(M - I)` normalized to sum one: the last equation is
/// replaced with `sum(v) = 1`.
pub fn stationary(m: &[Vec<f64>]) -> Vec<f64> {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| m[r][c] - if r == c { 1.0 } else { 0.0 })
                .collect()
        })
        .collect();
    a[n - 1] = vec![1.0; n];
    let mut b = vec![0.0; n];
    b[n - 1] = 1.0;
    solve(a, b)
}

/// Solution of `(I - d M) v = (1 - d) u` with `u` uniform.
pub fn damped(m: &[Vec<f64>], damping: f64) -> Vec<f64> {
    let n = m.len();
    let a: Vec<Vec<f64>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| if r == c { 1.0 } else { 0.0 } - damping * m[r][c])
                .collect()
        })
        .collect();
    solve(a, vec![(1.0 - damping) / n as f64; n])
}

pub fn linf(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Random strongly connected edge set over `n` nodes: a Hamiltonian cycle
/// through a shuffled order plus extra random edges, weights in `1..=max_w`.
/// No self-loops. Uses a local SplitMix64 so it shares no code with the
/// crate's generator.
pub fn random_strongly_connected(
    seed: u64,
    n: usize,
    extra: usize,
    max_w: u64,
) -> Vec<(usize, usize, u64)> {
    let mut state = seed;
    let mut next = move |bound: u64| -> u64 {
        state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        (z ^ (z >> 31)) % bound
    };
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let k = next(i as u64 + 1) as usize;
        perm.swap(i, k);
    }
    let mut weights = std::collections::BTreeMap::new();
    if n > 1 {
        for i in 0..n {
            weights.insert((perm[i], perm[(i + 1) % n]), 1 + next(max_w));
        }
        for _ in 0..extra {
            let s = next(n as u64) as usize;
            let t = next(n as u64) as usize;
            if s != t {
                weights.insert((s, t), 1 + next(max_w));
            }
        }
    }
    weights.into_iter().map(|((s, t), w)| (s, t, w)).collect()
}

#[test]
fn solver_handles_a_known_system() {
    // 2x + y = 5, x + 3y = 10  =>  x = 1, y = 3
    let x = solve(vec![vec![2.0, 1.0], vec![1.0, 3.0]], vec![5.0, 10.0]);
    assert!(linf(&x, &[1.0, 3.0]) < 1e-14);
}

#[test]
fn stationary_of_a_two_state_chain() {
    // a -> b always; b -> a 1/4, b -> b 3/4  =>  (1/5, 4/5)
    let m = vec![vec![0.0, 0.25], vec![1.0, 0.75]];
    assert!(linf(&stationary(&m), &[0.2, 0.8]) < 1e-14);
}
