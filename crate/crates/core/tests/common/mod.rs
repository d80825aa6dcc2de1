#![allow(dead_code, clippy::needless_range_loop)]

use googlerank::io::InstanceRng;
use googlerank::{DenseMatrix, GoogleOperator, PersonalizationVector, SparseTransition};

/// Solves `Mx = b` by Gaussian elimination with partial pivoting.
pub fn dense_solve(m: &DenseMatrix, b: &[f64]) -> Vec<f64> {
    let n = m.rows();
    let mut a: Vec<Vec<f64>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut b = b.to_vec();
    for k in 0..n {
        let piv = (k..n)
            .max_by(|&i, &j| a[i][k].abs().total_cmp(&a[j][k].abs()))
            .unwrap();
        a.swap(k, piv);
        b.swap(k, piv);
        for i in k + 1..n {
            let f = a[i][k] / a[k][k];
            for j in k..n {
                a[i][j] -= f * a[k][j];
            }
            b[i] -= f * b[k];
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|j| a[i][j] * x[j]).sum();
        x[i] = (b[i] - s) / a[i][i];
    }
    x
}

/// Pagerank by the linear system `(I − αP)x = (1 − α)v`, normalized in the
/// 1-norm.
pub fn linear_solve_pagerank(p: &DenseMatrix, alpha: f64, v: &[f64]) -> Vec<f64> {
    let n = p.rows();
    let mut m = DenseMatrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] -= alpha * p[(i, j)];
        }
    }
    let rhs: Vec<f64> = v.iter().map(|vi| (1.0 - alpha) * vi).collect();
    let x = dense_solve(&m, &rhs);
    let s: f64 = x.iter().sum();
    x.into_iter().map(|xi| xi / s).collect()
}

/// `A` assembled entrywise from `P`, `α` and `v`, independent of
/// `GoogleOperator::materialize_dense`.
pub fn assemble_google(p: &DenseMatrix, alpha: f64, v: &[f64]) -> DenseMatrix {
    let n = p.rows();
    let mut a = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = alpha * p[(i, j)] + (1.0 - alpha) * v[i];
        }
    }
    a
}

pub fn l1_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

pub fn inf_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Sparse random `P` with about two entries per column.
pub fn random_sparse_graph_transition(rng: &mut InstanceRng, n: usize) -> SparseTransition {
    use googlerank::io::InstanceMode;
    rng.stochastic(n, InstanceMode::Sparse { density: 2.0 })
}

pub fn random_op(rng: &mut InstanceRng, n: usize, alpha: f64) -> GoogleOperator {
    let p = random_sparse_graph_transition(rng, n);
    let v = rng.personalization(n);
    GoogleOperator::new(p, alpha, v).unwrap()
}

/// The `n`-cycle `0 → 1 → … → n−1 → 0`.
pub fn cycle_op(n: usize, alpha: f64, v: PersonalizationVector) -> GoogleOperator {
    use googlerank::{build_transition, DirectedGraph, PatchPolicy};
    let p = build_transition(&DirectedGraph::cycle(n).unwrap(), PatchPolicy::Uniform);
    GoogleOperator::new(p, alpha, v).unwrap()
}

pub fn identity_op(n: usize, alpha: f64, v: PersonalizationVector) -> GoogleOperator {
    use googlerank::{build_transition, DirectedGraph, PatchPolicy};
    let p = build_transition(&DirectedGraph::self_loops(n).unwrap(), PatchPolicy::Uniform);
    GoogleOperator::new(p, alpha, v).unwrap()
}

/// Eigenvalues from nalgebra's real Schur form, an independent reference.
pub fn reference_eigenvalues(m: &DenseMatrix) -> Vec<num_complex::Complex64> {
    let n = m.rows();
    let na = nalgebra::DMatrix::from_row_slice(n, n, m.as_slice());
    na.complex_eigenvalues()
        .iter()
        .map(|z| num_complex::Complex64::new(z.re, z.im))
        .collect()
}
