use serde::Serialize;

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};

/// Largest `‖UᵀU − I‖_max` accepted for the basis.
pub const ORTHOGONALITY_LIMIT: f64 = 1e-8;

/// Blocks of `UᵀMU = [t₁₁ r; w T]` for `U = [ê U₁]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimilarityReport {
    pub top_left: f64,
    /// ∞-norm of the 1×(n−1) block `r = êᵀMU₁`.
    pub top_right_norm: f64,
    /// `U₁ᵀMê`.
    pub w: Vec<f64>,
    /// `U₁ᵀMU₁`.
    #[serde(skip)]
    pub t: DenseMatrix,
    /// `max_j |Σ_i M_ij − 1|` of the input.
    pub column_sum_defect: f64,
}

/// Forms `UᵀMU` and splits it into the blocks induced by `U = [ê U₁]`.
///
/// When `M` is column-stochastic, `êᵀM = êᵀ`, so the top row is `(1, 0ᵀ)`.
pub fn similarity_reduce(m: &DenseMatrix, u: &DenseMatrix) -> Result<SimilarityReport> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if !u.is_square() {
        return Err(Error::NotSquare {
            rows: u.rows(),
            cols: u.cols(),
        });
    }
    let n = m.rows();
    if u.rows() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: u.rows(),
        });
    }
    let defect = u.orthogonality_defect();
    if !(defect <= ORTHOGONALITY_LIMIT) {
        return Err(Error::NotOrthogonal { defect });
    }
    let column_sum_defect = m
        .column_sums()
        .into_iter()
        .fold(0.0, |acc: f64, s| acc.max((s - 1.0).abs()));
    if column_sum_defect > 1e-12 {
        log::warn!("similarity input is not column-stochastic (defect {column_sum_defect:e})");
    }

    let reduced = u.transpose().matmul(m)?.matmul(u)?;
    let top_right_norm = (1..n).map(|j| reduced[(0, j)].abs()).sum();
    Ok(SimilarityReport {
        top_left: reduced[(0, 0)],
        top_right_norm,
        w: (1..n).map(|i| reduced[(i, 0)]).collect(),
        t: reduced.block(1, n, 1, n),
        column_sum_defect,
    })
}
