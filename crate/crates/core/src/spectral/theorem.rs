//! Numerical check that the spectrum of `A = αP + (1 − α)veᵀ` is
//! `{1, αλ₂, …, αλₙ}` when `P` has spectrum `{1, λ₂, …, λₙ}`.
//!
//! With `U = [ê U₁]` orthogonal, `UᵀPU = [1 0; w T]` because `êᵀP = êᵀ`.
//! The teleportation term becomes `(1 − α)(Uᵀv)(eᵀU)` with
//! `Uᵀv = (1/√n; U₁ᵀv)` and `eᵀU = (√n, 0)`, so it only touches the first
//! column and `UᵀAU = [1 0; w₁ αT]` with `w₁ = αw + (1 − α)√n U₁ᵀv`.
//! Every block of both identities is measured here, and the eigenvalue claim
//! is confirmed independently with the dense eigensolver.

use num_complex::Complex64;
use serde::Serialize;

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::google::{GoogleOperator, PersonalizationVector, DEFAULT_DENSE_CAP};
use crate::transition::SparseTransition;

use super::eigen::{eigenvalues_dense, ComplexSpectrum};
use super::householder::orthogonal_basis;
use super::multiset::match_multisets;
use super::similarity::{similarity_reduce, SimilarityReport};

#[derive(Debug, Clone, PartialEq)]
pub struct TheoremTolerances {
    /// Bound on `|top_left − 1|` and the top-right block norm, for both
    /// `UᵀPU` and `UᵀAU`, and on the rank-one and `w₁` reconstructions.
    pub structure: f64,
    /// Bound on `‖T_A − αT_P‖_F / (1 + ‖T_P‖_F)`.
    pub block_relative: f64,
    /// Bound on the eigenvalue matching distance.
    pub eigen: f64,
    /// Run the eigenvalue comparison.
    pub check_eigenvalues: bool,
    pub dense_cap: usize,
}

impl Default for TheoremTolerances {
    fn default() -> Self {
        Self {
            structure: 1e-12,
            block_relative: 1e-10,
            eigen: 1e-8,
            check_eigenvalues: true,
            dense_cap: DEFAULT_DENSE_CAP,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub n: usize,
    pub alpha: f64,
    pub p_blocks: SimilarityReport,
    pub a_blocks: SimilarityReport,
    /// `‖T_A − αT_P‖_F`.
    pub block_defect: f64,
    /// `‖T_P‖_F`.
    pub t_p_norm: f64,
    /// `max |(Uᵀv)(eᵀU) − (1/√n; U₁ᵀv)(√n, 0)|`.
    pub rank_one_defect: f64,
    /// `max |w₁ − (αw + (1 − α)√n U₁ᵀv)|`.
    pub w1_defect: f64,
    /// Matching distance between `eig(A)` and `α·eig(P)`, each with one
    /// eigenvalue nearest 1 removed.
    pub eig_multiset_defect: Option<f64>,
    pub spectrum_p: Option<ComplexSpectrum>,
    pub spectrum_a: Option<ComplexSpectrum>,
    /// Second-largest eigenvalue modulus of `A` and of `P`.
    pub lambda2_modulus_a: Option<f64>,
    pub lambda2_modulus_p: Option<f64>,
    /// Set when the eigensolver failed on either matrix.
    pub eigen_error: Option<String>,
    pub passed: bool,
}

impl TheoremReport {
    pub fn structure_defect(&self) -> f64 {
        [
            (self.p_blocks.top_left - 1.0).abs(),
            self.p_blocks.top_right_norm,
            (self.a_blocks.top_left - 1.0).abs(),
            self.a_blocks.top_right_norm,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    pub fn block_defect_relative(&self) -> f64 {
        self.block_defect / (1.0 + self.t_p_norm)
    }
}

/// Verifies the eigenvalue relation between `P` and the Google matrix built
/// from it. Tolerance violations are reported through `passed`.
pub fn verify_theorem(
    p: &SparseTransition,
    alpha: f64,
    v: &PersonalizationVector,
    tol: &TheoremTolerances,
) -> Result<TheoremReport> {
    let n = p.n();
    if n > tol.dense_cap {
        return Err(Error::DenseCapExceeded {
            n,
            cap: tol.dense_cap,
        });
    }
    let op = GoogleOperator::new(p.clone(), alpha, v.clone())?;
    let dense_p = op.dense_transition(tol.dense_cap)?;
    let dense_a = op.materialize_dense_capped(tol.dense_cap)?;
    verify_dense(&dense_p, &dense_a, alpha, v.as_slice(), tol)
}

/// [`verify_theorem`] on already materialized `P` and `A`.
pub fn verify_dense(
    dense_p: &DenseMatrix,
    dense_a: &DenseMatrix,
    alpha: f64,
    v: &[f64],
    tol: &TheoremTolerances,
) -> Result<TheoremReport> {
    let n = dense_p.rows();
    if dense_a.rows() != n || v.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: dense_a.rows().max(v.len()),
        });
    }
    let u = orthogonal_basis(n)?;
    let p_blocks = similarity_reduce(dense_p, &u)?;
    let a_blocks = similarity_reduce(dense_a, &u)?;

    let block_defect = a_blocks.t.sub(&p_blocks.t.scaled(alpha))?.frobenius_norm();
    let t_p_norm = p_blocks.t.frobenius_norm();

    let sqrt_n = (n as f64).sqrt();
    let ut = u.transpose();
    let ut_v = ut.matvec(v)?;
    let ones = vec![1.0; n];
    let e_u = ut.matvec(&ones)?;
    let mut rank_one_defect: f64 = 0.0;
    for (i, &uv) in ut_v.iter().enumerate() {
        let left = if i == 0 { 1.0 / sqrt_n } else { uv };
        for (j, &eu) in e_u.iter().enumerate() {
            let right = if j == 0 { sqrt_n } else { 0.0 };
            let d = (1.0 - alpha) * (uv * eu - left * right);
            rank_one_defect = rank_one_defect.max(d.abs());
        }
    }
    let w1_defect = a_blocks
        .w
        .iter()
        .zip(&p_blocks.w)
        .zip(&ut_v[1..])
        .map(|((w1, w), uv)| (w1 - (alpha * w + (1.0 - alpha) * sqrt_n * uv)).abs())
        .fold(0.0, f64::max);

    let mut report = TheoremReport {
        n,
        alpha,
        p_blocks,
        a_blocks,
        block_defect,
        t_p_norm,
        rank_one_defect,
        w1_defect,
        eig_multiset_defect: None,
        spectrum_p: None,
        spectrum_a: None,
        lambda2_modulus_a: None,
        lambda2_modulus_p: None,
        eigen_error: None,
        passed: false,
    };

    if tol.check_eigenvalues {
        match (eigenvalues_dense(dense_p), eigenvalues_dense(dense_a)) {
            (Ok(sp), Ok(sa)) => {
                let one = Complex64::new(1.0, 0.0);
                let rest_p = sp.without_nearest(one).scaled(alpha);
                let rest_a = sa.without_nearest(one);
                let defect = match_multisets(&rest_a, &rest_p)?;
                if defect > tol.eigen {
                    log::warn!(
                        "eigenvalue match {defect:e} exceeds {:e} at n = {n}; P may be ill-conditioned",
                        tol.eigen
                    );
                }
                report.eig_multiset_defect = Some(defect);
                report.lambda2_modulus_a = sa.subdominant_modulus();
                report.lambda2_modulus_p = sp.subdominant_modulus();
                report.spectrum_p = Some(sp);
                report.spectrum_a = Some(sa);
            }
            (Err(e), _) | (_, Err(e)) => report.eigen_error = Some(e.to_string()),
        }
    }

    report.passed = report.structure_defect() <= tol.structure
        && report.rank_one_defect <= tol.structure
        && report.w1_defect <= tol.structure
        && report.block_defect_relative() <= tol.block_relative
        && (!tol.check_eigenvalues
            || (report.eigen_error.is_none()
                && report.eig_multiset_defect.is_some_and(|d| d <= tol.eigen)));
    Ok(report)
}
