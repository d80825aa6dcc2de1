//! The Google matrix `A = αP + (1 − α)veᵀ`, applied without forming it.

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::transition::SparseTransition;

/// Largest dimension that may be densified unless a caller raises it.
pub const DEFAULT_DENSE_CAP: usize = 2048;

/// Tolerance on `|Σ − 1|` for probability vectors.
pub const SUM_TOLERANCE: f64 = 1e-12;

fn check_distribution(x: &[f64]) -> Result<()> {
    if x.is_empty() {
        return Err(Error::InvalidDistribution("empty vector".into()));
    }
    if let Some((i, v)) = x
        .iter()
        .enumerate()
        .find(|(_, v)| !(**v >= 0.0) || !v.is_finite())
    {
        return Err(Error::InvalidDistribution(format!(
            "entry {i} is {v}, expected a finite non-negative value"
        )));
    }
    let sum: f64 = x.iter().sum();
    if (sum - 1.0).abs() > SUM_TOLERANCE {
        return Err(Error::InvalidDistribution(format!(
            "entries sum to {sum}, expected 1"
        )));
    }
    Ok(())
}

/// Teleportation distribution `v`: non-negative, summing to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct PersonalizationVector(Vec<f64>);

impl PersonalizationVector {
    pub fn new(v: Vec<f64>) -> Result<Self> {
        check_distribution(&v)?;
        Ok(Self(v))
    }

    pub fn uniform(n: usize) -> Self {
        Self(vec![1.0 / n as f64; n])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A non-negative vector with unit 1-norm.
#[derive(Debug, Clone, PartialEq)]
pub struct RankVector(Vec<f64>);

impl RankVector {
    pub fn new(x: Vec<f64>) -> Result<Self> {
        check_distribution(&x)?;
        Ok(Self(x))
    }

    pub fn uniform(n: usize) -> Self {
        Self(vec![1.0 / n as f64; n])
    }

    /// Scales a non-negative vector with positive sum onto the simplex.
    pub fn normalized(mut x: Vec<f64>) -> Result<Self> {
        if x.iter().any(|v| !(*v >= 0.0) || !v.is_finite()) {
            return Err(Error::InvalidDistribution(
                "entries must be finite and non-negative".into(),
            ));
        }
        let sum: f64 = x.iter().sum();
        if !(sum > 0.0) {
            return Err(Error::InvalidDistribution("vector sums to zero".into()));
        }
        x.iter_mut().for_each(|v| *v /= sum);
        Ok(Self(x))
    }

    pub(crate) fn from_vec_unchecked(x: Vec<f64>) -> Self {
        Self(x)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Implicit `A = αP + (1 − α)veᵀ`.
///
/// Under [`PatchPolicy::Personalization`](crate::transition::PatchPolicy),
/// the dangling columns of `P` are taken to be `v`.
#[derive(Debug, Clone)]
pub struct GoogleOperator {
    transition: SparseTransition,
    alpha: f64,
    v: PersonalizationVector,
    chunks: usize,
}

impl GoogleOperator {
    pub fn new(transition: SparseTransition, alpha: f64, v: PersonalizationVector) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidAlpha(alpha));
        }
        if v.len() != transition.n() {
            return Err(Error::DimensionMismatch {
                expected: transition.n(),
                got: v.len(),
            });
        }
        Ok(Self {
            transition,
            alpha,
            v,
            chunks: 1,
        })
    }

    /// Operator with uniform teleportation `v = e / n`.
    pub fn with_uniform(transition: SparseTransition, alpha: f64) -> Result<Self> {
        let n = transition.n();
        Self::new(transition, alpha, PersonalizationVector::uniform(n))
    }

    /// Splits the sparse product into `chunks` column blocks evaluated in
    /// parallel. See [`SparseTransition::apply_chunked`].
    pub fn with_chunks(mut self, chunks: usize) -> Self {
        self.chunks = chunks.max(1);
        self
    }

    pub fn n(&self) -> usize {
        self.transition.n()
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn personalization(&self) -> &PersonalizationVector {
        &self.v
    }

    pub fn transition(&self) -> &SparseTransition {
        &self.transition
    }

    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        let mut y = vec![0.0; self.n()];
        self.apply_into(x, &mut y)?;
        Ok(y)
    }

    /// `y = α(Px) + (1 − α)(eᵀx)v`.
    pub fn apply_into(&self, x: &[f64], y: &mut [f64]) -> Result<()> {
        let v = self.v.as_slice();
        self.transition
            .apply_chunked_into(x, Some(v), self.chunks, y)?;
        let teleport = (1.0 - self.alpha) * x.iter().sum::<f64>();
        for (yi, vi) in y.iter_mut().zip(v) {
            *yi = self.alpha * *yi + teleport * vi;
        }
        Ok(())
    }

    /// Dense `P` with dangling columns completed.
    pub fn dense_transition(&self, cap: usize) -> Result<DenseMatrix> {
        let n = self.n();
        if n > cap {
            return Err(Error::DenseCapExceeded { n, cap });
        }
        self.transition.to_dense(Some(self.v.as_slice()))
    }

    /// Dense `A`, refused when `n` exceeds [`DEFAULT_DENSE_CAP`].
    pub fn materialize_dense(&self) -> Result<DenseMatrix> {
        self.materialize_dense_capped(DEFAULT_DENSE_CAP)
    }

    pub fn materialize_dense_capped(&self, cap: usize) -> Result<DenseMatrix> {
        let mut a = self.dense_transition(cap)?;
        let n = self.n();
        let v = self.v.as_slice();
        for i in 0..n {
            for j in 0..n {
                a[(i, j)] = self.alpha * a[(i, j)] + (1.0 - self.alpha) * v[i];
            }
        }
        Ok(a)
    }
}
