//! Column-stochastic transition matrices in compressed sparse column form.

use rayon::prelude::*;

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::graph::DirectedGraph;

/// How all-zero (dangling) columns are completed to probability columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PatchPolicy {
    /// Every dangling column becomes `e / n`.
    #[default]
    Uniform,
    /// Every dangling column becomes the personalization vector of the
    /// operator that applies the matrix. Nothing is stored per column.
    Personalization,
}

/// Column-stochastic `P` stored in CSC form.
///
/// Column `j` holds the out-edge weights of node `j`, normalized to sum to 1.
/// Dangling columns store no entries; they are listed in `dangling` and
/// completed at apply time according to the patch policy.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseTransition {
    n: usize,
    col_ptr: Vec<usize>,
    row_idx: Vec<usize>,
    values: Vec<f64>,
    dangling: Vec<usize>,
    policy: PatchPolicy,
}

impl SparseTransition {
    /// Normalizes the out-edges of every node into a probability column.
    pub fn from_graph(g: &DirectedGraph, policy: PatchPolicy) -> Self {
        let n = g.n();
        let mut columns: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
        for (source, target, w) in g.edges() {
            columns[source].push((target, w));
        }
        Self::from_columns_unchecked(n, columns, policy)
    }

    /// Builds a transition from per-column `(row, weight)` lists. Each column
    /// is normalized to sum to 1; empty columns become dangling.
    pub fn from_columns(
        n: usize,
        mut columns: Vec<Vec<(usize, f64)>>,
        policy: PatchPolicy,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        if columns.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: columns.len(),
            });
        }
        for (j, col) in columns.iter_mut().enumerate() {
            for &(i, w) in col.iter() {
                if i >= n {
                    return Err(Error::NodeOutOfRange { id: i, n });
                }
                if !(w > 0.0) || !w.is_finite() {
                    return Err(Error::InvalidWeight {
                        source_node: j,
                        target: i,
                        weight: w,
                    });
                }
            }
            col.sort_by_key(|&(i, _)| i);
            col.dedup_by(|later, kept| {
                if later.0 == kept.0 {
                    kept.1 += later.1;
                    true
                } else {
                    false
                }
            });
        }
        Ok(Self::from_columns_unchecked(n, columns, policy))
    }

    // Columns must be sorted by row with unique rows and positive weights.
    fn from_columns_unchecked(
        n: usize,
        columns: Vec<Vec<(usize, f64)>>,
        policy: PatchPolicy,
    ) -> Self {
        let nnz = columns.iter().map(Vec::len).sum();
        let mut col_ptr = Vec::with_capacity(n + 1);
        let mut row_idx = Vec::with_capacity(nnz);
        let mut values = Vec::with_capacity(nnz);
        let mut dangling = Vec::new();
        col_ptr.push(0);
        for (j, col) in columns.into_iter().enumerate() {
            if col.is_empty() {
                dangling.push(j);
            } else {
                let total: f64 = col.iter().map(|&(_, w)| w).sum();
                for (i, w) in col {
                    row_idx.push(i);
                    values.push(w / total);
                }
            }
            col_ptr.push(row_idx.len());
        }
        Self {
            n,
            col_ptr,
            row_idx,
            values,
            dangling,
            policy,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn policy(&self) -> PatchPolicy {
        self.policy
    }

    /// Columns that had no out-edges before patching, ascending.
    pub fn dangling_columns(&self) -> &[usize] {
        &self.dangling
    }

    /// Stored `(row, value)` entries of column `j`, rows strictly increasing.
    pub fn column(&self, j: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let range = self.col_ptr[j]..self.col_ptr[j + 1];
        self.row_idx[range.clone()]
            .iter()
            .copied()
            .zip(self.values[range].iter().copied())
    }

    /// `y = P x`. Fails for the personalization policy, whose dangling
    /// columns are only defined together with a personalization vector.
    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        match self.policy {
            PatchPolicy::Uniform => {
                let mut y = vec![0.0; self.n];
                self.apply_into(x, None, &mut y)?;
                Ok(y)
            }
            PatchPolicy::Personalization => Err(Error::MissingPatch),
        }
    }

    /// `y = P x` where dangling columns are completed by `patch` under the
    /// personalization policy. The uniform policy ignores `patch`.
    pub fn apply_with_patch(&self, x: &[f64], patch: &[f64]) -> Result<Vec<f64>> {
        let mut y = vec![0.0; self.n];
        self.apply_into(x, Some(patch), &mut y)?;
        Ok(y)
    }

    /// Writes `P x` into `y`. Columns are accumulated in ascending order,
    /// followed by the dangling mass.
    pub fn apply_into(&self, x: &[f64], patch: Option<&[f64]>, y: &mut [f64]) -> Result<()> {
        self.check_dims(x, patch, y)?;
        y.iter_mut().for_each(|v| *v = 0.0);
        scatter_columns(self, x, 0..self.n, y);
        self.add_dangling(x, patch, y);
        Ok(())
    }

    /// Parallel `P x`. The columns are split into `chunks` contiguous blocks,
    /// each accumulated into its own buffer; the buffers are summed in block
    /// order, so the result depends on `chunks` but not on the thread pool.
    pub fn apply_chunked(
        &self,
        x: &[f64],
        patch: Option<&[f64]>,
        chunks: usize,
    ) -> Result<Vec<f64>> {
        let mut y = vec![0.0; self.n];
        self.apply_chunked_into(x, patch, chunks, &mut y)?;
        Ok(y)
    }

    pub fn apply_chunked_into(
        &self,
        x: &[f64],
        patch: Option<&[f64]>,
        chunks: usize,
        y: &mut [f64],
    ) -> Result<()> {
        if chunks <= 1 {
            return self.apply_into(x, patch, y);
        }
        self.check_dims(x, patch, y)?;
        let n = self.n;
        let block = n.div_ceil(chunks);
        let partials: Vec<Vec<f64>> = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut acc = vec![0.0; n];
                let start = (c * block).min(n);
                let end = ((c + 1) * block).min(n);
                scatter_columns(self, x, start..end, &mut acc);
                acc
            })
            .collect();
        y.iter_mut().for_each(|v| *v = 0.0);
        for acc in &partials {
            for (yi, ai) in y.iter_mut().zip(acc) {
                *yi += ai;
            }
        }
        self.add_dangling(x, patch, y);
        Ok(())
    }

    fn check_dims(&self, x: &[f64], patch: Option<&[f64]>, y: &[f64]) -> Result<()> {
        for len in [x.len(), y.len()] {
            if len != self.n {
                return Err(Error::DimensionMismatch {
                    expected: self.n,
                    got: len,
                });
            }
        }
        if self.policy == PatchPolicy::Personalization && !self.dangling.is_empty() {
            match patch {
                None => return Err(Error::MissingPatch),
                Some(p) if p.len() != self.n => {
                    return Err(Error::DimensionMismatch {
                        expected: self.n,
                        got: p.len(),
                    })
                }
                _ => {}
            }
        }
        Ok(())
    }

    fn add_dangling(&self, x: &[f64], patch: Option<&[f64]>, y: &mut [f64]) {
        if self.dangling.is_empty() {
            return;
        }
        let mass: f64 = self.dangling.iter().map(|&j| x[j]).sum();
        match (self.policy, patch) {
            (PatchPolicy::Personalization, Some(p)) => {
                for (yi, pi) in y.iter_mut().zip(p) {
                    *yi += mass * pi;
                }
            }
            _ => {
                let share = mass / self.n as f64;
                y.iter_mut().for_each(|yi| *yi += share);
            }
        }
    }

    /// Dense copy of the patched matrix. `patch` completes dangling columns
    /// under the personalization policy.
    pub fn to_dense(&self, patch: Option<&[f64]>) -> Result<DenseMatrix> {
        let n = self.n;
        if self.policy == PatchPolicy::Personalization && !self.dangling.is_empty() {
            match patch {
                None => return Err(Error::MissingPatch),
                Some(p) if p.len() != n => {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        got: p.len(),
                    })
                }
                _ => {}
            }
        }
        let mut m = DenseMatrix::zeros(n, n);
        for j in 0..n {
            for (i, v) in self.column(j) {
                m[(i, j)] = v;
            }
        }
        for &j in &self.dangling {
            for i in 0..n {
                m[(i, j)] = match (self.policy, patch) {
                    (PatchPolicy::Personalization, Some(p)) => p[i],
                    _ => 1.0 / n as f64,
                };
            }
        }
        Ok(m)
    }
}

fn scatter_columns(p: &SparseTransition, x: &[f64], cols: std::ops::Range<usize>, y: &mut [f64]) {
    for j in cols {
        let xj = x[j];
        if xj == 0.0 {
            continue;
        }
        for k in p.col_ptr[j]..p.col_ptr[j + 1] {
            y[p.row_idx[k]] += p.values[k] * xj;
        }
    }
}

/// Builds `P` from a graph: column `j` is node `j`'s out-edges normalized to
/// sum 1, and dangling columns are completed by `policy`.
pub fn build_transition(g: &DirectedGraph, policy: PatchPolicy) -> SparseTransition {
    SparseTransition::from_graph(g, policy)
}
