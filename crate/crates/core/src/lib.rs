//! PageRank by power iteration on the implicit Google matrix
//! `A = αP + (1 − α)veᵀ`, together with a dense verifier showing that the
//! spectrum of `A` is `{1, αλ₂, …, αλₙ}`.

// Negated comparisons deliberately treat NaN as invalid.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod dense;
pub mod error;
pub mod google;
pub mod graph;
pub mod io;
pub mod solver;
pub mod spectral;
pub mod transition;

pub use dense::DenseMatrix;
pub use error::{Error, Result};
pub use google::{GoogleOperator, PersonalizationVector, RankVector, DEFAULT_DENSE_CAP};
pub use graph::DirectedGraph;
pub use solver::{power_method, residual, ConvergenceTrace, RankResult, SolverConfig};
pub use transition::{build_transition, PatchPolicy, SparseTransition};
