//! Dense verification of how damping acts on the spectrum of `P`.

pub mod eigen;
pub mod householder;
pub mod multiset;
pub mod residual;
pub mod similarity;
pub mod theorem;

pub use eigen::{eigenvalues_dense, hessenberg, ComplexSpectrum};
pub use householder::orthogonal_basis;
pub use multiset::match_multisets;
pub use residual::singular_residual;
pub use similarity::{similarity_reduce, SimilarityReport};
pub use theorem::{verify_dense, verify_theorem, TheoremReport, TheoremTolerances};
