use crate::dense::DenseMatrix;
use crate::error::{Error, Result};

/// Orthogonal `U = [ê U₁]` whose first column is `ê = e/√n`.
///
/// `U` is the Householder reflector `I − 2uuᵀ/(uᵀu)` with `u = ê − e₁`,
/// which swaps `e₁` and `ê`. For `n = 1`, `u = 0` and `U = [1]`.
pub fn orthogonal_basis(n: usize) -> Result<DenseMatrix> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut u = vec![1.0 / (n as f64).sqrt(); n];
    u[0] -= 1.0;
    let uu: f64 = u.iter().map(|v| v * v).sum();
    let mut m = DenseMatrix::identity(n);
    if uu == 0.0 {
        return Ok(m);
    }
    let beta = 2.0 / uu;
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] -= beta * u[i] * u[j];
        }
    }
    Ok(m)
}
