//! Certificates for computed eigenvalues that do not reuse the QR path.

use num_complex::Complex64;

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};

const INVERSE_ITERATION_STEPS: usize = 3;

/// Upper bound on the smallest singular value of `M − λI`.
///
/// Runs a few steps of inverse iteration with a pivoted complex LU factor of
/// `M − λI` and returns `‖(M − λI)z‖₂` for the final unit vector `z`. Since
/// `σ_min ≤ ‖Bz‖₂` for every unit `z`, a small value certifies that `λ` is
/// close to the spectrum.
pub fn singular_residual(m: &DenseMatrix, lambda: Complex64) -> Result<f64> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(0.0);
    }
    let shifted = |i: usize, j: usize| {
        let v = Complex64::new(m[(i, j)], 0.0);
        if i == j {
            v - lambda
        } else {
            v
        }
    };

    let mut lu: Vec<Complex64> = (0..n * n).map(|k| shifted(k / n, k % n)).collect();
    let mut perm: Vec<usize> = (0..n).collect();
    // Exactly singular pivots are nudged so the solve stays finite.
    let tiny = f64::EPSILON * m.frobenius_norm().max(f64::MIN_POSITIVE);
    for k in 0..n {
        let piv = (k..n)
            .max_by(|&a, &b| lu[a * n + k].norm().total_cmp(&lu[b * n + k].norm()))
            .expect("non-empty range");
        if piv != k {
            for j in 0..n {
                lu.swap(k * n + j, piv * n + j);
            }
            perm.swap(k, piv);
        }
        if lu[k * n + k].norm() < tiny {
            lu[k * n + k] = Complex64::new(tiny, 0.0);
        }
        let d = lu[k * n + k];
        for i in k + 1..n {
            let f = lu[i * n + k] / d;
            lu[i * n + k] = f;
            if f != Complex64::new(0.0, 0.0) {
                for j in k + 1..n {
                    let u = lu[k * n + j];
                    lu[i * n + j] -= f * u;
                }
            }
        }
    }

    let solve = |b: &[Complex64]| -> Vec<Complex64> {
        let mut y: Vec<Complex64> = perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                let l = lu[i * n + j];
                y[i] = y[i] - l * y[j];
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let u = lu[i * n + j];
                y[i] = y[i] - u * y[j];
            }
            y[i] /= lu[i * n + i];
        }
        y
    };

    let norm = |z: &[Complex64]| z.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let mut z: Vec<Complex64> = (0..n)
        .map(|i| Complex64::new(1.0, (i as f64 + 1.0) / n as f64))
        .collect();
    let z0 = norm(&z);
    z.iter_mut().for_each(|c| *c /= z0);
    for _ in 0..INVERSE_ITERATION_STEPS {
        let y = solve(&z);
        let ny = norm(&y);
        if !ny.is_finite() || ny == 0.0 {
            break;
        }
        z = y.into_iter().map(|c| c / ny).collect();
    }

    let bz: Vec<Complex64> = (0..n)
        .map(|i| (0..n).map(|j| shifted(i, j) * z[j]).sum())
        .collect();
    Ok(norm(&bz))
}
