//! Eigenvalues of real unsymmetric matrices.
//!
//! Householder reduction to upper Hessenberg form, then Francis double-shift
//! QR on the Hessenberg matrix. Converged 1×1 blocks give real eigenvalues and
//! 2×2 blocks give real pairs or complex-conjugate pairs.

use num_complex::Complex64;
use serde::Serialize;

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};

/// Total QR sweeps allowed per unit of dimension.
pub const SWEEPS_PER_DIM: usize = 50;

/// Multiset of eigenvalues of a real matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComplexSpectrum {
    #[serde(serialize_with = "serialize_pairs")]
    values: Vec<Complex64>,
}

fn serialize_pairs<S: serde::Serializer>(
    values: &[Complex64],
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = ser.serialize_seq(Some(values.len()))?;
    for z in values {
        seq.serialize_element(&(z.re, z.im))?;
    }
    seq.end()
}

impl ComplexSpectrum {
    pub fn new(values: Vec<Complex64>) -> Self {
        Self { values }
    }

    pub fn from_pairs(pairs: &[(f64, f64)]) -> Self {
        Self::new(
            pairs
                .iter()
                .map(|&(re, im)| Complex64::new(re, im))
                .collect(),
        )
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Index of the eigenvalue closest to `target`.
    pub fn nearest(&self, target: Complex64) -> Option<usize> {
        self.values
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| (*a - target).norm().total_cmp(&(*b - target).norm()))
            .map(|(i, _)| i)
    }

    /// The spectrum with one copy of the eigenvalue nearest `target` removed.
    pub fn without_nearest(&self, target: Complex64) -> Self {
        let mut values = self.values.clone();
        if let Some(i) = self.nearest(target) {
            values.remove(i);
        }
        Self { values }
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            values: self.values.iter().map(|z| z * s).collect(),
        }
    }

    /// Moduli in descending order.
    pub fn moduli_desc(&self) -> Vec<f64> {
        let mut m: Vec<f64> = self.values.iter().map(|z| z.norm()).collect();
        m.sort_by(|a, b| b.total_cmp(a));
        m
    }

    /// Largest modulus after removing one copy of the eigenvalue nearest 1.
    pub fn subdominant_modulus(&self) -> Option<f64> {
        self.without_nearest(Complex64::new(1.0, 0.0))
            .moduli_desc()
            .first()
            .copied()
    }

    /// Largest distance from any eigenvalue's conjugate to its nearest
    /// member of the spectrum.
    pub fn conjugation_defect(&self) -> f64 {
        self.values
            .iter()
            .map(|z| {
                let c = z.conj();
                self.values
                    .iter()
                    .map(|w| (w - c).norm())
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    }
}

/// Reduces a square matrix to upper Hessenberg form by Householder
/// similarity transformations.
pub fn hessenberg(m: &DenseMatrix) -> Result<DenseMatrix> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut h = m.clone();
    let mut v = vec![0.0; n];
    for k in 0..n.saturating_sub(2) {
        let norm: f64 = (k + 1..n)
            .map(|i| h[(i, k)] * h[(i, k)])
            .sum::<f64>()
            .sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let alpha = if x0 >= 0.0 { -norm } else { norm };
        for i in k + 1..n {
            v[i] = h[(i, k)];
        }
        v[k + 1] -= alpha;
        let vnorm2: f64 = (k + 1..n).map(|i| v[i] * v[i]).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm2;
        // H ← (I − βvvᵀ) H
        for j in k..n {
            let dot: f64 = (k + 1..n).map(|i| v[i] * h[(i, j)]).sum();
            let s = beta * dot;
            for i in k + 1..n {
                h[(i, j)] -= s * v[i];
            }
        }
        // H ← H (I − βvvᵀ)
        for i in 0..n {
            let dot: f64 = (k + 1..n).map(|j| h[(i, j)] * v[j]).sum();
            let s = beta * dot;
            for j in k + 1..n {
                h[(i, j)] -= s * v[j];
            }
        }
        h[(k + 1, k)] = alpha;
        for i in k + 2..n {
            h[(i, k)] = 0.0;
        }
    }
    Ok(h)
}

/// All eigenvalues of a real square matrix.
pub fn eigenvalues_dense(m: &DenseMatrix) -> Result<ComplexSpectrum> {
    let h = hessenberg(m)?;
    hessenberg_qr(&h)
}

/// Francis double-shift QR on an upper Hessenberg matrix.
pub fn hessenberg_qr(h: &DenseMatrix) -> Result<ComplexSpectrum> {
    if !h.is_square() {
        return Err(Error::NotSquare {
            rows: h.rows(),
            cols: h.cols(),
        });
    }
    let n = h.rows();
    if n == 0 {
        return Ok(ComplexSpectrum::new(Vec::new()));
    }
    // 1-based working copy; row/column 0 unused.
    let stride = n + 1;
    let mut a = vec![0.0; stride * stride];
    for i in 0..n {
        for j in 0..n {
            a[(i + 1) * stride + j + 1] = h[(i, j)];
        }
    }
    macro_rules! a {
        ($i:expr, $j:expr) => {
            a[($i) * stride + ($j)]
        };
    }

    let eps = f64::EPSILON;
    let mut wr = vec![0.0; n + 1];
    let mut wi = vec![0.0; n + 1];
    let mut anorm = 0.0;
    for i in 1..=n {
        for j in i.saturating_sub(1).max(1)..=n {
            anorm += a!(i, j).abs();
        }
    }

    let cap = SWEEPS_PER_DIM * n;
    let mut total = 0usize;
    let mut nn = n;
    let mut t = 0.0;
    let mut its = 0usize;
    let (mut p, mut q, mut r): (f64, f64, f64);

    while nn >= 1 {
        // Look for a negligible subdiagonal entry.
        let mut l = nn;
        while l >= 2 {
            let mut s = a!(l - 1, l - 1).abs() + a!(l, l).abs();
            if s == 0.0 {
                s = anorm;
            }
            if a!(l, l - 1).abs() <= eps * s {
                a!(l, l - 1) = 0.0;
                break;
            }
            l -= 1;
        }
        let mut x = a!(nn, nn);
        if l == nn {
            wr[nn] = x + t;
            wi[nn] = 0.0;
            nn -= 1;
            its = 0;
            continue;
        }
        let mut y = a!(nn - 1, nn - 1);
        let mut w = a!(nn, nn - 1) * a!(nn - 1, nn);
        if l == nn - 1 {
            let pp = 0.5 * (y - x);
            let qq = pp * pp + w;
            let z = qq.abs().sqrt();
            x += t;
            if qq >= 0.0 {
                let z = pp + z.copysign(pp);
                wr[nn - 1] = x + z;
                wr[nn] = if z != 0.0 { x - w / z } else { x + z };
                wi[nn - 1] = 0.0;
                wi[nn] = 0.0;
            } else {
                wr[nn - 1] = x + pp;
                wr[nn] = x + pp;
                wi[nn - 1] = -z;
                wi[nn] = z;
            }
            nn -= 2;
            its = 0;
            continue;
        }

        if total >= cap {
            return Err(Error::EigenNoConvergence {
                indices: (0..nn).collect(),
            });
        }
        if its > 0 && its.is_multiple_of(10) {
            // Exceptional shift.
            t += x;
            for i in 1..=nn {
                a!(i, i) -= x;
            }
            let s = a!(nn, nn - 1).abs() + a!(nn - 1, nn - 2).abs();
            x = 0.75 * s;
            y = x;
            w = -0.4375 * s * s;
        }
        its += 1;
        total += 1;

        // Find two consecutive small subdiagonal elements.
        let mut m = nn - 2;
        loop {
            let z = a!(m, m);
            let rr = x - z;
            let ss = y - z;
            p = (rr * ss - w) / a!(m + 1, m) + a!(m, m + 1);
            q = a!(m + 1, m + 1) - z - rr - ss;
            r = a!(m + 2, m + 1);
            let s = p.abs() + q.abs() + r.abs();
            p /= s;
            q /= s;
            r /= s;
            if m == l {
                break;
            }
            let u = a!(m, m - 1).abs() * (q.abs() + r.abs());
            let v = p.abs() * (a!(m - 1, m - 1).abs() + z.abs() + a!(m + 1, m + 1).abs());
            if u <= eps * v {
                break;
            }
            m -= 1;
        }
        for i in m + 2..=nn {
            a!(i, i - 2) = 0.0;
            if i != m + 2 {
                a!(i, i - 3) = 0.0;
            }
        }

        // Double QR step on rows l..nn and columns m..nn.
        let mut k = m;
        while k < nn {
            if k != m {
                p = a!(k, k - 1);
                q = a!(k + 1, k - 1);
                r = if k != nn - 1 { a!(k + 2, k - 1) } else { 0.0 };
                x = p.abs() + q.abs() + r.abs();
                if x != 0.0 {
                    p /= x;
                    q /= x;
                    r /= x;
                }
            }
            let s = (p * p + q * q + r * r).sqrt().copysign(p);
            if s != 0.0 {
                if k == m {
                    if l != m {
                        a!(k, k - 1) = -a!(k, k - 1);
                    }
                } else {
                    a!(k, k - 1) = -s * x;
                }
                p += s;
                x = p / s;
                y = q / s;
                let z = r / s;
                q /= p;
                r /= p;
                for j in k..=nn {
                    let mut pp = a!(k, j) + q * a!(k + 1, j);
                    if k != nn - 1 {
                        pp += r * a!(k + 2, j);
                        a!(k + 2, j) -= pp * z;
                    }
                    a!(k + 1, j) -= pp * y;
                    a!(k, j) -= pp * x;
                }
                let mmin = nn.min(k + 3);
                for i in l..=mmin {
                    let mut pp = x * a!(i, k) + y * a!(i, k + 1);
                    if k != nn - 1 {
                        pp += z * a!(i, k + 2);
                        a!(i, k + 2) -= pp * r;
                    }
                    a!(i, k + 1) -= pp * q;
                    a!(i, k) -= pp;
                }
            }
            k += 1;
        }
    }

    Ok(ComplexSpectrum::new(
        (1..=n).map(|i| Complex64::new(wr[i], wi[i])).collect(),
    ))
}
