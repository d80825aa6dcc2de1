use crate::error::{Error, Result};

use super::eigen::ComplexSpectrum;

/// Matching distance between two spectra of equal length.
///
/// Pairs are formed greedily by increasing distance over all cross pairs;
/// the largest distance among the chosen pairs is returned.
pub fn match_multisets(s1: &ComplexSpectrum, s2: &ComplexSpectrum) -> Result<f64> {
    if s1.len() != s2.len() {
        return Err(Error::DimensionMismatch {
            expected: s1.len(),
            got: s2.len(),
        });
    }
    let n = s1.len();
    let mut pairs = Vec::with_capacity(n * n);
    for (i, a) in s1.values().iter().enumerate() {
        for (j, b) in s2.values().iter().enumerate() {
            pairs.push(((a - b).norm(), i, j));
        }
    }
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
    let mut used1 = vec![false; n];
    let mut used2 = vec![false; n];
    let mut worst: f64 = 0.0;
    let mut matched = 0;
    for (d, i, j) in pairs {
        if used1[i] || used2[j] {
            continue;
        }
        used1[i] = true;
        used2[j] = true;
        worst = worst.max(d);
        matched += 1;
        if matched == n {
            break;
        }
    }
    Ok(worst)
}
