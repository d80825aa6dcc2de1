//! Seeded random column-stochastic instances.
//!
//! The generator is ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded through
//! `SeedableRng::seed_from_u64`. Uniform variates are
//! `((x >> 11) + 0.5) · 2⁻⁵³` for each raw `u64` output `x`, which lies in
//! the open interval (0, 1), and exponential variates are `−ln u`. A
//! dense column is a normalized vector of unit exponentials, i.e. a uniform
//! draw from the probability simplex. Columns are generated in order
//! 0, 1, …, n−1, rows in ascending order within each column.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::google::PersonalizationVector;
use crate::transition::{PatchPolicy, SparseTransition};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InstanceMode {
    /// Every column uniform on the simplex.
    Dense,
    /// Each entry present with probability `density / n`; an empty column
    /// receives one entry at a uniform row.
    Sparse { density: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomInstanceSpec {
    pub n: usize,
    pub seed: u64,
    pub mode: InstanceMode,
}

impl RandomInstanceSpec {
    pub fn dense(n: usize, seed: u64) -> Self {
        Self {
            n,
            seed,
            mode: InstanceMode::Dense,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::EmptyGraph);
        }
        if let InstanceMode::Sparse { density } = self.mode {
            if !(density >= 1.0) {
                return Err(Error::InvalidConfig(format!(
                    "density must be at least 1, got {density}"
                )));
            }
        }
        Ok(())
    }
}

/// The pinned random stream used for every generated instance.
pub struct InstanceRng(ChaCha8Rng);

impl InstanceRng {
    pub fn new(seed: u64) -> Self {
        Self(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform on (0, 1).
    pub fn uniform(&mut self) -> f64 {
        ((self.0.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }

    pub fn exponential(&mut self) -> f64 {
        -self.uniform().ln()
    }

    /// Uniform draw from the probability simplex in `n` dimensions.
    pub fn simplex(&mut self, n: usize) -> Vec<f64> {
        let mut x: Vec<f64> = (0..n).map(|_| self.exponential()).collect();
        let s: f64 = x.iter().sum();
        x.iter_mut().for_each(|v| *v /= s);
        x
    }

    pub fn personalization(&mut self, n: usize) -> PersonalizationVector {
        PersonalizationVector::new(self.simplex(n))
            .expect("normalized exponentials form a distribution")
    }

    pub fn stochastic(&mut self, n: usize, mode: InstanceMode) -> SparseTransition {
        let columns = (0..n)
            .map(|_| match mode {
                InstanceMode::Dense => self.simplex(n).into_iter().enumerate().collect::<Vec<_>>(),
                InstanceMode::Sparse { density } => {
                    let keep = (density / n as f64).min(1.0);
                    let mut col = Vec::new();
                    for i in 0..n {
                        if self.uniform() < keep {
                            col.push((i, self.exponential()));
                        }
                    }
                    if col.is_empty() {
                        let i = ((self.uniform() * n as f64) as usize).min(n - 1);
                        col.push((i, self.exponential()));
                    }
                    col
                }
            })
            .collect();
        SparseTransition::from_columns(n, columns, PatchPolicy::Uniform)
            .expect("generated columns are valid")
    }
}

/// Column-stochastic matrix from `spec`, deterministic in the seed.
pub fn random_stochastic(spec: &RandomInstanceSpec) -> Result<SparseTransition> {
    spec.validate()?;
    Ok(InstanceRng::new(spec.seed).stochastic(spec.n, spec.mode))
}

/// `P` from `spec` followed by a simplex-uniform `v` from the same stream.
pub fn random_instance(
    spec: &RandomInstanceSpec,
) -> Result<(SparseTransition, PersonalizationVector)> {
    spec.validate()?;
    let mut rng = InstanceRng::new(spec.seed);
    let p = rng.stochastic(spec.n, spec.mode);
    let v = rng.personalization(spec.n);
    Ok((p, v))
}
