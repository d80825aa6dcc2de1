//! Power iteration for the pagerank vector.
//!
//! Iterates `x ← Ax / ‖Ax‖₁` from a probability vector until successive
//! iterates differ by at most `tol` in the 1-norm. The asymptotic ratio of
//! successive differences is `α·|λ₂(P)|`, which the trace estimates with a
//! trailing geometric mean so that rotation from complex `λ₂` averages out.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::google::{GoogleOperator, RankVector};

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    /// Stop once `‖x_{k+1} − x_k‖₁ ≤ tol`.
    pub tol: f64,
    pub max_iters: usize,
    /// Keep the per-iteration trace in the result.
    pub record_trace: bool,
    /// Number of trailing ratios averaged by the rate estimate.
    pub window: usize,
    /// Differences below this are dominated by rounding and are left out of
    /// the rate estimate.
    pub rate_floor: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_iters: 10_000,
            record_trace: false,
            window: 10,
            rate_floor: 1e-6,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "tol must be positive, got {}",
                self.tol
            )));
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidConfig("max_iters must be at least 1".into()));
        }
        if self.window == 0 {
            return Err(Error::InvalidConfig("window must be at least 1".into()));
        }
        if !(self.rate_floor >= 0.0) {
            return Err(Error::InvalidConfig(
                "rate_floor must be non-negative".into(),
            ));
        }
        Ok(())
    }
}

/// Successive-difference norms `‖x_{k+1} − x_k‖₁`, one per iteration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceTrace {
    pub diff_norms: Vec<f64>,
    pub window: usize,
    pub rate_floor: f64,
}

/// Outcome of [`ConvergenceTrace::estimate_rate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateEstimate {
    pub rate: f64,
    /// Number of recorded differences that fell below the noise floor.
    pub below_floor: usize,
}

impl ConvergenceTrace {
    pub fn new(window: usize, rate_floor: f64) -> Self {
        Self {
            diff_norms: Vec::new(),
            window,
            rate_floor,
        }
    }

    /// `diff(k) / diff(k−1)`; `None` at `k = 0` or when the denominator is 0.
    pub fn ratios(&self) -> Vec<Option<f64>> {
        let mut out = Vec::with_capacity(self.diff_norms.len());
        out.push(None);
        out.extend(
            self.diff_norms
                .windows(2)
                .map(|w| (w[0] > 0.0).then(|| w[1] / w[0])),
        );
        out.truncate(self.diff_norms.len());
        out
    }

    /// Geometric mean of the last `window` consecutive ratios whose
    /// numerator and denominator both sit at or above the noise floor.
    pub fn estimate_rate(&self) -> Result<RateEstimate> {
        let floor = self.rate_floor.max(f64::MIN_POSITIVE);
        let below_floor = self.diff_norms.iter().filter(|&&d| d < floor).count();
        // Last index whose difference is usable; the usable run ends there.
        let last = self.diff_norms.iter().rposition(|&d| d >= floor);
        let needed = self.window;
        let Some(last) = last else {
            return Err(Error::InsufficientTrace {
                needed,
                available: 0,
                below_floor,
            });
        };
        let run_start = self.diff_norms[..=last]
            .iter()
            .rposition(|&d| d < floor)
            .map_or(0, |i| i + 1);
        let available = last - run_start;
        if available < needed {
            return Err(Error::InsufficientTrace {
                needed,
                available,
                below_floor,
            });
        }
        let log_sum: f64 = (last + 1 - needed..=last)
            .map(|k| (self.diff_norms[k] / self.diff_norms[k - 1]).ln())
            .sum();
        Ok(RateEstimate {
            rate: (log_sum / needed as f64).exp(),
            below_floor,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankResult {
    pub x: RankVector,
    pub iterations: usize,
    pub converged: bool,
    /// `‖Ax − x‖₁` for the returned `x`.
    pub final_residual: f64,
    pub estimated_rate: Option<f64>,
    pub trace: Option<ConvergenceTrace>,
}

/// `‖Ax − x‖₁`.
pub fn residual(op: &GoogleOperator, x: &RankVector) -> Result<f64> {
    let ax = op.apply(x.as_slice())?;
    Ok(ax
        .iter()
        .zip(x.as_slice())
        .map(|(a, b)| (a - b).abs())
        .sum())
}

/// Power iteration from `x0` (uniform when `None`).
///
/// Running out of iterations is not an error; the result reports
/// `converged = false`.
pub fn power_method(
    op: &GoogleOperator,
    x0: Option<&RankVector>,
    cfg: &SolverConfig,
) -> Result<RankResult> {
    cfg.validate()?;
    let n = op.n();
    let mut x = match x0 {
        Some(x0) => {
            if x0.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: x0.len(),
                });
            }
            RankVector::new(x0.as_slice().to_vec())?.into_vec()
        }
        None => RankVector::uniform(n).into_vec(),
    };
    let mut y = vec![0.0; n];
    let mut trace = ConvergenceTrace::new(cfg.window, cfg.rate_floor);
    let mut converged = false;
    let mut iterations = 0;

    while iterations < cfg.max_iters {
        op.apply_into(&x, &mut y)?;
        let sum: f64 = y.iter().sum();
        y.iter_mut().for_each(|v| *v /= sum);
        let diff: f64 = y.iter().zip(&x).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut x, &mut y);
        iterations += 1;
        trace.diff_norms.push(diff);
        if diff <= cfg.tol {
            converged = true;
            break;
        }
    }

    let estimated_rate = match trace.estimate_rate() {
        Ok(est) => Some(est.rate),
        Err(e) => {
            log::debug!("no rate estimate: {e}");
            None
        }
    };
    let x = RankVector::from_vec_unchecked(x);
    let final_residual = residual(op, &x)?;
    Ok(RankResult {
        x,
        iterations,
        converged,
        final_residual,
        estimated_rate,
        trace: cfg.record_trace.then_some(trace),
    })
}
