//! Tracking-quality metrics: per-agent innovation magnitude, per-agent
//! running mean squared estimation error, and its network average.
//!
//! The running mean is maintained incrementally from per-agent squared-
//! error sums; history is never rescanned.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::Vec6;

#[derive(Debug, Error)]
pub enum MetricsError {
    #[error("steps must be recorded in order: expected k={expected}, got k={got}")]
    OutOfOrderStep { expected: usize, got: usize },
    #[error("expected {expected} per-agent values, got {got}")]
    WrongAgentCount { expected: usize, got: usize },
}

/// Which components enter the squared estimation error.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MseeMode {
    /// Squared Euclidean norm over all six components (position and
    /// velocity in mixed units).
    #[default]
    FullState,
    /// Squared Euclidean norm over the position components only.
    PositionOnly,
}

/// Append-only per-step log, one row per sampling step starting at k = 1.
#[derive(Debug, Clone)]
pub struct MetricsLog {
    n: usize,
    mode: MseeMode,
    innovation: Vec<Vec<f64>>,
    msee: Vec<Vec<f64>>,
    msee_avg: Vec<f64>,
    error_sq_sums: Vec<f64>,
}

impl MetricsLog {
    pub fn new(n: usize, mode: MseeMode) -> Self {
        MetricsLog {
            n,
            mode,
            innovation: Vec::new(),
            msee: Vec::new(),
            msee_avg: Vec::new(),
            error_sq_sums: vec![0.0; n],
        }
    }

    /// Records step `k` (consecutive from 1): the agents' innovation
    /// magnitudes, their post-consensus estimates, and the true state.
    pub fn record_step(
        &mut self,
        k: usize,
        innovation_mags: &[f64],
        estimates: &[Vec6],
        truth: &Vec6,
    ) -> Result<(), MetricsError> {
        let expected = self.msee.len() + 1;
        if k != expected {
            return Err(MetricsError::OutOfOrderStep { expected, got: k });
        }
        if innovation_mags.len() != self.n {
            return Err(MetricsError::WrongAgentCount {
                expected: self.n,
                got: innovation_mags.len(),
            });
        }
        if estimates.len() != self.n {
            return Err(MetricsError::WrongAgentCount {
                expected: self.n,
                got: estimates.len(),
            });
        }
        debug_assert!(innovation_mags.iter().all(|&m| m >= 0.0));

        let mut msee_row = Vec::with_capacity(self.n);
        for (i, estimate) in estimates.iter().enumerate() {
            self.error_sq_sums[i] += self.squared_error(estimate, truth);
            msee_row.push(self.error_sq_sums[i] / k as f64);
        }
        let avg = msee_row.iter().sum::<f64>() / self.n as f64;

        self.innovation.push(innovation_mags.to_vec());
        self.msee.push(msee_row);
        self.msee_avg.push(avg);
        Ok(())
    }

    fn squared_error(&self, estimate: &Vec6, truth: &Vec6) -> f64 {
        let components = match self.mode {
            MseeMode::FullState => 0..6,
            MseeMode::PositionOnly => 0..3,
        };
        components
            .map(|c| {
                let d = estimate[c] - truth[c];
                d * d
            })
            .sum()
    }

    pub fn agent_count(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> MseeMode {
        self.mode
    }

    /// Steps recorded so far.
    pub fn steps(&self) -> usize {
        self.msee.len()
    }

    /// Innovation magnitudes, `steps x n`.
    pub fn innovation(&self) -> &[Vec<f64>] {
        &self.innovation
    }

    /// Running mean squared estimation error, `steps x n`.
    pub fn msee(&self) -> &[Vec<f64>] {
        &self.msee
    }

    /// Network-average running error, one entry per step.
    pub fn msee_avg(&self) -> &[f64] {
        &self.msee_avg
    }
}
