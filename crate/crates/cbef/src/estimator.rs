//! Saturation-gated innovation filter.
//!
//! Each agent predicts through the motion model and corrects along
//! `Hᵀ · innovation`, scaled by a single gain that is unity while the
//! innovation norm stays within the confidence radius `xi` and shrinks as
//! `xi / ‖innovation‖` beyond it. The correction magnitude contributed by
//! the innovation is therefore capped at `xi`, which is what limits the
//! damage from outliers and faulty measurements. There is no covariance:
//! the transpose is applied raw, so anchor geometry scales the correction.

use thiserror::Error;

use crate::dynamics::NcvModel;
use crate::linalg::{norm2, Vec6};
use crate::sensing::AgentSensor;

#[derive(Debug, Error)]
pub enum EstimatorError {
    #[error("observation confidence xi must be positive, got {0}")]
    NonPositiveXi(f64),
}

/// Filter tuning: the observation confidence parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterParams {
    pub xi: f64,
}

impl FilterParams {
    pub fn new(xi: f64) -> Result<Self, EstimatorError> {
        if !(xi > 0.0) {
            return Err(EstimatorError::NonPositiveXi(xi));
        }
        Ok(FilterParams { xi })
    }
}

/// One agent's running estimate plus the innovation magnitude recorded at
/// its last measurement update.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AgentEstimate {
    pub x_hat: Vec6,
    pub innovation_mag: f64,
}

impl AgentEstimate {
    pub fn new(x_hat: Vec6) -> Self {
        AgentEstimate {
            x_hat,
            innovation_mag: 0.0,
        }
    }
}

/// Gain for a given innovation magnitude: 1 inside the confidence radius,
/// `xi / mag` outside, so `gain * mag <= xi` always.
pub fn gain_for_magnitude(mag: f64, xi: f64) -> f64 {
    if mag <= xi {
        1.0
    } else {
        xi / mag
    }
}

/// Saturation gain for an innovation vector under the Euclidean norm. A
/// zero innovation falls in the unity branch.
pub fn saturation_gain(innovation: &[f64], xi: f64) -> f64 {
    gain_for_magnitude(norm2(innovation), xi)
}

/// One measurement update: predict with the transition matrix, then
/// correct by `gain * Hᵀ (y - H A x̂)`. The velocity rows of `Hᵀ` are zero,
/// so the correction never touches the velocity components directly.
pub fn measurement_update(
    model: &NcvModel,
    sensor: &AgentSensor,
    params: FilterParams,
    prev: &AgentEstimate,
    y: &[f64],
) -> AgentEstimate {
    let h = sensor.observation();
    assert_eq!(
        y.len(),
        h.n_rows(),
        "measurement length {} does not match {} observation rows",
        y.len(),
        h.n_rows()
    );
    let x_pred = model.transition().matvec(&prev.x_hat);
    let predicted = h.matvec(&x_pred);
    let innovation: Vec<f64> = y.iter().zip(&predicted).map(|(m, p)| m - p).collect();
    let mag = norm2(&innovation);
    let gain = gain_for_magnitude(mag, params.xi);
    let correction = h.transpose_apply(&innovation);
    let mut x_hat = x_pred;
    for c in 0..6 {
        x_hat[c] += gain * correction[c];
    }
    AgentEstimate {
        x_hat,
        innovation_mag: mag,
    }
}
