//! Per-agent observation of the target.
//!
//! Each agent is a static anchor. Its observation matrix has one row per
//! neighbor: the first three columns hold the neighbor's position offset
//! relative to the agent, the velocity columns are identically zero, so
//! measurements carry no direct velocity information. Anchors never move,
//! so the matrix is computed once at setup and cached.

use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dynamics::TargetState;
use crate::linalg::{MatRx6, Vec3};

#[derive(Debug, Error)]
pub enum SensingError {
    #[error("agent {agent} has no neighbors; an isolated agent cannot measure")]
    EmptyNeighborSet { agent: usize },
    #[error("agent {agent} lists invalid neighbor {neighbor} (anchor count {count})")]
    InvalidNeighbor {
        agent: usize,
        neighbor: usize,
        count: usize,
    },
    #[error("measurement noise std must be nonnegative, got {0}")]
    NegativeSigma(f64),
}

/// Additive outlier injection: each measurement component is independently
/// offset by `±magnitude` with the given probability at every step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FaultSpec {
    pub probability: f64,
    pub magnitude: f64,
}

/// Builds an agent's observation matrix from anchor geometry: row `r` is
/// `(p_j - p_i, 0, 0, 0)` for the `r`-th neighbor `j` in the given order.
pub fn observation_matrix(
    anchors: &[Vec3],
    agent: usize,
    neighbors: &[usize],
) -> Result<MatRx6, SensingError> {
    if neighbors.is_empty() {
        return Err(SensingError::EmptyNeighborSet { agent });
    }
    let own = anchors[agent];
    let mut rows = Vec::with_capacity(neighbors.len());
    for &j in neighbors {
        if j >= anchors.len() || j == agent {
            return Err(SensingError::InvalidNeighbor {
                agent,
                neighbor: j,
                count: anchors.len(),
            });
        }
        let other = anchors[j];
        rows.push([
            other[0] - own[0],
            other[1] - own[1],
            other[2] - own[2],
            0.0,
            0.0,
            0.0,
        ]);
    }
    Ok(MatRx6::from_rows(rows))
}

/// A static agent with its cached observation matrix and noise model.
#[derive(Debug, Clone)]
pub struct AgentSensor {
    pub id: usize,
    pub anchor: Vec3,
    observation: MatRx6,
    pub sigma_v: f64,
    pub fault: Option<FaultSpec>,
}

impl AgentSensor {
    pub fn new(
        id: usize,
        anchors: &[Vec3],
        neighbors: &[usize],
        sigma_v: f64,
        fault: Option<FaultSpec>,
    ) -> Result<Self, SensingError> {
        if !(sigma_v >= 0.0) {
            return Err(SensingError::NegativeSigma(sigma_v));
        }
        Ok(AgentSensor {
            id,
            anchor: anchors[id],
            observation: observation_matrix(anchors, id, neighbors)?,
            sigma_v,
            fault,
        })
    }

    pub fn observation(&self) -> &MatRx6 {
        &self.observation
    }

    /// One measurement `y = H x + v`, plus optional outlier offsets. Draw
    /// order per component is fixed: Gaussian noise, fault occurrence,
    /// then fault sign.
    pub fn measure(&self, truth: &TargetState, rng: &mut impl Rng) -> Vec<f64> {
        let x = truth.to_vector();
        let mut y = self.observation.matvec(&x);
        let noise = Normal::new(0.0, self.sigma_v).expect("sigma validated nonnegative");
        for value in &mut y {
            *value += noise.sample(rng);
            if let Some(fault) = self.fault {
                if rng.gen::<f64>() < fault.probability {
                    let sign = if rng.gen::<bool>() { 1.0 } else { -1.0 };
                    *value += sign * fault.magnitude;
                }
            }
        }
        y
    }
}
