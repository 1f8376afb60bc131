//! Synchronous neighbor averaging of the agents' estimates.
//!
//! One round moves every agent toward its neighbors by `epsilon` times the
//! summed disagreement, all agents reading the previous round's values
//! (Jacobi-style; no in-place sequential reads). Per state component the
//! round is the linear map `I - epsilon * Laplacian`, and the dense matrix
//! power of that map is exposed as an independent oracle for tests.

use thiserror::Error;

use crate::graph::Network;
use crate::linalg::Vec6;

#[derive(Debug, Error)]
pub enum ConsensusError {
    #[error("epsilon {epsilon} outside (0, {bound}] (bound is 1/max degree)")]
    EpsilonOutOfRange { epsilon: f64, bound: f64 },
    #[error("consensus rounds must be at least 1")]
    ZeroRounds,
    #[error("expected {expected} estimates, got {got}")]
    WrongEstimateCount { expected: usize, got: usize },
}

/// Step size and round count for one sampling step's averaging.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConsensusConfig {
    pub epsilon: f64,
    pub rounds: usize,
}

impl ConsensusConfig {
    pub fn new(epsilon: f64, rounds: usize) -> Result<Self, ConsensusError> {
        if rounds == 0 {
            return Err(ConsensusError::ZeroRounds);
        }
        if !(epsilon > 0.0) {
            return Err(ConsensusError::EpsilonOutOfRange {
                epsilon,
                bound: f64::INFINITY,
            });
        }
        Ok(ConsensusConfig { epsilon, rounds })
    }

    /// Checks the step size against the network's `1 / max_degree` bound.
    pub fn validate_for(&self, net: &Network) -> Result<(), ConsensusError> {
        check_epsilon(net, self.epsilon)
    }
}

fn check_epsilon(net: &Network, epsilon: f64) -> Result<(), ConsensusError> {
    let bound = net.epsilon_bound();
    if !(epsilon > 0.0) || epsilon > bound {
        return Err(ConsensusError::EpsilonOutOfRange { epsilon, bound });
    }
    Ok(())
}

/// One synchronous round: every agent is updated simultaneously from the
/// previous round's snapshot.
pub fn consensus_round(
    net: &Network,
    estimates: &[Vec6],
    epsilon: f64,
) -> Result<Vec<Vec6>, ConsensusError> {
    if estimates.len() != net.n() {
        return Err(ConsensusError::WrongEstimateCount {
            expected: net.n(),
            got: estimates.len(),
        });
    }
    check_epsilon(net, epsilon)?;
    let mut next = Vec::with_capacity(net.n());
    for i in 0..net.n() {
        let mut disagreement = [0.0; 6];
        for &j in net.neighbors(i) {
            for c in 0..6 {
                disagreement[c] += estimates[i][c] - estimates[j][c];
            }
        }
        let mut out = estimates[i];
        for c in 0..6 {
            out[c] -= epsilon * disagreement[c];
        }
        next.push(out);
    }
    Ok(next)
}

/// Applies `consensus_round` the configured number of times.
pub fn run_consensus(
    net: &Network,
    estimates: &[Vec6],
    cfg: ConsensusConfig,
) -> Result<Vec<Vec6>, ConsensusError> {
    if cfg.rounds == 0 {
        return Err(ConsensusError::ZeroRounds);
    }
    let mut current = estimates.to_vec();
    for _ in 0..cfg.rounds {
        current = consensus_round(net, &current, cfg.epsilon)?;
    }
    Ok(current)
}

/// Test oracle: `(I - epsilon * Laplacian)^rounds` as a dense matrix built
/// by naive repeated multiplication. `rounds = 0` yields the identity.
pub fn consensus_matrix_oracle(net: &Network, epsilon: f64, rounds: usize) -> Vec<Vec<f64>> {
    let n = net.n();
    let mut mixing = vec![vec![0.0; n]; n];
    for i in 0..n {
        mixing[i][i] = 1.0 - epsilon * net.degree(i) as f64;
        for &j in net.neighbors(i) {
            mixing[i][j] = epsilon;
        }
    }
    let mut power: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    for _ in 0..rounds {
        let mut next = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0.0;
                for k in 0..n {
                    acc += power[i][k] * mixing[k][j];
                }
                next[i][j] = acc;
            }
        }
        power = next;
    }
    power
}
