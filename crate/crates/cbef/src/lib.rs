//! Decentralized tracking of a moving target by a network of static
//! agents.
//!
//! A connected, undirected network of anchor agents observes a target that
//! follows a constant-velocity motion model with acceleration noise. Each
//! sampling step every agent takes a linear measurement built from its
//! neighbors' relative positions, corrects its state estimate through a
//! saturation-gated innovation filter (the correction's innovation
//! contribution is capped at the confidence parameter `xi`, which blunts
//! outliers and faulty data), and then the agents average their estimates
//! over `L` synchronous consensus rounds.
//!
//! The crate is organized around that pipeline:
//!
//! - [`graph`]: network generation (Erdős–Rényi) and validation
//! - [`dynamics`]: the target motion model
//! - [`sensing`]: observation matrices and noisy measurements
//! - [`estimator`]: the saturation-gated measurement update
//! - [`consensus`]: neighbor averaging and its dense-matrix oracle
//! - [`metrics`]: innovation magnitudes and running MSEE
//! - [`simulation`]: the end-to-end deterministic driver
//! - [`cli`], [`chart`]: file outputs and SVG charts for the binary
//!
//! Runs are deterministic: a master seed fans out into independent
//! substreams (see [`rng`]), so identical configs produce bit-identical
//! results.
//!
//! The `examples/` directory shows each capability in isolation; start
//! with `basic_tracking`.

// `!(x > 0.0)`-style guards double as NaN rejection; the fixed-dimension
// kernels index rows and columns directly.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::needless_range_loop)]

pub mod chart;
pub mod cli;
pub mod config;
pub mod consensus;
pub mod dynamics;
pub mod estimator;
pub mod graph;
pub mod linalg;
pub mod metrics;
pub mod rng;
pub mod sensing;
pub mod simulation;

pub use config::{AnchorSpec, ConfigError, ScenarioConfig};
pub use consensus::{consensus_matrix_oracle, consensus_round, run_consensus, ConsensusConfig};
pub use dynamics::{build_ncv, NcvModel, ProcessNoise, TargetState};
pub use estimator::{measurement_update, saturation_gain, AgentEstimate, FilterParams};
pub use graph::Network;
pub use metrics::{MetricsLog, MseeMode};
pub use sensing::{observation_matrix, AgentSensor, FaultSpec};
pub use simulation::{run, SimulationResult};
