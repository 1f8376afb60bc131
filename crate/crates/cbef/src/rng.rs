//! Seed discipline: one master seed fans out into independent substreams.
//!
//! Graph generation, anchor placement, target process noise, and each
//! agent's measurement noise all draw from their own ChaCha stream, so
//! changing one consumer (or a parameter like the number of consensus
//! rounds, which draws nothing) never perturbs the others' realizations.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Stream id for Erdős–Rényi edge draws.
pub const GRAPH_STREAM: u64 = 0;
/// Stream id for random anchor placement.
pub const ANCHOR_STREAM: u64 = 1;
/// Stream id for target acceleration noise.
pub const TRUTH_STREAM: u64 = 2;
/// Agent `i` measures from stream `AGENT_STREAM_BASE + i`.
pub const AGENT_STREAM_BASE: u64 = 16;

/// Deterministic generator for one substream of a master seed.
pub fn substream(master_seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(stream);
    rng
}

/// Measurement-noise generator for one agent.
pub fn agent_substream(master_seed: u64, agent: usize) -> ChaCha8Rng {
    substream(master_seed, AGENT_STREAM_BASE + agent as u64)
}
