//! With zero process and measurement noise and estimates initialized at
//! the true state, every agent tracks the target exactly: the innovation
//! is identically zero, so prediction alone carries the estimate.
//!
//!     cargo run --example noise_free

use cbef::linalg::norm2;
use cbef::{run, ScenarioConfig};

fn main() {
    let mut config = ScenarioConfig::default();
    config.sigma_w = 0.0;
    config.sigma_v = 0.0;
    config.xhat0 = config.x0;
    config.steps = 1000;

    let result = run(&config).expect("noise-free scenario is valid");

    let mut worst = 0.0f64;
    for (truth, step) in result.truth.iter().zip(&result.estimates) {
        for estimate in step {
            let diff: Vec<f64> = (0..6).map(|c| estimate[c] - truth[c]).collect();
            worst = worst.max(norm2(&diff));
        }
    }
    let worst_innovation = result
        .metrics
        .innovation()
        .iter()
        .flatten()
        .fold(0.0f64, |m, &v| m.max(v));

    println!("steps: {}", config.steps);
    println!("worst estimate error across all agents and steps: {worst:e}");
    println!("worst innovation magnitude: {worst_innovation:e}");
    println!("final e_avg: {:e}", result.metrics.msee_avg().last().unwrap());
}
