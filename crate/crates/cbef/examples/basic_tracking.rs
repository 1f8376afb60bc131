//! Run the default scenario and watch the network's estimate converge.
//!
//! Six agents on a random connected graph track a target that starts 17
//! length units away from their anchors. The running average MSEE drops
//! as the initial transient decays into the noise floor.
//!
//!     cargo run --example basic_tracking

use cbef::{run, ScenarioConfig};

fn main() {
    let config = ScenarioConfig::default();
    let result = run(&config).expect("default scenario is valid");

    println!(
        "{} agents, {} edges, {} steps, xi={}, L={}",
        config.n,
        result.network.edges().len(),
        config.steps,
        config.xi,
        config.rounds
    );
    println!();
    println!("{:>5} {:>12} {:>14}", "k", "e_avg", "spread");
    for k in [1usize, 5, 10, 25, 50, 100, 200, 350, 500] {
        println!(
            "{:>5} {:>12.4} {:>14.6}",
            k,
            result.metrics.msee_avg()[k - 1],
            result.spread_post[k - 1]
        );
    }

    let truth = result.truth.last().unwrap();
    let estimate = result.estimates.last().unwrap()[0];
    println!();
    println!(
        "final truth    position ({:7.3}, {:7.3}, {:7.3})",
        truth[0], truth[1], truth[2]
    );
    println!(
        "agent 0 thinks position ({:7.3}, {:7.3}, {:7.3})",
        estimate[0], estimate[1], estimate[2]
    );
}
