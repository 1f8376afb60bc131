//! How the number of consensus rounds per sampling step shapes agreement.
//!
//! All runs share one seed, and the consensus rounds draw no randomness,
//! so every run sees the same target and the same measurements; only the
//! amount of mixing differs. More rounds pull the agents closer together
//! each step and speed up convergence of the average error.
//!
//!     cargo run --example communication_rounds

use cbef::{run, ScenarioConfig};

fn main() {
    let rounds_options = [1usize, 2, 5, 10];
    let results: Vec<_> = rounds_options
        .iter()
        .map(|&rounds| {
            let config = ScenarioConfig {
                rounds,
                ..ScenarioConfig::default()
            };
            run(&config).expect("scenario is valid")
        })
        .collect();

    println!("post-consensus spread (max pairwise estimate distance):");
    print!("{:>6}", "k");
    for rounds in rounds_options {
        print!(" {:>12}", format!("L={rounds}"));
    }
    println!();
    for k in [1usize, 10, 50, 100, 250, 500] {
        print!("{k:>6}");
        for result in &results {
            print!(" {:>12.6}", result.spread_post[k - 1]);
        }
        println!();
    }

    println!();
    println!("final average MSEE:");
    for (rounds, result) in rounds_options.iter().zip(&results) {
        println!(
            "  L={rounds:<3} e_avg({}) = {:.4}",
            result.metrics.msee_avg().len(),
            result.metrics.msee_avg().last().unwrap()
        );
    }
}
