//! Compose the tracking loop by hand from the library's pieces, without
//! the scenario driver: an explicit ring network, hand-placed anchors,
//! and direct calls to propagate / measure / update / consensus.
//!
//!     cargo run --example custom_network

use cbef::consensus::{run_consensus, ConsensusConfig};
use cbef::dynamics::{build_ncv, ProcessNoise, TargetState};
use cbef::estimator::{measurement_update, AgentEstimate, FilterParams};
use cbef::graph::Network;
use cbef::linalg::norm2;
use cbef::rng;
use cbef::sensing::AgentSensor;

fn main() {
    // A 5-agent ring.
    let network = Network::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
        .expect("ring is connected");
    println!("ring network: max degree {}", network.max_degree());
    println!("epsilon bound 1/max degree = {}", network.epsilon_bound());

    let anchors = [
        [1.0, 0.0, 0.2],
        [0.3, 0.9, -0.2],
        [-0.8, 0.6, 0.1],
        [-0.8, -0.6, -0.1],
        [0.3, -0.9, 0.3],
    ];
    let sensors: Vec<AgentSensor> = (0..5)
        .map(|i| AgentSensor::new(i, &anchors, network.neighbors(i), 0.3, None).unwrap())
        .collect();
    for sensor in &sensors {
        println!(
            "agent {}: {} observation rows",
            sensor.id,
            sensor.observation().n_rows()
        );
    }

    let model = build_ncv(0.1).unwrap();
    let noise = ProcessNoise::new(0.2).unwrap();
    let params = FilterParams::new(1.0).unwrap();
    let consensus = ConsensusConfig::new(0.15, 8).unwrap();
    consensus.validate_for(&network).unwrap();

    let seed = 17;
    let mut truth_rng = rng::substream(seed, rng::TRUTH_STREAM);
    let mut agent_rngs: Vec<_> = (0..5).map(|i| rng::agent_substream(seed, i)).collect();

    let mut truth = TargetState::new([6.0, -4.0, 2.0], [0.3, 0.4, -0.1]);
    let mut estimates = vec![AgentEstimate::new([0.0; 6]); 5];

    println!();
    println!("{:>5} {:>12} {:>12}", "k", "err agent 0", "spread");
    for k in 1..=300usize {
        truth = model.propagate(&truth, &noise.sample(&mut truth_rng));

        let updated: Vec<AgentEstimate> = (0..5)
            .map(|i| {
                let y = sensors[i].measure(&truth, &mut agent_rngs[i]);
                measurement_update(&model, &sensors[i], params, &estimates[i], &y)
            })
            .collect();

        let pre: Vec<_> = updated.iter().map(|e| e.x_hat).collect();
        let post = run_consensus(&network, &pre, consensus).unwrap();
        for (estimate, x_hat) in estimates.iter_mut().zip(post) {
            estimate.x_hat = x_hat;
        }

        if k % 50 == 0 || k == 1 {
            let truth_vec = truth.to_vector();
            let diff: Vec<f64> = (0..6)
                .map(|c| estimates[0].x_hat[c] - truth_vec[c])
                .collect();
            let spread = cbef::simulation::max_pairwise_distance(
                &estimates.iter().map(|e| e.x_hat).collect::<Vec<_>>(),
            );
            println!("{:>5} {:>12.4} {:>12.6}", k, norm2(&diff), spread);
        }
    }
}
