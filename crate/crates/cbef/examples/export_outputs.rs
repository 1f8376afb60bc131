//! Serialize a run the way the command-line front end does: CSV metrics,
//! the network document, the resolved config, and the three SVG charts.
//!
//!     cargo run --example export_outputs
//!
//! Outputs land in `target/export_outputs_demo/`.

use cbef::cli::{cmd_plot, write_outputs};
use cbef::{run, ScenarioConfig};

fn main() {
    let config = ScenarioConfig {
        steps: 200,
        ..ScenarioConfig::default()
    };
    let result = run(&config).expect("scenario is valid");

    let out_dir = std::path::PathBuf::from("target/export_outputs_demo");
    let bundle = write_outputs(&result, &out_dir).expect("outputs written");
    println!("data files:");
    for path in [
        &bundle.truth_csv,
        &bundle.estimates_csv,
        &bundle.innovation_csv,
        &bundle.msee_csv,
        &bundle.msee_avg_csv,
        &bundle.network_json,
        &bundle.config_json,
    ] {
        println!("  {}", path.display());
    }

    let charts = cmd_plot(&out_dir, &out_dir).expect("charts rendered");
    println!("charts:");
    for path in charts {
        println!("  {}", path.display());
    }
}
