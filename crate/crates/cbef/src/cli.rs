//! Command fronts behind the binary: run a scenario and serialize its
//! outputs, render charts from previously written data, and inspect a
//! config's communication network.
//!
//! All floating-point output uses Rust's shortest round-trip decimal
//! formatting, so parsing a CSV back recovers the exact in-memory values.
//! Every CSV has a header row and LF line endings.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::chart::{line_chart, Series};
use crate::config::{ConfigError, ScenarioConfig};
use crate::graph::Network;
use crate::simulation::{self, SimulationError, SimulationResult};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Simulation(#[from] SimulationError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {reason}")]
    MalformedData { path: PathBuf, reason: String },
}

impl CliError {
    /// Process exit code: 2 for configuration problems, 3 for I/O and data
    /// problems.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Simulation(_) => 2,
            CliError::Io { .. } | CliError::MalformedData { .. } => 3,
        }
    }
}

fn io_error(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Paths of the files one `simulate` run emits.
#[derive(Debug, Clone)]
pub struct OutputBundle {
    pub truth_csv: PathBuf,
    pub estimates_csv: PathBuf,
    pub innovation_csv: PathBuf,
    pub msee_csv: PathBuf,
    pub msee_avg_csv: PathBuf,
    pub network_json: PathBuf,
    pub config_json: PathBuf,
    pub charts: Vec<PathBuf>,
}

/// Reads and parses a scenario config file.
pub fn load_config(path: &Path) -> Result<ScenarioConfig, CliError> {
    let text = fs::read_to_string(path).map_err(io_error(path))?;
    Ok(ScenarioConfig::from_json(&text)?)
}

/// Runs a scenario and writes all CSV outputs, the network document, and
/// the fully resolved config (defaults plus overrides applied).
pub fn cmd_simulate(
    config_path: &Path,
    out_dir: &Path,
    overrides: &[(String, String)],
) -> Result<OutputBundle, CliError> {
    let mut config = load_config(config_path)?;
    for (key, value) in overrides {
        config.apply_override(key, value)?;
    }
    let result = simulation::run(&config)?;
    write_outputs(&result, out_dir)
}

/// Serializes a finished run into `out_dir`.
pub fn write_outputs(result: &SimulationResult, out_dir: &Path) -> Result<OutputBundle, CliError> {
    fs::create_dir_all(out_dir).map_err(io_error(out_dir))?;
    let n = result.metrics.agent_count();

    let mut truth = String::from("k,px,py,pz,vx,vy,vz\n");
    for (k, state) in result.truth.iter().enumerate() {
        truth.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            k + 1,
            state[0],
            state[1],
            state[2],
            state[3],
            state[4],
            state[5]
        ));
    }

    let mut estimates = String::from("k,agent,px,py,pz,vx,vy,vz\n");
    for (k, step) in result.estimates.iter().enumerate() {
        for (agent, e) in step.iter().enumerate() {
            estimates.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                k + 1,
                agent,
                e[0],
                e[1],
                e[2],
                e[3],
                e[4],
                e[5]
            ));
        }
    }

    let innovation = metric_csv(
        &(0..n).map(|i| format!("m_{i}")).collect::<Vec<_>>(),
        result.metrics.innovation(),
    );
    let msee = metric_csv(
        &(0..n).map(|i| format!("e_{i}")).collect::<Vec<_>>(),
        result.metrics.msee(),
    );
    let mut msee_avg = String::from("k,e_avg\n");
    for (k, value) in result.metrics.msee_avg().iter().enumerate() {
        msee_avg.push_str(&format!("{},{}\n", k + 1, value));
    }

    let bundle = OutputBundle {
        truth_csv: out_dir.join("truth.csv"),
        estimates_csv: out_dir.join("estimates.csv"),
        innovation_csv: out_dir.join("innovation.csv"),
        msee_csv: out_dir.join("msee.csv"),
        msee_avg_csv: out_dir.join("msee_avg.csv"),
        network_json: out_dir.join("network.json"),
        config_json: out_dir.join("config_resolved.json"),
        charts: Vec::new(),
    };
    write_file(&bundle.truth_csv, &truth)?;
    write_file(&bundle.estimates_csv, &estimates)?;
    write_file(&bundle.innovation_csv, &innovation)?;
    write_file(&bundle.msee_csv, &msee)?;
    write_file(&bundle.msee_avg_csv, &msee_avg)?;
    write_file(&bundle.network_json, &result.network.to_json())?;
    write_file(&bundle.config_json, &result.config_echo.to_json())?;
    Ok(bundle)
}

fn metric_csv(columns: &[String], rows: &[Vec<f64>]) -> String {
    let mut out = String::from("k");
    for c in columns {
        out.push(',');
        out.push_str(c);
    }
    out.push('\n');
    for (k, row) in rows.iter().enumerate() {
        out.push_str(&format!("{}", k + 1));
        for value in row {
            out.push_str(&format!(",{value}"));
        }
        out.push('\n');
    }
    out
}

fn write_file(path: &Path, content: &str) -> Result<(), CliError> {
    let mut file = fs::File::create(path).map_err(io_error(path))?;
    file.write_all(content.as_bytes()).map_err(io_error(path))
}

/// Renders the three result charts from a data directory produced by
/// `cmd_simulate`: innovation per agent, MSEE per agent, average MSEE.
pub fn cmd_plot(data_dir: &Path, out_dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let innovation = read_metric_csv(&data_dir.join("innovation.csv"))?;
    let msee = read_metric_csv(&data_dir.join("msee.csv"))?;
    let msee_avg = read_metric_csv(&data_dir.join("msee_avg.csv"))?;

    fs::create_dir_all(out_dir).map_err(io_error(out_dir))?;
    let charts = [
        (
            "innovation.svg",
            line_chart(
                "Innovation magnitude per agent",
                "k",
                "m",
                &to_series(&innovation),
            ),
        ),
        (
            "msee.svg",
            line_chart("Running MSEE per agent", "k", "e_i", &to_series(&msee)),
        ),
        (
            "msee_avg.svg",
            line_chart("Network-average MSEE", "k", "e_avg", &to_series(&msee_avg)),
        ),
    ];

    let mut paths = Vec::new();
    for (name, svg) in charts {
        let path = out_dir.join(name);
        write_file(&path, &svg)?;
        paths.push(path);
    }
    Ok(paths)
}

struct MetricTable {
    columns: Vec<String>,
    rows: Vec<(f64, Vec<f64>)>,
}

fn read_metric_csv(path: &Path) -> Result<MetricTable, CliError> {
    let malformed = |reason: String| CliError::MalformedData {
        path: path.to_path_buf(),
        reason,
    };
    let text = fs::read_to_string(path).map_err(io_error(path))?;
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| malformed("empty file".into()))?;
    let mut fields = header.split(',');
    if fields.next() != Some("k") {
        return Err(malformed("first column must be k".into()));
    }
    let columns: Vec<String> = fields.map(str::to_string).collect();
    if columns.is_empty() {
        return Err(malformed("no data columns".into()));
    }
    let mut rows = Vec::new();
    for (idx, line) in lines.enumerate() {
        let mut parts = line.split(',');
        let k: f64 = parts
            .next()
            .and_then(|p| p.parse().ok())
            .ok_or_else(|| malformed(format!("bad step index on data row {}", idx + 1)))?;
        let values: Vec<f64> = parts
            .map(|p| p.parse().ok())
            .collect::<Option<_>>()
            .ok_or_else(|| malformed(format!("bad value on data row {}", idx + 1)))?;
        if values.len() != columns.len() {
            return Err(malformed(format!(
                "row {} has {} values for {} columns",
                idx + 1,
                values.len(),
                columns.len()
            )));
        }
        rows.push((k, values));
    }
    if rows.is_empty() {
        return Err(malformed("no data rows".into()));
    }
    Ok(MetricTable { columns, rows })
}

fn to_series(table: &MetricTable) -> Vec<Series> {
    table
        .columns
        .iter()
        .enumerate()
        .map(|(c, label)| Series {
            label: label.clone(),
            points: table.rows.iter().map(|(k, row)| (*k, row[c])).collect(),
        })
        .collect()
}

/// Builds the config's network, writes `network.json` into `out_dir`, and
/// returns a plain-text report.
pub fn cmd_graph(config_path: &Path, out_dir: &Path) -> Result<String, CliError> {
    let config = load_config(config_path)?;
    config.validate()?;
    let mut network =
        Network::generate_erdos_renyi(config.n, config.er_probability, config.seed)
            .map_err(SimulationError::from)?;
    network
        .reweight(config.epsilon)
        .map_err(SimulationError::from)?;

    fs::create_dir_all(out_dir).map_err(io_error(out_dir))?;
    write_file(&out_dir.join("network.json"), &network.to_json())?;

    let edges = network.edges();
    let mut report = String::new();
    report.push_str(&format!("agents: {}\n", network.n()));
    report.push_str(&format!(
        "edges ({}): {}\n",
        edges.len(),
        edges
            .iter()
            .map(|(i, j)| format!("({i},{j})"))
            .collect::<Vec<_>>()
            .join(" ")
    ));
    for i in 0..network.n() {
        report.push_str(&format!(
            "agent {i}: degree {}, neighbors {:?}\n",
            network.degree(i),
            network.neighbors(i)
        ));
    }
    report.push_str(&format!("max degree: {}\n", network.max_degree()));
    report.push_str(&format!("epsilon bound (1/max degree): {}\n", network.epsilon_bound()));
    report.push_str("connected: yes\n");
    Ok(report)
}
