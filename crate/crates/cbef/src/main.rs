//! Thin command-line front end over the library's `cli` module.

use std::path::PathBuf;
use std::process::ExitCode;

use cbef::cli;

const USAGE: &str = "\
usage:
  cbef simulate --config <path> --out <dir> [--set key=value ...]
  cbef plot --data <dir> --out <dir>
  cbef graph --config <path> [--out <dir>]

exit codes: 0 success, 2 config validation error, 3 I/O error";

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match dispatch(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}\n{USAGE}");
            ExitCode::from(2)
        }
        Err(Failure::Cli(err)) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

enum Failure {
    Usage(String),
    Cli(cli::CliError),
}

impl From<cli::CliError> for Failure {
    fn from(err: cli::CliError) -> Self {
        Failure::Cli(err)
    }
}

fn dispatch(args: &[String]) -> Result<(), Failure> {
    let command = args.first().ok_or_else(|| Failure::Usage("missing subcommand".into()))?;
    let rest = &args[1..];
    match command.as_str() {
        "simulate" => {
            let parsed = parse_flags(rest)?;
            let config = parsed.required("--config")?;
            let out = parsed.required("--out")?;
            let bundle = cli::cmd_simulate(&config, &out, &parsed.overrides)?;
            println!("wrote {}", bundle.truth_csv.parent().unwrap_or(&out).display());
            Ok(())
        }
        "plot" => {
            let parsed = parse_flags(rest)?;
            let data = parsed.required("--data")?;
            let out = parsed.required("--out")?;
            for path in cli::cmd_plot(&data, &out)? {
                println!("wrote {}", path.display());
            }
            Ok(())
        }
        "graph" => {
            let parsed = parse_flags(rest)?;
            let config = parsed.required("--config")?;
            let out = parsed
                .get("--out")
                .unwrap_or_else(|| PathBuf::from("."));
            let report = cli::cmd_graph(&config, &out)?;
            print!("{report}");
            Ok(())
        }
        other => Err(Failure::Usage(format!("unknown subcommand `{other}`"))),
    }
}

struct Flags {
    values: Vec<(String, String)>,
    overrides: Vec<(String, String)>,
}

impl Flags {
    fn get(&self, name: &str) -> Option<PathBuf> {
        self.values
            .iter()
            .find(|(k, _)| k == name)
            .map(|(_, v)| PathBuf::from(v))
    }

    fn required(&self, name: &str) -> Result<PathBuf, Failure> {
        self.get(name)
            .ok_or_else(|| Failure::Usage(format!("missing required flag {name}")))
    }
}

fn parse_flags(args: &[String]) -> Result<Flags, Failure> {
    let mut values = Vec::new();
    let mut overrides = Vec::new();
    let mut iter = args.iter();
    while let Some(flag) = iter.next() {
        match flag.as_str() {
            "--config" | "--out" | "--data" => {
                let value = iter
                    .next()
                    .ok_or_else(|| Failure::Usage(format!("flag {flag} needs a value")))?;
                values.push((flag.clone(), value.clone()));
            }
            "--set" => {
                let pair = iter
                    .next()
                    .ok_or_else(|| Failure::Usage("--set needs key=value".into()))?;
                let (key, value) = pair
                    .split_once('=')
                    .ok_or_else(|| Failure::Usage(format!("--set expects key=value, got `{pair}`")))?;
                overrides.push((key.to_string(), value.to_string()));
            }
            other => return Err(Failure::Usage(format!("unknown flag `{other}`"))),
        }
    }
    Ok(Flags { values, overrides })
}
