//! Command-line front end for `schreier-core`: graph files, report
//! artifacts and config-driven experiments.
//!
//! Exit codes: 0 when every asserted property holds, 2 when one fails (the
//! witnesses are still written), 1 for usage, parse and guard errors.

pub mod commands;
pub mod graph_file;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::Value;

pub use commands::Command;
pub use graph_file::{GraphFile, MultigraphFile};
pub use report::Report;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{origin}:{line}: {reason}")]
    Parse {
        origin: String,
        line: usize,
        reason: String,
    },
    #[error("invalid graph: {0}")]
    Validation(schreier_core::Error),
    #[error(transparent)]
    Core(#[from] schreier_core::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Parser)]
#[command(name = "schreier", version, about = "Schreier graphs, covers and expansion audits")]
pub struct Cli {
    /// Directory for the CSV and JSON artifacts [default: .]
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: TopLevel,
}

#[derive(Debug, Subcommand)]
pub enum TopLevel {
    #[command(flatten)]
    Command(Command),
    /// Runs the experiment described by a JSON config file.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
}

/// `{"command": name, "out"?: dir, ...arguments of that command}`.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub command: Command,
    pub out: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<ExperimentConfig, CliError> {
        let value: Value = serde_json::from_str(text).map_err(|e| CliError::Parse {
            origin: "config".into(),
            line: e.line(),
            reason: e.to_string(),
        })?;
        let Value::Object(mut body) = value else {
            return Err(CliError::Usage("config: expected a JSON object".into()));
        };
        let name = match body.remove("command") {
            Some(Value::String(s)) => s,
            _ => return Err(CliError::Usage("config: missing string field \"command\"".into())),
        };
        let out = match body.remove("out") {
            None => None,
            Some(Value::String(s)) => Some(PathBuf::from(s)),
            Some(_) => return Err(CliError::Usage("config: \"out\" must be a string".into())),
        };
        Ok(ExperimentConfig {
            command: Command::from_config(&name, Value::Object(body))?,
            out,
        })
    }

    pub fn read(path: &Path) -> Result<ExperimentConfig, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        ExperimentConfig::parse(&text)
    }
}

/// Runs a parsed command line, writing artifacts and the CSV to `stdout`.
pub fn execute(cli: Cli, stdout: &mut impl Write) -> Result<Report, CliError> {
    let (command, config_out) = match cli.command {
        TopLevel::Command(c) => (c, None),
        TopLevel::Run { config } => {
            let c = ExperimentConfig::read(&config)?;
            (c.command, c.out)
        }
    };
    let out = cli.out.or(config_out).unwrap_or_else(|| PathBuf::from("."));
    let report = command.run()?;
    report.write(&out)?;
    stdout
        .write_all(report.csv().as_bytes())
        .map_err(|source| CliError::Io {
            path: "stdout".into(),
            source,
        })?;
    Ok(report)
}

/// Full entry point; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli, &mut std::io::stdout().lock()) {
        Ok(report) if report.pass => 0,
        Ok(report) => {
            eprintln!("{}: property check failed; see {}.json", report.name, report.name);
            2
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
