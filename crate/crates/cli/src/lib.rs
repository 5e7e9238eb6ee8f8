//! The `khseq` command-line tool.
//!
//! [`run`] parses arguments, performs one computation and prints a table;
//! with `--json PATH` it also writes a deterministic JSON report.

mod args;
mod commands;

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::Parser;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use khseq::{ComplexError, DiagramError};

pub use args::{Cli, Command};

/// Version of the JSON report layout.
pub const SCHEMA_VERSION: u64 = 1;

/// Why a command did not succeed.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("computation failed: {0}")]
    Compute(String),
}

impl From<DiagramError> for CliError {
    fn from(e: DiagramError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<ComplexError> for CliError {
    fn from(e: ComplexError) -> Self {
        match e {
            ComplexError::Diagram(d) => CliError::Input(d.to_string()),
            other => CliError::Compute(other.to_string()),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Compute(_) => 1,
        }
    }
}

/// Result of one command before it is written out.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub result: Value,
    /// `false` when a check performed by the command failed.
    pub pass: bool,
}

/// SHA-256 of the input file, in hex.
pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// The full report; object keys come out sorted.
pub fn report(command: &str, path: &Path, bytes: &[u8], options: Value, outcome: &Outcome) -> Value {
    json!({
        "command": command,
        "input": { "path": path.display().to_string(), "sha256": digest(bytes) },
        "options": options,
        "pass": outcome.pass,
        "result": outcome.result,
        "schema": SCHEMA_VERSION,
        "version": format!("khseq {}", env!("CARGO_PKG_VERSION")),
    })
}

/// Canonical JSON text of a report.
pub fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

/// Runs the tool; returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::Input("--threads must be positive".into()));
        }
        pool = pool.num_threads(n);
    }
    let pool = pool.build().map_err(|e| CliError::Compute(e.to_string()))?;
    let path = commands::input_path(&cli.command);
    let bytes = std::fs::read(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let text = std::str::from_utf8(&bytes).map_err(|_| CliError::Input(format!("{} is not UTF-8", path.display())))?;
    let (name, options, outcome) = pool.install(|| commands::dispatch(&cli.command, path, text))?;
    out.write_all(outcome.text.as_bytes()).map_err(|e| CliError::Compute(e.to_string()))?;
    if let Some(json_path) = &cli.json {
        let v = report(name, path, &bytes, options, &outcome);
        std::fs::write(json_path, to_json(&v))
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", json_path.display())))?;
    }
    Ok(if outcome.pass { 0 } else { 1 })
}
