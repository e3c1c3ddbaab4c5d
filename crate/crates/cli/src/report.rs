use std::fmt;
use std::fs::File;
use std::io::Write;

use csl_core::hardy::NumericReport;
use csl_core::Error;
use serde_json::{json, Value};

use crate::{Cli, Format};

/// Failures that end a run without a report, split by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Input outside the supported domain (exit 2).
    Unsupported(String),
    /// Anything else (exit 3).
    Internal(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Unsupported(m) => write!(f, "unsupported input: {m}"),
            Self::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::UnsupportedHypercomplexDim(..)
            | Error::MaxDimExceeded { .. }
            | Error::UnsupportedDimension { .. }
            | Error::ObstructedDimension { .. }
            | Error::WrongResidueClass(_)
            | Error::InvalidArgument(_)
            | Error::Parse(_) => Self::Unsupported(e.to_string()),
            _ => Self::Internal(e.to_string()),
        }
    }
}

/// A finished report: the JSON body, its verdict, and the numeric rows for csv output.
pub struct Output {
    pub pass: bool,
    pub body: Value,
    pub rows: Option<Vec<NumericReport>>,
}

impl Output {
    /// One body per dimension: a single body is reported as is, several go under `results`.
    pub fn collect(items: Vec<(bool, Value)>) -> Self {
        let pass = items.iter().all(|(p, _)| *p);
        let mut bodies: Vec<Value> = items.into_iter().map(|(_, v)| v).collect();
        let body = if bodies.len() == 1 {
            bodies.pop().expect("one body")
        } else {
            json!({ "results": bodies })
        };
        Self { pass, body, rows: None }
    }

    /// Adds the run metadata and writes the report. Returns the overall verdict.
    pub fn emit(self, cli: &Cli, command_line: &str) -> Result<bool, CliError> {
        let text = match cli.format {
            Format::Json => {
                let mut body = match self.body {
                    Value::Object(map) => map,
                    other => {
                        let mut map = serde_json::Map::new();
                        map.insert("result".into(), other);
                        map
                    }
                };
                body.insert("command".into(), command_line.into());
                body.insert("seed".into(), cli.seed.into());
                body.insert("version".into(), csl_core::VERSION.into());
                body.insert("pass".into(), self.pass.into());
                let mut text = serde_json::to_string_pretty(&body).map_err(|e| CliError::Internal(e.to_string()))?;
                text.push('\n');
                text
            }
            Format::Csv => {
                let rows = self
                    .rows
                    .ok_or_else(|| CliError::Unsupported("--format csv applies to the hardy suites only".into()))?;
                let mut w = csv::Writer::from_writer(Vec::new());
                for row in &rows {
                    w.serialize(row).map_err(|e| CliError::Internal(e.to_string()))?;
                }
                let bytes = w.into_inner().map_err(|e| CliError::Internal(e.to_string()))?;
                String::from_utf8(bytes).map_err(|e| CliError::Internal(e.to_string()))?
            }
        };
        match &cli.out {
            Some(path) => File::create(path)
                .and_then(|mut f| f.write_all(text.as_bytes()))
                .map_err(|e| CliError::Unsupported(format!("cannot write {}: {e}", path.display())))?,
            None => print!("{text}"),
        }
        Ok(self.pass)
    }
}
