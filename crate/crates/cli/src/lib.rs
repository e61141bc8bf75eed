//! The `tm` command-line tool.
//!
//! Every command produces a [`Report`]. Text output is the default; `--json`
//! prints the report itself and `--csv` prints occurrence lists.

use std::ffi::OsString;
use std::fmt;
use std::time::Instant;

use clap::Parser;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

pub mod args;
mod commands;
pub mod payload;
mod verify;

use args::{Cli, Command};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Attached to the result of every command whose answer depends on a bound.
pub const DISCLAIMER: &str = "absence below bound is not a proof";

/// Machine-readable record of one invocation. Wall time is not part of it,
/// so identical inputs give byte-identical reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub params: Map<String, Value>,
    pub result: Value,
    pub checked: u64,
    pub violations: u64,
    pub bounded: bool,
    pub version: String,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("a report is always serializable")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    /// Witness found or property verified.
    Success = 0,
    /// No witness below the bound.
    Negative = 1,
    /// Bad arguments or input that is not a factor of T.
    Usage = 2,
    /// A checked invariant failed.
    Violation = 3,
}

impl Exit {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(tm_core::Error),
}

impl CliError {
    pub fn exit(&self) -> Exit {
        match self {
            CliError::Usage(_) => Exit::Usage,
            CliError::Core(e) if e.is_violation() => Exit::Violation,
            CliError::Core(tm_core::Error::NoWitness { .. } | tm_core::Error::NoOccurrences { .. }) => Exit::Negative,
            CliError::Core(_) => Exit::Usage,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => f.write_str(msg),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<tm_core::Error> for CliError {
    fn from(e: tm_core::Error) -> Self {
        CliError::Core(e)
    }
}

/// What a command produced before rendering.
pub(crate) struct Outcome {
    pub report: Report,
    pub exit: Exit,
    pub text: String,
    pub csv: Option<String>,
}

impl Outcome {
    pub fn new<T: Serialize>(command: &str, params: Value, result: &T) -> Result<Self, CliError> {
        let result = serde_json::to_value(result)
            .map_err(|e| CliError::Usage(format!("result does not fit the JSON report: {e}")))?;
        let params = match params {
            Value::Object(map) => map,
            _ => Map::new(),
        };
        Ok(Outcome {
            report: Report {
                command: command.to_string(),
                params,
                result,
                checked: 0,
                violations: 0,
                bounded: false,
                version: VERSION.to_string(),
            },
            exit: Exit::Success,
            text: String::new(),
            csv: None,
        })
    }

    pub fn checked(mut self, checked: u64, violations: u64) -> Self {
        self.report.checked = checked;
        self.report.violations = violations;
        if violations > 0 {
            self.exit = Exit::Violation;
        }
        self
    }

    pub fn bounded(mut self) -> Self {
        self.report.bounded = true;
        if let Value::Object(map) = &mut self.report.result {
            map.insert("disclaimer".into(), DISCLAIMER.into());
        }
        self
    }

    /// Marks a clean negative unless a violation was already recorded.
    pub fn negative_if(mut self, negative: bool) -> Self {
        if negative && self.exit == Exit::Success {
            self.exit = Exit::Negative;
        }
        self
    }

    pub fn text(mut self, text: impl Into<String>) -> Self {
        self.text = text.into();
        self
    }
}

/// Rendered result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Output { code: Exit::Usage.code(), stdout: String::new(), stderr: rendered }
            } else {
                Output { code: Exit::Success.code(), stdout: rendered, stderr: String::new() }
            };
        }
    };
    if cli.csv && !matches!(cli.command, Command::Occurrences { .. }) {
        return Output {
            code: Exit::Usage.code(),
            stdout: String::new(),
            stderr: "error: --csv is only available for `occurrences`\n".into(),
        };
    }

    let start = Instant::now();
    match commands::execute(&cli.command) {
        Ok(outcome) => {
            let mut stderr = String::new();
            let stdout = if cli.json {
                stderr = format!("wall time: {:.3?}\n", start.elapsed());
                outcome.report.to_json() + "\n"
            } else if cli.csv {
                outcome.csv.unwrap_or_default()
            } else {
                outcome.text
            };
            Output { code: outcome.exit.code(), stdout, stderr }
        }
        Err(e) => Output { code: e.exit().code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}
