//! The `belyi` command-line tool as a library, so tests can drive it
//! without spawning processes.

pub mod args;
mod commands;
pub mod envelope;

use std::ffi::OsString;

use clap::Parser;
use thiserror::Error;

use belyi_core::exact::FactorConfig;
use belyi_core::Error as CoreError;

pub use args::{Cli, Command, Format, Order};
pub use commands::{BuildPayload, EnumeratePayload, EnumerateRow, FibersPayload, GraphPayload, ReducePayload};
pub use envelope::{Envelope, SCHEMA_VERSION, TOOL};

/// Environment variable overriding the trial-division bound.
pub const FACTOR_BOUND_VAR: &str = "BELYI_FACTOR_BOUND";

pub mod exit {
    pub const OK: i32 = 0;
    pub const OTHER: i32 = 1;
    pub const INVALID: i32 = 2;
    pub const UNSUPPORTED: i32 = 3;
    pub const HYPOTHESIS_UNMET: i32 = 4;
    pub const FACTORIZATION_INCOMPLETE: i32 = 5;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{0}")]
    Usage(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
    #[error("json output: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => exit::INVALID,
            CliError::Core(e) => match e {
                CoreError::InvalidDegree { .. }
                | CoreError::InvalidType { .. }
                | CoreError::NotPrime(_)
                | CoreError::OutOfRange(_) => exit::INVALID,
                CoreError::Unsupported(_) => exit::UNSUPPORTED,
                CoreError::HypothesisUnmet(_) => exit::HYPOTHESIS_UNMET,
                CoreError::IncompleteFactorization { .. } => exit::FACTORIZATION_INCOMPLETE,
                _ => exit::OTHER,
            },
            _ => exit::OTHER,
        }
    }
}

/// Settings that come from the environment rather than the command line.
#[derive(Clone, Copy, Debug, Default)]
pub struct Settings {
    pub factor: FactorConfig,
}

impl Settings {
    pub fn from_env() -> Result<Self, CliError> {
        let factor = match std::env::var(FACTOR_BOUND_VAR) {
            Ok(v) => {
                let bound: u64 = v
                    .trim()
                    .parse()
                    .map_err(|_| CliError::Usage(format!("{FACTOR_BOUND_VAR}={v:?} is not a nonnegative integer")))?;
                FactorConfig::with_trial_bound(bound)
            }
            Err(_) => FactorConfig::default(),
        };
        Ok(Self { factor })
    }
}

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (including the program name) and runs it with settings
/// from the environment.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Settings::from_env() {
        Ok(s) => run_with(argv, s),
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

pub fn run_with<I, T>(argv: I, settings: Settings) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::INVALID } else { exit::OK };
            let text = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() { (String::new(), text) } else { (text, String::new()) };
            return Outcome { code, stdout, stderr };
        }
    };
    let arguments: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    match commands::execute(&cli.command, &arguments, settings) {
        Ok(out) => Outcome {
            code: exit::OK,
            stdout: out.stdout,
            stderr: out.warnings.iter().map(|w| format!("warning: {w}\n")).collect(),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
