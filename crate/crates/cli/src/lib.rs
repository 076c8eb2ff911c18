//! Front end for `tate-coniveau`: JSON scenario files, the task runner behind
//! the `coniveau` binary, the on-disk result cache and the text summary.

use std::fmt;
use std::path::PathBuf;

mod cache;
pub mod config;
pub mod engine;
pub mod report;
pub mod summary;

pub use config::{parse, resolve, Scenario, ScenarioConfig, SCHEMA_VERSION};
pub use engine::{run_scenario, RunOptions};
pub use report::RunReport;

/// Environment variable naming the default cache directory.
pub const CACHE_DIR_ENV: &str = "TATE_CONIVEAU_CACHE_DIR";

pub const EXIT_OK: i32 = 0;
/// A verifier found a counterexample, or an analysis found unexpected gaps.
pub const EXIT_FINDING: i32 = 1;
/// Invalid config, ceiling exceeded, or I/O failure.
pub const EXIT_INVALID: i32 = 2;

/// A rejected scenario, located by field path (`tasks[0].degree`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub path: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        ConfigError { path: path.into(), message: message.into() }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "invalid config: {}", self.message)
        } else {
            write!(f, "invalid config at {}: {}", self.path, self.message)
        }
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug)]
pub enum CliError {
    Config(ConfigError),
    Io { path: PathBuf, source: std::io::Error },
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(e) => e.fmt(f),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
        }
    }
}

impl std::error::Error for CliError {}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e)
    }
}
