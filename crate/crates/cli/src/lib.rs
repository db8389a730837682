//! Library side of the `madelung` command-line tool.
//!
//! A [`RunConfig`] names a command, its parameters as a string map, the
//! output format and the dataset location. [`run`] validates the parameters,
//! computes, and serializes the report; it never touches the process
//! environment, so it is deterministic and easy to test.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use madelung_core::shells::ElementDataset;

mod commands;
pub mod report;
pub mod verify;

pub use report::{Cell, Report, Table};
pub use verify::{verify_all, Check, CheckStatus, VerifyReport};

/// Environment variable that overrides `--dataset-path`.
pub const DATASET_ENV: &str = "MADELUNG_DATASET";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid parameters: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] madelung_core::Error),
}

impl CliError {
    /// 2 for solver failures, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(madelung_core::Error::Solver { .. }) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Aufbau,
    Classify,
    Spectrum,
    Dirac,
    Richardson,
    Bdg,
    Verify,
    Swscan,
}

impl Command {
    pub const ALL: [Command; 8] = [
        Command::Aufbau,
        Command::Classify,
        Command::Spectrum,
        Command::Dirac,
        Command::Richardson,
        Command::Bdg,
        Command::Verify,
        Command::Swscan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Aufbau => "aufbau",
            Command::Classify => "classify",
            Command::Spectrum => "spectrum",
            Command::Dirac => "dirac",
            Command::Richardson => "richardson",
            Command::Bdg => "bdg",
            Command::Verify => "verify",
            Command::Swscan => "swscan",
        }
    }

    /// Parameter keys the command accepts.
    pub fn allowed_keys(self) -> &'static [&'static str] {
        match self {
            Command::Aufbau => &["rule", "z", "classify"],
            Command::Classify => &["z"],
            Command::Spectrum => &["z", "n-r", "l"],
            Command::Dirac => &["z", "n-r", "kappa", "alpha"],
            Command::Richardson => &["levels", "degeneracies", "g", "pairs"],
            Command::Bdg => &["epsilon", "delta"],
            Command::Verify => &[],
            Command::Swscan => &["n-r", "l", "kappa", "z-max", "alpha"],
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| CliError::Config(format!("unknown command '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            _ => Err(CliError::Config(format!("unknown output format '{s}'"))),
        }
    }
}

/// Where element data comes from.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum DatasetSource {
    #[default]
    Bundled,
    Path(PathBuf),
    /// Dataset-dependent work is skipped.
    Disabled,
}

impl DatasetSource {
    /// An empty path disables the dataset.
    pub fn from_path(path: impl Into<PathBuf>) -> Self {
        let path = path.into();
        if path.as_os_str().is_empty() {
            DatasetSource::Disabled
        } else {
            DatasetSource::Path(path)
        }
    }

    /// `env` (the value of [`DATASET_ENV`]) wins over the flag.
    pub fn resolve(flag: Option<PathBuf>, env: Option<OsString>) -> Self {
        match (env, flag) {
            (Some(p), _) => DatasetSource::from_path(p),
            (None, Some(p)) => DatasetSource::from_path(p),
            (None, None) => DatasetSource::Bundled,
        }
    }

    /// `Ok(None)` when disabled.
    pub fn load(&self) -> Result<Option<ElementDataset>, madelung_core::Error> {
        match self {
            DatasetSource::Bundled => Ok(Some(ElementDataset::bundled())),
            DatasetSource::Path(p) => ElementDataset::from_path(p).map(Some),
            DatasetSource::Disabled => Ok(None),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub parameters: BTreeMap<String, String>,
    pub output_format: OutputFormat,
    pub dataset: DatasetSource,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            parameters: BTreeMap::new(),
            output_format: OutputFormat::Json,
            dataset: DatasetSource::Bundled,
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn format(mut self, format: OutputFormat) -> Self {
        self.output_format = format;
        self
    }

    pub fn dataset(mut self, dataset: DatasetSource) -> Self {
        self.dataset = dataset;
        self
    }

    /// Rejects keys the command does not know.
    pub fn validate(&self) -> Result<(), CliError> {
        let allowed = self.command.allowed_keys();
        let unknown: Vec<&str> = self
            .parameters
            .keys()
            .map(String::as_str)
            .filter(|k| !allowed.contains(k))
            .collect();
        if unknown.is_empty() {
            Ok(())
        } else {
            Err(CliError::Config(format!(
                "unknown parameter(s) for {}: {}",
                self.command,
                unknown.join(", ")
            )))
        }
    }
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Computes the report for `config` without serializing it.
pub fn build_report(config: &RunConfig) -> Result<(Report, bool), CliError> {
    config.validate()?;
    commands::execute(config)
}

pub fn run(config: &RunConfig) -> Outcome {
    match build_report(config) {
        Ok((report, success)) => Outcome {
            exit_code: if success { 0 } else { 1 },
            stdout: match config.output_format {
                OutputFormat::Json => report.to_json(),
                OutputFormat::Csv => report.to_csv(),
            },
            stderr: if success {
                String::new()
            } else {
                format!("{}: one or more checks failed\n", config.command)
            },
        },
        Err(e) => Outcome {
            exit_code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn env_overrides_flag() {
        let flag = Some(PathBuf::from("a.csv"));
        assert_eq!(
            DatasetSource::resolve(flag.clone(), Some("b.csv".into())),
            DatasetSource::Path("b.csv".into())
        );
        assert_eq!(DatasetSource::resolve(flag, None), DatasetSource::Path("a.csv".into()));
        assert_eq!(DatasetSource::resolve(None, Some("".into())), DatasetSource::Disabled);
        assert_eq!(DatasetSource::resolve(None, None), DatasetSource::Bundled);
    }

    #[test]
    fn unknown_keys_are_errors() {
        let out = run(&RunConfig::new(Command::Bdg).param("epsilon", 1).param("gap", 2));
        assert_eq!(out.exit_code, 1);
        assert!(out.stderr.contains("gap"));
        assert!(out.stdout.is_empty());
    }

    #[test]
    fn command_names_roundtrip() {
        for c in Command::ALL {
            assert_eq!(c.name().parse::<Command>().unwrap(), c);
        }
        assert!("plot".parse::<Command>().is_err());
    }
}
