//! Reproducible batch experiments. A [`ExperimentConfig`] names a command
//! and its sizes; [`run`] produces a [`Report`] whose scalars depend only on
//! the config, and [`emit`] writes it as JSON or CSV.

mod commands;
mod output;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::norms::AscentOptions;

pub use output::{emit, render, CSV_HEADER};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// `ε ≤ λ` over random unitary channels.
    Mixing,
    /// Spectral and norm ratios on irreducibly covariant embedded graphs.
    ConverseMixing,
    /// Norm equalities for an embedded graph read from a file.
    Embed,
    /// Identities of the fermionic superoperator and its covariant version.
    HaagerupItoh,
    /// Norms of the rank-one extremal circulant.
    CzExtremal,
    /// Lifted matrices and the half-plane bound.
    Lift,
    /// The quartic `S_2` bound on random channels and complete graphs.
    Randomizing,
}

impl Command {
    pub const ALL: [Command; 7] = [
        Command::Mixing,
        Command::ConverseMixing,
        Command::Embed,
        Command::HaagerupItoh,
        Command::CzExtremal,
        Command::Lift,
        Command::Randomizing,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Mixing => "mixing",
            Command::ConverseMixing => "converse-mixing",
            Command::Embed => "embed",
            Command::HaagerupItoh => "haagerup-itoh",
            Command::CzExtremal => "cz-extremal",
            Command::Lift => "lift",
            Command::Randomizing => "randomizing",
        }
    }

    /// Commands that sample random instances and therefore need a seed.
    pub fn is_randomized(self) -> bool {
        matches!(self, Command::Mixing | Command::Lift | Command::Randomizing)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Everything that determines a run. Unset sizes fall back to per-command
/// defaults chosen to finish well within a minute on one core.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    /// Graph file for `embed` and `converse-mixing`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restarts: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_sweeps: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rel_tol: Option<f64>,
    /// Overrides the default tolerance of every verdict.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(command: Command) -> Self {
        ExperimentConfig {
            command,
            seed: None,
            n: None,
            m: None,
            k: None,
            trials: None,
            graph: None,
            restarts: None,
            max_sweeps: None,
            rel_tol: None,
            tol: None,
            format: None,
            out: None,
        }
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("experiment config: {e}")))
    }

    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::from_json_str(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.command.is_randomized() && self.seed.is_none() {
            return Err(Error::InvalidArgument(format!(
                "command {} samples random instances and needs a seed",
                self.command.name()
            )));
        }
        if let Some(tol) = self.tol {
            if !(tol >= 0.0) || !tol.is_finite() {
                return Err(Error::InvalidArgument(format!("tolerance must be finite and nonnegative, got {tol}")));
            }
        }
        self.ascent_options().validate()
    }

    /// Ascent settings, seeded from the config seed (0 when absent).
    pub fn ascent_options(&self) -> AscentOptions {
        let defaults = AscentOptions::default();
        AscentOptions {
            restarts: self.restarts.unwrap_or(defaults.restarts),
            max_sweeps: self.max_sweeps.unwrap_or(defaults.max_sweeps),
            rel_tol: self.rel_tol.unwrap_or(defaults.rel_tol),
            seed: self.seed.unwrap_or(0),
        }
    }
}

/// One checked claim: what was asserted, at which tolerance, and whether it held.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Verdict {
    pub claim: String,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub version: String,
    pub config: ExperimentConfig,
    pub scalars: BTreeMap<String, f64>,
    pub verdicts: Vec<Verdict>,
    /// Column names of `rows`, one row per trial or instance in index order.
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    /// The only field that varies between identical runs.
    pub wall_clock_seconds: f64,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("report: {e}")))
    }
}

/// Accumulates the pieces of a report while a command runs.
#[derive(Default)]
pub(crate) struct ReportBuilder {
    scalars: BTreeMap<String, f64>,
    verdicts: Vec<Verdict>,
    columns: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl ReportBuilder {
    pub(crate) fn with_columns(columns: &[&str]) -> Self {
        ReportBuilder {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            ..Default::default()
        }
    }

    pub(crate) fn scalar(&mut self, name: &str, value: f64) {
        self.scalars.insert(name.to_string(), value);
    }

    pub(crate) fn verdict(&mut self, claim: &str, tolerance: f64, pass: bool, detail: String) {
        self.verdicts.push(Verdict {
            claim: claim.to_string(),
            tolerance,
            pass,
            detail,
        });
    }

    pub(crate) fn row(&mut self, values: Vec<f64>) {
        debug_assert_eq!(values.len(), self.columns.len());
        self.rows.push(values);
    }
}

pub fn run(config: &ExperimentConfig) -> Result<Report> {
    config.validate()?;
    let start = Instant::now();
    let built = match config.command {
        Command::Mixing => commands::mixing(config)?,
        Command::ConverseMixing => commands::converse_mixing(config)?,
        Command::Embed => commands::embed(config)?,
        Command::HaagerupItoh => commands::haagerup_itoh_identities(config)?,
        Command::CzExtremal => commands::cz_extremal(config)?,
        Command::Lift => commands::lift(config)?,
        Command::Randomizing => commands::randomizing(config)?,
    };
    Ok(Report {
        version: env!("CARGO_PKG_VERSION").to_string(),
        config: config.clone(),
        scalars: built.scalars,
        verdicts: built.verdicts,
        columns: built.columns,
        rows: built.rows,
        wall_clock_seconds: start.elapsed().as_secs_f64(),
    })
}
