//! Command-line front end: argument parsing and the `rate`, `dispersion`
//! and `scenarios` commands.
//!
//! Commands produce the complete JSON document in memory; nothing is written
//! unless the whole run succeeds. Exit codes: 0 success, 2 invalid input,
//! 3 degenerate network, 4 power iteration did not converge.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::dispersion::{aggregate, dispersion_row, filter_min_n, TieBreak, DEFAULT_MIN_N};
use crate::eigenfactor::{PowerIterationOptions, DEFAULT_ALPHA, DEFAULT_MAX_ITER, DEFAULT_TOLERANCE};
use crate::error::{Error, Result};
use crate::formats::{load_dispersion_csv, load_scenarios, load_survey, load_survey_csv, DispersionInput};
use crate::report::{rate_survey, DispersionReport, ScenariosReport, WeightedRatingReport, SCHEMA_VERSION};
use crate::scenario::{error_reduction_summary, run_all};
use crate::survey::{DiagonalPolicy, Scale, ValidationOptions};

#[derive(Debug, Parser)]
#[command(name = "competence-rating", version, about = "Competence-weighted teaching ratings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Degree and eigenfactor weighted ratings for one or more surveys.
    Rate(RateArgs),
    /// Mode and deviation-from-mode statistics over instructors.
    Dispersion(DispersionArgs),
    /// Run a biased-rating scenario file and summarize error reductions.
    Scenarios(ScenarioArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Teleportation mixing weight, in [0, 1).
    #[arg(long, global = true, default_value_t = DEFAULT_ALPHA)]
    pub alpha: f64,
    /// L1 stopping tolerance of the power iteration.
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE)]
    pub tol: f64,
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ITER)]
    pub max_iter: usize,
    #[arg(long, global = true, value_enum, default_value_t = DiagonalPolicy::Coerce)]
    pub diagonal_policy: DiagonalPolicy,
    /// Minimum ratings per instructor for dispersion analysis.
    #[arg(long, global = true, default_value_t = DEFAULT_MIN_N)]
    pub min_n: usize,
    #[arg(long, global = true, value_enum, default_value_t = TieBreak::Smallest)]
    pub mode_tiebreak: TieBreak,
    /// Require integer ratings.
    #[arg(long, global = true)]
    pub strict_likert: bool,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RateArgs {
    /// Survey JSON file; repeat for a batch.
    #[arg(long, conflicts_with_all = ["competence_csv", "ratings_csv"])]
    pub survey: Vec<PathBuf>,
    /// Competence matrix CSV (use with --ratings-csv).
    #[arg(long, requires = "ratings_csv")]
    pub competence_csv: Option<PathBuf>,
    /// Single-column ratings CSV (use with --competence-csv).
    #[arg(long, requires = "competence_csv")]
    pub ratings_csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DispersionArgs {
    /// `label,rating` or `label,n,mode,dev2,dev3plus` CSV.
    #[arg(long)]
    pub ratings_csv: PathBuf,
    /// Print a rounded text table instead of JSON.
    #[arg(long)]
    pub table: bool,
}

#[derive(Debug, Args)]
pub struct ScenarioArgs {
    #[arg(long)]
    pub scenario_file: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CommandKind {
    Rate,
    Dispersion,
    Scenarios,
}

/// Effective settings of one run; embedded in every report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: CommandKind,
    #[serde(default)]
    pub surveys: Vec<PathBuf>,
    #[serde(default)]
    pub competence_csv: Option<PathBuf>,
    #[serde(default)]
    pub ratings_csv: Option<PathBuf>,
    #[serde(default)]
    pub scenario_file: Option<PathBuf>,
    pub alpha: f64,
    pub tol: f64,
    pub max_iter: usize,
    pub diagonal_policy: DiagonalPolicy,
    pub min_n: usize,
    pub mode_tiebreak: TieBreak,
    pub strict_likert: bool,
    #[serde(default)]
    pub table: bool,
    #[serde(default)]
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: CommandKind) -> Self {
        Self {
            command,
            surveys: Vec::new(),
            competence_csv: None,
            ratings_csv: None,
            scenario_file: None,
            alpha: DEFAULT_ALPHA,
            tol: DEFAULT_TOLERANCE,
            max_iter: DEFAULT_MAX_ITER,
            diagonal_policy: DiagonalPolicy::default(),
            min_n: DEFAULT_MIN_N,
            mode_tiebreak: TieBreak::default(),
            strict_likert: false,
            table: false,
            output: None,
        }
    }

    pub fn from_cli(cli: Cli) -> Self {
        let c = cli.common;
        let mut config = Self {
            alpha: c.alpha,
            tol: c.tol,
            max_iter: c.max_iter,
            diagonal_policy: c.diagonal_policy,
            min_n: c.min_n,
            mode_tiebreak: c.mode_tiebreak,
            strict_likert: c.strict_likert,
            output: c.output,
            ..Self::new(CommandKind::Rate)
        };
        match cli.command {
            Command::Rate(a) => {
                config.surveys = a.survey;
                config.competence_csv = a.competence_csv;
                config.ratings_csv = a.ratings_csv;
            }
            Command::Dispersion(a) => {
                config.command = CommandKind::Dispersion;
                config.ratings_csv = Some(a.ratings_csv);
                config.table = a.table;
            }
            Command::Scenarios(a) => {
                config.command = CommandKind::Scenarios;
                config.scenario_file = Some(a.scenario_file);
            }
        }
        config
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..1.0).contains(&self.alpha) {
            return Err(Error::InvalidParameter(format!("--alpha must lie in [0, 1), got {}", self.alpha)));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::InvalidParameter(format!("--tol must be positive, got {}", self.tol)));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidParameter("--max-iter must be at least 1".into()));
        }
        Ok(())
    }

    pub fn iteration(&self) -> PowerIterationOptions {
        PowerIterationOptions {
            tol: self.tol,
            max_iter: self.max_iter,
        }
    }

    pub fn validation(&self) -> ValidationOptions {
        ValidationOptions {
            scale: Scale::default(),
            diagonal_policy: self.diagonal_policy,
            strict_likert: self.strict_likert,
        }
    }
}

/// Weighted-rating reports for every survey named in `config`, in input
/// order.
pub fn cmd_rate(config: &RunConfig) -> Result<Vec<WeightedRatingReport>> {
    config.validate()?;
    let validation = config.validation();
    let surveys = match (&config.competence_csv, &config.ratings_csv) {
        (Some(c), Some(r)) => vec![load_survey_csv(c, r, &validation)?],
        (None, None) if !config.surveys.is_empty() => config
            .surveys
            .iter()
            .map(|p| load_survey(p, &validation))
            .collect::<Result<_>>()?,
        _ => {
            return Err(Error::InvalidParameter(
                "rate needs --survey, or --competence-csv together with --ratings-csv".into(),
            ))
        }
    };
    surveys
        .iter()
        .map(|s| {
            let mut report = rate_survey(s, config.alpha, &config.iteration())?;
            report.config = Some(config.clone());
            Ok(report)
        })
        .collect()
}

pub fn cmd_dispersion(config: &RunConfig) -> Result<DispersionReport> {
    config.validate()?;
    let path = config
        .ratings_csv
        .as_ref()
        .ok_or_else(|| Error::InvalidParameter("dispersion needs --ratings-csv".into()))?;
    let (rows, excluded) = match load_dispersion_csv(path, Scale::default())? {
        DispersionInput::Ratings(records) => {
            let (kept, excluded) = filter_min_n(records, config.min_n);
            let rows = kept.iter().map(|r| dispersion_row(r, config.mode_tiebreak)).collect();
            (rows, excluded)
        }
        DispersionInput::Counts(rows) => {
            let (kept, dropped): (Vec<_>, Vec<_>) = rows.into_iter().partition(|r| r.n >= config.min_n);
            (kept, dropped.into_iter().map(|r| r.label).collect())
        }
    };
    Ok(DispersionReport {
        schema: SCHEMA_VERSION,
        aggregate: aggregate(&rows)?,
        rows,
        excluded,
        config: Some(config.clone()),
    })
}

pub fn cmd_scenarios(config: &RunConfig) -> Result<ScenariosReport> {
    config.validate()?;
    let path = config
        .scenario_file
        .as_ref()
        .ok_or_else(|| Error::InvalidParameter("scenarios needs --scenario-file".into()))?;
    let (label, scenarios) = load_scenarios(path, &config.validation())?;
    let results = run_all(&scenarios, config.alpha, &config.iteration())?;
    Ok(ScenariosReport {
        schema: SCHEMA_VERSION,
        label,
        alpha: config.alpha,
        summary: error_reduction_summary(&results)?,
        results,
        config: Some(config.clone()),
    })
}

/// Runs the configured command and renders its output document.
pub fn execute(config: &RunConfig) -> Result<String> {
    let mut text = match config.command {
        CommandKind::Rate => {
            let mut reports = cmd_rate(config)?;
            if reports.len() == 1 {
                serde_json::to_string_pretty(&reports.remove(0))?
            } else {
                serde_json::to_string_pretty(&reports)?
            }
        }
        CommandKind::Dispersion => {
            let report = cmd_dispersion(config)?;
            if config.table {
                return Ok(report.to_table());
            }
            serde_json::to_string_pretty(&report)?
        }
        CommandKind::Scenarios => serde_json::to_string_pretty(&cmd_scenarios(config)?)?,
    };
    text.push('\n');
    Ok(text)
}
