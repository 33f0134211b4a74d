//! JSON report schemas.

use serde::{Deserialize, Serialize};

use crate::cli::RunConfig;
use crate::degree::{degree_weighted_rating, degree_weights};
use crate::dispersion::{DispersionAggregate, DispersionRow};
use crate::eigenfactor::{eigenfactor, eigenfactor_weighted_rating, PowerIterationOptions};
use crate::error::Result;
use crate::scenario::{ReductionSummary, ScenarioResult};
use crate::survey::SurveyInstance;
use crate::weights::Method;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub method: Method,
    pub weights: Vec<f64>,
    pub weighted_rating: f64,
    pub arithmetic_mean: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenfactorReport {
    pub method: Method,
    pub alpha: f64,
    pub weights: Vec<f64>,
    pub influence: Vec<f64>,
    pub iterations: usize,
    pub residual: f64,
    pub weighted_rating: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedRatingReport {
    pub schema: u32,
    pub label: String,
    pub n: usize,
    pub arithmetic_mean: f64,
    pub degree: DegreeReport,
    pub eigenfactor: EigenfactorReport,
    #[serde(default)]
    pub warnings: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<RunConfig>,
}

/// Both weighted ratings for one survey. Fails as a whole if either method
/// fails.
pub fn rate_survey(survey: &SurveyInstance, alpha: f64, options: &PowerIterationOptions) -> Result<WeightedRatingReport> {
    let normalized = survey.normalized();
    let arithmetic_mean = survey.ratings.arithmetic_mean();

    let w = degree_weights(&normalized)?;
    let degree = DegreeReport {
        method: Method::Degree,
        weighted_rating: degree_weighted_rating(&survey.ratings, &w)?,
        weights: w.into_vec(),
        arithmetic_mean,
    };

    let e = eigenfactor(&normalized, alpha, options)?;
    let eigen = EigenfactorReport {
        method: Method::Eigenfactor,
        alpha,
        weighted_rating: eigenfactor_weighted_rating(&survey.ratings, &e.weights)?,
        influence: e.influence.values().to_vec(),
        iterations: e.influence.iterations(),
        residual: e.influence.residual(),
        weights: e.weights.into_vec(),
    };

    Ok(WeightedRatingReport {
        schema: SCHEMA_VERSION,
        label: survey.label.clone(),
        n: survey.n(),
        arithmetic_mean,
        degree,
        eigenfactor: eigen,
        warnings: survey.warnings.clone(),
        config: None,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DispersionReport {
    pub schema: u32,
    pub rows: Vec<DispersionRow>,
    /// Instructors dropped for having fewer than `min_n` ratings.
    #[serde(default)]
    pub excluded: Vec<String>,
    pub aggregate: DispersionAggregate,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<RunConfig>,
}

impl DispersionReport {
    /// Plain-text table with percentages rounded to two decimals.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let width = self.rows.iter().map(|r| r.label.len()).max().unwrap_or(5).max(5);
        out.push_str(&format!("{:<width$}  {:>5}  {:>4}  {:>4}  {:>4}\n", "label", "n", "mode", "dev2", "dev3+"));
        for r in &self.rows {
            out.push_str(&format!(
                "{:<width$}  {:>5}  {:>4}  {:>4}  {:>4}\n",
                r.label, r.n, r.mode, r.dev2, r.dev3plus
            ));
        }
        let a = &self.aggregate;
        out.push_str(&format!(
            "{:<width$}  {:>5}        {:>4}  {:>4}\n",
            "total", a.total_n, a.total_dev2, a.total_dev3plus
        ));
        out.push_str(&format!(
            "deviation 2: {:.2}%  deviation >=3: {:.2}%  deviation >=2: {:.2}%\n",
            a.pct_dev2, a.pct_dev3plus, a.pct_dev2plus
        ));
        if !self.excluded.is_empty() {
            out.push_str(&format!("excluded (below min n): {}\n", self.excluded.join("; ")));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenariosReport {
    pub schema: u32,
    #[serde(default)]
    pub label: Option<String>,
    pub alpha: f64,
    pub results: Vec<ScenarioResult>,
    pub summary: ReductionSummary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<RunConfig>,
}
