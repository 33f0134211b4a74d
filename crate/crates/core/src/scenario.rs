//! Biased-rating scenarios.
//!
//! A scenario pairs one rating vector, containing a single rating declared
//! biased, with a competence network. Both weighted ratings are compared with
//! the mean of the remaining ratings, which serves as the unbiased reference.

use serde::{Deserialize, Serialize};

use crate::degree::{degree_weighted_rating, degree_weights};
use crate::eigenfactor::{eigenfactor, eigenfactor_weighted_rating, PowerIterationOptions};
use crate::error::{Error, Result};
use crate::survey::{RatingVector, SurveyInstance};

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub id: u32,
    pub survey: SurveyInstance,
    pub biased_index: usize,
}

impl Scenario {
    pub fn new(id: u32, survey: SurveyInstance, biased_index: usize) -> Result<Self> {
        let n = survey.n();
        if biased_index >= n {
            return Err(Error::IndexOutOfRange { index: biased_index, len: n });
        }
        if n < 2 {
            return Err(Error::InvalidParameter(
                "a scenario needs at least two students to define an unbiased mean".into(),
            ));
        }
        Ok(Self {
            id,
            survey,
            biased_index,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioResult {
    pub id: u32,
    pub arithmetic_mean: f64,
    /// Mean without the biased rating.
    pub unbiased_mean: f64,
    pub r_d: Option<f64>,
    pub r_e: Option<f64>,
    pub err_mean: f64,
    pub err_d: Option<f64>,
    pub err_e: Option<f64>,
    pub weights_d: Option<Vec<f64>>,
    pub weights_e: Option<Vec<f64>>,
    /// Why the degree method produced no rating, if it failed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigenfactor_error: Option<String>,
}

/// Evaluates both weighting methods on one scenario. A failure of one method
/// is recorded in the result and does not stop the other.
pub fn run_scenario(scenario: &Scenario, alpha: f64, options: &PowerIterationOptions) -> Result<ScenarioResult> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::InvalidParameter(format!("alpha must lie in [0, 1), got {alpha}")));
    }
    let ratings = &scenario.survey.ratings;
    let normalized = scenario.survey.normalized();
    let arithmetic_mean = ratings.arithmetic_mean();
    let unbiased_mean = ratings
        .mean_excluding(scenario.biased_index)
        .expect("scenario construction guarantees n >= 2");

    let degree = degree_weights(&normalized)
        .and_then(|w| Ok((degree_weighted_rating(ratings, &w)?, w.into_vec())));
    let eigen = eigenfactor(&normalized, alpha, options)
        .and_then(|e| Ok((eigenfactor_weighted_rating(ratings, &e.weights)?, e.weights.into_vec())));

    let (r_d, weights_d, degree_error) = split(degree);
    let (r_e, weights_e, eigenfactor_error) = split(eigen);
    Ok(ScenarioResult {
        id: scenario.id,
        arithmetic_mean,
        unbiased_mean,
        r_d,
        r_e,
        err_mean: (arithmetic_mean - unbiased_mean).abs(),
        err_d: r_d.map(|r| (r - unbiased_mean).abs()),
        err_e: r_e.map(|r| (r - unbiased_mean).abs()),
        weights_d,
        weights_e,
        degree_error,
        eigenfactor_error,
    })
}

fn split(outcome: Result<(f64, Vec<f64>)>) -> (Option<f64>, Option<Vec<f64>>, Option<String>) {
    match outcome {
        Ok((rating, weights)) => (Some(rating), Some(weights), None),
        Err(e) => (None, None, Some(e.to_string())),
    }
}

/// Runs every scenario; results come back ordered by id.
pub fn run_all(scenarios: &[Scenario], alpha: f64, options: &PowerIterationOptions) -> Result<Vec<ScenarioResult>> {
    let mut results = scenarios
        .iter()
        .map(|s| run_scenario(s, alpha, options))
        .collect::<Result<Vec<_>>>()?;
    results.sort_by_key(|r| r.id);
    Ok(results)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Winner {
    Degree,
    Eigenfactor,
    Tie,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioReduction {
    pub id: u32,
    /// `100 · (1 − err_d / err_mean)`.
    pub degree_pct: Option<f64>,
    pub eigenfactor_pct: Option<f64>,
    pub winner: Option<Winner>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flag: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReductionSummary {
    pub scenarios: Vec<ScenarioReduction>,
    pub mean_degree_pct: Option<f64>,
    pub mean_eigenfactor_pct: Option<f64>,
    /// Eigenfactor error is at most the degree error in every scenario where
    /// both methods produced a rating.
    pub eigenfactor_never_worse: bool,
}

pub fn error_reduction_summary(results: &[ScenarioResult]) -> Result<ReductionSummary> {
    if results.is_empty() {
        return Err(Error::EmptyInput("scenario results"));
    }
    let reduction = |err: Option<f64>, base: f64| err.map(|e| 100.0 * (1.0 - e / base));
    let scenarios: Vec<ScenarioReduction> = results
        .iter()
        .map(|r| {
            let winner = match (r.err_d, r.err_e) {
                (Some(d), Some(e)) if e < d => Some(Winner::Eigenfactor),
                (Some(d), Some(e)) if d < e => Some(Winner::Degree),
                (Some(_), Some(_)) => Some(Winner::Tie),
                _ => None,
            };
            if r.err_mean == 0.0 {
                ScenarioReduction {
                    id: r.id,
                    degree_pct: None,
                    eigenfactor_pct: None,
                    winner,
                    flag: Some("DivisionByZero: arithmetic mean error is 0".into()),
                }
            } else {
                ScenarioReduction {
                    id: r.id,
                    degree_pct: reduction(r.err_d, r.err_mean),
                    eigenfactor_pct: reduction(r.err_e, r.err_mean),
                    winner,
                    flag: None,
                }
            }
        })
        .collect();
    let mean = |values: Vec<f64>| (!values.is_empty()).then(|| values.iter().sum::<f64>() / values.len() as f64);
    Ok(ReductionSummary {
        mean_degree_pct: mean(scenarios.iter().filter_map(|s| s.degree_pct).collect()),
        mean_eigenfactor_pct: mean(scenarios.iter().filter_map(|s| s.eigenfactor_pct).collect()),
        eigenfactor_never_worse: scenarios.iter().all(|s| s.winner != Some(Winner::Degree)),
        scenarios,
    })
}

/// Copy of `ratings` with one rating replaced.
pub fn inject_bias(ratings: &RatingVector, index: usize, biased_value: f64) -> Result<RatingVector> {
    ratings.with_value(index, biased_value)
}
