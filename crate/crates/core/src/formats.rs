//! On-disk input formats.
//!
//! * Survey JSON: `{ "label", "scale": [min, max], "ratings": [...], "competence": [[0|1, ...], ...] }`.
//!   `null` competence cells are unanswered questions and read as 0.
//! * Competence CSV: `n` header-less rows of `n` comma-separated 0/1 values;
//!   empty cells read as 0. Ratings CSV: one rating per line, optional header.
//! * Scenario JSON: `{ "ratings", "biased_index", "scenarios": [{ "id", "competence" }] }`.
//! * Dispersion CSV: long form `label,rating` or pre-counted
//!   `label,n,mode,dev2,dev3plus`, told apart by the header.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufReader, Read};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::dispersion::{DispersionRow, InstructorRecord};
use crate::error::{Error, Result};
use crate::scenario::Scenario;
use crate::survey::{validate_survey, Scale, SurveyInstance, ValidationOptions};

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))
}

fn blank_to_zero(rows: Vec<Vec<Option<f64>>>) -> Vec<Vec<f64>> {
    rows.into_iter()
        .map(|row| row.into_iter().map(|c| c.unwrap_or(0.0)).collect())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurveyFile {
    #[serde(default)]
    pub label: Option<String>,
    #[serde(default)]
    pub scale: Option<Scale>,
    pub ratings: Vec<f64>,
    pub competence: Vec<Vec<Option<f64>>>,
}

impl SurveyFile {
    /// Validates the file contents. A scale given in the file takes
    /// precedence over `options.scale`.
    pub fn into_survey(self, options: &ValidationOptions) -> Result<SurveyInstance> {
        let options = ValidationOptions {
            scale: self.scale.unwrap_or(options.scale),
            ..*options
        };
        let label = self.label.unwrap_or_default();
        validate_survey(&label, &self.ratings, &blank_to_zero(self.competence), &options)
    }
}

pub fn read_survey_json<R: Read>(reader: R) -> Result<SurveyFile> {
    Ok(serde_json::from_reader(reader)?)
}

pub fn load_survey(path: &Path, options: &ValidationOptions) -> Result<SurveyInstance> {
    let mut survey = read_survey_json(open(path)?)?.into_survey(options)?;
    if survey.label.is_empty() {
        survey.label = path.display().to_string();
    }
    Ok(survey)
}

fn parse_cell(cell: &str, line: usize) -> Result<f64> {
    let cell = cell.trim();
    if cell.is_empty() {
        return Ok(0.0);
    }
    cell.parse()
        .map_err(|_| Error::Malformed(format!("line {line}: `{cell}` is not a number")))
}

/// Header-less square 0/1 matrix; empty cells are unanswered and read as 0.
pub fn read_competence_csv<R: Read>(reader: R) -> Result<Vec<Vec<f64>>> {
    let mut csv = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut rows = Vec::new();
    for (i, record) in csv.records().enumerate() {
        let record = record?;
        rows.push(record.iter().map(|c| parse_cell(c, i + 1)).collect::<Result<Vec<_>>>()?);
    }
    Ok(rows)
}

/// Single-column ratings; a non-numeric first line is treated as a header.
pub fn read_ratings_csv<R: Read>(reader: R) -> Result<Vec<f64>> {
    let mut csv = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut ratings = Vec::new();
    for (i, record) in csv.records().enumerate() {
        let record = record?;
        if record.len() != 1 {
            return Err(Error::Malformed(format!(
                "line {}: expected one column, found {}",
                i + 1,
                record.len()
            )));
        }
        let cell = &record[0];
        match cell.parse::<f64>() {
            Ok(v) => ratings.push(v),
            Err(_) if i == 0 => continue,
            Err(_) => return Err(Error::Malformed(format!("line {}: `{cell}` is not a rating", i + 1))),
        }
    }
    Ok(ratings)
}

pub fn load_survey_csv(
    competence_path: &Path,
    ratings_path: &Path,
    options: &ValidationOptions,
) -> Result<SurveyInstance> {
    let matrix = read_competence_csv(open(competence_path)?)?;
    let ratings = read_ratings_csv(open(ratings_path)?)?;
    validate_survey(&competence_path.display().to_string(), &ratings, &matrix, options)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSpec {
    pub id: u32,
    pub competence: Vec<Vec<Option<f64>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioFile {
    #[serde(default)]
    pub label: Option<String>,
    #[serde(default)]
    pub scale: Option<Scale>,
    pub ratings: Vec<f64>,
    pub biased_index: usize,
    pub scenarios: Vec<ScenarioSpec>,
}

impl ScenarioFile {
    pub fn into_scenarios(self, options: &ValidationOptions) -> Result<Vec<Scenario>> {
        if self.scenarios.is_empty() {
            return Err(Error::EmptyInput("scenario list"));
        }
        let options = ValidationOptions {
            scale: self.scale.unwrap_or(options.scale),
            ..*options
        };
        self.scenarios
            .into_iter()
            .map(|spec| {
                let label = format!("scenario {}", spec.id);
                let survey = validate_survey(&label, &self.ratings, &blank_to_zero(spec.competence), &options)?;
                Scenario::new(spec.id, survey, self.biased_index)
            })
            .collect()
    }
}

pub fn read_scenario_json<R: Read>(reader: R) -> Result<ScenarioFile> {
    Ok(serde_json::from_reader(reader)?)
}

pub fn load_scenarios(path: &Path, options: &ValidationOptions) -> Result<(Option<String>, Vec<Scenario>)> {
    let file = read_scenario_json(open(path)?)?;
    let label = file.label.clone();
    Ok((label, file.into_scenarios(options)?))
}

#[derive(Debug, Clone, PartialEq)]
pub enum DispersionInput {
    /// One rating per line, grouped by label in order of first appearance.
    Ratings(Vec<InstructorRecord>),
    /// Already-tabulated rows.
    Counts(Vec<DispersionRow>),
}

pub fn read_dispersion_csv<R: Read>(reader: R, scale: Scale) -> Result<DispersionInput> {
    let mut csv = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let header: Vec<String> = csv.headers()?.iter().map(str::to_ascii_lowercase).collect();
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    match header.as_slice() {
        ["label", "rating"] => {
            let mut order: Vec<(String, Vec<i64>)> = Vec::new();
            let mut index: HashMap<String, usize> = HashMap::new();
            for (line, record) in csv.records().enumerate() {
                let record = record?;
                let rating = parse_int(&record[1], line + 2)?;
                let slot = *index.entry(record[0].to_string()).or_insert_with(|| {
                    order.push((record[0].to_string(), Vec::new()));
                    order.len() - 1
                });
                order[slot].1.push(rating);
            }
            if order.is_empty() {
                return Err(Error::EmptyInput("dispersion CSV"));
            }
            let records = order
                .into_iter()
                .map(|(label, ratings)| InstructorRecord::new(label, ratings, scale))
                .collect::<Result<_>>()?;
            Ok(DispersionInput::Ratings(records))
        }
        ["label", "n", "mode", "dev2", "dev3plus"] => {
            let mut rows = Vec::new();
            for (line, record) in csv.records().enumerate() {
                let record = record?;
                let line = line + 2;
                let count = |i: usize| -> Result<usize> {
                    record[i]
                        .parse()
                        .map_err(|_| Error::Malformed(format!("line {line}: `{}` is not a count", &record[i])))
                };
                rows.push(DispersionRow::from_counts(
                    &record[0],
                    count(1)?,
                    parse_int(&record[2], line)?,
                    count(3)?,
                    count(4)?,
                )?);
            }
            if rows.is_empty() {
                return Err(Error::EmptyInput("dispersion CSV"));
            }
            Ok(DispersionInput::Counts(rows))
        }
        other => Err(Error::Malformed(format!(
            "unrecognized dispersion header {other:?}; expected `label,rating` or `label,n,mode,dev2,dev3plus`"
        ))),
    }
}

fn parse_int(cell: &str, line: usize) -> Result<i64> {
    cell.parse()
        .map_err(|_| Error::Malformed(format!("line {line}: `{cell}` is not an integer rating")))
}

pub fn load_dispersion_csv(path: &Path, scale: Scale) -> Result<DispersionInput> {
    read_dispersion_csv(open(path)?, scale)
}
