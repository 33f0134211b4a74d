//! Survey domain types: the rating vector, the binary competence-perception
//! matrix, and its row-normalized form shared by both weighting methods.
//!
//! Row `i` of a competence matrix holds the outgoing valuations of student
//! `i`; column `j` holds the valuations student `j` received. Self-valuations
//! are not part of the model, so the diagonal is always zero.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Closed rating interval `[min, max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "[f64; 2]", try_from = "[f64; 2]")]
pub struct Scale {
    min: f64,
    max: f64,
}

impl Scale {
    pub fn new(min: f64, max: f64) -> Result<Self> {
        if !(min.is_finite() && max.is_finite() && min <= max) {
            return Err(Error::InvalidScale { min, max });
        }
        Ok(Self { min, max })
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    pub fn contains(&self, value: f64) -> bool {
        value >= self.min && value <= self.max
    }
}

impl Default for Scale {
    /// Five-point Likert scale.
    fn default() -> Self {
        Self { min: 1.0, max: 5.0 }
    }
}

impl From<Scale> for [f64; 2] {
    fn from(s: Scale) -> Self {
        [s.min, s.max]
    }
}

impl TryFrom<[f64; 2]> for Scale {
    type Error = Error;

    fn try_from([min, max]: [f64; 2]) -> Result<Self> {
        Scale::new(min, max)
    }
}

/// Ratings one instructor received, one per responding student.
#[derive(Debug, Clone, PartialEq)]
pub struct RatingVector {
    values: Vec<f64>,
    scale: Scale,
}

impl RatingVector {
    pub fn new(values: Vec<f64>, scale: Scale) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyInput("rating vector"));
        }
        for (index, &value) in values.iter().enumerate() {
            if !value.is_finite() || !scale.contains(value) {
                return Err(Error::ScaleViolation {
                    index,
                    value,
                    min: scale.min,
                    max: scale.max,
                });
            }
        }
        Ok(Self { values, scale })
    }

    /// Like [`RatingVector::new`], additionally requiring integer values.
    pub fn new_likert(values: Vec<f64>, scale: Scale) -> Result<Self> {
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| v.fract() != 0.0) {
            return Err(Error::NonIntegerRating { index, value });
        }
        Self::new(values, scale)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn scale(&self) -> Scale {
        self.scale
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn arithmetic_mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// Mean of every rating except the one at `excluded`. Returns `None` when
    /// nothing would be left to average.
    pub fn mean_excluding(&self, excluded: usize) -> Option<f64> {
        if self.values.len() < 2 || excluded >= self.values.len() {
            return None;
        }
        let sum: f64 = self
            .values
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != excluded)
            .map(|(_, v)| v)
            .sum();
        Some(sum / (self.values.len() - 1) as f64)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Copy with the rating at `index` replaced by `value`.
    pub fn with_value(&self, index: usize, value: f64) -> Result<Self> {
        if index >= self.values.len() {
            return Err(Error::IndexOutOfRange {
                index,
                len: self.values.len(),
            });
        }
        let mut values = self.values.clone();
        values[index] = value;
        Self::new(values, self.scale)
    }
}

/// What to do with nonzero self-valuations found on ingestion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum DiagonalPolicy {
    Reject,
    /// Zero the diagonal and record a warning.
    #[default]
    Coerce,
}

/// Binary student-to-student competence perceptions, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompetenceMatrix {
    n: usize,
    entries: Vec<bool>,
}

impl CompetenceMatrix {
    /// Builds a matrix from 0/1 rows. Returns the matrix together with the
    /// indices whose nonzero diagonal entry was coerced to zero.
    pub fn from_rows(rows: &[Vec<f64>], policy: DiagonalPolicy) -> Result<(Self, Vec<usize>)> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyInput("competence matrix"));
        }
        let mut entries = Vec::with_capacity(n * n);
        let mut coerced = Vec::new();
        for (row, values) in rows.iter().enumerate() {
            if values.len() != n {
                return Err(Error::NotSquare {
                    row,
                    len: values.len(),
                    expected: n,
                });
            }
            for (col, &value) in values.iter().enumerate() {
                let bit = if value == 0.0 {
                    false
                } else if value == 1.0 {
                    true
                } else {
                    return Err(Error::NonBinaryEntry { row, col, value });
                };
                if row == col && bit {
                    match policy {
                        DiagonalPolicy::Reject => return Err(Error::NonZeroDiagonal { index: row }),
                        DiagonalPolicy::Coerce => {
                            coerced.push(row);
                            entries.push(false);
                            continue;
                        }
                    }
                }
                entries.push(bit);
            }
        }
        Ok((Self { n, entries }, coerced))
    }

    /// Builds a matrix from a predicate; diagonal cells are forced to zero.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyInput("competence matrix"));
        }
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(i != j && f(i, j));
            }
        }
        Ok(Self { n, entries })
    }

    /// Every student judges every other student competent.
    pub fn complete(n: usize) -> Result<Self> {
        Self::from_fn(n, |_, _| true)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.entries[i * self.n + j]
    }

    /// Number of students `i` declares competent.
    pub fn row_sum(&self, i: usize) -> usize {
        self.row(i).iter().filter(|&&b| b).count()
    }

    pub fn row(&self, i: usize) -> &[bool] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.n)
            .map(|i| self.row(i).iter().map(|&b| u8::from(b)).collect())
            .collect()
    }

    /// Relabels students so that new student `k` is old student `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.n)?;
        Self::from_fn(self.n, |i, j| self.get(perm[i], perm[j]))
    }
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: perm.len(),
        });
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::InvalidParameter(format!("{perm:?} is not a permutation of 0..{n}")));
        }
    }
    Ok(())
}

/// Competence matrix with each non-dangling row divided by its row sum.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedMatrix {
    n: usize,
    entries: Vec<f64>,
    row_sums: Vec<usize>,
    dangling: Vec<bool>,
}

impl NormalizedMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    /// Number of students each student declared competent.
    pub fn row_sums(&self) -> &[usize] {
        &self.row_sums
    }

    pub fn is_dangling(&self, i: usize) -> bool {
        self.dangling[i]
    }

    pub fn dangling_indices(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.dangling[i]).collect()
    }

    /// Sum of every entry; equals the number of non-dangling rows.
    pub fn total(&self) -> f64 {
        self.entries.iter().sum()
    }

    pub fn column_sums(&self) -> Vec<f64> {
        let mut sums = vec![0.0; self.n];
        for i in 0..self.n {
            for (s, d) in sums.iter_mut().zip(self.row(i)) {
                *s += d;
            }
        }
        sums
    }
}

/// Divides each row of `competence` by its row sum; rows with no
/// competent students stay zero and are marked dangling.
pub fn normalize(competence: &CompetenceMatrix) -> NormalizedMatrix {
    let n = competence.n();
    let mut entries = vec![0.0; n * n];
    let mut row_sums = Vec::with_capacity(n);
    let mut dangling = Vec::with_capacity(n);
    for i in 0..n {
        let s = competence.row_sum(i);
        row_sums.push(s);
        dangling.push(s == 0);
        if s > 0 {
            let share = 1.0 / s as f64;
            for (d, &c) in entries[i * n..(i + 1) * n].iter_mut().zip(competence.row(i)) {
                if c {
                    *d = share;
                }
            }
        }
    }
    NormalizedMatrix {
        n,
        entries,
        row_sums,
        dangling,
    }
}

/// Ingestion options for [`validate_survey`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct ValidationOptions {
    pub scale: Scale,
    pub diagonal_policy: DiagonalPolicy,
    /// Require integer ratings.
    pub strict_likert: bool,
}

/// A validated survey: one instructor's ratings plus the class network.
#[derive(Debug, Clone, PartialEq)]
pub struct SurveyInstance {
    pub label: String,
    pub ratings: RatingVector,
    pub competence: CompetenceMatrix,
    /// Non-fatal ingestion notes, e.g. coerced self-valuations.
    pub warnings: Vec<String>,
}

impl SurveyInstance {
    pub fn new(label: impl Into<String>, ratings: RatingVector, competence: CompetenceMatrix) -> Result<Self> {
        if ratings.len() != competence.n() {
            return Err(Error::DimensionMismatch {
                expected: competence.n(),
                found: ratings.len(),
            });
        }
        Ok(Self {
            label: label.into(),
            ratings,
            competence,
            warnings: Vec::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.ratings.len()
    }

    pub fn normalized(&self) -> NormalizedMatrix {
        normalize(&self.competence)
    }
}

/// Checks raw survey data and builds a [`SurveyInstance`].
pub fn validate_survey(
    label: &str,
    raw_ratings: &[f64],
    raw_matrix: &[Vec<f64>],
    options: &ValidationOptions,
) -> Result<SurveyInstance> {
    let (competence, coerced) = CompetenceMatrix::from_rows(raw_matrix, options.diagonal_policy)?;
    if raw_ratings.len() != competence.n() {
        return Err(Error::DimensionMismatch {
            expected: competence.n(),
            found: raw_ratings.len(),
        });
    }
    let ratings = if options.strict_likert {
        RatingVector::new_likert(raw_ratings.to_vec(), options.scale)?
    } else {
        RatingVector::new(raw_ratings.to_vec(), options.scale)?
    };
    let mut survey = SurveyInstance::new(label, ratings, competence)?;
    survey.warnings = coerced
        .into_iter()
        .map(|i| format!("self-valuation of student {i} set to 0"))
        .collect();
    Ok(survey)
}
