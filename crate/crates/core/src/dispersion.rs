//! Rating dispersion around the mode.
//!
//! For each instructor the mode of their ratings is taken as the consensus
//! value and ratings are bucketed by absolute deviation from it. On a
//! five-point scale a deviation of 2 is half the range, so the share of
//! ratings at deviation 2 or more measures how often a single response sits
//! far from the consensus.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::survey::Scale;

/// Minimum number of ratings for an instructor to be included by default.
pub const DEFAULT_MIN_N: usize = 5;

/// How to choose among equally frequent values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum TieBreak {
    #[default]
    Smallest,
    Largest,
}

impl TieBreak {
    pub fn flipped(self) -> Self {
        match self {
            TieBreak::Smallest => TieBreak::Largest,
            TieBreak::Largest => TieBreak::Smallest,
        }
    }
}

/// Most frequent value of `ratings`.
pub fn mode_of(ratings: &[i64], tie_break: TieBreak) -> Result<i64> {
    let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
    for &r in ratings {
        *counts.entry(r).or_default() += 1;
    }
    let best = counts.values().copied().max().ok_or(Error::EmptyInput("ratings"))?;
    let mut tied = counts.iter().filter(|&(_, &c)| c == best).map(|(&v, _)| v);
    let mode = match tie_break {
        TieBreak::Smallest => tied.next(),
        TieBreak::Largest => tied.next_back(),
    };
    Ok(mode.expect("at least one value has the maximal count"))
}

/// Counts of ratings at absolute deviation 0, 1, 2 and ≥ 3 from `mode`.
pub fn deviation_counts(ratings: &[i64], mode: i64) -> [usize; 4] {
    let mut buckets = [0; 4];
    for &r in ratings {
        let dev = (r - mode).unsigned_abs().min(3) as usize;
        buckets[dev] += 1;
    }
    buckets
}

/// All integer ratings one instructor received.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstructorRecord {
    label: String,
    ratings: Vec<i64>,
}

impl InstructorRecord {
    pub fn new(label: impl Into<String>, ratings: Vec<i64>, scale: Scale) -> Result<Self> {
        if ratings.is_empty() {
            return Err(Error::EmptyInput("instructor ratings"));
        }
        for (index, &r) in ratings.iter().enumerate() {
            if !scale.contains(r as f64) {
                return Err(Error::ScaleViolation {
                    index,
                    value: r as f64,
                    min: scale.min(),
                    max: scale.max(),
                });
            }
        }
        Ok(Self {
            label: label.into(),
            ratings,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn ratings(&self) -> &[i64] {
        &self.ratings
    }

    pub fn n(&self) -> usize {
        self.ratings.len()
    }
}

/// Per-instructor mode and far-from-mode counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DispersionRow {
    pub label: String,
    pub n: usize,
    pub mode: i64,
    /// Ratings at absolute deviation exactly 2.
    pub dev2: usize,
    /// Ratings at absolute deviation 3 or more.
    pub dev3plus: usize,
}

impl DispersionRow {
    /// A row from already-tabulated counts.
    pub fn from_counts(label: impl Into<String>, n: usize, mode: i64, dev2: usize, dev3plus: usize) -> Result<Self> {
        let label = label.into();
        if n == 0 {
            return Err(Error::Malformed(format!("{label}: n must be at least 1")));
        }
        if dev2 + dev3plus > n {
            return Err(Error::Malformed(format!(
                "{label}: dev2 + dev3plus = {} exceeds n = {n}",
                dev2 + dev3plus
            )));
        }
        Ok(Self {
            label,
            n,
            mode,
            dev2,
            dev3plus,
        })
    }
}

pub fn dispersion_row(record: &InstructorRecord, tie_break: TieBreak) -> DispersionRow {
    let mode = mode_of(&record.ratings, tie_break).expect("records are nonempty");
    let [_, _, dev2, dev3plus] = deviation_counts(&record.ratings, mode);
    DispersionRow {
        label: record.label.clone(),
        n: record.n(),
        mode,
        dev2,
        dev3plus,
    }
}

/// Corpus totals and percentages over all ratings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DispersionAggregate {
    pub total_n: usize,
    pub total_dev2: usize,
    pub total_dev3plus: usize,
    pub pct_dev2: f64,
    pub pct_dev3plus: f64,
    pub pct_dev2plus: f64,
}

pub fn aggregate(rows: &[DispersionRow]) -> Result<DispersionAggregate> {
    let total_n: usize = rows.iter().map(|r| r.n).sum();
    if total_n == 0 {
        return Err(Error::EmptyInput("dispersion rows"));
    }
    let total_dev2: usize = rows.iter().map(|r| r.dev2).sum();
    let total_dev3plus: usize = rows.iter().map(|r| r.dev3plus).sum();
    let pct = |count: usize| 100.0 * count as f64 / total_n as f64;
    let pct_dev2 = pct(total_dev2);
    let pct_dev3plus = pct(total_dev3plus);
    Ok(DispersionAggregate {
        total_n,
        total_dev2,
        total_dev3plus,
        pct_dev2,
        pct_dev3plus,
        pct_dev2plus: pct_dev2 + pct_dev3plus,
    })
}

/// Splits records into those with at least `min_n` ratings and the labels
/// of the rest.
pub fn filter_min_n(records: Vec<InstructorRecord>, min_n: usize) -> (Vec<InstructorRecord>, Vec<String>) {
    let (kept, dropped): (Vec<_>, Vec<_>) = records.into_iter().partition(|r| r.n() >= min_n);
    (kept, dropped.into_iter().map(|r| r.label).collect())
}
