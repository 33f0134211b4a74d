use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::survey::{check_permutation, RatingVector};

/// Tolerance on `Σ w = 1` accepted for a weight vector.
pub const WEIGHT_SUM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Degree,
    Eigenfactor,
}

/// Nonnegative per-student weights summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    weights: Vec<f64>,
    method: Method,
}

impl WeightVector {
    pub fn new(weights: Vec<f64>, method: Method) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::EmptyInput("weight vector"));
        }
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
            return Err(Error::InvalidParameter(format!("weight {w} is not a nonnegative number")));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
            return Err(Error::InvalidParameter(format!("weights sum to {sum}, not 1")));
        }
        Ok(Self { weights, method })
    }

    /// Normalizes nonnegative masses by their total.
    pub(crate) fn from_masses(masses: Vec<f64>, method: Method) -> Result<Self> {
        let total: f64 = masses.iter().sum();
        if total.is_nan() || total <= 0.0 {
            return Err(Error::DegenerateNetwork);
        }
        let weights = masses.into_iter().map(|m| m / total).collect();
        Self::new(weights, method)
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.weights
    }

    /// New weight `k` is old weight `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.len())?;
        Ok(Self {
            weights: perm.iter().map(|&p| self.weights[p]).collect(),
            method: self.method,
        })
    }
}

/// Convex combination `Σ w_j r_j`.
pub fn weighted_rating(ratings: &RatingVector, weights: &WeightVector) -> Result<f64> {
    if ratings.len() != weights.len() {
        return Err(Error::DimensionMismatch {
            expected: ratings.len(),
            found: weights.len(),
        });
    }
    let value: f64 = ratings
        .values()
        .iter()
        .zip(weights.weights())
        .map(|(r, w)| r * w)
        .sum();
    // Rounding can push a convex combination a few ulps past its extremes.
    Ok(value.clamp(ratings.min(), ratings.max()))
}
