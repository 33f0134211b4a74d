//! Degree-centrality weighting.
//!
//! A student's weight is the column mass they receive in the normalized
//! competence matrix, divided by the total mass of the matrix. Being named by
//! many students counts, and being named by a selective student counts more
//! than being named by one who declares everybody competent.

use crate::error::Result;
use crate::survey::{NormalizedMatrix, RatingVector};
use crate::weights::{weighted_rating, Method, WeightVector};

/// `w_j = Σ_i d_ij / Σ_i Σ_j d_ij`.
///
/// Fails with [`Error::DegenerateNetwork`](crate::Error::DegenerateNetwork)
/// when every row of `normalized` is dangling.
pub fn degree_weights(normalized: &NormalizedMatrix) -> Result<WeightVector> {
    WeightVector::from_masses(normalized.column_sums(), Method::Degree)
}

pub fn degree_weighted_rating(ratings: &RatingVector, weights: &WeightVector) -> Result<f64> {
    weighted_rating(ratings, weights)
}
