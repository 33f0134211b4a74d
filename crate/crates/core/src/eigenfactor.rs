//! Eigenfactor-centrality weighting.
//!
//! The normalized competence matrix is patched into a row-stochastic matrix
//! `H` (dangling rows become uniform), mixed with uniform teleportation, and
//! the stationary distribution `x` of the resulting Markov chain is found by
//! power iteration. Each student's weight is then the competence mass they
//! receive from the others, with every valuing student counted in
//! proportion to their own influence `x_i`.
//!
//! Chain convention: `x` is the row vector with `x = x · (αH + (1−α)T)`,
//! equivalently `xᵀ = P xᵀ` for the column-stochastic
//! `P = αHᵀ + (1−α)T`. `P` is only built on request
//! ([`TransitionModel::materialize_p`]); iteration applies the rank-one
//! teleportation term implicitly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::survey::{NormalizedMatrix, RatingVector};
use crate::weights::{weighted_rating, Method, WeightVector};

pub const DEFAULT_ALPHA: f64 = 0.85;
pub const DEFAULT_TOLERANCE: f64 = 1e-12;
pub const DEFAULT_MAX_ITER: usize = 1000;

/// Row-stochastic competence matrix with dangling rows replaced by `1/n`.
#[derive(Debug, Clone, PartialEq)]
pub struct StochasticMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl StochasticMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }
}

pub fn build_stochastic(normalized: &NormalizedMatrix) -> StochasticMatrix {
    let n = normalized.n();
    let uniform = 1.0 / n as f64;
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        if normalized.is_dangling(i) {
            entries.extend(std::iter::repeat_n(uniform, n));
        } else {
            entries.extend_from_slice(normalized.row(i));
        }
    }
    StochasticMatrix { n, entries }
}

/// The teleporting chain `αH + (1−α)T`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionModel {
    h: StochasticMatrix,
    alpha: f64,
}

impl TransitionModel {
    pub fn new(h: StochasticMatrix, alpha: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&alpha) {
            return Err(Error::InvalidParameter(format!("alpha must lie in [0, 1), got {alpha}")));
        }
        Ok(Self { h, alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn n(&self) -> usize {
        self.h.n
    }

    pub fn stochastic(&self) -> &StochasticMatrix {
        &self.h
    }

    /// One chain transition of the distribution `x`.
    pub fn step(&self, x: &[f64]) -> Vec<f64> {
        let n = self.h.n;
        let mass: f64 = x.iter().sum();
        let mut next = vec![(1.0 - self.alpha) * mass / n as f64; n];
        for (i, &xi) in x.iter().enumerate() {
            let scaled = self.alpha * xi;
            for (y, h) in next.iter_mut().zip(self.h.row(i)) {
                *y += scaled * h;
            }
        }
        next
    }

    /// Dense column-stochastic `P = αHᵀ + (1−α)T`, indexed `[row][col]`.
    pub fn materialize_p(&self) -> Vec<Vec<f64>> {
        let n = self.h.n;
        let teleport = (1.0 - self.alpha) / n as f64;
        (0..n)
            .map(|i| (0..n).map(|j| self.alpha * self.h.get(j, i) + teleport).collect())
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerIterationOptions {
    /// Stop once the L1 change between iterates is at most this.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for PowerIterationOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOLERANCE,
            max_iter: DEFAULT_MAX_ITER,
        }
    }
}

/// Stationary distribution of a [`TransitionModel`].
#[derive(Debug, Clone, PartialEq)]
pub struct InfluenceVector {
    x: Vec<f64>,
    iterations: usize,
    residual: f64,
}

impl InfluenceVector {
    pub fn values(&self) -> &[f64] {
        &self.x
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }

    /// L1 change of the final iteration.
    pub fn residual(&self) -> f64 {
        self.residual
    }
}

/// Power iteration from the uniform vector, renormalized to unit mass on
/// every step.
pub fn stationary_distribution(model: &TransitionModel, options: &PowerIterationOptions) -> Result<InfluenceVector> {
    if options.tol.is_nan() || options.tol <= 0.0 {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {}", options.tol)));
    }
    if options.max_iter == 0 {
        return Err(Error::InvalidParameter("max_iter must be at least 1".into()));
    }
    let n = model.n();
    let mut x = vec![1.0 / n as f64; n];
    let mut residual = f64::INFINITY;
    for iteration in 1..=options.max_iter {
        let mut next = model.step(&x);
        let mass: f64 = next.iter().sum();
        next.iter_mut().for_each(|v| *v /= mass);
        residual = next.iter().zip(&x).map(|(a, b)| (a - b).abs()).sum();
        x = next;
        if residual <= options.tol {
            return Ok(InfluenceVector {
                x,
                iterations: iteration,
                residual,
            });
        }
    }
    Err(Error::NoConvergence {
        iterations: options.max_iter,
        residual,
    })
}

/// `v_j = Σ_i x_i d_ij / Σ_i Σ_j x_i d_ij`.
pub fn eigenfactor_weights(influence: &InfluenceVector, normalized: &NormalizedMatrix) -> Result<WeightVector> {
    let n = normalized.n();
    if influence.x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: influence.x.len(),
        });
    }
    let mut masses = vec![0.0; n];
    for (i, &xi) in influence.x.iter().enumerate() {
        for (m, d) in masses.iter_mut().zip(normalized.row(i)) {
            *m += xi * d;
        }
    }
    WeightVector::from_masses(masses, Method::Eigenfactor)
}

pub fn eigenfactor_weighted_rating(ratings: &RatingVector, weights: &WeightVector) -> Result<f64> {
    weighted_rating(ratings, weights)
}

/// Influence vector and weights for one normalized matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenfactor {
    pub alpha: f64,
    pub influence: InfluenceVector,
    pub weights: WeightVector,
}

pub fn eigenfactor(normalized: &NormalizedMatrix, alpha: f64, options: &PowerIterationOptions) -> Result<Eigenfactor> {
    let model = TransitionModel::new(build_stochastic(normalized), alpha)?;
    let influence = stationary_distribution(&model, options)?;
    let weights = eigenfactor_weights(&influence, normalized)?;
    Ok(Eigenfactor {
        alpha,
        influence,
        weights,
    })
}
