//! Competence-weighted aggregation of student teaching ratings.
//!
//! Each student rates the instructor and also says which classmates they
//! consider competent to rate. The resulting network is turned into weights
//! two ways:
//!
//! * [`degree`]: a student's weight is the normalized competence mass they
//!   receive directly;
//! * [`eigenfactor`]: the same mass weighted by the influence of whoever gave
//!   it, taken from the stationary distribution of a teleporting random walk.
//!
//! The weighted mean of the ratings under either weighting damps ratings
//! from students nobody considers competent. [`dispersion`] measures how far
//! ratings stray from each instructor's mode, and [`scenario`] compares both
//! weighted means with the plain mean when one rating is known to be biased.

pub mod cli;
pub mod degree;
pub mod dispersion;
pub mod eigenfactor;
pub mod error;
pub mod formats;
pub mod report;
pub mod scenario;
pub mod survey;
pub mod weights;

pub use degree::{degree_weighted_rating, degree_weights};
pub use dispersion::{aggregate, dispersion_row, mode_of, DispersionAggregate, DispersionRow, InstructorRecord, TieBreak};
pub use eigenfactor::{
    build_stochastic, eigenfactor, eigenfactor_weighted_rating, eigenfactor_weights, stationary_distribution,
    InfluenceVector, PowerIterationOptions, StochasticMatrix, TransitionModel,
};
pub use error::{Error, Result};
pub use report::{rate_survey, WeightedRatingReport};
pub use scenario::{error_reduction_summary, inject_bias, run_scenario, Scenario, ScenarioResult};
pub use survey::{
    normalize, validate_survey, CompetenceMatrix, DiagonalPolicy, NormalizedMatrix, RatingVector, Scale,
    SurveyInstance, ValidationOptions,
};
pub use weights::{weighted_rating, Method, WeightVector};
