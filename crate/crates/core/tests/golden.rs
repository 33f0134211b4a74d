mod common;

use common::{fixture, reference_scenarios, REFERENCE};
use competence_rating::dispersion::aggregate;
use competence_rating::eigenfactor::{eigenfactor, PowerIterationOptions};
use competence_rating::formats::{load_dispersion_csv, DispersionInput};
use competence_rating::scenario::{error_reduction_summary, run_all};
use competence_rating::{degree_weights, Scale};

const WEIGHT_TOL: f64 = 5e-4;
const RATING_TOL: f64 = 1e-3;

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

#[test]
fn degree_weights_match_every_scenario() {
    for (scenario, reference) in reference_scenarios().iter().zip(&REFERENCE) {
        let w = degree_weights(&scenario.survey.normalized()).unwrap();
        let diff = max_abs_diff(w.weights(), &reference.w);
        assert!(diff <= WEIGHT_TOL, "scenario {}: max |Δw| = {diff}", reference.id);
    }
}

#[test]
fn eigenfactor_weights_match_scenarios() {
    for (scenario, reference) in reference_scenarios().iter().zip(&REFERENCE) {
        let e = eigenfactor(&scenario.survey.normalized(), 0.85, &PowerIterationOptions::default()).unwrap();
        let diff = max_abs_diff(e.weights.weights(), &reference.v);
        if reference.id == 3 {
            // The published v column for this scenario is off by up to 1e-3
            // in two cells; no α, iteration count, or single-cell change of
            // the matrix reproduces it, while its w column matches exactly.
            assert!(diff <= 1.5e-3, "scenario 3: max |Δv| = {diff}");
        } else {
            assert!(diff <= WEIGHT_TOL, "scenario {}: max |Δv| = {diff}", reference.id);
        }
    }
}

#[test]
fn weighted_ratings_and_errors_match() {
    let results = run_all(&reference_scenarios(), 0.85, &PowerIterationOptions::default()).unwrap();
    for (r, reference) in results.iter().zip(&REFERENCE) {
        assert_eq!(r.id, reference.id);
        assert!((r.arithmetic_mean - 3.7).abs() < 1e-12);
        assert!((r.err_mean - 0.3).abs() < 1e-12);
        assert_eq!(r.unbiased_mean, 4.0);
        assert!((r.r_d.unwrap() - reference.r_d).abs() <= RATING_TOL, "scenario {}", r.id);
        assert!((r.r_e.unwrap() - reference.r_e).abs() <= RATING_TOL, "scenario {}", r.id);
        assert!((r.err_d.unwrap() - reference.err_d).abs() <= RATING_TOL);
        assert!((r.err_e.unwrap() - reference.err_e).abs() <= RATING_TOL);
    }
    let summary = error_reduction_summary(&results).unwrap();
    assert!(summary.eigenfactor_never_worse);
}

#[test]
fn student_eight_weightless_in_later_scenarios() {
    for scenario in reference_scenarios().iter().filter(|s| s.id >= 4) {
        let d = scenario.survey.normalized();
        assert_eq!(degree_weights(&d).unwrap().weights()[7], 0.0);
        let e = eigenfactor(&d, 0.85, &PowerIterationOptions::default()).unwrap();
        assert_eq!(e.weights.weights()[7], 0.0);
    }
}

fn counts(name: &str) -> Vec<competence_rating::DispersionRow> {
    match load_dispersion_csv(&fixture(name), Scale::default()).unwrap() {
        DispersionInput::Counts(rows) => rows,
        other => panic!("expected pre-counted rows, got {other:?}"),
    }
}

#[test]
fn dispersion_totals_match_published_sums() {
    let help = counts("dispersion_helpfulness.csv");
    let clar = counts("dispersion_clarity.csv");
    assert_eq!(help.len(), 91);
    assert_eq!(clar.len(), 91);
    // Column sums as printed, split at instructor 46.
    let half = |rows: &[competence_rating::DispersionRow], f: fn(&competence_rating::DispersionRow) -> usize| {
        (rows[..46].iter().map(f).sum::<usize>(), rows[46..].iter().map(f).sum::<usize>())
    };
    assert_eq!(half(&help, |r| r.n), (984, 1240));
    assert_eq!(half(&help, |r| r.dev2), (132, 198));
    assert_eq!(half(&help, |r| r.dev3plus), (129, 190));
    assert_eq!(half(&clar, |r| r.dev2), (123, 168));
    assert_eq!(half(&clar, |r| r.dev3plus), (96, 209));
}

#[test]
fn dispersion_percentages() {
    let help = aggregate(&counts("dispersion_helpfulness.csv")).unwrap();
    assert_eq!(help.total_n, 2224);
    assert!((help.pct_dev2 - 14.84).abs() <= 0.01);
    assert!((help.pct_dev3plus - 14.34).abs() <= 0.01);
    assert!((help.pct_dev2plus - 29.18).abs() <= 0.01);

    let clar = aggregate(&counts("dispersion_clarity.csv")).unwrap();
    assert!((clar.pct_dev2 - 13.08).abs() <= 0.01);
    assert!((clar.pct_dev3plus - 13.71).abs() <= 0.01);
    assert!((clar.pct_dev2plus - 26.79).abs() <= 0.01);
}
