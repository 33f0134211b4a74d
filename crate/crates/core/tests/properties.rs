#![allow(clippy::needless_range_loop)]

mod common;

use common::{degree_oracle, eigenfactor_oracle, l1, stationary_oracle};
use competence_rating::eigenfactor::{eigenfactor, PowerIterationOptions, TransitionModel};
use competence_rating::{
    build_stochastic, degree_weights, normalize, stationary_distribution, weighted_rating, CompetenceMatrix,
    RatingVector, Scale,
};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn matrix_from_bits(n: usize, bits: &[bool]) -> CompetenceMatrix {
    CompetenceMatrix::from_fn(n, |i, j| bits[i * n + j]).unwrap()
}

fn network(max_n: usize) -> impl Strategy<Value = CompetenceMatrix> {
    (1..=max_n).prop_flat_map(|n| prop::collection::vec(any::<bool>(), n * n).prop_map(move |b| matrix_from_bits(n, &b)))
}

/// A network with at least one competence declaration, plus ratings and a
/// permutation of the students.
fn survey(max_n: usize) -> impl Strategy<Value = (CompetenceMatrix, Vec<f64>, Vec<usize>)> {
    (2..=max_n)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(any::<bool>(), n * n).prop_map(move |b| matrix_from_bits(n, &b)),
                prop::collection::vec(1.0f64..=5.0, n),
                Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
            )
        })
        .prop_filter("non-degenerate", |(c, _, _)| (0..c.n()).any(|i| c.row_sum(i) > 0))
}

fn ratings(values: Vec<f64>) -> RatingVector {
    RatingVector::new(values, Scale::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn normalized_rows_sum_to_zero_or_one(c in network(12)) {
        let d = normalize(&c);
        let mut live = 0;
        for i in 0..c.n() {
            let s: f64 = d.row(i).iter().sum();
            if d.is_dangling(i) {
                prop_assert_eq!(s, 0.0);
            } else {
                live += 1;
                prop_assert!((s - 1.0).abs() <= 1e-12);
            }
            prop_assert!(d.row_sums()[i] < c.n().max(1));
        }
        prop_assert!((d.total() - live as f64).abs() <= 1e-12);
        prop_assert!(d.total() <= c.n() as f64 + 1e-12);
    }

    #[test]
    fn normalize_commutes_with_relabeling((c, _, perm) in survey(10)) {
        let d = normalize(&c);
        let dp = normalize(&c.permuted(&perm).unwrap());
        for i in 0..c.n() {
            for j in 0..c.n() {
                prop_assert_eq!(dp.get(i, j), d.get(perm[i], perm[j]));
            }
        }
    }

    #[test]
    fn degree_matches_integer_oracle_on_four_students(bits in prop::collection::vec(any::<bool>(), 16)) {
        let c = matrix_from_bits(4, &bits);
        match (degree_weights(&normalize(&c)), degree_oracle(&c)) {
            (Ok(w), Some(oracle)) => prop_assert!(l1(w.weights(), &oracle) <= 1e-12),
            (Err(_), None) => {}
            (got, want) => prop_assert!(false, "{:?} vs {:?}", got, want),
        }
    }

    #[test]
    fn weights_are_distributions((c, _, _) in survey(12)) {
        let d = normalize(&c);
        let w = degree_weights(&d).unwrap();
        let e = eigenfactor(&d, 0.85, &PowerIterationOptions::default()).unwrap();
        for weights in [w.weights(), e.weights.weights()] {
            prop_assert!(weights.iter().all(|&x| x >= 0.0));
            prop_assert!((weights.iter().sum::<f64>() - 1.0).abs() <= 1e-9);
        }
        let col = d.column_sums();
        for j in 0..c.n() {
            prop_assert_eq!(w.weights()[j] == 0.0, col[j] == 0.0);
            prop_assert_eq!(e.weights.weights()[j] == 0.0, col[j] == 0.0);
        }
    }

    #[test]
    fn weighted_ratings_are_convex_affine_and_relabel_invariant(
        (c, r, perm) in survey(10),
        a in 0.1f64..2.0,
        b in -3.0f64..3.0,
    ) {
        let d = normalize(&c);
        let w = degree_weights(&d).unwrap();
        let v = eigenfactor(&d, 0.85, &PowerIterationOptions::default()).unwrap().weights;
        let rv = ratings(r.clone());
        let wide = Scale::new(-100.0, 100.0).unwrap();
        let shifted = RatingVector::new(r.iter().map(|x| a * x + b).collect(), wide).unwrap();
        let pc = c.permuted(&perm).unwrap();
        let pd = normalize(&pc);
        let pr = ratings(perm.iter().map(|&p| r[p]).collect());
        let pw = degree_weights(&pd).unwrap();
        let pv = eigenfactor(&pd, 0.85, &PowerIterationOptions::default()).unwrap().weights;
        prop_assert!(l1(pw.weights(), w.permuted(&perm).unwrap().weights()) <= 1e-12);
        prop_assert!(l1(pv.weights(), v.permuted(&perm).unwrap().weights()) <= 1e-9);

        for (weights, pweights) in [(&w, &pw), (&v, &pv)] {
            let value = weighted_rating(&rv, weights).unwrap();
            prop_assert!(rv.min() <= value && value <= rv.max());
            let affine = weighted_rating(&shifted, weights).unwrap();
            prop_assert!((affine - (a * value + b)).abs() <= 1e-9);
            prop_assert!((weighted_rating(&pr, pweights).unwrap() - value).abs() <= 1e-9);
        }
    }

    #[test]
    fn unvalued_student_rating_is_irrelevant((c, r, _) in survey(10), new_rating in 1.0f64..=5.0) {
        let d = normalize(&c);
        let col = d.column_sums();
        let w = degree_weights(&d).unwrap();
        let v = eigenfactor(&d, 0.85, &PowerIterationOptions::default()).unwrap().weights;
        let rv = ratings(r);
        for j in (0..c.n()).filter(|&j| col[j] == 0.0) {
            let changed = rv.with_value(j, new_rating).unwrap();
            for weights in [&w, &v] {
                prop_assert_eq!(weighted_rating(&rv, weights).unwrap(), weighted_rating(&changed, weights).unwrap());
            }
        }
    }

    #[test]
    fn influence_is_stationary_and_floored(c in network(12), alpha in 0.0f64..0.95) {
        let d = normalize(&c);
        let h = build_stochastic(&d);
        for i in 0..c.n() {
            prop_assert!((h.row(i).iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        }
        let model = TransitionModel::new(h, alpha).unwrap();
        let p = model.materialize_p();
        for j in 0..c.n() {
            prop_assert!(((0..c.n()).map(|i| p[i][j]).sum::<f64>() - 1.0).abs() <= 1e-12);
        }
        let opts = PowerIterationOptions::default();
        let x = stationary_distribution(&model, &opts).unwrap();
        let floor = (1.0 - alpha) / c.n() as f64 - 1e-12;
        prop_assert!(x.values().iter().all(|&xi| xi >= floor));
        prop_assert!((x.values().iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        prop_assert!(l1(&model.step(x.values()), x.values()) <= 10.0 * opts.tol);
    }

    #[test]
    fn power_iteration_matches_dense_solve(c in network(12), alpha in 0.0f64..0.9) {
        let model = TransitionModel::new(build_stochastic(&normalize(&c)), alpha).unwrap();
        let x = stationary_distribution(&model, &PowerIterationOptions::default()).unwrap();
        prop_assert!(l1(x.values(), &stationary_oracle(&c, alpha)) <= 1e-9);
    }
}

#[test]
fn degree_matches_integer_oracle_exhaustively_on_three_students() {
    let off_diagonal = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)];
    for mask in 0u32..64 {
        let c = CompetenceMatrix::from_fn(3, |i, j| {
            let k = off_diagonal.iter().position(|&p| p == (i, j)).unwrap();
            mask & (1 << k) != 0
        })
        .unwrap();
        match (degree_weights(&normalize(&c)), degree_oracle(&c)) {
            (Ok(w), Some(oracle)) => assert!(l1(w.weights(), &oracle) <= 1e-12, "mask {mask}"),
            (Err(_), None) => assert_eq!(mask, 0),
            (got, want) => panic!("mask {mask}: {got:?} vs {want:?}"),
        }
    }
}

#[test]
fn random_six_student_network_matches_linear_solve() {
    let mut rng = StdRng::seed_from_u64(6);
    for _ in 0..20 {
        let c = common::random_competence(&mut rng, 6, 0.5);
        let d = normalize(&c);
        let Ok(e) = eigenfactor(&d, 0.85, &PowerIterationOptions::default()) else {
            continue;
        };
        let x = stationary_oracle(&c, 0.85);
        assert!(l1(e.influence.values(), &x) <= 1e-9);
        assert!(l1(e.weights.weights(), &eigenfactor_oracle(&c, &x)) <= 1e-9);
    }
}

#[test]
fn vanishing_alpha_recovers_degree_weights() {
    let mut rng = StdRng::seed_from_u64(17);
    for n in 2..=10 {
        let c = common::random_competence(&mut rng, n, 0.6);
        let d = normalize(&c);
        let Ok(w) = degree_weights(&d) else { continue };
        let e = eigenfactor(&d, 1e-6, &PowerIterationOptions::default()).unwrap();
        let uniform = vec![1.0 / n as f64; n];
        assert!(e.influence.values().iter().zip(&uniform).all(|(a, b)| (a - b).abs() <= 1e-4));
        assert!(e.weights.weights().iter().zip(w.weights()).all(|(a, b)| (a - b).abs() <= 1e-4));
    }
}
