//! Test-only oracles and generators. Nothing here calls into the library's
//! normalization, weighting, or iteration code.

#![allow(dead_code, clippy::needless_range_loop)]

use std::path::PathBuf;

use competence_rating::formats::read_scenario_json;
use competence_rating::{CompetenceMatrix, Scenario, ValidationOptions};
use nalgebra::{DMatrix, DVector};
use rand::Rng;

pub const REFERENCE_RATINGS: [f64; 10] = [4.0, 4.0, 3.0, 4.0, 5.0, 4.0, 3.0, 1.0, 5.0, 4.0];
pub const BIASED_INDEX: usize = 7;

/// Published reference columns, one entry per scenario:
/// (degree weights, eigenfactor weights, R_d, R_e).
pub struct ReferenceRow {
    pub id: u32,
    pub w: [f64; 10],
    pub v: [f64; 10],
    pub r_d: f64,
    pub r_e: f64,
    pub err_d: f64,
    pub err_e: f64,
}

pub const REFERENCE: [ReferenceRow; 6] = [
    ReferenceRow {
        id: 1,
        w: [0.1479, 0.1089, 0.0437, 0.1063, 0.1089, 0.1248, 0.1301, 0.0282, 0.1109, 0.0904],
        v: [0.1473, 0.1124, 0.0478, 0.1059, 0.1082, 0.1240, 0.1328, 0.0203, 0.1100, 0.0912],
        r_d: 3.9614,
        r_e: 3.9767,
        err_d: 0.0386,
        err_e: 0.0233,
    },
    ReferenceRow {
        id: 2,
        w: [0.1442, 0.1091, 0.0504, 0.1067, 0.1091, 0.1234, 0.1282, 0.0254, 0.1109, 0.0925],
        v: [0.1462, 0.1124, 0.0498, 0.1061, 0.1083, 0.1236, 0.1321, 0.0197, 0.1100, 0.0919],
        r_d: 3.9653,
        r_e: 3.9774,
        err_d: 0.0347,
        err_e: 0.0226,
    },
    ReferenceRow {
        id: 3,
        w: [0.1498, 0.1147, 0.0393, 0.1123, 0.0980, 0.1290, 0.1171, 0.0254, 0.1165, 0.0980],
        v: [0.1480, 0.1143, 0.0461, 0.1080, 0.1045, 0.1255, 0.1282, 0.0196, 0.1120, 0.0939],
        r_d: 3.9819,
        r_e: 3.9832,
        err_d: 0.0181,
        err_e: 0.0168,
    },
    ReferenceRow {
        id: 4,
        w: [0.1521, 0.1131, 0.0437, 0.1104, 0.1131, 0.1290, 0.1316, 0.0000, 0.1151, 0.0919],
        v: [0.1505, 0.1154, 0.0480, 0.1088, 0.1111, 0.1270, 0.1341, 0.0000, 0.1129, 0.0921],
        r_d: 4.0529,
        r_e: 4.0420,
        err_d: 0.0529,
        err_e: 0.0420,
    },
    ReferenceRow {
        id: 5,
        w: [0.1480, 0.1129, 0.0504, 0.1105, 0.1129, 0.1272, 0.1296, 0.0000, 0.1147, 0.0938],
        v: [0.1499, 0.1153, 0.0490, 0.1089, 0.1111, 0.1268, 0.1337, 0.0000, 0.1129, 0.0924],
        r_d: 4.0476,
        r_e: 4.0413,
        err_d: 0.0476,
        err_e: 0.0413,
    },
    ReferenceRow {
        id: 6,
        w: [0.1536, 0.1185, 0.0393, 0.1161, 0.1018, 0.1327, 0.1185, 0.0000, 0.1202, 0.0994],
        v: [0.1508, 0.1163, 0.0473, 0.1095, 0.1096, 0.1276, 0.1323, 0.0000, 0.1136, 0.0929],
        r_d: 4.0643,
        r_e: 4.0436,
        err_d: 0.0643,
        err_e: 0.0436,
    },
];

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn reference_scenarios() -> Vec<Scenario> {
    let text = std::fs::read_to_string(fixture("scenarios.json")).unwrap();
    read_scenario_json(text.as_bytes())
        .unwrap()
        .into_scenarios(&ValidationOptions::default())
        .unwrap()
}

pub fn random_competence(rng: &mut impl Rng, n: usize, density: f64) -> CompetenceMatrix {
    CompetenceMatrix::from_fn(n, |_, _| rng.gen_bool(density)).unwrap()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Degree weights from raw counts in exact integer arithmetic: every vote of
/// student `i` is worth `L / s_i` for `L` the lcm of the nonzero row sums.
/// `None` if nobody names anybody.
pub fn degree_oracle(c: &CompetenceMatrix) -> Option<Vec<f64>> {
    let n = c.n();
    let sums: Vec<u64> = (0..n).map(|i| (0..n).filter(|&j| c.get(i, j)).count() as u64).collect();
    let lcm = sums.iter().filter(|&&s| s > 0).fold(1u64, |l, &s| l / gcd(l, s) * s);
    let mut votes = vec![0u64; n];
    for i in 0..n {
        for j in 0..n {
            if c.get(i, j) {
                votes[j] += lcm / sums[i];
            }
        }
    }
    let total: u64 = votes.iter().sum();
    (total > 0).then(|| votes.iter().map(|&v| v as f64 / total as f64).collect())
}

/// Stationary distribution of `αH + (1−α)/n` by a dense LU solve of
/// `(I − M)ᵀ x = 0` with one equation replaced by `Σ x = 1`. `H` is built
/// straight from the 0/1 matrix.
pub fn stationary_oracle(c: &CompetenceMatrix, alpha: f64) -> Vec<f64> {
    let n = c.n();
    let h = DMatrix::from_fn(n, n, |i, j| {
        let s = (0..n).filter(|&k| c.get(i, k)).count();
        if s == 0 {
            1.0 / n as f64
        } else if c.get(i, j) {
            1.0 / s as f64
        } else {
            0.0
        }
    });
    let m = h * alpha + DMatrix::from_element(n, n, (1.0 - alpha) / n as f64);
    let mut a = (DMatrix::identity(n, n) - m).transpose();
    let mut b = DVector::zeros(n);
    for j in 0..n {
        a[(n - 1, j)] = 1.0;
    }
    b[n - 1] = 1.0;
    let x = a.lu().solve(&b).expect("stationarity system is nonsingular");
    x.iter().copied().collect()
}

/// `v_j ∝ Σ_i x_i c_ij / s_i` computed from the 0/1 matrix.
pub fn eigenfactor_oracle(c: &CompetenceMatrix, x: &[f64]) -> Vec<f64> {
    let n = c.n();
    let mut mass = vec![0.0; n];
    for i in 0..n {
        let s = (0..n).filter(|&k| c.get(i, k)).count();
        for j in 0..n {
            if c.get(i, j) {
                mass[j] += x[i] / s as f64;
            }
        }
    }
    let total: f64 = mass.iter().sum();
    mass.iter().map(|m| m / total).collect()
}

pub fn l1(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}
