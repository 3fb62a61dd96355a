//! Builders and independent oracles for the acceptance suite.

#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use tgs_core::ComplexTensor;

pub fn fixture_path() -> &'static str {
    concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/sample.json")
}

pub fn fixture() -> ComplexTensor {
    tgs_core::io::read_tensor_json(std::path::Path::new(fixture_path()))
        .expect("fixture parses")
}

/// Diagonal tensor with the given diagonal entries.
pub fn diagonal_tensor(order: usize, diag: &[Complex64]) -> ComplexTensor {
    let entries: Vec<_> = diag
        .iter()
        .enumerate()
        .map(|(i, &d)| (vec![i; order], d))
        .collect();
    ComplexTensor::new(order, diag.len(), entries).expect("diagonal tensor is well formed")
}

/// Random nonnegative tensor, irreducible by construction through a
/// positive cyclic chain a_{i,s,...,s} with s = i+1 mod n.
pub fn random_nonneg_irreducible<R: Rng>(rng: &mut R, order: usize, dim: usize) -> ComplexTensor {
    let mut map = std::collections::BTreeMap::new();
    for i in 0..dim {
        map.insert(vec![i; order], rng.gen_range(0.0..3.0));
    }
    for i in 0..dim {
        let mut idx = vec![(i + 1) % dim; order];
        idx[0] = i;
        map.insert(idx, rng.gen_range(0.5..2.0));
    }
    let extras = rng.gen_range(0..2 * dim);
    for _ in 0..extras {
        let idx: Vec<usize> = (0..order).map(|_| rng.gen_range(0..dim)).collect();
        map.entry(idx).or_insert_with(|| rng.gen_range(0.0..2.0));
    }
    let entries: Vec<_> = map
        .into_iter()
        .map(|(idx, v)| (idx, Complex64::new(v, 0.0)))
        .collect();
    ComplexTensor::new(order, dim, entries).expect("generated tensor is well formed")
}

/// Dense positive matrix as an order-2 tensor, plus its raw rows.
pub fn random_positive_matrix<R: Rng>(rng: &mut R, dim: usize) -> (ComplexTensor, Vec<Vec<f64>>) {
    let rows: Vec<Vec<f64>> = (0..dim)
        .map(|_| (0..dim).map(|_| rng.gen_range(0.05..3.0)).collect())
        .collect();
    let mut entries = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            entries.push((vec![i, j], Complex64::new(v, 0.0)));
        }
    }
    let a = ComplexTensor::new(2, dim, entries).expect("matrix is well formed");
    (a, rows)
}

/// Dominant root of the characteristic polynomial of a nonnegative
/// 2x2 matrix.
pub fn perron_root_2(m: &[Vec<f64>]) -> f64 {
    let (a, b, c, d) = (m[0][0], m[0][1], m[1][0], m[1][1]);
    let disc = (a - d) * (a - d) + 4.0 * b * c;
    (a + d + disc.max(0.0).sqrt()) / 2.0
}

/// Dominant root of the characteristic polynomial of a nonnegative
/// 3x3 matrix, via the largest real root of the cubic.
pub fn perron_root_3(m: &[Vec<f64>]) -> f64 {
    let tr = m[0][0] + m[1][1] + m[2][2];
    let minors = m[0][0] * m[1][1] - m[0][1] * m[1][0]
        + m[0][0] * m[2][2]
        - m[0][2] * m[2][0]
        + m[1][1] * m[2][2]
        - m[1][2] * m[2][1];
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    cubic_max_real_root(-tr, minors, -det)
}

/// Largest real root of x^3 + b x^2 + c x + d.
fn cubic_max_real_root(b: f64, c: f64, d: f64) -> f64 {
    let p = c - b * b / 3.0;
    let q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    let shift = -b / 3.0;
    let half = q / 2.0;
    let disc = half * half + p * p * p / 27.0;
    if disc > 0.0 {
        let s = disc.sqrt();
        (-half + s).cbrt() + (-half - s).cbrt() + shift
    } else {
        let r = (-p / 3.0).sqrt();
        if r == 0.0 {
            return shift;
        }
        let theta = (-half / (r * r * r)).clamp(-1.0, 1.0).acos();
        2.0 * r * (theta / 3.0).cos() + shift
    }
}

/// Comparison offset and matrix for an order-2 tensor, computed from
/// the raw rows without the tensor machinery.
pub fn matrix_comparison(rows: &[Vec<f64>], z: Complex64) -> (f64, Vec<Vec<f64>>) {
    let n = rows.len();
    let mu = (0..n)
        .map(|i| (z - rows[i][i]).norm())
        .fold(f64::NEG_INFINITY, f64::max);
    let c: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        mu - (z - rows[i][i]).norm()
                    } else {
                        rows[i][j].abs()
                    }
                })
                .collect()
        })
        .collect();
    (mu, c)
}
