//! Builders and independent oracles shared by the integration suites.

#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use tgs_core::ComplexTensor;

/// The order-3, dimension-3 running example used across the suites.
pub fn sample_tensor() -> ComplexTensor {
    let c = |re: f64| Complex64::new(re, 0.0);
    ComplexTensor::new(
        3,
        3,
        vec![
            (vec![0, 0, 0], c(2.0)),
            (vec![0, 1, 2], c(1.0)),
            (vec![0, 2, 2], c(1.0)),
            (vec![1, 1, 1], c(2.0)),
            (vec![1, 2, 0], c(1.0)),
            (vec![2, 0, 0], c(1.0)),
            (vec![2, 0, 1], c(1.0)),
            (vec![2, 1, 1], c(1.0)),
            (vec![2, 2, 2], c(1.0)),
        ],
    )
    .expect("sample tensor is well formed")
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

/// Random nonnegative tensor that is irreducible by construction: a
/// positive cyclic chain a_{i,s,...,s} with s = i+1 mod n defeats every
/// candidate reducing subset, and extra entries are sprinkled on top.
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

/// Random complex tensor with a handful of entries anywhere.
pub fn random_complex_tensor<R: Rng>(rng: &mut R, order: usize, dim: usize) -> ComplexTensor {
    let mut map = std::collections::BTreeMap::new();
    for i in 0..dim {
        map.insert(
            vec![i; order],
            Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)),
        );
    }
    let extras = rng.gen_range(dim..3 * dim);
    for _ in 0..extras {
        let idx: Vec<usize> = (0..order).map(|_| rng.gen_range(0..dim)).collect();
        map.entry(idx).or_insert_with(|| {
            Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))
        });
    }
    let entries: Vec<_> = map.into_iter().collect();
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

/// Random positive weight vector, entries in [0.25, 2].
pub fn random_weights<R: Rng>(rng: &mut R, dim: usize) -> Vec<f64> {
    (0..dim).map(|_| rng.gen_range(0.25..2.0)).collect()
}

/// Brute-force contraction over every index tuple, independent of the
/// sparse iteration in the library.
pub fn dense_apply(a: &ComplexTensor, x: &[Complex64]) -> Vec<Complex64> {
    let n = a.dim();
    let m = a.order();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    let mut tuple = vec![0usize; m - 1];
    loop {
        let weight: Complex64 = tuple.iter().map(|&j| x[j]).product();
        let mut index = Vec::with_capacity(m);
        index.push(0);
        index.extend_from_slice(&tuple);
        for (i, slot) in out.iter_mut().enumerate() {
            index[0] = i;
            *slot += a.get(&index) * weight;
        }
        let mut k = 0;
        loop {
            if k == tuple.len() {
                return out;
            }
            tuple[k] += 1;
            if tuple[k] < n {
                break;
            }
            tuple[k] = 0;
            k += 1;
        }
    }
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

/// Comparison data for a matrix computed directly from its rows,
/// bypassing the tensor machinery: the offset and the comparison
/// matrix rows.
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
