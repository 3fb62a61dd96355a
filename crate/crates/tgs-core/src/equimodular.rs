//! The equimodular family of a tensor and the witness constructions
//! that realize points of the minimal region as exact eigenvalues.
//!
//! A member of the equimodular set keeps the diagonal and the moduli of
//! all off-diagonal entries; the extended set allows the moduli to
//! shrink. Every eigenvalue of every member lies in the minimal region,
//! and conversely every point of the region is an eigenvalue of some
//! extended member. The constructions here are effective: given a point
//! and the Perron vector of its comparison tensor, a member with that
//! exact eigenpair is assembled from row phases `psi_k = arg(z -
//! a[k,..,k])` and, for interior points, row scalings `mu_k` that
//! restore the balance between `|z - a[k,..,k]|` and the weighted
//! off-diagonal row sum.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::minimal::{v_of_z, VEstimate};
use crate::tensor::{eigenpair_residual, ComplexTensor, EigenPair};

/// Which modulus invariant a member satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EquimodularKind {
    /// Off-diagonal moduli equal the reference moduli.
    Exact,
    /// Off-diagonal moduli bounded by the reference moduli.
    Extended,
}

impl std::fmt::Display for EquimodularKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            EquimodularKind::Exact => "Exact",
            EquimodularKind::Extended => "Extended",
        })
    }
}

/// A tensor together with the family it was verified to belong to.
#[derive(Clone, Debug)]
pub struct EquimodularMember {
    pub tensor: ComplexTensor,
    pub kind: EquimodularKind,
    /// How the member was produced: `"sampled"` or `"witness"`.
    pub provenance: String,
}

const MODULUS_TOL: f64 = 1e-12;

impl EquimodularMember {
    /// Direct scan of the modulus invariant against the reference
    /// tensor: diagonal preserved exactly, off-diagonal moduli equal
    /// (`Exact`) or bounded (`Extended`) within 1e-12.
    pub fn verify(&self, reference: &ComplexTensor) -> bool {
        if self.tensor.order() != reference.order() || self.tensor.dim() != reference.dim() {
            return false;
        }
        for i in 0..reference.dim() {
            if self.tensor.diagonal(i) != reference.diagonal(i) {
                return false;
            }
        }
        for (index, value) in self.tensor.entries() {
            if index.is_diagonal() {
                continue;
            }
            let bound = reference.get(index.components()).norm();
            let modulus = value.norm();
            let ok = match self.kind {
                EquimodularKind::Exact => (modulus - bound).abs() <= MODULUS_TOL,
                EquimodularKind::Extended => modulus <= bound + MODULUS_TOL,
            };
            if !ok {
                return false;
            }
        }
        if self.kind == EquimodularKind::Exact {
            for (index, value) in reference.entries() {
                if index.is_diagonal() {
                    continue;
                }
                let kept = self.tensor.get(index.components()).norm();
                if (kept - value.norm()).abs() > MODULUS_TOL {
                    return false;
                }
            }
        }
        true
    }
}

/// Phase assignment for the off-diagonal entries.
#[derive(Clone, Debug)]
pub enum PhaseSpec {
    /// One angle for every off-diagonal entry.
    Uniform(f64),
    /// One angle per row, indexed by the first component.
    PerRow(Vec<f64>),
    /// Independent uniform angles in `[0, 2pi)` from a seeded stream.
    Seeded(u64),
}

/// Scaling assignment for the off-diagonal entries, factors in `[0, 1]`.
#[derive(Clone, Debug)]
pub enum ScaleSpec {
    Uniform(f64),
    PerRow(Vec<f64>),
    /// Independent uniform factors in `[0, 1)` from a seeded stream.
    Seeded(u64),
}

fn offdiag_rows(a: &ComplexTensor) -> Vec<usize> {
    a.entries()
        .filter(|(index, _)| !index.is_diagonal())
        .map(|(index, _)| index.first())
        .collect()
}

fn resolve_phases(a: &ComplexTensor, spec: &PhaseSpec) -> Result<Vec<f64>> {
    let rows = offdiag_rows(a);
    match spec {
        PhaseSpec::Uniform(angle) => Ok(vec![*angle; rows.len()]),
        PhaseSpec::PerRow(angles) => {
            if angles.len() != a.dim() {
                return Err(Error::DimensionMismatch {
                    expected: a.dim(),
                    got: angles.len(),
                });
            }
            Ok(rows.into_iter().map(|k| angles[k]).collect())
        }
        PhaseSpec::Seeded(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            Ok((0..rows.len())
                .map(|_| rng.gen::<f64>() * std::f64::consts::TAU)
                .collect())
        }
    }
}

fn resolve_scales(a: &ComplexTensor, spec: &ScaleSpec) -> Result<Vec<f64>> {
    let check = |index: usize, value: f64| {
        if (0.0..=1.0).contains(&value) {
            Ok(value)
        } else {
            Err(Error::ScaleOutOfRange { index, value })
        }
    };
    let rows = offdiag_rows(a);
    match spec {
        ScaleSpec::Uniform(factor) => {
            check(0, *factor)?;
            Ok(vec![*factor; rows.len()])
        }
        ScaleSpec::PerRow(factors) => {
            if factors.len() != a.dim() {
                return Err(Error::DimensionMismatch {
                    expected: a.dim(),
                    got: factors.len(),
                });
            }
            for (k, &f) in factors.iter().enumerate() {
                check(k, f)?;
            }
            Ok(rows.into_iter().map(|k| factors[k]).collect())
        }
        ScaleSpec::Seeded(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            Ok((0..rows.len()).map(|_| rng.gen::<f64>()).collect())
        }
    }
}

fn assemble(
    a: &ComplexTensor,
    scales: Option<&[f64]>,
    phases: Option<&[f64]>,
    kind: EquimodularKind,
    provenance: &str,
) -> EquimodularMember {
    let mut entries = Vec::with_capacity(a.nnz() + a.dim());
    for i in 0..a.dim() {
        entries.push((vec![i; a.order()], a.diagonal(i)));
    }
    let mut slot = 0;
    for (index, value) in a.entries() {
        if index.is_diagonal() {
            continue;
        }
        let factor = scales.map_or(1.0, |s| s[slot]);
        let rotated = match phases {
            Some(p) => Complex64::from_polar(factor * value.norm(), p[slot]),
            None => value * factor,
        };
        slot += 1;
        entries.push((index.components().to_vec(), rotated));
    }
    let tensor = ComplexTensor::new(a.order(), a.dim(), entries).expect("member shape is valid");
    let member = EquimodularMember {
        tensor,
        kind,
        provenance: provenance.to_string(),
    };
    debug_assert!(member.verify(a), "constructed member must pass its scan");
    member
}

/// Member of the equimodular set: off-diagonal entries replaced by
/// their moduli rotated by the assigned phases, diagonal kept.
pub fn sample_equimodular(a: &ComplexTensor, phases: &PhaseSpec) -> Result<EquimodularMember> {
    let p = resolve_phases(a, phases)?;
    Ok(assemble(a, None, Some(&p), EquimodularKind::Exact, "sampled"))
}

/// Member of the extended set: off-diagonal entries scaled into the
/// reference moduli, optionally also rotated.
pub fn sample_hat_equimodular(
    a: &ComplexTensor,
    scales: &ScaleSpec,
    phases: Option<&PhaseSpec>,
) -> Result<EquimodularMember> {
    let s = resolve_scales(a, scales)?;
    let p = match phases {
        Some(spec) => Some(resolve_phases(a, spec)?),
        None => None,
    };
    Ok(assemble(
        a,
        Some(&s),
        p.as_deref(),
        EquimodularKind::Extended,
        "sampled",
    ))
}

/// Row phases `psi_k = arg(z - a[k,..,k])`, with `arg(0) = 0`.
pub fn phases(a: &ComplexTensor, z: Complex64) -> Vec<f64> {
    (0..a.dim())
        .map(|k| {
            let d = z - a.diagonal(k);
            if d.norm() == 0.0 {
                0.0
            } else {
                d.arg()
            }
        })
        .collect()
}

fn validated_weights(a: &ComplexTensor, y: &[f64]) -> Result<Vec<f64>> {
    if y.len() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: y.len(),
        });
    }
    for (i, &value) in y.iter().enumerate() {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::NotNonnegative { index: vec![i] });
        }
    }
    let max = y.iter().cloned().fold(0.0, f64::max);
    if max == 0.0 {
        return Err(Error::NonPositiveStart {
            index: 0,
            value: 0.0,
        });
    }
    Ok(y.iter().map(|&v| v / max).collect())
}

/// Weighted off-diagonal modulus row sums `sum |a| y_{k2} .. y_{km}`.
fn offdiag_weighted_sums(a: &ComplexTensor, y: &[f64]) -> Vec<f64> {
    let mut sums = vec![0.0; a.dim()];
    for (index, value) in a.entries() {
        if index.is_diagonal() {
            continue;
        }
        let product: f64 = index.rest().iter().map(|&j| y[j]).product();
        sums[index.first()] += value.norm() * product;
    }
    sums
}

/// Largest row defect of the balance `|z - a[k,..,k]| y_k^{m-1} = sum
/// |a| y_{k2} .. y_{km}` after max-norm normalization of `y`.
pub fn balance_residual(a: &ComplexTensor, z: Complex64, y: &[f64]) -> Result<f64> {
    let y = validated_weights(a, y)?;
    Ok(balance_rows(a, z, &y)
        .into_iter()
        .fold(0.0, f64::max))
}

fn balance_rows(a: &ComplexTensor, z: Complex64, y: &[f64]) -> Vec<f64> {
    let power = (a.order() - 1) as i32;
    let sums = offdiag_weighted_sums(a, y);
    (0..a.dim())
        .map(|k| {
            let lhs = (z - a.diagonal(k)).norm() * y[k].powi(power);
            (lhs - sums[k]).abs()
        })
        .collect()
}

fn default_threshold(a: &ComplexTensor, z: Complex64, y: &[f64]) -> f64 {
    let power = (a.order() - 1) as i32;
    let weight = y.iter().cloned().fold(0.0, f64::max).powi(power);
    1e-6 * 1.0_f64.max(z.norm()).max(weight)
}

fn boundary_witness_inner(
    a: &ComplexTensor,
    z: Complex64,
    y: &[f64],
    threshold: f64,
    kind: EquimodularKind,
) -> Result<(EquimodularMember, EigenPair)> {
    let y = validated_weights(a, y)?;
    let residual = balance_rows(a, z, &y).into_iter().fold(0.0, f64::max);
    if residual > threshold {
        return Err(Error::NotBalanced {
            residual,
            threshold,
        });
    }
    let psi = phases(a, z);
    let rows = offdiag_rows(a);
    let entry_phases: Vec<f64> = rows.into_iter().map(|k| psi[k]).collect();
    let mut member = assemble(a, None, Some(&entry_phases), EquimodularKind::Exact, "witness");
    member.kind = kind;
    let pair = EigenPair {
        value: z,
        vector: y.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
    };
    let eigen_residual =
        eigenpair_residual(&member.tensor, &pair).expect("pair has the tensor's dimension");
    debug_assert!(
        eigen_residual <= 10.0 * (residual + 1e-12),
        "phase construction must turn the balance defect {residual:e} into an \
         eigen defect, got {eigen_residual:e}"
    );
    Ok((member, pair))
}

/// Realizes a boundary point `z` (where `v(z) = 0`) as an exact
/// eigenvalue of an equimodular member, given the Perron vector of the
/// comparison tensor at `z`. The balance between diagonal distances and
/// weighted row sums is checked first and `NotBalanced` is returned if
/// `y` does not certify the point.
pub fn boundary_witness(
    a: &ComplexTensor,
    z: Complex64,
    y: &[f64],
) -> Result<(EquimodularMember, EigenPair)> {
    let threshold = default_threshold(a, z, y);
    boundary_witness_inner(a, z, y, threshold, EquimodularKind::Exact)
}

struct InteriorWitness {
    member: EquimodularMember,
    pair: EigenPair,
    mu: Vec<f64>,
    estimate: VEstimate,
}

fn interior_witness_full(a: &ComplexTensor, z: Complex64, tol: f64) -> Result<InteriorWitness> {
    assert!(tol > 0.0, "tolerance must be positive");
    let estimate = v_of_z(a, z, tol);
    if estimate.v_upper < 0.0 {
        return Err(Error::OutsideRegion {
            v_upper: estimate.v_upper,
        });
    }
    let y = estimate.vector.clone();
    let v = estimate.midpoint().max(0.0);
    let power = (a.order() - 1) as i32;
    let sums = offdiag_weighted_sums(a, &y);
    let scale = 1.0_f64.max(z.norm()).max(estimate.mu + v);
    let slack = 1e-6 * scale;
    let mut mu = Vec::with_capacity(a.dim());
    for k in 0..a.dim() {
        let factor = if sums[k] > 0.0 {
            (sums[k] - v * y[k].powi(power)) / sums[k]
        } else {
            1.0
        };
        assert!(
            (-slack..=1.0 + slack).contains(&factor),
            "row scaling {factor} at row {k} escaped [0, 1]"
        );
        mu.push(factor.clamp(0.0, 1.0));
    }
    let rows = offdiag_rows(a);
    let entry_scales: Vec<f64> = rows.into_iter().map(|k| mu[k]).collect();
    let scaled = assemble(a, Some(&entry_scales), None, EquimodularKind::Extended, "witness");
    let exact = mu.iter().all(|&f| f >= 1.0 - MODULUS_TOL);
    let kind = if exact {
        EquimodularKind::Exact
    } else {
        EquimodularKind::Extended
    };
    let threshold = default_threshold(a, z, &y).max(10.0 * tol * scale);
    let (member, pair) = boundary_witness_inner(&scaled.tensor, z, &y, threshold, kind)?;
    debug_assert!(member.verify(a), "interior member must scan against the reference");
    let residual = eigenpair_residual(&member.tensor, &pair).expect("dimensions agree");
    debug_assert!(
        residual <= 10.0 * tol * scale + 1e-9,
        "witness residual {residual:e} above 10 tol scale"
    );
    Ok(InteriorWitness {
        member,
        pair,
        mu,
        estimate,
    })
}

/// Realizes any point of the region (interior included) as an exact
/// eigenvalue of an extended member: off-diagonal rows are first scaled
/// by `mu_k` so the balance holds, then the phase construction is
/// applied to the scaled tensor.
pub fn interior_witness(
    a: &ComplexTensor,
    z: Complex64,
    tol: f64,
) -> Result<(EquimodularMember, EigenPair)> {
    let w = interior_witness_full(a, z, tol)?;
    Ok((w.member, w.pair))
}

/// Everything the witness constructions produce for one point, in
/// report form.
#[derive(Clone, Debug)]
pub struct WitnessReport {
    pub z: Complex64,
    pub v_bracket: (f64, f64),
    pub mu: Vec<f64>,
    pub psi: Vec<f64>,
    pub residual: f64,
    pub kind: EquimodularKind,
    pub member: EquimodularMember,
    pub pair: EigenPair,
}

/// Runs the witness construction appropriate for `z` and packages the
/// result. Points certified outside the region are rejected.
pub fn witness_report(a: &ComplexTensor, z: Complex64, tol: f64) -> Result<WitnessReport> {
    let w = interior_witness_full(a, z, tol)?;
    let residual = eigenpair_residual(&w.member.tensor, &w.pair).expect("dimensions agree");
    Ok(WitnessReport {
        z,
        v_bracket: (w.estimate.v_lower, w.estimate.v_upper),
        mu: w.mu,
        psi: phases(a, z),
        residual,
        kind: w.member.kind,
        member: w.member,
        pair: w.pair,
    })
}
