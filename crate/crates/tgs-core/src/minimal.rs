//! Membership oracle and boundary search for the minimal inclusion
//! region, the intersection of all weighted disk sets over positive
//! weight vectors.
//!
//! Everything rests on one scalar function of a complex point `z`. Take
//! `mu(z) = max_i |z - a[i,..,i]|` and form the nonnegative comparison
//! tensor `C(z)` with diagonal `mu - |z - a[i,..,i]|` and the moduli of
//! the off-diagonal entries elsewhere. Then `v(z) = rho(C(z)) - mu(z)` is
//! 1-Lipschitz in `z`, and `z` belongs to the minimal region exactly when
//! `v(z) >= 0`. The spectral bracket for `rho` therefore turns into a
//! certified bracket for `v`, and a point is classified `Inside` or
//! `Outside` only when the whole bracket sits on one side of zero.
//!
//! Boundary points are located along rays leaving a diagonal entry: `v`
//! is positive at the center of an irreducible tensor, so the first sign
//! change along the ray is bracketed by doubling expansion and narrowed
//! by bisection, keeping a certified nonnegative inner point and a
//! certified negative outer point at all times.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exec;
use crate::gersgorin::{point_anchored_set, DiskSet};
use crate::spectral::{nqz_spectral_radius, NqzOptions};
use crate::tensor::ComplexTensor;

/// Certified bracket `v_lower <= v(z) <= v_upper` together with the
/// iterate behind it.
#[derive(Clone, Debug)]
pub struct VEstimate {
    pub v_lower: f64,
    pub v_upper: f64,
    /// Final spectral iterate for the comparison tensor, max-norm 1.
    pub vector: Vec<f64>,
    pub converged: bool,
    /// The offset `mu(z)` used to build the comparison tensor.
    pub mu: f64,
}

impl VEstimate {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.v_lower + self.v_upper)
    }

    pub fn width(&self) -> f64 {
        self.v_upper - self.v_lower
    }
}

/// Three-way certified verdict for one point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The whole bracket is nonnegative.
    Inside,
    /// The whole bracket is negative.
    Outside,
    /// The bracket straddles zero.
    BoundaryBand,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::Inside => "Inside",
            Verdict::Outside => "Outside",
            Verdict::BoundaryBand => "BoundaryBand",
        };
        f.write_str(s)
    }
}

/// Membership verdict with the estimate that produced it.
#[derive(Clone, Debug)]
pub struct Membership {
    pub verdict: Verdict,
    pub estimate: VEstimate,
}

/// One certified boundary point along a ray from a diagonal entry.
#[derive(Clone, Debug)]
pub struct RayHit {
    pub center_index: usize,
    pub theta: f64,
    /// Certified distance of the sign change from the center.
    pub gamma: f64,
    /// The boundary point `diagonal + gamma * exp(i theta)`.
    pub w: Complex64,
    /// Largest probed distance with `v` not certified negative.
    pub t_inner: f64,
    /// Smallest probed distance with `v` certified negative.
    pub t_outer: f64,
    pub bracket_width: f64,
}

/// Outer approximation of the minimal region: one anchored disk set per
/// boundary point, intersected.
#[derive(Clone, Debug)]
pub struct RegionApprox {
    pub anchors: Vec<RayHit>,
    pub sets: Vec<DiskSet>,
}

impl RegionApprox {
    /// Membership in the intersection of all anchored sets.
    pub fn contains(&self, z: Complex64) -> bool {
        self.contains_with_margin(z, 0.0)
    }

    pub fn contains_with_margin(&self, z: Complex64, margin: f64) -> bool {
        self.sets
            .iter()
            .all(|set| set.contains_with_margin(z, margin))
    }
}

/// Search parameters for the ray boundary search.
#[derive(Clone, Debug)]
pub struct RayOptions {
    /// Absolute width of the final distance bracket.
    pub t_tol: f64,
    /// Tolerance handed to the spectral bracket at every probe.
    pub v_tol: f64,
    /// Doubling steps allowed before giving up.
    pub max_expansions: usize,
    /// Override for the first expansion step; defaults to the certified
    /// lower bound of `v` at the center.
    pub initial_step: Option<f64>,
}

impl Default for RayOptions {
    fn default() -> Self {
        RayOptions {
            t_tol: 1e-8,
            v_tol: 1e-10,
            max_expansions: 64,
            initial_step: None,
        }
    }
}

/// Splits a point into `(mu, C, B)`: the offset `mu(z)`, the nonnegative
/// comparison tensor `C(z)` and the shifted tensor `B(z) = C - mu I`.
/// `C` inherits the off-diagonal sparsity pattern of `a`, hence also its
/// irreducibility.
pub fn build_comparison(a: &ComplexTensor, z: Complex64) -> (f64, ComplexTensor, ComplexTensor) {
    let n = a.dim();
    let m = a.order();
    let distances: Vec<f64> = (0..n).map(|i| (z - a.diagonal(i)).norm()).collect();
    let mu = distances.iter().cloned().fold(0.0, f64::max);
    let real = |x: f64| Complex64::new(x, 0.0);
    let mut c_entries = Vec::with_capacity(a.nnz() + n);
    let mut b_entries = Vec::with_capacity(a.nnz() + n);
    for i in 0..n {
        c_entries.push((vec![i; m], real(mu - distances[i])));
        b_entries.push((vec![i; m], real(-distances[i])));
    }
    for (index, value) in a.entries() {
        if !index.is_diagonal() {
            let modulus = real(value.norm());
            c_entries.push((index.components().to_vec(), modulus));
            b_entries.push((index.components().to_vec(), modulus));
        }
    }
    let c = ComplexTensor::new(m, n, c_entries).expect("comparison shape is valid");
    let b = ComplexTensor::new(m, n, b_entries).expect("comparison shape is valid");
    (mu, c, b)
}

/// Certified bracket for `v(z)` with the default iteration settings and
/// the given bracket tolerance.
pub fn v_of_z(a: &ComplexTensor, z: Complex64, tol: f64) -> VEstimate {
    v_of_z_with(
        a,
        z,
        &NqzOptions {
            tol,
            ..NqzOptions::default()
        },
    )
    .expect("default iteration settings are valid")
}

/// Certified bracket for `v(z)` with full control over the iteration.
pub fn v_of_z_with(a: &ComplexTensor, z: Complex64, opts: &NqzOptions) -> Result<VEstimate> {
    let (mu, c, _) = build_comparison(a, z);
    let est = nqz_spectral_radius(&c, opts)?;
    Ok(VEstimate {
        v_lower: est.rho_lower - mu,
        v_upper: est.rho_upper - mu,
        vector: est.vector,
        converged: est.converged,
        mu,
    })
}

/// Classifies a point against the minimal region.
pub fn mgs_membership(a: &ComplexTensor, z: Complex64, tol: f64) -> Membership {
    let estimate = v_of_z(a, z, tol);
    let verdict = if estimate.v_lower >= 0.0 {
        Verdict::Inside
    } else if estimate.v_upper < 0.0 {
        Verdict::Outside
    } else {
        Verdict::BoundaryBand
    };
    Membership { verdict, estimate }
}

/// Brackets of `v` at every diagonal entry. These are the search radii
/// the boundary rays start from.
pub fn v_diag(a: &ComplexTensor, tol: f64) -> Vec<VEstimate> {
    (0..a.dim()).map(|i| v_of_z(a, a.diagonal(i), tol)).collect()
}

/// Indices of the first occurrence of each distinct diagonal value, in
/// index order. Ray fans from coincident centers would duplicate work.
pub fn dedup_centers(a: &ComplexTensor) -> Vec<usize> {
    let mut seen: Vec<Complex64> = Vec::new();
    let mut keep = Vec::new();
    for i in 0..a.dim() {
        let d = a.diagonal(i);
        if !seen.contains(&d) {
            seen.push(d);
            keep.push(i);
        }
    }
    keep
}

fn ray_boundary_unchecked(
    a: &ComplexTensor,
    center_index: usize,
    theta: f64,
    opts: &RayOptions,
) -> Result<RayHit> {
    let center = a.diagonal(center_index);
    let direction = Complex64::from_polar(1.0, theta);
    let v_at = |t: f64| v_of_z(a, center + direction * t, opts.v_tol);
    // v at the center is positive for irreducible input and 1-Lipschitz,
    // so no sign change can occur before its certified lower bound.
    let t0 = v_at(0.0).v_lower.max(0.0);
    let mut t_inner = t0;
    let mut t_outer = None;
    let mut step = opts
        .initial_step
        .unwrap_or(t0)
        .max(opts.t_tol)
        .max(1e-12 * (1.0 + center.norm()));
    let mut probe = t0;
    for _ in 0..opts.max_expansions {
        probe += step;
        step *= 2.0;
        if v_at(probe).v_upper < 0.0 {
            t_outer = Some(probe);
            break;
        }
        t_inner = probe;
    }
    let Some(mut t_outer) = t_outer else {
        return Err(Error::ExpansionOverflow {
            expansions: opts.max_expansions,
        });
    };
    while t_outer - t_inner > opts.t_tol {
        let mid = 0.5 * (t_inner + t_outer);
        if mid <= t_inner || mid >= t_outer {
            break;
        }
        if v_at(mid).v_upper < 0.0 {
            t_outer = mid;
        } else {
            t_inner = mid;
        }
    }
    let gamma = 0.5 * (t_inner + t_outer);
    Ok(RayHit {
        center_index,
        theta,
        gamma,
        w: center + direction * gamma,
        t_inner,
        t_outer,
        bracket_width: t_outer - t_inner,
    })
}

/// Locates the first certified sign change of `t -> v(center + t e^{i
/// theta})` beyond the Lipschitz exclusion radius. Requires an
/// irreducible tensor so that the search starts strictly inside.
pub fn ray_boundary(
    a: &ComplexTensor,
    center_index: usize,
    theta: f64,
    opts: &RayOptions,
) -> Result<RayHit> {
    if center_index >= a.dim() {
        return Err(Error::IndexOutOfRange {
            index: vec![center_index],
            dim: a.dim(),
        });
    }
    if !a.is_irreducible() {
        return Err(Error::NotIrreducible);
    }
    ray_boundary_unchecked(a, center_index, theta, opts)
}

/// Runs the boundary search for every `(center index, angle)` pair and
/// intersects the anchored disk sets of the hits. Rays are evaluated
/// independently, in parallel when the `parallel` feature is active.
pub fn approx_region(
    a: &ComplexTensor,
    rays: &[(usize, f64)],
    opts: &RayOptions,
) -> Result<RegionApprox> {
    for &(j, _) in rays {
        if j >= a.dim() {
            return Err(Error::IndexOutOfRange {
                index: vec![j],
                dim: a.dim(),
            });
        }
    }
    if !a.is_irreducible() {
        return Err(Error::NotIrreducible);
    }
    let hits = exec::map(rays.len(), |k| {
        let (j, theta) = rays[k];
        ray_boundary_unchecked(a, j, theta, opts)
    });
    let mut anchors = Vec::with_capacity(hits.len());
    for hit in hits {
        anchors.push(hit?);
    }
    let sets = anchors
        .iter()
        .enumerate()
        .map(|(k, hit)| {
            let mut set = point_anchored_set(a, hit.w);
            set.label = format!("Gamma^w{}", k + 1);
            set
        })
        .collect();
    Ok(RegionApprox { anchors, sets })
}
