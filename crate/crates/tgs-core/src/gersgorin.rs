//! Gersgorin-type inclusion sets: unions of closed disks in the complex
//! plane, one disk per index.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tensor::ComplexTensor;

/// Closed disk `{ z : |z - center| <= radius }`.
#[derive(Clone, Debug, PartialEq)]
pub struct Disk {
    pub center: Complex64,
    pub radius: f64,
}

impl Disk {
    pub fn contains(&self, z: Complex64) -> bool {
        (z - self.center).norm() <= self.radius
    }
}

/// A labelled union of disks, one per tensor index.
#[derive(Clone, Debug, PartialEq)]
pub struct DiskSet {
    pub label: String,
    pub disks: Vec<Disk>,
}

/// Axis-aligned rectangle in the complex plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rect {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl Rect {
    pub fn new(xmin: f64, xmax: f64, ymin: f64, ymax: f64) -> Result<Self> {
        let r = Rect {
            xmin,
            xmax,
            ymin,
            ymax,
        };
        if !(xmin.is_finite() && xmax.is_finite() && ymin.is_finite() && ymax.is_finite())
            || !(xmin < xmax)
            || !(ymin < ymax)
        {
            return Err(Error::BadBox {
                detail: format!("[{xmin}, {xmax}] x [{ymin}, {ymax}] is degenerate"),
            });
        }
        Ok(r)
    }

    pub fn width(&self) -> f64 {
        self.xmax - self.xmin
    }

    pub fn height(&self) -> f64 {
        self.ymax - self.ymin
    }
}

/// The classical disk set: centers on the diagonal, radii the
/// off-diagonal absolute row sums.
pub fn gersgorin(a: &ComplexTensor) -> DiskSet {
    let disks = (0..a.dim())
        .map(|i| Disk {
            center: a.diagonal(i),
            radius: a.row_sum(i).expect("index is in range"),
        })
        .collect();
    DiskSet {
        label: "Gamma".to_string(),
        disks,
    }
}

/// Disk set with radii taken from the weighted row sums for an entrywise
/// positive weight vector. Coincides with `gersgorin` of the diagonally
/// rescaled tensor.
pub fn weighted_gersgorin(a: &ComplexTensor, x: &[f64]) -> Result<DiskSet> {
    let disks = (0..a.dim())
        .map(|i| {
            Ok(Disk {
                center: a.diagonal(i),
                radius: a.weighted_row_sum(i, x)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DiskSet {
        label: "Gamma^x".to_string(),
        disks,
    })
}

/// Disk set anchored at a point `w`: each disk around a diagonal entry
/// reaches exactly to `w`. Every such set contains the minimal region,
/// so intersections of them approximate it from outside.
pub fn point_anchored_set(a: &ComplexTensor, w: Complex64) -> DiskSet {
    let disks = (0..a.dim())
        .map(|i| {
            let center = a.diagonal(i);
            Disk {
                center,
                radius: (w - center).norm(),
            }
        })
        .collect();
    DiskSet {
        label: "Gamma^w".to_string(),
        disks,
    }
}

impl DiskSet {
    /// Membership in the union of the closed disks.
    pub fn contains(&self, z: Complex64) -> bool {
        self.contains_with_margin(z, 0.0)
    }

    /// Membership with every radius enlarged by `margin`.
    pub fn contains_with_margin(&self, z: Complex64, margin: f64) -> bool {
        self.disks
            .iter()
            .any(|d| (z - d.center).norm() <= d.radius + margin)
    }

    /// Smallest axis-aligned rectangle covering all disks, padded on each
    /// side by `pad_fraction` of the larger side length.
    pub fn bounding_box(&self, pad_fraction: f64) -> Rect {
        assert!(!self.disks.is_empty(), "disk set has no disks");
        assert!(pad_fraction >= 0.0, "padding must be nonnegative");
        let mut xmin = f64::INFINITY;
        let mut xmax = f64::NEG_INFINITY;
        let mut ymin = f64::INFINITY;
        let mut ymax = f64::NEG_INFINITY;
        for d in &self.disks {
            xmin = xmin.min(d.center.re - d.radius);
            xmax = xmax.max(d.center.re + d.radius);
            ymin = ymin.min(d.center.im - d.radius);
            ymax = ymax.max(d.center.im + d.radius);
        }
        let pad = pad_fraction * (xmax - xmin).max(ymax - ymin);
        Rect {
            xmin: xmin - pad,
            xmax: xmax + pad,
            ymin: ymin - pad,
            ymax: ymax + pad,
        }
    }
}
