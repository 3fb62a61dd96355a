//! Certified eigenvalue inclusion regions for complex tensors.
//!
//! For an order-`m`, dimension-`n` complex tensor `A`, the eigenvalues
//! defined by `A x^{m-1} = lambda x^{[m-1]}` lie in the union of disks
//! centered at the diagonal entries with off-diagonal modulus row sums
//! as radii. Positive weight vectors reshape those radii, and the
//! intersection over all weightings is a minimal inclusion region.
//! This crate computes all three:
//!
//! * [`gersgorin`] builds the disk sets and their weighted variants;
//! * [`minimal`] decides membership in the minimal region through a
//!   scalar function `v(z)` with certified lower and upper bounds, and
//!   locates boundary points by bisection along rays;
//! * [`spectral`] supplies the underlying bracketed power iteration for
//!   spectral radii of nonnegative tensors;
//! * [`equimodular`] realizes region points as exact eigenvalues of
//!   tensors with matching entry moduli;
//! * [`raster`] and [`plot`] classify grids of points and render
//!   deterministic SVG figures;
//! * [`io`] fixes the JSON and CSV file formats (1-based indices).
//!
//! Every numerical claim is bracketed: a point is declared inside or
//! outside only when the whole bracket agrees, and boundary distances
//! come with certified enclosures. Grid and ray evaluations run in
//! parallel by default; disable the `parallel` feature for a
//! sequential build, or set `TGS_THREADS` to cap the pool.

pub mod equimodular;
pub mod error;
mod exec;
pub mod gersgorin;
pub mod io;
pub mod minimal;
pub mod plot;
pub mod raster;
pub mod spectral;
pub mod tensor;

pub use equimodular::{
    boundary_witness, interior_witness, sample_equimodular, sample_hat_equimodular,
    witness_report, EquimodularKind, EquimodularMember, PhaseSpec, ScaleSpec, WitnessReport,
};
pub use error::{Error, Result};
pub use gersgorin::{gersgorin, point_anchored_set, weighted_gersgorin, Disk, DiskSet, Rect};
pub use minimal::{
    approx_region, dedup_centers, mgs_membership, ray_boundary, v_diag, v_of_z, v_of_z_with,
    Membership, RayHit, RayOptions, RegionApprox, VEstimate, Verdict,
};
pub use plot::{emit_svg, svg_document, Layer, LayerSource, PlotSpec, Style};
pub use raster::{
    extract_contours, raster_disk_sets, raster_membership, raster_membership_seq, CellClass,
    DiskSetMode, Polyline, RasterGrid,
};
pub use spectral::{
    collatz_wielandt_bounds, nqz_spectral_radius, nqz_with_trace, NqzOptions, SpectralEstimate,
};
pub use tensor::{
    eigenpair_residual, ComplexTensor, EigenPair, Irreducibility, IrreducibilityReport,
    MultiIndex, EXACT_ENUMERATION_LIMIT,
};
