//! Grid classification of inclusion regions over a rectangle of the
//! complex plane, and contour extraction from the classified grid.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exec;
use crate::gersgorin::{DiskSet, Rect};
use crate::minimal::{mgs_membership, Verdict};
use crate::tensor::ComplexTensor;

/// Certified three-way classification of one grid node.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellClass {
    Inside,
    Outside,
    /// The membership bracket straddles zero at this node.
    Band,
}

impl From<Verdict> for CellClass {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::Inside => CellClass::Inside,
            Verdict::Outside => CellClass::Outside,
            Verdict::BoundaryBand => CellClass::Band,
        }
    }
}

/// Node-centered classification grid. Node `(p, q)` sits at
/// `xmin + p dx + i (ymin + q dy)` with `dx = width / (nx - 1)`.
#[derive(Clone, Debug)]
pub struct RasterGrid {
    rect: Rect,
    nx: usize,
    ny: usize,
    cells: Vec<CellClass>,
}

impl RasterGrid {
    pub fn new(rect: Rect, nx: usize, ny: usize, cells: Vec<CellClass>) -> Result<Self> {
        check_resolution(nx, ny)?;
        if cells.len() != nx * ny {
            return Err(Error::BadBox {
                detail: format!(
                    "grid of {}x{} needs {} cells, got {}",
                    nx,
                    ny,
                    nx * ny,
                    cells.len()
                ),
            });
        }
        Ok(RasterGrid { rect, nx, ny, cells })
    }

    pub fn rect(&self) -> &Rect {
        &self.rect
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn dx(&self) -> f64 {
        self.rect.width() / (self.nx - 1) as f64
    }

    pub fn dy(&self) -> f64 {
        self.rect.height() / (self.ny - 1) as f64
    }

    pub fn node(&self, p: usize, q: usize) -> Complex64 {
        Complex64::new(
            self.rect.xmin + p as f64 * self.dx(),
            self.rect.ymin + q as f64 * self.dy(),
        )
    }

    pub fn class(&self, p: usize, q: usize) -> CellClass {
        self.cells[q * self.nx + p]
    }

    /// Row `q` of the grid, nodes in `p` order.
    pub fn row(&self, q: usize) -> &[CellClass] {
        &self.cells[q * self.nx..(q + 1) * self.nx]
    }

    pub fn count(&self, class: CellClass) -> usize {
        self.cells.iter().filter(|&&c| c == class).count()
    }
}

fn check_resolution(nx: usize, ny: usize) -> Result<()> {
    if nx < 2 || ny < 2 {
        return Err(Error::BadBox {
            detail: format!("resolution {nx}x{ny} is below the 2x2 minimum"),
        });
    }
    Ok(())
}

/// Classifies every grid node against the minimal region with certified
/// brackets. Nodes are evaluated independently, in parallel when the
/// `parallel` feature is active; the output does not depend on the
/// schedule.
pub fn raster_membership(
    a: &ComplexTensor,
    rect: &Rect,
    nx: usize,
    ny: usize,
    tol: f64,
) -> Result<RasterGrid> {
    check_resolution(nx, ny)?;
    let grid = RasterGrid {
        rect: *rect,
        nx,
        ny,
        cells: Vec::new(),
    };
    let cells = exec::map(nx * ny, |k| {
        let z = grid.node(k % nx, k / nx);
        CellClass::from(mgs_membership(a, z, tol).verdict)
    });
    RasterGrid::new(*rect, nx, ny, cells)
}

/// Sequential variant of [`raster_membership`], kept for comparison
/// benchmarks and schedule-independence tests.
pub fn raster_membership_seq(
    a: &ComplexTensor,
    rect: &Rect,
    nx: usize,
    ny: usize,
    tol: f64,
) -> Result<RasterGrid> {
    check_resolution(nx, ny)?;
    let grid = RasterGrid {
        rect: *rect,
        nx,
        ny,
        cells: Vec::new(),
    };
    let cells = exec::map_seq(nx * ny, |k| {
        let z = grid.node(k % nx, k / nx);
        CellClass::from(mgs_membership(a, z, tol).verdict)
    });
    RasterGrid::new(*rect, nx, ny, cells)
}

/// How a list of disk sets is combined into one region.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiskSetMode {
    /// A node is inside when any disk of any set contains it.
    UnionOfEach,
    /// A node is inside when every set's union of disks contains it.
    IntersectionOfUnions,
}

/// Classifies grid nodes against disk sets by exact disk arithmetic;
/// no tolerance band is produced.
pub fn raster_disk_sets(
    sets: &[DiskSet],
    mode: DiskSetMode,
    rect: &Rect,
    nx: usize,
    ny: usize,
) -> Result<RasterGrid> {
    assert!(!sets.is_empty(), "disk rasterization needs at least one set");
    check_resolution(nx, ny)?;
    let mut cells = Vec::with_capacity(nx * ny);
    let dx = rect.width() / (nx - 1) as f64;
    let dy = rect.height() / (ny - 1) as f64;
    for q in 0..ny {
        for p in 0..nx {
            let z = Complex64::new(rect.xmin + p as f64 * dx, rect.ymin + q as f64 * dy);
            let inside = match mode {
                DiskSetMode::UnionOfEach => sets.iter().any(|s| s.contains(z)),
                DiskSetMode::IntersectionOfUnions => sets.iter().all(|s| s.contains(z)),
            };
            cells.push(if inside {
                CellClass::Inside
            } else {
                CellClass::Outside
            });
        }
    }
    RasterGrid::new(*rect, nx, ny, cells)
}

/// Contour chain in world coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Polyline {
    pub points: Vec<(f64, f64)>,
    pub closed: bool,
}

/// A grid edge between two adjacent nodes, identified by orientation
/// (0 horizontal, 1 vertical) and the lower-left node.
type EdgeId = (u8, usize, usize);

fn edge_point(grid: &RasterGrid, edge: EdgeId) -> (f64, f64) {
    let (orientation, p, q) = edge;
    let x = grid.rect.xmin + p as f64 * grid.dx();
    let y = grid.rect.ymin + q as f64 * grid.dy();
    if orientation == 0 {
        (x + 0.5 * grid.dx(), y)
    } else {
        (x, y + 0.5 * grid.dy())
    }
}

/// Marching-squares contours of the inside/outside transition. `Band`
/// nodes count as inside, so the contours trace the certified outer
/// face of the band. Chains are deterministic: cells are scanned in row
/// order, and walks start from the smallest open endpoint first.
pub fn extract_contours(grid: &RasterGrid) -> Vec<Polyline> {
    let inside = |p: usize, q: usize| grid.class(p, q) != CellClass::Outside;
    let mut adjacency: BTreeMap<EdgeId, Vec<EdgeId>> = BTreeMap::new();
    let mut segments: BTreeSet<(EdgeId, EdgeId)> = BTreeSet::new();
    let mut link = |a: EdgeId, b: EdgeId| {
        let key = (a.min(b), a.max(b));
        if segments.insert(key) {
            adjacency.entry(a).or_default().push(b);
            adjacency.entry(b).or_default().push(a);
        }
    };
    for q in 0..grid.ny - 1 {
        for p in 0..grid.nx - 1 {
            let code = inside(p, q) as u8
                | (inside(p + 1, q) as u8) << 1
                | (inside(p + 1, q + 1) as u8) << 2
                | (inside(p, q + 1) as u8) << 3;
            let bottom = (0u8, p, q);
            let top = (0u8, p, q + 1);
            let left = (1u8, p, q);
            let right = (1u8, p + 1, q);
            match code {
                0 | 15 => {}
                1 | 14 => link(left, bottom),
                2 | 13 => link(bottom, right),
                3 | 12 => link(left, right),
                4 | 11 => link(right, top),
                6 | 9 => link(bottom, top),
                7 | 8 => link(left, top),
                5 => {
                    link(left, bottom);
                    link(right, top);
                }
                10 => {
                    link(bottom, right);
                    link(left, top);
                }
                _ => unreachable!(),
            }
        }
    }
    for neighbors in adjacency.values_mut() {
        neighbors.sort_unstable();
    }
    let mut remaining = segments;
    let mut contours = Vec::new();
    while !remaining.is_empty() {
        let degree = |edge: EdgeId, remaining: &BTreeSet<(EdgeId, EdgeId)>| {
            adjacency[&edge]
                .iter()
                .filter(|&&n| remaining.contains(&(edge.min(n), edge.max(n))))
                .count()
        };
        let start = adjacency
            .keys()
            .find(|&&e| degree(e, &remaining) == 1)
            .or_else(|| adjacency.keys().find(|&&e| degree(e, &remaining) > 0))
            .copied()
            .expect("segments remain, so some edge has positive degree");
        let mut chain = vec![start];
        let mut current = start;
        loop {
            let next = adjacency[&current]
                .iter()
                .find(|&&n| remaining.contains(&(current.min(n), current.max(n))))
                .copied();
            match next {
                Some(n) => {
                    remaining.remove(&(current.min(n), current.max(n)));
                    chain.push(n);
                    current = n;
                }
                None => break,
            }
        }
        let closed = chain.len() > 2 && chain.first() == chain.last();
        if closed {
            chain.pop();
        }
        let points = chain.into_iter().map(|e| edge_point(grid, e)).collect();
        contours.push(Polyline { points, closed });
    }
    contours
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn sample() -> ComplexTensor {
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
        .unwrap()
    }

    fn disk_set(disks: &[(f64, f64, f64)]) -> DiskSet {
        DiskSet {
            label: "test".to_string(),
            disks: disks
                .iter()
                .map(|&(cx, cy, r)| crate::gersgorin::Disk {
                    center: Complex64::new(cx, cy),
                    radius: r,
                })
                .collect(),
        }
    }

    #[test]
    fn membership_raster_of_the_sample() {
        let rect = Rect::new(-2.0, 4.0, -3.0, 3.0).unwrap();
        let grid = raster_membership(&sample(), &rect, 7, 7, 1e-8).unwrap();
        assert!((grid.node(4, 3) - c(2.0)).norm() < 1e-12);
        assert_eq!(grid.class(4, 3), CellClass::Inside, "z = 2 is a diagonal entry");
        assert_eq!(grid.class(6, 6), CellClass::Outside, "the corner is outside Gamma");
        assert!(grid.count(CellClass::Inside) > 0);
    }

    #[test]
    fn diagonal_tensor_raster_pinpoints_the_spectrum() {
        let t = ComplexTensor::new(
            3,
            2,
            vec![(vec![0, 0, 0], c(2.0)), (vec![1, 1, 1], c(1.0))],
        )
        .unwrap();
        let rect = Rect::new(0.5, 2.5, -0.5, 0.5).unwrap();
        let grid = raster_membership(&t, &rect, 5, 3, 1e-8).unwrap();
        assert_eq!(grid.class(1, 1), CellClass::Inside, "node at z = 1");
        assert_eq!(grid.class(3, 1), CellClass::Inside, "node at z = 2");
        assert_eq!(grid.class(2, 1), CellClass::Outside, "node at z = 1.5");
        assert_eq!(grid.class(0, 0), CellClass::Outside);
    }

    #[test]
    fn far_away_boxes_are_entirely_outside() {
        let rect = Rect::new(10.0, 11.0, 10.0, 11.0).unwrap();
        let grid = raster_membership(&sample(), &rect, 2, 2, 1e-8).unwrap();
        assert_eq!(grid.count(CellClass::Outside), 4);
    }

    #[test]
    fn parallel_and_sequential_rasters_agree() {
        let rect = Rect::new(-1.0, 4.0, -2.0, 2.0).unwrap();
        let par = raster_membership(&sample(), &rect, 9, 7, 1e-8).unwrap();
        let seq = raster_membership_seq(&sample(), &rect, 9, 7, 1e-8).unwrap();
        for q in 0..7 {
            assert_eq!(par.row(q), seq.row(q), "row {q} must not depend on the schedule");
        }
    }

    #[test]
    fn disk_raster_uses_closed_disks() {
        let rect = Rect::new(-2.0, 2.0, -1.0, 1.0).unwrap();
        let grid = raster_disk_sets(
            &[disk_set(&[(0.0, 0.0, 1.0)])],
            DiskSetMode::UnionOfEach,
            &rect,
            5,
            3,
        )
        .unwrap();
        assert_eq!(grid.class(3, 1), CellClass::Inside, "z = 1 sits on the rim");
        assert_eq!(grid.class(4, 1), CellClass::Outside, "z = 2");
    }

    #[test]
    fn intersection_mode_requires_every_set() {
        let rect = Rect::new(-2.0, 2.0, -1.0, 1.0).unwrap();
        let sets = [disk_set(&[(0.0, 0.0, 1.0)]), disk_set(&[(1.5, 0.0, 1.0)])];
        let union = raster_disk_sets(&sets, DiskSetMode::UnionOfEach, &rect, 5, 3).unwrap();
        let inter =
            raster_disk_sets(&sets, DiskSetMode::IntersectionOfUnions, &rect, 5, 3).unwrap();
        assert_eq!(union.class(2, 1), CellClass::Inside, "z = 0 lies in the first set");
        assert_eq!(inter.class(2, 1), CellClass::Outside, "z = 0 misses the second set");
        assert_eq!(inter.class(3, 1), CellClass::Inside, "z = 1 lies in both");
        assert!(
            inter.count(CellClass::Inside) <= union.count(CellClass::Inside),
            "intersection can only shrink the union"
        );
    }

    #[test]
    fn uniform_grids_have_no_contours() {
        let rect = Rect::new(0.0, 1.0, 0.0, 1.0).unwrap();
        let grid = RasterGrid::new(rect, 3, 3, vec![CellClass::Inside; 9]).unwrap();
        assert!(extract_contours(&grid).is_empty());
    }

    #[test]
    fn disk_contour_stays_near_the_circle() {
        let rect = Rect::new(-2.0, 2.0, -2.0, 2.0).unwrap();
        let grid = raster_disk_sets(
            &[disk_set(&[(0.0, 0.0, 1.0)])],
            DiskSetMode::UnionOfEach,
            &rect,
            41,
            41,
        )
        .unwrap();
        let contours = extract_contours(&grid);
        assert_eq!(contours.len(), 1, "one closed curve around the disk");
        assert!(contours[0].closed);
        let tolerance = 2.0 * (grid.dx().powi(2) + grid.dy().powi(2)).sqrt();
        for &(x, y) in &contours[0].points {
            let deviation = ((x * x + y * y).sqrt() - 1.0).abs();
            assert!(
                deviation <= tolerance,
                "vertex ({x}, {y}) strays {deviation} from the unit circle"
            );
        }
    }

    #[test]
    fn half_plane_split_yields_one_open_chain() {
        let rect = Rect::new(0.0, 1.0, 0.0, 1.0).unwrap();
        let mut cells = Vec::new();
        for _q in 0..5 {
            for p in 0..5 {
                cells.push(if p <= 2 { CellClass::Inside } else { CellClass::Outside });
            }
        }
        let grid = RasterGrid::new(rect, 5, 5, cells).unwrap();
        let contours = extract_contours(&grid);
        assert_eq!(contours.len(), 1);
        assert!(!contours[0].closed);
        assert_eq!(contours[0].points.len(), 5, "one crossing per row of cells plus ends");
        let ys: Vec<f64> = contours[0].points.iter().map(|&(_, y)| y).collect();
        assert!(ys.contains(&0.0) && ys.contains(&1.0), "the chain spans the box");
    }

    #[test]
    fn band_nodes_count_as_inside_for_contours() {
        let rect = Rect::new(0.0, 1.0, 0.0, 1.0).unwrap();
        let mut cells = vec![CellClass::Outside; 9];
        cells[4] = CellClass::Band;
        let grid = RasterGrid::new(rect, 3, 3, cells).unwrap();
        let contours = extract_contours(&grid);
        assert_eq!(contours.len(), 1);
        assert!(contours[0].closed, "a lone band node is ringed by a closed contour");
    }

    #[test]
    fn degenerate_resolutions_are_rejected() {
        let rect = Rect::new(0.0, 1.0, 0.0, 1.0).unwrap();
        assert!(matches!(
            raster_membership(&sample(), &rect, 1, 8, 1e-8),
            Err(Error::BadBox { .. })
        ));
        assert!(matches!(
            RasterGrid::new(rect, 3, 3, vec![CellClass::Inside; 7]),
            Err(Error::BadBox { .. })
        ));
    }
}
