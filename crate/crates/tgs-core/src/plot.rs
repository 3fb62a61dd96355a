//! Deterministic SVG rendering of disk sets, classification rasters,
//! contour chains, and anchor markers.
//!
//! The emitter assembles the document as a plain string with fixed
//! formatting (two decimal places in pixel space), so identical inputs
//! produce byte-identical files on every platform.

use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gersgorin::{DiskSet, Rect};
use crate::raster::{CellClass, Polyline, RasterGrid};

/// Stroke and fill assignment for one layer.
#[derive(Clone, Debug)]
pub struct Style {
    pub stroke: String,
    pub fill: String,
    pub stroke_width: f64,
}

impl Style {
    pub fn line(stroke: &str) -> Self {
        Style {
            stroke: stroke.to_string(),
            fill: "none".to_string(),
            stroke_width: 1.5,
        }
    }

    pub fn filled(fill: &str) -> Self {
        Style {
            stroke: "none".to_string(),
            fill: fill.to_string(),
            stroke_width: 0.0,
        }
    }
}

/// What a layer draws.
#[derive(Clone, Debug)]
pub enum LayerSource {
    Disks(DiskSet),
    Raster(RasterGrid),
    Contours(Vec<Polyline>),
    Markers(Vec<Complex64>),
}

#[derive(Clone, Debug)]
pub struct Layer {
    pub source: LayerSource,
    pub style: Style,
}

impl Layer {
    pub fn disks(set: DiskSet, style: Style) -> Self {
        Layer {
            source: LayerSource::Disks(set),
            style,
        }
    }

    pub fn raster(grid: RasterGrid, style: Style) -> Self {
        Layer {
            source: LayerSource::Raster(grid),
            style,
        }
    }

    pub fn contours(lines: Vec<Polyline>, style: Style) -> Self {
        Layer {
            source: LayerSource::Contours(lines),
            style,
        }
    }

    pub fn markers(points: Vec<Complex64>, style: Style) -> Self {
        Layer {
            source: LayerSource::Markers(points),
            style,
        }
    }
}

/// Ordered layers plus the pixel size of the output document.
#[derive(Clone, Debug)]
pub struct PlotSpec {
    layers: Vec<Layer>,
    width: u32,
    height: u32,
}

/// Fill used for nodes whose membership bracket straddles zero, kept
/// distinct from every layer fill so indeterminate regions stay
/// visible.
const BAND_FILL: &str = "#e6b85c";

const MARGIN_LEFT: f64 = 50.0;
const MARGIN_RIGHT: f64 = 15.0;
const MARGIN_TOP: f64 = 15.0;
const MARGIN_BOTTOM: f64 = 38.0;

impl PlotSpec {
    pub fn new(layers: Vec<Layer>, width: u32, height: u32) -> Result<Self> {
        if layers.is_empty() {
            return Err(Error::EmptyPlot);
        }
        assert!(width >= 100 && height >= 100, "plot must be at least 100x100 pixels");
        Ok(PlotSpec {
            layers,
            width,
            height,
        })
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    fn world_box(&self) -> Rect {
        let mut xmin = f64::INFINITY;
        let mut xmax = f64::NEG_INFINITY;
        let mut ymin = f64::INFINITY;
        let mut ymax = f64::NEG_INFINITY;
        let mut take = |x: f64, y: f64| {
            xmin = xmin.min(x);
            xmax = xmax.max(x);
            ymin = ymin.min(y);
            ymax = ymax.max(y);
        };
        for layer in &self.layers {
            match &layer.source {
                LayerSource::Disks(set) => {
                    for disk in &set.disks {
                        take(disk.center.re - disk.radius, disk.center.im - disk.radius);
                        take(disk.center.re + disk.radius, disk.center.im + disk.radius);
                    }
                }
                LayerSource::Raster(grid) => {
                    take(grid.rect().xmin, grid.rect().ymin);
                    take(grid.rect().xmax, grid.rect().ymax);
                }
                LayerSource::Contours(lines) => {
                    for line in lines {
                        for &(x, y) in &line.points {
                            take(x, y);
                        }
                    }
                }
                LayerSource::Markers(points) => {
                    for p in points {
                        take(p.re, p.im);
                    }
                }
            }
        }
        if !xmin.is_finite() || xmax - xmin < 1e-9 {
            let cx = if xmin.is_finite() { xmin } else { 0.0 };
            xmin = cx - 0.5;
            xmax = cx + 0.5;
        }
        if !ymin.is_finite() || ymax - ymin < 1e-9 {
            let cy = if ymin.is_finite() { ymin } else { 0.0 };
            ymin = cy - 0.5;
            ymax = cy + 0.5;
        }
        let pad = 0.04 * (xmax - xmin).max(ymax - ymin);
        Rect::new(xmin - pad, xmax + pad, ymin - pad, ymax + pad)
            .expect("padded world box is proper")
    }
}

fn px(v: f64) -> String {
    let s = format!("{v:.2}");
    if s == "-0.00" {
        "0.00".to_string()
    } else {
        s
    }
}

struct Frame {
    scale: f64,
    x0: f64,
    y1: f64,
    off_x: f64,
    off_y: f64,
}

impl Frame {
    fn of(spec: &PlotSpec, world: &Rect) -> Frame {
        let plot_w = spec.width as f64 - MARGIN_LEFT - MARGIN_RIGHT;
        let plot_h = spec.height as f64 - MARGIN_TOP - MARGIN_BOTTOM;
        let scale = (plot_w / world.width()).min(plot_h / world.height());
        let off_x = MARGIN_LEFT + 0.5 * (plot_w - scale * world.width());
        let off_y = MARGIN_TOP + 0.5 * (plot_h - scale * world.height());
        Frame {
            scale,
            x0: world.xmin,
            y1: world.ymax,
            off_x,
            off_y,
        }
    }

    fn x(&self, wx: f64) -> f64 {
        self.off_x + (wx - self.x0) * self.scale
    }

    fn y(&self, wy: f64) -> f64 {
        self.off_y + (self.y1 - wy) * self.scale
    }
}

fn tick_step(span: f64) -> f64 {
    let raw = span / 6.0;
    let base = 10f64.powf(raw.log10().floor());
    for mult in [1.0, 2.0, 5.0] {
        if base * mult >= raw {
            return base * mult;
        }
    }
    base * 10.0
}

fn tick_label(value: f64, step: f64) -> String {
    let decimals = (-step.log10().floor()).max(0.0) as usize;
    let s = format!("{value:.decimals$}");
    if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
        s[1..].to_string()
    } else {
        s
    }
}

fn axes(out: &mut String, frame: &Frame, world: &Rect) {
    let left = frame.x(world.xmin);
    let right = frame.x(world.xmax);
    let top = frame.y(world.ymax);
    let bottom = frame.y(world.ymin);
    if world.xmin < 0.0 && world.xmax > 0.0 {
        let x = px(frame.x(0.0));
        out.push_str(&format!(
            "<line x1=\"{x}\" y1=\"{}\" x2=\"{x}\" y2=\"{}\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n",
            px(top),
            px(bottom)
        ));
    }
    if world.ymin < 0.0 && world.ymax > 0.0 {
        let y = px(frame.y(0.0));
        out.push_str(&format!(
            "<line x1=\"{}\" y1=\"{y}\" x2=\"{}\" y2=\"{y}\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n",
            px(left),
            px(right)
        ));
    }
    out.push_str(&format!(
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n",
        px(left),
        px(top),
        px(right - left),
        px(bottom - top)
    ));
    let step = tick_step(world.width());
    let mut k = (world.xmin / step).ceil() as i64;
    while (k as f64) * step <= world.xmax + 1e-12 * step {
        let value = k as f64 * step;
        let x = px(frame.x(value));
        out.push_str(&format!(
            "<line x1=\"{x}\" y1=\"{}\" x2=\"{x}\" y2=\"{}\" stroke=\"#333333\" stroke-width=\"1\"/>\n",
            px(bottom),
            px(bottom + 4.0)
        ));
        out.push_str(&format!(
            "<text x=\"{x}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">{}</text>\n",
            px(bottom + 16.0),
            tick_label(value, step)
        ));
        k += 1;
    }
    let step = tick_step(world.height());
    let mut k = (world.ymin / step).ceil() as i64;
    while (k as f64) * step <= world.ymax + 1e-12 * step {
        let value = k as f64 * step;
        let y = px(frame.y(value));
        out.push_str(&format!(
            "<line x1=\"{}\" y1=\"{y}\" x2=\"{}\" y2=\"{y}\" stroke=\"#333333\" stroke-width=\"1\"/>\n",
            px(left - 4.0),
            px(left)
        ));
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">{}</text>\n",
            px(left - 7.0),
            px(frame.y(value) + 4.0),
            tick_label(value, step)
        ));
        k += 1;
    }
}

fn raster_rects(out: &mut String, frame: &Frame, grid: &RasterGrid, style: &Style) {
    let rect = grid.rect();
    let half_dx = 0.5 * grid.dx();
    let half_dy = 0.5 * grid.dy();
    for q in 0..grid.ny() {
        let node_y = rect.ymin + q as f64 * grid.dy();
        let y_low = (node_y - half_dy).max(rect.ymin);
        let y_high = (node_y + half_dy).min(rect.ymax);
        let row = grid.row(q);
        let mut p = 0;
        while p < row.len() {
            let class = row[p];
            let mut end = p;
            while end + 1 < row.len() && row[end + 1] == class {
                end += 1;
            }
            if class != CellClass::Outside {
                let x_low = (rect.xmin + p as f64 * grid.dx() - half_dx).max(rect.xmin);
                let x_high = (rect.xmin + end as f64 * grid.dx() + half_dx).min(rect.xmax);
                let fill = match class {
                    CellClass::Inside => style.fill.as_str(),
                    CellClass::Band => BAND_FILL,
                    CellClass::Outside => unreachable!(),
                };
                out.push_str(&format!(
                    "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{fill}\"/>\n",
                    px(frame.x(x_low)),
                    px(frame.y(y_high)),
                    px((x_high - x_low) * frame.scale),
                    px((y_high - y_low) * frame.scale)
                ));
            }
            p = end + 1;
        }
    }
}

fn marker_path(out: &mut String, frame: &Frame, point: Complex64, style: &Style) {
    let cx = frame.x(point.re);
    let cy = frame.y(point.im);
    let arm = 5.0;
    let dx = arm * 0.866;
    let dy = arm * 0.5;
    out.push_str(&format!(
        "<path class=\"marker\" d=\"M {} {} L {} {} M {} {} L {} {} M {} {} L {} {}\" \
         stroke=\"{}\" stroke-width=\"{}\" stroke-linecap=\"round\" fill=\"none\"/>\n",
        px(cx),
        px(cy - arm),
        px(cx),
        px(cy + arm),
        px(cx - dx),
        px(cy - dy),
        px(cx + dx),
        px(cy + dy),
        px(cx - dx),
        px(cy + dy),
        px(cx + dx),
        px(cy - dy),
        style.stroke,
        px(style.stroke_width.max(1.0))
    ));
}

/// Renders the spec to an SVG document string. Identical specs yield
/// identical bytes.
pub fn svg_document(spec: &PlotSpec) -> String {
    let world = spec.world_box();
    let frame = Frame::of(spec, &world);
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n",
        w = spec.width,
        h = spec.height
    ));
    out.push_str(&format!(
        "<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"#ffffff\"/>\n",
        spec.width, spec.height
    ));
    for layer in &spec.layers {
        match &layer.source {
            LayerSource::Raster(grid) => raster_rects(&mut out, &frame, grid, &layer.style),
            LayerSource::Disks(set) => {
                for disk in &set.disks {
                    out.push_str(&format!(
                        "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\" stroke=\"{}\" stroke-width=\"{}\"/>\n",
                        px(frame.x(disk.center.re)),
                        px(frame.y(disk.center.im)),
                        px(disk.radius * frame.scale),
                        layer.style.fill,
                        layer.style.stroke,
                        px(layer.style.stroke_width)
                    ));
                }
            }
            LayerSource::Contours(lines) => {
                for line in lines {
                    if line.points.is_empty() {
                        continue;
                    }
                    let mut d = String::new();
                    for (i, &(x, y)) in line.points.iter().enumerate() {
                        let cmd = if i == 0 { 'M' } else { 'L' };
                        d.push_str(&format!("{cmd} {} {} ", px(frame.x(x)), px(frame.y(y))));
                    }
                    if line.closed {
                        d.push('Z');
                    }
                    out.push_str(&format!(
                        "<path d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\"/>\n",
                        d.trim_end(),
                        layer.style.stroke,
                        px(layer.style.stroke_width)
                    ));
                }
            }
            LayerSource::Markers(points) => {
                for &point in points {
                    marker_path(&mut out, &frame, point, &layer.style);
                }
            }
        }
    }
    axes(&mut out, &frame, &world);
    out.push_str("</svg>\n");
    out
}

/// Writes [`svg_document`] to a file.
pub fn emit_svg(spec: &PlotSpec, path: &Path) -> Result<()> {
    std::fs::write(path, svg_document(spec))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gersgorin::gersgorin;
    use crate::raster::{extract_contours, raster_disk_sets, DiskSetMode, RasterGrid};
    use crate::tensor::ComplexTensor;

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

    fn count(haystack: &str, needle: &str) -> usize {
        haystack.matches(needle).count()
    }

    #[test]
    fn one_disk_layer_renders_one_circle() {
        let set = DiskSet {
            label: "unit".to_string(),
            disks: vec![crate::gersgorin::Disk {
                center: Complex64::new(0.0, 0.0),
                radius: 1.0,
            }],
        };
        let spec = PlotSpec::new(vec![Layer::disks(set, Style::line("#1f77b4"))], 400, 400)
            .unwrap();
        let svg = svg_document(&spec);
        assert_eq!(count(&svg, "<circle "), 1);
        assert!(svg.starts_with("<svg "));
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn empty_layer_lists_are_rejected() {
        assert!(matches!(
            PlotSpec::new(Vec::new(), 400, 400),
            Err(Error::EmptyPlot)
        ));
    }

    #[test]
    fn full_composition_counts_elements() {
        let t = sample();
        let outline = gersgorin(&t);
        let rect = outline.bounding_box(0.1);
        let grid = raster_disk_sets(
            std::slice::from_ref(&outline),
            DiskSetMode::UnionOfEach,
            &rect,
            33,
            33,
        )
        .unwrap();
        let contours = extract_contours(&grid);
        let anchors = vec![
            Complex64::new(3.62019802, 0.0),
            Complex64::new(-0.43720383, 0.0),
            Complex64::new(2.0, 1.86790935),
            Complex64::new(2.0, -1.86790935),
            Complex64::new(1.0, 1.81661895),
            Complex64::new(1.0, -1.81661895),
        ];
        let spec = PlotSpec::new(
            vec![
                Layer::disks(outline, Style::line("#1f77b4")),
                Layer::contours(contours, Style::line("#d62728")),
                Layer::markers(anchors, Style::line("#000000")),
            ],
            640,
            640,
        )
        .unwrap();
        let svg = svg_document(&spec);
        assert_eq!(count(&svg, "<circle "), 3, "one circle per Gersgorin disk");
        assert!(count(&svg, "<path d=") >= 1, "contour paths present");
        assert_eq!(count(&svg, "class=\"marker\""), 6);
    }

    #[test]
    fn identical_specs_produce_identical_bytes() {
        let build = || {
            let outline = gersgorin(&sample());
            let rect = outline.bounding_box(0.1);
            let grid = raster_disk_sets(
                std::slice::from_ref(&outline),
                DiskSetMode::UnionOfEach,
                &rect,
                17,
                17,
            )
            .unwrap();
            let spec = PlotSpec::new(
                vec![
                    Layer::raster(grid, Style::filled("#9ecae1")),
                    Layer::disks(outline, Style::line("#1f77b4")),
                ],
                512,
                512,
            )
            .unwrap();
            svg_document(&spec)
        };
        assert_eq!(build(), build());
    }

    #[test]
    fn band_cells_use_the_reserved_fill() {
        let rect = Rect::new(0.0, 1.0, 0.0, 1.0).unwrap();
        let mut cells = vec![CellClass::Outside; 9];
        cells[4] = CellClass::Band;
        cells[5] = CellClass::Inside;
        let grid = RasterGrid::new(rect, 3, 3, cells).unwrap();
        let spec = PlotSpec::new(
            vec![Layer::raster(grid, Style::filled("#9ecae1"))],
            300,
            300,
        )
        .unwrap();
        let svg = svg_document(&spec);
        assert!(svg.contains(BAND_FILL), "band fill must differ from the layer fill");
        assert!(svg.contains("#9ecae1"));
    }

    #[test]
    fn emit_svg_writes_the_document() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("plot.svg");
        let set = DiskSet {
            label: "unit".to_string(),
            disks: vec![crate::gersgorin::Disk {
                center: Complex64::new(0.0, 0.0),
                radius: 1.0,
            }],
        };
        let spec = PlotSpec::new(vec![Layer::disks(set, Style::line("#000"))], 200, 200).unwrap();
        emit_svg(&spec, &path).unwrap();
        let written = std::fs::read_to_string(&path).unwrap();
        assert_eq!(written, svg_document(&spec));
    }

    #[test]
    fn tick_labels_avoid_negative_zero() {
        assert_eq!(tick_label(-0.0000001, 1.0), "0");
        assert_eq!(tick_label(2.5, 0.5), "2.5");
        assert_eq!(tick_label(-3.0, 1.0), "-3");
    }
}
