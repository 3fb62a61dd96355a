//! Command line front end for the inclusion-region library: disk sets,
//! certified membership queries, boundary searches and SVG reports.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use tgs_core::io::{
    fmt_g9, ray_hits_csv, read_tensor_json, read_weights_json, v_diag_csv, write_disk_set_json,
    write_ray_hits_csv, write_witness_json,
};
use tgs_core::{
    approx_region, dedup_centers, emit_svg, extract_contours, gersgorin, mgs_membership,
    raster_disk_sets, raster_membership, ray_boundary, v_diag, v_of_z, weighted_gersgorin,
    witness_report, CellClass, DiskSetMode, Error, Irreducibility, Layer, PlotSpec, RasterGrid,
    RayOptions, Rect, Style,
};

#[derive(Parser)]
#[command(name = "tgs", version, about = "Tensor eigenvalue inclusion regions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Centers {
    All,
    Dedup,
}

#[derive(Subcommand)]
enum Command {
    /// Shape, nonnegativity and irreducibility of a tensor file.
    Info { tensor: PathBuf },
    /// Inclusion disks, classical or weighted.
    Gersgorin {
        tensor: PathBuf,
        /// JSON array of positive weights, one per index.
        #[arg(long)]
        weights: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Certified bracket of the membership potential at one point.
    V {
        tensor: PathBuf,
        #[arg(long, value_parser = parse_complex, value_name = "RE,IM")]
        z: Complex64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Membership verdict for one point.
    Member {
        tensor: PathBuf,
        #[arg(long, value_parser = parse_complex, value_name = "RE,IM")]
        z: Complex64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Potential brackets at every diagonal entry, as CSV.
    Vdiag {
        tensor: PathBuf,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Boundary search along one ray from a diagonal center.
    Boundary {
        tensor: PathBuf,
        /// Diagonal index the ray starts from, 1-based.
        #[arg(long)]
        center: usize,
        /// Ray direction in radians.
        #[arg(long)]
        theta: f64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Boundary anchors on a fan of rays and the intersected sets.
    Approx {
        tensor: PathBuf,
        /// Uniformly spaced ray count per center.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        rays: u32,
        #[arg(long, value_enum, default_value_t = Centers::Dedup)]
        centers: Centers,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Certified membership raster over a box.
    Raster {
        tensor: PathBuf,
        #[arg(long = "box", value_parser = parse_box, value_name = "XMIN,XMAX,YMIN,YMAX")]
        window: Option<Rect>,
        #[arg(long, value_parser = parse_res, value_name = "NXxNY")]
        res: Option<(usize, usize)>,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Equimodular eigenvalue witness for one point of the region.
    Witness {
        tensor: PathBuf,
        #[arg(long, value_parser = parse_complex, value_name = "RE,IM")]
        z: Complex64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn parse_complex(text: &str) -> Result<Complex64, String> {
    let (re, im) = text
        .split_once(',')
        .ok_or_else(|| format!("expected RE,IM, got `{text}`"))?;
    let re: f64 = re.trim().parse().map_err(|_| format!("bad real part `{re}`"))?;
    let im: f64 = im.trim().parse().map_err(|_| format!("bad imaginary part `{im}`"))?;
    Ok(Complex64::new(re, im))
}

fn parse_box(text: &str) -> Result<Rect, String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 4 {
        return Err(format!("expected XMIN,XMAX,YMIN,YMAX, got `{text}`"));
    }
    let mut values = [0.0; 4];
    for (slot, part) in values.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse()
            .map_err(|_| format!("bad coordinate `{part}`"))?;
    }
    Rect::new(values[0], values[1], values[2], values[3]).map_err(|e| e.to_string())
}

fn parse_res(text: &str) -> Result<(usize, usize), String> {
    let (nx, ny) = text
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected NXxNY, got `{text}`"))?;
    let nx: usize = nx.trim().parse().map_err(|_| format!("bad width `{nx}`"))?;
    let ny: usize = ny.trim().parse().map_err(|_| format!("bad height `{ny}`"))?;
    if nx < 2 || ny < 2 {
        return Err("resolution must be at least 2x2".into());
    }
    Ok((nx, ny))
}

fn fmt_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        fmt_g9(z.re)
    } else if z.im < 0.0 {
        format!("{} - {}i", fmt_g9(z.re), fmt_g9(-z.im))
    } else {
        format!("{} + {}i", fmt_g9(z.re), fmt_g9(z.im))
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::NotIrreducible
        | Error::OutsideRegion { .. }
        | Error::NotBalanced { .. }
        | Error::ExpansionOverflow { .. } => 3,
        Error::Io { .. } => 4,
        _ => 2,
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli.command) {
        eprintln!("error: {err}");
        std::process::exit(exit_code(&err));
    }
}

fn run(command: Command) -> Result<(), Error> {
    match command {
        Command::Info { tensor } => info(&tensor),
        Command::Gersgorin {
            tensor,
            weights,
            svg,
            json,
        } => disks(&tensor, weights.as_deref(), svg.as_deref(), json.as_deref()),
        Command::V { tensor, z, tol } => {
            let a = read_tensor_json(&tensor)?;
            let est = v_of_z(&a, z, tol);
            println!("v: [{}, {}]", fmt_g9(est.v_lower), fmt_g9(est.v_upper));
            println!("mu: {}", fmt_g9(est.mu));
            Ok(())
        }
        Command::Member { tensor, z, tol } => {
            let a = read_tensor_json(&tensor)?;
            println!("{}", mgs_membership(&a, z, tol).verdict);
            Ok(())
        }
        Command::Vdiag { tensor, tol } => {
            let a = read_tensor_json(&tensor)?;
            let estimates = v_diag(&a, tol);
            print!("{}", v_diag_csv(&a, &estimates));
            Ok(())
        }
        Command::Boundary {
            tensor,
            center,
            theta,
            tol,
        } => {
            let a = read_tensor_json(&tensor)?;
            let index = to_internal_index(center, a.dim())?;
            let hit = ray_boundary(&a, index, theta, &ray_options(tol))?;
            print!("{}", ray_hits_csv(&[hit]));
            Ok(())
        }
        Command::Approx {
            tensor,
            rays,
            centers,
            tol,
            svg,
            csv,
        } => approx(&tensor, rays as usize, centers, tol, svg.as_deref(), csv.as_deref()),
        Command::Raster {
            tensor,
            window,
            res,
            tol,
            svg,
        } => raster(&tensor, window, res, tol, svg.as_deref()),
        Command::Witness {
            tensor,
            z,
            tol,
            json,
        } => witness(&tensor, z, tol, json.as_deref()),
    }
}

fn to_internal_index(surface: usize, dim: usize) -> Result<usize, Error> {
    if surface == 0 || surface > dim {
        return Err(Error::IndexOutOfRange {
            index: vec![surface],
            dim,
        });
    }
    Ok(surface - 1)
}

fn ray_options(tol: f64) -> RayOptions {
    RayOptions {
        t_tol: tol,
        v_tol: (tol * 1e-2).min(1e-10),
        ..RayOptions::default()
    }
}

fn info(tensor: &Path) -> Result<(), Error> {
    let a = read_tensor_json(tensor)?;
    println!("order: {}", a.order());
    println!("dim: {}", a.dim());
    println!("nonzero entries: {}", a.nnz());
    println!("nonnegative: {}", a.is_nonnegative());
    let report = a.irreducibility();
    let method = if report.exhaustive { "exhaustive" } else { "digraph screen" };
    match &report.verdict {
        Irreducibility::Irreducible => println!("irreducibility: irreducible ({method})"),
        Irreducibility::Reducible { witness } => {
            let rows: Vec<String> = witness.iter().map(|&i| (i + 1).to_string()).collect();
            println!("irreducibility: reducible, witness rows {{{}}}", rows.join(", "));
        }
        Irreducibility::Unknown => println!("irreducibility: unknown ({method})"),
    }
    println!(
        "digraph strongly connected: {}",
        report.digraph_strongly_connected
    );
    Ok(())
}

fn disks(
    tensor: &Path,
    weights: Option<&Path>,
    svg: Option<&Path>,
    json: Option<&Path>,
) -> Result<(), Error> {
    let a = read_tensor_json(tensor)?;
    let set = match weights {
        Some(path) => weighted_gersgorin(&a, &read_weights_json(path)?)?,
        None => gersgorin(&a),
    };
    for (i, disk) in set.disks.iter().enumerate() {
        println!(
            "{}_{}: center {}, radius {}",
            set.label,
            i + 1,
            fmt_complex(disk.center),
            fmt_g9(disk.radius)
        );
    }
    if let Some(path) = json {
        write_disk_set_json(path, &set)?;
    }
    if let Some(path) = svg {
        let spec = PlotSpec::new(vec![Layer::disks(set, Style::line(DISK_STROKE))], 640, 480)?;
        emit_svg(&spec, path)?;
    }
    Ok(())
}

const DISK_STROKE: &str = "#1f6f8b";
const CONTOUR_STROKE: &str = "#c0392b";
const MARKER_STROKE: &str = "#222222";
const RASTER_FILL: &str = "#9ecae1";

fn approx(
    tensor: &Path,
    rays: usize,
    centers: Centers,
    tol: f64,
    svg: Option<&Path>,
    csv: Option<&Path>,
) -> Result<(), Error> {
    let a = read_tensor_json(tensor)?;
    let picked = match centers {
        Centers::All => (0..a.dim()).collect::<Vec<_>>(),
        Centers::Dedup => dedup_centers(&a),
    };
    let fan: Vec<(usize, f64)> = picked
        .iter()
        .flat_map(|&j| {
            (0..rays).map(move |k| (j, k as f64 * std::f64::consts::TAU / rays as f64))
        })
        .collect();
    let region = approx_region(&a, &fan, &ray_options(tol))?;
    print!("{}", ray_hits_csv(&region.anchors));
    if let Some(path) = csv {
        write_ray_hits_csv(path, &region.anchors)?;
    }
    if let Some(path) = svg {
        let disks = gersgorin(&a);
        let rect = disks.bounding_box(0.1);
        let grid = raster_disk_sets(
            &region.sets,
            DiskSetMode::IntersectionOfUnions,
            &rect,
            257,
            257,
        )?;
        let anchors: Vec<Complex64> = region.anchors.iter().map(|hit| hit.w).collect();
        let layers = vec![
            Layer::disks(disks, Style::line(DISK_STROKE)),
            Layer::contours(extract_contours(&grid), Style::line(CONTOUR_STROKE)),
            Layer::markers(anchors, Style::line(MARKER_STROKE)),
        ];
        emit_svg(&PlotSpec::new(layers, 640, 480)?, path)?;
    }
    Ok(())
}

fn raster(
    tensor: &Path,
    window: Option<Rect>,
    res: Option<(usize, usize)>,
    tol: f64,
    svg: Option<&Path>,
) -> Result<(), Error> {
    let a = read_tensor_json(tensor)?;
    let disks = gersgorin(&a);
    let rect = window.unwrap_or_else(|| disks.bounding_box(0.1));
    let (nx, ny) = res.unwrap_or((512, 512));
    let grid = raster_membership(&a, &rect, nx, ny, tol)?;
    println!(
        "grid: {}x{} over [{}, {}] x [{}, {}]",
        nx,
        ny,
        fmt_g9(rect.xmin),
        fmt_g9(rect.xmax),
        fmt_g9(rect.ymin),
        fmt_g9(rect.ymax)
    );
    println!("inside: {}", grid.count(CellClass::Inside));
    println!("band: {}", grid.count(CellClass::Band));
    println!("outside: {}", grid.count(CellClass::Outside));
    if let Some(path) = svg {
        emit_svg(&raster_plot(&a, grid)?, path)?;
    }
    Ok(())
}

fn raster_plot(a: &tgs_core::ComplexTensor, grid: RasterGrid) -> Result<PlotSpec, Error> {
    let contours = extract_contours(&grid);
    let layers = vec![
        Layer::raster(grid, Style::filled(RASTER_FILL)),
        Layer::contours(contours, Style::line(CONTOUR_STROKE)),
        Layer::disks(gersgorin(a), Style::line(DISK_STROKE)),
    ];
    PlotSpec::new(layers, 640, 480)
}

fn witness(tensor: &Path, z: Complex64, tol: f64, json: Option<&Path>) -> Result<(), Error> {
    let a = read_tensor_json(tensor)?;
    let report = witness_report(&a, z, tol)?;
    println!("z: {}", fmt_complex(report.z));
    println!(
        "v: [{}, {}]",
        fmt_g9(report.v_bracket.0),
        fmt_g9(report.v_bracket.1)
    );
    println!("kind: {}", report.kind);
    println!("residual: {}", fmt_g9(report.residual));
    let mu: Vec<String> = report.mu.iter().map(|&f| fmt_g9(f)).collect();
    println!("mu: {}", mu.join(", "));
    let psi: Vec<String> = report.psi.iter().map(|&f| fmt_g9(f)).collect();
    println!("psi: {}", psi.join(", "));
    if let Some(path) = json {
        write_witness_json(path, &report)?;
    }
    Ok(())
}
