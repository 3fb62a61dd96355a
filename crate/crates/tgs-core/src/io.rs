//! File formats: tensor and disk-set JSON, ray and diagonal CSV,
//! witness reports. Indices are 1-based in every file and on every
//! command surface; the library core is 0-based.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::equimodular::WitnessReport;
use crate::error::{Error, Result};
use crate::gersgorin::DiskSet;
use crate::minimal::{RayHit, VEstimate};
use crate::tensor::ComplexTensor;

/// Formats with 9 significant digits, trimming trailing zeros, using
/// scientific notation outside the `1e-4 ..= 1e9` magnitude window.
/// Enough digits to round-trip 8-decimal reference constants.
pub fn fmt_g9(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".to_string()
        } else if x > 0.0 {
            "inf".to_string()
        } else {
            "-inf".to_string()
        };
    }
    let scientific = format!("{x:.8e}");
    let (mantissa, exp) = scientific
        .split_once('e')
        .expect("scientific format always carries an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    if (-4..9).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!(
            "{}e{}{:02}",
            trim_zeros(mantissa.to_string()),
            if exp < 0 { '-' } else { '+' },
            exp.abs()
        )
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct TensorEntryFile {
    idx: Vec<usize>,
    re: f64,
    #[serde(default)]
    im: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct TensorFile {
    order: usize,
    dim: usize,
    entries: Vec<TensorEntryFile>,
}

/// Parses the tensor JSON format: `{"order", "dim", "entries":
/// [{"idx": [..], "re", "im"?}]}` with 1-based indices.
pub fn parse_tensor_json(text: &str) -> Result<ComplexTensor> {
    let file: TensorFile = serde_json::from_str(text)?;
    let mut entries = Vec::with_capacity(file.entries.len());
    for entry in file.entries {
        for &component in &entry.idx {
            if component == 0 || component > file.dim {
                return Err(Error::IndexOutOfRange {
                    index: entry.idx.clone(),
                    dim: file.dim,
                });
            }
        }
        let zero_based: Vec<usize> = entry.idx.iter().map(|&c| c - 1).collect();
        entries.push((zero_based, Complex64::new(entry.re, entry.im)));
    }
    ComplexTensor::new(file.order, file.dim, entries)
}

pub fn read_tensor_json(path: &Path) -> Result<ComplexTensor> {
    parse_tensor_json(&std::fs::read_to_string(path)?)
}

/// Serializes a tensor to the JSON file format, entries in index order,
/// indices 1-based.
pub fn tensor_json(a: &ComplexTensor) -> String {
    let entries = a
        .entries()
        .map(|(index, value)| TensorEntryFile {
            idx: index.components().iter().map(|&c| c + 1).collect(),
            re: value.re,
            im: value.im,
        })
        .collect();
    let file = TensorFile {
        order: a.order(),
        dim: a.dim(),
        entries,
    };
    let mut text = serde_json::to_string_pretty(&file).expect("plain data serializes");
    text.push('\n');
    text
}

pub fn write_tensor_json(path: &Path, a: &ComplexTensor) -> Result<()> {
    std::fs::write(path, tensor_json(a))?;
    Ok(())
}

/// Plain JSON array of positive weights.
pub fn read_weights_json(path: &Path) -> Result<Vec<f64>> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

#[derive(Debug, Serialize)]
struct DiskFile {
    cx: f64,
    cy: f64,
    r: f64,
}

#[derive(Debug, Serialize)]
struct DiskSetFile {
    label: String,
    disks: Vec<DiskFile>,
}

/// Serializes a disk set to `{"label", "disks": [{"cx", "cy", "r"}]}`.
pub fn disk_set_json(set: &DiskSet) -> String {
    let file = DiskSetFile {
        label: set.label.clone(),
        disks: set
            .disks
            .iter()
            .map(|d| DiskFile {
                cx: d.center.re,
                cy: d.center.im,
                r: d.radius,
            })
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&file).expect("plain data serializes");
    text.push('\n');
    text
}

pub fn write_disk_set_json(path: &Path, set: &DiskSet) -> Result<()> {
    std::fs::write(path, disk_set_json(set))?;
    Ok(())
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new())
}

fn csv_into_string(writer: csv::Writer<Vec<u8>>) -> String {
    String::from_utf8(writer.into_inner().expect("in-memory flush cannot fail"))
        .expect("CSV output is ASCII")
}

/// CSV of certified ray hits, `center_index` 1-based.
pub fn ray_hits_csv(hits: &[RayHit]) -> String {
    let mut writer = csv_writer();
    writer
        .write_record([
            "center_index",
            "theta",
            "gamma",
            "w_re",
            "w_im",
            "t_inner",
            "t_outer",
        ])
        .expect("in-memory write cannot fail");
    for hit in hits {
        writer
            .write_record([
                (hit.center_index + 1).to_string(),
                fmt_g9(hit.theta),
                fmt_g9(hit.gamma),
                fmt_g9(hit.w.re),
                fmt_g9(hit.w.im),
                fmt_g9(hit.t_inner),
                fmt_g9(hit.t_outer),
            ])
            .expect("in-memory write cannot fail");
    }
    csv_into_string(writer)
}

pub fn write_ray_hits_csv(path: &Path, hits: &[RayHit]) -> Result<()> {
    std::fs::write(path, ray_hits_csv(hits))?;
    Ok(())
}

/// CSV of the diagonal brackets, one row per diagonal entry, 1-based.
pub fn v_diag_csv(a: &ComplexTensor, estimates: &[VEstimate]) -> String {
    let mut writer = csv_writer();
    writer
        .write_record(["index", "center_re", "center_im", "v_lower", "v_upper"])
        .expect("in-memory write cannot fail");
    for (i, est) in estimates.iter().enumerate() {
        let center = a.diagonal(i);
        writer
            .write_record([
                (i + 1).to_string(),
                fmt_g9(center.re),
                fmt_g9(center.im),
                fmt_g9(est.v_lower),
                fmt_g9(est.v_upper),
            ])
            .expect("in-memory write cannot fail");
    }
    csv_into_string(writer)
}

#[derive(Debug, Serialize)]
struct ComplexFile {
    re: f64,
    im: f64,
}

#[derive(Debug, Serialize)]
struct WitnessFile {
    z: ComplexFile,
    v_bracket: [f64; 2],
    mu: Vec<f64>,
    psi: Vec<f64>,
    residual: f64,
    kind: String,
}

/// Serializes a witness report to `{z, v_bracket, mu, psi, residual,
/// kind}`.
pub fn witness_json(report: &WitnessReport) -> String {
    let file = WitnessFile {
        z: ComplexFile {
            re: report.z.re,
            im: report.z.im,
        },
        v_bracket: [report.v_bracket.0, report.v_bracket.1],
        mu: report.mu.clone(),
        psi: report.psi.clone(),
        residual: report.residual,
        kind: report.kind.to_string(),
    };
    let mut text = serde_json::to_string_pretty(&file).expect("plain data serializes");
    text.push('\n');
    text
}

pub fn write_witness_json(path: &Path, report: &WitnessReport) -> Result<()> {
    std::fs::write(path, witness_json(report))?;
    Ok(())
}
