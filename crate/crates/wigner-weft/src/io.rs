//! File formats: JSON state files, JSON/CSV field dumps, and JSON
//! verification reports.
//!
//! All numbers are serialized as decimal shortest-round-trip text, so a
//! save/load cycle reproduces every finite f64 bit-exactly.

use std::fs;
use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PhaseSpaceField;
use crate::grid::{Grid, SampledState};
use crate::verification::VerificationReport;

pub const SCHEMA_VERSION: &str = "1";

/// Lattice block shared by state and field files.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GridBlock {
    pub n: usize,
    pub dx: f64,
    pub x_min: f64,
    pub hbar: f64,
}

/// Momentum-lattice metadata of a field file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MomentumBlock {
    pub dp: f64,
    pub p_min: f64,
}

/// On-disk representation of a sampled state.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StateFile {
    pub schema_version: String,
    pub grid: GridBlock,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// On-disk representation of a phase-space field: lattice metadata plus
/// `(x, p, re, im)` rows in row-major x-then-p order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FieldFile {
    pub schema_version: String,
    pub grid: GridBlock,
    pub p_lattice: MomentumBlock,
    pub rows: Vec<[f64; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// Output format for field dumps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldFormat {
    Json,
    Csv,
}

impl FieldFormat {
    /// Infer the format from a file extension.
    pub fn from_path(path: &Path) -> Result<Self> {
        match path.extension().and_then(|e| e.to_str()) {
            Some("json") => Ok(FieldFormat::Json),
            Some("csv") => Ok(FieldFormat::Csv),
            other => Err(Error::InvalidFile {
                path: path.display().to_string(),
                message: format!(
                    "cannot infer dump format from extension {:?}; use .json or .csv",
                    other.unwrap_or("")
                ),
            }),
        }
    }
}

fn io_err(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        source,
    }
}

fn check_schema(path: &Path, version: &str) -> Result<()> {
    if version != SCHEMA_VERSION {
        return Err(Error::UnsupportedSchema {
            found: version.to_string(),
        });
    }
    let _ = path;
    Ok(())
}

fn invalid(path: &Path, message: String) -> Error {
    Error::InvalidFile {
        path: path.display().to_string(),
        message,
    }
}

fn check_finite(path: &Path, name: &str, values: &[f64]) -> Result<()> {
    if let Some(idx) = values.iter().position(|v| !v.is_finite()) {
        return Err(invalid(
            path,
            format!("field {name:?} has a non-finite entry at index {idx}"),
        ));
    }
    Ok(())
}

/// Serialize a state to pretty JSON.
pub fn save_state(state: &SampledState, path: &Path, label: Option<&str>) -> Result<()> {
    let grid = state.grid();
    let file = StateFile {
        schema_version: SCHEMA_VERSION.to_string(),
        grid: GridBlock {
            n: grid.n(),
            dx: grid.dx(),
            x_min: grid.x_min(),
            hbar: grid.hbar(),
        },
        re: state.values().iter().map(|v| v.re).collect(),
        im: state.values().iter().map(|v| v.im).collect(),
        label: label.map(str::to_string),
    };
    let text = serde_json::to_string_pretty(&file).expect("state file serializes");
    fs::write(path, text).map_err(|e| io_err(path, e))
}

/// Load a state file, validating schema, grid, lengths, and finiteness.
pub fn load_state(path: &Path) -> Result<SampledState> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let file: StateFile = serde_json::from_str(&text).map_err(|e| Error::Json {
        path: path.display().to_string(),
        source: e,
    })?;
    check_schema(path, &file.schema_version)?;
    let grid = Grid::new(file.grid.n, file.grid.dx, file.grid.hbar)?;
    if (file.grid.x_min - grid.x_min()).abs() > 1e-12 * (1.0 + grid.x_min().abs()) {
        return Err(invalid(
            path,
            format!(
                "field \"grid.x_min\" = {} is not the symmetric origin {} for n = {}, dx = {}",
                file.grid.x_min,
                grid.x_min(),
                grid.n(),
                grid.dx()
            ),
        ));
    }
    for (name, values) in [("re", &file.re), ("im", &file.im)] {
        if values.len() != grid.n() {
            return Err(invalid(
                path,
                format!(
                    "field {name:?} has {} entries, expected n = {}",
                    values.len(),
                    grid.n()
                ),
            ));
        }
        check_finite(path, name, values)?;
    }
    let values = file
        .re
        .iter()
        .zip(&file.im)
        .map(|(&re, &im)| Complex64::new(re, im))
        .collect();
    SampledState::from_values(grid, values)
}

fn field_rows(field: &PhaseSpaceField) -> impl Iterator<Item = [f64; 4]> + '_ {
    (0..field.n()).flat_map(move |j| {
        (0..field.n()).map(move |k| {
            let v = field.value(j, k);
            [field.x(j), field.p(k), v.re, v.im]
        })
    })
}

/// Dump a field to `path` as JSON (a [`FieldFile`]) or CSV
/// (`x,p,re,im` header plus `n^2` rows, momentum varying fastest).
pub fn dump_field(field: &PhaseSpaceField, path: &Path, format: FieldFormat) -> Result<()> {
    match format {
        FieldFormat::Json => {
            let file = FieldFile {
                schema_version: SCHEMA_VERSION.to_string(),
                grid: GridBlock {
                    n: field.n(),
                    dx: field.dx(),
                    x_min: field.x_min(),
                    hbar: field.hbar(),
                },
                p_lattice: MomentumBlock {
                    dp: field.dp(),
                    p_min: field.p_min(),
                },
                rows: field_rows(field).collect(),
                label: None,
            };
            let text = serde_json::to_string(&file).expect("field file serializes");
            fs::write(path, text).map_err(|e| io_err(path, e))
        }
        FieldFormat::Csv => {
            let mut out = std::io::BufWriter::new(fs::File::create(path).map_err(|e| io_err(path, e))?);
            writeln!(out, "x,p,re,im").map_err(|e| io_err(path, e))?;
            // Exponential form keeps tiny magnitudes compact; both
            // notations parse back to the identical double.
            for [x, p, re, im] in field_rows(field) {
                writeln!(out, "{x},{p},{re:e},{im:e}").map_err(|e| io_err(path, e))?;
            }
            out.flush().map_err(|e| io_err(path, e))
        }
    }
}

/// Load a JSON field file, validating schema, shape, lattice consistency,
/// and finiteness.
pub fn load_field(path: &Path) -> Result<PhaseSpaceField> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let file: FieldFile = serde_json::from_str(&text).map_err(|e| Error::Json {
        path: path.display().to_string(),
        source: e,
    })?;
    check_schema(path, &file.schema_version)?;
    let n = file.grid.n;
    if !n.is_power_of_two() || n < 8 {
        return Err(invalid(
            path,
            format!("field \"grid.n\" must be a power of two >= 8, got {n}"),
        ));
    }
    for (name, value) in [
        ("grid.dx", file.grid.dx),
        ("grid.hbar", file.grid.hbar),
        ("p_lattice.dp", file.p_lattice.dp),
    ] {
        if !(value.is_finite() && value > 0.0) {
            return Err(invalid(
                path,
                format!("field {name:?} must be positive and finite, got {value}"),
            ));
        }
    }
    if file.rows.len() != n * n {
        return Err(invalid(
            path,
            format!("field \"rows\" has {} entries, expected n^2 = {}", file.rows.len(), n * n),
        ));
    }
    let template = PhaseSpaceField::zeros(
        n,
        file.grid.hbar,
        file.grid.x_min,
        file.grid.dx,
        file.p_lattice.p_min,
        file.p_lattice.dp,
    );
    if !template.lattice_consistent() {
        return Err(invalid(
            path,
            format!(
                "lattice metadata violates grid duality: n*dx*dp = {} is neither pi*hbar = {} \
                 nor 4*pi*hbar",
                n as f64 * file.grid.dx * file.p_lattice.dp,
                std::f64::consts::PI * file.grid.hbar
            ),
        ));
    }
    let mut values = Vec::with_capacity(n * n);
    for (idx, row) in file.rows.iter().enumerate() {
        let (j, k) = (idx / n, idx % n);
        let [x, p, re, im] = *row;
        if !(x.is_finite() && p.is_finite() && re.is_finite() && im.is_finite()) {
            return Err(invalid(path, format!("row {idx} has a non-finite entry")));
        }
        let tol = 1e-9 * (1.0 + template.x(j).abs().max(template.p(k).abs()));
        if (x - template.x(j)).abs() > tol || (p - template.p(k)).abs() > tol {
            return Err(invalid(
                path,
                format!(
                    "row {idx} coordinates ({x}, {p}) do not match the declared lattice point \
                     ({}, {}); rows must be row-major in x then p",
                    template.x(j),
                    template.p(k)
                ),
            ));
        }
        values.push(Complex64::new(re, im));
    }
    PhaseSpaceField::from_values(&template, values)
}

/// Write a verification report as pretty JSON.
pub fn save_report(report: &VerificationReport, path: &Path) -> Result<()> {
    let text = serde_json::to_string_pretty(report).expect("report serializes");
    fs::write(path, text).map_err(|e| io_err(path, e))
}
