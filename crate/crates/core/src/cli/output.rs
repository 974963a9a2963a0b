use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::kernels::SolverConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// One CSV cell before formatting.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
    Text(String),
    Bool(bool),
    Empty,
}

impl Cell {
    fn render(&self, table5: bool) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Real(v) => format_real(*v, table5),
            Cell::Text(t) => t.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(i64::from(v))
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

/// Full round-trip precision by default; five decimals (ties to even) for
/// the table layout. Non-finite values are spelled `inf`, `-inf`, `nan`.
pub fn format_real(v: f64, table5: bool) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.into()
    } else if table5 {
        format!("{v:.5}")
    } else {
        format!("{v:?}")
    }
}

/// A row that can be written as CSV (fixed header) or JSON (serde).
pub trait Record: Serialize {
    fn header() -> &'static [&'static str];
    fn cells(&self) -> Vec<Cell>;
}

pub fn render<R: Record>(rows: &[R], format: Format, table5: bool) -> Result<Vec<u8>, String> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(R::header()).map_err(|e| e.to_string())?;
            for r in rows {
                let cells: Vec<String> = r.cells().iter().map(|c| c.render(table5)).collect();
                w.write_record(&cells).map_err(|e| e.to_string())?;
            }
            w.into_inner().map_err(|e| e.to_string())
        }
        Format::Json => {
            let mut value = serde_json::to_value(rows).map_err(|e| e.to_string())?;
            if table5 {
                round_numbers(&mut value);
            }
            let mut bytes = serde_json::to_vec_pretty(&value).map_err(|e| e.to_string())?;
            bytes.push(b'\n');
            Ok(bytes)
        }
    }
}

fn round_numbers(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap_or(f64::NAN);
            if let Some(r) = format!("{x:.5}").parse::<f64>().ok().and_then(serde_json::Number::from_f64) {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_numbers),
        Value::Object(map) => map.values_mut().for_each(round_numbers),
        _ => {}
    }
}

/// Per-row status recorded in the manifest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RowFlag {
    pub key: String,
    pub ok: bool,
    pub certified: bool,
}

/// Side-car describing how a data file was produced. Wall time lives here
/// and never in the data file, so data files are reproducible byte for
/// byte.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub arguments: Vec<String>,
    pub parameters: Value,
    pub tolerances: SolverConfig,
    pub version: String,
    pub wall_time_seconds: f64,
    pub format: Format,
    pub table5: bool,
    pub data_file: Option<String>,
    pub rows: usize,
    pub failed_rows: usize,
    pub uncertified_rows: usize,
    pub row_flags: Vec<RowFlag>,
}

pub fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().map(|s| s.to_os_string()).unwrap_or_default();
    name.push(".manifest.json");
    out.with_file_name(name)
}

/// Write the data to `out` (or `stdout`) and, for files, the manifest next
/// to it.
pub fn emit(
    data: &[u8],
    out: Option<&Path>,
    manifest: &RunManifest,
    stdout: &mut dyn Write,
) -> Result<(), String> {
    match out {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
            }
            fs::write(path, data).map_err(|e| format!("{}: {e}", path.display()))?;
            let mut m = serde_json::to_vec_pretty(manifest).map_err(|e| e.to_string())?;
            m.push(b'\n');
            let mpath = manifest_path(path);
            fs::write(&mpath, m).map_err(|e| format!("{}: {e}", mpath.display()))
        }
        None => stdout.write_all(data).map_err(|e| e.to_string()),
    }
}
