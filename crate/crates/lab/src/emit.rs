use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{LabError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnType {
    Int,
    Real,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
}

impl Cell {
    fn column_type(&self) -> ColumnType {
        match self {
            Cell::Int(_) => ColumnType::Int,
            Cell::Real(_) => ColumnType::Real,
        }
    }

    /// Integers in decimal; reals with 17 significant digits.
    pub fn render(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Real(r) if r.is_finite() => format!("{r:.16e}"),
            Cell::Real(r) => r.to_string(),
        }
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsvSchema {
    pub columns: Vec<(&'static str, ColumnType)>,
}

impl CsvSchema {
    pub fn new(columns: &[(&'static str, ColumnType)]) -> Self {
        Self { columns: columns.to_vec() }
    }

    pub fn header(&self) -> Vec<&'static str> {
        self.columns.iter().map(|c| c.0).collect()
    }
}

/// Renders `rows` as CSV with a header and `\n` line endings.
pub fn render_csv(rows: &[Vec<Cell>], schema: &CsvSchema) -> Result<Vec<u8>> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(schema.header())?;
    for (i, row) in rows.iter().enumerate() {
        if row.len() != schema.columns.len() {
            return Err(LabError::Schema(format!("row {i} has {} cells, expected {}", row.len(), schema.columns.len())));
        }
        for (cell, (name, ty)) in row.iter().zip(&schema.columns) {
            if cell.column_type() != *ty {
                return Err(LabError::Schema(format!("row {i}, column `{name}`: expected {ty:?}, got {cell:?}")));
            }
        }
        w.write_record(row.iter().map(Cell::render))?;
    }
    w.into_inner().map_err(|e| LabError::Schema(e.to_string()))
}

/// Writes `rows` to `path` atomically.
pub fn emit_csv(path: &Path, rows: &[Vec<Cell>], schema: &CsvSchema) -> Result<()> {
    write_atomic(path, &render_csv(rows, schema)?)
}

/// Pretty JSON with a trailing newline.
pub fn render_json<T: serde::Serialize + ?Sized>(value: &T) -> Result<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// Writes to a temporary sibling, then renames over `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir).map_err(|e| LabError::io(dir, e))?;
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    let write = || -> std::io::Result<()> {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    };
    write().map_err(|e| {
        let _ = fs::remove_file(&tmp);
        LabError::io(path, e)
    })
}
