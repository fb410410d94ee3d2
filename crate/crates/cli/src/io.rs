//! Output formats: SLEPB001 binary matrices, 17-significant-digit CSV, JSON. Every file is
//! written to a temporary sibling and renamed into place.

use crate::error::{CliError, CliResult};
use num_complex::Complex64;
use std::io::Write;
use std::path::Path;

pub const MAGIC: &[u8; 8] = b"SLEPB001";

#[derive(Debug, Clone, PartialEq)]
pub enum MatrixData {
    Real(Vec<f64>),
    Complex(Vec<Complex64>),
}

/// Row-major matrix as stored on disk.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: MatrixData,
}

impl Matrix {
    pub fn real(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Self { rows, cols, data: MatrixData::Real(data) }
    }

    pub fn complex(rows: usize, cols: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Self { rows, cols, data: MatrixData::Complex(data) }
    }

    pub fn from_dmatrix(a: &nalgebra::DMatrix<f64>) -> Self {
        Self::real(a.nrows(), a.ncols(), a.transpose().as_slice().to_vec())
    }

    pub fn from_dmatrix_complex(a: &nalgebra::DMatrix<Complex64>) -> Self {
        Self::complex(a.nrows(), a.ncols(), a.transpose().as_slice().to_vec())
    }

    /// All entries as complex numbers, row-major.
    pub fn to_complex(&self) -> Vec<Complex64> {
        match &self.data {
            MatrixData::Real(v) => v.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
            MatrixData::Complex(v) => v.clone(),
        }
    }

    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(17 + 16 * self.rows * self.cols);
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&(self.rows as u32).to_le_bytes());
        out.extend_from_slice(&(self.cols as u32).to_le_bytes());
        match &self.data {
            MatrixData::Real(v) => {
                out.push(0);
                v.iter().for_each(|x| out.extend_from_slice(&x.to_le_bytes()));
            }
            MatrixData::Complex(v) => {
                out.push(1);
                for z in v {
                    out.extend_from_slice(&z.re.to_le_bytes());
                    out.extend_from_slice(&z.im.to_le_bytes());
                }
            }
        }
        out
    }

    pub fn decode(bytes: &[u8]) -> Result<Self, String> {
        if bytes.len() < 17 || &bytes[..8] != MAGIC {
            return Err("not a SLEPB001 matrix".into());
        }
        let u32_at = |i: usize| u32::from_le_bytes(bytes[i..i + 4].try_into().unwrap()) as usize;
        let (rows, cols, tag) = (u32_at(8), u32_at(12), bytes[16]);
        let n = rows.checked_mul(cols).ok_or("matrix size overflows")?;
        let width = match tag {
            0 => 8,
            1 => 16,
            t => return Err(format!("unknown scalar tag {t}")),
        };
        let payload = &bytes[17..];
        if payload.len() != n * width {
            return Err(format!("payload is {} bytes, expected {} for {rows}x{cols}", payload.len(), n * width));
        }
        let f = |i: usize| f64::from_le_bytes(payload[8 * i..8 * i + 8].try_into().unwrap());
        let data = if tag == 0 {
            MatrixData::Real((0..n).map(f).collect())
        } else {
            MatrixData::Complex((0..n).map(|i| Complex64::new(f(2 * i), f(2 * i + 1))).collect())
        };
        Ok(Self { rows, cols, data })
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.to_path_buf(), source }
}

pub fn write_atomic(path: &Path, bytes: &[u8]) -> CliResult<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir).map_err(io_err(dir))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err(dir))?;
    tmp.write_all(bytes).map_err(io_err(path))?;
    tmp.persist(path).map_err(|e| CliError::Io { path: path.to_path_buf(), source: e.error })?;
    Ok(())
}

pub fn write_matrix(path: &Path, m: &Matrix) -> CliResult<()> {
    write_atomic(path, &m.encode())
}

pub fn read_matrix(path: &Path) -> CliResult<Matrix> {
    let bytes = std::fs::read(path).map_err(io_err(path))?;
    Matrix::decode(&bytes).map_err(|msg| CliError::Format { path: path.to_path_buf(), msg })
}

/// Shortest form that carries 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Empty,
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

pub fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<Cell>>) -> String {
    let mut s = header.join(",");
    s.push('\n');
    for row in rows {
        let cells: Vec<String> = row
            .iter()
            .map(|c| match c {
                Cell::Int(v) => v.to_string(),
                Cell::Float(v) => fmt_f64(*v),
                Cell::Empty => String::new(),
            })
            .collect();
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    s
}

pub fn write_csv(path: &Path, header: &[&str], rows: impl IntoIterator<Item = Vec<Cell>>) -> CliResult<()> {
    write_atomic(path, csv_string(header, rows).as_bytes())
}

pub fn write_json(path: &Path, value: &serde_json::Value) -> CliResult<()> {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    write_atomic(path, s.as_bytes())
}
