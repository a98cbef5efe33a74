//! Column-oriented CSV output.
//!
//! Floats are written with Rust's shortest round-trip formatting, so parsing a
//! cell gives back the identical `f64`.

use std::path::Path;

use crate::error::{Error, Result};

/// Named columns of equal length.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub headers: Vec<String>,
    pub columns: Vec<Vec<f64>>,
}

impl Table {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, header: impl Into<String>, column: Vec<f64>) {
        if let Some(first) = self.columns.first() {
            assert_eq!(first.len(), column.len(), "column length mismatch");
        }
        self.headers.push(header.into());
        self.columns.push(column);
    }

    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, Vec::len)
    }

    pub fn column(&self, header: &str) -> Option<&[f64]> {
        self.headers
            .iter()
            .position(|h| h == header)
            .map(|i| self.columns[i].as_slice())
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let csv_err = |source| Error::Csv {
            path: path.to_path_buf(),
            source,
        };
        let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
        w.write_record(&self.headers).map_err(csv_err)?;
        for r in 0..self.rows() {
            w.write_record(self.columns.iter().map(|c| format_float(c[r])))
                .map_err(csv_err)?;
        }
        w.flush().map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
    }

    pub fn read(path: &Path) -> Result<Self> {
        let csv_err = |source| Error::Csv {
            path: path.to_path_buf(),
            source,
        };
        let mut r = csv::Reader::from_path(path).map_err(csv_err)?;
        let headers: Vec<String> = r.headers().map_err(csv_err)?.iter().map(String::from).collect();
        let mut columns = vec![Vec::new(); headers.len()];
        for record in r.records() {
            let record = record.map_err(csv_err)?;
            for (col, cell) in columns.iter_mut().zip(record.iter()) {
                col.push(
                    cell.parse()
                        .map_err(|_| Error::InvalidConfig(format!("{}: `{cell}` is not a number", path.display())))?,
                );
            }
        }
        Ok(Self { headers, columns })
    }
}

/// Shortest representation that parses back to the same value.
pub fn format_float(v: f64) -> String {
    format!("{v:?}")
}
