//! CSV and manifest emission.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Formats `x` with 12 significant digits in scientific notation.
pub fn fmt_sig(x: f64) -> String {
    format!("{x:.11e}")
}

/// Named numeric columns.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) -> Result<()> {
        if row.len() != self.header.len() {
            return Err(Error::ContractViolation(format!(
                "row has {} values for {} columns",
                row.len(),
                self.header.len()
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    /// Comma-separated text with a header row and `\n` line endings.
    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&x| fmt_sig(x)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// Writes `<id>.csv` and `<id>.manifest.json` into `outdir`, overwriting.
pub fn emit_outputs(
    outdir: &Path,
    id: &str,
    table: &Table,
    manifest: &serde_json::Value,
) -> Result<(PathBuf, PathBuf)> {
    fs::create_dir_all(outdir)?;
    let csv_path = outdir.join(format!("{id}.csv"));
    let manifest_path = outdir.join(format!("{id}.manifest.json"));
    fs::write(&csv_path, table.to_csv())?;
    let mut text = serde_json::to_string_pretty(manifest)?;
    text.push('\n');
    fs::write(&manifest_path, text)?;
    Ok((csv_path, manifest_path))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(fmt_sig(1.0), "1.00000000000e0");
        assert_eq!(fmt_sig(-2.5e-9), "-2.50000000000e-9");
        let x = std::f64::consts::PI * 1e7;
        let back: f64 = fmt_sig(x).parse().unwrap();
        assert!((back - x).abs() < 1e-11 * x);
    }

    #[test]
    fn csv_layout_and_idempotent_write() {
        let mut t = Table::new(&["time_s", "p0"]);
        t.push(vec![0.0, 1.0]).unwrap();
        assert!(t.push(vec![1.0]).is_err());
        assert_eq!(t.to_csv(), "time_s,p0\n0.00000000000e0,1.00000000000e0\n");
        let dir = tempfile::tempdir().unwrap();
        let m = serde_json::json!({"id": "x"});
        let (c1, m1) = emit_outputs(dir.path(), "x", &t, &m).unwrap();
        let first = fs::read(&c1).unwrap();
        emit_outputs(dir.path(), "x", &t, &m).unwrap();
        assert_eq!(first, fs::read(&c1).unwrap());
        assert!(fs::read_to_string(m1).unwrap().contains("\"id\""));
    }
}
