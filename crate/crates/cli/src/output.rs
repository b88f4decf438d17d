//! Schema-checked CSV tables and write-then-rename file output.

use std::io::Write;
use std::path::Path;

use tempfile::NamedTempFile;

/// Floats with 17 significant digits.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// A numeric table with a fixed header.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        self.rows.push(row);
    }

    pub fn header(&self) -> &[&'static str] {
        &self.header
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    /// Every row has one finite value per column.
    pub fn validate(&self) -> Result<(), String> {
        if self.header.is_empty() {
            return Err("table has no columns".to_owned());
        }
        for (i, row) in self.rows.iter().enumerate() {
            if row.len() != self.header.len() {
                return Err(format!("row {i} has {} values, header has {} columns", row.len(), self.header.len()));
            }
            if let Some(j) = row.iter().position(|v| !v.is_finite()) {
                return Err(format!("row {i}, column `{}` is not finite: {}", self.header[j], row[j]));
            }
        }
        Ok(())
    }

    pub fn to_csv(&self) -> Result<Vec<u8>, String> {
        self.validate()?;
        let mut w = csv::Writer::from_writer(Vec::new());
        let fail = |e: csv::Error| e.to_string();
        w.write_record(&self.header).map_err(fail)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|v| fmt_f64(*v))).map_err(fail)?;
        }
        w.into_inner().map_err(|e| e.to_string())
    }

    /// Validates, then writes atomically.
    pub fn write(&self, path: &Path) -> Result<(), String> {
        let bytes = self.to_csv().map_err(|e| format!("{}: {e}", path.display()))?;
        write_atomic(path, &bytes)
    }
}

/// Writes `bytes` to a temporary file beside `path` and renames it into
/// place, so readers never see a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), String> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let fail = |e: std::io::Error| format!("{}: {e}", path.display());
    std::fs::create_dir_all(dir).map_err(fail)?;
    let mut tmp = NamedTempFile::new_in(dir).map_err(fail)?;
    tmp.write_all(bytes).map_err(fail)?;
    tmp.as_file().sync_all().map_err(fail)?;
    tmp.persist(path).map_err(|e| fail(e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(fmt_f64(0.1), "1.0000000000000001e-1");
        assert_eq!(fmt_f64(-3.0), "-3.0000000000000000e0");
        let back: f64 = fmt_f64(std::f64::consts::PI).parse().unwrap();
        assert_eq!(back, std::f64::consts::PI);
    }

    #[test]
    fn schema_violations_rejected() {
        let mut t = Table::new(&["x", "u"]);
        t.push(vec![0.0, 1.0]);
        assert!(t.validate().is_ok());
        t.push(vec![1.0]);
        assert!(t.validate().unwrap_err().contains("row 1"));
        let mut t = Table::new(&["x", "u"]);
        t.push(vec![0.0, f64::NAN]);
        assert!(t.validate().unwrap_err().contains("`u`"));
    }

    #[test]
    fn failed_write_leaves_no_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.csv");
        let mut t = Table::new(&["x"]);
        t.push(vec![f64::INFINITY]);
        assert!(t.write(&path).is_err());
        assert!(!path.exists());
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
    }

    #[test]
    fn written_table_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("nested").join("t.csv");
        let mut t = Table::new(&["x", "t", "u"]);
        t.push(vec![-3.0, 0.0, 0.5]);
        t.write(&path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text, "x,t,u\n-3.0000000000000000e0,0.0000000000000000e0,5.0000000000000000e-1\n");
    }
}
