//! CSV tables and on-disk output of a run.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use crate::report::ComparisonReport;

/// A CSV table held in memory. Floats use the shortest round-trip form
/// (exponent notation for very small or large magnitudes).
#[derive(Clone, Debug, PartialEq)]
pub struct CsvTable {
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl CsvTable {
    pub fn new(name: impl Into<String>, header: &[&str]) -> Self {
        Self { name: name.into(), header: header.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r.iter().map(|x| format!("{x:?}"))).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    pub fn file_name(&self) -> String {
        format!("{}.csv", self.name)
    }
}

/// Everything a run produces.
#[derive(Clone, Debug)]
pub struct RunOutput {
    pub report: ComparisonReport,
    pub tables: Vec<CsvTable>,
}

impl RunOutput {
    /// Writes every CSV, `summary.json`, `report.txt` and a replay
    /// `config.toml` into `dir`, returning the paths written.
    pub fn write_to(&self, dir: &Path) -> io::Result<Vec<PathBuf>> {
        fs::create_dir_all(dir)?;
        let mut written = Vec::new();
        let mut put = |name: &str, body: &str| -> io::Result<()> {
            let p = dir.join(name);
            fs::write(&p, body)?;
            written.push(p);
            Ok(())
        };
        for t in &self.tables {
            put(&t.file_name(), &t.to_csv())?;
        }
        put("summary.json", &self.report.to_json())?;
        put("report.txt", &self.report.to_text())?;
        put("config.toml", &self.report.provenance.config.to_toml())?;
        Ok(written)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let mut t = CsvTable::new("d", &["x", "rho"]);
        t.push(vec![-0.5, 0.1]);
        t.push(vec![1e-20, f64::NAN]);
        assert_eq!(t.to_csv(), "x,rho\n-0.5,0.1\n1e-20,NaN\n");
    }
}
