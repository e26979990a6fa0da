//! Verification reports: nested JSON or flat CSV.

use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::formulas::Row;

/// Column order of the CSV export.
pub const CSV_COLUMNS: [&str; 9] = ["formula_id", "sample_index", "param_json", "lhs", "rhs", "oracle", "residual", "verdict", "ms"];

#[derive(Debug, Clone, Serialize)]
pub struct Settings {
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub engine: Engine,
    pub oracle: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub samples: usize,
    pub passed: usize,
    pub failed: usize,
    pub max_residual: Option<f64>,
    /// variants that validated, with their counts
    pub variants: Vec<(String, usize)>,
    pub complex_argument_rows: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Section {
    pub formula_id: String,
    pub reference: String,
    pub summary: Summary,
    /// set when sampling itself failed
    pub error: Option<String>,
    pub rows: Vec<Row>,
}

impl Section {
    pub fn new(formula_id: &str, reference: &str, rows: Vec<Row>, error: Option<String>) -> Self {
        let mut variants: Vec<(String, usize)> = Vec::new();
        for v in rows.iter().filter(|r| r.pass).filter_map(|r| r.variant.clone()) {
            match variants.iter_mut().find(|(k, _)| *k == v) {
                Some((_, n)) => *n += 1,
                None => variants.push((v, 1)),
            }
        }
        let passed = rows.iter().filter(|r| r.pass).count();
        let summary = Summary {
            samples: rows.len(),
            passed,
            failed: rows.len() - passed,
            max_residual: rows.iter().filter_map(|r| r.residual).reduce(f64::max),
            variants,
            complex_argument_rows: rows.iter().filter(|r| r.complex_arguments).count(),
        };
        Self { formula_id: formula_id.into(), reference: reference.into(), summary, error, rows }
    }

    pub fn all_pass(&self) -> bool {
        self.error.is_none() && self.summary.failed == 0
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    /// Seconds since the Unix epoch; the only field that varies between runs
    /// apart from per-row timings.
    pub generated_at: u64,
    pub settings: Settings,
    pub sections: Vec<Section>,
}

impl VerificationReport {
    pub fn new(settings: Settings, sections: Vec<Section>) -> Self {
        let generated_at = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        Self { generated_at, settings, sections }
    }

    pub fn all_pass(&self) -> bool {
        self.sections.iter().all(Section::all_pass)
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Io(e.to_string()))
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        let io = |e: csv::Error| Error::Io(e.to_string());
        out.write_record(CSV_COLUMNS).map_err(io)?;
        let num = |v: Option<f64>| v.map(|x| format!("{x:e}")).unwrap_or_default();
        for s in &self.sections {
            for r in &s.rows {
                out.write_record([
                    r.formula_id.clone(),
                    r.sample_index.to_string(),
                    r.param_json(),
                    num(r.lhs),
                    num(r.rhs),
                    num(r.oracle.as_ref().map(|o| o.value)),
                    num(r.residual),
                    if r.pass { "pass".into() } else { "fail".into() },
                    format!("{:.3}", r.ms),
                ])
                .map_err(io)?;
            }
        }
        out.flush().map_err(|e| Error::Io(e.to_string()))
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        String::from_utf8(buf).map_err(|e| Error::Io(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::{find, verify_identity};

    fn report() -> VerificationReport {
        let f = find("C6.G1").unwrap();
        let rows = vec![
            verify_identity(f.as_ref(), &[0.6, 0.7, -3.0], 1e-8, Engine::Auto, false, 0),
            verify_identity(f.as_ref(), &[0.6, 0.7, 3.0], 1e-8, Engine::Auto, false, 1),
        ];
        let settings = Settings { samples: 2, seed: 0, tol: 1e-8, engine: Engine::Auto, oracle: false };
        VerificationReport::new(settings, vec![Section::new(f.id(), f.reference(), rows, None)])
    }

    #[test]
    fn summary_counts_failures() {
        let r = report();
        let s = &r.sections[0].summary;
        assert_eq!((s.samples, s.passed, s.failed), (2, 1, 1));
        assert!(!r.all_pass());
        assert!(r.sections[0].rows[1].error.as_deref().unwrap().contains("z <= 0"));
    }

    #[test]
    fn csv_header_and_rows() {
        let csv = report().to_csv().unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), CSV_COLUMNS.join(","));
        let first = lines.next().unwrap();
        assert!(first.starts_with("C6.G1,0,"));
        assert!(first.contains(",pass,"));
        assert_eq!(lines.count(), 1);
    }

    #[test]
    fn json_nests_rows() {
        let v: serde_json::Value = serde_json::from_str(&report().to_json().unwrap()).unwrap();
        assert_eq!(v["sections"][0]["rows"].as_array().unwrap().len(), 2);
        assert_eq!(v["sections"][0]["reference"], "Corollary Goursat1");
    }
}
