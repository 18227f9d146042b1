use std::fmt::Write as _;
use std::path::PathBuf;

use hsbasis::identities::IdentityReport;
use hsbasis::IdentityId;
use serde_json::{json, Value};

use crate::args::{BasisSpec, ReportFormat};

pub const SCHEMA_VERSION: u32 = 1;

/// Everything that determines the outcome of a `verify` run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub dim: usize,
    pub basis: BasisSpec,
    pub ids: Option<Vec<IdentityId>>,
    pub seed: u64,
    pub report: ReportFormat,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    /// The output path is left out: it only says where the report goes.
    fn to_value(&self) -> Value {
        let ids = self
            .ids
            .as_ref()
            .map(|ids| ids.iter().map(|id| id.name()).collect::<Vec<_>>());
        json!({
            "dim": self.dim,
            "basis": self.basis.to_string(),
            "ids": ids,
            "seed": self.seed,
            "report": self.report.name(),
        })
    }
}

/// Rounds to 10 significant digits.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.9e}").parse().expect("formatted float parses")
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "pass"
    } else {
        "fail"
    }
}

pub fn machine_report(config: &RunConfig, report: &IdentityReport) -> String {
    let results: Vec<Value> = report
        .entries
        .iter()
        .map(|e| {
            json!({
                "id": e.id.name(),
                "residual": round_sig(e.residual),
                "tolerance": round_sig(e.tolerance),
                "verdict": verdict(e.passed),
            })
        })
        .collect();
    let doc = json!({
        "schema": SCHEMA_VERSION,
        "config": config.to_value(),
        "results": results,
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub fn text_report(config: &RunConfig, report: &IdentityReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "basis {} (d = {}, seed {})",
        config.basis, report.d, report.seed
    );
    let width = report
        .entries
        .iter()
        .map(|e| e.id.name().len())
        .max()
        .unwrap_or(0);
    for e in &report.entries {
        let _ = writeln!(
            s,
            "{:<width$}  {}  residual {:.3e}  tolerance {:.3e}  {}",
            e.id.name(),
            verdict(e.passed).to_uppercase(),
            e.residual,
            e.tolerance,
            e.description,
        );
    }
    let failed = report.failures().count();
    let _ = writeln!(
        s,
        "{} of {} identities passed",
        report.entries.len() - failed,
        report.entries.len()
    );
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_keeps_ten_digits() {
        assert_eq!(round_sig(1.234567890123e-12), 1.23456789e-12);
        assert_eq!(round_sig(2.0 / 3.0), 0.6666666667);
        assert_eq!(round_sig(0.0), 0.0);
        assert!(round_sig(f64::NAN).is_nan());
    }
}
