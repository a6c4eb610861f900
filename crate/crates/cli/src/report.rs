//! Report documents: the JSON layout every job emits, and the flat CSV
//! projections of the sweep-type reports.

use serde::Serialize;
use sphlevy_core::GramReport;

use crate::scenario::{Kind, Scenario};
use crate::CliError;

/// Crate version stamped into every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub scenario: Scenario,
    pub result: ReportResult,
    pub status: Status,
    pub elapsed_ms: f64,
    pub version: &'static str,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum ReportResult {
    Value(ValueResult),
    Check(CheckResult),
    Schoenberg(SchoenbergResult),
    RecoverA(RecoverAResult),
    RecoverMeasure(RecoverMeasureResult),
    HaarTest(HaarTestResult),
    LemmaBounds(LemmaBoundsResult),
}

#[derive(Debug, Clone, Serialize)]
pub struct ValueResult {
    pub value: f64,
}

/// JSON face of a [`GramReport`].
#[derive(Debug, Clone, Serialize)]
pub struct GramReportJson {
    pub n_points: usize,
    pub eigenvalues: Vec<f64>,
    pub min_eig: f64,
    pub max_eig: f64,
    pub tol: f64,
    pub verdict: bool,
}

impl GramReportJson {
    pub fn from_core(report: &GramReport) -> Self {
        GramReportJson {
            n_points: report.size,
            eigenvalues: report.eigenvalues.clone(),
            min_eig: report.min_eig,
            max_eig: report.max_eig,
            tol: report.tolerance,
            verdict: report.pass,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub report: GramReportJson,
}

#[derive(Debug, Clone, Serialize)]
pub struct SchoenbergRow {
    pub t: f64,
    pub min_eig: f64,
    pub verdict: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SchoenbergResult {
    pub rows: Vec<SchoenbergRow>,
    pub verdict: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub s: f64,
    pub g: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RecoverAResult {
    pub a_hat: f64,
    pub a_true: f64,
    pub abs_err: f64,
    pub verdict: bool,
    pub sweep: Vec<SweepRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RecoverMeasureResult {
    pub a_hat: f64,
    pub weights: Vec<f64>,
    pub residual_rms: f64,
    pub condition: f64,
    pub verdict: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct HaarRow {
    pub n: usize,
    pub n_samples: usize,
    pub seed: u64,
    pub mean: f64,
    pub stderr: f64,
    pub target: f64,
    pub abs_dev: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct HaarTestResult {
    pub rows: Vec<HaarRow>,
    pub verdict: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaBoundsResult {
    pub hs_norm: f64,
    pub omega_norm: f64,
    pub value: f64,
    pub remainder: f64,
    pub bound: f64,
    pub verdict: bool,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut out =
            serde_json::to_string_pretty(self).expect("report serialization is infallible");
        out.push('\n');
        out
    }

    /// Flat CSV for the sweep-type kinds; the other kinds have no CSV form.
    pub fn to_csv(&self) -> Result<String, CliError> {
        match &self.result {
            ReportResult::RecoverA(r) => {
                let mut out = String::from("s,g\n");
                for row in &r.sweep {
                    out.push_str(&format!("{},{}\n", row.s, row.g));
                }
                Ok(out)
            }
            ReportResult::HaarTest(r) => {
                let mut out = String::from("n,mean,stderr,target,abs_dev\n");
                for row in &r.rows {
                    out.push_str(&format!(
                        "{},{},{},{},{}\n",
                        row.n, row.mean, row.stderr, row.target, row.abs_dev
                    ));
                }
                Ok(out)
            }
            ReportResult::Schoenberg(r) => {
                let mut out = String::from("t,min_eig,verdict\n");
                for row in &r.rows {
                    out.push_str(&format!("{},{},{}\n", row.t, row.min_eig, row.verdict));
                }
                Ok(out)
            }
            _ => Err(CliError::Input(format!(
                "kind `{}` has no CSV form (CSV covers recover-a, haar-test, schoenberg)",
                self.scenario.kind
            ))),
        }
    }
}

/// Kinds whose reports project to CSV.
pub fn has_csv_form(kind: Kind) -> bool {
    matches!(kind, Kind::RecoverA | Kind::HaarTest | Kind::Schoenberg)
}
