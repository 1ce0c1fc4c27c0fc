//! `run` and `sweep`: scenario construction, analysis and exit-status mapping.

use std::fmt;
use std::path::Path;

use qcausal_core::causality::{prepare, AnalysisConfig, CausalityReport, ReportValue};
use qcausal_core::{principal, Error};
use rayon::prelude::*;

use crate::config::{ConfigError, ScenarioConfig};
use crate::output::{csv_cell, pattern_csv, to_json_bytes, ReportDocument};
use crate::scenario::build_scenario;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NOT_APPLICABLE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Config,
    Construction,
    Analysis,
    Output,
}

impl Stage {
    pub fn as_str(self) -> &'static str {
        match self {
            Stage::Config => "config",
            Stage::Construction => "construction",
            Stage::Analysis => "analysis",
            Stage::Output => "output",
        }
    }
}

/// A failure that maps to exit status 1.
#[derive(Debug)]
pub struct RunError {
    pub stage: Stage,
    pub message: String,
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} error: {}", self.stage.as_str(), self.message)
    }
}

impl std::error::Error for RunError {}

impl RunError {
    fn new(stage: Stage, err: impl fmt::Display) -> Self {
        Self {
            stage,
            message: err.to_string(),
        }
    }
}

impl From<ConfigError> for RunError {
    fn from(e: ConfigError) -> Self {
        RunError::new(Stage::Config, e)
    }
}

/// Status string for outcomes where the stationary-phase analysis does not apply.
pub fn not_applicable_status(err: &Error) -> Option<&'static str> {
    match err {
        Error::NoStationaryPoint | Error::ZeroChirp => Some("no_stationary_point"),
        Error::MultipleStationaryPoints { .. } => Some("multiple_stationary_points"),
        Error::DegenerateCurvature { .. } => Some("degenerate_curvature"),
        _ => None,
    }
}

pub fn analysis_config(cfg: &ScenarioConfig) -> AnalysisConfig<f64> {
    AnalysisConfig {
        hbar: cfg.hbar,
        floor: cfg.floor,
        validity_factor: cfg.validity_factor,
    }
}

/// Everything a single run produces, before any file is written.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub status: &'static str,
    pub exit_code: i32,
    pub report: Option<CausalityReport<f64>>,
    pub report_json: Vec<u8>,
    pub pattern_csv: Option<String>,
    pub message: Option<String>,
    fields: Vec<(&'static str, ReportValue)>,
}

impl RunOutcome {
    /// Report fields in output order, `Missing` where unavailable.
    pub fn fields(&self) -> &[(&'static str, ReportValue)] {
        &self.fields
    }
}

fn not_applicable_outcome(
    status: &'static str,
    err: &Error,
    doc: ReportDocument<'_>,
    pattern: Option<String>,
) -> Result<RunOutcome, RunError> {
    let report_json = to_json_bytes(&doc).map_err(|e| RunError::new(Stage::Output, e))?;
    Ok(RunOutcome {
        status,
        exit_code: EXIT_NOT_APPLICABLE,
        report: None,
        report_json,
        pattern_csv: pattern,
        message: Some(format!("analysis: {err}")),
        fields: doc.fields,
    })
}

/// Builds and analyses one scenario. `Err` means exit status 1.
pub fn execute(cfg: &ScenarioConfig, with_pattern: bool) -> Result<RunOutcome, RunError> {
    cfg.validate()?;
    let scenario = match build_scenario(cfg) {
        Ok(s) => s,
        Err(e) => {
            return match not_applicable_status(&e) {
                Some(status) => {
                    let doc = ReportDocument::failure(status, format!("construction: {e}"), None, 0.0, cfg);
                    not_applicable_outcome(status, &e, doc, None)
                }
                None => Err(RunError::new(Stage::Construction, e)),
            }
        }
    };
    let acfg = analysis_config(cfg);
    let prepared = prepare(&scenario.a, &scenario.b, &acfg).map_err(|e| RunError::new(Stage::Analysis, e))?;
    let pattern = with_pattern.then(|| pattern_csv(&prepared));
    match prepared.report(&acfg) {
        Ok(mut report) => {
            report.overlap_rotation_phi = principal(scenario.rotation_phi + report.overlap_rotation_phi);
            let doc = ReportDocument::success(&report, cfg);
            let report_json = to_json_bytes(&doc).map_err(|e| RunError::new(Stage::Output, e))?;
            Ok(RunOutcome {
                status: "ok",
                exit_code: EXIT_OK,
                fields: doc.fields,
                report: Some(report),
                report_json,
                pattern_csv: pattern,
                message: None,
            })
        }
        Err(e) => match not_applicable_status(&e) {
            Some(status) => {
                let doc = ReportDocument::failure(
                    status,
                    format!("analysis: {e}"),
                    Some(&prepared),
                    scenario.rotation_phi,
                    cfg,
                );
                not_applicable_outcome(status, &e, doc, pattern)
            }
            None => Err(RunError::new(Stage::Analysis, e)),
        },
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), RunError> {
    std::fs::write(path, bytes)
        .map_err(|e| RunError::new(Stage::Output, format!("cannot write {}: {e}", path.display())))
}

/// Full `run` command. The report goes to `report_path`, or stdout when absent.
pub fn run_command(config_path: &Path, report_path: Option<&Path>, pattern_path: Option<&Path>) -> i32 {
    let result = crate::config::load_config(config_path)
        .map_err(RunError::from)
        .and_then(|cfg| execute(&cfg, pattern_path.is_some()))
        .and_then(|outcome| {
            match report_path {
                Some(p) => write_file(p, &outcome.report_json)?,
                None => print!("{}", String::from_utf8_lossy(&outcome.report_json)),
            }
            if let (Some(p), Some(csv)) = (pattern_path, &outcome.pattern_csv) {
                write_file(p, csv.as_bytes())?;
            }
            Ok(outcome)
        });
    match result {
        Ok(outcome) => {
            if let Some(msg) = &outcome.message {
                eprintln!("status {}: {msg}", outcome.status);
            }
            outcome.exit_code
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub param: String,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
    pub scale: Scale,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), RunError> {
        let bad = |reason: String| Err(RunError::new(Stage::Config, reason));
        if !crate::config::SWEEP_PARAMETERS.contains(&self.param.as_str()) {
            return bad(ConfigError::UnknownParameter(self.param.clone()).to_string());
        }
        if self.steps < 2 {
            return bad(format!("sweep needs at least 2 steps, got {}", self.steps));
        }
        if !(self.from.is_finite() && self.to.is_finite()) || self.from == self.to {
            return bad(format!(
                "sweep endpoints must be finite and distinct, got {} and {}",
                self.from, self.to
            ));
        }
        if self.scale == Scale::Log && !(self.from > 0.0 && self.to > 0.0) {
            return bad("log sweep needs positive endpoints".into());
        }
        Ok(())
    }

    /// Sweep values; the first and last equal `from` and `to` exactly.
    pub fn values(&self) -> Vec<f64> {
        let last = self.steps - 1;
        (0..self.steps)
            .map(|i| {
                if i == 0 {
                    return self.from;
                }
                if i == last {
                    return self.to;
                }
                let f = i as f64 / last as f64;
                match self.scale {
                    Scale::Linear => self.from + f * (self.to - self.from),
                    Scale::Log => (self.from.ln() + f * (self.to.ln() - self.from.ln())).exp(),
                }
            })
            .collect()
    }
}

/// One evaluated sweep point.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub value: f64,
    pub status: String,
    pub fields: Vec<(&'static str, ReportValue)>,
    pub message: Option<String>,
}

impl SweepRow {
    pub fn succeeded(&self) -> bool {
        self.status == "ok"
    }

    pub fn get(&self, name: &str) -> Option<ReportValue> {
        self.fields.iter().find(|(k, _)| *k == name).map(|(_, v)| *v)
    }
}

fn missing_fields() -> Vec<(&'static str, ReportValue)> {
    CausalityReport::<f64>::field_names()
        .into_iter()
        .map(|n| (n, ReportValue::Missing))
        .collect()
}

fn sweep_point(cfg: &ScenarioConfig, param: &str, value: f64) -> SweepRow {
    let outcome = cfg
        .with_param(param, value)
        .map_err(RunError::from)
        .and_then(|c| execute(&c, false));
    match outcome {
        Ok(o) => SweepRow {
            value,
            status: o.status.to_string(),
            fields: o.fields().to_vec(),
            message: o.message,
        },
        Err(e) => SweepRow {
            value,
            status: format!("{}_error", e.stage.as_str()),
            fields: missing_fields(),
            message: Some(e.message),
        },
    }
}

/// Evaluates every sweep point in parallel; rows come back in sweep order.
pub fn sweep(cfg: &ScenarioConfig, spec: &SweepSpec) -> Result<Vec<SweepRow>, RunError> {
    cfg.validate()?;
    spec.validate()?;
    Ok(spec
        .values()
        .into_par_iter()
        .map(|v| sweep_point(cfg, &spec.param, v))
        .collect())
}

/// Sweep CSV: swept value, status, one column per report field, message.
pub fn sweep_csv(param: &str, rows: &[SweepRow]) -> Result<Vec<u8>, RunError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let names = CausalityReport::<f64>::field_names();
    let mut header = vec![param, "status"];
    header.extend(names.iter().copied());
    header.push("message");
    w.write_record(&header).map_err(|e| RunError::new(Stage::Output, e))?;
    for row in rows {
        let mut rec = vec![crate::output::fmt_f64(row.value), row.status.clone()];
        rec.extend(row.fields.iter().map(|(_, v)| csv_cell(v)));
        rec.push(row.message.clone().unwrap_or_default());
        w.write_record(&rec).map_err(|e| RunError::new(Stage::Output, e))?;
    }
    w.into_inner().map_err(|e| RunError::new(Stage::Output, e))
}

/// Full `sweep` command: exit 0 when at least one point succeeded.
pub fn sweep_command(config_path: &Path, spec: &SweepSpec, out: &Path) -> i32 {
    let result = crate::config::load_config(config_path)
        .map_err(RunError::from)
        .and_then(|cfg| sweep(&cfg, spec))
        .and_then(|rows| {
            write_file(out, &sweep_csv(&spec.param, &rows)?)?;
            Ok(rows)
        });
    match result {
        Ok(rows) => {
            let ok = rows.iter().filter(|r| r.succeeded()).count();
            eprintln!("{ok} of {} sweep points succeeded", rows.len());
            if ok > 0 {
                EXIT_OK
            } else {
                EXIT_ERROR
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(from: f64, to: f64, steps: usize, scale: Scale) -> SweepSpec {
        SweepSpec {
            param: "chirp".into(),
            from,
            to,
            steps,
            scale,
        }
    }

    #[test]
    fn sweep_values_hit_endpoints() {
        let v = spec(0.05, 0.5, 10, Scale::Log).values();
        assert_eq!(v.len(), 10);
        assert_eq!(v[0], 0.05);
        assert_eq!(v[9], 0.5);
        assert!(v.windows(2).all(|w| w[1] > w[0]));
        assert!(((v[1] / v[0]) - (v[2] / v[1])).abs() < 1e-12);
        assert_eq!(spec(1.0, 0.0, 3, Scale::Linear).values(), vec![1.0, 0.5, 0.0]);
    }

    #[test]
    fn sweep_spec_validation() {
        assert!(spec(0.1, 0.1, 3, Scale::Linear).validate().is_err());
        assert!(spec(0.1, 0.2, 1, Scale::Linear).validate().is_err());
        assert!(spec(-0.1, 0.2, 3, Scale::Log).validate().is_err());
        let mut s = spec(0.1, 0.2, 3, Scale::Linear);
        s.param = "grid.n".into();
        assert!(s.validate().is_err());
    }

    #[test]
    fn zero_chirp_is_not_applicable() {
        let cfg = ScenarioConfig::default_conjugate_pair()
            .with_param("chirp", 0.0)
            .unwrap();
        let out = execute(&cfg, false).unwrap();
        assert_eq!(out.exit_code, EXIT_NOT_APPLICABLE);
        assert_eq!(out.status, "no_stationary_point");
    }

    #[test]
    fn linear_phase_keeps_partial_fields() {
        let cfg = ScenarioConfig::default_propagation().with_param("time", 0.0).unwrap();
        let out = execute(&cfg, true).unwrap();
        assert_eq!(out.status, "no_stationary_point");
        assert!(out.pattern_csv.is_some());
        let s = out.fields().iter().find(|(k, _)| *k == "s").unwrap().1;
        assert!(matches!(s, ReportValue::Real(v) if v > 0.0 && v < 1.0));
        let mu = out.fields().iter().find(|(k, _)| *k == "mu").unwrap().1;
        assert_eq!(mu, ReportValue::Missing);
        let text = String::from_utf8(out.report_json).unwrap();
        assert!(text.contains("\"mu\": null"));
    }

    #[test]
    fn construction_error_names_stage() {
        let cfg = ScenarioConfig::default_propagation().with_param("time", 40.0).unwrap();
        let err = execute(&cfg, false).unwrap_err();
        assert_eq!(err.stage, Stage::Construction);
        assert!(err.to_string().starts_with("construction error"));
    }

    #[test]
    fn rotation_is_combined() {
        let cfg = ScenarioConfig::default_conjugate_pair();
        let built = build_scenario(&cfg).unwrap();
        let rep = execute(&cfg, false).unwrap().report.unwrap();
        assert!(built.rotation_phi.abs() > 0.1);
        assert!((rep.overlap_rotation_phi - built.rotation_phi).abs() < 1e-12);
        assert!(rep.symmetry_residual < 1e-12);
    }
}
