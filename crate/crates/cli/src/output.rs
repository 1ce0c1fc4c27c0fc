//! Fixed-format JSON and CSV writers.
//!
//! Every floating-point number is written with 17 significant digits in
//! lowercase exponent notation, so identical inputs give byte-identical files.

use std::io::{self, Write};

use qcausal_core::causality::{CausalityReport, Prepared, ReportValue};
use serde::ser::{Serialize, SerializeMap, Serializer};
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::config::ScenarioConfig;

/// `1.2345678901234567e-3`; non-finite values become `nan`/`inf`.
pub fn fmt_f64(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{v:.16e}")
    }
}

/// Pretty JSON with fixed-precision floats.
struct FixedFormatter<'a>(PrettyFormatter<'a>);

impl Formatter for FixedFormatter<'_> {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(fmt_f64(value).as_bytes())
    }
    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

pub fn to_json_bytes<S: Serialize>(value: &S) -> serde_json::Result<Vec<u8>> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, FixedFormatter(PrettyFormatter::new()));
    value.serialize(&mut ser)?;
    out.push(b'\n');
    Ok(out)
}

struct Value(ReportValue);

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0 {
            ReportValue::Real(v) => s.serialize_f64(v),
            ReportValue::Flag(b) => s.serialize_bool(b),
            ReportValue::Text(t) => s.serialize_str(t),
            ReportValue::Missing => s.serialize_none(),
        }
    }
}

/// The report file: `status`, every report field (null when unavailable),
/// an optional error message, and the configuration that produced it.
pub struct ReportDocument<'a> {
    pub status: &'a str,
    pub fields: Vec<(&'static str, ReportValue)>,
    pub error: Option<String>,
    pub config: &'a ScenarioConfig,
}

impl<'a> ReportDocument<'a> {
    pub fn success(report: &CausalityReport<f64>, config: &'a ScenarioConfig) -> Self {
        Self {
            status: "ok",
            fields: report.fields(),
            error: None,
            config,
        }
    }

    /// Report for a run that stopped before the stationary-point analysis;
    /// fields known from the prepared pair are filled in.
    pub fn failure(
        status: &'a str,
        error: String,
        prepared: Option<&Prepared<f64>>,
        rotation_phi: f64,
        config: &'a ScenarioConfig,
    ) -> Self {
        let fields = CausalityReport::<f64>::field_names()
            .into_iter()
            .map(|name| {
                let v = prepared.and_then(|p| {
                    let sup = &p.superposition;
                    match name {
                        "s" | "joint_prob_lower_bound" => Some(ReportValue::Real(sup.s)),
                        "p_a" => Some(ReportValue::Real(sup.p_a)),
                        "p_b" => Some(ReportValue::Real(sup.p_b)),
                        "symmetry_residual" => Some(ReportValue::Real(p.symmetry_residual)),
                        "aliasing_warning" => Some(ReportValue::Flag(p.profile.aliasing().is_some())),
                        "overlap_rotation_phi" => Some(ReportValue::Real(qcausal_core::principal(
                            rotation_phi + p.rotation_phi,
                        ))),
                        _ => None,
                    }
                });
                (name, v.unwrap_or(ReportValue::Missing))
            })
            .collect();
        Self {
            status,
            fields,
            error: Some(error),
            config,
        }
    }
}

impl Serialize for ReportDocument<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        map.serialize_entry("status", self.status)?;
        for (k, v) in &self.fields {
            map.serialize_entry(k, &Value(*v))?;
        }
        if let Some(e) = &self.error {
            map.serialize_entry("error", e)?;
        }
        map.serialize_entry("config_echo", self.config)?;
        map.end()
    }
}

pub const PATTERN_HEADER: &str = "x,density_psi,density_A,density_B,S_over_hbar,mask";

/// Pattern CSV: one row per grid point; `S_over_hbar` is empty outside the mask.
pub fn pattern_csv(prepared: &Prepared<f64>) -> String {
    let grid = *prepared.a.grid();
    let psi = prepared.superposition.psi.density();
    let da = prepared.a.density();
    let db = prepared.b.density();
    let phase = prepared.profile.s_over_hbar().values();
    let region = prepared.profile.region();
    let mut out = String::with_capacity(grid.len() * 120);
    out.push_str(PATTERN_HEADER);
    out.push('\n');
    let rows = psi
        .values()
        .iter()
        .zip(da.values())
        .zip(db.values())
        .zip(phase)
        .enumerate();
    for (k, (((p, a), b), s)) in rows {
        let inside = region.contains(&k);
        let s = if inside { fmt_f64(*s) } else { String::new() };
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            fmt_f64(grid.x(k)),
            fmt_f64(*p),
            fmt_f64(*a),
            fmt_f64(*b),
            s,
            u8::from(inside)
        ));
    }
    out
}

/// CSV cell for a report value.
pub fn csv_cell(v: &ReportValue) -> String {
    match *v {
        ReportValue::Real(x) => fmt_f64(x),
        ReportValue::Flag(b) => b.to_string(),
        ReportValue::Text(t) => t.to_string(),
        ReportValue::Missing => String::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(fmt_f64(1.0), "1.0000000000000000e0");
        assert_eq!(fmt_f64(-0.00123), "-1.2300000000000000e-3");
        assert_eq!(fmt_f64(0.1 + 0.2), "3.0000000000000004e-1");
        assert_eq!(fmt_f64(f64::NAN), "nan");
        for v in [std::f64::consts::PI, 1e-300, 6.02e23, -2.5e-7] {
            assert_eq!(fmt_f64(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn json_floats_use_fixed_format() {
        let cfg = ScenarioConfig::default_conjugate_pair();
        let bytes = to_json_bytes(&cfg).unwrap();
        let text = String::from_utf8(bytes).unwrap();
        assert!(text.contains("\"chirp\": 2.5000000000000000e-1"), "{text}");
        assert!(text.contains("\"n\": 4096"));
        let back: ScenarioConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cfg);
    }
}
