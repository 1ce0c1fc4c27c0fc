//! Scenario configuration: strict JSON schema, defaults, validation and
//! single-parameter overrides for sweeps.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error at `{key}` (line {line}, column {column}): {message}")]
    Parse {
        key: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid `{field}`: {reason}")]
    Invalid { field: &'static str, reason: String },
    #[error("unknown sweep parameter `{0}`")]
    UnknownParameter(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioKind {
    Propagation,
    ConjugatePair,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub x_min: f64,
    pub x_max: f64,
    pub n: usize,
}

fn default_hbar() -> f64 {
    1.0
}
fn default_mass() -> f64 {
    1.0
}
fn default_floor() -> f64 {
    qcausal_core::stationary_phase::DEFAULT_FLOOR
}
fn default_validity_factor() -> f64 {
    qcausal_core::stationary_phase::DEFAULT_VALIDITY_FACTOR
}

/// Validated scenario description. JSON keys match the field names, with the
/// state labels kept upper-case (`x_A`, `p_B`, `sigma_A`, `sigma_p_B`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub scenario: ScenarioKind,
    #[serde(default = "default_hbar")]
    pub hbar: f64,
    #[serde(default = "default_mass")]
    pub mass: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub time: Option<f64>,
    #[serde(rename = "x_A", default, skip_serializing_if = "Option::is_none")]
    pub x_a: Option<f64>,
    #[serde(rename = "p_B", default, skip_serializing_if = "Option::is_none")]
    pub p_b: Option<f64>,
    #[serde(rename = "sigma_A", default, skip_serializing_if = "Option::is_none")]
    pub sigma_a: Option<f64>,
    #[serde(rename = "sigma_p_B", default, skip_serializing_if = "Option::is_none")]
    pub sigma_p_b: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chirp: Option<f64>,
    pub grid: GridConfig,
    #[serde(default = "default_floor")]
    pub floor: f64,
    #[serde(default = "default_validity_factor")]
    pub validity_factor: f64,
}

/// Scalar fields addressable by `qcausal sweep --param`.
pub const SWEEP_PARAMETERS: &[&str] = &[
    "hbar",
    "mass",
    "time",
    "x_A",
    "p_B",
    "sigma_A",
    "sigma_p_B",
    "x0",
    "sigma",
    "chirp",
    "floor",
    "validity_factor",
    "grid.x_min",
    "grid.x_max",
];

fn positive(field: &'static str, v: f64) -> Result<(), ConfigError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(ConfigError::Invalid {
            field,
            reason: format!("must be positive and finite, got {v}"),
        })
    }
}

fn finite(field: &'static str, v: f64) -> Result<(), ConfigError> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(ConfigError::Invalid {
            field,
            reason: format!("must be finite, got {v}"),
        })
    }
}

fn required(field: &'static str, v: Option<f64>) -> Result<f64, ConfigError> {
    v.ok_or(ConfigError::Invalid {
        field,
        reason: "required for this scenario".into(),
    })
}

impl ScenarioConfig {
    /// Chirped-Gaussian pair `B = conj(A)` with `σ = 1`, `c = 0.25`.
    pub fn default_conjugate_pair() -> Self {
        Self {
            scenario: ScenarioKind::ConjugatePair,
            hbar: 1.0,
            mass: 1.0,
            time: None,
            x_a: None,
            p_b: None,
            sigma_a: None,
            sigma_p_b: None,
            x0: Some(0.0),
            sigma: Some(1.0),
            chirp: Some(0.25),
            grid: GridConfig {
                x_min: -12.0,
                x_max: 12.0,
                n: 4096,
            },
            floor: default_floor(),
            validity_factor: default_validity_factor(),
        }
    }

    /// Narrow packet at `x_A = −8` and a momentum-`1` packet, both evolved for `t = 8`.
    /// `sigma_p_B` is chosen so that `|A|` and `|B|` coincide at the meeting point `x = 0`.
    pub fn default_propagation() -> Self {
        Self {
            scenario: ScenarioKind::Propagation,
            hbar: 1.0,
            mass: 1.0,
            time: Some(8.0),
            x_a: Some(-8.0),
            p_b: Some(1.0),
            sigma_a: Some(0.25),
            sigma_p_b: Some(0.027577),
            x0: None,
            sigma: None,
            chirp: None,
            grid: GridConfig {
                x_min: -200.0,
                x_max: 200.0,
                n: 16384,
            },
            floor: default_floor(),
            validity_factor: default_validity_factor(),
        }
    }

    pub fn from_json_str(text: &str) -> Result<Self, ConfigError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let mut cfg: Self = serde_path_to_error::deserialize(de).map_err(|e| {
            let key = e.path().to_string();
            let inner = e.into_inner();
            ConfigError::Parse {
                key,
                line: inner.line(),
                column: inner.column(),
                message: inner.to_string(),
            }
        })?;
        if cfg.scenario == ScenarioKind::ConjugatePair && cfg.x0.is_none() {
            cfg.x0 = Some(0.0);
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        positive("hbar", self.hbar)?;
        positive("mass", self.mass)?;
        positive("validity_factor", self.validity_factor)?;
        if !(0.0..1.0).contains(&self.floor) {
            return Err(ConfigError::Invalid {
                field: "floor",
                reason: format!("must lie in [0, 1), got {}", self.floor),
            });
        }
        finite("grid.x_min", self.grid.x_min)?;
        finite("grid.x_max", self.grid.x_max)?;
        if self.grid.x_min >= self.grid.x_max {
            return Err(ConfigError::Invalid {
                field: "grid.x_max",
                reason: format!("must exceed grid.x_min = {}", self.grid.x_min),
            });
        }
        if self.grid.n < qcausal_core::numerics::MIN_POINTS {
            return Err(ConfigError::Invalid {
                field: "grid.n",
                reason: format!("need at least 16 points, got {}", self.grid.n),
            });
        }
        match self.scenario {
            ScenarioKind::Propagation => {
                let t = required("time", self.time)?;
                if !(t >= 0.0 && t.is_finite()) {
                    return Err(ConfigError::Invalid {
                        field: "time",
                        reason: format!("must be non-negative, got {t}"),
                    });
                }
                finite("x_A", required("x_A", self.x_a)?)?;
                finite("p_B", required("p_B", self.p_b)?)?;
                positive("sigma_A", required("sigma_A", self.sigma_a)?)?;
                positive("sigma_p_B", required("sigma_p_B", self.sigma_p_b)?)?;
            }
            ScenarioKind::ConjugatePair => {
                finite("x0", self.x0.unwrap_or(0.0))?;
                positive("sigma", required("sigma", self.sigma)?)?;
                finite("chirp", required("chirp", self.chirp)?)?;
            }
        }
        Ok(())
    }

    /// Copy with one scalar field replaced, validated.
    pub fn with_param(&self, name: &str, value: f64) -> Result<Self, ConfigError> {
        let mut cfg = self.clone();
        match name {
            "hbar" => cfg.hbar = value,
            "mass" => cfg.mass = value,
            "time" => cfg.time = Some(value),
            "x_A" => cfg.x_a = Some(value),
            "p_B" => cfg.p_b = Some(value),
            "sigma_A" => cfg.sigma_a = Some(value),
            "sigma_p_B" => cfg.sigma_p_b = Some(value),
            "x0" => cfg.x0 = Some(value),
            "sigma" => cfg.sigma = Some(value),
            "chirp" => cfg.chirp = Some(value),
            "floor" => cfg.floor = value,
            "validity_factor" => cfg.validity_factor = value,
            "grid.x_min" => cfg.grid.x_min = value,
            "grid.x_max" => cfg.grid.x_max = value,
            other => return Err(ConfigError::UnknownParameter(other.to_string())),
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

pub fn load_config(path: &Path) -> Result<ScenarioConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.display().to_string(),
        source,
    })?;
    ScenarioConfig::from_json_str(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{"scenario": "conjugate_pair", "sigma": 1.0, "chirp": 0.25,
        "grid": {"x_min": -12.0, "x_max": 12.0, "n": 4096}}"#;

    #[test]
    fn minimal_config_gets_defaults() {
        let cfg = ScenarioConfig::from_json_str(MINIMAL).unwrap();
        assert_eq!(cfg.hbar, 1.0);
        assert_eq!(cfg.floor, 1e-6);
        assert_eq!(cfg.validity_factor, 5.0);
        assert_eq!(cfg.x0, Some(0.0));
        assert_eq!(cfg, ScenarioConfig::default_conjugate_pair());
    }

    #[test]
    fn negative_width_names_the_field() {
        let mut cfg = ScenarioConfig::default_propagation();
        cfg.sigma_a = Some(-0.25);
        let text = serde_json::to_string(&cfg).unwrap();
        let err = ScenarioConfig::from_json_str(&text).unwrap_err();
        assert!(matches!(err, ConfigError::Invalid { field: "sigma_A", .. }), "{err}");
        assert!(err.to_string().contains("sigma_A"));
    }

    #[test]
    fn unknown_key_is_rejected() {
        let text = MINIMAL.replace("\"sigma\"", "\"sigmaA\"");
        let err = ScenarioConfig::from_json_str(&text).unwrap_err();
        match err {
            ConfigError::Parse { message, line, .. } => {
                assert!(message.contains("sigmaA"), "{message}");
                assert_eq!(line, 1);
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn parse_error_reports_nested_key() {
        let text = MINIMAL.replace("\"n\": 4096", "\"n\": \"many\"");
        let err = ScenarioConfig::from_json_str(&text).unwrap_err();
        match err {
            ConfigError::Parse { key, line, .. } => {
                assert_eq!(key, "grid.n");
                assert_eq!(line, 2);
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn missing_scenario_field() {
        let text = r#"{"scenario": "propagation", "time": 1.0, "x_A": 0.0, "p_B": 1.0, "sigma_A": 0.3,
            "grid": {"x_min": -50.0, "x_max": 50.0, "n": 4096}}"#;
        let err = ScenarioConfig::from_json_str(text).unwrap_err();
        assert!(matches!(err, ConfigError::Invalid { field: "sigma_p_B", .. }));
    }

    #[test]
    fn shipped_configs_match_constructors() {
        let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs");
        assert_eq!(
            load_config(&dir.join("conjugate_pair.json")).unwrap(),
            ScenarioConfig::default_conjugate_pair()
        );
        assert_eq!(
            load_config(&dir.join("propagation.json")).unwrap(),
            ScenarioConfig::default_propagation()
        );
        assert!(load_config(&dir.join("conjugate_pair_validity.json")).is_ok());
    }

    #[test]
    fn param_override() {
        let cfg = ScenarioConfig::default_conjugate_pair();
        assert_eq!(cfg.with_param("chirp", 0.5).unwrap().chirp, Some(0.5));
        assert_eq!(cfg.with_param("grid.x_max", 20.0).unwrap().grid.x_max, 20.0);
        assert!(matches!(
            cfg.with_param("sigma", -1.0),
            Err(ConfigError::Invalid { field: "sigma", .. })
        ));
        assert!(matches!(
            cfg.with_param("nope", 1.0),
            Err(ConfigError::UnknownParameter(_))
        ));
    }
}
