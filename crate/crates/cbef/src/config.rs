//! Scenario description: everything one run needs, loadable from JSON
//! with every field optional and defaulted.
//!
//! Validation failures always name the offending field so a front end can
//! report them precisely.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{Vec3, Vec6};
use crate::metrics::MseeMode;
use crate::sensing::FaultSpec;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config field `{field}` invalid: {reason}")]
    InvalidField {
        field: &'static str,
        reason: String,
    },
    #[error("unknown override key `{0}`")]
    UnknownKey(String),
    #[error("override `{key}` has malformed value `{value}`")]
    BadOverride { key: String, value: String },
    #[error("config is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
}

fn invalid(field: &'static str, reason: impl Into<String>) -> ConfigError {
    ConfigError::InvalidField {
        field,
        reason: reason.into(),
    }
}

/// Agent anchor placement: an explicit list (one position per agent) or
/// uniform draws inside an axis-aligned box from the seeded anchor stream.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnchorSpec {
    Explicit(Vec<Vec3>),
    Box { min: Vec3, max: Vec3 },
}

/// Full description of a simulation run. JSON keys match the field names;
/// omitted fields take the defaults below.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    /// Number of agents.
    pub n: usize,
    /// Erdős–Rényi edge probability.
    pub er_probability: f64,
    /// Master seed; every random substream derives from it.
    pub seed: u64,
    /// Sampling time.
    pub delta: f64,
    /// Std of each acceleration noise component.
    pub sigma_w: f64,
    /// Number of sampling steps K.
    pub steps: usize,
    /// Agent anchor placement.
    pub anchors: AnchorSpec,
    /// Std of each measurement noise component.
    pub sigma_v: f64,
    /// Optional outlier injection.
    pub fault: Option<FaultSpec>,
    /// Observation confidence parameter.
    pub xi: f64,
    /// Consensus step size.
    pub epsilon: f64,
    /// Consensus rounds L per sampling step.
    pub rounds: usize,
    /// True initial state.
    pub x0: Vec6,
    /// Shared initial estimate.
    pub xhat0: Vec6,
    /// Error norm used by the running MSEE.
    pub msee_mode: MseeMode,
}

impl Default for ScenarioConfig {
    /// Six agents on an Erdős–Rényi network, the filter and consensus
    /// parameters at `xi = 1`, `L = 10`, and a well-spread default anchor
    /// layout (an octahedron of radius 0.6). The target starts away from
    /// the agents with a shared zero initial estimate, so runs show the
    /// initial transient decaying into the noise floor.
    fn default() -> Self {
        let s = 0.6;
        ScenarioConfig {
            n: 6,
            er_probability: 0.5,
            seed: 42,
            delta: 0.1,
            sigma_w: 0.5,
            steps: 500,
            anchors: AnchorSpec::Explicit(vec![
                [s, 0.0, 0.0],
                [-s, 0.0, 0.0],
                [0.0, s, 0.0],
                [0.0, -s, 0.0],
                [0.0, 0.0, s],
                [0.0, 0.0, -s],
            ]),
            sigma_v: 0.5,
            fault: None,
            xi: 1.0,
            epsilon: 0.1,
            rounds: 10,
            x0: [10.0, 10.0, 10.0, 0.5, 0.5, 0.5],
            xhat0: [0.0; 6],
            msee_mode: MseeMode::FullState,
        }
    }
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let config: ScenarioConfig = serde_json::from_str(text)?;
        Ok(config)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config always serializes")
    }

    /// Field-level checks. Graph-dependent constraints (the epsilon bound,
    /// connectivity feasibility) surface later, at construction.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.n < 2 {
            return Err(invalid("n", format!("need at least 2 agents, got {}", self.n)));
        }
        if !(0.0..=1.0).contains(&self.er_probability) {
            return Err(invalid(
                "er_probability",
                format!("must be in [0, 1], got {}", self.er_probability),
            ));
        }
        if !(self.delta > 0.0) || !self.delta.is_finite() {
            return Err(invalid("delta", format!("must be positive, got {}", self.delta)));
        }
        if !(self.sigma_w >= 0.0) || !self.sigma_w.is_finite() {
            return Err(invalid(
                "sigma_w",
                format!("must be nonnegative, got {}", self.sigma_w),
            ));
        }
        if self.steps < 1 {
            return Err(invalid("steps", "need at least one step"));
        }
        match &self.anchors {
            AnchorSpec::Explicit(list) => {
                if list.len() != self.n {
                    return Err(invalid(
                        "anchors",
                        format!("expected {} positions, got {}", self.n, list.len()),
                    ));
                }
                if list.iter().flatten().any(|v| !v.is_finite()) {
                    return Err(invalid("anchors", "positions must be finite"));
                }
            }
            AnchorSpec::Box { min, max } => {
                if min.iter().chain(max).any(|v| !v.is_finite()) {
                    return Err(invalid("anchors", "box bounds must be finite"));
                }
                if (0..3).any(|axis| min[axis] > max[axis]) {
                    return Err(invalid("anchors", "box min must not exceed max"));
                }
            }
        }
        if !(self.sigma_v >= 0.0) || !self.sigma_v.is_finite() {
            return Err(invalid(
                "sigma_v",
                format!("must be nonnegative, got {}", self.sigma_v),
            ));
        }
        if let Some(fault) = &self.fault {
            if !(0.0..=1.0).contains(&fault.probability) {
                return Err(invalid(
                    "fault.probability",
                    format!("must be in [0, 1], got {}", fault.probability),
                ));
            }
            if !(fault.magnitude > 0.0) || !fault.magnitude.is_finite() {
                return Err(invalid(
                    "fault.magnitude",
                    format!("must be positive, got {}", fault.magnitude),
                ));
            }
        }
        if !(self.xi > 0.0) {
            return Err(invalid("xi", format!("must be positive, got {}", self.xi)));
        }
        if !(self.epsilon > 0.0) || !self.epsilon.is_finite() {
            return Err(invalid(
                "epsilon",
                format!("must be positive, got {}", self.epsilon),
            ));
        }
        if self.rounds < 1 {
            return Err(invalid("rounds", "need at least one consensus round"));
        }
        if self.x0.iter().any(|v| !v.is_finite()) {
            return Err(invalid("x0", "state components must be finite"));
        }
        if self.xhat0.iter().any(|v| !v.is_finite()) {
            return Err(invalid("xhat0", "state components must be finite"));
        }
        Ok(())
    }

    /// Applies one `key=value` override. Scalar fields take plain numbers;
    /// `x0`/`xhat0` take six comma-separated values; `fault` takes
    /// `probability,magnitude` or `none`; `msee_mode` takes `full_state`
    /// or `position_only`.
    pub fn apply_override(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let bad = || ConfigError::BadOverride {
            key: key.to_string(),
            value: value.to_string(),
        };
        match key {
            "n" => self.n = value.parse().map_err(|_| bad())?,
            "er_probability" => self.er_probability = value.parse().map_err(|_| bad())?,
            "seed" => self.seed = value.parse().map_err(|_| bad())?,
            "delta" => self.delta = value.parse().map_err(|_| bad())?,
            "sigma_w" => self.sigma_w = value.parse().map_err(|_| bad())?,
            "steps" => self.steps = value.parse().map_err(|_| bad())?,
            "sigma_v" => self.sigma_v = value.parse().map_err(|_| bad())?,
            "xi" => self.xi = value.parse().map_err(|_| bad())?,
            "epsilon" => self.epsilon = value.parse().map_err(|_| bad())?,
            "rounds" => self.rounds = value.parse().map_err(|_| bad())?,
            "x0" => self.x0 = parse_vec6(value).ok_or_else(bad)?,
            "xhat0" => self.xhat0 = parse_vec6(value).ok_or_else(bad)?,
            "fault" => {
                if value == "none" {
                    self.fault = None;
                } else {
                    let parts: Vec<&str> = value.split(',').collect();
                    if parts.len() != 2 {
                        return Err(bad());
                    }
                    self.fault = Some(FaultSpec {
                        probability: parts[0].parse().map_err(|_| bad())?,
                        magnitude: parts[1].parse().map_err(|_| bad())?,
                    });
                }
            }
            "msee_mode" => {
                self.msee_mode = match value {
                    "full_state" => MseeMode::FullState,
                    "position_only" => MseeMode::PositionOnly,
                    _ => return Err(bad()),
                }
            }
            _ => return Err(ConfigError::UnknownKey(key.to_string())),
        }
        Ok(())
    }
}

fn parse_vec6(value: &str) -> Option<Vec6> {
    let parts: Vec<f64> = value
        .split(',')
        .map(|p| p.trim().parse().ok())
        .collect::<Option<_>>()?;
    parts.try_into().ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        ScenarioConfig::default().validate().unwrap();
    }

    #[test]
    fn empty_json_yields_defaults() {
        let config = ScenarioConfig::from_json("{}").unwrap();
        assert_eq!(config, ScenarioConfig::default());
    }

    #[test]
    fn json_round_trip() {
        let config = ScenarioConfig {
            fault: Some(FaultSpec {
                probability: 0.2,
                magnitude: 100.0,
            }),
            anchors: AnchorSpec::Explicit(vec![[0.0; 3]; 6]),
            ..ScenarioConfig::default()
        };
        let back = ScenarioConfig::from_json(&config.to_json()).unwrap();
        assert_eq!(config, back);
    }

    #[test]
    fn unknown_json_key_rejected() {
        assert!(ScenarioConfig::from_json(r#"{"bogus": 1}"#).is_err());
    }

    #[test]
    fn validation_names_the_field() {
        let config = ScenarioConfig {
            epsilon: -1.0,
            ..ScenarioConfig::default()
        };
        assert!(config.validate().unwrap_err().to_string().contains("epsilon"));

        let config = ScenarioConfig {
            anchors: AnchorSpec::Explicit(vec![[0.0; 3]; 2]),
            ..ScenarioConfig::default()
        };
        assert!(config.validate().unwrap_err().to_string().contains("anchors"));

        let config = ScenarioConfig {
            fault: Some(FaultSpec {
                probability: 1.5,
                magnitude: 1.0,
            }),
            ..ScenarioConfig::default()
        };
        let message = config.validate().unwrap_err().to_string();
        assert!(message.contains("fault.probability"));
    }

    #[test]
    fn overrides_parse_and_reject() {
        let mut config = ScenarioConfig::default();
        config.apply_override("epsilon", "0.05").unwrap();
        assert_eq!(config.epsilon, 0.05);
        config.apply_override("rounds", "3").unwrap();
        assert_eq!(config.rounds, 3);
        config.apply_override("x0", "1,2,3,4,5,6").unwrap();
        assert_eq!(config.x0, [1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        config.apply_override("fault", "0.2,100").unwrap();
        assert_eq!(
            config.fault,
            Some(FaultSpec {
                probability: 0.2,
                magnitude: 100.0
            })
        );
        config.apply_override("fault", "none").unwrap();
        assert_eq!(config.fault, None);
        config.apply_override("msee_mode", "position_only").unwrap();
        assert_eq!(config.msee_mode, MseeMode::PositionOnly);

        assert!(config.apply_override("nope", "1").is_err());
        assert!(config.apply_override("delta", "fast").is_err());
        assert!(config.apply_override("x0", "1,2,3").is_err());
    }
}
