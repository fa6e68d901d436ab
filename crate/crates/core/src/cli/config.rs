//! JSON run configuration.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::solver::{ModelSpec, Profile, SolveOptions, SourceTerm};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub model: ModelSpec,
    pub f: Profile,
    #[serde(default = "zero_profile")]
    pub g: Profile,
    #[serde(default)]
    pub source: SourceTerm,
    pub grid: GridSpec,
    #[serde(default)]
    pub output: OutputSpec,
    #[serde(default)]
    pub quadrature: QuadratureSpec,
}

fn zero_profile() -> Profile {
    Profile::Zero
}

/// `nx` equispaced points on `[x_min, x_max]` at each time in `ts`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub nx: usize,
    pub ts: Vec<f64>,
}

impl GridSpec {
    pub fn xs(&self) -> Vec<f64> {
        let h = (self.x_max - self.x_min) / (self.nx - 1) as f64;
        (0..self.nx).map(|i| self.x_min + h * i as f64).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default)]
    pub format: OutputFormat,
    /// stdout when absent
    #[serde(default)]
    pub path: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct QuadratureSpec {
    /// default: set by the roughest data
    #[serde(default)]
    pub target_abs_error: Option<f64>,
    #[serde(default)]
    pub k_max_override: Option<f64>,
}

impl RunConfig {
    /// Parses and validates; errors name the offending field and position.
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let config: RunConfig = serde_path_to_error::deserialize(de).map_err(|e| {
            let inner = e.inner();
            let (line, column) = (inner.line(), inner.column());
            let full = inner.to_string();
            let suffix = format!(" at line {line} column {column}");
            let message = full.strip_suffix(&suffix).unwrap_or(&full);
            CliError::Config(format!(
                "field `{}` (line {line}, column {column}): {message}",
                e.path()
            ))
        })?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let g = &self.grid;
        let bad = |msg: String| Err(CliError::Config(msg));
        if g.nx < 2 {
            return bad(format!(
                "field `grid.nx`: need at least 2 points, got {}",
                g.nx
            ));
        }
        if !(g.x_min < g.x_max) || !g.x_min.is_finite() || !g.x_max.is_finite() {
            return bad(format!(
                "field `grid`: need finite x_min < x_max, got [{}, {}]",
                g.x_min, g.x_max
            ));
        }
        if g.ts.is_empty() {
            return bad("field `grid.ts`: at least one time is required".into());
        }
        if let Some(t) = g.ts.iter().find(|t| !(**t > 0.0 && t.is_finite())) {
            return bad(format!("field `grid.ts`: times must be positive, got {t}"));
        }
        if let Some(e) = self.quadrature.target_abs_error {
            if !(e > 0.0) {
                return bad(format!(
                    "field `quadrature.target_abs_error`: must be positive, got {e}"
                ));
            }
        }
        if let Some(k) = self.quadrature.k_max_override {
            if !(k > 0.0 && k.is_finite()) {
                return bad(format!(
                    "field `quadrature.k_max_override`: must be positive, got {k}"
                ));
            }
        }
        Ok(())
    }

    pub fn solve_options(&self) -> SolveOptions {
        SolveOptions {
            target_abs_error: self.quadrature.target_abs_error,
            k_max_override: self.quadrature.k_max_override,
            ..SolveOptions::default()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = r#"{
        "model": {"order": {"mu": 2.0, "nu": 1.0}, "terms": [{"eta": 1, "alpha": 2, "theta": 0}]},
        "f": {"kind": "gaussian", "center": 0, "sigma": 1},
        "grid": {"x_min": -5, "x_max": 5, "nx": 11, "ts": [0.5]}
    }"#;

    #[test]
    fn minimal_config_fills_defaults() {
        let c = RunConfig::from_json(BASE).unwrap();
        assert_eq!(c.g, Profile::Zero);
        assert_eq!(c.output.format, OutputFormat::Csv);
        assert_eq!(c.grid.xs()[10], 5.0);
    }

    #[test]
    fn order_violation_names_field_and_constraint() {
        let text = BASE.replace("\"mu\": 2.0", "\"mu\": 2.5");
        let msg = RunConfig::from_json(&text).unwrap_err().to_string();
        assert!(msg.contains("model.order"), "{msg}");
        assert!(msg.contains("(1, 2]"), "{msg}");
    }

    #[test]
    fn skewness_violation_is_rejected() {
        let text = BASE.replace(
            "\"alpha\": 2, \"theta\": 0",
            "\"alpha\": 1.5, \"theta\": 0.7",
        );
        let msg = RunConfig::from_json(&text).unwrap_err().to_string();
        assert!(
            msg.contains("model.terms[0]") && msg.contains("theta"),
            "{msg}"
        );
    }

    #[test]
    fn grid_invariants() {
        for (from, to) in [
            ("\"nx\": 11", "\"nx\": 1"),
            ("\"x_max\": 5", "\"x_max\": -6"),
            ("[0.5]", "[]"),
            ("[0.5]", "[0.5, 0]"),
        ] {
            assert!(
                RunConfig::from_json(&BASE.replace(from, to)).is_err(),
                "{to}"
            );
        }
    }
}
