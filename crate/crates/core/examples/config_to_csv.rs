//! Builds a run configuration in code, round-trips it through JSON and
//! writes the solved field as CSV to stdout.

use fracsolve::cli::{write_csv, RunConfig};
use fracsolve::solver::solve_with;

const CONFIG: &str = r#"{
  "model": {"order": {"mu": 1.7, "nu": 0.8}, "omega": 0.1,
            "terms": [{"eta": 1.0, "alpha": 1.6, "theta": 0.2}]},
  "f": {"kind": "boxcar", "a": -1.0, "b": 1.0},
  "g": {"kind": "zero"},
  "grid": {"x_min": -4, "x_max": 4, "nx": 9, "ts": [0.5, 1.5]},
  "quadrature": {"target_abs_error": 1e-7}
}"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = RunConfig::from_json(CONFIG)?;
    let again = RunConfig::from_json(&serde_json::to_string(&config)?)?;
    assert_eq!(config, again);
    let field = solve_with(
        &config.model,
        &config.f,
        &config.g,
        &config.source,
        &config.grid.xs(),
        &config.grid.ts,
        &config.solve_options(),
    )?;
    write_csv(&field, &mut std::io::stdout().lock())?;
    Ok(())
}
