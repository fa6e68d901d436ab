//! Independent verifiers: high-precision series, numeric Laplace transforms,
//! FFT inversion and per-mode residuals.

mod battery;
mod fft;
mod laplace;
mod reference;
mod residual;
mod spectral;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use battery::{
    corollary_consistency, fft_agreement, laplace_pairs, mass_law, ml_identities,
    ml_reference_agreement, mode_residuals, realness_and_symmetry, riesz_spectral, run_battery,
    wave_limit, GROUPS,
};
pub use fft::{fft_inversion_oracle, FftGrid, SampledField};
pub use laplace::{laplace_pair_check, laplace_pair_values};
pub use reference::{ml_reference, MAX_REFERENCE_ABS_Z, MAX_REFERENCE_RADIUS};
pub use residual::{mode_residual_check, ModeCase};
pub use spectral::{green_at_origin, mass_reference, riesz_gaussian_reference};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("series oracle region exceeded: alpha={alpha}, |z|={abs_z}")]
    RegionTooLarge { alpha: f64, abs_z: f64 },
    #[error("invalid oracle argument: {0}")]
    InvalidArgument(String),
    #[error("unknown check group `{name}`; valid names: {valid}")]
    UnknownSelector { name: String, valid: String },
}

/// Outcome of one check. `passed` is exactly `measured_error <= tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub measured_error: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// seconds
    pub runtime: f64,
}

impl CheckReport {
    pub fn new(name: impl Into<String>, measured_error: f64, tolerance: f64, runtime: f64) -> Self {
        CheckReport {
            name: name.into(),
            measured_error,
            tolerance,
            passed: measured_error <= tolerance,
            runtime,
        }
    }
}
