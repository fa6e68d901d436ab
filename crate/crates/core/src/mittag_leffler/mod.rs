//! Mittag-Leffler functions
//!
//! ```text
//! E_α(z)        = Σ z^n / Γ(αn+1)
//! E_{α,β}(z)    = Σ z^n / Γ(αn+β)
//! E^γ_{α,β}(z)  = Σ (γ)_n z^n / (n! Γ(αn+β))
//! ```
//!
//! Evaluation picks one of three paths by `r = |z|^{1/α}`:
//!
//! - small `r`: Taylor series, stopped once the terms decay past their peak;
//! - large `r`: exponential pole terms plus the algebraic expansion in `1/z`;
//! - otherwise, or when the first choice misses its estimate: numerical
//!   Laplace inversion on a parabolic contour.
//!
//! For `α = 1` and `Re z < 0` a Kummer-transformed series replaces the
//! Taylor sum, so `E_{1,β}` keeps relative accuracy when it is exponentially
//! small. Real `z` with real parameters always returns a real value.

mod asymptotic;
mod contour;
mod series;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Which evaluation path produced an [`MLValue`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    TaylorSeries,
    AsymptoticExpansion,
    IntegralContour,
}

/// A Mittag-Leffler value with an a-posteriori absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MLValue {
    pub value: Complex64,
    pub abs_error_estimate: f64,
    pub regime: Regime,
}

impl MLValue {
    pub fn relative_error_estimate(&self) -> f64 {
        let m = self.value.norm();
        if m > 0.0 {
            self.abs_error_estimate / m
        } else {
            self.abs_error_estimate
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MlError {
    #[error("alpha must be positive, got {0}")]
    NonPositiveAlpha(f64),
    #[error("argument is not finite: {0}")]
    NonFinite(String),
    /// The value is still returned; its estimate exceeds the accuracy contract.
    #[error("estimated relative error {estimate:.3e} exceeds the contract {tolerance:.1e}")]
    AccuracyNotMet {
        result: MLValue,
        estimate: f64,
        tolerance: f64,
    },
}

impl MlError {
    /// The flagged value carried by `AccuracyNotMet`.
    pub fn flagged_value(&self) -> Option<MLValue> {
        match self {
            MlError::AccuracyNotMet { result, .. } => Some(*result),
            _ => None,
        }
    }
}

/// Taylor is attempted up to this `|z|^{1/α}`.
const TAYLOR_RADIUS: f64 = 6.0;
/// The asymptotic expansion is attempted from this `|z|^{1/α}` on.
const ASYMPTOTIC_RADIUS: f64 = 40.0;
/// Relative estimate below which a cheap path is accepted without the contour.
const ACCEPT: f64 = 1e-14;

const LOG_EPS_FINE: f64 = -34.538_776_394_910_684; // ln 1e-15
const LOG_EPS_COARSE: f64 = -32.236_191_301_916_64; // ln 1e-14

fn check_args(alpha: f64, beta: f64, z: Complex64) -> Result<(), MlError> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(MlError::NonPositiveAlpha(alpha));
    }
    if !beta.is_finite() {
        return Err(MlError::NonFinite(format!("beta = {beta}")));
    }
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(MlError::NonFinite(format!("z = {z}")));
    }
    Ok(())
}

fn contract_tolerance(z: Complex64) -> f64 {
    if z.norm() <= 50.0 {
        1e-10
    } else {
        1e-8
    }
}

fn realify(mut v: MLValue, z: Complex64) -> MLValue {
    if z.im == 0.0 {
        v.value.im = 0.0;
    }
    v
}

fn contour_value(alpha: f64, beta: f64, z: Complex64) -> MLValue {
    let fine = contour::invert(alpha, beta, z, LOG_EPS_FINE);
    let coarse = contour::invert(alpha, beta, z, LOG_EPS_COARSE);
    // rounding floor of the contour sum near 1e-14 relative, and e^s with
    // |s| = |z|^{1/α} loses about |s| ulps
    let r = z.norm().powf(1.0 / alpha);
    let est = (fine - coarse).norm() + (200.0 + 4.0 * r) * f64::EPSILON * fine.norm();
    MLValue {
        value: fine,
        abs_error_estimate: if est.is_finite() { est } else { f64::INFINITY },
        regime: Regime::IntegralContour,
    }
}

fn accepted(v: &MLValue) -> bool {
    v.value.re.is_finite()
        && v.value.im.is_finite()
        && v.abs_error_estimate <= ACCEPT * v.value.norm()
}

fn better(a: MLValue, b: MLValue) -> MLValue {
    let ok = |v: &MLValue| v.value.re.is_finite() && v.value.im.is_finite();
    match (ok(&a), ok(&b)) {
        (true, false) => a,
        (false, true) => b,
        _ if a.relative_error_estimate() <= b.relative_error_estimate() => a,
        _ => b,
    }
}

/// Path selection without the accuracy contract check.
fn evaluate(alpha: f64, beta: f64, z: Complex64) -> MLValue {
    if z == Complex64::new(0.0, 0.0) {
        return series::taylor(alpha, beta, z);
    }
    let r = z.norm().powf(1.0 / alpha);
    let mut candidate: Option<MLValue> = None;
    let mut offer = |v: MLValue| -> Option<MLValue> {
        if accepted(&v) {
            return Some(v);
        }
        candidate = Some(match candidate {
            Some(c) => better(c, v),
            None => v,
        });
        None
    };
    if alpha == 1.0 && z.re < 0.0 {
        if let Some(v) = offer(series::kummer_alpha_one(beta, z)) {
            return v;
        }
    }
    if r >= ASYMPTOTIC_RADIUS {
        if let Some(v) = offer(asymptotic::asymptotic(alpha, beta, z)) {
            return v;
        }
    }
    if r <= TAYLOR_RADIUS {
        if let Some(v) = offer(series::taylor(alpha, beta, z)) {
            return v;
        }
    }
    let c = contour_value(alpha, beta, z);
    match candidate {
        Some(prev) => better(prev, c),
        None => c,
    }
}

/// Evaluates `E_{α,β}(z)` on a forced path, for cross-checking the paths.
pub fn evaluate_in_regime(
    alpha: f64,
    beta: f64,
    z: Complex64,
    regime: Regime,
) -> Result<MLValue, MlError> {
    check_args(alpha, beta, z)?;
    let v = match regime {
        Regime::TaylorSeries => series::taylor(alpha, beta, z),
        Regime::AsymptoticExpansion => asymptotic::asymptotic(alpha, beta, z),
        Regime::IntegralContour => contour_value(alpha, beta, z),
    };
    Ok(realify(v, z))
}

fn with_contract(v: MLValue, z: Complex64) -> Result<MLValue, MlError> {
    let tolerance = contract_tolerance(z);
    let estimate = v.relative_error_estimate();
    if !v.value.re.is_finite() || !v.value.im.is_finite() || !(estimate <= tolerance) {
        return Err(MlError::AccuracyNotMet {
            result: v,
            estimate,
            tolerance,
        });
    }
    Ok(v)
}

/// `E_{α,β}(z)`.
///
/// Relative accuracy `1e-10` for `|z| ≤ 50` and `1e-8` beyond; a value whose
/// estimate misses that is returned inside [`MlError::AccuracyNotMet`].
pub fn ml_two(alpha: f64, beta: f64, z: Complex64) -> Result<MLValue, MlError> {
    check_args(alpha, beta, z)?;
    with_contract(realify(evaluate(alpha, beta, z), z), z)
}

/// `E_α(z) = E_{α,1}(z)`.
pub fn ml_one(alpha: f64, z: Complex64) -> Result<MLValue, MlError> {
    ml_two(alpha, 1.0, z)
}

/// Three-parameter (Prabhakar) function `E^γ_{α,β}(z)`.
///
/// `γ = 1` is exactly [`ml_two`]. Other `γ` are summed as a series and
/// flagged when cancellation spoils the contract.
pub fn ml_prabhakar(
    alpha: f64,
    beta: f64,
    gamma: Complex64,
    z: Complex64,
) -> Result<MLValue, MlError> {
    check_args(alpha, beta, z)?;
    if !gamma.re.is_finite() || !gamma.im.is_finite() {
        return Err(MlError::NonFinite(format!("gamma = {gamma}")));
    }
    if gamma == Complex64::new(1.0, 0.0) {
        return ml_two(alpha, beta, z);
    }
    if gamma == Complex64::new(0.0, 0.0) {
        return Ok(MLValue {
            value: Complex64::new(crate::special::rgamma(beta), 0.0),
            abs_error_estimate: 0.0,
            regime: Regime::TaylorSeries,
        });
    }
    let mut v = series::prabhakar_taylor(alpha, beta, gamma, z);
    if z.im == 0.0 && gamma.im == 0.0 {
        v.value.im = 0.0;
    }
    with_contract(v, z)
}

/// `E_{α,β}(z)` without the contract check, for hot loops that track their
/// own error budget. Always returns the best available value.
pub(crate) fn ml_value(alpha: f64, beta: f64, z: Complex64) -> Complex64 {
    realify(evaluate(alpha, beta, z), z).value
}
