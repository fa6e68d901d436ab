//! Power-series evaluation paths.

use num_complex::Complex64;

use crate::special::{ln_gamma_sign, rgamma};

use super::{MLValue, Regime};

const MAX_TERMS: usize = 20_000;

/// `z^n / Γ(αn+β)` without overflow.
fn series_term(alpha: f64, beta: f64, z: Complex64, log_z: Complex64, n: usize) -> Complex64 {
    if n == 0 {
        return Complex64::new(rgamma(beta), 0.0);
    }
    let arg = alpha * n as f64 + beta;
    let (lg, sign) = ln_gamma_sign(arg);
    if lg.is_infinite() {
        return Complex64::new(0.0, 0.0);
    }
    if arg < 160.0 && n < 64 {
        return z.powu(n as u32) * rgamma(arg);
    }
    (log_z * n as f64 - lg).exp() * sign
}

/// Direct Taylor summation `Σ z^n / Γ(αn+β)`.
///
/// The error estimate adds the truncation (next term) to the rounding budget
/// `ε·Σ|term|`, which dominates when the terms cancel.
pub(crate) fn taylor(alpha: f64, beta: f64, z: Complex64) -> MLValue {
    if z == Complex64::new(0.0, 0.0) {
        return MLValue {
            value: Complex64::new(rgamma(beta), 0.0),
            abs_error_estimate: 0.0,
            regime: Regime::TaylorSeries,
        };
    }
    let log_z = z.ln();
    let radius = z.norm().powf(1.0 / alpha);
    // index past which the terms are monotonically decreasing
    let n_peak = ((radius - beta) / alpha).max(0.0).ceil() as usize + 1;
    let mut terms = Vec::with_capacity(n_peak + 32);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut abs_sum = 0.0;
    let mut small_run = 0;
    let mut last = f64::INFINITY;
    let mut converged = false;
    for n in 0..MAX_TERMS {
        let t = series_term(alpha, beta, z, log_z, n);
        terms.push(t);
        sum += t;
        let m = t.norm();
        abs_sum += m;
        if n >= n_peak && t != Complex64::new(0.0, 0.0) {
            last = m;
            if m <= 1e-17 * sum.norm() || m < f64::MIN_POSITIVE {
                small_run += 1;
                if small_run >= 2 {
                    converged = true;
                    break;
                }
            } else {
                small_run = 0;
            }
        }
    }
    let truncation = if converged { last } else { f64::INFINITY };
    // smallest terms first: the tail is not lost below the leading terms' ulp
    let sum: Complex64 = terms.iter().rev().sum();
    MLValue {
        value: sum,
        abs_error_estimate: truncation + 4.0 * f64::EPSILON * (abs_sum + sum.norm()),
        regime: Regime::TaylorSeries,
    }
}

/// `E_{1,β}(z) = e^z Σ (-z)^n (β-1)_n / (n! Γ(β+n))`, the Kummer-transformed
/// series. For `Re z < 0` its terms barely cancel, so it keeps relative
/// accuracy where `E_{1,β}` is exponentially small.
pub(crate) fn kummer_alpha_one(beta: f64, z: Complex64) -> MLValue {
    let a = beta - 1.0;
    let mz = -z;
    let mut q = Complex64::new(1.0, 0.0); // (-z)^n (a)_n / n!
    let mut sum = Complex64::new(0.0, 0.0);
    let mut abs_sum = 0.0;
    let mut last = f64::INFINITY;
    let mut small_run = 0;
    let mut converged = false;
    let n_peak = z.norm().ceil() as usize + 1;
    for n in 0..MAX_TERMS {
        if n > 0 {
            let nf = n as f64;
            q = q * mz * ((a + nf - 1.0) / nf);
        }
        let t = q * rgamma(a + n as f64 + 1.0);
        sum += t;
        let m = t.norm();
        abs_sum += m;
        if q == Complex64::new(0.0, 0.0) {
            // (a)_n vanished: the sum is a polynomial
            last = 0.0;
            converged = true;
            break;
        }
        if n >= n_peak {
            last = m;
            if m <= 1e-17 * sum.norm() {
                small_run += 1;
                if small_run >= 2 {
                    converged = true;
                    break;
                }
            } else {
                small_run = 0;
            }
        }
    }
    let scale = z.exp();
    let truncation = if converged { last } else { f64::INFINITY };
    let value = scale * sum;
    MLValue {
        value,
        abs_error_estimate: scale.norm() * (truncation + 4.0 * f64::EPSILON * abs_sum)
            + f64::EPSILON * value.norm(),
        regime: Regime::TaylorSeries,
    }
}

/// Three-parameter series `Σ (γ)_n z^n / (n! Γ(αn+β))`.
pub(crate) fn prabhakar_taylor(alpha: f64, beta: f64, gamma: Complex64, z: Complex64) -> MLValue {
    let mut coef = Complex64::new(1.0, 0.0); // (γ)_n / n!
    let mut sum = Complex64::new(0.0, 0.0);
    let mut abs_sum = 0.0;
    let mut last = f64::INFINITY;
    let mut small_run = 0;
    let mut converged = false;
    if z == Complex64::new(0.0, 0.0) {
        return MLValue {
            value: Complex64::new(rgamma(beta), 0.0),
            abs_error_estimate: 0.0,
            regime: Regime::TaylorSeries,
        };
    }
    let log_z = z.ln();
    let radius = z.norm().powf(1.0 / alpha);
    let n_peak =
        ((radius - beta) / alpha).max(0.0).ceil() as usize + gamma.norm().ceil() as usize + 1;
    for n in 0..MAX_TERMS {
        if n > 0 {
            let nf = n as f64;
            coef = coef * (gamma + (nf - 1.0)) / nf;
        }
        if coef == Complex64::new(0.0, 0.0) {
            // γ a non-positive integer: polynomial
            last = 0.0;
            converged = true;
            break;
        }
        let t = coef * series_term(alpha, beta, z, log_z, n);
        sum += t;
        let m = t.norm();
        abs_sum += m;
        if n >= n_peak && m > 0.0 {
            last = m;
            if m <= 1e-17 * sum.norm() {
                small_run += 1;
                if small_run >= 2 {
                    converged = true;
                    break;
                }
            } else {
                small_run = 0;
            }
        }
    }
    let truncation = if converged { last } else { f64::INFINITY };
    MLValue {
        value: sum,
        abs_error_estimate: truncation + 4.0 * f64::EPSILON * abs_sum,
        regime: Regime::TaylorSeries,
    }
}
