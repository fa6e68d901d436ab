//! Large-|z| expansion: exponential pole contributions plus the algebraic tail
//! `-Σ_{k≥1} z^{-k} / Γ(β-αk)`, truncated at its smallest term.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::special::{ln_gamma, rgamma};

use super::{MLValue, Regime};

const MAX_TERMS: usize = 400;

/// Roots `s` of `s^α = z` on the principal sheet `|arg s| < π`.
pub(crate) fn principal_poles(alpha: f64, z: Complex64) -> Vec<Complex64> {
    let theta = z.arg();
    let r = z.norm().powf(1.0 / alpha);
    let kmin = (-alpha / 2.0 - theta / (2.0 * PI)).ceil() as i64;
    let kmax = (alpha / 2.0 - theta / (2.0 * PI)).floor() as i64;
    (kmin..=kmax)
        .filter_map(|k| {
            let phase = (theta + 2.0 * PI * k as f64) / alpha;
            (phase.abs() < PI).then(|| Complex64::from_polar(r, phase))
        })
        .collect()
}

pub(crate) fn asymptotic(alpha: f64, beta: f64, z: Complex64) -> MLValue {
    let mut exp_part = Complex64::new(0.0, 0.0);
    for s in principal_poles(alpha, z) {
        exp_part += s.powf(1.0 - beta) * s.exp() / alpha;
    }
    let inv = z.inv();
    let log_abs_z = z.norm().ln();
    let mut power = Complex64::new(1.0, 0.0);
    let mut alg = Complex64::new(0.0, 0.0);
    let mut truncation = f64::INFINITY;
    let mut prev_env = f64::INFINITY;
    for k in 1..=MAX_TERMS {
        power *= inv;
        let arg = beta - alpha * k as f64;
        alg -= power * rgamma(arg);
        if arg >= 1.0 {
            continue;
        }
        // |1/Γ(x)| ≤ Γ(1-x)/π for x < 1; isolated small coefficients near the
        // zeros of 1/Γ must not end the sum early
        let env = (ln_gamma(1.0 - arg) - k as f64 * log_abs_z).exp() / PI;
        if env > prev_env {
            // beyond the smallest term the expansion diverges
            alg += power * rgamma(arg);
            break;
        }
        prev_env = env;
        truncation = env;
        if env <= 1e-17 * (alg + exp_part).norm() {
            break;
        }
    }
    let r = z.norm().powf(1.0 / alpha);
    let value = exp_part + alg;
    MLValue {
        value,
        // e^s loses about |s| ulps of relative accuracy
        abs_error_estimate: truncation
            + 4.0 * f64::EPSILON * ((1.0 + r) * exp_part.norm() + alg.norm()),
        regime: Regime::AsymptoticExpansion,
    }
}
