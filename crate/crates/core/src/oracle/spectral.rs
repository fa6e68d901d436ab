//! Closed forms and dense spectral sums used as references.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::quadrature::gauss_legendre;
use crate::riesz_feller::DiffusionTerm;
use crate::solver::ModelSpec;
use crate::special::{gamma, rgamma};

/// `η D^α_θ` applied to `exp(-x²/(2σ²))`, by dense Gauss-Legendre
/// quadrature of `-(1/2π) ∫ e^{-ikx} ψ(k) σ√(2π) e^{-σ²k²/2} dk`.
///
/// The symbol is rebuilt here from `|k|^α` and `e^{±iθπ/2}`.
pub fn riesz_gaussian_reference(term: &DiffusionTerm, sigma: f64, x: f64) -> f64 {
    let (nodes, weights) = gauss_legendre(16);
    let k_max = 40.0 / sigma;
    let panels = 800;
    let h = k_max / panels as f64;
    let mut acc = 0.0;
    for p in 0..panels {
        let mid = (p as f64 + 0.5) * h;
        for (u, w) in nodes.iter().zip(&weights) {
            let k = mid + 0.5 * h * u;
            let amp = k.powf(term.alpha) * (-0.5 * (sigma * k).powi(2)).exp();
            let phase = 0.5 * PI * term.theta;
            // k and -k together: e^{-ikx} e^{iθπ/2} + e^{ikx} e^{-iθπ/2}
            let v = 2.0 * (phase - k * x).cos() * amp;
            acc += v * 0.5 * h * w;
        }
    }
    -term.eta * sigma * (2.0 * PI).sqrt() * acc / (2.0 * PI)
}

/// `N(0, t)` for `f = δ`, `g = 0`, no source, `ω = 0`, one term with `θ = 0`.
///
/// From `∫_0^∞ E_{μ,b}(-c k^α) dk = c^{-1/α} Γ(1/α) Γ(1-1/α) / (α Γ(b-μ/α))`,
/// valid for `1 < α ≤ 2`.
pub fn green_at_origin(model: &ModelSpec, t: f64) -> Option<f64> {
    if model.terms.len() != 1 || model.omega != 0.0 {
        return None;
    }
    let term = model.terms[0];
    if term.theta != 0.0 || !(term.alpha > 1.0) {
        return None;
    }
    let (mu, alpha) = (model.order.mu, term.alpha);
    let e = mu + model.order.nu * (2.0 - mu);
    let c = t.powf(mu) * term.eta;
    let integral = c.powf(-1.0 / alpha)
        * gamma(1.0 / alpha)
        * gamma(1.0 - 1.0 / alpha)
        * rgamma(e - 1.0 - mu / alpha)
        / alpha;
    Some(t.powf(e - 2.0) * integral / PI)
}

/// `∫ N dx = f*(0) t^{e-2} E_{μ,e-1}(-ω t^μ)`: the `k = 0` mode.
pub fn mass_reference(model: &ModelSpec, mass0: f64, t: f64) -> f64 {
    let mu = model.order.mu;
    let e = mu + model.order.nu * (2.0 - mu);
    let z = Complex64::new(-model.omega * t.powf(mu), 0.0);
    let v = crate::mittag_leffler::ml_two(mu, e - 1.0, z)
        .map(|v| v.value.re)
        .unwrap_or(f64::NAN);
    mass0 * t.powf(e - 2.0) * v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn second_derivative_of_gaussian() {
        let t = DiffusionTerm::new(1.0, 2.0, 0.0).unwrap();
        for x in [0.0f64, 0.7, 2.0] {
            let want = (x * x - 1.0) * (-0.5 * x * x).exp();
            assert!((riesz_gaussian_reference(&t, 1.0, x) - want).abs() < 1e-13);
        }
    }

    #[test]
    fn caputo_green_origin() {
        let m = ModelSpec::single(1.5, 1.0, 0.0, 1.0, 2.0, 0.0).unwrap();
        // 0.5/Γ(1/4)
        assert!((green_at_origin(&m, 1.0).unwrap() - 0.5 / gamma(0.25)).abs() < 1e-15);
        let m = ModelSpec::single(1.5, 0.5, 0.0, 1.0, 2.0, 0.0).unwrap();
        assert_eq!(green_at_origin(&m, 1.0).unwrap(), 0.0);
    }
}
