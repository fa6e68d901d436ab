//! Riesz-Feller space-fractional derivative
//!
//! Fourier symbol, with `f*(k) = ∫ e^{ikx} f(x) dx`:
//!
//! ```text
//! F{D^α_θ f}(k) = -ψ(k) f*(k),   ψ(k) = |k|^α e^{i sign(k) θπ/2}
//! ```
//!
//! valid for `0 < α ≤ 2`, `|θ| ≤ min(α, 2-α)`. In x-space, for `α ≠ 1`,
//!
//! ```text
//! D^α_θ f(x) = Γ(1+α)/π [ sin((α+θ)π/2) ∫_0^∞ (f(x+ξ) - f(x)) ξ^{-1-α} dξ
//!                       + sin((α-θ)π/2) ∫_0^∞ (f(x-ξ) - f(x)) ξ^{-1-α} dξ ]
//! ```
//!
//! with Hadamard finite parts for `α > 1`. For `θ = 0` and `α ≠ 1` this is the
//! Riesz derivative `-(I_+^{-α} + I_-^{-α}) / (2cos(απ/2))` built from the
//! Weyl integrals `I_±`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

use crate::quadrature::{gauss_legendre, tanh_sinh};
use crate::special::{cos_pi, gamma, rgamma, sin_pi};

/// Edge samples above this fraction of `max |f|` are rejected.
pub const DECAY_TOLERANCE: f64 = 1e-6;
/// Largest relative size of the last Taylor term of the near-origin piece.
const NEAR_ORIGIN_TOLERANCE: f64 = 1e-3;
/// Slack on the skewness bound for values produced by arithmetic.
const THETA_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RieszError {
    #[error("invalid diffusion term: {0}")]
    InvalidTerm(String),
    #[error("at least one diffusion term is required")]
    EmptyTermList,
    #[error("function does not decay at the grid edge: |f| = {edge:.3e} vs max {max:.3e}")]
    InsufficientDecay { edge: f64, max: f64 },
    #[error("grid too coarse for the near-origin correction: indicator {indicator:.3e}")]
    GridTooCoarse { indicator: f64 },
    #[error("the x-domain representation excludes alpha = 1")]
    UnsupportedOrder,
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}

/// One space-fractional term `η D^α_θ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawTerm")]
pub struct DiffusionTerm {
    pub eta: f64,
    pub alpha: f64,
    pub theta: f64,
}

#[derive(Deserialize)]
struct RawTerm {
    eta: f64,
    alpha: f64,
    #[serde(default)]
    theta: f64,
}

impl TryFrom<RawTerm> for DiffusionTerm {
    type Error = RieszError;
    fn try_from(r: RawTerm) -> Result<Self, RieszError> {
        DiffusionTerm::new(r.eta, r.alpha, r.theta)
    }
}

impl DiffusionTerm {
    /// Validates `η > 0`, `0 < α ≤ 2`, `|θ| ≤ min(α, 2-α)`.
    pub fn new(eta: f64, alpha: f64, theta: f64) -> Result<Self, RieszError> {
        if !(eta > 0.0 && eta.is_finite()) {
            return Err(RieszError::InvalidTerm(format!(
                "eta must be positive and finite, got {eta}"
            )));
        }
        if !(alpha > 0.0 && alpha <= 2.0) {
            return Err(RieszError::InvalidTerm(format!(
                "alpha must lie in (0, 2], got {alpha}"
            )));
        }
        let bound = alpha.min(2.0 - alpha);
        if !theta.is_finite() || theta.abs() > bound + THETA_SLACK {
            return Err(RieszError::InvalidTerm(format!(
                "|theta| must not exceed min(alpha, 2 - alpha) = {bound}, got theta = {theta}"
            )));
        }
        Ok(DiffusionTerm { eta, alpha, theta })
    }

    /// The symmetric term `η D^α_0`.
    pub fn riesz(eta: f64, alpha: f64) -> Result<Self, RieszError> {
        DiffusionTerm::new(eta, alpha, 0.0)
    }
}

/// `ψ(k) = |k|^α e^{i sign(k) θπ/2}` (without `η`).
pub fn symbol(term: &DiffusionTerm, k: f64) -> Complex64 {
    if k == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let m = k.abs().powf(term.alpha);
    if term.theta == 0.0 {
        return Complex64::new(m, 0.0);
    }
    let phase = k.signum() * term.theta / 2.0;
    Complex64::new(m * cos_pi(phase), m * sin_pi(phase))
}

/// `Σ_j η_j ψ_j(k)`.
pub fn multi_symbol(terms: &[DiffusionTerm], k: f64) -> Result<Complex64, RieszError> {
    if terms.is_empty() {
        return Err(RieszError::EmptyTermList);
    }
    Ok(terms.iter().map(|t| symbol(t, k) * t.eta).sum())
}

/// Samples `values[i] = f(x0 + i·dx)`; zero outside the grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridFunction {
    pub x0: f64,
    pub dx: f64,
    pub values: Vec<f64>,
}

impl GridFunction {
    pub fn new(x0: f64, dx: f64, values: Vec<f64>) -> Result<Self, RieszError> {
        if !(dx > 0.0 && dx.is_finite()) || !x0.is_finite() {
            return Err(RieszError::InvalidGrid(format!("x0 = {x0}, dx = {dx}")));
        }
        if values.len() < 8 {
            return Err(RieszError::InvalidGrid(format!(
                "need at least 8 samples, got {}",
                values.len()
            )));
        }
        Ok(GridFunction { x0, dx, values })
    }

    /// Samples `f` at `n` points on `[a, b]`.
    pub fn sample(a: f64, b: f64, n: usize, f: impl Fn(f64) -> f64) -> Result<Self, RieszError> {
        if !(b > a) || n < 8 {
            return Err(RieszError::InvalidGrid(format!(
                "[{a}, {b}] with {n} points"
            )));
        }
        let dx = (b - a) / (n - 1) as f64;
        GridFunction::new(a, dx, (0..n).map(|i| f(a + i as f64 * dx)).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.dx
    }

    pub fn xs(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.x(i)).collect()
    }

    fn at(&self, i: i64) -> f64 {
        if i < 0 || i as usize >= self.values.len() {
            0.0
        } else {
            self.values[i as usize]
        }
    }

    /// Cubic Lagrange interpolation through the four surrounding samples.
    pub fn interpolate(&self, x: f64) -> f64 {
        let s = (x - self.x0) / self.dx;
        let last = (self.values.len() - 1) as f64;
        if !(s >= 0.0 && s <= last) {
            return 0.0;
        }
        let j = (s.floor() as i64).min(self.values.len() as i64 - 2);
        let u = s - j as f64;
        let (fm, f0, f1, f2) = (self.at(j - 1), self.at(j), self.at(j + 1), self.at(j + 2));
        // nodes at u = -1, 0, 1, 2
        let wm = -u * (u - 1.0) * (u - 2.0) / 6.0;
        let w0 = (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0;
        let w1 = -(u + 1.0) * u * (u - 2.0) / 2.0;
        let w2 = (u + 1.0) * u * (u - 1.0) / 6.0;
        wm * fm + w0 * f0 + w1 * f1 + w2 * f2
    }

    fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// Rejects functions that are not negligible at both ends.
    pub fn check_decay(&self) -> Result<(), RieszError> {
        let max = self.max_abs();
        let n = self.values.len();
        let edge = [0, 1, n - 2, n - 1]
            .iter()
            .fold(0.0f64, |m, &i| m.max(self.values[i].abs()));
        if edge > DECAY_TOLERANCE * max {
            return Err(RieszError::InsufficientDecay { edge, max });
        }
        Ok(())
    }

    /// `f', f'', f''', f''''` at sample `i` by central differences.
    fn derivatives(&self, i: usize) -> [f64; 4] {
        let i = i as i64;
        let f = |o: i64| self.at(i + o);
        let h = self.dx;
        let d1 =
            (-f(-3) + 9.0 * f(-2) - 45.0 * f(-1) + 45.0 * f(1) - 9.0 * f(2) + f(3)) / (60.0 * h);
        let d2 = (2.0 * f(-3) - 27.0 * f(-2) + 270.0 * f(-1) - 490.0 * f(0) + 270.0 * f(1)
            - 27.0 * f(2)
            + 2.0 * f(3))
            / (180.0 * h * h);
        let d3 = (f(-3) - 8.0 * f(-2) + 13.0 * f(-1) - 13.0 * f(1) + 8.0 * f(2) - f(3))
            / (8.0 * h * h * h);
        let d4 = (-f(-3) + 12.0 * f(-2) - 39.0 * f(-1) + 56.0 * f(0) - 39.0 * f(1) + 12.0 * f(2)
            - f(3))
            / (6.0 * h * h * h * h);
        [d1, d2, d3, d4]
    }
}

/// Weights `w_m = ∫_h^∞ L_m(ξ) ξ^{-1-α} dξ` for the samples at `ξ = m·h`,
/// `m ≥ 1`, where `L_m` are quartic Lagrange bases on panels of four cells.
/// Index 0 of the result is unused.
fn far_field_weights(alpha: f64, h: f64, m_max: usize) -> Vec<f64> {
    let (gx, gw) = gauss_legendre(16);
    let panels = m_max.div_ceil(4);
    let mut w = vec![0.0; 4 * panels + 2];
    for p in 0..panels {
        let first = 1 + 4 * p;
        let a = h * first as f64;
        let b = a + 4.0 * h;
        for (x, wt) in gx.iter().zip(&gw) {
            let xi = 0.5 * (a + b) + 0.5 * (b - a) * x;
            let kern = 0.5 * (b - a) * wt * xi.powf(-1.0 - alpha);
            let u = (xi - a) / h; // in [0, 4]
            for l in 0..5 {
                let mut basis = 1.0;
                for q in 0..5 {
                    if q != l {
                        basis *= (u - q as f64) / (l as f64 - q as f64);
                    }
                }
                w[first + l] += kern * basis;
            }
        }
    }
    w
}

/// One-sided finite-part integral `∫_0^∞ (f(x_i + s·ξ) - f(x_i)) ξ^{-1-α} dξ`
/// on every grid point, for `s = ±1`.
fn one_sided(
    f: &GridFunction,
    alpha: f64,
    side: i64,
    far: &[f64],
    derivs: &[[f64; 4]],
) -> Vec<f64> {
    let h = f.dx;
    let n = f.len();
    let near_coef: Vec<f64> = (1..=4)
        .map(|k| {
            let k = k as f64;
            h.powf(k - alpha) / ((k - alpha) * gamma(k + 1.0))
        })
        .collect();
    let tail = h.powf(-alpha) / alpha;
    (0..n)
        .into_par_iter()
        .map(|i| {
            let d = derivs[i];
            let mut near = 0.0;
            let mut sign = 1.0;
            for k in 0..4 {
                sign *= side as f64;
                near += sign * d[k] * near_coef[k];
            }
            let mut acc = 0.0;
            for (m, wm) in far.iter().enumerate().skip(1) {
                let j = i as i64 + side * m as i64;
                if j < 0 || j as usize >= n {
                    break;
                }
                acc += wm * f.values[j as usize];
            }
            near + acc - f.values[i] * tail
        })
        .collect()
}

/// Riesz-Feller derivative of `f` computed in x-space on the same grid.
///
/// `α = 2` reduces to `f''`. `α = 1` is rejected because the hypersingular
/// form degenerates there.
pub fn apply_xdomain(f: &GridFunction, term: &DiffusionTerm) -> Result<GridFunction, RieszError> {
    let alpha = term.alpha;
    if alpha == 1.0 {
        return Err(RieszError::UnsupportedOrder);
    }
    f.check_decay()?;
    let derivs: Vec<[f64; 4]> = (0..f.len()).map(|i| f.derivatives(i)).collect();
    if alpha == 2.0 {
        let values = derivs.iter().map(|d| d[1]).collect();
        return GridFunction::new(f.x0, f.dx, values);
    }
    let h = f.dx;
    let far = far_field_weights(alpha, h, f.len() + 4);
    let plus = one_sided(f, alpha, 1, &far, &derivs);
    let minus = one_sided(f, alpha, -1, &far, &derivs);
    let c_plus = sin_pi((alpha + term.theta) / 2.0);
    let c_minus = sin_pi((alpha - term.theta) / 2.0);
    let pref = gamma(1.0 + alpha) / PI;
    let values: Vec<f64> = plus
        .iter()
        .zip(&minus)
        .map(|(p, m)| pref * (c_plus * p + c_minus * m))
        .collect();

    // size of the last Taylor term kept in the near-origin piece
    let d4 = derivs.iter().fold(0.0f64, |m, d| m.max(d[3].abs()));
    let last_term =
        pref * (c_plus.abs() + c_minus.abs()) * d4 * h.powf(4.0 - alpha) / (24.0 * (4.0 - alpha));
    let scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if last_term > NEAR_ORIGIN_TOLERANCE * scale {
        return Err(RieszError::GridTooCoarse {
            indicator: last_term / scale.max(f64::MIN_POSITIVE),
        });
    }
    GridFunction::new(f.x0, f.dx, values)
}

/// Side of a Weyl fractional integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    /// `I_+^β f(x) = 1/Γ(β) ∫_{-∞}^x (x-ξ)^{β-1} f(ξ) dξ`
    Plus,
    /// `I_-^β f(x) = 1/Γ(β) ∫_x^∞ (ξ-x)^{β-1} f(ξ) dξ`
    Minus,
}

/// Weyl fractional integral of the interpolated samples at any `x`.
pub fn weyl_integral(side: Side, beta: f64, f: &GridFunction, x: f64) -> Result<f64, RieszError> {
    if !(beta > 0.0) {
        return Err(RieszError::InvalidTerm(format!(
            "Weyl order must be positive, got {beta}"
        )));
    }
    f.check_decay()?;
    Ok(weyl_unchecked(side, beta, f, x))
}

fn weyl_unchecked(side: Side, beta: f64, f: &GridFunction, x: f64) -> f64 {
    let h = f.dx;
    let lo = f.x0;
    let hi = f.x(f.len() - 1);
    // distance u = |x - ξ| ranges over [u_min, u_max] where f may be nonzero
    let (u_min, u_max) = match side {
        Side::Plus => ((x - hi).max(0.0), x - lo),
        Side::Minus => ((lo - x).max(0.0), hi - x),
    };
    if u_max <= 0.0 {
        return 0.0;
    }
    let at = |u: f64| match side {
        Side::Plus => f.interpolate(x - u),
        Side::Minus => f.interpolate(x + u),
    };
    let mut total = 0.0;
    // near the kernel singularity integrate in v = u^β, which removes it
    let split = (u_min + 2.0 * h).min(u_max);
    if u_min == 0.0 {
        let vb = split.powf(beta);
        let r = tanh_sinh(
            &|v: f64, _: f64, _: f64| {
                let u = v.max(0.0).powf(1.0 / beta);
                Complex64::new(at(u), 0.0)
            },
            0.0,
            vb,
            1e-14,
            1e-12,
        );
        total += r.value.re / beta;
    } else {
        total += gl_kernel(&at, beta, u_min, split);
    }
    // the rest piecewise over cells, Gauss-Legendre with the smooth kernel
    let mut a = split;
    while a < u_max {
        let b = (a + h).min(u_max);
        total += gl_kernel(&at, beta, a, b);
        a = b;
    }
    total * rgamma(beta)
}

fn gl_kernel(at: &impl Fn(f64) -> f64, beta: f64, a: f64, b: f64) -> f64 {
    // 8-point Gauss-Legendre
    const X: [f64; 4] = [
        0.183_434_642_495_649_8,
        0.525_532_409_916_329,
        0.796_666_477_413_626_7,
        0.960_289_856_497_536_3,
    ];
    const W: [f64; 4] = [
        0.362_683_783_378_362,
        0.313_706_645_877_887_3,
        0.222_381_034_453_374_5,
        0.101_228_536_290_376_3,
    ];
    let c = 0.5 * (a + b);
    let r = 0.5 * (b - a);
    let mut s = 0.0;
    for (x, w) in X.iter().zip(W) {
        for u in [c - r * x, c + r * x] {
            s += w * u.powf(beta - 1.0) * at(u);
        }
    }
    s * r
}

/// Riesz derivative (`θ = 0`, `α ∈ (0,2)`, `α ≠ 1`) assembled from Weyl
/// integrals: `-(D² I_+^{2-α} f + D² I_-^{2-α} f) / (2cos(απ/2))`.
pub fn riesz_via_weyl(f: &GridFunction, alpha: f64) -> Result<GridFunction, RieszError> {
    if !(alpha > 0.0 && alpha < 2.0) || alpha == 1.0 {
        return Err(RieszError::InvalidTerm(format!(
            "Riesz factorization needs alpha in (0,1) or (1,2), got {alpha}"
        )));
    }
    f.check_decay()?;
    let beta = 2.0 - alpha;
    let h = f.dx;
    let lambda = 1.0 / (2.0 * cos_pi(alpha / 2.0));
    let values: Vec<f64> = (0..f.len())
        .into_par_iter()
        .map(|i| {
            let x = f.x(i);
            let g = |o: f64| {
                weyl_unchecked(Side::Plus, beta, f, x + o * h)
                    + weyl_unchecked(Side::Minus, beta, f, x + o * h)
            };
            let d2 = (2.0 * g(-3.0) - 27.0 * g(-2.0) + 270.0 * g(-1.0) - 490.0 * g(0.0)
                + 270.0 * g(1.0)
                - 27.0 * g(2.0)
                + 2.0 * g(3.0))
                / (180.0 * h * h);
            -lambda * d2
        })
        .collect();
    GridFunction::new(f.x0, f.dx, values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian_grid(n: usize, half_width: f64) -> GridFunction {
        GridFunction::sample(-half_width, half_width, n, |x| (-x * x / 2.0).exp()).unwrap()
    }

    /// `(1/2π) ∫ e^{-ikx} (-ψ(k)) √(2π) e^{-k²/2} dk` by dense trapezoid.
    fn spectral_gaussian(term: &DiffusionTerm, x: f64) -> f64 {
        let dk = 0.002;
        let mut s = 0.0;
        for j in 1..6000 {
            let k = j as f64 * dk;
            for kk in [k, -k] {
                let v = Complex64::new(0.0, -kk * x).exp()
                    * (-symbol(term, kk))
                    * (-kk * kk / 2.0).exp();
                s += v.re;
            }
        }
        s * dk * (2.0 * PI).sqrt() / (2.0 * PI)
    }

    fn rel_l2(a: &[f64], b: &[f64]) -> f64 {
        let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum();
        let den: f64 = b.iter().map(|y| y * y).sum();
        (num / den).sqrt()
    }

    #[test]
    fn symbol_values() {
        let t = DiffusionTerm::new(1.0, 2.0, 0.0).unwrap();
        assert_eq!(symbol(&t, 3.0), Complex64::new(9.0, 0.0));
        assert_eq!(symbol(&t, 0.0), Complex64::new(0.0, 0.0));
        let t = DiffusionTerm::new(1.0, 1.5, 0.4).unwrap();
        let s = symbol(&t, -2.0);
        let m = 2f64.powf(1.5);
        assert!((s.re - m * (PI / 5.0).cos()).abs() < 1e-15);
        assert!((s.im + m * (PI / 5.0).sin()).abs() < 1e-15);
    }

    #[test]
    fn multi_symbol_sums() {
        let a = DiffusionTerm::new(1.0, 2.0, 0.0).unwrap();
        let b = DiffusionTerm::new(0.5, 1.0, 0.0).unwrap();
        assert_eq!(
            multi_symbol(&[a, b], 2.0).unwrap(),
            Complex64::new(5.0, 0.0)
        );
        assert_eq!(multi_symbol(&[], 2.0), Err(RieszError::EmptyTermList));
    }

    #[test]
    fn term_validation() {
        assert!(DiffusionTerm::new(1.0, 1.5, 0.5).is_ok());
        assert!(DiffusionTerm::new(1.0, 1.5, 0.51).is_err());
        assert!(DiffusionTerm::new(1.0, 2.0, 0.1).is_err());
        assert!(DiffusionTerm::new(0.0, 1.0, 0.0).is_err());
        assert!(DiffusionTerm::new(1.0, 2.1, 0.0).is_err());
        assert!(
            serde_json::from_str::<DiffusionTerm>(r#"{"eta":1,"alpha":0.5,"theta":0.7}"#).is_err()
        );
    }

    #[test]
    fn interpolation_reproduces_cubics() {
        let g = GridFunction::sample(-1.0, 1.0, 21, |x| x * x * x - x).unwrap();
        // interior cells; the outermost cells see the zero padding
        for &x in &[-0.83, -0.31, 0.0, 0.47, 0.88] {
            assert!((g.interpolate(x) - (x * x * x - x)).abs() < 1e-14);
        }
        assert_eq!(g.interpolate(1.5), 0.0);
    }

    #[test]
    fn second_derivative_at_alpha_two() {
        let g = gaussian_grid(401, 10.0);
        let t = DiffusionTerm::new(1.0, 2.0, 0.0).unwrap();
        let d = apply_xdomain(&g, &t).unwrap();
        let exact: Vec<f64> = g
            .xs()
            .iter()
            .map(|x| (x * x - 1.0) * (-x * x / 2.0).exp())
            .collect();
        assert!(rel_l2(&d.values, &exact) < 1e-8);
    }

    #[test]
    fn xdomain_matches_spectral() {
        let g = gaussian_grid(401, 10.0);
        for &(alpha, theta) in &[(1.5, 0.0), (0.6, 0.3), (1.3, -0.5), (1.8, 0.15)] {
            let t = DiffusionTerm::new(1.0, alpha, theta).unwrap();
            let d = apply_xdomain(&g, &t).unwrap();
            let idx: Vec<usize> = (0..g.len()).step_by(10).collect();
            let got: Vec<f64> = idx.iter().map(|&i| d.values[i]).collect();
            let want: Vec<f64> = idx.iter().map(|&i| spectral_gaussian(&t, g.x(i))).collect();
            let e = rel_l2(&got, &want);
            assert!(e < 1e-4, "alpha={alpha} theta={theta} err={e}");
        }
    }

    #[test]
    fn rejects_alpha_one_and_slow_decay() {
        let g = gaussian_grid(201, 10.0);
        let t = DiffusionTerm::new(1.0, 1.0, 0.0).unwrap();
        assert_eq!(apply_xdomain(&g, &t), Err(RieszError::UnsupportedOrder));
        let wide = gaussian_grid(201, 3.0);
        let t = DiffusionTerm::new(1.0, 1.5, 0.0).unwrap();
        assert!(matches!(
            apply_xdomain(&wide, &t),
            Err(RieszError::InsufficientDecay { .. })
        ));
    }

    #[test]
    fn weyl_order_one_is_plain_integration() {
        // ∫_{-∞}^x ξ e^{-ξ²} dξ = -e^{-x²}/2
        let g = GridFunction::sample(-10.0, 10.0, 2001, |x| x * (-x * x).exp()).unwrap();
        for &x in &[-1.3, 0.0, 0.5, 2.0] {
            let v = weyl_integral(Side::Plus, 1.0, &g, x).unwrap();
            assert!((v + 0.5 * f64::exp(-x * x)).abs() < 1e-9, "x={x} v={v}");
            let w = weyl_integral(Side::Minus, 1.0, &g, x).unwrap();
            assert!((w - 0.5 * f64::exp(-x * x)).abs() < 1e-9, "x={x} w={w}");
        }
    }

    #[test]
    fn weyl_half_order_of_gaussian_is_symmetric() {
        let g = gaussian_grid(801, 10.0);
        let p = weyl_integral(Side::Plus, 0.5, &g, 0.7).unwrap();
        let m = weyl_integral(Side::Minus, 0.5, &g, -0.7).unwrap();
        assert!((p - m).abs() < 1e-10);
    }

    #[test]
    fn riesz_factorization_agrees() {
        let g = gaussian_grid(401, 10.0);
        for &alpha in &[1.3, 1.7] {
            let t = DiffusionTerm::riesz(1.0, alpha).unwrap();
            let a = apply_xdomain(&g, &t).unwrap();
            let b = riesz_via_weyl(&g, alpha).unwrap();
            assert!(rel_l2(&b.values, &a.values) < 1e-3, "alpha={alpha}");
        }
    }
}
