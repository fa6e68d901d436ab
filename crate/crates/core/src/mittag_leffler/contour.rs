//! Inversion of the Laplace transform `s^{α-β} / (s^α - z)` along an
//! optimal parabolic contour `s(u) = μ(iu+1)^2`, with the trapezoidal rule in
//! `u` and explicit residues for the poles that lie right of the contour.
//!
//! The contour parameters `(μ, h, N)` are chosen region by region between the
//! singularities so that discretisation and rounding errors balance at the
//! requested tolerance.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::asymptotic::principal_poles;

const LOG_MACHINE_EPS: f64 = -36.043_653_389_117_15;
const MAX_NODES: f64 = 200.0;

struct Params {
    mu: f64,
    h: f64,
    n: f64,
}

const NO_PARAMS: Params = Params {
    mu: 0.0,
    h: 0.0,
    n: f64::INFINITY,
};

/// Parameters for the region between two consecutive singularities.
fn params_bounded(t: f64, phi_j: f64, phi_j1: f64, p: f64, q: f64, log_eps: f64) -> Params {
    let fac = 1.01;
    let f_max = (log_eps - LOG_MACHINE_EPS).exp();
    let sq_j = phi_j.sqrt();
    let threshold = 2.0 * ((log_eps - LOG_MACHINE_EPS) / t).sqrt();
    let sq_j1 = phi_j1.sqrt().min(threshold - sq_j);
    let (bar_j, bar_j1, f_bar) = if p < 1e-14 && q < 1e-14 {
        (sq_j, sq_j1, 1.0)
    } else if p < 1e-14 {
        let f_min = if sq_j > 0.0 {
            fac * (sq_j / (sq_j1 - sq_j)).powf(q)
        } else {
            fac
        };
        if f_min >= f_max {
            return NO_PARAMS;
        }
        let f_bar = f_min + f_min / f_max * (f_max - f_min);
        let fq = f_bar.powf(-1.0 / q);
        (sq_j, (2.0 * sq_j1 - fq * sq_j) / (2.0 + fq), f_bar)
    } else if q < 1e-14 {
        let f_min = fac * (sq_j1 / (sq_j1 - sq_j)).powf(p);
        if f_min >= f_max {
            return NO_PARAMS;
        }
        let f_bar = f_min + f_min / f_max * (f_max - f_min);
        let fp = f_bar.powf(-1.0 / p);
        ((2.0 * sq_j + fp * sq_j1) / (2.0 - fp), sq_j1, f_bar)
    } else {
        let f_min = fac * (sq_j + sq_j1) / (sq_j1 - sq_j).powf(p.max(q));
        if f_min >= f_max {
            return NO_PARAMS;
        }
        let f_min = f_min.max(1.5);
        let f_bar = f_min + f_min / f_max * (f_max - f_min);
        let fp = f_bar.powf(-1.0 / p);
        let fq = f_bar.powf(-1.0 / q);
        let w = -phi_j1 * t / log_eps;
        let den = 2.0 + w - (1.0 + w) * fp + fq;
        (
            ((2.0 + w + fq) * sq_j + fp * sq_j1) / den,
            (-(1.0 + w) * fq * sq_j + (2.0 + w - (1.0 + w) * fp) * sq_j1) / den,
            f_bar,
        )
    };
    let log_eps = log_eps - f_bar.ln();
    let w = -bar_j1 * bar_j1 * t / log_eps;
    let mu = (((1.0 + w) * bar_j + bar_j1) / (2.0 + w)).powi(2);
    let h = -2.0 * PI / log_eps * (bar_j1 - bar_j) / ((1.0 + w) * bar_j + bar_j1);
    let n = ((1.0 - log_eps / t / mu).sqrt() / h).ceil();
    if !(mu > 0.0 && h > 0.0 && n.is_finite()) {
        return NO_PARAMS;
    }
    Params { mu, h, n }
}

/// Parameters for the unbounded region right of the last singularity.
fn params_unbounded(t: f64, phi_j: f64, p: f64, log_eps: f64) -> Params {
    let sq_phi = phi_j.sqrt();
    let mut phibar = if phi_j > 0.0 { phi_j * 1.01 } else { 0.01 };
    let mut sq_phibar = phibar.sqrt();
    let (f_min, f_max, f_tar) = (1.0, 10.0, 5.0f64);
    let mut nj;
    let mut a;
    let mut sq_mu;
    let mut iterations = 0;
    loop {
        let phi_t = phibar * t;
        let log_eps_phi_t = log_eps / phi_t;
        nj = (phi_t / PI * (1.0 - 1.5 * log_eps_phi_t + (1.0 - 2.0 * log_eps_phi_t).sqrt())).ceil();
        a = PI * nj / phi_t;
        sq_mu = sq_phibar * (4.0 - a).abs() / (7.0 - (1.0 + 12.0 * a).sqrt()).abs();
        let fbar = ((sq_phibar - sq_phi) / sq_mu).powf(-p);
        iterations += 1;
        if p < 1e-14 || (f_min < fbar && fbar < f_max) || iterations > 100 {
            break;
        }
        sq_phibar = f_tar.powf(-1.0 / p) * sq_mu + sq_phi;
        phibar = sq_phibar * sq_phibar;
    }
    let mut mu = sq_mu * sq_mu;
    let mut h = (-3.0 * a - 2.0 + 2.0 * (1.0 + 12.0 * a).sqrt()) / (4.0 - a) / nj;
    let threshold = (log_eps - LOG_MACHINE_EPS) / t;
    if mu > threshold {
        let q = if p.abs() < 1e-14 {
            0.0
        } else {
            f_tar.powf(-1.0 / p) * mu.sqrt()
        };
        let phibar = (q + phi_j.sqrt()).powi(2);
        if phibar < threshold {
            let w = (LOG_MACHINE_EPS / (LOG_MACHINE_EPS - log_eps)).sqrt();
            let u = (-phibar * t / LOG_MACHINE_EPS).sqrt();
            mu = threshold;
            nj = (w * log_eps / 2.0 / PI / (u * w - 1.0)).ceil();
            h = w / nj;
        } else {
            return NO_PARAMS;
        }
    }
    if !(mu > 0.0 && h > 0.0 && nj.is_finite()) {
        return NO_PARAMS;
    }
    Params { mu, h, n: nj }
}

/// `E_{α,β}(z)` at tolerance `exp(log_eps)`.
pub(crate) fn invert(alpha: f64, beta: f64, z: Complex64, log_eps: f64) -> Complex64 {
    let t = 1.0;
    let eps = log_eps.exp();
    let mut poles: Vec<(f64, Complex64)> = principal_poles(alpha, z)
        .into_iter()
        .map(|s| ((s.re + s.norm()) / 2.0, s))
        .filter(|(phi, _)| *phi > eps)
        .collect();
    poles.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut s_star = vec![Complex64::new(0.0, 0.0)];
    let mut phi = vec![0.0];
    for (ph, s) in poles {
        phi.push(ph);
        s_star.push(s);
    }
    let j1 = s_star.len();
    let j = j1 - 1;
    let mut p = vec![(-2.0 * (alpha - beta + 1.0)).max(0.0)];
    p.extend(std::iter::repeat_n(1.0, j));
    let mut q: Vec<f64> = std::iter::repeat_n(1.0, j).collect();
    q.push(f64::INFINITY);
    phi.push(f64::INFINITY);

    let mut log_eps = log_eps;
    let (best_idx, best) = loop {
        let admissible =
            (0..j1).filter(|&r| phi[r] < (log_eps - LOG_MACHINE_EPS) / t && phi[r] < phi[r + 1]);
        let mut best: Option<(usize, Params)> = None;
        for r in admissible {
            let prm = if r < j1 - 1 {
                params_bounded(t, phi[r], phi[r + 1], p[r], q[r], log_eps)
            } else {
                params_unbounded(t, phi[r], p[r], log_eps)
            };
            if best.as_ref().is_none_or(|(_, b)| prm.n < b.n) {
                best = Some((r, prm));
            }
        }
        match best {
            Some((r, prm)) if prm.n <= MAX_NODES => break (r, prm),
            _ if log_eps < -2.0 => log_eps += std::f64::consts::LN_10,
            Some((r, prm)) if prm.n.is_finite() => break (r, prm),
            _ => return Complex64::new(f64::NAN, f64::NAN),
        }
    };

    let n = best.n as i64;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in -n..=n {
        let u = best.h * k as f64;
        let s = Complex64::new(1.0, u).powi(2) * best.mu;
        let ds = Complex64::new(-2.0 * best.mu * u, 2.0 * best.mu);
        let f = s.powf(alpha - beta) / (s.powf(alpha) - z);
        acc += (s * t).exp() * f * ds;
    }
    let integral = acc * best.h / Complex64::new(0.0, 2.0 * PI);
    let residues: Complex64 = s_star[best_idx + 1..]
        .iter()
        .map(|s| s.powf(1.0 - beta) * (s * t).exp() / alpha)
        .sum();
    integral + residues
}
