//! Brute-force Fourier inversion on a uniform wavenumber grid.
//!
//! Shares no code with the solver's inversion: the bracket, the mode formula
//! and the source time integral are written out again here, the `k`-integral
//! is a plain rectangle rule evaluated by FFT, and the source integral uses
//! graded Gauss-Legendre panels instead of tanh-sinh or closed forms.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::OracleError;
use crate::mittag_leffler::ml_two;
use crate::quadrature::gauss_legendre;
use crate::solver::{ModelSpec, Profile, SourceTerm};

/// Uniform grid: `n` points, spacing `dx`, `x_m = (m - n/2)·dx`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FftGrid {
    pub n: usize,
    pub dx: f64,
}

impl Default for FftGrid {
    fn default() -> Self {
        FftGrid {
            n: 1 << 16,
            dx: 0.1,
        }
    }
}

impl FftGrid {
    pub fn x(&self, m: usize) -> f64 {
        (m as f64 - (self.n / 2) as f64) * self.dx
    }

    /// Index of the grid point nearest to `x`.
    pub fn index_of(&self, x: f64) -> usize {
        ((x / self.dx).round() + (self.n / 2) as f64).clamp(0.0, (self.n - 1) as f64) as usize
    }
}

/// Field samples on an [`FftGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct SampledField {
    pub grid: FftGrid,
    pub values: Vec<f64>,
    pub max_imaginary_part: f64,
}

impl SampledField {
    /// Value at the grid point nearest to `x`.
    pub fn at(&self, x: f64) -> f64 {
        self.values[self.grid.index_of(x)]
    }
}

/// `ω + Σ η_j |k|^{α_j} (cos(θ_jπ/2) + i sign(k) sin(θ_jπ/2))`.
fn bracket(model: &ModelSpec, k: f64) -> Complex64 {
    let mut b = Complex64::new(model.omega, 0.0);
    if k != 0.0 {
        for term in &model.terms {
            let phase = 0.5 * PI * term.theta * k.signum();
            b += Complex64::from_polar(term.eta * k.abs().powf(term.alpha), phase);
        }
    }
    b
}

fn ml(alpha: f64, beta: f64, z: Complex64) -> Result<Complex64, OracleError> {
    ml_two(alpha, beta, z)
        .map(|v| v.value)
        .map_err(|e| OracleError::InvalidArgument(e.to_string()))
}

/// `∫_0^t ξ^{μ-1} q(t-ξ) E_{μ,μ}(-ξ^μ B) dξ`.
///
/// With `ξ = t u^{1/μ}` this is `(t^μ/μ) ∫_0^1 q(t - t u^{1/μ}) E_{μ,μ}(-B t^μ u) du`;
/// the panels are graded toward both ends of `[0, 1]`.
fn source_time_integral(
    mu: f64,
    b: Complex64,
    q: &dyn Fn(f64) -> f64,
    t: f64,
    rule: &(Vec<f64>, Vec<f64>),
) -> Result<Complex64, OracleError> {
    const LEVELS: i32 = 14;
    let z = -b * t.powf(mu);
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..LEVELS {
        let hi = 0.5 * 0.5f64.powi(j);
        let lo = if j == LEVELS - 1 { 0.0 } else { 0.5 * hi };
        for (a, c) in [(lo, hi), (1.0 - hi, 1.0 - lo)] {
            let mid = 0.5 * (a + c);
            let h = 0.5 * (c - a);
            for (x, w) in rule.0.iter().zip(&rule.1) {
                let u: f64 = mid + h * x;
                // t - ξ = -t·expm1(ln(u)/μ) keeps digits as u → 1
                let rest = -t * (u.ln() / mu).exp_m1();
                acc += ml(mu, mu, z * u)? * (q(rest) * h * w);
            }
        }
    }
    Ok(acc * (t.powf(mu) / mu))
}

/// `N(x_m, t)` on the whole grid from `(dk/2π) Σ_j e^{-ik_j x_m} N*(k_j, t)`,
/// `k_j = (j - n/2)·dk`, `dk = 2π/(n·dx)`.
///
/// Wavenumbers where every data transform is below `1e-18` of its peak are
/// skipped; the mode is bounded there, so they contribute nothing.
pub fn fft_inversion_oracle(
    model: &ModelSpec,
    f: &Profile,
    g: &Profile,
    source: &SourceTerm,
    t: f64,
    grid: FftGrid,
) -> Result<SampledField, OracleError> {
    if !(t > 0.0) || grid.n < 4 || !grid.n.is_multiple_of(4) || !(grid.dx > 0.0) {
        return Err(OracleError::InvalidArgument(format!(
            "need t > 0 and n a multiple of 4, got t={t}, n={}",
            grid.n
        )));
    }
    let n = grid.n;
    let mu = model.order.mu;
    let e = mu + model.order.nu * (2.0 - mu);
    let dk = 2.0 * PI / (n as f64 * grid.dx);
    let rule = gauss_legendre(8);
    let peak = |p: &Profile| p.fourier_hat(0.0).norm().max(p.fourier_hat(dk).norm());
    let (pf, pg) = (peak(f), peak(g));
    let (space, q): (Option<&Profile>, Box<dyn Fn(f64) -> f64>) = match source {
        SourceTerm::Zero => (None, Box::new(|_| 0.0)),
        SourceTerm::Separable { space, time } => {
            let time = time.clone();
            (Some(space), Box::new(move |s| time.value(s)))
        }
    };
    let ps = space.map_or(0.0, peak);
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    for (j, slot) in buf.iter_mut().enumerate() {
        let k = (j as f64 - (n / 2) as f64) * dk;
        let fh = f.fourier_hat(k);
        let gh = g.fourier_hat(k);
        let sh = space.map_or(Complex64::new(0.0, 0.0), |p| p.fourier_hat(k));
        let live = |v: Complex64, p: f64| p > 0.0 && v.norm() > 1e-18 * p;
        if !live(fh, pf) && !live(gh, pg) && !live(sh, ps) {
            continue;
        }
        let b = bracket(model, k);
        let z = -b * t.powf(mu);
        let mut mode = Complex64::new(0.0, 0.0);
        if live(fh, pf) {
            mode += fh * ml(mu, e - 1.0, z)? * t.powf(e - 2.0);
        }
        if live(gh, pg) {
            mode += gh * ml(mu, e, z)? * t.powf(e - 1.0);
        }
        if live(sh, ps) {
            mode += sh * source_time_integral(mu, b, q.as_ref(), t, &rule)?;
        }
        // (-1)^j shifts the spectrum so the FFT sees k_j for j = 0..n
        *slot = if j % 2 == 0 { mode } else { -mode };
    }
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let scale = dk / (2.0 * PI);
    let mut values = Vec::with_capacity(n);
    let mut max_imag: f64 = 0.0;
    for (m, v) in buf.iter().enumerate() {
        // (-1)^m undoes the shift of the x grid; n/2 even makes the constant phase 1
        let v = if m % 2 == 0 { *v } else { -*v } * scale;
        max_imag = max_imag.max(v.im.abs());
        values.push(v.re);
    }
    Ok(SampledField {
        grid,
        values,
        max_imaginary_part: max_imag,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_data_zero_field() {
        let m = ModelSpec::single(1.5, 1.0, 0.0, 1.0, 2.0, 0.0).unwrap();
        let grid = FftGrid { n: 1024, dx: 0.1 };
        let r = fft_inversion_oracle(
            &m,
            &Profile::Zero,
            &Profile::Zero,
            &SourceTerm::Zero,
            1.0,
            grid,
        )
        .unwrap();
        assert!(r.values.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn wave_case_matches_dalembert() {
        let m = ModelSpec::single(2.0, 1.0, 0.0, 1.0, 2.0, 0.0).unwrap();
        let grid = FftGrid { n: 4096, dx: 0.05 };
        let f = Profile::gaussian(0.0, 1.0).unwrap();
        let t = 0.7;
        let r = fft_inversion_oracle(&m, &f, &Profile::Zero, &SourceTerm::Zero, t, grid).unwrap();
        for x in [-3.0, -0.5, 0.0, 1.2, 4.0] {
            let want = 0.5 * (f.value(x - t) + f.value(x + t));
            assert!((r.at(x) - want).abs() < 1e-10, "x={x}");
        }
        assert!(r.max_imaginary_part < 1e-12);
    }
}
