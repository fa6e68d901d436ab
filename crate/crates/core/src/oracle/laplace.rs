//! Numerical Laplace transform of `t^{α-β} E_{α,α-β+1}(-a t^α)`.
//!
//! Exact transform: `s^{β-1}/(a + s^α)`. The quadrature is composite
//! Gauss-Legendre, independent of the adaptive rules used by the solver:
//! near 0 the substitution `t = T₁ v^{1/(p+1)}`, `p = α-β`, removes the power
//! singularity and the remaining `v`-interval is graded geometrically toward 0.

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;

use super::CheckReport;
use crate::mittag_leffler::ml_two;
use crate::quadrature::gauss_legendre;

const GL_NODES: usize = 20;
const GRADING_LEVELS: i32 = 60;
/// Truncation: the neglected tail is below this fraction of the transform.
const TAIL: f64 = 1e-14;

/// `Re` of the rightmost pole of `s^{β-1}/(a + s^α)` on the principal sheet,
/// clamped at 0; the time function grows like `e^{λt}`.
fn growth_rate(alpha: f64, a: Complex64) -> f64 {
    let r = a.norm().powf(1.0 / alpha);
    let base = (-a).arg();
    let mut rate: f64 = 0.0;
    for j in -4..=4 {
        let phi = (base + 2.0 * PI * j as f64) / alpha;
        if phi.abs() < PI {
            rate = rate.max(r * phi.cos());
        }
    }
    rate
}

/// `∫_a^b f` by `panels` Gauss-Legendre panels.
fn composite(
    f: &dyn Fn(f64) -> Result<Complex64, String>,
    a: f64,
    b: f64,
    panels: usize,
    rule: &(Vec<f64>, Vec<f64>),
) -> Result<Complex64, String> {
    let h = (b - a) / panels as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..panels {
        let lo = a + i as f64 * h;
        let mid = lo + 0.5 * h;
        for (x, w) in rule.0.iter().zip(&rule.1) {
            acc += f(mid + 0.5 * h * x)? * (0.5 * h * w);
        }
    }
    Ok(acc)
}

/// `(numeric, exact)` transform, or the reason the quadrature failed.
pub fn laplace_pair_values(
    alpha: f64,
    beta: f64,
    a: Complex64,
    s: f64,
) -> Result<(Complex64, Complex64), String> {
    let p = alpha - beta;
    if !(alpha > 0.0) || !(p > -1.0) || !(s > 0.0) || a.re < 0.0 {
        return Err(format!(
            "outside the pair's validity: alpha={alpha}, beta={beta}, a={a}, s={s}"
        ));
    }
    let lambda = growth_rate(alpha, a);
    if s <= lambda {
        return Err(format!("s = {s} does not exceed the growth rate {lambda}"));
    }
    let exact = Complex64::new(s, 0.0).powf(beta - 1.0) / (a + s.powf(alpha));
    let decay = s - lambda;
    // e^{-(s-λ)T} max(1, T^p) < TAIL·|exact|, by fixed-point iteration
    let mut big_t = 1.0 / decay;
    for _ in 0..20 {
        big_t = ((1.0 / TAIL).ln() - exact.norm().ln().min(0.0) + p.max(0.0) * big_t.max(1.0).ln())
            / decay;
    }
    let h = |t: f64| -> Result<Complex64, String> {
        let e = ml_two(alpha, p + 1.0, -a * t.powf(alpha)).map_err(|e| e.to_string())?;
        Ok(e.value * (-s * t).exp())
    };
    let rule = gauss_legendre(GL_NODES);
    let t1 = big_t.min(1.0 / decay).min(1.0);
    // ∫_0^{T₁} t^p h(t) dt = T₁^{p+1}/(p+1) ∫_0^1 h(T₁ v^{1/(p+1)}) dv
    let hv = |v: f64| h(t1 * v.powf(1.0 / (p + 1.0)));
    let mut head = Complex64::new(0.0, 0.0);
    for j in 0..GRADING_LEVELS {
        let hi = 0.5f64.powi(j);
        head += composite(&hv, 0.5 * hi, hi, 1, &rule)?;
    }
    head *= t1.powf(p + 1.0) / (p + 1.0);
    // oscillation scale of the integrand sets the panel width
    let freq = s.max(a.norm().powf(1.0 / alpha)).max(1.0);
    let panels = (((big_t - t1) * freq * 2.0).ceil() as usize).max(1);
    let body = composite(&|t: f64| Ok(h(t)? * t.powf(p)), t1, big_t, panels, &rule)?;
    Ok((head + body, exact))
}

/// Checks `∫_0^∞ e^{-st} t^{α-β} E_{α,α-β+1}(-at^α) dt = s^{β-1}/(a+s^α)`
/// to relative `1e-6`. Failures are reports, never panics.
pub fn laplace_pair_check(alpha: f64, beta: f64, a: Complex64, s: f64) -> CheckReport {
    let start = Instant::now();
    let name = format!("laplace_pair(alpha={alpha}, beta={beta}, a={a}, s={s})");
    let err = match laplace_pair_values(alpha, beta, a, s) {
        Ok((num, exact)) => (num - exact).norm() / exact.norm(),
        Err(_) => f64::INFINITY,
    };
    CheckReport::new(name, err, 1e-6, start.elapsed().as_secs_f64())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_and_cosine_pairs() {
        let (n, e) = laplace_pair_values(1.0, 1.0, Complex64::new(2.0, 0.0), 3.0).unwrap();
        assert!((e - 0.2).norm() < 1e-16);
        assert!((n - e).norm() < 1e-12);
        let (n, e) = laplace_pair_values(2.0, 1.0, Complex64::new(1.0, 0.0), 1.0).unwrap();
        assert!((e - 0.5).norm() < 1e-16);
        assert!((n - e).norm() < 1e-12);
    }

    #[test]
    fn fractional_pair_passes() {
        let r = laplace_pair_check(1.5, 1.2, Complex64::new(1.0, 0.0), 2.0);
        assert!(r.passed, "{r:?}");
        let r = laplace_pair_check(1.2, 2.0, Complex64::new(4.0, 0.0), 0.5);
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn invalid_arguments_fail_without_panicking() {
        let r = laplace_pair_check(1.0, 2.5, Complex64::new(1.0, 0.0), 1.0);
        assert!(!r.passed && r.measured_error.is_infinite());
        // E_{1.5}(-i t^{1.5}) grows; s below the growth rate has no transform
        let r = laplace_pair_check(1.5, 1.0, Complex64::new(0.0, 1.0), 0.1);
        assert!(!r.passed);
    }
}
