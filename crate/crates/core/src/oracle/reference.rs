//! Mittag-Leffler ground truth by direct series summation in MPFR arithmetic.
//!
//! The working precision grows with the largest series term, so the
//! cancellation of `Σ z^n/Γ(αn+β)` for `Re z < 0` never eats into the
//! requested digits.

use num_complex::Complex64;
use rug::ops::Pow;
use rug::{Complex, Float};

use super::OracleError;

/// Largest `|z|` the series is summed for.
pub const MAX_REFERENCE_ABS_Z: f64 = 30.0;
/// Largest `|z|^{1/α}`; the largest term grows like `e^{|z|^{1/α}}`.
pub const MAX_REFERENCE_RADIUS: f64 = 700.0;

const BITS_PER_DIGIT: f64 = std::f64::consts::LOG2_10;

/// `log10` of the largest `|z|^n / |Γ(αn+β)|`, scanned at low precision.
fn log10_peak_term(alpha: f64, beta: f64, abs_z: f64) -> (f64, u64) {
    let log10_z = abs_z.log10();
    let mut peak = f64::NEG_INFINITY;
    let mut n_peak = 0;
    let mut n = 0u64;
    loop {
        let arg = Float::with_val(64, alpha) * n + beta;
        let lg = if arg.is_integer() && arg <= 0 {
            None
        } else {
            Some(arg.ln_abs_gamma().0.to_f64() / std::f64::consts::LN_10)
        };
        if let Some(lg) = lg {
            let t = n as f64 * log10_z - lg;
            if t > peak {
                peak = t;
                n_peak = n;
            }
            if n > n_peak + 8 && alpha * n as f64 + beta > 2.0 && t < peak - 5.0 {
                break;
            }
        }
        n += 1;
    }
    (peak.max(0.0), n_peak)
}

/// `E_{α,β}(z)` correct to about `digits` significant digits of the terms'
/// scale, returned rounded to double precision.
pub fn ml_reference(
    alpha: f64,
    beta: f64,
    z: Complex64,
    digits: u32,
) -> Result<Complex64, OracleError> {
    if !(alpha > 0.0)
        || !alpha.is_finite()
        || !beta.is_finite()
        || !z.re.is_finite()
        || !z.im.is_finite()
    {
        return Err(OracleError::InvalidArgument(format!(
            "alpha={alpha}, beta={beta}, z={z}"
        )));
    }
    let abs_z = z.norm();
    if abs_z > MAX_REFERENCE_ABS_Z || abs_z.powf(1.0 / alpha) > MAX_REFERENCE_RADIUS {
        return Err(OracleError::RegionTooLarge { alpha, abs_z });
    }
    let digits = digits.max(30) as f64;
    if abs_z == 0.0 {
        let g = Float::with_val(256, beta);
        let v = if g.is_integer() && g <= 0 {
            0.0
        } else {
            g.gamma().recip().to_f64()
        };
        return Ok(Complex64::new(v, 0.0));
    }
    let (peak, _) = log10_peak_term(alpha, beta, abs_z);
    let prec = ((digits + peak + 20.0) * BITS_PER_DIGIT).ceil() as u32;
    let zc = Complex::with_val(prec, (z.re, z.im));
    let alpha_f = Float::with_val(prec, alpha);
    let beta_f = Float::with_val(prec, beta);
    let mut power = Complex::with_val(prec, (1, 0));
    let mut sum = Complex::with_val(prec, (0, 0));
    let threshold = Float::with_val(prec, 10).pow(-(digits as i32) - 5);
    let mut n: u64 = 0;
    let mut small_run = 0;
    loop {
        let arg = Float::with_val(prec, &alpha_f * n) + &beta_f;
        if !(arg.is_integer() && arg <= 0) {
            let g = arg.clone().gamma();
            let term = Complex::with_val(prec, &power / &g);
            let mag = Float::with_val(prec, term.abs_ref());
            sum += &term;
            // past the peak once αn+β exceeds |z|^{1/α}
            if arg.to_f64() > abs_z.powf(1.0 / alpha) + 2.0 && mag < threshold {
                small_run += 1;
                if small_run >= 2 {
                    break;
                }
            } else {
                small_run = 0;
            }
        }
        power *= &zc;
        n += 1;
    }
    let (re, im) = sum.into_real_imag();
    let mut out = Complex64::new(re.to_f64(), im.to_f64());
    if z.im == 0.0 {
        out.im = 0.0;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_and_cosine() {
        let e = ml_reference(1.0, 1.0, Complex64::new(1.0, 0.0), 50).unwrap();
        assert_eq!(e.re, std::f64::consts::E);
        let c = ml_reference(2.0, 1.0, Complex64::new(-4.0, 0.0), 40).unwrap();
        assert!((c.re - 2f64.cos()).abs() <= 1e-16);
    }

    #[test]
    fn heavy_cancellation_still_exact() {
        // E_1(-25) = e^{-25}: terms reach 1e10 while the sum is 1e-11
        let v = ml_reference(1.0, 1.0, Complex64::new(-25.0, 0.0), 30).unwrap();
        assert!(((v.re - (-25f64).exp()) / (-25f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn region_limits() {
        assert!(matches!(
            ml_reference(1.0, 1.0, Complex64::new(31.0, 0.0), 30),
            Err(OracleError::RegionTooLarge { .. })
        ));
        assert!(matches!(
            ml_reference(0.3, 1.0, Complex64::new(25.0, 0.0), 30),
            Err(OracleError::RegionTooLarge { .. })
        ));
    }
}
