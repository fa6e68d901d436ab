//! Real gamma function family in double precision.
//!
//! Every series in the crate divides by `Γ(nα+β)` for real arguments that can
//! be negative, huge, or sit on a pole, so the reciprocal form with the
//! convention `1/Γ(-n) = 0` is the primary entry point.

use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// ln(2π)/2
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// `B_{2k} / (2k(2k-1))` for the Stirling series of `ln Γ`.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

/// `sin(πx)` with exact zeros at the integers.
pub fn sin_pi(x: f64) -> f64 {
    if x.is_infinite() || x.is_nan() {
        return f64::NAN;
    }
    let r = x.rem_euclid(2.0);
    // r in [0, 2)
    let (r, sign) = if r > 1.0 { (r - 1.0, -1.0) } else { (r, 1.0) };
    let s = if r == 0.0 || r == 1.0 {
        0.0
    } else if r <= 0.25 {
        (PI * r).sin()
    } else if r <= 0.75 {
        (PI * (0.5 - r)).cos()
    } else {
        (PI * (1.0 - r)).sin()
    };
    sign * s
}

/// `cos(πx)` with exact zeros at the half-integers.
pub fn cos_pi(x: f64) -> f64 {
    sin_pi(x + 0.5)
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

fn lanczos_gamma(x: f64) -> f64 {
    // valid for x >= 0.5
    let x = x - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    // split the power so large x does not overflow before the exponential damps it
    let half = t.powf(0.5 * (x + 0.5));
    (2.0 * PI).sqrt() * half * ((-t).exp() * half) * acc
}

fn stirling_ln_gamma(x: f64) -> f64 {
    // valid for x >= 10
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut corr = 0.0;
    let mut p = inv;
    for c in STIRLING {
        corr += c * p;
        p *= inv2;
    }
    (x - 0.5) * x.ln() - x + HALF_LN_2PI + corr
}

/// `ln |Γ(x)|` together with the sign of `Γ(x)`.
///
/// Returns `(+inf, 1.0)` at the poles.
pub fn ln_gamma_sign(x: f64) -> (f64, f64) {
    if x.is_nan() {
        return (f64::NAN, 1.0);
    }
    if is_nonpositive_integer(x) {
        return (f64::INFINITY, 1.0);
    }
    if x >= 10.0 {
        return (stirling_ln_gamma(x), 1.0);
    }
    if x >= 0.5 {
        return (lanczos_gamma(x).ln(), 1.0);
    }
    // reflection: Γ(x)Γ(1-x) = π / sin(πx)
    let s = sin_pi(x);
    let (lg, _) = ln_gamma_sign(1.0 - x);
    ((PI / s.abs()).ln() - lg, s.signum())
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    ln_gamma_sign(x).0
}

/// `Γ(x)` for real `x`. Infinite at the poles, overflows to infinity beyond ~171.6.
pub fn gamma(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if is_nonpositive_integer(x) {
        return f64::INFINITY;
    }
    if x >= 0.5 {
        if x > 171.7 {
            return f64::INFINITY;
        }
        if x == x.floor() && x <= 23.0 {
            // exact factorials
            let mut p = 1.0;
            let mut k = 2.0;
            while k < x {
                p *= k;
                k += 1.0;
            }
            return p;
        }
        return lanczos_gamma(x);
    }
    PI / (sin_pi(x) * gamma(1.0 - x))
}

/// `1/Γ(x)`, entire: exactly zero at `0, -1, -2, ...`.
pub fn rgamma(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if is_nonpositive_integer(x) {
        return 0.0;
    }
    if x >= 0.5 {
        if x > 170.0 {
            return (-ln_gamma(x)).exp();
        }
        return 1.0 / gamma(x);
    }
    // 1/Γ(x) = sin(πx) Γ(1-x) / π
    if 1.0 - x > 170.0 {
        let (lg, _) = ln_gamma_sign(1.0 - x);
        return sin_pi(x) * (lg - PI.ln()).exp();
    }
    sin_pi(x) * gamma(1.0 - x) / PI
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn factorials_and_half_integers() {
        assert_eq!(gamma(1.0), 1.0);
        assert_eq!(gamma(5.0), 24.0);
        assert!(rel(gamma(0.5), PI.sqrt()) < 1e-15);
        assert!(rel(gamma(2.5), 0.75 * PI.sqrt()) < 1e-14);
        assert!(rel(gamma(-0.5), -2.0 * PI.sqrt()) < 1e-14);
        assert!(rel(gamma(-1.5), 4.0 / 3.0 * PI.sqrt()) < 1e-14);
    }

    #[test]
    fn reciprocal_vanishes_at_poles() {
        for n in 0..20 {
            assert_eq!(rgamma(-(n as f64)), 0.0);
        }
        assert!(rel(rgamma(3.0), 0.5) < 1e-15);
    }

    #[test]
    fn ln_gamma_matches_stirling_region() {
        // Γ(30) = 29!
        let mut f = 1.0f64;
        for k in 2..30 {
            f *= k as f64;
        }
        assert!(rel(ln_gamma(30.0), f.ln()) < 1e-15);
        // continuity across the 10.0 switch
        assert!(rel(ln_gamma(10.0 - 1e-12), ln_gamma(10.0)) < 1e-11);
    }

    #[test]
    fn ln_gamma_sign_on_negative_axis() {
        let (l, s) = ln_gamma_sign(-0.5);
        assert_eq!(s, -1.0);
        assert!(rel(l.exp(), 2.0 * PI.sqrt()) < 1e-14);
        let (l, s) = ln_gamma_sign(-2.5);
        assert_eq!(s, -1.0);
        assert!(rel(l.exp(), 8.0 / 15.0 * PI.sqrt()) < 1e-13);
    }

    #[test]
    fn sin_pi_exact_zeros() {
        assert_eq!(sin_pi(3.0), 0.0);
        assert_eq!(sin_pi(-7.0), 0.0);
        assert!((sin_pi(0.5) - 1.0).abs() < 1e-16);
        assert!((sin_pi(-0.5) + 1.0).abs() < 1e-16);
        assert_eq!(cos_pi(0.5), 0.0);
    }
}
