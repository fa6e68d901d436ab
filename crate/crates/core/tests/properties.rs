//! Invariants as property tests.

use std::f64::consts::PI;

use fracsolve::cli::RunConfig;
use fracsolve::hilfer_time::{hilfer_derivative, HilferOptions, TimeFractionalOrder, TimeFunction};
use fracsolve::mittag_leffler::ml_two;
use fracsolve::oracle::CheckReport;
use fracsolve::riesz_feller::{symbol, DiffusionTerm};
use fracsolve::solver::{mode_solution, ModelSpec, Profile};
use fracsolve::special::{gamma, rgamma};
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `(α, θ)` inside the admissible diamond.
fn term_params() -> impl Strategy<Value = (f64, f64)> {
    (0.05f64..=2.0, -1.0f64..=1.0).prop_map(|(a, s)| (a, s * a.min(2.0 - a)))
}

fn model_params() -> impl Strategy<Value = ModelSpec> {
    (
        1.05f64..=2.0,
        0.0f64..=1.0,
        0.0f64..=1.0,
        0.2f64..=2.0,
        term_params(),
    )
        .prop_map(|(mu, nu, omega, eta, (alpha, theta))| {
            ModelSpec::single(mu, nu, omega, eta, alpha, theta).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ml_conjugate_symmetry(alpha in 0.3f64..=2.0, beta in 0.2f64..=3.0, s in 0.0f64..=1.0, phi in -PI..PI) {
        // |z|^{1/α} ≤ 600 keeps E finite on the growing sector
        let z = Complex64::from_polar(s * 30f64.min(600f64.powf(alpha)), phi);
        let a = ml_two(alpha, beta, z).map(|v| v.value).unwrap_or_else(|e| e.flagged_value().unwrap().value);
        let b = ml_two(alpha, beta, z.conj()).map(|v| v.value).unwrap_or_else(|e| e.flagged_value().unwrap().value);
        prop_assert!((a.conj() - b).norm() <= 1e-13 * a.norm().max(1.0));
    }

    #[test]
    fn ml_shift_recurrence(alpha in 0.3f64..=2.0, beta in 0.2f64..=3.0, r in 0.0f64..=10.0, phi in -PI..PI) {
        // E_{α,β}(z) = 1/Γ(β) + z E_{α,α+β}(z)
        let z = Complex64::from_polar(r, phi);
        let lhs = ml_two(alpha, beta, z).unwrap().value;
        let shifted = z * ml_two(alpha, alpha + beta, z).unwrap().value;
        let rhs = shifted + rgamma(beta);
        prop_assert!((lhs - rhs).norm() <= 1e-9 * shifted.norm().max(rgamma(beta).abs()).max(1e-3));
    }

    #[test]
    fn symbol_reflection_and_scaling((alpha, theta) in term_params(), k in -50.0f64..50.0, s in 0.1f64..10.0) {
        let t = DiffusionTerm::new(1.0, alpha, theta).unwrap();
        let p = symbol(&t, k);
        prop_assert!((symbol(&t, -k) - p.conj()).norm() <= 1e-14 * p.norm().max(1e-300));
        let scaled = symbol(&t, s * k);
        prop_assert!((scaled - p * s.powf(alpha)).norm() <= 1e-12 * scaled.norm().max(1e-300));
        // Re ψ ≥ 0: the operator never amplifies a mode
        prop_assert!(p.re >= 0.0);
    }

    #[test]
    fn term_validation_is_exactly_the_diamond(alpha in -0.5f64..2.5, theta in -2.0f64..2.0) {
        let admissible = alpha > 0.0 && alpha <= 2.0 && theta.abs() <= alpha.min(2.0 - alpha) + 1e-12;
        prop_assert_eq!(DiffusionTerm::new(1.0, alpha, theta).is_ok(), admissible);
    }

    #[test]
    fn order_validation(mu in 0.5f64..2.5, nu in -0.5f64..1.5) {
        let admissible = mu > 1.0 && mu <= 2.0 && (0.0..=1.0).contains(&nu);
        prop_assert_eq!(TimeFractionalOrder::new(mu, nu).is_ok(), admissible);
    }

    #[test]
    fn mode_is_linear_in_the_data(m in model_params(), k in -5.0f64..5.0, t in 0.1f64..3.0,
                                   a in -2.0f64..2.0, b in -2.0f64..2.0) {
        let (f1, g1, f2, g2) = (c(1.0, 0.3), c(-0.4, 0.8), c(0.2, -1.0), c(0.5, 0.0));
        let n1 = mode_solution(&m, f1, g1, None, k, t).unwrap();
        let n2 = mode_solution(&m, f2, g2, None, k, t).unwrap();
        let n = mode_solution(&m, f1 * a + f2 * b, g1 * a + g2 * b, None, k, t).unwrap();
        prop_assert!((n - (n1 * a + n2 * b)).norm() <= 1e-12 * (n1.norm() + n2.norm()).max(1e-300) * 4.0);
    }

    #[test]
    fn real_data_gives_hermitian_modes(m in model_params(), k in 0.01f64..5.0, t in 0.1f64..3.0) {
        let f = Profile::gaussian(0.7, 1.3).unwrap();
        let plus = mode_solution(&m, f.fourier_hat(k), Complex64::new(0.0, 0.0), None, k, t).unwrap();
        let minus = mode_solution(&m, f.fourier_hat(-k), Complex64::new(0.0, 0.0), None, -k, t).unwrap();
        prop_assert!((plus.conj() - minus).norm() <= 1e-13 * plus.norm().max(1e-300));
    }

    #[test]
    fn hilfer_derivative_of_powers(mu in 1.05f64..=2.0, nu in 0.0f64..=1.0, p in 1.2f64..3.0, t in 0.3f64..2.0) {
        // t^p lies above the kernel {t^{e-2}, t^{e-1}}, so D t^p = Γ(p+1)/Γ(p+1-μ) t^{p-μ}
        let order = TimeFractionalOrder::new(mu, nu).unwrap();
        let f = TimeFunction::from_real_fn(move |s| s.powf(p));
        let opts = HilferOptions { t_min: Some(0.0), initial_data: None };
        let got = hilfer_derivative(&order, &f, t, &opts).unwrap();
        let want = gamma(p + 1.0) * rgamma(p + 1.0 - mu) * t.powf(p - mu);
        prop_assert!((got.re - want).abs() <= 1e-6 * want.abs().max(1e-3), "{} vs {}", got.re, want);
        prop_assert!(got.im.abs() <= 1e-12);
    }

    #[test]
    fn gaussian_transform_mass_and_translation(center in -10.0f64..10.0, sigma in 0.1f64..5.0, k in -5.0f64..5.0) {
        let f = Profile::gaussian(center, sigma).unwrap();
        prop_assert!((f.fourier_hat(0.0).re - sigma * (2.0 * PI).sqrt()).abs() <= 1e-13 * sigma);
        let centered = Profile::gaussian(0.0, sigma).unwrap();
        prop_assert!((f.fourier_hat(k).norm() - centered.fourier_hat(k).norm()).abs() <= 1e-13 * sigma);
    }

    #[test]
    fn report_passes_iff_within_tolerance(err in 0.0f64..2.0, tol in 0.0f64..2.0) {
        prop_assert_eq!(CheckReport::new("p", err, tol, 0.0).passed, err <= tol);
    }

    #[test]
    fn run_config_round_trips(m in model_params(), nx in 2usize..500, t in 0.01f64..10.0) {
        let config = RunConfig {
            model: m,
            f: Profile::gaussian(0.5, 1.5).unwrap(),
            g: Profile::Zero,
            source: Default::default(),
            grid: fracsolve::cli::GridSpec { x_min: -3.0, x_max: 4.0, nx, ts: vec![t, 2.0 * t] },
            output: Default::default(),
            quadrature: Default::default(),
        };
        let text = serde_json::to_string(&config).unwrap();
        prop_assert_eq!(RunConfig::from_json(&text).unwrap(), config);
    }
}
