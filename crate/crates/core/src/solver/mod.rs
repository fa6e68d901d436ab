//! Closed-form solutions of
//!
//! ```text
//! D^{μ,ν}_t N = Σ_j η_j D^{α_j}_{θ_j} N - ω N + φ(x, t)
//! I^{(1-ν)(2-μ)} N(x, 0+) = f(x),   d/dt I^{(1-ν)(2-μ)} N(x, 0+) = g(x)
//! ```
//!
//! on the real line. In Fourier space every wavenumber evolves on its own:
//! with `B(k) = ω + Σ_j η_j ψ_j(k)` and `e = μ + ν(2-μ)`,
//!
//! ```text
//! N*(k,t) = f*(k) t^{e-2} E_{μ,e-1}(-t^μ B) + g*(k) t^{e-1} E_{μ,e}(-t^μ B)
//!         + ∫_0^t ξ^{μ-1} φ*(k, t-ξ) E_{μ,μ}(-ξ^μ B) dξ
//! ```
//!
//! and the field is the inverse transform `(1/2π) ∫ e^{-ikx} N*(k,t) dk`.

mod field;
mod profile;

use std::collections::BTreeSet;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hilfer_time::{HilferError, TimeFractionalOrder};
use crate::mittag_leffler::{ml_two, ml_value, MlError};
use crate::quadrature::tanh_sinh;
use crate::riesz_feller::{symbol, DiffusionTerm, RieszError};
use crate::special::gamma;

pub use field::{green_function, solve, solve_with, SolutionField, SolveOptions};
pub use profile::{Profile, SourceTerm, TimeProfile};

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("time must be positive, got {0}")]
    TimeNotPositive(f64),
    #[error("assembly {assembly:?} does not apply: {reason}")]
    AssemblyMismatch { assembly: Assembly, reason: String },
    #[error("Mittag-Leffler evaluation: {0}")]
    Ml(#[from] MlError),
    #[error("mode value missed its accuracy target: estimate {estimate:.3e}")]
    ModeAccuracy { value: Complex64, estimate: f64 },
    #[error("field accuracy {estimate:.3e} exceeds the target {tolerance:.3e}")]
    AccuracyNotMet {
        field: Box<SolutionField>,
        estimate: f64,
        tolerance: f64,
    },
}

impl From<HilferError> for SolverError {
    fn from(e: HilferError) -> Self {
        SolverError::InvalidModel(e.to_string())
    }
}

impl From<RieszError> for SolverError {
    fn from(e: RieszError) -> Self {
        SolverError::InvalidModel(e.to_string())
    }
}

/// Parameters `μ, ν, ω` and the diffusion terms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawModel")]
pub struct ModelSpec {
    pub order: TimeFractionalOrder,
    pub omega: f64,
    pub terms: Vec<DiffusionTerm>,
}

#[derive(Deserialize)]
struct RawModel {
    order: TimeFractionalOrder,
    #[serde(default)]
    omega: f64,
    terms: Vec<DiffusionTerm>,
}

impl TryFrom<RawModel> for ModelSpec {
    type Error = SolverError;
    fn try_from(r: RawModel) -> Result<Self, SolverError> {
        ModelSpec::new(r.order, r.omega, r.terms)
    }
}

impl ModelSpec {
    pub fn new(
        order: TimeFractionalOrder,
        omega: f64,
        terms: Vec<DiffusionTerm>,
    ) -> Result<Self, SolverError> {
        if !(omega >= 0.0 && omega.is_finite()) {
            return Err(SolverError::InvalidModel(format!(
                "omega must be finite and >= 0, got {omega}"
            )));
        }
        if terms.is_empty() {
            return Err(SolverError::InvalidModel(
                "at least one diffusion term is required".into(),
            ));
        }
        Ok(ModelSpec {
            order,
            omega,
            terms,
        })
    }

    /// One term `η D^α_θ` with Hilfer orders `(μ, ν)`.
    pub fn single(
        mu: f64,
        nu: f64,
        omega: f64,
        eta: f64,
        alpha: f64,
        theta: f64,
    ) -> Result<Self, SolverError> {
        ModelSpec::new(
            TimeFractionalOrder::new(mu, nu)?,
            omega,
            vec![DiffusionTerm::new(eta, alpha, theta)?],
        )
    }

    pub fn mu(&self) -> f64 {
        self.order.mu
    }

    pub fn nu(&self) -> f64 {
        self.order.nu
    }
}

/// How the mode formula is assembled; all agree where they apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Assembly {
    /// General orders, bracket summed over all terms.
    #[default]
    MultiTerm,
    /// General orders, one term, bracket `ω + ηψ(k)`.
    SingleTerm,
    /// `ν = 1`: `E_{μ,1}` and `t E_{μ,2}`.
    Caputo,
    /// `ν = 0`: `t^{μ-2} E_{μ,μ-1}` and `t^{μ-1} E_{μ,μ}`.
    RiemannLiouville,
    /// All `θ_j = 0`: bracket `ω + Σ η_j |k|^{α_j}`.
    RieszSymmetric,
}

/// Classification of a model by the simplifications that apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    GeneralHilferRieszFeller,
    RieszSymmetric,
    CaputoCase,
    RiemannLiouvilleCase,
    NoReaction,
    MultiTerm,
}

/// Every tag that applies; `GeneralHilferRieszFeller` when none does.
pub fn reduce_case(model: &ModelSpec) -> BTreeSet<CaseTag> {
    let mut tags = BTreeSet::new();
    if model.terms.iter().all(|t| t.theta == 0.0) {
        tags.insert(CaseTag::RieszSymmetric);
    }
    if model.nu() == 1.0 {
        tags.insert(CaseTag::CaputoCase);
    }
    if model.nu() == 0.0 {
        tags.insert(CaseTag::RiemannLiouvilleCase);
    }
    if model.omega == 0.0 {
        tags.insert(CaseTag::NoReaction);
    }
    if model.terms.len() > 1 {
        tags.insert(CaseTag::MultiTerm);
    }
    if tags.is_empty() {
        tags.insert(CaseTag::GeneralHilferRieszFeller);
    }
    tags
}

/// `B(k) = ω + Σ_j η_j ψ_j(k)`; `Re B ≥ 0` on the admissible wedge.
pub fn mode_bracket(model: &ModelSpec, k: f64) -> Complex64 {
    Complex64::new(model.omega, 0.0)
        + model
            .terms
            .iter()
            .map(|t| symbol(t, k) * t.eta)
            .sum::<Complex64>()
}

type MlFn<'a> = &'a dyn Fn(f64, f64, Complex64) -> Result<Complex64, SolverError>;

/// Per-wavenumber data: `f*(k)`, `g*(k)` and the source `p*(k)·q(t)`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ModeData<'a> {
    pub fhat: Complex64,
    pub ghat: Complex64,
    pub source: Option<(Complex64, &'a TimeProfile)>,
}

/// Exponents and Mittag-Leffler indices of one assembly.
#[derive(Debug, Clone)]
pub(crate) struct ModeKernel<'a> {
    model: &'a ModelSpec,
    assembly: Assembly,
    f_power: f64,
    f_beta: f64,
    g_power: f64,
    g_beta: f64,
}

impl<'a> ModeKernel<'a> {
    pub fn new(model: &'a ModelSpec, assembly: Assembly) -> Result<Self, SolverError> {
        let mu = model.mu();
        let mismatch = |reason: &str| {
            Err(SolverError::AssemblyMismatch {
                assembly,
                reason: reason.into(),
            })
        };
        let (f_power, f_beta, g_power, g_beta) = match assembly {
            Assembly::Caputo => {
                if model.nu() != 1.0 {
                    return mismatch("needs nu = 1");
                }
                (0.0, 1.0, 1.0, 2.0)
            }
            Assembly::RiemannLiouville => {
                if model.nu() != 0.0 {
                    return mismatch("needs nu = 0");
                }
                (mu - 2.0, mu - 1.0, mu - 1.0, mu)
            }
            _ => {
                if assembly == Assembly::SingleTerm && model.terms.len() != 1 {
                    return mismatch("needs exactly one diffusion term");
                }
                if assembly == Assembly::RieszSymmetric
                    && model.terms.iter().any(|t| t.theta != 0.0)
                {
                    return mismatch("needs theta = 0 in every term");
                }
                let e = mu + model.nu() * (2.0 - mu);
                (e - 2.0, e - 1.0, e - 1.0, e)
            }
        };
        Ok(ModeKernel {
            model,
            assembly,
            f_power,
            f_beta,
            g_power,
            g_beta,
        })
    }

    pub fn bracket(&self, k: f64) -> Complex64 {
        let omega = Complex64::new(self.model.omega, 0.0);
        match self.assembly {
            Assembly::SingleTerm => {
                let t = &self.model.terms[0];
                omega + symbol(t, k) * t.eta
            }
            Assembly::RieszSymmetric => {
                let s: f64 = self
                    .model
                    .terms
                    .iter()
                    .map(|t| t.eta * k.abs().powf(t.alpha))
                    .sum();
                omega + s
            }
            _ => mode_bracket(self.model, k),
        }
    }

    /// `N*(k, t)` and an absolute error estimate of its quadrature part.
    pub fn evaluate(
        &self,
        data: &ModeData,
        k: f64,
        t: f64,
        ml: MlFn,
    ) -> Result<(Complex64, f64), SolverError> {
        let mu = self.model.mu();
        let b = self.bracket(k);
        let z = -b * t.powf(mu);
        let mut value = Complex64::new(0.0, 0.0);
        let mut error = 0.0;
        if data.fhat != Complex64::new(0.0, 0.0) {
            value += data.fhat * ml(mu, self.f_beta, z)? * t.powf(self.f_power);
        }
        if data.ghat != Complex64::new(0.0, 0.0) {
            value += data.ghat * ml(mu, self.g_beta, z)? * t.powf(self.g_power);
        }
        if let Some((phat, time)) = data.source {
            if phat != Complex64::new(0.0, 0.0) {
                let (s, e) = source_integral(mu, b, time, t, ml)?;
                value += phat * s;
                error += phat.norm() * e;
            }
        }
        Ok((value, error))
    }
}

/// `∫_0^t ξ^{μ-1} q(t-ξ) E_{μ,μ}(-ξ^μ B) dξ` and its error estimate.
///
/// Constant and power-law `q` have closed forms,
/// `∫_0^t ξ^{μ-1} (t-ξ)^p E_{μ,μ}(-Bξ^μ) dξ = Γ(p+1) t^{μ+p} E_{μ,μ+p+1}(-Bt^μ)`.
fn source_integral(
    mu: f64,
    b: Complex64,
    time: &TimeProfile,
    t: f64,
    ml: MlFn,
) -> Result<(Complex64, f64), SolverError> {
    let z = -b * t.powf(mu);
    match time {
        TimeProfile::Constant { c } => Ok((ml(mu, mu + 1.0, z)? * (c * t.powf(mu)), 0.0)),
        TimeProfile::PowerLaw { p } => Ok((
            ml(mu, mu + p + 1.0, z)? * (gamma(p + 1.0) * t.powf(mu + p)),
            0.0,
        )),
        TimeProfile::ExpDecay { rate } => {
            let r = tanh_sinh(
                &|xi: f64, _: f64, dist_b: f64| {
                    ml_value(mu, mu, -b * xi.powf(mu))
                        * (xi.powf(mu - 1.0) * (-rate * dist_b).exp())
                },
                0.0,
                t,
                1e-16 * t.powf(mu),
                1e-11,
            );
            Ok((r.value, r.error))
        }
        TimeProfile::Sampled { ts, .. } => {
            // q is linear between samples: integrate piecewise in ξ = t - τ
            let mut cuts: Vec<f64> = ts
                .iter()
                .map(|&s| t - s)
                .filter(|&c| c > 0.0 && c < t)
                .collect();
            cuts.push(0.0);
            cuts.push(t);
            cuts.sort_by(f64::total_cmp);
            let mut total = Complex64::new(0.0, 0.0);
            let mut err = 0.0;
            for w in cuts.windows(2) {
                let r = tanh_sinh(
                    &|xi: f64, _: f64, _: f64| {
                        ml_value(mu, mu, -b * xi.powf(mu))
                            * (xi.powf(mu - 1.0) * time.value(t - xi))
                    },
                    w[0],
                    w[1],
                    1e-16 * t.powf(mu),
                    1e-11,
                );
                total += r.value;
                err += r.error;
            }
            Ok((total, err))
        }
    }
}

/// Values deep in a cancellation can miss the relative contract while their
/// absolute error is far below anything a mode of order one can notice.
fn checked_ml(alpha: f64, beta: f64, z: Complex64) -> Result<Complex64, SolverError> {
    match ml_two(alpha, beta, z) {
        Ok(v) => Ok(v.value),
        Err(MlError::AccuracyNotMet { result, .. })
            if result.value.norm().is_finite() && result.abs_error_estimate <= 1e-12 =>
        {
            Ok(result.value)
        }
        Err(e) => Err(e.into()),
    }
}

/// `N*(k, t)` for the given transforms of `f`, `g` and the source.
///
/// `source` is `(p*(k), q)` for a separable source `p(x)·q(t)`.
pub fn mode_solution(
    model: &ModelSpec,
    fhat: Complex64,
    ghat: Complex64,
    source: Option<(Complex64, &TimeProfile)>,
    k: f64,
    t: f64,
) -> Result<Complex64, SolverError> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(SolverError::TimeNotPositive(t));
    }
    let kernel = ModeKernel::new(model, Assembly::MultiTerm)?;
    let (value, error) = kernel.evaluate(&ModeData { fhat, ghat, source }, k, t, &checked_ml)?;
    if error > 1e-8 * value.norm().max(1e-300) && error > 1e-14 {
        return Err(SolverError::ModeAccuracy {
            value,
            estimate: error,
        });
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn bracket_values() {
        let m = ModelSpec::single(1.5, 1.0, 0.0, 1.0, 2.0, 0.0).unwrap();
        assert_eq!(mode_bracket(&m, 2.0), c(4.0, 0.0));
        let m = ModelSpec::single(1.5, 1.0, 1.5, 1.0, 2.0, 0.0).unwrap();
        assert_eq!(mode_bracket(&m, 0.0), c(1.5, 0.0));
        let m = ModelSpec::single(1.5, 1.0, 1.0, 2.0, 1.5, 0.4).unwrap();
        let psi = Complex64::from_polar(2f64.powf(1.5), -0.2 * std::f64::consts::PI);
        assert!((mode_bracket(&m, -2.0) - (c(1.0, 0.0) + psi * 2.0)).norm() < 1e-14);
        assert!(mode_bracket(&m, -2.0).re >= 0.0);
    }

    #[test]
    fn conserved_and_wave_modes() {
        let m = ModelSpec::single(1.5, 1.0, 0.0, 1.0, 2.0, 0.0).unwrap();
        assert!(
            (mode_solution(&m, c(1.0, 0.0), c(0.0, 0.0), None, 0.0, 0.8).unwrap() - 1.0).norm()
                < 1e-15
        );
        for nu in [0.0, 0.4, 1.0] {
            let m = ModelSpec::single(2.0, nu, 0.0, 1.0, 2.0, 0.0).unwrap();
            let v = mode_solution(&m, c(1.0, 0.0), c(0.0, 0.0), None, 1.3, 0.9).unwrap();
            assert!((v - (1.3f64 * 0.9).cos()).norm() < 1e-13);
        }
    }

    #[test]
    fn source_closed_forms_match_quadrature() {
        let m = ModelSpec::single(1.6, 0.5, 0.3, 1.0, 1.7, 0.2).unwrap();
        let kernel = ModeKernel::new(&m, Assembly::MultiTerm).unwrap();
        let b = kernel.bracket(0.9);
        let t = 1.4;
        // PowerLaw p = 1 against the piecewise-linear sampled q(t) = t
        let sampled = TimeProfile::Sampled {
            ts: vec![0.0, 10.0],
            values: vec![0.0, 10.0],
        };
        let (a, _) =
            source_integral(1.6, b, &TimeProfile::PowerLaw { p: 1.0 }, t, &checked_ml).unwrap();
        let (q, e) = source_integral(1.6, b, &sampled, t, &checked_ml).unwrap();
        assert!((a - q).norm() < 1e-10 * a.norm(), "{a} {q} {e}");
        // Constant c = 1 against ExpDecay rate 0
        let (a, _) =
            source_integral(1.6, b, &TimeProfile::Constant { c: 1.0 }, t, &checked_ml).unwrap();
        let (q, _) =
            source_integral(1.6, b, &TimeProfile::ExpDecay { rate: 0.0 }, t, &checked_ml).unwrap();
        assert!((a - q).norm() < 1e-10 * a.norm());
    }

    #[test]
    fn assemblies_agree() {
        let m = ModelSpec::single(1.4, 1.0, 0.5, 1.2, 1.6, 0.0).unwrap();
        let data = ModeData {
            fhat: c(0.7, 0.1),
            ghat: c(0.2, -0.3),
            source: None,
        };
        let general = ModeKernel::new(&m, Assembly::MultiTerm).unwrap();
        let single = ModeKernel::new(&m, Assembly::SingleTerm).unwrap();
        let caputo = ModeKernel::new(&m, Assembly::Caputo).unwrap();
        let riesz = ModeKernel::new(&m, Assembly::RieszSymmetric).unwrap();
        let g = general.evaluate(&data, 1.1, 0.6, &checked_ml).unwrap().0;
        assert_eq!(g, single.evaluate(&data, 1.1, 0.6, &checked_ml).unwrap().0);
        assert!((g - caputo.evaluate(&data, 1.1, 0.6, &checked_ml).unwrap().0).norm() < 1e-13);
        assert!((g - riesz.evaluate(&data, 1.1, 0.6, &checked_ml).unwrap().0).norm() < 1e-14);
        assert!(ModeKernel::new(&m, Assembly::RiemannLiouville).is_err());
    }

    #[test]
    fn case_tags() {
        use CaseTag::*;
        let m = ModelSpec::single(1.5, 1.0, 0.0, 1.0, 1.5, 0.0).unwrap();
        assert_eq!(
            reduce_case(&m),
            [RieszSymmetric, CaputoCase, NoReaction]
                .into_iter()
                .collect()
        );
        let mut m = ModelSpec::single(1.5, 0.5, 1.0, 1.0, 1.5, 0.3).unwrap();
        m.terms.push(DiffusionTerm::new(0.5, 0.8, 0.0).unwrap());
        assert_eq!(reduce_case(&m), [MultiTerm].into_iter().collect());
        let m = ModelSpec::single(1.5, 0.0, 2.0, 1.0, 1.5, 0.0).unwrap();
        assert_eq!(
            reduce_case(&m),
            [RieszSymmetric, RiemannLiouvilleCase].into_iter().collect()
        );
        let m = ModelSpec::single(1.5, 0.5, 1.0, 1.0, 1.5, 0.3).unwrap();
        assert_eq!(
            reduce_case(&m),
            [GeneralHilferRieszFeller].into_iter().collect()
        );
    }

    #[test]
    fn model_validation() {
        let ok = r#"{"order":{"mu":1.5,"nu":0.5},"omega":0.2,"terms":[{"eta":1,"alpha":1.5,"theta":0.4}]}"#;
        assert!(serde_json::from_str::<ModelSpec>(ok).is_ok());
        let bad_mu = r#"{"order":{"mu":2.5,"nu":0.5},"omega":0.2,"terms":[{"eta":1,"alpha":1.5}]}"#;
        assert!(serde_json::from_str::<ModelSpec>(bad_mu)
            .unwrap_err()
            .to_string()
            .contains("mu must lie in (1, 2]"));
        let bad_theta = r#"{"order":{"mu":1.5,"nu":0.5},"omega":0,"terms":[{"eta":1,"alpha":1.5,"theta":0.6}]}"#;
        assert!(serde_json::from_str::<ModelSpec>(bad_theta)
            .unwrap_err()
            .to_string()
            .contains("min(alpha, 2 - alpha)"));
        let neg_omega =
            r#"{"order":{"mu":1.5,"nu":0.5},"omega":-1,"terms":[{"eta":1,"alpha":1.5}]}"#;
        assert!(serde_json::from_str::<ModelSpec>(neg_omega).is_err());
        let empty = r#"{"order":{"mu":1.5,"nu":0.5},"omega":0,"terms":[]}"#;
        assert!(serde_json::from_str::<ModelSpec>(empty).is_err());
    }
}
