//! Initial data and source shapes with their Fourier transforms.
//!
//! Convention: `f*(k) = ∫ e^{ikx} f(x) dx`, so `Delta(c)` has `e^{ikc}`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::SolverError;

/// Transforms below this fraction of their peak are treated as zero.
const NEGLIGIBLE: f64 = 1e-20;

/// A spatial profile `f(x)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", try_from = "RawProfile")]
pub enum Profile {
    Zero,
    Delta {
        center: f64,
    },
    /// `exp(-(x-c)²/(2σ²))`, peak value 1
    Gaussian {
        center: f64,
        sigma: f64,
    },
    /// indicator of `[a, b]`
    Boxcar {
        a: f64,
        b: f64,
    },
    /// `values[i]` at `x0 + i·dx`, linear between samples, zero outside
    Sampled {
        x0: f64,
        dx: f64,
        values: Vec<f64>,
    },
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum RawProfile {
    Zero,
    Delta { center: f64 },
    Gaussian { center: f64, sigma: f64 },
    Boxcar { a: f64, b: f64 },
    Sampled { x0: f64, dx: f64, values: Vec<f64> },
}

impl TryFrom<RawProfile> for Profile {
    type Error = SolverError;
    fn try_from(r: RawProfile) -> Result<Self, SolverError> {
        let p = match r {
            RawProfile::Zero => Profile::Zero,
            RawProfile::Delta { center } => Profile::Delta { center },
            RawProfile::Gaussian { center, sigma } => Profile::Gaussian { center, sigma },
            RawProfile::Boxcar { a, b } => Profile::Boxcar { a, b },
            RawProfile::Sampled { x0, dx, values } => Profile::Sampled { x0, dx, values },
        };
        p.validate()?;
        Ok(p)
    }
}

fn sinc(u: f64) -> f64 {
    if u.abs() < 1e-4 {
        1.0 - u * u / 6.0
    } else {
        u.sin() / u
    }
}

impl Profile {
    pub fn gaussian(center: f64, sigma: f64) -> Result<Self, SolverError> {
        let p = Profile::Gaussian { center, sigma };
        p.validate()?;
        Ok(p)
    }

    pub fn boxcar(a: f64, b: f64) -> Result<Self, SolverError> {
        let p = Profile::Boxcar { a, b };
        p.validate()?;
        Ok(p)
    }

    pub fn sampled(x0: f64, dx: f64, values: Vec<f64>) -> Result<Self, SolverError> {
        let p = Profile::Sampled { x0, dx, values };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), SolverError> {
        let bad = |m: String| Err(SolverError::InvalidProfile(m));
        match self {
            Profile::Zero => Ok(()),
            Profile::Delta { center } if !center.is_finite() => bad(format!("delta center must be finite, got {center}")),
            Profile::Gaussian { center, sigma } if !center.is_finite() || !(*sigma > 0.0 && sigma.is_finite()) => {
                bad(format!("gaussian needs a finite center and sigma > 0, got center {center}, sigma {sigma}"))
            }
            Profile::Boxcar { a, b } if !(a < b) || !a.is_finite() || !b.is_finite() => {
                bad(format!("boxcar needs finite a < b, got a = {a}, b = {b}"))
            }
            Profile::Sampled { x0, dx, values } => {
                if !x0.is_finite() || !(*dx > 0.0 && dx.is_finite()) || values.len() < 2 {
                    return bad(format!("sampled profile needs finite x0, dx > 0 and two samples, got x0 {x0}, dx {dx}"));
                }
                if let Some(i) = values.iter().position(|v| !v.is_finite()) {
                    return bad(format!("sampled profile value {i} is not finite"));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Profile::Zero => true,
            Profile::Sampled { values, .. } => values.iter().all(|&v| v == 0.0),
            _ => false,
        }
    }

    /// `f(x)`; a delta has no pointwise value and returns 0 off its center.
    pub fn value(&self, x: f64) -> f64 {
        match self {
            Profile::Zero => 0.0,
            Profile::Delta { center } => {
                if x == *center {
                    f64::INFINITY
                } else {
                    0.0
                }
            }
            Profile::Gaussian { center, sigma } => (-0.5 * ((x - center) / sigma).powi(2)).exp(),
            Profile::Boxcar { a, b } => {
                if x >= *a && x <= *b {
                    1.0
                } else {
                    0.0
                }
            }
            Profile::Sampled { x0, dx, values } => {
                let s = (x - x0) / dx;
                if s < 0.0 || s > (values.len() - 1) as f64 {
                    return 0.0;
                }
                let i = (s.floor() as usize).min(values.len() - 2);
                let w = s - i as f64;
                values[i] * (1.0 - w) + values[i + 1] * w
            }
        }
    }

    /// `f*(k) = ∫ e^{ikx} f(x) dx`.
    pub fn fourier_hat(&self, k: f64) -> Complex64 {
        match self {
            Profile::Zero => Complex64::new(0.0, 0.0),
            Profile::Delta { center } => Complex64::from_polar(1.0, k * center),
            Profile::Gaussian { center, sigma } => {
                let amp = sigma
                    * (2.0 * std::f64::consts::PI).sqrt()
                    * (-0.5 * (sigma * k).powi(2)).exp();
                Complex64::from_polar(amp, k * center)
            }
            Profile::Boxcar { a, b } => {
                let half = 0.5 * (b - a);
                Complex64::from_polar((b - a) * sinc(k * half), k * 0.5 * (a + b))
            }
            Profile::Sampled { x0, dx, values } => {
                // hat functions: each sample contributes dx·sinc²(k dx/2)·e^{ik x_i}
                let mut acc = Complex64::new(0.0, 0.0);
                for (i, &v) in values.iter().enumerate() {
                    if v != 0.0 {
                        acc += Complex64::from_polar(v, k * (x0 + i as f64 * dx));
                    }
                }
                acc * (dx * sinc(0.5 * k * dx).powi(2))
            }
        }
    }

    /// Position the transform's phase oscillates around.
    pub fn center(&self) -> f64 {
        match self {
            Profile::Zero => 0.0,
            Profile::Delta { center } | Profile::Gaussian { center, .. } => *center,
            Profile::Boxcar { a, b } => 0.5 * (a + b),
            Profile::Sampled { x0, dx, values } => {
                let w: f64 = values.iter().map(|v| v.abs()).sum();
                if w == 0.0 {
                    return x0 + 0.5 * dx * (values.len() - 1) as f64;
                }
                values
                    .iter()
                    .enumerate()
                    .map(|(i, v)| v.abs() * (x0 + i as f64 * dx))
                    .sum::<f64>()
                    / w
            }
        }
    }

    /// Wavenumber beyond which the transform is negligible, or `None` when it
    /// decays only algebraically.
    pub fn k_extent(&self) -> Option<f64> {
        match self {
            Profile::Zero => Some(0.0),
            Profile::Gaussian { sigma, .. } => Some((-2.0 * NEGLIGIBLE.ln()).sqrt() / sigma),
            _ if self.is_zero() => Some(0.0),
            _ => None,
        }
    }

    /// Length over which the profile varies, for algebraic transforms.
    pub fn length_scale(&self) -> f64 {
        match self {
            Profile::Boxcar { a, b } => b - a,
            Profile::Sampled { dx, .. } => *dx,
            Profile::Gaussian { sigma, .. } => *sigma,
            _ => f64::INFINITY,
        }
    }

    /// Default absolute accuracy target of a field built from this profile.
    pub fn default_tolerance(&self) -> f64 {
        match self {
            Profile::Zero | Profile::Gaussian { .. } => 1e-10,
            Profile::Boxcar { .. } | Profile::Sampled { .. } => 1e-7,
            Profile::Delta { .. } => 1e-5,
        }
    }
}

/// Time factor of a separable source `φ(x,t) = p(x)·q(t)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", try_from = "RawTimeProfile")]
pub enum TimeProfile {
    Constant {
        c: f64,
    },
    /// `e^{-rate·t}`
    ExpDecay {
        rate: f64,
    },
    /// `t^p`, `p > -1`
    PowerLaw {
        p: f64,
    },
    /// linear between `(ts[i], values[i])`, held constant outside
    Sampled {
        ts: Vec<f64>,
        values: Vec<f64>,
    },
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum RawTimeProfile {
    Constant { c: f64 },
    ExpDecay { rate: f64 },
    PowerLaw { p: f64 },
    Sampled { ts: Vec<f64>, values: Vec<f64> },
}

impl TryFrom<RawTimeProfile> for TimeProfile {
    type Error = SolverError;
    fn try_from(r: RawTimeProfile) -> Result<Self, SolverError> {
        let p = match r {
            RawTimeProfile::Constant { c } => TimeProfile::Constant { c },
            RawTimeProfile::ExpDecay { rate } => TimeProfile::ExpDecay { rate },
            RawTimeProfile::PowerLaw { p } => TimeProfile::PowerLaw { p },
            RawTimeProfile::Sampled { ts, values } => TimeProfile::Sampled { ts, values },
        };
        p.validate()?;
        Ok(p)
    }
}

impl TimeProfile {
    pub fn validate(&self) -> Result<(), SolverError> {
        let bad = |m: String| Err(SolverError::InvalidProfile(m));
        match self {
            TimeProfile::Constant { c } if !c.is_finite() => {
                bad(format!("constant source must be finite, got {c}"))
            }
            TimeProfile::ExpDecay { rate } if !rate.is_finite() => {
                bad(format!("decay rate must be finite, got {rate}"))
            }
            TimeProfile::PowerLaw { p } if !(*p > -1.0 && p.is_finite()) => {
                bad(format!("power-law exponent must exceed -1, got {p}"))
            }
            TimeProfile::Sampled { ts, values } => {
                if ts.len() != values.len() || ts.is_empty() {
                    return bad(format!(
                        "sampled source needs matching nonempty ts and values, got {} and {}",
                        ts.len(),
                        values.len()
                    ));
                }
                if ts.iter().chain(values).any(|v| !v.is_finite())
                    || ts.windows(2).any(|w| !(w[0] < w[1]))
                {
                    return bad(
                        "sampled source needs finite values and strictly increasing ts".into(),
                    );
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn value(&self, t: f64) -> f64 {
        match self {
            TimeProfile::Constant { c } => *c,
            TimeProfile::ExpDecay { rate } => (-rate * t).exp(),
            TimeProfile::PowerLaw { p } => t.powf(*p),
            TimeProfile::Sampled { ts, values } => {
                let n = ts.len();
                if t <= ts[0] {
                    return values[0];
                }
                if t >= ts[n - 1] {
                    return values[n - 1];
                }
                let j = ts.partition_point(|&s| s <= t) - 1;
                let w = (t - ts[j]) / (ts[j + 1] - ts[j]);
                values[j] * (1.0 - w) + values[j + 1] * w
            }
        }
    }
}

/// Source `φ(x, t)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SourceTerm {
    #[default]
    Zero,
    Separable {
        space: Profile,
        time: TimeProfile,
    },
}

impl SourceTerm {
    pub fn is_zero(&self) -> bool {
        match self {
            SourceTerm::Zero => true,
            SourceTerm::Separable { space, time } => {
                space.is_zero() || matches!(time, TimeProfile::Constant { c } if *c == 0.0)
            }
        }
    }

    /// `φ*(k, t)`.
    pub fn fourier_hat(&self, k: f64, t: f64) -> Complex64 {
        match self {
            SourceTerm::Zero => Complex64::new(0.0, 0.0),
            SourceTerm::Separable { space, time } => space.fourier_hat(k) * time.value(t),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::adaptive_gk21;

    fn numeric_transform(p: &Profile, k: f64, a: f64, b: f64) -> Complex64 {
        adaptive_gk21(
            &|x: f64| Complex64::from_polar(p.value(x), k * x),
            a,
            b,
            1e-14,
            1e-13,
            4000,
        )
        .value
    }

    #[test]
    fn transforms_match_quadrature() {
        let profiles = [
            Profile::gaussian(0.3, 0.7).unwrap(),
            Profile::boxcar(-1.0, 0.5).unwrap(),
            Profile::sampled(-1.0, 0.25, vec![0.0, 1.0, 3.0, 2.0, -1.0, 0.5, 0.0]).unwrap(),
        ];
        for p in &profiles {
            for &k in &[0.0, 0.4, -1.3, 5.0] {
                let want = match p {
                    // piecewise linear: integrate sample by sample to respect the kinks
                    Profile::Sampled { .. } => (0..6)
                        .map(|i| {
                            numeric_transform(p, k, -1.0 + 0.25 * i as f64, -0.75 + 0.25 * i as f64)
                        })
                        .sum(),
                    Profile::Boxcar { a, b } => numeric_transform(p, k, *a, *b),
                    _ => numeric_transform(p, k, -12.0, 12.0),
                };
                let got = p.fourier_hat(k);
                assert!((got - want).norm() < 1e-11, "{p:?} k={k}: {got} vs {want}");
            }
        }
        assert_eq!(
            Profile::Delta { center: 0.0 }.fourier_hat(3.0),
            Complex64::new(1.0, 0.0)
        );
    }

    #[test]
    fn serde_validation() {
        let ok: Profile =
            serde_json::from_str(r#"{"kind":"gaussian","center":0,"sigma":1}"#).unwrap();
        assert_eq!(
            ok,
            Profile::Gaussian {
                center: 0.0,
                sigma: 1.0
            }
        );
        assert!(
            serde_json::from_str::<Profile>(r#"{"kind":"gaussian","center":0,"sigma":-1}"#)
                .is_err()
        );
        assert!(serde_json::from_str::<Profile>(r#"{"kind":"boxcar","a":1,"b":0}"#).is_err());
        assert!(serde_json::from_str::<TimeProfile>(r#"{"kind":"power_law","p":-1.5}"#).is_err());
        let s: SourceTerm = serde_json::from_str(
            r#"{"kind":"separable","space":{"kind":"delta","center":1},"time":{"kind":"exp_decay","rate":2}}"#,
        )
        .unwrap();
        assert!(!s.is_zero());
    }

    #[test]
    fn sampled_time_profile_interpolates() {
        let q = TimeProfile::Sampled {
            ts: vec![0.0, 1.0, 3.0],
            values: vec![0.0, 2.0, 4.0],
        };
        assert_eq!(q.value(0.5), 1.0);
        assert_eq!(q.value(2.0), 3.0);
        assert_eq!(q.value(5.0), 4.0);
    }
}
