//! The reaction term removes mass at the Mittag-Leffler rate
//! ∫N dx = √(2π) E_{μ,1}(-ω t^μ) for a unit Gaussian and ν = 1.

use std::f64::consts::PI;

use fracsolve::mittag_leffler::ml_one;
use fracsolve::solver::{solve, ModelSpec, Profile, SourceTerm};
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (mu, omega) = (1.6, 0.8);
    let model = ModelSpec::single(mu, 1.0, omega, 1.0, 2.0, 0.0)?;
    let dx = 0.1;
    let xs: Vec<f64> = (-600..=600).map(|i| i as f64 * dx).collect();
    let ts = [0.5, 1.0, 2.0, 4.0];
    let field = solve(
        &model,
        &Profile::gaussian(0.0, 1.0)?,
        &Profile::Zero,
        &SourceTerm::Zero,
        &xs,
        &ts,
    )?;
    for (row, &t) in field.values.iter().zip(&ts) {
        let mass = dx * (row.iter().sum::<f64>() - 0.5 * (row[0] + row[row.len() - 1]));
        let law = (2.0 * PI).sqrt()
            * ml_one(mu, Complex64::new(-omega * t.powf(mu), 0.0))?
                .value
                .re;
        println!("t = {t}: mass {mass:.10}  law {law:.10}");
    }
    Ok(())
}
