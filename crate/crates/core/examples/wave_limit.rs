//! With μ = 2 and α = 2 the equation is the wave equation; the field splits
//! into two half-height Gaussians moving at unit speed.

use fracsolve::solver::{solve, ModelSpec, Profile, SourceTerm};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let model = ModelSpec::single(2.0, 1.0, 0.0, 1.0, 2.0, 0.0)?;
    let f = Profile::gaussian(0.0, 1.0)?;
    let xs: Vec<f64> = (-40..=40).map(|i| i as f64 * 0.25).collect();
    let ts = [1.0, 3.0];
    let field = solve(&model, &f, &Profile::Zero, &SourceTerm::Zero, &xs, &ts)?;
    for (ti, &t) in ts.iter().enumerate() {
        let worst = xs
            .iter()
            .enumerate()
            .map(|(xi, &x)| (field.values[ti][xi] - 0.5 * (f.value(x - t) + f.value(x + t))).abs())
            .fold(0.0, f64::max);
        println!("t = {t}: max deviation from d'Alembert {worst:.2e}");
    }
    Ok(())
}
