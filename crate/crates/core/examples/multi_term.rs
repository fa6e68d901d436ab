//! Two space-fractional terms: a Brownian part and a heavy-tailed part.
//! The tail of the field follows the smaller order.

use fracsolve::hilfer_time::TimeFractionalOrder;
use fracsolve::riesz_feller::DiffusionTerm;
use fracsolve::solver::{solve, ModelSpec, Profile, SourceTerm};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let order = TimeFractionalOrder::new(1.8, 1.0)?;
    let both = ModelSpec::new(
        order,
        0.0,
        vec![
            DiffusionTerm::riesz(1.0, 2.0)?,
            DiffusionTerm::riesz(0.2, 1.2)?,
        ],
    )?;
    let brownian = ModelSpec::new(order, 0.0, vec![DiffusionTerm::riesz(1.0, 2.0)?])?;
    let f = Profile::gaussian(0.0, 0.5)?;
    let xs = [0.0, 2.0, 5.0, 10.0, 20.0];
    let a = solve(&both, &f, &Profile::Zero, &SourceTerm::Zero, &xs, &[1.0])?;
    let b = solve(
        &brownian,
        &f,
        &Profile::Zero,
        &SourceTerm::Zero,
        &xs,
        &[1.0],
    )?;
    for (i, x) in xs.iter().enumerate() {
        println!(
            "x = {x:>4}: two-term {:.3e}  brownian only {:.3e}",
            a.values[0][i], b.values[0][i]
        );
    }
    Ok(())
}
