//! Quiescent initial state driven by a localized source that switches off
//! exponentially, compared with a steady source.

use fracsolve::solver::{solve, ModelSpec, Profile, SourceTerm, TimeProfile};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let model = ModelSpec::single(1.5, 0.5, 0.2, 1.0, 1.8, 0.0)?;
    let space = Profile::gaussian(0.0, 1.0)?;
    let ts = [0.5, 1.0, 2.0, 4.0];
    for (name, time) in [
        ("steady", TimeProfile::Constant { c: 1.0 }),
        ("decaying", TimeProfile::ExpDecay { rate: 1.0 }),
    ] {
        let source = SourceTerm::Separable {
            space: space.clone(),
            time,
        };
        let field = solve(
            &model,
            &Profile::Zero,
            &Profile::Zero,
            &source,
            &[0.0, 2.0],
            &ts,
        )?;
        for (row, t) in field.values.iter().zip(ts) {
            println!(
                "{name:>8} t = {t}: N(0) = {:.6}  N(2) = {:.6}",
                row[0], row[1]
            );
        }
    }
    Ok(())
}
