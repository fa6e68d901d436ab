//! Peak height N(0, t) for a Gaussian pulse as the time order decreases
//! toward 1: smaller μ flattens the pulse more slowly at late times.

use fracsolve::solver::{solve, ModelSpec, Profile, SourceTerm};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = Profile::gaussian(0.0, 0.5)?;
    let ts = [0.5, 1.0, 2.0, 4.0, 8.0];
    println!(
        "{:>5} {}",
        "mu",
        ts.map(|t| format!("{:>10}", format!("t={t}"))).join("")
    );
    for mu in [1.1, 1.4, 1.7, 2.0] {
        let model = ModelSpec::single(mu, 1.0, 0.0, 1.0, 2.0, 0.0)?;
        let field = solve(&model, &f, &Profile::Zero, &SourceTerm::Zero, &[0.0], &ts)?;
        let row: String = field
            .values
            .iter()
            .map(|v| format!("{:>10.5}", v[0]))
            .collect();
        println!("{mu:>5} {row}");
    }
    Ok(())
}
