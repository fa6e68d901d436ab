//! Fundamental solution for the Caputo, intermediate and Riemann-Liouville
//! types at the same order: the type parameter changes the short-time
//! behaviour, not just a constant.

use fracsolve::solver::{green_function, ModelSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let xs = [0.0, 0.5, 1.0, 2.0, 4.0];
    for nu in [1.0, 0.5, 0.0] {
        let model = ModelSpec::single(1.5, nu, 0.0, 1.0, 2.0, 0.0)?;
        print!("nu = {nu}: ");
        for &x in &xs {
            print!("G({x}) = {:+.6}  ", green_function(&model, x, 1.0)?);
        }
        println!();
    }
    Ok(())
}
