//! The Riesz-Feller operator applied on a grid, against its Fourier symbol.

use fracsolve::oracle::riesz_gaussian_reference;
use fracsolve::riesz_feller::{apply_xdomain, riesz_via_weyl, DiffusionTerm, GridFunction};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let grid = GridFunction::sample(-10.0, 10.0, 401, |x| (-x * x / 2.0).exp())?;
    for (alpha, theta) in [(1.5, 0.0), (1.5, 0.4), (0.8, 0.2)] {
        let term = DiffusionTerm::new(1.0, alpha, theta)?;
        let d = apply_xdomain(&grid, &term)?;
        let i = 220; // x = 1
        println!(
            "alpha={alpha} theta={theta}: grid {:+.8}  spectral {:+.8}",
            d.values[i],
            riesz_gaussian_reference(&term, 1.0, grid.x(i))
        );
    }
    let w = riesz_via_weyl(&grid, 1.7)?;
    println!("alpha=1.7 via Weyl integrals at x=0: {:+.6}", w.values[200]);
    Ok(())
}
