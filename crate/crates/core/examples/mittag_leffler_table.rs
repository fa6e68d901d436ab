//! E_{α,β}(z) along the negative real axis for several orders, with the
//! regime that produced each value.

use fracsolve::mittag_leffler::ml_two;
use num_complex::Complex64;

fn main() {
    println!(
        "{:>6} {:>6} {:>8} {:>24} {:>10}  regime",
        "alpha", "beta", "z", "E", "abs_err"
    );
    for &(alpha, beta) in &[(0.5, 1.0), (1.0, 1.0), (1.5, 1.0), (1.5, 1.5), (2.0, 1.0)] {
        for &x in &[0.5, 2.0, 8.0, 30.0, 200.0] {
            let z = Complex64::new(-x, 0.0);
            match ml_two(alpha, beta, z) {
                Ok(v) => println!(
                    "{alpha:>6} {beta:>6} {:>8} {:>24.16e} {:>10.2e}  {:?}",
                    -x, v.value.re, v.abs_error_estimate, v.regime
                ),
                Err(e) => println!("{alpha:>6} {beta:>6} {:>8} {e}", -x),
            }
        }
    }
}
