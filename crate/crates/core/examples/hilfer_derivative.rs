//! The Hilfer derivative of sampled and closed-form functions, and its
//! Laplace transform rule.

use fracsolve::hilfer_time::{
    hilfer_derivative, hilfer_laplace_check, HilferOptions, TimeFractionalOrder, TimeFunction,
};
use fracsolve::special::gamma;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let order = TimeFractionalOrder::new(1.5, 0.5)?;
    let p = 2.5;
    let f = TimeFunction::from_real_fn(move |t| t.powf(p));
    let opts = HilferOptions {
        t_min: Some(0.0),
        initial_data: None,
    };
    for t in [0.5, 1.0, 2.0] {
        let d = hilfer_derivative(&order, &f, t, &opts)?;
        let exact = gamma(p + 1.0) / gamma(p + 1.0 - order.mu) * t.powf(p - order.mu);
        println!("D t^{p} at t = {t}: {:.10}  exact {exact:.10}", d.re);
    }
    let dt = 1e-3;
    let samples: Vec<f64> = (0..=3000).map(|i| (i as f64 * dt).powf(p)).collect();
    let sampled = TimeFunction::from_real_samples(dt, &samples)?;
    let d = hilfer_derivative(&order, &sampled, 2.0, &opts)?;
    println!("from samples at t = 2: {:.8}", d.re);
    let g = TimeFunction::from_real_fn(|t| (-t).exp() * t * t);
    println!(
        "Laplace rule relative error: {:.2e}",
        hilfer_laplace_check(&order, &g, 1.5, None)?
    );
    Ok(())
}
