//! The Green function at the origin against the Mellin-transform closed form.

use fracsolve::oracle::green_at_origin;
use fracsolve::solver::{green_function, ModelSpec};

#[test]
fn origin_value_for_three_types() {
    for (nu, t) in [(1.0, 1.0), (0.5, 0.7), (0.0, 1.3)] {
        let m = ModelSpec::single(1.5, nu, 0.0, 1.0, 2.0, 0.0).unwrap();
        let got = green_function(&m, 0.0, t).unwrap();
        let want = green_at_origin(&m, t).unwrap();
        assert!((got - want).abs() < 1e-7, "nu={nu}: {got} vs {want}");
    }
}

#[test]
fn origin_value_for_fractional_space_order() {
    let m = ModelSpec::single(1.7, 0.8, 0.0, 0.6, 1.6, 0.0).unwrap();
    let got = green_function(&m, 0.0, 1.0).unwrap();
    let want = green_at_origin(&m, 1.0).unwrap();
    assert!(
        (got - want).abs() < 1e-6 * want.abs().max(1.0),
        "{got} vs {want}"
    );
}

#[test]
fn even_and_decaying() {
    let m = ModelSpec::single(1.4, 1.0, 0.2, 1.0, 1.5, 0.0).unwrap();
    let a = green_function(&m, 1.3, 0.8).unwrap();
    let b = green_function(&m, -1.3, 0.8).unwrap();
    assert!((a - b).abs() < 1e-8);
    assert!(green_function(&m, 30.0, 0.8).unwrap().abs() < a.abs());
}
