use std::f64::consts::PI;

use approx::assert_relative_eq;
use hermite_riesz::kernels::{laguerre_heat, mehler, KernelRoute};
use hermite_riesz::mixed_norm::{hormander_integral, mu_alpha, HormanderOptions, HormanderSide, WeightSpec};
use hermite_riesz::quadrature::{composite, gauss_hermite, gauss_laguerre};
use hermite_riesz::specfun::hermite_fns;

#[test]
fn gauss_rules_reproduce_classical_integrals() {
    let gh = gauss_hermite(30).unwrap();
    assert_relative_eq!(gh.integrate1d(f64::cos), PI.sqrt() * (-0.25f64).exp(), max_relative = 1e-13);
    let gl = gauss_laguerre(20, 0.5).unwrap();
    assert_relative_eq!(gl.integrate1d(|x| x * x), 15.0 * PI.sqrt() / 8.0, max_relative = 1e-13);
}

#[test]
fn hermite_functions_are_orthonormal() {
    let rule = gauss_hermite(40).unwrap();
    for m in 0..=8 {
        for n in 0..=8 {
            let v = rule.integrate1d(|x| {
                let h = hermite_fns(8, x);
                h[m] * h[n] * (x * x).exp()
            });
            assert!((v - if m == n { 1.0 } else { 0.0 }).abs() < 1e-12, "({m}, {n}): {v}");
        }
    }
}

#[test]
fn mehler_matches_textbook_form_and_acts_on_ground_state() {
    let t: f64 = 0.35;
    let (x, y): (f64, f64) = (0.7, -1.2);
    let sh = (2.0 * t).sinh();
    let expect = (2.0 * PI * sh).powf(-0.5) * (-0.5 * (x * x + y * y) / (2.0 * t).tanh() + x * y / sh).exp();
    assert_relative_eq!(mehler(t, &[x], &[y], KernelRoute::ClosedForm).unwrap(), expect, max_relative = 1e-13);

    let breaks: Vec<f64> = (-20..=20).map(|k| 0.5 * k as f64).collect();
    let rule = composite(&breaks, 12).unwrap();
    let ground = |u: f64| PI.powf(-0.25) * (-0.5 * u * u).exp();
    for x in [0.0, 0.8, -1.7] {
        let v = rule.integrate1d(|y| mehler(t, &[x], &[y], KernelRoute::ClosedForm).unwrap() * ground(y));
        assert_relative_eq!(v, (-t).exp() * ground(x), max_relative = 1e-11);
    }
}

#[test]
fn laguerre_heat_preserves_its_ground_state() {
    let alpha: f64 = 1.5;
    let t = 0.4;
    let e = 2.0 * alpha + 2.0;
    let breaks: Vec<f64> = (0..=24).map(|k| 0.5 * k as f64).collect();
    let rule = composite(&breaks, 12).unwrap();
    let ground = |r: f64| (-0.5 * r * r).exp();
    for r in [0.0, 0.6, 2.1] {
        let v = rule.integrate1d(|s| laguerre_heat(t, r, s, alpha, KernelRoute::ClosedForm).unwrap() * ground(s) * s.powf(e - 1.0));
        assert_relative_eq!(v, (-e * t).exp() * ground(r), max_relative = 1e-11);
    }
}

#[test]
fn weight_basics() {
    assert_relative_eq!(mu_alpha(1.0, 2.0, 0.5).unwrap(), 7.0 / 3.0, max_relative = 1e-15);
    assert!(mu_alpha(2.0, 1.0, 0.5).is_err());
    let w = WeightSpec::power(0.5, 0.5, 3.0).unwrap();
    assert_relative_eq!(w.conjugate_exponent(), 1.5);
    assert_relative_eq!(w.eval(4.0), 2.0, max_relative = 1e-15);
}

#[test]
fn hormander_integral_is_stable_under_longer_truncation() {
    let side = HormanderSide::Column;
    let auto = hormander_integral(3, 0, 1.0, 1.1, side, &HormanderOptions::default()).unwrap();
    let longer = HormanderOptions { truncation: Some(2.0 * auto.truncation) };
    let wide = hormander_integral(3, 0, 1.0, 1.1, side, &longer).unwrap();
    assert!(auto.value > 0.0);
    assert_relative_eq!(auto.value, wide.value, max_relative = 1e-8);
}
