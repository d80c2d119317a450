use hermite_riesz::kernels::{k_small, laguerre_heat, mehler, special_heat, special_heat_radial, KernelRoute};
use hermite_riesz::operators::{twisted_convolve, TwistedOptions};
use hermite_riesz::quadrature::composite;
use hermite_riesz::Result;
use num_complex::Complex64;

use super::{max_rel, worse, Collector};

const R: [f64; 5] = [0.2, 0.7, 1.2, 1.9, 2.8];
const S: [f64; 5] = [0.3, 0.8, 1.4, 2.0, 2.6];
const T: [f64; 3] = [0.2, 0.5, 1.0];
const SERIES: KernelRoute = KernelRoute::EigenSeries { k_max: None };
const CLOSED: KernelRoute = KernelRoute::ClosedForm;
const ANGLE: f64 = 1.0;

fn grid() -> impl Iterator<Item = (f64, f64, f64)> {
    R.into_iter().flat_map(|r| S.into_iter().flat_map(move |s| T.into_iter().map(move |t| (r, s, t))))
}

fn points(d: usize, r: f64, s: f64) -> (Vec<f64>, Vec<f64>) {
    match d {
        1 => (vec![r], vec![s]),
        _ => {
            let mut x = vec![0.0; d];
            let mut y = vec![0.0; d];
            x[0] = r;
            y[0] = s * ANGLE.cos();
            y[1] = s * ANGLE.sin();
            (x, y)
        }
    }
}

fn routes<F: Fn(f64, f64, f64, KernelRoute) -> Result<f64>>(k: F) -> Result<f64> {
    let mut pairs = Vec::new();
    for (r, s, t) in grid() {
        pairs.push((k(t, r, s, SERIES)?, k(t, r, s, CLOSED)?));
    }
    Ok(max_rel(pairs))
}

pub(super) fn run(c: &mut Collector<'_>) -> Result<()> {
    const DUAL: &str = "closed form equals the truncated eigen-expansion";
    const SEMI: &str = "semigroup law K_t ∘ K_s = K_{t+s}";
    for d in c.dims(&[1, 2]) {
        let res = routes(|t, r, s, route| {
            let (x, y) = points(d, r, s);
            mehler(t, &x, &y, route)
        })?;
        c.identity(format!("mehler_dual_route_d{d}"), DUAL, res, 1e-9);
    }
    for alpha in [0.0, 0.5, 1.5] {
        let res = routes(|t, r, s, route| laguerre_heat(t, r, s, alpha, route))?;
        c.identity(format!("laguerre_dual_route_alpha{alpha}"), DUAL, res, 1e-9);
    }
    let res = routes(|t, r, s, route| {
        let rho = (r * r + s * s - 2.0 * r * s * ANGLE.cos()).sqrt();
        special_heat_radial(t, rho, 1, route)
    })?;
    c.identity("special_heat_dual_route_d1", DUAL, res, 1e-9);
    for delta in [0.0, 1.0, 2.0] {
        let res = routes(|t, r, s, route| k_small(t, r, s, delta, route))?;
        c.identity(format!("k_small_dual_route_delta{delta}"), DUAL, res, 1e-9);
    }

    let steps = [(0.3, 0.5), (0.7, 0.2)];
    let ends = [(0.4, 1.1), (1.5, 0.6)];
    let line = composite(&(0..=48).map(|i| -12.0 + 0.5 * f64::from(i)).collect::<Vec<_>>(), 24)?;
    let half = composite(&(0..=24).map(|i| 0.5 * f64::from(i)).collect::<Vec<_>>(), 24)?;
    let mut res = 0.0f64;
    for (t, s) in steps {
        for (x, y) in ends {
            let lhs = line.integrate1d(|u| mehler(t, &[x], &[u], CLOSED).unwrap_or(f64::NAN) * mehler(s, &[u], &[y], CLOSED).unwrap_or(f64::NAN));
            res = worse(res, max_rel([(lhs, mehler(t + s, &[x], &[y], CLOSED)?)]));
        }
    }
    c.identity("mehler_semigroup_d1", SEMI, res, 1e-8);
    let mut res = 0.0f64;
    for alpha in [0.0, 0.5, 1.5] {
        for (t, s) in steps {
            for (r, v) in ends {
                let lhs = half.integrate1d(|u| {
                    laguerre_heat(t, r, u, alpha, CLOSED).unwrap_or(f64::NAN)
                        * laguerre_heat(s, u, v, alpha, CLOSED).unwrap_or(f64::NAN)
                        * u.powf(2.0 * alpha + 1.0)
                });
                res = worse(res, max_rel([(lhs, laguerre_heat(t + s, r, v, alpha, CLOSED)?)]));
            }
        }
    }
    c.identity("laguerre_semigroup", SEMI, res, 1e-8);
    let mut res = 0.0f64;
    for delta in [0.0, 1.0, 2.0] {
        for (t, s) in steps {
            for (r, v) in ends {
                let lhs = half.integrate1d(|u| {
                    k_small(t, r, u, delta, CLOSED).unwrap_or(f64::NAN) * k_small(s, u, v, delta, CLOSED).unwrap_or(f64::NAN) * u.powf(2.0 * delta + 1.0)
                });
                res = worse(res, max_rel([(lhs, k_small(t + s, r, v, delta, CLOSED)?)]));
            }
        }
    }
    c.identity("k_small_semigroup", SEMI, res, 1e-8);
    // p_t × p_s = p_{t+s} under twisted convolution
    let pts = vec![vec![0.0, 0.0], vec![0.5, -0.3], vec![1.2, 0.8]];
    let mut res = 0.0f64;
    for (t, s) in steps {
        let heat = |tau: f64| move |p: &[f64]| Complex64::new(special_heat(tau, &[Complex64::new(p[0], p[1])], CLOSED).unwrap_or(f64::NAN), 0.0);
        let lhs = twisted_convolve(heat(t), heat(s), 1, &pts, &TwistedOptions::default())?;
        for (p, v) in pts.iter().zip(lhs) {
            let rhs = special_heat(t + s, &[Complex64::new(p[0], p[1])], CLOSED)?;
            res = worse(res, (v - rhs).norm() / rhs);
        }
    }
    c.identity("special_heat_twisted_semigroup_d1", "twisted semigroup law p_t × p_s = p_{t+s}", res, 1e-8);
    Ok(())
}
