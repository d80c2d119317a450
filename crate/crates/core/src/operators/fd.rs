//! Finite-difference versions of the generating operators, used to check
//! eigen-relations on synthesized modes.

use num_complex::Complex64;

use super::band::{from_complex, to_complex};

/// `(−Δ + |x|²) f(x)` by extrapolated central differences.
pub fn fd_hermite<F: Fn(&[f64]) -> Complex64>(f: F, x: &[f64], step: f64) -> Complex64 {
    richardson(|h| hermite_once(&f, x, h), step)
}

fn hermite_once<F: Fn(&[f64]) -> Complex64>(f: F, x: &[f64], step: f64) -> Complex64 {
    let center = f(x);
    let mut lap = Complex64::new(0.0, 0.0);
    let mut p = x.to_vec();
    for k in 0..x.len() {
        p[k] = x[k] + step;
        let a = f(&p);
        p[k] = x[k] - step;
        let b = f(&p);
        p[k] = x[k];
        lap += (a + b - 2.0 * center) / (step * step);
    }
    -lap + center * x.iter().map(|v| v * v).sum::<f64>()
}

/// `(−∂_r² − (2α+1)/r ∂_r + r²) g(r)` by central differences.
pub fn fd_laguerre<G: Fn(f64) -> Complex64>(g: G, alpha: f64, r: f64, step: f64) -> Complex64 {
    richardson(|h| laguerre_once(&g, alpha, r, h), step)
}

fn laguerre_once<G: Fn(f64) -> Complex64>(g: G, alpha: f64, r: f64, step: f64) -> Complex64 {
    let (a, c, b) = (g(r + step), g(r), g(r - step));
    let d2 = (a + b - 2.0 * c) / (step * step);
    let d1 = (a - b) / (2.0 * step);
    -d2 - d1 * ((2.0 * alpha + 1.0) / r) + c * (r * r)
}

/// `(−Δ + ¼|z|² − iN) f(z)` with `N f = d/dθ f(e^{iθ} z)|_{θ=0}`, all by
/// central differences; points in `(x, y)` real coordinates.
pub fn fd_special<F: Fn(&[f64]) -> Complex64>(f: F, p: &[f64], step: f64) -> Complex64 {
    richardson(|h| special_once(&f, p, h), step)
}

fn special_once<F: Fn(&[f64]) -> Complex64>(f: F, p: &[f64], step: f64) -> Complex64 {
    let base = hermite_once(&f, p, step) - f(p) * (0.75 * p.iter().map(|v| v * v).sum::<f64>());
    let z = to_complex(p);
    let turn = |theta: f64| {
        let e = Complex64::from_polar(1.0, theta);
        let w: Vec<Complex64> = z.iter().map(|c| c * e).collect();
        f(&from_complex(&w))
    };
    let n = (turn(step) - turn(-step)) / (2.0 * step);
    base - Complex64::new(0.0, 1.0) * n
}

/// Second-order differences at `h` and `h/2` combined to fourth order.
fn richardson<F: Fn(f64) -> Complex64>(f: F, h: f64) -> Complex64 {
    (f(0.5 * h) * 4.0 - f(h)) / 3.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::band::{BandLimitedFunction, Basis, ModeLabel};
    use crate::specfun::MultiIndex;

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm().max(1e-3)
    }

    #[test]
    fn hermite_eigenvalues() {
        for d in 1..=3usize {
            let b = Basis::Hermite { d };
            for mu in MultiIndex::all_up_to(d, 4) {
                let label = ModeLabel::Hermite { mu: mu.clone() };
                let f = BandLimitedFunction::mode(b, label.clone()).unwrap();
                let x: Vec<f64> = [0.37, -0.81, 1.13][..d].to_vec();
                let v = fd_hermite(|p| f.eval(p).unwrap(), &x, 1e-3);
                let lambda = b.eigenvalue(&label);
                assert!(rel(v, f.eval(&x).unwrap() * lambda) < 1e-6, "{mu:?}");
            }
        }
    }

    #[test]
    fn laguerre_eigenvalues() {
        for alpha in [0.0, 0.5, 1.5] {
            let b = Basis::Laguerre { alpha };
            for k in 0..=4 {
                let label = ModeLabel::Laguerre { k };
                let f = BandLimitedFunction::mode(b, label.clone()).unwrap();
                for r in [0.45, 1.3] {
                    let v = fd_laguerre(|s| f.eval(&[s]).unwrap(), alpha, r, 1e-3);
                    assert!(
                        rel(v, f.eval(&[r]).unwrap() * b.eigenvalue(&label)) < 1e-6,
                        "{alpha} {k} {r} {}",
                        rel(v, f.eval(&[r]).unwrap() * b.eigenvalue(&label))
                    );
                }
            }
        }
    }

    #[test]
    fn special_eigenvalues() {
        let b = Basis::SpecialHermite { d: 1 };
        for label in b.modes(4).unwrap() {
            let f = BandLimitedFunction::mode(b, label.clone()).unwrap();
            for p in [[0.6, -0.4], [1.1, 0.9]] {
                let v = fd_special(|q| f.eval(q).unwrap(), &p, 1e-3);
                assert!(rel(v, f.eval(&p).unwrap() * b.eigenvalue(&label)) < 1e-6, "{label:?} {}", rel(v, f.eval(&p).unwrap() * b.eigenvalue(&label)));
            }
        }
    }
}
