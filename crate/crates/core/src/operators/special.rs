//! Twisted convolution and the special Hermite Riesz transforms on ℂ^d.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::band::{to_complex, BandLimitedFunction, Basis, ModeLabel, OperatorRoute};
use super::heat::half_inverse;
use super::singular::PolarPlan;
use crate::error::{invalid, Error, Result};
use crate::kernels::special_riesz_radial;
use crate::specfun::functions::phi_norm;
use crate::specfun::{bigraded_basis, laguerre_poly, phi_small};

/// Truncation and resolution of the twisted-convolution quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwistedOptions {
    /// Integration radius in `w`; default `|z| + 18`.
    pub radius: Option<f64>,
    /// Sphere rule level; default 32 for d = 1 and 12 for d = 2.
    pub level: Option<usize>,
    /// Bound on the Gaussian envelope `e^{−(R−|z|)²/8}` at the truncation radius.
    pub tail_tol: f64,
}

impl Default for TwistedOptions {
    fn default() -> Self {
        Self { radius: None, level: None, tail_tol: 1e-12 }
    }
}

fn check_dim(d: usize) -> Result<()> {
    if !(1..=2).contains(&d) {
        return Err(Error::UnsupportedDimension { d, supported: "1..=2" });
    }
    Ok(())
}

/// `Im(z · w̄)` for real-coordinate points.
fn symplectic(z: &[f64], w: &[f64]) -> f64 {
    let d = z.len() / 2;
    (0..d).map(|j| z[d + j] * w[j] - z[j] * w[d + j]).sum()
}

/// `f × g(z) = ∫ f(z−w) g(w) e^{(i/2) Im(z·w̄)} dw` at each point, for
/// Gaussian-enveloped `f` and `g` given in real coordinates.
pub fn twisted_convolve<F, G>(f: F, g: G, d: usize, points: &[Vec<f64>], opts: &TwistedOptions) -> Result<Vec<Complex64>>
where
    F: Fn(&[f64]) -> Complex64,
    G: Fn(&[f64]) -> Complex64,
{
    check_dim(d)?;
    let level = opts.level.unwrap_or(if d == 1 { 32 } else { 12 });
    points
        .iter()
        .map(|z| {
            if z.len() != 2 * d {
                return invalid("point dimension does not match ℂ^d");
            }
            let zn = z.iter().map(|v| v * v).sum::<f64>().sqrt();
            let radius = opts.radius.unwrap_or(zn + 18.0);
            let margin = (radius - zn).max(0.0);
            if (-margin * margin / 8.0).exp() > opts.tail_tol {
                return Err(Error::Resolution(format!("radius {radius} leaves a Gaussian tail above {}", opts.tail_tol)));
            }
            let plan = PolarPlan::regular(2 * d, radius, 1.0, level, true)?;
            let mut shifted = vec![0.0; 2 * d];
            plan.integrate(|_, w| {
                for k in 0..2 * d {
                    shifted[k] = z[k] - w[k];
                }
                let phase = Complex64::from_polar(1.0, 0.5 * symplectic(z, w));
                Ok(f(&shifted) * g(w) * phase)
            })
        })
        .collect()
}

fn special_dim(f: &BandLimitedFunction) -> Result<usize> {
    match f.basis() {
        Basis::SpecialHermite { d } => Ok(d),
        b => invalid(format!("special Riesz transforms need a special Hermite basis, got {b:?}")),
    }
}

/// `Z_j = ∂_{z_j} + ¼ z̄_j` (or `Z̄_j = ∂_{z̄_j} − ¼ z_j`) applied to a mode,
/// evaluated analytically.
fn z_on_mode(d: usize, j: usize, conjugate: bool, label: &ModeLabel, points: &[Vec<Complex64>]) -> Result<Vec<Complex64>> {
    let ModeLabel::Special { k, m, n, j: idx } = *label else {
        return invalid("expected a special Hermite mode");
    };
    let y = &bigraded_basis(d, m, n)?[idx - 1];
    let dp = if conjugate { y.poly.d_zbar(j) } else { y.poly.d_z(j) };
    let delta = (d as u32 + m + n) as f64 - 1.0;
    let c = phi_norm(k, delta);
    Ok(points
        .iter()
        .map(|z| {
            let r2: f64 = z.iter().map(|w| w.norm_sqr()).sum();
            let r = r2.sqrt();
            let phi = phi_small(k, delta, r);
            // φ'(r)/(2r) + φ/4 = −½ c L_{k−1}^{δ+1}(r²/2) e^{−r²/4}
            let a = -0.5 * c * laguerre_poly(i64::from(k) - 1, delta + 1.0, 0.5 * r2) * (-0.25 * r2).exp();
            let p = y.poly.eval(z);
            if conjugate {
                z[j] * p * (a - 0.5 * phi) + dp.eval(z) * phi
            } else {
                z[j].conj() * p * a + dp.eval(z) * phi
            }
        })
        .collect())
}

/// Sampled `S_j f = Z_j L^{−1/2} f` (or `S̄_j f` when `conjugate`), with
/// 0-based `j`.
///
/// The twisted-convolution route evaluates `f × s_j` in polar coordinates
/// about `w = 0`, filling the guarded ball of radius `10^{−3}` by
/// extrapolation.
pub fn special_riesz(j: usize, f: &BandLimitedFunction, route: OperatorRoute, points: &[Vec<f64>], conjugate: bool) -> Result<Vec<Complex64>> {
    let d = special_dim(f)?;
    if j >= d {
        return invalid(format!("Riesz index {j} out of range for d = {d}"));
    }
    match route {
        OperatorRoute::Spectral => {
            let h = half_inverse(f, OperatorRoute::Spectral)?;
            let zs: Vec<Vec<Complex64>> = points.iter().map(|p| to_complex(p)).collect();
            let mut acc = vec![Complex64::new(0.0, 0.0); points.len()];
            for (l, &c) in h.coeffs() {
                for (slot, v) in acc.iter_mut().zip(z_on_mode(d, j, conjugate, l, &zs)?) {
                    *slot += c * v;
                }
            }
            Ok(acc)
        }
        OperatorRoute::TwistedConvolution | OperatorRoute::KernelIntegral => {
            let eps = 1e-3 * (1.0 + 1e-9);
            let level = if d == 1 { 32 } else { 10 };
            points
                .iter()
                .map(|z| {
                    if z.len() != 2 * d {
                        return invalid("point dimension does not match ℂ^d");
                    }
                    let zn = z.iter().map(|v| v * v).sum::<f64>().sqrt();
                    let plan = PolarPlan::new(2 * d, eps, zn + 16.0, level, true)?;
                    let mut cache = (f64::NAN, 0.0);
                    let mut shifted = vec![0.0; 2 * d];
                    plan.integrate(|rho, w| {
                        if rho != cache.0 {
                            cache = (rho, special_riesz_radial(rho, d, conjugate, 1e-13)?);
                        }
                        let wj = Complex64::new(w[j], w[d + j]);
                        let kernel = if conjugate { wj * cache.1 } else { wj.conj() * cache.1 };
                        for k in 0..2 * d {
                            shifted[k] = z[k] - w[k];
                        }
                        let phase = Complex64::from_polar(1.0, 0.5 * symplectic(z, w));
                        Ok(f.eval(&shifted)? * kernel * phase)
                    })
                })
                .collect()
        }
        _ => invalid(format!("route {route:?} is not available for special Riesz transforms")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::{special_heat, KernelRoute};
    use crate::operators::band::{constant_harmonic, expand};
    use crate::operators::heat::{heat_apply, heat_spectral};
    use crate::specfun::laguerre_phi_fock;
    use std::f64::consts::PI;

    fn phi_k(k: u32) -> impl Fn(&[f64]) -> Complex64 {
        move |p: &[f64]| Complex64::new(laguerre_phi_fock(k, p.len() / 2, &to_complex(p)), 0.0)
    }

    fn sample_points() -> Vec<Vec<f64>> {
        vec![vec![0.0, 0.0], vec![0.5, -0.3], vec![1.2, 0.8], vec![-2.0, 0.4]]
    }

    #[test]
    fn gaussian_twisted_value() {
        let v = twisted_convolve(phi_k(0), phi_k(0), 1, &[vec![0.0, 0.0]], &TwistedOptions::default()).unwrap();
        assert!((v[0].re - 2.0 * PI).abs() < 1e-9 && v[0].im.abs() < 1e-12);
    }

    #[test]
    fn laguerre_projections() {
        let pts = sample_points();
        for k in 0..=3u32 {
            for l in 0..=3u32 {
                let v = twisted_convolve(phi_k(k), phi_k(l), 1, &pts, &TwistedOptions::default()).unwrap();
                for (p, val) in pts.iter().zip(v) {
                    let expect = if k == l { phi_k(k)(p).re } else { 0.0 };
                    assert!((val / (2.0 * PI) - expect).norm() < 1e-7, "k={k} l={l}");
                }
            }
        }
    }

    #[test]
    fn truncation_too_small_is_reported() {
        let opts = TwistedOptions { radius: Some(3.0), ..Default::default() };
        assert!(matches!(twisted_convolve(phi_k(0), phi_k(0), 1, &[vec![0.0, 0.0]], &opts), Err(Error::Resolution(_))));
    }

    #[test]
    fn heat_twisted_route_matches_spectral() {
        let b = Basis::SpecialHermite { d: 1 };
        let f = expand(phi_k(1), b, 3).unwrap();
        let pts = sample_points();
        let a = heat_apply(0.5, &f, OperatorRoute::Spectral, &pts).unwrap();
        let t = heat_apply(0.5, &f, OperatorRoute::TwistedConvolution, &pts).unwrap();
        for (p, (x, y)) in pts.iter().zip(a.iter().zip(&t)) {
            assert!((x - y).norm() < 1e-6, "{x} {y}");
            assert!((x.re - (-1.5f64).exp() * phi_k(1)(p).re).abs() < 1e-10);
        }
        // a non-radial mode exercises the phase convention
        let g = BandLimitedFunction::from_coeffs(
            b,
            [
                (ModeLabel::Special { k: 1, m: 1, n: 0, j: 1 }, Complex64::new(1.0, 0.0)),
                (ModeLabel::Special { k: 0, m: 0, n: 2, j: 1 }, Complex64::new(0.0, 0.7)),
            ],
        )
        .unwrap();
        let a = heat_spectral(&g, 0.5).unwrap().synthesize(&pts).unwrap();
        let t = heat_apply(0.5, &g, OperatorRoute::TwistedConvolution, &pts).unwrap();
        for (x, y) in a.iter().zip(&t) {
            assert!((x - y).norm() < 1e-6, "{x} {y}");
        }
        let _ = special_heat(0.5, &[Complex64::new(0.0, 0.0)], KernelRoute::ClosedForm).unwrap();
    }

    #[test]
    fn ground_state_is_annihilated() {
        let b = Basis::SpecialHermite { d: 1 };
        let f = BandLimitedFunction::mode(b, ModeLabel::Special { k: 0, m: 0, n: 0, j: 1 }).unwrap();
        for v in special_riesz(0, &f, OperatorRoute::Spectral, &sample_points(), false).unwrap() {
            assert!(v.norm() < 1e-15);
        }
    }

    #[test]
    fn spectral_z_matches_finite_differences() {
        let b = Basis::SpecialHermite { d: 2 };
        let f = BandLimitedFunction::from_coeffs(
            b,
            [
                (ModeLabel::Special { k: 1, m: 1, n: 1, j: 2 }, Complex64::new(1.0, 0.2)),
                (ModeLabel::Special { k: 2, m: 0, n: 1, j: 1 }, Complex64::new(-0.4, 0.0)),
            ],
        )
        .unwrap();
        let h = half_inverse(&f, OperatorRoute::Spectral).unwrap();
        let p = vec![0.3, -0.5, 0.8, 0.1];
        let step = 1e-5;
        for j in 0..2 {
            for conjugate in [false, true] {
                let v = special_riesz(j, &f, OperatorRoute::Spectral, std::slice::from_ref(&p), conjugate).unwrap()[0];
                let diff = |k: usize| {
                    let mut a = p.clone();
                    let mut c = p.clone();
                    a[k] += step;
                    c[k] -= step;
                    (h.eval(&a).unwrap() - h.eval(&c).unwrap()) / (2.0 * step)
                };
                let dx = diff(j);
                let dy = diff(2 + j);
                let z = Complex64::new(p[j], p[2 + j]);
                let i = Complex64::new(0.0, 1.0);
                let hv = h.eval(&p).unwrap();
                let fd = if conjugate { 0.5 * (dx + i * dy) - 0.25 * z * hv } else { 0.5 * (dx - i * dy) + 0.25 * z.conj() * hv };
                assert!((v - fd).norm() < 1e-8, "{j} {conjugate}: {v} {fd}");
            }
        }
    }

    #[test]
    fn twisted_route_matches_spectral_riesz() {
        let b = Basis::SpecialHermite { d: 1 };
        let f = expand(phi_k(1), b, 3).unwrap();
        let pts = vec![vec![0.4, -0.2], vec![1.1, 0.6]];
        for conjugate in [false, true] {
            let s = special_riesz(0, &f, OperatorRoute::Spectral, &pts, conjugate).unwrap();
            let t = special_riesz(0, &f, OperatorRoute::TwistedConvolution, &pts, conjugate).unwrap();
            for (x, y) in s.iter().zip(&t) {
                assert!((x - y).norm() < 1e-5, "{conjugate}: {x} {y}");
            }
        }
        assert!(constant_harmonic(1) > 0.0);
    }
}
