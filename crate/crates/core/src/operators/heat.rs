//! Heat semigroups and negative half powers.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::band::{to_complex, BandLimitedFunction, Basis, OperatorRoute};
use super::special::{twisted_convolve, TwistedOptions};
use crate::error::{invalid, Error, Result};
use crate::kernels::{laguerre_heat, mehler, special_heat, KernelRoute};
use crate::quadrature::{composite, halfline_subordination};

fn check_time(t: f64) -> Result<()> {
    if !(t > 0.0) || !t.is_finite() {
        return invalid(format!("time must be positive and finite, got {t}"));
    }
    Ok(())
}

/// `e^{−tλ}` on every coefficient.
pub fn heat_spectral(f: &BandLimitedFunction, t: f64) -> Result<BandLimitedFunction> {
    check_time(t)?;
    let basis = f.basis();
    Ok(f.map(|l, c| c * (-t * basis.eigenvalue(l)).exp()))
}

/// Heat semigroup applied to `f` and sampled at `points`.
///
/// The kernel route integrates the closed-form Hermite or Laguerre heat
/// kernel (Hermite is limited to d ≤ 2); the twisted-convolution route
/// evaluates `f × p_t` in the special Hermite setting.
pub fn heat_apply(t: f64, f: &BandLimitedFunction, route: OperatorRoute, points: &[Vec<f64>]) -> Result<Vec<Complex64>> {
    check_time(t)?;
    let basis = f.basis();
    match (route, basis) {
        (OperatorRoute::Spectral, _) => heat_spectral(f, t)?.synthesize(points),
        (OperatorRoute::KernelIntegral, Basis::Hermite { d }) => {
            if d > 2 {
                return Err(Error::UnsupportedDimension { d, supported: "1..=2 for the kernel route" });
            }
            let reach = 10.0 + (2.0 * f.cutoff() as f64 + d as f64).sqrt();
            let width = 0.5f64.min(t.sqrt());
            let panels = (2.0 * reach / width).ceil() as usize;
            let breaks: Vec<f64> = (0..=panels).map(|i| -reach + 2.0 * reach * i as f64 / panels as f64).collect();
            let rule = composite(&breaks, 12)?;
            let nodes: Vec<(f64, f64)> = rule.iter1d().collect();
            let grid: Vec<(Vec<f64>, f64, Complex64)> = tensor(&nodes, d)
                .into_iter()
                .map(|(y, w)| {
                    let v = f.eval(&y)?;
                    Ok((y, w, v))
                })
                .collect::<Result<_>>()?;
            points
                .iter()
                .map(|x| {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (y, w, v) in &grid {
                        if v.norm() > 0.0 {
                            acc += v * (w * mehler(t, x, y, KernelRoute::ClosedForm)?);
                        }
                    }
                    Ok(acc)
                })
                .collect()
        }
        (OperatorRoute::KernelIntegral, Basis::Laguerre { alpha }) => {
            let reach = 10.0 + (4.0 * f.cutoff() as f64 + 2.0 * alpha + 2.0).sqrt();
            let width = 0.5f64.min(t.sqrt());
            let panels = (reach / width).ceil() as usize;
            let breaks: Vec<f64> = (0..=panels).map(|i| reach * i as f64 / panels as f64).collect();
            let rule = composite(&breaks, 12)?;
            let grid: Vec<(f64, f64, Complex64)> = rule.iter1d().map(|(s, w)| Ok((s, w * s.powf(2.0 * alpha + 1.0), f.eval(&[s])?))).collect::<Result<_>>()?;
            points
                .iter()
                .map(|p| {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for &(s, w, v) in &grid {
                        acc += v * (w * laguerre_heat(t, p[0], s, alpha, KernelRoute::ClosedForm)?);
                    }
                    Ok(acc)
                })
                .collect()
        }
        (OperatorRoute::TwistedConvolution, Basis::SpecialHermite { d }) => twisted_convolve(
            |p| f.eval(p).unwrap_or(Complex64::new(f64::NAN, 0.0)),
            |w| Complex64::new(special_heat(t, &to_complex(w), KernelRoute::ClosedForm).unwrap_or(f64::NAN), 0.0),
            d,
            points,
            &TwistedOptions::default(),
        ),
        _ => invalid(format!("route {route:?} is not available for heat on {basis:?}")),
    }
}

pub(crate) fn tensor(nodes: &[(f64, f64)], d: usize) -> Vec<(Vec<f64>, f64)> {
    let mut out = vec![(Vec::new(), 1.0)];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|(p, w)| {
                nodes.iter().map(move |&(x, wx)| {
                    let mut q = p.clone();
                    q.push(x);
                    (q, w * wx)
                })
            })
            .collect();
    }
    out
}

/// `λ^{−1/2}` on every coefficient, either exactly or through the
/// subordination integral `π^{−1/2} ∫₀^∞ e^{−tλ} t^{−1/2} dt` summed over
/// spectral heat applications.
pub fn half_inverse(f: &BandLimitedFunction, route: OperatorRoute) -> Result<BandLimitedFunction> {
    let basis = f.basis();
    match route {
        OperatorRoute::Spectral => Ok(f.map(|l, c| c / basis.eigenvalue(l).sqrt())),
        OperatorRoute::Subordination => {
            if f.is_empty() {
                return Ok(f.clone());
            }
            let decay = f.coeffs().map(|(l, _)| basis.eigenvalue(l)).fold(f64::INFINITY, f64::min);
            let rule = halfline_subordination(decay, 1e-14)?;
            let mut acc = BandLimitedFunction::zero(basis)?;
            for (t, w) in rule.iter1d() {
                acc = acc.plus(&heat_spectral(f, t)?.scaled(Complex64::new(w / PI.sqrt(), 0.0)))?;
            }
            Ok(acc)
        }
        _ => invalid(format!("route {route:?} is not available for the half inverse")),
    }
}
