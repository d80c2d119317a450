//! Polar integration of odd singular kernels against smooth functions.
//!
//! Integrates `∫ g(w) dw` over `ℝ^D` in polar coordinates about the
//! singularity. The radial integrand `I(ρ) = ρ^{D−1} Σ_ω w_ω g(ρω)` is
//! bounded near 0 (up to a logarithm) once antipodal nodes are paired, so the ball of radius ε
//! excluded by the kernel guard is filled by extrapolation of `I` from
//! `[ε, 2ε]` with a basis that also captures logarithmic growth.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::Result;
use crate::quadrature::{complex_sphere_rule, composite, geometric_breaks, sphere_rule};

pub(crate) struct PolarPlan {
    radial: Vec<(f64, f64)>,
    directions: Vec<(Vec<f64>, f64)>,
    inner: Vec<(f64, f64)>,
}

/// Directions for the unit sphere of `ℝ^D` in real coordinates; `complex`
/// selects the `(x, y)` layout used for `ℂ^{D/2}`.
fn directions(real_dim: usize, level: usize, complex: bool) -> Result<Vec<(Vec<f64>, f64)>> {
    if real_dim == 1 {
        return Ok(vec![(vec![1.0], 1.0), (vec![-1.0], 1.0)]);
    }
    let rule = if complex { complex_sphere_rule(real_dim / 2, level)? } else { sphere_rule(real_dim, level)? };
    Ok(rule.iter().map(|(p, w)| (p.to_vec(), w)).collect())
}

impl PolarPlan {
    pub fn new(real_dim: usize, eps: f64, rmax: f64, level: usize, complex: bool) -> Result<Self> {
        let mut breaks = if rmax > 1.0 && eps < 0.5 { geometric_breaks(eps, 1.0, eps) } else { vec![eps] };
        let mut last = *breaks.last().unwrap_or(&eps);
        while last < rmax {
            last = (last + 0.5).min(rmax);
            breaks.push(last);
        }
        let rule = composite(&breaks, 16)?;
        let radial = rule.iter1d().collect();
        // interpolate I on ε·(1, 5/4, 3/2, 7/4, 2) by {1, ρ, ρ², ln ρ, ρ ln ρ} and integrate over [0, ε]
        let nodes: Vec<f64> = [1.0, 1.25, 1.5, 1.75, 2.0].iter().map(|c| c * eps).collect();
        let vander = DMatrix::from_fn(5, 5, |i, k| {
            let r = nodes[i];
            match k {
                0 => 1.0,
                1 => r / eps,
                2 => (r / eps).powi(2),
                3 => r.ln(),
                _ => r / eps * r.ln(),
            }
        });
        let le = eps.ln();
        let moments = DVector::from_vec(vec![eps, 0.5 * eps, eps / 3.0, eps * (le - 1.0), 0.5 * eps * (le - 0.5)]);
        let weights = vander.transpose().lu().solve(&moments).ok_or_else(|| crate::error::Error::Resolution("singular inner interpolation failed".into()))?;
        let inner = nodes.iter().zip(weights.iter()).map(|(&r, &w)| (r, w)).collect();
        Ok(Self { radial, directions: directions(real_dim, level, complex)?, inner })
    }

    /// Plain polar rule on `[0, rmax]` for integrands without a singularity.
    pub fn regular(real_dim: usize, rmax: f64, panel: f64, level: usize, complex: bool) -> Result<Self> {
        let panels = (rmax / panel).ceil().max(1.0) as usize;
        let breaks: Vec<f64> = (0..=panels).map(|i| rmax * i as f64 / panels as f64).collect();
        let radial = composite(&breaks, 16)?.iter1d().collect();
        Ok(Self { radial, directions: directions(real_dim, level, complex)?, inner: Vec::new() })
    }

    fn radial_value<G: FnMut(f64, &[f64]) -> Result<Complex64>>(&self, rho: f64, g: &mut G) -> Result<Complex64> {
        let dim = self.directions[0].0.len();
        let mut acc = Complex64::new(0.0, 0.0);
        let mut w = vec![0.0; dim];
        for (omega, wt) in &self.directions {
            for (wi, o) in w.iter_mut().zip(omega) {
                *wi = rho * o;
            }
            acc += g(rho, &w)? * *wt;
        }
        Ok(acc * rho.powi(dim as i32 - 1))
    }

    /// `∫ g(w) dw`; `g` receives `(|w|, w)`.
    pub fn integrate<G: FnMut(f64, &[f64]) -> Result<Complex64>>(&self, mut g: G) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for &(rho, w) in &self.radial {
            acc += self.radial_value(rho, &mut g)? * w;
        }
        for &(rho, w) in &self.inner {
            acc += self.radial_value(rho, &mut g)? * w;
        }
        Ok(acc)
    }
}
