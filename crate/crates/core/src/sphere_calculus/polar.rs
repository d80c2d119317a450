//! Polar form of the Hermite Riesz square function and its link to
//! Laguerre Riesz transforms.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::projection::project_with;
use crate::constants::HECKE_BOCHNER_CD;
use crate::error::{invalid, Result};
use crate::operators::{expand, half_inverse, hermite_riesz_spectral, ladder, laguerre_riesz, BandLimitedFunction, Basis, Ladder, OperatorRoute};
use crate::quadrature::sphere_rule;
use crate::specfun::HarmonicBasisElement;

/// Per-radius comparison of `∫_{S^{d−1}} Σ_j |R_j f(rω)|² dω` with
/// `Σ |(r+∂_r)F_{m,j}|² + Σ m(m+d−2) r^{−2} |F_{m,j}|²`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolarIdentityReport {
    pub d: usize,
    pub radii: Vec<f64>,
    pub lhs: Vec<f64>,
    pub radial_term: Vec<f64>,
    pub angular_term: Vec<f64>,
    pub residual: f64,
}

fn hermite_d(f: &BandLimitedFunction) -> Result<usize> {
    match f.basis() {
        Basis::Hermite { d } if (2..=4).contains(&d) => Ok(d),
        b => invalid(format!("polar identities need a Hermite basis with 2 <= d <= 4, got {b:?}")),
    }
}

/// `∂_j = ½(A_j − A_j*)` on a Hermite expansion.
fn partial(j: usize, f: &BandLimitedFunction) -> Result<BandLimitedFunction> {
    let a = ladder(j, Ladder::Annihilate, f)?;
    let c = ladder(j, Ladder::Create, f)?;
    Ok(a.plus(&c.scaled(Complex64::new(-1.0, 0.0)))?.scaled(Complex64::new(0.5, 0.0)))
}

/// `∂_r h(x) = Σ_j (x_j/|x|) ∂_j h(x)`, exactly via ladder operators.
fn radial_derivative(h: &BandLimitedFunction, d: usize) -> Result<impl Fn(&[f64]) -> Complex64> {
    let parts: Vec<BandLimitedFunction> = (0..d).map(|j| partial(j, h)).collect::<Result<_>>()?;
    Ok(move |x: &[f64]| {
        let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        parts.iter().zip(x).map(|(p, xi)| p.eval(x).unwrap_or_default() * (xi / r)).sum()
    })
}

pub fn riesz_polar_identity(f: &BandLimitedFunction, radii: &[f64]) -> Result<PolarIdentityReport> {
    let d = hermite_d(f)?;
    let max_degree = f.cutoff().min(8);
    let level = f.cutoff() as usize + 6;
    let rule = sphere_rule(d, level)?;
    let riesz: Vec<BandLimitedFunction> = (0..d).map(|j| hermite_riesz_spectral(j, f, false)).collect::<Result<_>>()?;
    let lhs: Vec<f64> = radii
        .iter()
        .map(|&r| {
            rule.integrate(|w| {
                let x: Vec<f64> = w.iter().map(|c| r * c).collect();
                riesz.iter().map(|g| g.eval(&x).unwrap_or_default().norm_sqr()).sum()
            })
        })
        .collect();
    let h = half_inverse(f, OperatorRoute::Spectral)?;
    let big_f = project_with(|x| h.eval(x).unwrap_or_default(), d, max_degree, radii, level)?;
    let dr = radial_derivative(&h, d)?;
    let big_df = project_with(dr, d, max_degree, radii, level)?;
    let mut radial_term = vec![0.0; radii.len()];
    let mut angular_term = vec![0.0; radii.len()];
    for (p, dp) in big_f.profiles.iter().zip(&big_df.profiles) {
        let eig = f64::from(p.m) * (f64::from(p.m) + d as f64 - 2.0);
        for (i, &r) in radii.iter().enumerate() {
            radial_term[i] += (p.values[i] * r + dp.values[i]).norm_sqr();
            angular_term[i] += eig / (r * r) * p.values[i].norm_sqr();
        }
    }
    let residual = lhs.iter().zip(radial_term.iter().zip(&angular_term)).map(|(l, (a, b))| (l - a - b).abs()).fold(0.0, f64::max);
    Ok(PolarIdentityReport { d, radii: radii.to_vec(), lhs, radial_term, angular_term, residual })
}

/// Both sides of `(r+∂_r)F_{m,j} = c_d r^m R^{α+m} f̃ + c_d m r^{m−1} L_{α+m}^{−1/2} f̃`
/// for `f = r^m f̃(r) Y(ω)`, together with the substitution
/// `m r^{m−1} L^{−1/2} f̃ = (m/r) F`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LaguerreLinkReport {
    pub d: usize,
    pub m: u32,
    pub radii: Vec<f64>,
    pub lhs: Vec<f64>,
    pub rhs: Vec<f64>,
    pub residual: f64,
    pub substitution_residual: f64,
}

/// `f_tilde` must be a Laguerre expansion of type `d/2 − 1 + m`; the left side
/// goes through a d-dimensional Hermite expansion of `f`.
pub fn laguerre_link(f_tilde: &BandLimitedFunction, y: &HarmonicBasisElement, radii: &[f64]) -> Result<LaguerreLinkReport> {
    let d = y.d;
    let m = y.m;
    let alpha = 0.5 * d as f64 - 1.0 + f64::from(m);
    match f_tilde.basis() {
        Basis::Laguerre { alpha: a } if (a - alpha).abs() < 1e-12 => {}
        b => invalid(format!("expected a Laguerre expansion of type {alpha}, got {b:?}"))?,
    }
    let cutoff = m + 2 * f_tilde.cutoff();
    let f = expand(
        |x| {
            let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            f_tilde.eval(&[r]).unwrap_or_default() * y.poly.eval(x)
        },
        Basis::Hermite { d },
        cutoff,
    )?;
    let h = half_inverse(&f, OperatorRoute::Spectral)?;
    let dr = radial_derivative(&h, d)?;
    let rule = sphere_rule(d, cutoff as usize + 6)?;
    let project = |g: &dyn Fn(&[f64]) -> Complex64, r: f64| -> f64 {
        rule.integrate(|w| {
            let x: Vec<f64> = w.iter().map(|c| r * c).collect();
            g(&x).re * y.eval(w)
        })
    };
    let g_tilde = half_inverse(f_tilde, OperatorRoute::Spectral)?;
    let lag = laguerre_riesz(f_tilde, radii)?;
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    let mut substitution_residual = 0.0f64;
    for (i, &r) in radii.iter().enumerate() {
        let big_f = project(&|x: &[f64]| h.eval(x).unwrap_or_default(), r);
        let big_df = project(&dr, r);
        lhs.push(r * big_f + big_df);
        let half = g_tilde.eval(&[r])?.re;
        let second = HECKE_BOCHNER_CD * f64::from(m) * r.powi(m as i32 - 1) * half;
        rhs.push(HECKE_BOCHNER_CD * r.powi(m as i32) * lag[i].re + second);
        substitution_residual = substitution_residual.max((second - f64::from(m) / r * big_f).abs());
    }
    let residual = lhs.iter().zip(&rhs).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    Ok(LaguerreLinkReport { d, m, radii: radii.to_vec(), lhs, rhs, residual, substitution_residual })
}
