//! Spherical-harmonic coefficient profiles on radial grids.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::operators::{BandLimitedFunction, Basis, ModeLabel};
use crate::quadrature::{complex_sphere_rule, sphere_rule};
use crate::specfun::{bigraded_basis, real_spherical_basis};

/// Values of one coefficient profile on the radial grid. For real harmonics
/// `n` is zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Profile {
    pub m: u32,
    pub n: u32,
    pub j: usize,
    pub values: Vec<Complex64>,
}

/// Coefficients `f_{m,j}(r_i) = ∫ f(r_i ω) Y_{m,j}(ω) dω` on `S^{d−1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SphericalCoefficientField {
    pub d: usize,
    pub radii: Vec<f64>,
    pub max_degree: u32,
    pub profiles: Vec<Profile>,
}

/// Coefficients `f^j_{m,n}(r_i) = ∫ f(r_i ζ) conj(Y^j_{m,n}(ζ)) dζ` on `S^{2d−1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BigradedCoefficientField {
    pub d: usize,
    pub radii: Vec<f64>,
    pub max_total: u32,
    pub profiles: Vec<Profile>,
}

fn find(profiles: &[Profile], m: u32, n: u32, j: usize) -> Option<&[Complex64]> {
    profiles.iter().find(|p| p.m == m && p.n == n && p.j == j).map(|p| p.values.as_slice())
}

impl SphericalCoefficientField {
    pub fn profile(&self, m: u32, j: usize) -> Option<&[Complex64]> {
        find(&self.profiles, m, 0, j)
    }

    /// `Σ_{m,j} |f_{m,j}(r_i)|²` at each radius.
    pub fn energy(&self) -> Vec<f64> {
        (0..self.radii.len()).map(|i| self.profiles.iter().map(|p| p.values[i].norm_sqr()).sum()).collect()
    }
}

impl BigradedCoefficientField {
    pub fn profile(&self, m: u32, n: u32, j: usize) -> Option<&[Complex64]> {
        find(&self.profiles, m, n, j)
    }

    pub fn energy(&self) -> Vec<f64> {
        (0..self.radii.len()).map(|i| self.profiles.iter().map(|p| p.values[i].norm_sqr()).sum()).collect()
    }
}

fn check_radii(radii: &[f64]) -> Result<()> {
    if radii.iter().any(|&r| !(r > 0.0) || !r.is_finite()) {
        return invalid("radii must be positive and finite");
    }
    Ok(())
}

/// Projects onto real spherical harmonics of degree ≤ `max_degree` with a
/// sphere rule of the given level (exact to degree 2·level+1).
pub fn project_with<F: Fn(&[f64]) -> Complex64>(f: F, d: usize, max_degree: u32, radii: &[f64], level: usize) -> Result<SphericalCoefficientField> {
    check_radii(radii)?;
    if 2 * level + 1 < 2 * max_degree as usize {
        return Err(Error::Resolution(format!("sphere level {level} cannot separate degree {max_degree}")));
    }
    let rule = sphere_rule(d, level)?;
    let samples: Vec<Vec<Complex64>> = radii.iter().map(|&r| rule.iter().map(|(w, _)| f(&w.iter().map(|c| r * c).collect::<Vec<_>>())).collect()).collect();
    let mut profiles = Vec::new();
    for m in 0..=max_degree {
        for y in real_spherical_basis(d, m)?.iter() {
            let yv: Vec<f64> = rule.iter().map(|(w, wt)| wt * y.eval(w)).collect();
            let values = samples.iter().map(|s| s.iter().zip(&yv).map(|(a, b)| a * b).sum()).collect();
            profiles.push(Profile { m, n: 0, j: y.j, values });
        }
    }
    Ok(SphericalCoefficientField { d, radii: radii.to_vec(), max_degree, profiles })
}

/// [`project_with`] using sphere level `max_degree + 8`.
pub fn project<F: Fn(&[f64]) -> Complex64>(f: F, d: usize, max_degree: u32, radii: &[f64]) -> Result<SphericalCoefficientField> {
    project_with(f, d, max_degree, radii, max_degree as usize + 8)
}

/// Projects onto bigraded harmonics with `m + n ≤ max_total`; points are in
/// `(x, y)` real coordinates.
pub fn bigraded_project_with<F: Fn(&[f64]) -> Complex64>(f: F, d: usize, max_total: u32, radii: &[f64], level: usize) -> Result<BigradedCoefficientField> {
    check_radii(radii)?;
    if 2 * level + 1 < 2 * max_total as usize {
        return Err(Error::Resolution(format!("sphere level {level} cannot separate bidegree total {max_total}")));
    }
    let rule = complex_sphere_rule(d, level)?;
    let samples: Vec<Vec<Complex64>> = radii.iter().map(|&r| rule.iter().map(|(w, _)| f(&w.iter().map(|c| r * c).collect::<Vec<_>>())).collect()).collect();
    let zs: Vec<Vec<Complex64>> = (0..rule.len()).map(|i| rule.complex_node(i)).collect();
    let mut profiles = Vec::new();
    for total in 0..=max_total {
        for m in (0..=total).rev() {
            let n = total - m;
            for y in bigraded_basis(d, m, n)?.iter() {
                let yv: Vec<Complex64> = zs.iter().zip(rule.weights()).map(|(z, &wt)| y.eval(z).conj() * wt).collect();
                let values = samples.iter().map(|s| s.iter().zip(&yv).map(|(a, b)| a * b).sum()).collect();
                profiles.push(Profile { m, n, j: y.j, values });
            }
        }
    }
    Ok(BigradedCoefficientField { d, radii: radii.to_vec(), max_total, profiles })
}

pub fn bigraded_project<F: Fn(&[f64]) -> Complex64>(f: F, d: usize, max_total: u32, radii: &[f64]) -> Result<BigradedCoefficientField> {
    bigraded_project_with(f, d, max_total, radii, max_total as usize + 8)
}

/// Splits a special Hermite expansion into its `m ≥ n` and `m < n` parts.
pub fn holomorphic_split(f: &BandLimitedFunction) -> Result<(BandLimitedFunction, BandLimitedFunction)> {
    if !matches!(f.basis(), Basis::SpecialHermite { .. }) {
        return invalid("holomorphic split needs a special Hermite expansion");
    }
    let keep = |hol: bool| {
        f.map(|l, c| match l {
            ModeLabel::Special { m, n, .. } if (m >= n) == hol => c,
            _ => Complex64::new(0.0, 0.0),
        })
    };
    Ok((keep(true), keep(false)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::to_complex;
    use crate::quadrature::composite;
    use crate::specfun::MultiIndex;

    #[test]
    fn single_harmonic_profile() {
        let y = real_spherical_basis(3, 2).unwrap()[0].clone();
        let f = |x: &[f64]| Complex64::new((-0.5 * x.iter().map(|v| v * v).sum::<f64>()).exp() * y.poly.eval(x), 0.0);
        let field = project(f, 3, 4, &[0.5, 1.2]).unwrap();
        for p in &field.profiles {
            for (i, v) in p.values.iter().enumerate() {
                let r: f64 = field.radii[i];
                let expect = if p.m == 2 && p.j == 1 { r * r * (-0.5 * r * r).exp() } else { 0.0 };
                assert!((v.re - expect).abs() < 1e-10 && v.im.abs() < 1e-12, "{} {}", p.m, p.j);
            }
        }
    }

    #[test]
    fn radial_function_has_only_degree_zero() {
        let f = |x: &[f64]| Complex64::new((-x.iter().map(|v| v * v).sum::<f64>()).exp(), 0.0);
        let field = project(f, 2, 5, &[0.3, 1.0]).unwrap();
        for p in field.profiles.iter().filter(|p| p.m > 0) {
            assert!(p.values.iter().all(|v| v.norm() < 1e-12));
        }
        assert!(project_with(f, 2, 5, &[1.0], 2).is_err());
    }

    #[test]
    fn parseval_for_hermite_expansion() {
        let b = Basis::Hermite { d: 3 };
        let f = BandLimitedFunction::from_coeffs(
            b,
            [
                (ModeLabel::Hermite { mu: MultiIndex::new(vec![1, 0, 1]) }, Complex64::new(0.8, 0.1)),
                (ModeLabel::Hermite { mu: MultiIndex::new(vec![0, 2, 0]) }, Complex64::new(-0.3, 0.0)),
                (ModeLabel::Hermite { mu: MultiIndex::new(vec![0, 0, 3]) }, Complex64::new(0.0, 0.5)),
            ],
        )
        .unwrap();
        let breaks: Vec<f64> = (0..=12).map(f64::from).collect();
        let radial = composite(&breaks, 16).unwrap();
        let radii: Vec<f64> = radial.iter1d().map(|(r, _)| r).collect();
        let field = project(|x| f.eval(x).unwrap(), 3, 3, &radii).unwrap();
        let energy = field.energy();
        let total: f64 = radial.iter1d().zip(&energy).map(|((r, w), e)| w * r * r * e).sum();
        assert!((total - f.norm_sq()).abs() < 1e-8);
    }

    #[test]
    fn bigraded_parseval_and_split() {
        let b = Basis::SpecialHermite { d: 2 };
        let f = BandLimitedFunction::from_coeffs(
            b,
            [
                (ModeLabel::Special { k: 0, m: 1, n: 0, j: 2 }, Complex64::new(0.6, 0.0)),
                (ModeLabel::Special { k: 1, m: 0, n: 2, j: 1 }, Complex64::new(0.0, -0.4)),
                (ModeLabel::Special { k: 2, m: 0, n: 0, j: 1 }, Complex64::new(0.3, 0.3)),
            ],
        )
        .unwrap();
        let breaks: Vec<f64> = (0..=16).map(f64::from).collect();
        let radial = composite(&breaks, 16).unwrap();
        let radii: Vec<f64> = radial.iter1d().map(|(r, _)| r).collect();
        let field = bigraded_project(|p| f.eval(p).unwrap(), 2, 3, &radii).unwrap();
        let total: f64 = radial.iter1d().zip(field.energy()).map(|((r, w), e)| w * r.powi(3) * e).sum();
        assert!((total - f.norm_sq()).abs() < 1e-8);
        let only = field.profile(0, 2, 1).unwrap();
        assert!(only.iter().any(|v| v.norm() > 1e-3));

        let (h, ah) = holomorphic_split(&f).unwrap();
        assert_eq!(h.plus(&ah).unwrap(), f);
        assert_eq!(holomorphic_split(&h).unwrap().0, h);
        assert!(holomorphic_split(&ah).unwrap().0.is_empty());
        let radial_only = BandLimitedFunction::mode(b, ModeLabel::Special { k: 1, m: 0, n: 0, j: 1 }).unwrap();
        let (h, ah) = holomorphic_split(&radial_only).unwrap();
        assert_eq!(h, radial_only);
        assert!(ah.is_empty());
        let _ = to_complex(&[0.0, 0.0]);
    }
}
