//! Bigraded radial calculus for the special Hermite operator: coefficients
//! of `L^{−1/2}f`, the twisted radial semigroup, and the five-term
//! decomposition of `Σ_j |S_j f|² + |S̄_j f|²`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::kernels::{k_small, special_heat, KernelRoute};
use crate::operators::{half_inverse, heat_spectral, special_riesz, BandLimitedFunction, Basis, ModeLabel, OperatorRoute};
use crate::quadrature::{complex_sphere_rule, composite, halfline_subordination};
use crate::specfun::{bigraded_basis, phi_small, phi_small_deriv};

use super::complex::lambda_alternate;
use super::projection::{bigraded_project, bigraded_project_with, BigradedCoefficientField, Profile};

/// Below this time the radial semigroup is replaced by the identity; the
/// neglected part of the subordination integral is `O(T^{3/2})`.
const SMALL_TIME: f64 = 1e-6;
const RADIAL_EDGE: f64 = 14.0;

fn special_d(f: &BandLimitedFunction) -> Result<usize> {
    match f.basis() {
        Basis::SpecialHermite { d } if (1..=2).contains(&d) => Ok(d),
        Basis::SpecialHermite { d } => Err(Error::UnsupportedDimension { d, supported: "1..=2" }),
        _ => invalid("expected a special Hermite expansion"),
    }
}

fn max_total(f: &BandLimitedFunction) -> u32 {
    f.coeffs()
        .filter_map(|(l, _)| match l {
            ModeLabel::Special { m, n, .. } => Some(m + n),
            _ => None,
        })
        .max()
        .unwrap_or(0)
}

fn check_radii(radii: &[f64]) -> Result<()> {
    if radii.is_empty() || radii.iter().any(|r| !(*r > 0.0) || !r.is_finite()) {
        return invalid("radial grid must be non-empty and strictly positive");
    }
    Ok(())
}

fn delta(d: usize, m: u32, n: u32) -> f64 {
    (d as u32 + m + n) as f64 - 1.0
}

/// Radial rule on `[0, r + 14]` refined geometrically toward `s = r`.
fn radial_rule(r: f64) -> Result<Vec<(f64, f64)>> {
    let hi = r + RADIAL_EDGE;
    let mut breaks = vec![0.0, hi];
    let mut h = 1e-3;
    while h < 0.25 {
        breaks.push(r + h);
        if r - h > 0.0 {
            breaks.push(r - h);
        }
        h *= 2.0;
    }
    let mut s = r + 0.25;
    while s < hi {
        breaks.push(s);
        s += 0.25;
    }
    let mut s = r - 0.25;
    while s > 0.0 {
        breaks.push(s);
        s -= 0.25;
    }
    breaks.push(r);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    Ok(composite(&breaks, 16)?.iter1d().collect())
}

/// Projections of `f` on the spheres of radius `s` for every node of `rule`.
fn sampled_profiles(f: &BandLimitedFunction, d: usize, total: u32, rule: &[(f64, f64)]) -> Result<BigradedCoefficientField> {
    let nodes: Vec<f64> = rule.iter().map(|(s, _)| *s).collect();
    bigraded_project_with(|p| f.eval(p).unwrap_or(Complex64::new(f64::NAN, 0.0)), d, total, &nodes, total as usize + 1)
}

/// `T̃_t g(r) = e^{−t(m−n)} ∫ g(s) (rs)^{m+n} k_t^δ(r, s) s^{2d−1} ds` for a
/// profile sampled on `rule`.
#[allow(clippy::too_many_arguments)]
fn twisted_radial(t: f64, r: f64, d: usize, m: u32, n: u32, rule: &[(f64, f64)], g: &[Complex64], twist: bool) -> Result<Complex64> {
    let del = delta(d, m, n);
    let big_n = (m + n) as i32;
    let mut acc = Complex64::new(0.0, 0.0);
    for ((s, w), gv) in rule.iter().zip(g) {
        let k = k_small(t, r, *s, del, KernelRoute::ClosedForm)?;
        acc += gv * (k * (r * s).powi(big_n) * s.powi(2 * d as i32 - 1) * w);
    }
    let factor = if twist { (-t * (f64::from(m) - f64::from(n))).exp() } else { 1.0 };
    Ok(acc * factor)
}

/// Coefficient profiles of `L^{−1/2}f` by two routes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpecialFReport {
    /// Projection of the spectrally computed `L^{−1/2}f`.
    pub spectral: BigradedCoefficientField,
    /// `π^{−1/2} ∫₀^∞ T̃_t f^j_{m,n}(r) t^{−1/2} dt` with projected input profiles.
    pub integral: BigradedCoefficientField,
    pub residual: f64,
}

/// `F^j_{m,n}` of `L^{−1/2}f` on `radii`, by spectral projection and by the
/// radial subordination integral.
pub fn special_f_coeffs(f: &BandLimitedFunction, radii: &[f64]) -> Result<SpecialFReport> {
    let d = special_d(f)?;
    check_radii(radii)?;
    let total = max_total(f);
    let h = half_inverse(f, OperatorRoute::Spectral)?;
    let spectral = bigraded_project(|p| h.eval(p).unwrap_or(Complex64::new(f64::NAN, 0.0)), d, total, radii)?;
    let at_r = bigraded_project(|p| f.eval(p).unwrap_or(Complex64::new(f64::NAN, 0.0)), d, total, radii)?;
    let mut profiles: Vec<Profile> = spectral.profiles.iter().map(|p| Profile { m: p.m, n: p.n, j: p.j, values: Vec::with_capacity(radii.len()) }).collect();
    for (i, &r) in radii.iter().enumerate() {
        let rule = radial_rule(r)?;
        let sampled = sampled_profiles(f, d, total, &rule)?;
        for (out, g) in profiles.iter_mut().zip(&sampled.profiles) {
            let (m, n) = (out.m, out.n);
            let trule = halfline_subordination(d as f64 + 2.0 * f64::from(m), 1e-13)?;
            let g_r = at_r.profile(m, n, g.j).map_or(Complex64::new(0.0, 0.0), |v| v[i]);
            let mut acc = Complex64::new(0.0, 0.0);
            if g.values.iter().any(|v| v.norm() > 0.0) || g_r.norm() > 0.0 {
                for (t, w) in trule.iter1d() {
                    let v = if t < SMALL_TIME { g_r } else { twisted_radial(t, r, d, m, n, &rule, &g.values, true)? };
                    acc += v * w;
                }
            }
            out.values.push(acc / std::f64::consts::PI.sqrt());
        }
    }
    let integral = BigradedCoefficientField { d, radii: radii.to_vec(), max_total: total, profiles };
    let residual = field_diff(&spectral, &integral);
    Ok(SpecialFReport { spectral, integral, residual })
}

fn field_diff(a: &BigradedCoefficientField, b: &BigradedCoefficientField) -> f64 {
    a.profiles.iter().zip(&b.profiles).flat_map(|(p, q)| p.values.iter().zip(&q.values).map(|(x, y)| (x - y).norm())).fold(0.0, f64::max)
}

/// Projections of `e^{−tL}f` against the radial semigroup applied to the
/// projections of `f`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SemigroupReport {
    pub t: f64,
    pub twist: bool,
    pub heat: BigradedCoefficientField,
    pub radial: BigradedCoefficientField,
    pub residual: f64,
}

/// Checks `(e^{−tL}f)^j_{m,n} = T̃_t f^j_{m,n}`; `twist = false` drops the
/// factor `e^{−t(m−n)}`.
pub fn semigroup_projection(f: &BandLimitedFunction, t: f64, radii: &[f64], twist: bool) -> Result<SemigroupReport> {
    let d = special_d(f)?;
    check_radii(radii)?;
    let total = max_total(f);
    let ht = heat_spectral(f, t)?;
    let heat = bigraded_project(|p| ht.eval(p).unwrap_or(Complex64::new(f64::NAN, 0.0)), d, total, radii)?;
    let mut profiles: Vec<Profile> = heat.profiles.iter().map(|p| Profile { m: p.m, n: p.n, j: p.j, values: Vec::with_capacity(radii.len()) }).collect();
    for &r in radii {
        let rule = radial_rule(r)?;
        let sampled = sampled_profiles(f, d, total, &rule)?;
        for (out, g) in profiles.iter_mut().zip(&sampled.profiles) {
            out.values.push(twisted_radial(t, r, d, out.m, out.n, &rule, &g.values, twist)?);
        }
    }
    let radial = BigradedCoefficientField { d, radii: radii.to_vec(), max_total: total, profiles };
    let residual = field_diff(&heat, &radial);
    Ok(SemigroupReport { t, twist, heat, radial, residual })
}

/// Angular factor in the circle identity for the heat kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AngularForm {
    /// `Y(w′)`, as produced by writing `e^{−tL}(gY)` in polar coordinates.
    Harmonic,
    /// `conj(Y(w′))`.
    Conjugate,
}

/// Both sides of
/// `∫ p_t(rz′ − sw′) e^{−(i/2) rs Im(z′·w̄′)} Y(w′) dw′ = Y(z′) (rs)^{m+n} k_t^δ(r,s) e^{−t(m−n)}`
/// with the sphere integral done by quadrature.
pub fn circle_identity(y: (usize, u32, u32, usize), r: f64, s: f64, t: f64, z_dir: &[Complex64], form: AngularForm) -> Result<(Complex64, Complex64)> {
    let (d, m, n, j) = y;
    if z_dir.len() != d {
        return invalid("direction dimension does not match ℂ^d");
    }
    let norm = z_dir.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-12 {
        return invalid("direction must be a unit vector");
    }
    let harmonic = &bigraded_basis(d, m, n)?[j - 1];
    let rule = complex_sphere_rule(d, (m + n) as usize + 40)?;
    let mut lhs = Complex64::new(0.0, 0.0);
    let mut diff = vec![Complex64::new(0.0, 0.0); d];
    for i in 0..rule.len() {
        let w = rule.complex_node(i);
        for k in 0..d {
            diff[k] = r * z_dir[k] - s * w[k];
        }
        let im: f64 = z_dir.iter().zip(&w).map(|(a, b)| (a * b.conj()).im).sum();
        let phase = Complex64::from_polar(1.0, -0.5 * r * s * im);
        let yv = harmonic.eval(&w);
        let yv = match form {
            AngularForm::Harmonic => yv,
            AngularForm::Conjugate => yv.conj(),
        };
        lhs += special_heat(t, &diff, KernelRoute::ClosedForm)? * phase * yv * rule.weight(i);
    }
    let rhs = harmonic.eval(z_dir)
        * (r * s).powi((m + n) as i32)
        * k_small(t, r, s, delta(d, m, n), KernelRoute::ClosedForm)?
        * (-t * (f64::from(m) - f64::from(n))).exp();
    Ok((lhs, rhs))
}

/// Per-radius terms of the five-term decomposition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiveTermReport {
    pub d: usize,
    pub radii: Vec<f64>,
    pub a1_sq: Vec<f64>,
    pub a2_sq: Vec<f64>,
    pub a3_sq: Vec<f64>,
    pub a4_sq: Vec<f64>,
    pub a5: Vec<f64>,
    /// `∫_{S^{2d−1}} Σ_j |S_j f(rζ)|² + |S̄_j f(rζ)|² dσ(ζ)`.
    pub lhs: Vec<f64>,
    pub residual: f64,
    /// `max |F_analytic − F_projected|` over profiles and radii.
    pub profile_residual: f64,
}

impl FiveTermReport {
    pub fn rhs(&self, i: usize) -> f64 {
        self.a1_sq[i] + self.a2_sq[i] + self.a3_sq[i] + self.a4_sq[i] + self.a5[i]
    }
}

/// Evaluates both sides of the five-term identity; `route` selects how the
/// transforms on the left are applied.
pub fn five_term(f: &BandLimitedFunction, radii: &[f64], route: OperatorRoute) -> Result<FiveTermReport> {
    let d = special_d(f)?;
    check_radii(radii)?;
    let total = max_total(f);
    let rule = complex_sphere_rule(d, total as usize + 4)?;
    let sphere: Vec<Vec<f64>> = (0..rule.len()).map(|i| rule.node(i).to_vec()).collect();

    let mut lhs = Vec::with_capacity(radii.len());
    for &r in radii {
        let pts: Vec<Vec<f64>> = sphere.iter().map(|x| x.iter().map(|v| r * v).collect()).collect();
        let mut acc = 0.0;
        for j in 0..d {
            for conjugate in [false, true] {
                let vals = special_riesz(j, f, route, &pts, conjugate)?;
                acc += vals.iter().zip(rule.weights()).map(|(v, w)| v.norm_sqr() * w).sum::<f64>();
            }
        }
        lhs.push(acc);
    }

    let h = half_inverse(f, OperatorRoute::Spectral)?;
    let projected = bigraded_project(|p| h.eval(p).unwrap_or(Complex64::new(f64::NAN, 0.0)), d, total, radii)?;
    let mut profile_residual = 0.0f64;
    for ((m, n, j), prof) in analytic_profiles(&h, radii)? {
        if let Some(proj) = projected.profile(m, n, j) {
            for (a, b) in proj.iter().zip(&prof) {
                profile_residual = profile_residual.max((a - b.0).norm());
            }
        }
    }
    let [a1, a2, a3, a4, a5] = five_term_terms(f, radii, lambda_alternate)?;
    let mut report = FiveTermReport { d, radii: radii.to_vec(), a1_sq: a1, a2_sq: a2, a3_sq: a3, a4_sq: a4, a5, lhs, residual: 0.0, profile_residual };
    report.residual = (0..radii.len()).map(|i| (report.lhs[i] - report.rhs(i)).abs()).fold(0.0, f64::max);
    Ok(report)
}

type ProfileKey = (u32, u32, usize);
/// Values and r-derivatives on the radii.
type ProfilePair = Vec<(Complex64, Complex64)>;

/// `F^j_{m,n}(r) = Σ_k c λ^{−1/2} φ_k^δ(r) r^{m+n}` and its r-derivative, for
/// `h = L^{−1/2} f` already applied.
fn analytic_profiles(h: &BandLimitedFunction, radii: &[f64]) -> Result<Vec<(ProfileKey, ProfilePair)>> {
    let d = special_d(h)?;
    let mut groups: std::collections::BTreeMap<ProfileKey, Vec<(u32, Complex64)>> = Default::default();
    for (l, &c) in h.coeffs() {
        if let ModeLabel::Special { k, m, n, j } = *l {
            groups.entry((m, n, j)).or_default().push((k, c));
        }
    }
    Ok(groups
        .into_iter()
        .map(|((m, n, j), modes)| {
            let del = delta(d, m, n);
            let nn = (m + n) as i32;
            let prof = radii
                .iter()
                .map(|&r| {
                    let mut fv = Complex64::new(0.0, 0.0);
                    let mut dv = Complex64::new(0.0, 0.0);
                    for &(k, c) in &modes {
                        let p = phi_small(k, del, r);
                        let dp = phi_small_deriv(k, del, r);
                        fv += c * p * r.powi(nn);
                        dv += c * (dp * r.powi(nn) + if nn > 0 { f64::from(nn as u32) * p * r.powi(nn - 1) } else { 0.0 });
                    }
                    (fv, dv)
                })
                .collect();
            ((m, n, j), prof)
        })
        .collect())
}

/// Per-radius `A_1², A_2², A_3², A_4², A_5` built from the profiles of
/// `F = L^{−1/2} f`; `lambda(d, m, n)` supplies the tangential constants.
pub fn five_term_terms(f: &BandLimitedFunction, radii: &[f64], lambda: fn(usize, u32, u32) -> f64) -> Result<[Vec<f64>; 5]> {
    let d = special_d(f)?;
    check_radii(radii)?;
    let h = half_inverse(f, OperatorRoute::Spectral)?;
    let len = radii.len();
    let mut out = [vec![0.0; len], vec![0.0; len], vec![0.0; len], vec![0.0; len], vec![0.0; len]];
    for ((m, n, _), prof) in analytic_profiles(&h, radii)? {
        let lmn = lambda(d, m, n);
        let lnm = lambda(d, n, m);
        for (i, (&r, &(fv, dv))) in radii.iter().zip(&prof).enumerate() {
            out[0][i] += (0.5 * (dv + 0.5 * r * fv)).norm_sqr();
            out[1][i] += (0.5 * (dv - 0.5 * r * fv)).norm_sqr();
            out[2][i] += lmn * fv.norm_sqr() / (r * r);
            out[3][i] += lnm * fv.norm_sqr() / (r * r);
            out[4][i] += 0.5 * (f64::from(m) - f64::from(n)) * fv.norm_sqr();
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(k: u32, m: u32, n: u32, j: usize) -> ModeLabel {
        ModeLabel::Special { k, m, n, j }
    }

    fn input(d: usize, modes: &[(ModeLabel, f64, f64)]) -> BandLimitedFunction {
        BandLimitedFunction::from_coeffs(Basis::SpecialHermite { d }, modes.iter().map(|(l, a, b)| (l.clone(), Complex64::new(*a, *b)))).unwrap()
    }

    const RADII: [f64; 4] = [0.3, 0.8, 1.4, 2.0];

    #[test]
    fn eigen_input_profile_is_scaled() {
        let f = input(1, &[(sp(2, 1, 0, 1), 1.0, 0.0)]);
        let rep = special_f_coeffs(&f, &RADII).unwrap();
        let raw = bigraded_project(|p| f.eval(p).unwrap(), 1, 1, &RADII).unwrap();
        let scale = (2.0 * 2.0 + 2.0 + 1.0f64).powf(-0.5);
        for (a, b) in rep.spectral.profile(1, 0, 1).unwrap().iter().zip(raw.profile(1, 0, 1).unwrap()) {
            assert!((a - b * scale).norm() < 1e-12);
        }
        assert!(rep.residual < 1e-8, "{}", rep.residual);
    }

    #[test]
    fn two_routes_agree_on_mixed_input() {
        let f = input(1, &[(sp(0, 0, 0, 1), 0.7, 0.0), (sp(1, 0, 2, 1), -0.3, 0.4), (sp(1, 2, 0, 1), 0.2, 0.1)]);
        let rep = special_f_coeffs(&f, &RADII).unwrap();
        assert!(rep.residual < 1e-8, "{}", rep.residual);
    }

    #[test]
    fn semigroup_projection_needs_the_twist() {
        let f = input(1, &[(sp(1, 1, 0, 1), 1.0, 0.0), (sp(0, 0, 2, 1), 0.5, -0.5)]);
        for t in [0.1, 0.7] {
            let rep = semigroup_projection(&f, t, &RADII, true).unwrap();
            assert!(rep.residual < 1e-9, "{}", rep.residual);
            assert!(semigroup_projection(&f, t, &RADII, false).unwrap().residual > 1e-3);
        }
        let diag = input(2, &[(sp(1, 1, 1, 2), 1.0, 0.0)]);
        let a = semigroup_projection(&diag, 0.4, &RADII, true).unwrap();
        let b = semigroup_projection(&diag, 0.4, &RADII, false).unwrap();
        assert!(a.residual < 1e-9 && b.residual < 1e-9);
    }

    #[test]
    fn circle_identity_forms() {
        let dir = [Complex64::from_polar(1.0, 0.7)];
        for (r, s, t) in [(0.5, 1.2, 0.3), (1.5, 0.7, 1.0), (2.0, 2.0, 0.2)] {
            let (l, rr) = circle_identity((1, 1, 0, 1), r, s, t, &dir, AngularForm::Harmonic).unwrap();
            assert!((l - rr).norm() < 1e-7 * (1.0 + rr.norm()), "{l} {rr}");
            let (l, rr) = circle_identity((1, 1, 0, 1), r, s, t, &dir, AngularForm::Conjugate).unwrap();
            assert!((l - rr).norm() > 1e-3 * rr.norm());
            let (l, rr) = circle_identity((1, 0, 0, 1), r, s, t, &dir, AngularForm::Conjugate).unwrap();
            assert!((l - rr).norm() < 1e-7 * (1.0 + rr.norm()));
        }
    }

    #[test]
    fn five_term_holds() {
        let f = input(1, &[(sp(1, 1, 0, 1), 1.0, 0.0)]);
        let rep = five_term(&f, &RADII, OperatorRoute::Spectral).unwrap();
        assert!(rep.residual < 1e-10, "{rep:?}");
        assert!(rep.profile_residual < 1e-10);
        assert!(rep.a5.iter().all(|v| *v >= 0.0));
        let radial = input(1, &[(sp(0, 0, 0, 1), 1.0, 0.0), (sp(2, 0, 0, 1), -0.5, 0.0)]);
        let rep = five_term(&radial, &RADII, OperatorRoute::Spectral).unwrap();
        assert!(rep.residual < 1e-10);
        assert!(rep.a3_sq.iter().chain(&rep.a4_sq).chain(&rep.a5).all(|v| *v == 0.0));
        let mixed = input(1, &[(sp(0, 3, 0, 1), 0.4, 0.0), (sp(1, 0, 2, 1), 0.3, -0.2), (sp(2, 0, 1, 1), 0.1, 0.5)]);
        assert!(five_term(&mixed, &RADII, OperatorRoute::Spectral).unwrap().residual < 1e-10);
        let two = input(2, &[(sp(1, 1, 0, 2), 0.4, 0.0), (sp(0, 1, 2, 3), 0.3, -0.2)]);
        assert!(five_term(&two, &RADII, OperatorRoute::Spectral).unwrap().residual < 1e-10);
    }

    #[test]
    fn five_term_with_convolution_route() {
        let f = input(1, &[(sp(1, 1, 0, 1), 1.0, 0.0), (sp(0, 0, 2, 1), 0.3, 0.2)]);
        let rep = five_term(&f, &[0.5, 1.5], OperatorRoute::TwistedConvolution).unwrap();
        assert!(rep.residual < 1e-7, "{rep:?}");
    }
}
