//! Funk–Hecke multipliers and the Hecke–Bochner transport of the Hermite
//! semigroup to Laguerre semigroups.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::constants::HECKE_BOCHNER_CD;
use crate::error::{invalid, Result};
use crate::kernels::{laguerre_heat, mehler, KernelRoute};
use crate::quadrature::{composite, gauss_jacobi, sphere_area, sphere_rule};
use crate::specfun::{gegenbauer_norm, real_spherical_basis, HarmonicBasisElement};

/// `|S^{d−2}| ∫_{−1}^{1} φ(u) P_m(u) (1−u²)^{(d−3)/2} du` with `P_m(1) = 1`.
pub fn funk_hecke<F: Fn(f64) -> f64>(phi: F, m: u32, d: usize) -> Result<f64> {
    if d < 2 {
        return invalid("Funk–Hecke needs d >= 2");
    }
    let e = 0.5 * (d as f64 - 3.0);
    let rule = gauss_jacobi(96, e, e)?;
    let mut acc = 0.0;
    for (u, w) in rule.iter1d() {
        acc += w * phi(u) * gegenbauer_norm(m as usize, d, u)?;
    }
    Ok(sphere_area(d - 1) * acc)
}

/// Largest `|∫ φ(x′·y′) Y(y′) dy′ − λ_m Y(x′)|` over the degree-m basis and
/// the given unit vectors, with the left side by brute-force sphere quadrature.
pub fn funk_hecke_check<F: Fn(f64) -> f64>(phi: F, m: u32, d: usize, points: &[Vec<f64>], level: usize) -> Result<f64> {
    let lambda = funk_hecke(&phi, m, d)?;
    let rule = sphere_rule(d, level)?;
    let mut worst = 0.0f64;
    for y in real_spherical_basis(d, m)?.iter() {
        for x in points {
            let lhs = rule.integrate(|w| phi(x.iter().zip(w).map(|(a, b)| a * b).sum()) * y.eval(w));
            worst = worst.max((lhs - lambda * y.eval(x)).abs());
        }
    }
    Ok(worst)
}

/// Nodes and weights on `S^{d−1}` in zonal coordinates about `omega`:
/// `η = u ω + √(1−u²) θ` with `θ` on the orthogonal `S^{d−2}`.
pub(crate) fn zonal_rule(omega: &[f64], n_u: usize, level: usize) -> Result<Vec<(Vec<f64>, f64)>> {
    let d = omega.len();
    if !(2..=4).contains(&d) {
        return invalid("zonal rule supports 2 <= d <= 4");
    }
    // orthonormal complement of ω
    let mut basis = DMatrix::<f64>::identity(d, d);
    basis.set_column(0, &nalgebra::DVector::from_column_slice(omega));
    let q = basis.qr().q();
    let complement: Vec<Vec<f64>> = (1..d).map(|k| q.column(k).iter().copied().collect()).collect();
    let circle: Vec<(Vec<f64>, f64)> =
        if d == 2 { vec![(vec![1.0], 1.0), (vec![-1.0], 1.0)] } else { sphere_rule(d - 1, level)?.iter().map(|(p, w)| (p.to_vec(), w)).collect() };
    let e = 0.5 * (d as f64 - 3.0);
    let ur = gauss_jacobi(n_u, e, e)?;
    let mut out = Vec::with_capacity(ur.len() * circle.len());
    for (u, wu) in ur.iter1d() {
        let s = (1.0 - u * u).max(0.0).sqrt();
        for (theta, wt) in &circle {
            let mut p: Vec<f64> = omega.iter().map(|o| u * o).collect();
            for (c, th) in complement.iter().zip(theta) {
                for k in 0..d {
                    p[k] += s * th * c[k];
                }
            }
            out.push((p, wu * wt));
        }
    }
    Ok(out)
}

/// Pointwise comparison of `e^{−tH}(gY)(rω)` with `r^m Y(ω) T_t^{α+m} g̃(r)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeckeBochnerReport {
    pub d: usize,
    pub m: u32,
    pub t: f64,
    /// Direction ω at which both sides are sampled, and Y(ω).
    pub omega: Vec<f64>,
    pub y_omega: f64,
    pub radii: Vec<f64>,
    pub lhs: Vec<f64>,
    pub rhs: Vec<f64>,
    pub ratios: Vec<f64>,
    /// Mean ratio over radii with a non-negligible right side.
    pub c_d: f64,
    /// (max − min)/|mean| of the ratios.
    pub spread: f64,
    /// Deviation of the calibrated constant from the pinned value.
    pub pinned_deviation: f64,
}

/// Evaluates both sides of the Hecke–Bochner transport for `f = g(|x|)Y(x/|x|)`.
///
/// The left side is a direct d-dimensional quadrature of the Mehler kernel in
/// zonal coordinates about ω; the right side integrates the Laguerre heat
/// kernel of type `d/2 − 1 + m` against `g̃ = r^{−m} g`.
pub fn hecke_bochner_hermite<G: Fn(f64) -> f64>(g: G, y: &HarmonicBasisElement, t: f64, radii: &[f64]) -> Result<HeckeBochnerReport> {
    if !(t > 0.0) {
        return invalid("time must be positive");
    }
    let d = y.d;
    let m = y.m;
    let alpha = 0.5 * d as f64 - 1.0 + f64::from(m);
    // direction where Y is large
    let probe = sphere_rule(d, 12)?;
    let omega: Vec<f64> = probe.iter().max_by(|a, b| y.eval(a.0).abs().total_cmp(&y.eval(b.0).abs())).map(|(p, _)| p.to_vec()).unwrap_or_else(|| vec![1.0; d]);
    let y_omega = y.eval(&omega);
    let breaks: Vec<f64> = (0..=56).map(|i| 0.25 * f64::from(i)).collect();
    let radial = composite(&breaks, 16)?;
    let zonal = zonal_rule(&omega, 80, (m as usize + 2).max(4))?;
    let zonal_y: Vec<(Vec<f64>, f64)> = zonal.iter().map(|(p, w)| (p.clone(), w * y.eval(p))).collect();
    let mut lhs = Vec::with_capacity(radii.len());
    let mut rhs = Vec::with_capacity(radii.len());
    for &r in radii {
        let x: Vec<f64> = omega.iter().map(|o| r * o).collect();
        let mut acc = 0.0;
        let mut yv = vec![0.0; d];
        for (s, ws) in radial.iter1d() {
            let gs = g(s);
            if gs == 0.0 {
                continue;
            }
            let mut inner = 0.0;
            for (eta, w) in &zonal_y {
                for k in 0..d {
                    yv[k] = s * eta[k];
                }
                inner += w * mehler(t, &x, &yv, KernelRoute::ClosedForm)?;
            }
            acc += ws * s.powi(d as i32 - 1) * gs * inner;
        }
        lhs.push(acc);
        let mut tr = 0.0;
        for (s, ws) in radial.iter1d() {
            tr += ws * laguerre_heat(t, r, s, alpha, KernelRoute::ClosedForm)? * g(s) * s.powi(-(m as i32)) * s.powf(2.0 * alpha + 1.0);
        }
        rhs.push(r.powi(m as i32) * y_omega * tr);
    }
    let scale = rhs.iter().fold(0.0f64, |a, b| a.max(b.abs()));
    let ratios: Vec<f64> = lhs.iter().zip(&rhs).map(|(a, b)| if b.abs() > 1e-10 * scale { a / b } else { f64::NAN }).collect();
    let good: Vec<f64> = ratios.iter().copied().filter(|v| v.is_finite()).collect();
    let c_d = good.iter().sum::<f64>() / good.len().max(1) as f64;
    let (lo, hi) = good.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    Ok(HeckeBochnerReport {
        d,
        m,
        t,
        omega,
        y_omega,
        radii: radii.to_vec(),
        lhs,
        rhs,
        ratios,
        c_d,
        spread: (hi - lo) / c_d.abs(),
        pinned_deviation: (c_d - HECKE_BOCHNER_CD).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn total_mass_and_orthogonality() {
        assert!((funk_hecke(|_| 1.0, 0, 3).unwrap() - 4.0 * PI).abs() < 1e-12);
        assert!((funk_hecke(|_| 1.0, 0, 2).unwrap() - 2.0 * PI).abs() < 1e-12);
        assert!(funk_hecke(|u| u, 3, 3).unwrap().abs() < 1e-14);
        // λ_1 for φ(u) = u on S² is 4π/3
        assert!((funk_hecke(|u| u, 1, 3).unwrap() - 4.0 * PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn brute_force_sphere_side() {
        let pts: Vec<Vec<f64>> = sphere_rule(3, 3).unwrap().iter().take(20).map(|(p, _)| p.to_vec()).collect();
        assert!(funk_hecke_check(|u| u, 1, 3, &pts, 10).unwrap() < 1e-9);
        assert!(funk_hecke_check(|u| (1.3 * u).exp(), 2, 4, &pts.iter().map(|p| vec![p[0], p[1], 0.0, p[2]]).collect::<Vec<_>>(), 14).unwrap() < 1e-9);
    }

    #[test]
    fn zonal_rule_integrates_polynomials() {
        let omega = [0.6, 0.0, 0.8];
        let rule = zonal_rule(&omega, 20, 10).unwrap();
        let mass: f64 = rule.iter().map(|(_, w)| w).sum();
        assert!((mass - 4.0 * PI).abs() < 1e-12);
        let second: f64 = rule.iter().map(|(p, w)| w * p[1] * p[1]).sum();
        assert!((second - 4.0 * PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn eigen_input_ratio_is_one() {
        for m in 0..=2u32 {
            let y = real_spherical_basis(3, m).unwrap()[0].clone();
            let radii = [0.2, 0.7, 1.5, 3.0];
            for t in [0.2, 0.5, 1.0] {
                let rep = hecke_bochner_hermite(|r| r.powi(m as i32) * (-0.5 * r * r).exp(), &y, t, &radii).unwrap();
                assert!(rep.spread < 1e-8, "m={m} t={t}: {:?}", rep.ratios);
                assert!(rep.pinned_deviation < 1e-8);
                let lam = (2 * m + 3) as f64;
                for (r, l) in radii.iter().zip(&rep.lhs) {
                    let expect = (-lam * t).exp() * r.powi(m as i32) * (-0.5 * r * r).exp() * rep.y_omega;
                    assert!((l - expect).abs() < 1e-9);
                }
            }
        }
    }
}
