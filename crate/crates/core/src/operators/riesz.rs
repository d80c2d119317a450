//! Ladder operators and the Hermite and Laguerre Riesz transforms.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::band::{BandLimitedFunction, Basis, ModeLabel, OperatorRoute};
use super::heat::half_inverse;
use super::singular::PolarPlan;
use crate::error::{invalid, Result};
use crate::kernels::{hermite_riesz_adjoint_kernel, hermite_riesz_kernel, SingularOptions};
use crate::specfun::psi_raise;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ladder {
    /// A_j = ∂_j + x_j
    Annihilate,
    /// A_j* = −∂_j + x_j
    Create,
}

fn hermite_dim(f: &BandLimitedFunction) -> Result<usize> {
    match f.basis() {
        Basis::Hermite { d } => Ok(d),
        b => invalid(format!("ladder operators need a Hermite basis, got {b:?}")),
    }
}

/// `A_j` or `A_j*` (0-based `j`) on a Hermite expansion.
pub fn ladder(j: usize, dir: Ladder, f: &BandLimitedFunction) -> Result<BandLimitedFunction> {
    let d = hermite_dim(f)?;
    if j >= d {
        return invalid(format!("ladder index {j} out of range for d = {d}"));
    }
    let mut out = BandLimitedFunction::zero(f.basis())?;
    for (l, &c) in f.coeffs() {
        if let ModeLabel::Hermite { mu } = l {
            let mj = f64::from(mu.get(j));
            let (target, factor) = match dir {
                Ladder::Annihilate => (mu.shifted(j, false), (2.0 * mj).sqrt()),
                Ladder::Create => (mu.shifted(j, true), (2.0 * mj + 2.0).sqrt()),
            };
            if let Some(nu) = target {
                out.add(ModeLabel::Hermite { mu: nu }, c * factor)?;
            }
        }
    }
    Ok(out)
}

/// `R_j f = A_j H^{−1/2} f` (or `R_j* f = A_j* H^{−1/2} f`) as an expansion.
pub fn hermite_riesz_spectral(j: usize, f: &BandLimitedFunction, adjoint: bool) -> Result<BandLimitedFunction> {
    let d = hermite_dim(f)?;
    if !adjoint {
        for (l, _) in f.coeffs() {
            if let ModeLabel::Hermite { mu } = l {
                let mult = 2.0 * f64::from(mu.get(j)) / (2.0 * f64::from(mu.order()) + d as f64);
                assert!(mult <= 1.0 + 1e-15, "Riesz multiplier exceeds one");
            }
        }
    }
    let h = half_inverse(f, OperatorRoute::Spectral)?;
    ladder(j, if adjoint { Ladder::Create } else { Ladder::Annihilate }, &h)
}

/// Sampled `R_j f` (or `R_j* f`), spectrally or by integrating the kernel.
///
/// The kernel route works in polar coordinates about each sample point and
/// fills the guarded ball of radius `1e−3(1+|x|)` by extrapolating the
/// antipodally paired radial integrand.
pub fn hermite_riesz(j: usize, f: &BandLimitedFunction, route: OperatorRoute, points: &[Vec<f64>], adjoint: bool) -> Result<Vec<Complex64>> {
    let d = hermite_dim(f)?;
    if j >= d {
        return invalid(format!("Riesz index {j} out of range for d = {d}"));
    }
    match route {
        OperatorRoute::Spectral => hermite_riesz_spectral(j, f, adjoint)?.synthesize(points),
        OperatorRoute::KernelIntegral => {
            let opts = SingularOptions::default();
            let level = match d {
                1 => 0,
                2 => 24,
                3 => 12,
                _ => 8,
            };
            let reach = 12.0 + (2.0 * f.cutoff() as f64).sqrt();
            points
                .iter()
                .map(|x| {
                    if x.len() != d {
                        return invalid("point dimension does not match the basis");
                    }
                    let xn = x.iter().map(|v| v * v).sum::<f64>().sqrt();
                    let eps = 1e-3 * (1.0 + xn) * (1.0 + 1e-9);
                    let plan = PolarPlan::new(d, eps, xn + reach, level, false)?;
                    let mut y = vec![0.0; d];
                    plan.integrate(|_, w| {
                        for k in 0..d {
                            y[k] = x[k] + w[k];
                        }
                        let kv = if adjoint { hermite_riesz_adjoint_kernel(j, x, &y, &opts)? } else { hermite_riesz_kernel(j, x, &y, &opts)? };
                        Ok(f.eval(&y)? * kv)
                    })
                })
                .collect()
        }
        _ => invalid(format!("route {route:?} is not available for Hermite Riesz transforms")),
    }
}

/// Sampled `(∂_r + r) L_α^{−1/2} g` for a Laguerre expansion.
pub fn laguerre_riesz(g: &BandLimitedFunction, points: &[f64]) -> Result<Vec<Complex64>> {
    let alpha = match g.basis() {
        Basis::Laguerre { alpha } => alpha,
        b => invalid(format!("Laguerre Riesz transform needs a Laguerre basis, got {b:?}"))?,
    };
    let h = half_inverse(g, OperatorRoute::Spectral)?;
    Ok(points
        .iter()
        .map(|&r| {
            h.coeffs()
                .map(|(l, &c)| match l {
                    ModeLabel::Laguerre { k } => c * psi_raise(*k, alpha, r),
                    _ => Complex64::new(0.0, 0.0),
                })
                .sum()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{hermite_fn, psi, MultiIndex};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn h(mu: Vec<u32>) -> ModeLabel {
        ModeLabel::Hermite { mu: MultiIndex::new(mu) }
    }
    fn one() -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    #[test]
    fn ladder_basics() {
        let b = Basis::Hermite { d: 2 };
        let g = BandLimitedFunction::mode(b, h(vec![0, 0])).unwrap();
        assert!(ladder(0, Ladder::Annihilate, &g).unwrap().is_empty());
        let up = ladder(1, Ladder::Create, &g).unwrap();
        assert!((up.coeff(&h(vec![0, 1])).re - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn ladder_constant_by_finite_differences() {
        // (d/dx + x) h_1 = √2 h_0
        let step = 1e-4;
        for &x in &[-1.3, 0.0, 0.4, 2.2] {
            let fd = (hermite_fn(1, x + step) - hermite_fn(1, x - step)) / (2.0 * step) + x * hermite_fn(1, x);
            assert!((fd - 2f64.sqrt() * hermite_fn(0, x)).abs() < 1e-7);
        }
    }

    #[test]
    fn number_operator_is_diagonal() {
        let b = Basis::Hermite { d: 2 };
        for mu in MultiIndex::all_up_to(2, 4) {
            let f = BandLimitedFunction::mode(b, ModeLabel::Hermite { mu: mu.clone() }).unwrap();
            let mut acc = BandLimitedFunction::zero(b).unwrap();
            for j in 0..2 {
                let a = ladder(j, Ladder::Annihilate, &ladder(j, Ladder::Create, &f).unwrap()).unwrap();
                let c = ladder(j, Ladder::Create, &ladder(j, Ladder::Annihilate, &f).unwrap()).unwrap();
                acc = acc.plus(&a).unwrap().plus(&c).unwrap();
            }
            let acc = acc.scaled(Complex64::new(0.5, 0.0));
            let expect = f.scaled(Complex64::new(2.0 * f64::from(mu.order()) + 2.0, 0.0));
            assert!(acc.max_coeff_diff(&expect) < 1e-13);
        }
    }

    #[test]
    fn riesz_ground_state_and_first_mode() {
        let b = Basis::Hermite { d: 2 };
        let g = BandLimitedFunction::mode(b, h(vec![0, 0])).unwrap();
        assert!(hermite_riesz_spectral(0, &g, false).unwrap().is_empty());
        let f = BandLimitedFunction::mode(b, h(vec![1, 0])).unwrap();
        let r = hermite_riesz_spectral(0, &f, false).unwrap();
        assert!((r.coeff(&h(vec![0, 0])).re - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn riesz_kernel_route_first_mode() {
        let b = Basis::Hermite { d: 2 };
        let f = BandLimitedFunction::mode(b, h(vec![1, 0])).unwrap();
        let pts = vec![vec![0.2, -0.3], vec![0.9, 0.5]];
        let s = hermite_riesz(0, &f, OperatorRoute::Spectral, &pts, false).unwrap();
        let k = hermite_riesz(0, &f, OperatorRoute::KernelIntegral, &pts, false).unwrap();
        for (a, c) in s.iter().zip(&k) {
            assert!((a - c).norm() < 1e-5, "{a} {c}");
        }
    }

    #[test]
    fn riesz_kernel_route_one_dim_and_adjoint() {
        let b = Basis::Hermite { d: 1 };
        let f = BandLimitedFunction::from_coeffs(b, [(h(vec![1]), one()), (h(vec![2]), Complex64::new(0.0, 0.5))]).unwrap();
        let pts = vec![vec![-0.7], vec![0.35]];
        for adjoint in [false, true] {
            let s = hermite_riesz(0, &f, OperatorRoute::Spectral, &pts, adjoint).unwrap();
            let k = hermite_riesz(0, &f, OperatorRoute::KernelIntegral, &pts, adjoint).unwrap();
            for (a, c) in s.iter().zip(&k) {
                assert!((a - c).norm() < 1e-5, "{adjoint}: {a} {c}");
            }
        }
    }

    #[test]
    fn spectral_contractivity() {
        let b = Basis::Hermite { d: 2 };
        let modes = b.modes(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let f = BandLimitedFunction::from_coeffs(
                b,
                modes.iter().map(|l| (l.clone(), Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))),
            )
            .unwrap();
            for j in 0..2 {
                assert!(hermite_riesz_spectral(j, &f, false).unwrap().norm_sq() <= f.norm_sq());
            }
        }
    }

    #[test]
    fn laguerre_riesz_values() {
        let b = Basis::Laguerre { alpha: 0.5 };
        let g0 = BandLimitedFunction::mode(b, ModeLabel::Laguerre { k: 0 }).unwrap();
        for v in laguerre_riesz(&g0, &[0.3, 1.0, 2.0]).unwrap() {
            assert!(v.norm() < 1e-15);
        }
        let g1 = BandLimitedFunction::mode(b, ModeLabel::Laguerre { k: 1 }).unwrap();
        let scale = (4.0f64 + 1.0 + 2.0).powf(-0.5);
        let step = 1e-4;
        for &r in &[0.3, 1.0, 2.0] {
            let fd = scale * ((psi(1, 0.5, r + step) - psi(1, 0.5, r - step)) / (2.0 * step) + r * psi(1, 0.5, r));
            let v = laguerre_riesz(&g1, &[r]).unwrap()[0];
            assert!((v.re - fd).abs() < 1e-7);
        }
    }

    proptest! {
        #[test]
        fn laguerre_riesz_is_linear(a in -2.0f64..2.0, b0 in -2.0f64..2.0, c1 in -2.0f64..2.0, r in 0.05f64..3.0) {
            let b = Basis::Laguerre { alpha: 1.5 };
            let f = BandLimitedFunction::from_coeffs(b, [(ModeLabel::Laguerre { k: 1 }, Complex64::new(b0, 0.0))]).unwrap();
            let g = BandLimitedFunction::from_coeffs(b, [(ModeLabel::Laguerre { k: 3 }, Complex64::new(c1, 0.0))]).unwrap();
            let lhs = laguerre_riesz(&f.scaled(Complex64::new(a, 0.0)).plus(&g).unwrap(), &[r]).unwrap()[0];
            let rhs = laguerre_riesz(&f, &[r]).unwrap()[0] * a + laguerre_riesz(&g, &[r]).unwrap()[0];
            prop_assert!((lhs - rhs).norm() < 1e-12);
        }
    }
}
