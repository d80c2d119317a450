use hermite_riesz::operators::{
    fd_hermite, fd_laguerre, fd_special, hermite_riesz, hermite_riesz_spectral, special_riesz, to_complex, twisted_convolve, BandLimitedFunction, Basis,
    ModeLabel, OperatorRoute, TwistedOptions,
};
use hermite_riesz::specfun::{laguerre_phi_fock, MultiIndex};
use hermite_riesz::sphere_calculus::{rotation_covariance_hermite, rotation_covariance_special, CovarianceForm};
use hermite_riesz::Result;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

use super::{worse, Collector};

const FD_STEP: f64 = 1e-3;
const EIGEN: &str = "eigenfunction equation with the stated eigenvalue";

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1e-3)
}

fn random_input(b: Basis, cutoff: u32, rng: &mut ChaCha8Rng) -> Result<BandLimitedFunction> {
    let modes = b.modes(cutoff)?;
    BandLimitedFunction::from_coeffs(b, modes.into_iter().map(|l| (l, Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))))
}

/// Orthogonal factor of a random matrix, with a column flipped if needed so that det = 1.
fn random_rotation(d: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let a = DMatrix::from_fn(d, d, |_, _| rng.random_range(-1.0..1.0));
    let mut q = a.qr().q();
    if q.determinant() < 0.0 {
        q.column_mut(0).neg_mut();
    }
    q
}

fn random_unitary(d: usize, rng: &mut ChaCha8Rng) -> DMatrix<Complex64> {
    let a = DMatrix::from_fn(d, d, |_, _| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    a.qr().q()
}

fn unit_real(d: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let v: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0..1.0)).collect();
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.into_iter().map(|x| x / n).collect()
}

fn unit_complex(d: usize, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..d).map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
    let n = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|x| x / n).collect()
}

fn covariance(c: &mut Collector<'_>, dims: &[usize], rng: &mut ChaCha8Rng) -> Result<()> {
    const HERMITE: &str = "Σ_j u_j R_j f(k·x) = Σ_j (k^{−1}u)_j R_j(f∘k)(x)";
    const SPECIAL: &str = "Σ_j w̄_j S_j f(k·z) = Σ_j (k^{−1}w̄)_j S_j(f∘k)(z)";
    const DIRECT: &str = "Σ_j w̄_j S_j f(k·z) = Σ_j (k·w)_j S_j(f∘k)(z)";
    for &d in dims.iter().filter(|d| (2..=3).contains(*d)) {
        let f = random_input(Basis::Hermite { d }, 3, rng)?;
        let scale = f.norm_sq().sqrt();
        let pts: Vec<Vec<f64>> = (0..3).map(|_| (0..d).map(|_| rng.random_range(-1.5..1.5)).collect()).collect();
        let mut res = 0.0f64;
        for _ in 0..4 {
            let (k, u) = (random_rotation(d, rng), unit_real(d, rng));
            res = worse(res, rotation_covariance_hermite(&f, &k, &u, &pts, OperatorRoute::Spectral)?.residual / scale);
        }
        c.identity(format!("hermite_rotation_covariance_d{d}"), HERMITE, res, 1e-5);
        if d == 2 {
            let (k, u) = (random_rotation(d, rng), unit_real(d, rng));
            let res = rotation_covariance_hermite(&f, &k, &u, &pts[..2], OperatorRoute::KernelIntegral)?.residual / scale;
            c.identity("hermite_rotation_covariance_kernel_route_d2", HERMITE, res, 1e-5);
        }
    }
    let mut direct = 0.0f64;
    for d in [1, 2] {
        let f = random_input(Basis::SpecialHermite { d }, 2, rng)?;
        let scale = f.norm_sq().sqrt();
        let pts: Vec<Vec<f64>> = (0..3).map(|_| (0..2 * d).map(|_| rng.random_range(-1.2..1.2)).collect()).collect();
        let mut res = 0.0f64;
        for _ in 0..3 {
            let (k, w) = (random_unitary(d, rng), unit_complex(d, rng));
            res = worse(res, rotation_covariance_special(&f, &k, &w, &pts, OperatorRoute::Spectral, CovarianceForm::Inverse)?.residual / scale);
            direct = worse(direct, rotation_covariance_special(&f, &k, &w, &pts, OperatorRoute::Spectral, CovarianceForm::Direct)?.residual / scale);
        }
        c.identity(format!("special_unitary_covariance_d{d}"), SPECIAL, res, 1e-5);
    }
    let f = random_input(Basis::SpecialHermite { d: 1 }, 2, rng)?;
    let k = DMatrix::from_element(1, 1, Complex64::from_polar(1.0, 0.9));
    let w = [Complex64::new(1.0, 0.0)];
    let pts = vec![vec![0.4, 0.3], vec![-1.0, 0.6]];
    let scale = f.norm_sq().sqrt();
    let res = rotation_covariance_special(&f, &k, &w, &pts, OperatorRoute::TwistedConvolution, CovarianceForm::Inverse)?.residual / scale;
    c.identity("special_circle_covariance_twisted_route_d1", SPECIAL, res, 1e-5);
    direct = worse(direct, rotation_covariance_special(&f, &k, &w, &pts, OperatorRoute::Spectral, CovarianceForm::Direct)?.residual / scale);
    c.observe("special_covariance_direct_form", DIRECT, direct, "largest residual relative to ‖f‖₂ with the coefficient vector k·w");
    Ok(())
}

pub(super) fn run(c: &mut Collector<'_>) -> Result<()> {
    let dims = c.dims(&[1, 2, 3]);
    let mut rng = ChaCha8Rng::seed_from_u64(c.cfg.seed);
    let probe = [0.37, -0.81, 1.13];
    for &d in &dims {
        let b = Basis::Hermite { d };
        let mut res = 0.0f64;
        for mu in MultiIndex::all_up_to(d, 4) {
            let label = ModeLabel::Hermite { mu };
            let f = BandLimitedFunction::mode(b, label.clone())?;
            let x = &probe[..d];
            let v = fd_hermite(|p| f.eval(p).unwrap_or(Complex64::new(f64::NAN, 0.0)), x, FD_STEP);
            res = worse(res, rel(v, f.eval(x)? * b.eigenvalue(&label)));
        }
        c.identity(format!("hermite_fd_eigen_d{d}"), EIGEN, res, 1e-6);
    }
    let mut res = 0.0f64;
    for alpha in [0.0, 0.5, 1.5] {
        let b = Basis::Laguerre { alpha };
        for k in 0..=4 {
            let label = ModeLabel::Laguerre { k };
            let f = BandLimitedFunction::mode(b, label.clone())?;
            for r in [0.45, 1.3] {
                let v = fd_laguerre(|s| f.eval(&[s]).unwrap_or(Complex64::new(f64::NAN, 0.0)), alpha, r, FD_STEP);
                res = worse(res, rel(v, f.eval(&[r])? * b.eigenvalue(&label)));
            }
        }
    }
    c.identity("laguerre_fd_eigen", EIGEN, res, 1e-6);
    let b = Basis::SpecialHermite { d: 1 };
    let mut res = 0.0f64;
    for label in b.modes(4)? {
        let f = BandLimitedFunction::mode(b, label.clone())?;
        for p in [[0.6, -0.4], [1.1, 0.9]] {
            let v = fd_special(|q| f.eval(q).unwrap_or(Complex64::new(f64::NAN, 0.0)), &p, FD_STEP);
            res = worse(res, rel(v, f.eval(&p)? * b.eigenvalue(&label)));
        }
    }
    c.identity("special_fd_eigen_d1", EIGEN, res, 1e-6);

    const ROUTE: &str = "R_j = A_j H^{-1/2}: spectral multiplier equals kernel integral";
    for &d in dims.iter().filter(|d| **d <= 2) {
        let b = Basis::Hermite { d };
        let f = random_input(b, 3, &mut rng)?;
        let pts: Vec<Vec<f64>> = (0..3).map(|_| (0..d).map(|_| rng.random_range(-1.5..1.5)).collect()).collect();
        let scale = f.norm_sq().sqrt();
        for adjoint in [false, true] {
            let mut res = 0.0f64;
            for j in 0..d {
                let s = hermite_riesz(j, &f, OperatorRoute::Spectral, &pts, adjoint)?;
                let k = hermite_riesz(j, &f, OperatorRoute::KernelIntegral, &pts, adjoint)?;
                res = s.iter().zip(&k).map(|(a, b)| (a - b).norm() / scale).fold(res, worse);
            }
            let tag = if adjoint { "adjoint_" } else { "" };
            c.identity(format!("hermite_riesz_{tag}routes_d{d}"), ROUTE, res, 1e-5);
        }
        let mut res = 0.0f64;
        for _ in 0..100 {
            let f = random_input(b, 3, &mut rng)?;
            for j in 0..d {
                res = worse(res, (hermite_riesz_spectral(j, &f, false)?.norm_sq() - f.norm_sq()).max(0.0));
            }
        }
        c.fixed(format!("hermite_riesz_contraction_d{d}"), "‖R_j f‖₂ ≤ ‖f‖₂", res, 0.0);
    }

    let phi = |k: u32| move |p: &[f64]| Complex64::new(laguerre_phi_fock(k, p.len() / 2, &to_complex(p)), 0.0);
    let pts = vec![vec![0.0, 0.0], vec![0.5, -0.3], vec![1.2, 0.8], vec![-2.0, 0.4]];
    let mut res = 0.0f64;
    for k in 0..=3u32 {
        for l in 0..=3u32 {
            let v = twisted_convolve(phi(k), phi(l), 1, &pts, &TwistedOptions::default())?;
            for (p, val) in pts.iter().zip(v) {
                let expect = if k == l { phi(k)(p) } else { Complex64::new(0.0, 0.0) };
                res = worse(res, (val / (2.0 * PI) - expect).norm());
            }
        }
    }
    c.identity("twisted_projections_d1", "(2π)^{-d} φ_k × φ_l = δ_kl φ_k", res, 1e-7);
    let v = twisted_convolve(phi(0), phi(0), 1, &[vec![0.0, 0.0]], &TwistedOptions::default())?;
    c.identity("twisted_gaussian_value_d1", "φ_0 × φ_0(0) = 2π", (v[0] - 2.0 * PI).norm(), 1e-9);

    let f = random_input(b, 2, &mut rng)?;
    let pts = vec![vec![0.4, 0.3], vec![-0.9, 0.6]];
    let scale = f.norm_sq().sqrt();
    let mut res = 0.0f64;
    for conjugate in [false, true] {
        let s = special_riesz(0, &f, OperatorRoute::Spectral, &pts, conjugate)?;
        let t = special_riesz(0, &f, OperatorRoute::TwistedConvolution, &pts, conjugate)?;
        res = s.iter().zip(&t).map(|(a, b)| (a - b).norm() / scale).fold(res, worse);
    }
    c.identity("special_riesz_routes_d1", "S_j = Z_j L^{-1/2}: spectral equals twisted convolution", res, 1e-5);
    covariance(c, &dims, &mut rng)
}
