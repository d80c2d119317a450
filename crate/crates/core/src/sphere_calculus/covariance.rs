//! Rotation covariance of first-order Riesz transforms.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::operators::{
    check_orthogonal, check_unitary, expand, from_complex, hermite_riesz, rotate_complex, rotate_real, special_riesz, to_complex, BandLimitedFunction, Basis,
    OperatorRoute,
};

/// Coefficient vector used on the right-hand side of the special Hermite
/// covariance identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CovarianceForm {
    /// `(k^{−1} w̄)_j`, which follows from the chain rule for `Z_j`.
    Inverse,
    /// `(k·w)_j`.
    Direct,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CovarianceReport {
    pub lhs: Vec<Complex64>,
    pub rhs: Vec<Complex64>,
    pub residual: f64,
}

fn report(lhs: Vec<Complex64>, rhs: Vec<Complex64>) -> CovarianceReport {
    let residual = lhs.iter().zip(&rhs).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    CovarianceReport { lhs, rhs, residual }
}

fn combine(coef: &[Complex64], parts: &[Vec<Complex64>]) -> Vec<Complex64> {
    let len = parts.first().map_or(0, Vec::len);
    (0..len).map(|i| coef.iter().zip(parts).map(|(c, p)| c * p[i]).sum()).collect()
}

/// `Σ_j u_j R_j f(k·x)` against `Σ_j (k^{−1}u)_j R_j(f∘k)(x)`, where `f∘k`
/// is re-expanded by quadrature.
pub fn rotation_covariance_hermite(
    f: &BandLimitedFunction,
    k: &DMatrix<f64>,
    u: &[f64],
    points: &[Vec<f64>],
    route: OperatorRoute,
) -> Result<CovarianceReport> {
    let Basis::Hermite { d } = f.basis() else {
        return invalid("expected a Hermite expansion");
    };
    check_orthogonal(k)?;
    if k.nrows() != d || u.len() != d {
        return invalid("rotation and direction must match the dimension");
    }
    let moved: Vec<Vec<f64>> = points.iter().map(|x| (k * DVector::from_column_slice(x)).as_slice().to_vec()).collect();
    let lhs_parts = (0..d).map(|j| hermite_riesz(j, f, route, &moved, false)).collect::<Result<Vec<_>>>()?;
    let uc: Vec<Complex64> = u.iter().map(|v| Complex64::new(*v, 0.0)).collect();
    let lhs = combine(&uc, &lhs_parts);

    let rotated = expand(rotate_real(k, |x: &[f64]| f.eval(x).unwrap_or(Complex64::new(f64::NAN, 0.0)))?, f.basis(), f.cutoff())?;
    let coef = k.transpose() * DVector::from_column_slice(u);
    let coef: Vec<Complex64> = coef.iter().map(|v| Complex64::new(*v, 0.0)).collect();
    let rhs_parts = (0..d).map(|j| hermite_riesz(j, &rotated, route, points, false)).collect::<Result<Vec<_>>>()?;
    Ok(report(lhs, combine(&coef, &rhs_parts)))
}

/// `Σ_j w̄_j S_j f(k·z)` against `Σ_j c_j S_j(f∘k)(z)` with `c` chosen by
/// `form`. Points are in `(x, y)` coordinates.
pub fn rotation_covariance_special(
    f: &BandLimitedFunction,
    k: &DMatrix<Complex64>,
    w: &[Complex64],
    points: &[Vec<f64>],
    route: OperatorRoute,
    form: CovarianceForm,
) -> Result<CovarianceReport> {
    let Basis::SpecialHermite { d } = f.basis() else {
        return invalid("expected a special Hermite expansion");
    };
    check_unitary(k)?;
    if k.nrows() != d || w.len() != d {
        return invalid("unitary and direction must match the dimension");
    }
    let moved: Vec<Vec<f64>> = points.iter().map(|p| from_complex((k * DVector::from_vec(to_complex(p))).as_slice())).collect();
    let lhs_parts = (0..d).map(|j| special_riesz(j, f, route, &moved, false)).collect::<Result<Vec<_>>>()?;
    let wbar: Vec<Complex64> = w.iter().map(|c| c.conj()).collect();
    let lhs = combine(&wbar, &lhs_parts);

    let rotated = expand(rotate_complex(k, |p: &[f64]| f.eval(p).unwrap_or(Complex64::new(f64::NAN, 0.0)))?, f.basis(), f.cutoff())?;
    let coef = match form {
        CovarianceForm::Inverse => k.adjoint() * DVector::from_vec(wbar),
        CovarianceForm::Direct => k * DVector::from_column_slice(w),
    };
    let rhs_parts = (0..d).map(|j| special_riesz(j, &rotated, route, points, false)).collect::<Result<Vec<_>>>()?;
    Ok(report(lhs, combine(coef.as_slice(), &rhs_parts)))
}
