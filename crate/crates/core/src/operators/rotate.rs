//! Action of orthogonal and unitary matrices: `ρ(k)f(x) = f(k·x)`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::band::{from_complex, to_complex};
use crate::error::{invalid, Result};

const ORTHO_TOL: f64 = 1e-12;

pub fn check_orthogonal(k: &DMatrix<f64>) -> Result<()> {
    if !k.is_square() {
        return invalid("rotation matrix must be square");
    }
    let dev = (k.transpose() * k - DMatrix::identity(k.nrows(), k.nrows())).amax();
    if dev > ORTHO_TOL {
        return invalid(format!("matrix is not orthogonal (deviation {dev:.2e})"));
    }
    Ok(())
}

pub fn check_unitary(k: &DMatrix<Complex64>) -> Result<()> {
    if !k.is_square() {
        return invalid("unitary matrix must be square");
    }
    let dev = (k.adjoint() * k - DMatrix::identity(k.nrows(), k.nrows())).map(|c| c.norm()).max();
    if dev > ORTHO_TOL {
        return invalid(format!("matrix is not unitary (deviation {dev:.2e})"));
    }
    Ok(())
}

/// `x ↦ f(k·x)` for orthogonal `k`.
pub fn rotate_real<T, F: Fn(&[f64]) -> T>(k: &DMatrix<f64>, f: F) -> Result<impl Fn(&[f64]) -> T> {
    check_orthogonal(k)?;
    let k = k.clone();
    Ok(move |x: &[f64]| {
        let y = &k * DVector::from_column_slice(x);
        f(y.as_slice())
    })
}

/// `z ↦ f(k·z)` for unitary `k`, with points in `(x, y)` real coordinates.
pub fn rotate_complex<T, F: Fn(&[f64]) -> T>(k: &DMatrix<Complex64>, f: F) -> Result<impl Fn(&[f64]) -> T> {
    check_unitary(k)?;
    let k = k.clone();
    Ok(move |p: &[f64]| {
        let w = &k * DVector::from_vec(to_complex(p));
        f(&from_complex(w.as_slice()))
    })
}
