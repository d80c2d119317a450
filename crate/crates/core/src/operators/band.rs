//! Band-limited functions: finite expansions in orthonormal eigenmodes.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::PI;

use crate::error::{invalid, Error, Result};
use crate::quadrature::{complex_sphere_rule, gauss_hermite, gauss_laguerre};
use crate::specfun::{bigraded_basis, hermite_fns, phi_small, psi, MultiIndex};

/// Coordinate system of a band-limited function.
///
/// Points are real coordinate slices: `x ∈ ℝ^d` for Hermite, `[r]` for
/// Laguerre, and `(x_1..x_d, y_1..y_d)` with `z_j = x_j + i y_j` for the
/// special Hermite setting.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Basis {
    Hermite { d: usize },
    Laguerre { alpha: f64 },
    SpecialHermite { d: usize },
}

/// Label of an orthonormal eigenmode.
///
/// Special Hermite modes are `φ_k^δ(|z|) P(z)` with P a bigraded solid
/// harmonic of bidegree (m, n), δ = d+m+n−1, and eigenvalue 2(k+m)+d.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModeLabel {
    Hermite { mu: MultiIndex },
    Laguerre { k: u32 },
    Special { k: u32, m: u32, n: u32, j: usize },
}

/// Route selector shared by the operators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OperatorRoute {
    Spectral,
    KernelIntegral,
    TwistedConvolution,
    Subordination,
}

/// Largest bidegree m+n carried by special Hermite modes.
pub const MAX_BIDEGREE: u32 = 6;

impl Basis {
    /// Length of a point slice in this coordinate system.
    pub fn point_dim(&self) -> usize {
        match *self {
            Basis::Hermite { d } => d,
            Basis::Laguerre { .. } => 1,
            Basis::SpecialHermite { d } => 2 * d,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Basis::Hermite { d: 0 } => invalid("Hermite dimension must be positive"),
            Basis::Laguerre { alpha } if !(alpha >= -0.5) => invalid("Laguerre type must be >= -1/2"),
            Basis::SpecialHermite { d } if !(1..=2).contains(&d) => Err(Error::UnsupportedDimension { d, supported: "1..=2" }),
            _ => Ok(()),
        }
    }

    fn check_label(&self, label: &ModeLabel) -> Result<()> {
        match (self, label) {
            (Basis::Hermite { d }, ModeLabel::Hermite { mu }) if mu.dim() == *d => Ok(()),
            (Basis::Laguerre { .. }, ModeLabel::Laguerre { .. }) => Ok(()),
            (Basis::SpecialHermite { d }, ModeLabel::Special { m, n, j, .. }) => {
                let count = bigraded_basis(*d, *m, *n)?.len();
                if *j >= 1 && *j <= count {
                    Ok(())
                } else {
                    invalid(format!("no bigraded harmonic ({m},{n}) with index {j}"))
                }
            }
            _ => invalid(format!("mode {label:?} does not belong to basis {self:?}")),
        }
    }

    /// Eigenvalue of the generating operator on a mode.
    pub fn eigenvalue(&self, label: &ModeLabel) -> f64 {
        match (self, label) {
            (Basis::Hermite { d }, ModeLabel::Hermite { mu }) => 2.0 * f64::from(mu.order()) + *d as f64,
            (Basis::Laguerre { alpha }, ModeLabel::Laguerre { k }) => 4.0 * f64::from(*k) + 2.0 * alpha + 2.0,
            (Basis::SpecialHermite { d }, ModeLabel::Special { k, m, .. }) => 2.0 * f64::from(k + m) + *d as f64,
            _ => f64::NAN,
        }
    }

    /// Level used for cutoffs: |μ|, k, or k+m+n.
    pub fn level(&self, label: &ModeLabel) -> u32 {
        match label {
            ModeLabel::Hermite { mu } => mu.order(),
            ModeLabel::Laguerre { k } => *k,
            ModeLabel::Special { k, m, n, .. } => k + m + n,
        }
    }

    /// All modes with level ≤ cutoff, in label order.
    pub fn modes(&self, cutoff: u32) -> Result<Vec<ModeLabel>> {
        self.validate()?;
        Ok(match *self {
            Basis::Hermite { d } => MultiIndex::all_up_to(d, cutoff).into_iter().map(|mu| ModeLabel::Hermite { mu }).collect(),
            Basis::Laguerre { .. } => (0..=cutoff).map(|k| ModeLabel::Laguerre { k }).collect(),
            Basis::SpecialHermite { d } => {
                let mut out = Vec::new();
                for total in 0..=cutoff.min(MAX_BIDEGREE) {
                    for m in 0..=total {
                        let n = total - m;
                        let count = bigraded_basis(d, m, n)?.len();
                        for j in 1..=count {
                            for k in 0..=(cutoff - total) {
                                out.push(ModeLabel::Special { k, m, n, j });
                            }
                        }
                    }
                }
                out.sort();
                out
            }
        })
    }

    /// Value of the mode at a point.
    pub fn mode_value(&self, label: &ModeLabel, point: &[f64]) -> Result<Complex64> {
        match (self, label) {
            (Basis::Hermite { .. }, ModeLabel::Hermite { mu }) => {
                let v: f64 = mu.0.iter().zip(point).map(|(&k, &x)| hermite_fns(k as usize, x)[k as usize]).product();
                Ok(Complex64::new(v, 0.0))
            }
            (Basis::Laguerre { alpha }, ModeLabel::Laguerre { k }) => Ok(Complex64::new(psi(*k, *alpha, point[0]), 0.0)),
            (Basis::SpecialHermite { d }, ModeLabel::Special { k, m, n, j }) => {
                let z = to_complex(point);
                let r = z.iter().map(|w| w.norm_sqr()).sum::<f64>().sqrt();
                let y = &bigraded_basis(*d, *m, *n)?[*j - 1];
                let delta = (*d as u32 + m + n) as f64 - 1.0;
                Ok(y.eval(&z) * phi_small(*k, delta, r))
            }
            _ => invalid(format!("mode {label:?} does not belong to basis {self:?}")),
        }
    }
}

/// `(x_1..x_d, y_1..y_d)` ↦ `(z_1..z_d)`.
pub fn to_complex(point: &[f64]) -> Vec<Complex64> {
    let d = point.len() / 2;
    (0..d).map(|j| Complex64::new(point[j], point[d + j])).collect()
}

/// `(z_1..z_d)` ↦ `(x_1..x_d, y_1..y_d)`.
pub fn from_complex(z: &[Complex64]) -> Vec<f64> {
    z.iter().map(|w| w.re).chain(z.iter().map(|w| w.im)).collect()
}

#[derive(Serialize, Deserialize)]
struct CoeffEntry {
    mode: ModeLabel,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct BandTable {
    basis: Basis,
    coeffs: Vec<CoeffEntry>,
}

/// Finite expansion `Σ c_ℓ e_ℓ` in the orthonormal modes of a basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BandTable", into = "BandTable")]
pub struct BandLimitedFunction {
    basis: Basis,
    coeffs: BTreeMap<ModeLabel, Complex64>,
}

impl TryFrom<BandTable> for BandLimitedFunction {
    type Error = Error;

    fn try_from(t: BandTable) -> Result<Self> {
        let mut f = BandLimitedFunction::zero(t.basis)?;
        for e in t.coeffs {
            f.add(e.mode, Complex64::new(e.re, e.im))?;
        }
        Ok(f)
    }
}

impl From<BandLimitedFunction> for BandTable {
    fn from(f: BandLimitedFunction) -> Self {
        BandTable { basis: f.basis, coeffs: f.coeffs.into_iter().map(|(mode, c)| CoeffEntry { mode, re: c.re, im: c.im }).collect() }
    }
}

impl BandLimitedFunction {
    pub fn zero(basis: Basis) -> Result<Self> {
        basis.validate()?;
        Ok(Self { basis, coeffs: BTreeMap::new() })
    }

    /// A single unit mode.
    pub fn mode(basis: Basis, label: ModeLabel) -> Result<Self> {
        let mut f = Self::zero(basis)?;
        f.add(label, Complex64::new(1.0, 0.0))?;
        Ok(f)
    }

    pub fn from_coeffs(basis: Basis, coeffs: impl IntoIterator<Item = (ModeLabel, Complex64)>) -> Result<Self> {
        let mut f = Self::zero(basis)?;
        for (l, c) in coeffs {
            f.add(l, c)?;
        }
        Ok(f)
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn add(&mut self, label: ModeLabel, c: Complex64) -> Result<()> {
        self.basis.check_label(&label)?;
        let e = self.coeffs.entry(label.clone()).or_insert(Complex64::new(0.0, 0.0));
        *e += c;
        if e.re == 0.0 && e.im == 0.0 {
            self.coeffs.remove(&label);
        }
        Ok(())
    }

    pub fn coeff(&self, label: &ModeLabel) -> Complex64 {
        self.coeffs.get(label).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&ModeLabel, &Complex64)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest mode level present (0 for the zero function).
    pub fn cutoff(&self) -> u32 {
        self.coeffs.keys().map(|l| self.basis.level(l)).max().unwrap_or(0)
    }

    /// Σ|c|², the squared L² norm by Parseval.
    pub fn norm_sq(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm_sqr()).sum()
    }

    /// Applies a coefficient-wise map, dropping zeros.
    pub fn map(&self, mut f: impl FnMut(&ModeLabel, Complex64) -> Complex64) -> Self {
        let coeffs = self.coeffs.iter().map(|(l, &c)| (l.clone(), f(l, c))).filter(|(_, c)| c.re != 0.0 || c.im != 0.0).collect();
        Self { basis: self.basis, coeffs }
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        self.map(|_, c| c * s)
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        if self.basis != other.basis {
            return invalid("cannot add functions in different bases");
        }
        let mut out = self.clone();
        for (l, &c) in &other.coeffs {
            out.add(l.clone(), c)?;
        }
        Ok(out)
    }

    /// Largest coefficient difference against another expansion.
    pub fn max_coeff_diff(&self, other: &Self) -> f64 {
        let mut labels: Vec<&ModeLabel> = self.coeffs.keys().chain(other.coeffs.keys()).collect();
        labels.sort();
        labels.dedup();
        labels.into_iter().map(|l| (self.coeff(l) - other.coeff(l)).norm()).fold(0.0, f64::max)
    }

    pub fn eval(&self, point: &[f64]) -> Result<Complex64> {
        if point.len() != self.basis.point_dim() {
            return invalid("point dimension does not match the basis");
        }
        let mut acc = Complex64::new(0.0, 0.0);
        match self.basis {
            Basis::Hermite { .. } => {
                let kmax = self.cutoff() as usize;
                let tables: Vec<Vec<f64>> = point.iter().map(|&x| hermite_fns(kmax, x)).collect();
                for (l, &c) in &self.coeffs {
                    let ModeLabel::Hermite { mu } = l else {
                        return invalid(format!("mode {l:?} does not belong to basis {:?}", self.basis));
                    };
                    let v: f64 = mu.0.iter().zip(&tables).map(|(&k, t)| t[k as usize]).product();
                    acc += c * v;
                }
            }
            Basis::SpecialHermite { d } => {
                let z = to_complex(point);
                let r = z.iter().map(|w| w.norm_sqr()).sum::<f64>().sqrt();
                let mut harmonics: Vec<((u32, u32, usize), Complex64)> = Vec::new();
                for (l, &c) in &self.coeffs {
                    let ModeLabel::Special { k, m, n, j } = *l else {
                        return invalid(format!("mode {l:?} does not belong to basis {:?}", self.basis));
                    };
                    let y = match harmonics.iter().find(|(key, _)| *key == (m, n, j)) {
                        Some((_, v)) => *v,
                        None => {
                            let v = bigraded_basis(d, m, n)?.get(j - 1).map(|y| y.eval(&z));
                            let v = v.ok_or_else(|| Error::InvalidArgument(format!("no bigraded harmonic ({m},{n}) with index {j}")))?;
                            harmonics.push(((m, n, j), v));
                            v
                        }
                    };
                    acc += c * y * phi_small(k, (d as u32 + m + n) as f64 - 1.0, r);
                }
            }
            Basis::Laguerre { .. } => {
                for (l, &c) in &self.coeffs {
                    acc += c * self.basis.mode_value(l, point)?;
                }
            }
        }
        Ok(acc)
    }

    /// Values at each point.
    pub fn synthesize(&self, points: &[Vec<f64>]) -> Result<Vec<Complex64>> {
        points.iter().map(|p| self.eval(p)).collect()
    }
}

/// Default quadrature size for expanding up to `cutoff`.
pub fn default_nodes(basis: Basis, cutoff: u32) -> usize {
    match basis {
        Basis::Hermite { .. } | Basis::Laguerre { .. } => cutoff as usize + 10,
        Basis::SpecialHermite { .. } => 2 * cutoff as usize + 12,
    }
}

/// Inner products of `f` against every mode up to `cutoff`, using
/// [`default_nodes`] quadrature points per direction.
pub fn expand<F: Fn(&[f64]) -> Complex64>(f: F, basis: Basis, cutoff: u32) -> Result<BandLimitedFunction> {
    expand_with(f, basis, cutoff, default_nodes(basis, cutoff))
}

/// As [`expand`] with an explicit quadrature size; too few nodes is a resolution error.
pub fn expand_with<F: Fn(&[f64]) -> Complex64>(f: F, basis: Basis, cutoff: u32, nodes: usize) -> Result<BandLimitedFunction> {
    basis.validate()?;
    if nodes < cutoff as usize + 1 {
        return Err(Error::Resolution(format!("{nodes} nodes cannot resolve modes up to level {cutoff}")));
    }
    let modes = basis.modes(cutoff)?;
    let mut out = BandLimitedFunction::zero(basis)?;
    match basis {
        Basis::Hermite { d } => {
            let total = (nodes as f64).powi(d as i32);
            if total > 4e6 {
                return Err(Error::Resolution(format!("tensor Gauss–Hermite grid of {total} points is too large")));
            }
            let rule = gauss_hermite(nodes)?;
            let pts: Vec<(f64, f64)> = rule.iter1d().map(|(x, w)| (x, w * (x * x).exp())).collect();
            let kmax = cutoff as usize;
            let tables: Vec<Vec<f64>> = pts.iter().map(|&(x, _)| hermite_fns(kmax, x)).collect();
            let mut acc = vec![Complex64::new(0.0, 0.0); modes.len()];
            let mut idx = vec![0usize; d];
            let mut point = vec![0.0; d];
            loop {
                let mut w = 1.0;
                for k in 0..d {
                    point[k] = pts[idx[k]].0;
                    w *= pts[idx[k]].1;
                }
                let fv = f(&point) * w;
                for (slot, label) in acc.iter_mut().zip(&modes) {
                    if let ModeLabel::Hermite { mu } = label {
                        let phi: f64 = (0..d).map(|k| tables[idx[k]][mu.0[k] as usize]).product();
                        *slot += fv * phi;
                    }
                }
                let mut k = 0;
                while k < d {
                    idx[k] += 1;
                    if idx[k] < nodes {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
                if k == d {
                    break;
                }
            }
            for (label, c) in modes.into_iter().zip(acc) {
                out.add(label, c)?;
            }
        }
        Basis::Laguerre { alpha } => {
            // ∫ f ψ r^{2α+1} dr = ½ ∫ f(√x) ψ(√x) x^α dx
            let rule = gauss_laguerre(nodes, alpha)?;
            for label in modes {
                if let ModeLabel::Laguerre { k } = label {
                    let c = rule
                        .iter1d()
                        .map(|(x, w)| {
                            let r = x.sqrt();
                            f(&[r]) * (0.5 * w * x.exp() * psi(k, alpha, r))
                        })
                        .sum();
                    out.add(label, c)?;
                }
            }
        }
        Basis::SpecialHermite { d } => {
            // r^{2d−1} dr = 2^{d−1} x^{d−1} dx with x = r²/2
            let radial = gauss_laguerre(nodes, d as f64 - 1.0)?;
            let level = (2 * cutoff.min(MAX_BIDEGREE) as usize + 2).max(4);
            let sphere = complex_sphere_rule(d, level)?;
            let scale = 2f64.powi(d as i32 - 1);
            let mut samples: Vec<(Vec<f64>, f64, Complex64)> = Vec::new();
            for (x, wx) in radial.iter1d() {
                let r = (2.0 * x).sqrt();
                for (omega, wo) in sphere.iter() {
                    let p: Vec<f64> = omega.iter().map(|c| r * c).collect();
                    let fv = f(&p);
                    samples.push((p, scale * wx * x.exp() * wo, fv));
                }
            }
            for label in modes {
                let c: Complex64 =
                    samples.iter().map(|(p, w, fv)| -> Result<Complex64> { Ok(fv * basis.mode_value(&label, p)?.conj() * *w) }).sum::<Result<Complex64>>()?;
                out.add(label, c)?;
            }
        }
    }
    Ok(out.map(|_, c| if c.norm() < 1e-15 { Complex64::new(0.0, 0.0) } else { c }))
}

/// `|S^{2d−1}|^{−1/2}`, the constant bigraded harmonic of bidegree (0, 0).
pub fn constant_harmonic(d: usize) -> f64 {
    (2.0 * PI.powi(d as i32) / (1..d).map(|k| k as f64).product::<f64>()).powf(-0.5)
}
