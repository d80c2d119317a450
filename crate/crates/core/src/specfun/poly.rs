//! Sparse polynomials with exact differentiation and exact sphere moments.
//!
//! [`RealPoly`] lives on ℝ^d; [`ComplexPoly`] is a polynomial in `z` and `z̄`
//! on ℂ^d ≅ ℝ^{2d}. Both integrate monomials over the unit sphere in closed form.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;
use std::collections::BTreeMap;
use std::f64::consts::PI;

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// ∫_{S^{d−1}} x^a dω.
pub fn real_sphere_moment(exps: &[u32]) -> f64 {
    if exps.iter().any(|&e| e % 2 == 1) {
        return 0.0;
    }
    let d = exps.len() as f64;
    let total: u32 = exps.iter().sum();
    let log_num: f64 = exps.iter().map(|&e| ln_gamma((f64::from(e) + 1.0) / 2.0)).sum();
    2.0 * (log_num - ln_gamma((f64::from(total) + d) / 2.0)).exp()
}

/// ∫_{S^{2d−1}} |z^γ|² dσ = 2π^d γ! / (|γ|+d−1)!.
pub fn complex_sphere_moment(gamma_idx: &[u32]) -> f64 {
    let d = gamma_idx.len() as u32;
    let total: u32 = gamma_idx.iter().sum();
    let num: f64 = gamma_idx.iter().map(|&g| factorial(g)).product();
    2.0 * PI.powi(d as i32) * num / factorial(total + d - 1)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealTerm {
    pub exponent: Vec<u32>,
    pub coeff: f64,
}

/// Polynomial on ℝ^d with real coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(from = "RealPolyTable", into = "RealPolyTable")]
pub struct RealPoly {
    dim: usize,
    terms: BTreeMap<Vec<u32>, f64>,
}

#[derive(Serialize, Deserialize)]
struct RealPolyTable {
    dim: usize,
    terms: Vec<RealTerm>,
}

impl From<RealPolyTable> for RealPoly {
    fn from(t: RealPolyTable) -> Self {
        let mut p = RealPoly::zero(t.dim);
        for term in t.terms {
            p.add_term(term.exponent, term.coeff);
        }
        p
    }
}

impl From<RealPoly> for RealPolyTable {
    fn from(p: RealPoly) -> Self {
        RealPolyTable { dim: p.dim, terms: p.table() }
    }
}

impl RealPoly {
    pub fn zero(dim: usize) -> Self {
        Self { dim, terms: BTreeMap::new() }
    }

    pub fn monomial(exps: Vec<u32>, coeff: f64) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, coeff);
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn table(&self) -> Vec<RealTerm> {
        self.terms.iter().map(|(e, &c)| RealTerm { exponent: e.clone(), coeff: c }).collect()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], f64)> {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    pub fn add_term(&mut self, exps: Vec<u32>, coeff: f64) {
        assert_eq!(exps.len(), self.dim);
        if coeff == 0.0 {
            return;
        }
        let entry = self.terms.entry(exps).or_insert(0.0);
        *entry += coeff;
        if *entry == 0.0 {
            self.terms.retain(|_, c| *c != 0.0);
        }
    }

    /// self += s·other
    pub fn axpy(&mut self, s: f64, other: &RealPoly) {
        for (e, &c) in &other.terms {
            self.add_term(e.clone(), s * c);
        }
    }

    pub fn scaled(&self, s: f64) -> RealPoly {
        let mut out = Self::zero(self.dim);
        out.axpy(s, self);
        out
    }

    pub fn deriv(&self, i: usize) -> RealPoly {
        let mut out = Self::zero(self.dim);
        for (e, &c) in &self.terms {
            if e[i] > 0 {
                let mut f = e.clone();
                f[i] -= 1;
                out.add_term(f, c * f64::from(e[i]));
            }
        }
        out
    }

    pub fn laplacian(&self) -> RealPoly {
        let mut out = Self::zero(self.dim);
        for i in 0..self.dim {
            out.axpy(1.0, &self.deriv(i).deriv(i));
        }
        out
    }

    pub fn mul_var(&self, i: usize) -> RealPoly {
        let mut out = Self::zero(self.dim);
        for (e, &c) in &self.terms {
            let mut f = e.clone();
            f[i] += 1;
            out.add_term(f, c);
        }
        out
    }

    /// Multiplication by |x|².
    pub fn mul_norm_sq(&self) -> RealPoly {
        let mut out = Self::zero(self.dim);
        for i in 0..self.dim {
            out.axpy(1.0, &self.mul_var(i).mul_var(i));
        }
        out
    }

    pub fn mul(&self, other: &RealPoly) -> RealPoly {
        let mut out = Self::zero(self.dim);
        for (e1, &c1) in &self.terms {
            for (e2, &c2) in &other.terms {
                out.add_term(e1.iter().zip(e2).map(|(a, b)| a + b).collect(), c1 * c2);
            }
        }
        out
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms.iter().map(|(e, &c)| c * e.iter().zip(x).map(|(&k, &xi)| xi.powi(k as i32)).product::<f64>()).sum()
    }

    pub fn gradient(&self, x: &[f64]) -> Vec<f64> {
        (0..self.dim).map(|i| self.deriv(i).eval(x)).collect()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// ∫_{S^{d−1}} p dω, exact.
    pub fn sphere_integral(&self) -> f64 {
        self.terms.iter().map(|(e, &c)| c * real_sphere_moment(e)).sum()
    }

    pub fn sphere_inner(&self, other: &RealPoly) -> f64 {
        self.mul(other).sphere_integral()
    }

    /// Harmonic component of a homogeneous polynomial of degree m:
    /// `Σ_j (−1)^j |x|^{2j} Δ^j p / (4^j j! Π_{i≤j}(m + d/2 − 1 − i))`.
    pub fn harmonic_projection(&self, m: u32) -> RealPoly {
        let d = self.dim as f64;
        let mut out = self.clone();
        let mut lap = self.clone();
        let mut denom = 1.0;
        let mut j = 0u32;
        loop {
            lap = lap.laplacian();
            if lap.is_zero() {
                break;
            }
            j += 1;
            denom *= -4.0 * f64::from(j) * (f64::from(m) + d / 2.0 - 1.0 - f64::from(j));
            let mut term = lap.clone();
            for _ in 0..j {
                term = term.mul_norm_sq();
            }
            out.axpy(1.0 / denom, &term);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexTerm {
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
    pub re: f64,
    pub im: f64,
}

type BiExp = (Vec<u32>, Vec<u32>);

/// Polynomial `Σ c_{αβ} z^α z̄^β` on ℂ^d.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(from = "ComplexPolyTable", into = "ComplexPolyTable")]
pub struct ComplexPoly {
    dim: usize,
    terms: BTreeMap<BiExp, Complex64>,
}

#[derive(Serialize, Deserialize)]
struct ComplexPolyTable {
    dim: usize,
    terms: Vec<ComplexTerm>,
}

impl From<ComplexPolyTable> for ComplexPoly {
    fn from(t: ComplexPolyTable) -> Self {
        let mut p = ComplexPoly::zero(t.dim);
        for term in t.terms {
            p.add_term(term.alpha, term.beta, Complex64::new(term.re, term.im));
        }
        p
    }
}

impl From<ComplexPoly> for ComplexPolyTable {
    fn from(p: ComplexPoly) -> Self {
        ComplexPolyTable { dim: p.dim, terms: p.table() }
    }
}

impl ComplexPoly {
    pub fn zero(dim: usize) -> Self {
        Self { dim, terms: BTreeMap::new() }
    }

    pub fn monomial(alpha: Vec<u32>, beta: Vec<u32>, coeff: Complex64) -> Self {
        let mut p = Self::zero(alpha.len());
        p.add_term(alpha, beta, coeff);
        p
    }

    pub fn constant(dim: usize, c: Complex64) -> Self {
        Self::monomial(vec![0; dim], vec![0; dim], c)
    }

    /// The coordinate function z_j.
    pub fn z(dim: usize, j: usize) -> Self {
        let mut a = vec![0; dim];
        a[j] = 1;
        Self::monomial(a, vec![0; dim], Complex64::new(1.0, 0.0))
    }

    /// The coordinate function z̄_j.
    pub fn zbar(dim: usize, j: usize) -> Self {
        let mut b = vec![0; dim];
        b[j] = 1;
        Self::monomial(vec![0; dim], b, Complex64::new(1.0, 0.0))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn table(&self) -> Vec<ComplexTerm> {
        self.terms.iter().map(|((a, b), c)| ComplexTerm { alpha: a.clone(), beta: b.clone(), re: c.re, im: c.im }).collect()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &[u32], Complex64)> {
        self.terms.iter().map(|((a, b), &c)| (a.as_slice(), b.as_slice(), c))
    }

    pub fn add_term(&mut self, alpha: Vec<u32>, beta: Vec<u32>, coeff: Complex64) {
        assert_eq!(alpha.len(), self.dim);
        assert_eq!(beta.len(), self.dim);
        if coeff == Complex64::new(0.0, 0.0) {
            return;
        }
        let key = (alpha, beta);
        let entry = self.terms.entry(key.clone()).or_insert(Complex64::new(0.0, 0.0));
        *entry += coeff;
        if entry.re == 0.0 && entry.im == 0.0 {
            self.terms.remove(&key);
        }
    }

    pub fn axpy(&mut self, s: Complex64, other: &ComplexPoly) {
        for ((a, b), &c) in &other.terms {
            self.add_term(a.clone(), b.clone(), s * c);
        }
    }

    pub fn scaled(&self, s: Complex64) -> ComplexPoly {
        let mut out = Self::zero(self.dim);
        out.axpy(s, self);
        out
    }

    pub fn add(&self, other: &ComplexPoly) -> ComplexPoly {
        let mut out = self.clone();
        out.axpy(Complex64::new(1.0, 0.0), other);
        out
    }

    pub fn sub(&self, other: &ComplexPoly) -> ComplexPoly {
        let mut out = self.clone();
        out.axpy(Complex64::new(-1.0, 0.0), other);
        out
    }

    /// ∂/∂z_j.
    pub fn d_z(&self, j: usize) -> ComplexPoly {
        let mut out = Self::zero(self.dim);
        for ((a, b), &c) in &self.terms {
            if a[j] > 0 {
                let mut a2 = a.clone();
                a2[j] -= 1;
                out.add_term(a2, b.clone(), c * f64::from(a[j]));
            }
        }
        out
    }

    /// ∂/∂z̄_j.
    pub fn d_zbar(&self, j: usize) -> ComplexPoly {
        let mut out = Self::zero(self.dim);
        for ((a, b), &c) in &self.terms {
            if b[j] > 0 {
                let mut b2 = b.clone();
                b2[j] -= 1;
                out.add_term(a.clone(), b2, c * f64::from(b[j]));
            }
        }
        out
    }

    /// ∂/∂x_j = ∂_{z_j} + ∂_{z̄_j}.
    pub fn d_x(&self, j: usize) -> ComplexPoly {
        self.d_z(j).add(&self.d_zbar(j))
    }

    /// ∂/∂y_j = i(∂_{z_j} − ∂_{z̄_j}).
    pub fn d_y(&self, j: usize) -> ComplexPoly {
        self.d_z(j).sub(&self.d_zbar(j)).scaled(Complex64::new(0.0, 1.0))
    }

    /// Euclidean Laplacian on ℝ^{2d}: 4 Σ ∂_{z_j}∂_{z̄_j}.
    pub fn laplacian(&self) -> ComplexPoly {
        let mut out = Self::zero(self.dim);
        for j in 0..self.dim {
            out.axpy(Complex64::new(4.0, 0.0), &self.d_z(j).d_zbar(j));
        }
        out
    }

    pub fn mul(&self, other: &ComplexPoly) -> ComplexPoly {
        let mut out = Self::zero(self.dim);
        for ((a1, b1), &c1) in &self.terms {
            for ((a2, b2), &c2) in &other.terms {
                let a = a1.iter().zip(a2).map(|(x, y)| x + y).collect();
                let b = b1.iter().zip(b2).map(|(x, y)| x + y).collect();
                out.add_term(a, b, c1 * c2);
            }
        }
        out
    }

    pub fn mul_z(&self, j: usize) -> ComplexPoly {
        self.mul(&Self::z(self.dim, j))
    }

    pub fn mul_zbar(&self, j: usize) -> ComplexPoly {
        self.mul(&Self::zbar(self.dim, j))
    }

    /// Multiplication by |z|².
    pub fn mul_norm_sq(&self) -> ComplexPoly {
        let mut out = Self::zero(self.dim);
        for j in 0..self.dim {
            out.axpy(Complex64::new(1.0, 0.0), &self.mul_z(j).mul_zbar(j));
        }
        out
    }

    /// Complex conjugate: z^α z̄^β ↦ z^β z̄^α with conjugated coefficient.
    pub fn conj(&self) -> ComplexPoly {
        let mut out = Self::zero(self.dim);
        for ((a, b), c) in &self.terms {
            out.add_term(b.clone(), a.clone(), c.conj());
        }
        out
    }

    /// Euler operator Σ z_j∂_{z_j} + z̄_j∂_{z̄_j}.
    pub fn euler(&self) -> ComplexPoly {
        let mut out = Self::zero(self.dim);
        for ((a, b), &c) in &self.terms {
            let deg: u32 = a.iter().sum::<u32>() + b.iter().sum::<u32>();
            out.add_term(a.clone(), b.clone(), c * f64::from(deg));
        }
        out
    }

    pub fn eval(&self, z: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for ((a, b), &c) in &self.terms {
            let mut v = c;
            for j in 0..self.dim {
                if a[j] > 0 {
                    v *= z[j].powu(a[j]);
                }
                if b[j] > 0 {
                    v *= z[j].conj().powu(b[j]);
                }
            }
            acc += v;
        }
        acc
    }

    /// `Some((m, n))` if every term has bidegree (m, n).
    pub fn bidegree(&self) -> Option<(u32, u32)> {
        let mut it = self.terms.keys().map(|(a, b)| (a.iter().sum::<u32>(), b.iter().sum::<u32>()));
        let first = it.next()?;
        it.all(|x| x == first).then_some(first)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().fold(0.0, |m, c| m.max(c.norm()))
    }

    /// `⟨P, Q⟩ = ∫_{S^{2d−1}} P Q̄ dσ`, exact.
    pub fn sphere_inner(&self, other: &ComplexPoly) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for ((a1, b1), &c1) in &self.terms {
            for ((a2, b2), &c2) in &other.terms {
                // z^{a1+b2} z̄^{b1+a2}
                let g: Vec<u32> = a1.iter().zip(b2).map(|(x, y)| x + y).collect();
                let h: Vec<u32> = b1.iter().zip(a2).map(|(x, y)| x + y).collect();
                if g == h {
                    acc += c1 * c2.conj() * complex_sphere_moment(&g);
                }
            }
        }
        acc
    }

    /// Harmonic component (on ℝ^{2d}) of a homogeneous polynomial of total degree `deg`.
    pub fn harmonic_projection(&self, deg: u32) -> ComplexPoly {
        let half_dim = self.dim as f64; // (2d)/2
        let mut out = self.clone();
        let mut lap = self.clone();
        let mut denom = 1.0;
        let mut j = 0u32;
        loop {
            lap = lap.laplacian();
            if lap.is_zero() {
                break;
            }
            j += 1;
            denom *= -4.0 * f64::from(j) * (f64::from(deg) + half_dim - 1.0 - f64::from(j));
            let mut term = lap.clone();
            for _ in 0..j {
                term = term.mul_norm_sq();
            }
            out.axpy(Complex64::new(1.0 / denom, 0.0), &term);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{complex_sphere_rule, sphere_rule};
    use proptest::prelude::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn real_moments_match_quadrature() {
        let rule = sphere_rule(3, 6).unwrap();
        for exps in [[2u32, 0, 0], [2, 2, 0], [4, 2, 2], [0, 0, 6], [1, 1, 0]] {
            let p = RealPoly::monomial(exps.to_vec(), 1.0);
            let q = rule.integrate(|x| p.eval(x));
            assert!((q - real_sphere_moment(&exps)).abs() < 1e-12, "{exps:?}");
        }
        assert!((real_sphere_moment(&[2, 0]) - PI).abs() < 1e-14);
    }

    #[test]
    fn complex_moments_match_quadrature() {
        let rule = complex_sphere_rule(2, 6).unwrap();
        for (g, h) in [([1u32, 0], [1u32, 0]), ([2, 1], [2, 1]), ([1, 1], [0, 2]), ([0, 3], [0, 3])] {
            let p = ComplexPoly::monomial(g.to_vec(), h.to_vec(), c(1.0));
            let q = rule.integrate_complex(|x| p.eval(&[Complex64::new(x[0], x[2]), Complex64::new(x[1], x[3])]));
            let exact = if g == h { complex_sphere_moment(&g) } else { 0.0 };
            assert!((q - c(exact)).norm() < 1e-12, "{g:?} {h:?}");
        }
    }

    #[test]
    fn projection_is_harmonic() {
        let p = RealPoly::monomial(vec![2, 1, 1], 1.0);
        let h = p.harmonic_projection(4);
        assert!(h.laplacian().max_abs_coeff() < 1e-13);
        let q = ComplexPoly::monomial(vec![2, 0], vec![1, 1], c(1.0));
        let hq = q.harmonic_projection(4);
        assert!(hq.laplacian().max_abs_coeff() < 1e-13);
        assert_eq!(hq.bidegree(), Some((2, 2)));
    }

    #[test]
    fn wirtinger_laplacian_matches_real() {
        // Δ(z z̄) = Δ(x² + y²) = 4 in ℝ²
        let p = ComplexPoly::z(1, 0).mul_zbar(0);
        let lap = p.laplacian();
        assert_eq!(lap.table().len(), 1);
        assert!((lap.eval(&[Complex64::new(0.3, 0.1)]) - c(4.0)).norm() < 1e-15);
        let via_real = p.d_x(0).d_x(0).add(&p.d_y(0).d_y(0));
        assert!(via_real.sub(&lap).max_abs_coeff() < 1e-15);
    }

    #[test]
    fn serde_round_trip() {
        let mut p = ComplexPoly::z(2, 0).mul_zbar(1);
        p.add_term(vec![0, 1], vec![0, 0], Complex64::new(0.5, -2.0));
        let s = serde_json::to_string(&p).unwrap();
        let back: ComplexPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(p, back);
        let r = RealPoly::monomial(vec![1, 2], 3.0);
        let back: RealPoly = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(r, back);
    }

    proptest! {
        #[test]
        fn derivative_is_linear_and_product_rule(a in -3.0f64..3.0, b in -3.0f64..3.0, x in -1.0f64..1.0, y in -1.0f64..1.0) {
            let p = RealPoly::monomial(vec![2, 1], a);
            let mut q = RealPoly::monomial(vec![0, 3], b);
            q.add_term(vec![1, 0], 1.0);
            let lhs = p.mul(&q).deriv(0).eval(&[x, y]);
            let rhs = p.deriv(0).eval(&[x, y]) * q.eval(&[x, y]) + p.eval(&[x, y]) * q.deriv(0).eval(&[x, y]);
            prop_assert!((lhs - rhs).abs() < 1e-12 * (1.0 + lhs.abs()));
        }

        #[test]
        fn conj_evaluates_to_conjugate(re in -1.0f64..1.0, im in -1.0f64..1.0) {
            let mut p = ComplexPoly::z(1, 0).mul_z(0).mul_zbar(0);
            p.add_term(vec![0], vec![2], Complex64::new(0.3, 0.7));
            let z = [Complex64::new(re, im)];
            prop_assert!((p.conj().eval(&z) - p.eval(&z).conj()).norm() < 1e-14);
        }
    }
}
