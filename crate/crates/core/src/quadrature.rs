//! Deterministic quadrature rules.
//!
//! Every integral in the crate goes through one of these rules: Gauss–Legendre
//! on intervals, Gauss–Jacobi for algebraic endpoint weights, a half-line rule
//! for subordination integrals `∫₀^∞ g(t) t^{-1/2} dt`, and tensor-product
//! rules on real and complex spheres. Rules are immutable once built.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{invalid, Error, Result};

/// Nodes per panel in composite rules.
const PANEL_NODES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Domain {
    Interval { a: f64, b: f64 },
    Jacobi { a: f64, b: f64, exp_left: f64, exp_right: f64 },
    HalflineSqrt { decay: f64 },
    Sphere { d: usize },
    ComplexSphere { d: usize },
    Hermite,
    Laguerre { alpha: f64 },
    Graded { length: f64, exponent: f64 },
}

/// Nodes and positive weights. Nodes are stored flat, `dim` coordinates each.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    dim: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    domain: Domain,
    order: usize,
}

impl QuadratureRule {
    fn new(dim: usize, nodes: Vec<f64>, weights: Vec<f64>, domain: Domain, order: usize) -> Self {
        debug_assert_eq!(nodes.len(), dim * weights.len());
        Self { dim, nodes, weights, domain, order }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Largest polynomial degree integrated exactly (against the rule's weight).
    pub fn exactness_degree(&self) -> usize {
        match self.domain {
            Domain::Sphere { .. } | Domain::ComplexSphere { .. } => 2 * self.order + 1,
            _ => 2 * self.order - 1,
        }
    }

    pub fn node(&self, i: usize) -> &[f64] {
        &self.nodes[i * self.dim..(i + 1) * self.dim]
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.weights[i]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Node coordinates of a one-dimensional rule.
    pub fn points(&self) -> &[f64] {
        assert_eq!(self.dim, 1, "points() is only defined for 1-d rules");
        &self.nodes
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[f64], f64)> + '_ {
        self.nodes.chunks_exact(self.dim).zip(self.weights.iter().copied())
    }

    /// Iterator over `(x, w)` for one-dimensional rules.
    pub fn iter1d(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        assert_eq!(self.dim, 1);
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }

    pub fn integrate<F: FnMut(&[f64]) -> f64>(&self, mut f: F) -> f64 {
        self.iter().map(|(x, w)| w * f(x)).sum()
    }

    pub fn integrate1d<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.iter1d().map(|(x, w)| w * f(x)).sum()
    }

    pub fn integrate_complex<F: FnMut(&[f64]) -> Complex64>(&self, mut f: F) -> Complex64 {
        self.iter().map(|(x, w)| f(x) * w).sum()
    }

    pub fn total_mass(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Complex coordinates `z_j = x_j + i x_{d+j}` of a complex-sphere node.
    pub fn complex_node(&self, i: usize) -> Vec<Complex64> {
        let p = self.node(i);
        let d = self.dim / 2;
        (0..d).map(|j| Complex64::new(p[j], p[d + j])).collect()
    }

    fn affine(mut self, a: f64, b: f64) -> Self {
        // maps [-1, 1] onto [a, b]
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        for x in &mut self.nodes {
            *x = mid + half * *x;
        }
        for w in &mut self.weights {
            *w *= half;
        }
        self
    }
}

fn check_finite(values: &[f64]) -> Result<()> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        invalid("non-finite bound")
    }
}

/// Legendre P_n and its derivative at x by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn gauss_legendre_unit(n: usize) -> QuadratureRule {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    QuadratureRule::new(1, nodes, weights, Domain::Interval { a: -1.0, b: 1.0 }, n)
}

/// n-point Gauss–Legendre rule on [a, b].
pub fn gauss_interval(n: usize, a: f64, b: f64) -> Result<QuadratureRule> {
    check_finite(&[a, b])?;
    if n == 0 {
        return invalid("gauss_interval needs n >= 1");
    }
    if a >= b {
        return invalid(format!("empty interval [{a}, {b}]"));
    }
    let mut rule = gauss_legendre_unit(n).affine(a, b);
    rule.domain = Domain::Interval { a, b };
    Ok(rule)
}

/// Golub–Welsch: nodes are eigenvalues of the Jacobi matrix, weights are
/// `mu0` times the squared first eigenvector components.
fn golub_welsch(diag: &[f64], off_sq: &[f64], mu0: f64) -> (Vec<f64>, Vec<f64>) {
    let n = diag.len();
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = diag[i];
        if i + 1 < n {
            let b = off_sq[i].sqrt();
            m[(i, i + 1)] = b;
            m[(i + 1, i)] = b;
        }
    }
    let eig = SymmetricEigen::new(m);
    let mut pairs: Vec<(f64, f64)> = (0..n).map(|k| (eig.eigenvalues[k], mu0 * eig.eigenvectors[(0, k)].powi(2))).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.into_iter().unzip()
}

/// Jacobi polynomial P_n^{(a,b)} and derivative, for Newton polishing.
fn jacobi_with_derivative(n: usize, a: f64, b: f64, x: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 0.0);
    }
    let mut p0 = 1.0;
    let mut p1 = 0.5 * (a - b + (a + b + 2.0) * x);
    for k in 2..=n {
        let k = k as f64;
        let c = 2.0 * k + a + b;
        let a1 = 2.0 * k * (k + a + b) * (c - 2.0);
        let a2 = (c - 1.0) * (a * a - b * b);
        let a3 = (c - 2.0) * (c - 1.0) * c;
        let a4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * c;
        let p2 = ((a2 + a3 * x) * p1 - a4 * p0) / a1;
        p0 = p1;
        p1 = p2;
    }
    // derivative: d/dx P_n^{(a,b)} = (n+a+b+1)/2 P_{n-1}^{(a+1,b+1)}
    let nf = n as f64;
    let dp = if n >= 1 { 0.5 * (nf + a + b + 1.0) * jacobi_with_derivative(n - 1, a + 1.0, b + 1.0, x).0 } else { 0.0 };
    (p1, dp)
}

/// n-point Gauss–Jacobi rule on [−1, 1] for the weight (1−u)^exp_left (1+u)^exp_right.
pub fn gauss_jacobi(n: usize, exp_left: f64, exp_right: f64) -> Result<QuadratureRule> {
    if n == 0 {
        return invalid("gauss_jacobi needs n >= 1");
    }
    if !(exp_left > -1.0 && exp_right > -1.0) {
        return invalid(format!("Jacobi exponents must exceed -1, got ({exp_left}, {exp_right})"));
    }
    let (a, b) = (exp_left, exp_right);
    let ab = a + b;
    let mut diag = Vec::with_capacity(n);
    let mut off = Vec::with_capacity(n.saturating_sub(1));
    for k in 0..n {
        let kf = k as f64;
        let c = 2.0 * kf + ab;
        let d = if k == 0 { (b - a) / (ab + 2.0) } else { (b * b - a * a) / (c * (c + 2.0)) };
        diag.push(d);
        if k + 1 < n {
            let j = kf + 1.0;
            let c = 2.0 * j + ab;
            let beta = if k == 0 {
                4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab).powi(2) * (3.0 + ab))
            } else {
                4.0 * j * (j + a) * (j + b) * (j + ab) / (c * c * (c + 1.0) * (c - 1.0))
            };
            off.push(beta);
        }
    }
    let mu0 = 2f64.powf(ab + 1.0) * gamma(a + 1.0) * gamma(b + 1.0) / gamma(ab + 2.0);
    let (mut nodes, mut weights) = golub_welsch(&diag, &off, mu0);
    // Newton polish of the eigenvalue nodes; weights from the derivative formula,
    // renormalised to the exact total mass.
    let mut polished = true;
    for x in nodes.iter_mut() {
        let mut y = *x;
        for _ in 0..4 {
            let (p, dp) = jacobi_with_derivative(n, a, b, y);
            if dp == 0.0 || !dp.is_finite() {
                polished = false;
                break;
            }
            y -= p / dp;
        }
        if (y - *x).abs() < 1e-8 && y.abs() < 1.0 {
            *x = y;
        } else {
            polished = false;
        }
    }
    if polished {
        let nf = n as f64;
        let raw: Vec<f64> = nodes
            .iter()
            .map(|&x| {
                let (_, dp) = jacobi_with_derivative(n, a, b, x);
                1.0 / ((1.0 - x * x) * dp * dp)
            })
            .collect();
        let _ = nf;
        let total: f64 = raw.iter().sum();
        if total.is_finite() && total > 0.0 {
            weights = raw.iter().map(|w| w * mu0 / total).collect();
        }
    }
    Ok(QuadratureRule::new(1, nodes, weights, Domain::Jacobi { a: -1.0, b: 1.0, exp_left, exp_right }, n))
}

/// Gauss–Hermite rule for the weight e^{−x²} on ℝ.
pub fn gauss_hermite(n: usize) -> Result<QuadratureRule> {
    if n == 0 {
        return invalid("gauss_hermite needs n >= 1");
    }
    let diag = vec![0.0; n];
    let off: Vec<f64> = (1..n).map(|k| k as f64 / 2.0).collect();
    let (nodes, weights) = golub_welsch(&diag, &off, PI.sqrt());
    Ok(QuadratureRule::new(1, nodes, weights, Domain::Hermite, n))
}

/// Gauss–Laguerre rule for the weight x^alpha e^{−x} on (0, ∞).
pub fn gauss_laguerre(n: usize, alpha: f64) -> Result<QuadratureRule> {
    if n == 0 {
        return invalid("gauss_laguerre needs n >= 1");
    }
    if alpha <= -1.0 {
        return invalid("Laguerre exponent must exceed -1");
    }
    let diag: Vec<f64> = (0..n).map(|k| 2.0 * k as f64 + alpha + 1.0).collect();
    let off: Vec<f64> = (1..n).map(|k| k as f64 * (k as f64 + alpha)).collect();
    let (nodes, weights) = golub_welsch(&diag, &off, gamma(alpha + 1.0));
    Ok(QuadratureRule::new(1, nodes, weights, Domain::Laguerre { alpha }, n))
}

/// Composite Gauss–Legendre over consecutive breakpoints.
pub fn composite(breaks: &[f64], per_panel: usize) -> Result<QuadratureRule> {
    if breaks.len() < 2 {
        return invalid("composite rule needs at least two breakpoints");
    }
    check_finite(breaks)?;
    let unit = gauss_legendre_unit(per_panel);
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    for win in breaks.windows(2) {
        let (a, b) = (win[0], win[1]);
        if b <= a {
            return invalid("breakpoints must be strictly increasing");
        }
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        for (x, w) in unit.iter1d() {
            nodes.push(mid + half * x);
            weights.push(half * w);
        }
    }
    let (a, b) = (breaks[0], breaks[breaks.len() - 1]);
    Ok(QuadratureRule::new(1, nodes, weights, Domain::Interval { a, b }, per_panel))
}

/// Breakpoints of `[lo, hi]` refined geometrically (ratio 2) toward `lo`,
/// down to panels of width `finest`.
pub fn geometric_breaks(lo: f64, hi: f64, finest: f64) -> Vec<f64> {
    let len = hi - lo;
    let mut offsets = vec![len];
    let mut h = len;
    while h > 2.0 * finest && offsets.len() < 60 {
        h *= 0.5;
        offsets.push(h);
    }
    offsets.push(0.0);
    offsets.reverse();
    offsets.into_iter().map(|o| lo + o).collect()
}

/// Rule on (0, length] for `∫₀^L h(v) v^exponent dv`, graded geometrically
/// toward v = 0 down to `finest`. The innermost panel carries the algebraic
/// weight exactly (Gauss–Jacobi); outer panels multiply it in.
pub fn graded_endpoint(length: f64, exponent: f64, finest: f64, per_panel: usize) -> Result<QuadratureRule> {
    if !(length > 0.0) || !(finest > 0.0) {
        return invalid("graded rule needs positive length and finest scale");
    }
    let breaks = geometric_breaks(0.0, length, finest.min(length));
    let first = breaks[1];
    let jac = gauss_jacobi(per_panel, 0.0, exponent)?;
    let scale = (0.5 * first).powf(exponent + 1.0);
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    for (x, w) in jac.iter1d() {
        nodes.push(0.5 * first * (1.0 + x));
        weights.push(w * scale);
    }
    if breaks.len() > 2 {
        let outer = composite(&breaks[1..], per_panel)?;
        for (v, w) in outer.iter1d() {
            nodes.push(v);
            weights.push(w * v.powf(exponent));
        }
    }
    Ok(QuadratureRule::new(1, nodes, weights, Domain::Graded { length, exponent }, per_panel))
}

type GradedCache = Mutex<HashMap<(u64, u32), Arc<QuadratureRule>>>;

/// Cached [`graded_endpoint`] on (0, 1] with innermost panel width `2^{−levels}`.
pub fn graded_unit(exponent: f64, levels: u32) -> Result<Arc<QuadratureRule>> {
    static CACHE: OnceLock<GradedCache> = OnceLock::new();
    let levels = levels.clamp(1, 60);
    let key = (exponent.to_bits(), levels);
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(r) = cache.lock().expect("quadrature cache poisoned").get(&key) {
        return Ok(r.clone());
    }
    let rule = Arc::new(graded_endpoint(1.0, exponent, 0.5f64.powi(levels as i32), PANEL_NODES)?);
    cache.lock().expect("quadrature cache poisoned").insert(key, rule.clone());
    Ok(rule)
}

/// Rule for `∫₀^∞ g(t) t^{−1/2} dt` where `|g(t)| ≤ C e^{−decay·t}`.
///
/// Substituting t = u² turns the integral into `∫₀^∞ 2 g(u²) du`; the u-range
/// is cut at U with `e^{−decay·U²} < tol/100` and covered by Gauss panels graded
/// geometrically toward u = 0. Returned nodes are t-values; weights include
/// the Jacobian so that `Σ w_i g(t_i)` approximates the integral.
pub fn halfline_subordination(decay: f64, tol: f64) -> Result<QuadratureRule> {
    halfline_subordination_levels(decay, tol, 6)
}

fn halfline_upper(decay: f64, tol: f64) -> Result<f64> {
    if !(decay > 0.0) || !decay.is_finite() {
        return invalid(format!("subordination decay must be positive, got {decay}"));
    }
    if !(tol > 0.0 && tol < 1.0) {
        return invalid("tolerance must lie in (0, 1)");
    }
    Ok(((100.0 / tol).ln() / decay).sqrt())
}

/// Half-line rule whose innermost u-panel has width `U / 2^levels`.
pub fn halfline_subordination_levels(decay: f64, tol: f64, levels: u32) -> Result<QuadratureRule> {
    let upper = halfline_upper(decay, tol)?;
    let levels = levels.clamp(1, 60);
    let mut breaks: Vec<f64> = (0..=levels).rev().map(|k| upper * 0.5f64.powi(k as i32)).collect();
    breaks.insert(0, 0.0);
    let rule = composite(&breaks, PANEL_NODES)?;
    let (nodes, weights): (Vec<f64>, Vec<f64>) = rule.iter1d().map(|(u, w)| (u * u, 2.0 * w)).unzip();
    Ok(QuadratureRule::new(1, nodes, weights, Domain::HalflineSqrt { decay }, PANEL_NODES))
}

type HalflineCache = Mutex<HashMap<(u64, u64, u32), Arc<QuadratureRule>>>;

/// As [`halfline_subordination`], graded finely enough to resolve integrands
/// that switch on at `t ≈ scale²` (such as `e^{−δ²/4t}` with δ ≈ scale).
/// Rules are cached by (decay, tol, grading depth).
pub fn halfline_subordination_graded(decay: f64, tol: f64, scale: f64) -> Result<Arc<QuadratureRule>> {
    static CACHE: OnceLock<HalflineCache> = OnceLock::new();
    let upper = halfline_upper(decay, tol)?;
    let finest = if scale.is_finite() && scale > 0.0 { (0.125 * scale).min(upper / 64.0) } else { upper / 64.0 };
    let levels = (upper / finest).log2().ceil().clamp(6.0, 60.0) as u32;
    let key = (decay.to_bits(), tol.to_bits(), levels);
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(r) = cache.lock().expect("quadrature cache poisoned").get(&key) {
        return Ok(r.clone());
    }
    let rule = Arc::new(halfline_subordination_levels(decay, tol, levels)?);
    cache.lock().expect("quadrature cache poisoned").insert(key, rule.clone());
    Ok(rule)
}

/// Tensor-product rule on S^{d−1} ⊂ ℝ^d, exact for polynomials of degree ≤ 2·level+1.
///
/// Built recursively: a point of S^{d−1} is `(u, √(1−u²)·η)` with `η ∈ S^{d−2}`
/// and measure `(1−u²)^{(d−3)/2} du dη`. The circle uses 2·level+2 equispaced
/// angles, so every rule is invariant under ω ↦ −ω.
pub fn sphere_rule(d: usize, level: usize) -> Result<QuadratureRule> {
    if !(2..=4).contains(&d) {
        return Err(Error::UnsupportedDimension { d, supported: "2..=4" });
    }
    if level == 0 {
        return invalid("sphere level must be >= 1");
    }
    let (nodes, weights) = sphere_points(d, level)?;
    Ok(QuadratureRule::new(d, nodes, weights, Domain::Sphere { d }, level))
}

fn sphere_points(d: usize, level: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if d == 2 {
        let n = 2 * level + 2;
        let mut nodes = Vec::with_capacity(2 * n);
        for k in 0..n {
            let th = 2.0 * PI * k as f64 / n as f64;
            nodes.push(th.cos());
            nodes.push(th.sin());
        }
        return Ok((nodes, vec![2.0 * PI / n as f64; n]));
    }
    let e = 0.5 * (d as f64 - 3.0);
    let jac = gauss_jacobi(level + 1, e, e)?;
    let (lower, lw) = sphere_points(d - 1, level)?;
    let mut nodes = Vec::with_capacity(jac.len() * lw.len() * d);
    let mut weights = Vec::with_capacity(jac.len() * lw.len());
    for (u, wu) in jac.iter1d() {
        let s = (1.0 - u * u).max(0.0).sqrt();
        for (k, wl) in lw.iter().enumerate() {
            nodes.push(u);
            nodes.extend(lower[k * (d - 1)..(k + 1) * (d - 1)].iter().map(|y| s * y));
            weights.push(wu * wl);
        }
    }
    Ok((nodes, weights))
}

/// Rule on S^{2d−1} ⊂ ℂ^d; node coordinates are `(x_1..x_d, y_1..y_d)`.
pub fn complex_sphere_rule(d: usize, level: usize) -> Result<QuadratureRule> {
    if !(1..=2).contains(&d) {
        return Err(Error::UnsupportedDimension { d, supported: "1..=2" });
    }
    if level == 0 {
        return invalid("sphere level must be >= 1");
    }
    let (nodes, weights) = sphere_points(2 * d, level)?;
    Ok(QuadratureRule::new(2 * d, nodes, weights, Domain::ComplexSphere { d }, level))
}

/// Surface measure of S^{n−1} ⊂ ℝ^n; `sphere_area(1) = 2` (two points).
pub fn sphere_area(n: usize) -> f64 {
    let h = 0.5 * n as f64;
    2.0 * PI.powf(h) / gamma(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn legendre_two_point_integrates_square() {
        let r = gauss_interval(2, -1.0, 1.0).unwrap();
        assert_relative_eq!(r.integrate1d(|u| u * u), 2.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn weights_sum_to_length() {
        let r = gauss_interval(5, 0.0, 1.0).unwrap();
        assert_relative_eq!(r.total_mass(), 1.0, max_relative = 1e-13);
        assert!(r.weights().iter().all(|&w| w > 0.0));
    }

    #[test]
    fn interval_rejects_bad_input() {
        assert!(gauss_interval(0, 0.0, 1.0).is_err());
        assert!(gauss_interval(3, f64::NAN, 1.0).is_err());
        assert!(gauss_interval(3, 1.0, 1.0).is_err());
    }

    #[test]
    fn jacobi_unit_weight_is_legendre() {
        let j = gauss_jacobi(7, 0.0, 0.0).unwrap();
        let l = gauss_interval(7, -1.0, 1.0).unwrap();
        for i in 0..7 {
            assert!((j.node(i)[0] - l.node(i)[0]).abs() < 1e-14);
            assert!((j.weight(i) - l.weight(i)).abs() < 1e-14);
        }
    }

    #[test]
    fn jacobi_half_exponents_mass() {
        let j = gauss_jacobi(6, 0.5, 0.5).unwrap();
        assert_relative_eq!(j.total_mass(), PI / 2.0, max_relative = 1e-14);
        assert!(gauss_jacobi(3, -1.0, 0.0).is_err());
    }

    #[test]
    fn chebyshev_limit_jacobi() {
        // exponents -1/2: nodes cos((2k-1)π/2n), weights π/n
        let n = 9;
        let j = gauss_jacobi(n, -0.5, -0.5).unwrap();
        for (i, (x, w)) in j.iter1d().enumerate() {
            let k = n - i;
            let expected = ((2 * k - 1) as f64 * PI / (2 * n) as f64).cos();
            assert!((x - expected).abs() < 1e-14);
            assert!((w - PI / n as f64).abs() < 1e-14);
        }
    }

    #[test]
    fn halfline_gamma_values() {
        let r = halfline_subordination(1.0, 1e-14).unwrap();
        assert_relative_eq!(r.integrate1d(|t| (-t).exp()), PI.sqrt(), max_relative = 1e-13);
        assert_relative_eq!(r.integrate1d(|t| t * (-t).exp()), PI.sqrt() / 2.0, max_relative = 1e-13);
        let r3 = halfline_subordination(3.0, 1e-14).unwrap();
        assert_relative_eq!(r3.integrate1d(|t| (-3.0 * t).exp()), (PI / 3.0).sqrt(), max_relative = 1e-13);
        assert!(halfline_subordination(0.0, 1e-10).is_err());
        let g = halfline_subordination_graded(2.0, 1e-14, 1e-3).unwrap();
        // ∫ e^{-δ²/4t} e^{-2t} t^{-1/2} dt = √(π/2) e^{-δ√2}
        let delta: f64 = 1e-3;
        let v = g.integrate1d(|t| (-delta * delta / (4.0 * t) - 2.0 * t).exp());
        assert_relative_eq!(v, (PI / 2.0).sqrt() * (-delta * 2f64.sqrt()).exp(), max_relative = 1e-12);
    }

    #[test]
    fn sphere_masses() {
        assert_relative_eq!(sphere_rule(3, 4).unwrap().total_mass(), 4.0 * PI, max_relative = 1e-13);
        assert_relative_eq!(sphere_rule(2, 1).unwrap().total_mass(), 2.0 * PI, max_relative = 1e-13);
        assert_relative_eq!(sphere_rule(4, 3).unwrap().total_mass(), 2.0 * PI * PI, max_relative = 1e-13);
        assert_relative_eq!(complex_sphere_rule(1, 2).unwrap().total_mass(), 2.0 * PI, max_relative = 1e-13);
        assert_relative_eq!(complex_sphere_rule(2, 2).unwrap().total_mass(), 2.0 * PI * PI, max_relative = 1e-13);
        assert!(matches!(sphere_rule(5, 2), Err(Error::UnsupportedDimension { .. })));
        assert!(matches!(complex_sphere_rule(3, 2), Err(Error::UnsupportedDimension { .. })));
    }

    #[test]
    fn sphere_rule_is_antipodal() {
        let r = sphere_rule(3, 3).unwrap();
        for i in 0..r.len() {
            let p = r.node(i);
            let found = (0..r.len()).any(|k| {
                let q = r.node(k);
                p.iter().zip(q).all(|(a, b)| (a + b).abs() < 1e-13) && (r.weight(k) - r.weight(i)).abs() < 1e-15
            });
            assert!(found);
        }
    }

    #[test]
    fn circle_orthogonality() {
        let r = complex_sphere_rule(1, 1).unwrap();
        let v = r.integrate_complex(|p| {
            let z = Complex64::new(p[0], p[1]);
            z * z.conj()
        });
        assert!((v - Complex64::new(2.0 * PI, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn hermite_and_laguerre_masses() {
        assert_relative_eq!(gauss_hermite(12).unwrap().total_mass(), PI.sqrt(), max_relative = 1e-13);
        let gl = gauss_laguerre(10, 1.5).unwrap();
        assert_relative_eq!(gl.total_mass(), gamma(2.5), max_relative = 1e-13);
        // ∫ x^2 x^{1.5} e^{-x} = Γ(4.5)
        assert_relative_eq!(gl.integrate1d(|x| x * x), gamma(4.5), max_relative = 1e-12);
    }

    #[test]
    fn graded_endpoint_power() {
        // ∫_0^2 v^{-1/2} (1+v) dv = 2√2 + (2/3) 2^{3/2}
        let r = graded_endpoint(2.0, -0.5, 1e-6, 12).unwrap();
        let exact = 2.0 * 2f64.sqrt() + 2.0 / 3.0 * 2f64.powf(1.5);
        assert_relative_eq!(r.integrate1d(|v| 1.0 + v), exact, max_relative = 1e-13);
    }
}
