//! Heat kernels and Riesz kernels for the Hermite, Laguerre and special
//! Hermite operators.
//!
//! Heat kernels come with a closed form and a truncated eigen-series. Riesz
//! kernels are subordinated heat kernels, `π^{−1/2} ∫₀^∞ (·) t^{−1/2} dt`,
//! evaluated with an analytic integrand on a graded half-line rule.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{LN_2, PI};
use std::io::Write;

use crate::constants::special_heat_cd;
use crate::error::{invalid, Error, Result};
use crate::quadrature::{graded_unit, halfline_subordination_graded, sphere_area};
use crate::specfun::{bessel_i_scaled, gegenbauer_norms, hermite_fns, laguerre_polys, phi_small, psi};

/// Evaluation route for heat kernels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "route", rename_all = "snake_case")]
pub enum KernelRoute {
    ClosedForm,
    /// Truncated eigen-expansion; `k_max = None` picks the cutoff from the tail bound.
    EigenSeries {
        k_max: Option<usize>,
    },
}

/// Route for the projected kernel K_m.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KmRoute {
    /// Sphere integral reduced to a Gegenbauer-weighted u-integral.
    FunkHecke,
    /// Type-shifted Laguerre heat kernel.
    HeckeBochner,
}

/// Options shared by the singular (Riesz-type) kernels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingularOptions {
    /// Reject queries closer than this to the singularity; default `1e−3·(1+|x|)`.
    pub diag_cutoff: Option<f64>,
    /// Relative tolerance handed to the half-line rule.
    pub tol: f64,
}

impl Default for SingularOptions {
    fn default() -> Self {
        Self { diag_cutoff: None, tol: 1e-13 }
    }
}

impl SingularOptions {
    fn cutoff(&self, anchor_norm: f64) -> f64 {
        self.diag_cutoff.unwrap_or(1e-3 * (1.0 + anchor_norm))
    }
}

fn check_time(t: f64) -> Result<()> {
    if !(t > 0.0) || !t.is_finite() {
        return invalid(format!("time must be positive and finite, got {t}"));
    }
    Ok(())
}

pub(crate) fn ln_sinh(x: f64) -> f64 {
    if x > 20.0 {
        x - LN_2 + (-(-2.0 * x).exp()).ln_1p()
    } else {
        x.sinh().ln()
    }
}

pub(crate) fn coth(x: f64) -> f64 {
    1.0 / x.tanh()
}

/// Smallest K with `(K+1)^{growth} e^{−gap·K} < 1e−15`.
fn tail_cutoff(gap: f64, growth: f64) -> usize {
    let target = 15.0 * std::f64::consts::LN_10;
    let mut k = (target / gap).ceil().max(1.0);
    while growth * (k + 1.0).ln() - gap * k > -target {
        k += 1.0;
    }
    k as usize + 2
}

fn norm_sq(v: impl Iterator<Item = f64>) -> f64 {
    v.map(|a| a * a).sum()
}

/// Exponent of the Mehler kernel, −¼coth t|x−y|² − ¼tanh t|x+y|².
fn mehler_exponent(t: f64, diff_sq: f64, sum_sq: f64) -> f64 {
    -0.25 * coth(t) * diff_sq - 0.25 * t.tanh() * sum_sq
}

fn mehler_closed(t: f64, d: usize, diff_sq: f64, sum_sq: f64) -> f64 {
    let dh = 0.5 * d as f64;
    (-dh * (2.0 * PI).ln() - dh * ln_sinh(2.0 * t) + mehler_exponent(t, diff_sq, sum_sq)).exp()
}

/// Hermite heat kernel K_t(x, y) on ℝ^d.
pub fn mehler(t: f64, x: &[f64], y: &[f64], route: KernelRoute) -> Result<f64> {
    check_time(t)?;
    if x.len() != y.len() || x.is_empty() {
        return invalid("mehler needs two points of equal positive dimension");
    }
    let d = x.len();
    match route {
        KernelRoute::ClosedForm => {
            let diff = norm_sq(x.iter().zip(y).map(|(a, b)| a - b));
            let sum = norm_sq(x.iter().zip(y).map(|(a, b)| a + b));
            Ok(mehler_closed(t, d, diff, sum))
        }
        KernelRoute::EigenSeries { k_max } => {
            let k = k_max.unwrap_or_else(|| tail_cutoff(2.0 * t, d as f64 - 1.0));
            Ok(mehler_series(t, x, y, k))
        }
    }
}

/// Σ_{|μ|≤K} e^{−(2|μ|+d)t} Φ_μ(x)Φ_μ(y), summed exactly over the simplex.
fn mehler_series(t: f64, x: &[f64], y: &[f64], k: usize) -> f64 {
    let d = x.len();
    let terms: Vec<Vec<f64>> = x
        .iter()
        .zip(y)
        .map(|(&a, &b)| {
            let ha = hermite_fns(k, a);
            let hb = hermite_fns(k, b);
            (0..=k).map(|n| (-2.0 * n as f64 * t).exp() * ha[n] * hb[n]).collect()
        })
        .collect();
    // tail[r] = Σ over the last coordinates with total order ≤ r
    let mut tail = vec![1.0; k + 1];
    for coord in terms.iter().rev() {
        let mut next = vec![0.0; k + 1];
        for (r, slot) in next.iter_mut().enumerate() {
            *slot = (0..=r).map(|n| coord[n] * tail[r - n]).sum();
        }
        tail = next;
    }
    (-(d as f64) * t).exp() * tail[k]
}

/// K_t(x, y) written through r = |x|, s = |y|, u = x′·y′.
pub fn mehler_polar(t: f64, r: f64, s: f64, u: f64, d: usize) -> Result<f64> {
    check_time(t)?;
    if r < 0.0 || s < 0.0 || !(u.abs() <= 1.0 + 1e-12) {
        return invalid("polar Mehler needs r, s >= 0 and |u| <= 1");
    }
    let dh = 0.5 * d as f64;
    let e = -0.5 * coth(2.0 * t) * (r * r + s * s) + r * s * u / (2.0 * t).sinh();
    Ok((-dh * (2.0 * PI).ln() - dh * ln_sinh(2.0 * t) + e).exp())
}

fn laguerre_heat_closed(t: f64, r: f64, s: f64, alpha: f64) -> Result<f64> {
    let sh = (2.0 * t).sinh();
    let z = r * s / sh;
    let base = -ln_sinh(2.0 * t) - 0.5 * coth(2.0 * t) * (r * r + s * s);
    if z == 0.0 {
        // (rs)^{−α} I_α(rs/sh) → (2 sh)^{−α} / Γ(α+1)
        let lg = statrs::function::gamma::ln_gamma(alpha + 1.0);
        return Ok((base - alpha * (2.0 * sh).ln() - lg).exp());
    }
    let scaled = bessel_i_scaled(alpha, z)?;
    Ok((base + z - alpha * (r * s).ln()).exp() * scaled)
}

/// Laguerre heat kernel K_t^α(r, s) with respect to dμ_α = r^{2α+1}dr.
pub fn laguerre_heat(t: f64, r: f64, s: f64, alpha: f64, route: KernelRoute) -> Result<f64> {
    check_time(t)?;
    if !(alpha >= -0.5) {
        return invalid(format!("Laguerre type must be >= -1/2, got {alpha}"));
    }
    if !(r >= 0.0 && s >= 0.0) {
        return invalid("radii must be non-negative");
    }
    match route {
        KernelRoute::ClosedForm => laguerre_heat_closed(t, r, s, alpha),
        KernelRoute::EigenSeries { k_max } => {
            let k = k_max.unwrap_or_else(|| tail_cutoff(4.0 * t, 1.0));
            Ok((0..=k as u32).map(|n| (-(4.0 * f64::from(n) + 2.0 * alpha + 2.0) * t).exp() * psi(n, alpha, r) * psi(n, alpha, s)).sum())
        }
    }
}

/// Special Hermite heat kernel p_t(z) on ℂ^d.
pub fn special_heat(t: f64, z: &[Complex64], route: KernelRoute) -> Result<f64> {
    let rho = z.iter().map(|w| w.norm_sqr()).sum::<f64>().sqrt();
    special_heat_radial(t, rho, z.len(), route)
}

/// p_t as a function of ρ = |z|.
pub fn special_heat_radial(t: f64, rho: f64, d: usize, route: KernelRoute) -> Result<f64> {
    check_time(t)?;
    if d == 0 {
        return invalid("complex dimension must be positive");
    }
    match route {
        KernelRoute::ClosedForm => {
            let df = d as f64;
            Ok(special_heat_cd(d) * (-df * ln_sinh(t) - 0.25 * rho * rho * coth(t)).exp())
        }
        KernelRoute::EigenSeries { k_max } => {
            let k = k_max.unwrap_or_else(|| tail_cutoff(2.0 * t, d as f64 - 1.0));
            let x = 0.5 * rho * rho;
            let l = laguerre_polys(k, d as f64 - 1.0, x);
            let env = (-0.5 * x).exp();
            let s: f64 = l.iter().enumerate().map(|(n, v)| (-(2.0 * n as f64 + d as f64) * t).exp() * v).sum();
            Ok((2.0 * PI).powi(-(d as i32)) * s * env)
        }
    }
}

/// k_t^δ(r, s), the heat kernel of the φ_k^δ system (eigenvalues 2k+δ+1).
pub fn k_small(t: f64, r: f64, s: f64, delta: f64, route: KernelRoute) -> Result<f64> {
    check_time(t)?;
    match route {
        KernelRoute::ClosedForm => {
            let c = std::f64::consts::FRAC_1_SQRT_2;
            Ok(2f64.powf(-delta - 1.0) * laguerre_heat(0.5 * t, c * r, c * s, delta, KernelRoute::ClosedForm)?)
        }
        KernelRoute::EigenSeries { k_max } => {
            let k = k_max.unwrap_or_else(|| tail_cutoff(2.0 * t, 1.0));
            Ok((0..=k as u32).map(|n| (-(2.0 * f64::from(n) + delta + 1.0) * t).exp() * phi_small(n, delta, r) * phi_small(n, delta, s)).sum())
        }
    }
}

/// Analytic `(∂_{x_j} + x_j) K_t(x, y)`.
pub fn mehler_raised(t: f64, j: usize, x: &[f64], y: &[f64]) -> f64 {
    let d = x.len();
    let diff = norm_sq(x.iter().zip(y).map(|(a, b)| a - b));
    let sum = norm_sq(x.iter().zip(y).map(|(a, b)| a + b));
    let factor = x[j] - 0.5 * coth(t) * (x[j] - y[j]) - 0.5 * t.tanh() * (x[j] + y[j]);
    factor * mehler_closed(t, d, diff, sum)
}

/// Riesz kernel R_j(x, y) = π^{−1/2} ∫₀^∞ (∂_{x_j} + x_j) K_t(x, y) t^{−1/2} dt.
pub fn hermite_riesz_kernel(j: usize, x: &[f64], y: &[f64], opts: &SingularOptions) -> Result<f64> {
    let d = x.len();
    if y.len() != d || j >= d {
        return invalid("index or dimension mismatch in Riesz kernel");
    }
    let dist = norm_sq(x.iter().zip(y).map(|(a, b)| a - b)).sqrt();
    let xnorm = norm_sq(x.iter().copied()).sqrt();
    let cutoff = opts.cutoff(xnorm);
    if dist < cutoff {
        return Err(Error::NearDiagonal { distance: dist, cutoff });
    }
    let rule = halfline_subordination_graded(d as f64, opts.tol, dist)?;
    Ok(rule.integrate1d(|t| mehler_raised(t, j, x, y)) / PI.sqrt())
}

/// Adjoint-side kernel R_j^*(x, y), built from `(−∂_{x_j} + x_j) K_t`.
pub fn hermite_riesz_adjoint_kernel(j: usize, x: &[f64], y: &[f64], opts: &SingularOptions) -> Result<f64> {
    let d = x.len();
    if y.len() != d || j >= d {
        return invalid("index or dimension mismatch in Riesz kernel");
    }
    let dist = norm_sq(x.iter().zip(y).map(|(a, b)| a - b)).sqrt();
    let cutoff = opts.cutoff(norm_sq(x.iter().copied()).sqrt());
    if dist < cutoff {
        return Err(Error::NearDiagonal { distance: dist, cutoff });
    }
    let rule = halfline_subordination_graded(d as f64, opts.tol, dist)?;
    let diff_sq = dist * dist;
    let sum_sq = norm_sq(x.iter().zip(y).map(|(a, b)| a + b));
    Ok(rule.integrate1d(|t| {
        let factor = x[j] + 0.5 * coth(t) * (x[j] - y[j]) + 0.5 * t.tanh() * (x[j] + y[j]);
        factor * mehler_closed(t, d, diff_sq, sum_sq)
    }) / PI.sqrt())
}

/// Radial factor σ with s_j(z) = z̄_j σ(|z|) (or s̄_j(z) = z_j σ(|z|) when `conjugate`).
///
/// Uses `Z_j p_t = ¼ z̄_j (1 − coth t) p_t` and `Z̄_j p_t = −¼ z_j (1 + coth t) p_t`.
pub fn special_riesz_radial(rho: f64, d: usize, conjugate: bool, tol: f64) -> Result<f64> {
    if !(rho > 0.0) {
        return Err(Error::NearDiagonal { distance: rho, cutoff: 0.0 });
    }
    let df = d as f64;
    let decay = if conjugate { df } else { df + 2.0 };
    let rule = halfline_subordination_graded(decay, tol, rho)?;
    let cd = special_heat_cd(d);
    let v = rule.integrate1d(|t| {
        let em = (2.0 * t).exp_m1();
        let factor = if conjugate { -0.25 * (2.0 + 2.0 / em) } else { 0.25 * (-2.0 / em) };
        factor * cd * (-df * ln_sinh(t) - 0.25 * rho * rho * coth(t)).exp()
    });
    Ok(v / PI.sqrt())
}

/// Special Riesz kernel s_j(z) (or its conjugate counterpart for S̄_j).
pub fn special_riesz_kernel(j: usize, z: &[Complex64], conjugate: bool, opts: &SingularOptions) -> Result<Complex64> {
    if j >= z.len() {
        return invalid("index out of range in special Riesz kernel");
    }
    let rho = z.iter().map(|w| w.norm_sqr()).sum::<f64>().sqrt();
    let cutoff = opts.diag_cutoff.unwrap_or(1e-3);
    if rho < cutoff {
        return Err(Error::NearDiagonal { distance: rho, cutoff });
    }
    let sigma = special_riesz_radial(rho, z.len(), conjugate, opts.tol)?;
    Ok(if conjugate { z[j] * sigma } else { z[j].conj() * sigma })
}

fn check_km_args(m: u32, r: f64, s: f64, d: usize, opts: &SingularOptions) -> Result<()> {
    if m > 8 || !(2..=4).contains(&d) {
        return Err(Error::UnsupportedRange(format!("K_m needs m <= 8 and 2 <= d <= 4, got m={m}, d={d}")));
    }
    if !(r > 0.0 && s > 0.0) {
        return invalid("K_m needs positive radii");
    }
    let cutoff = opts.cutoff(r);
    if (r - s).abs() < cutoff {
        return Err(Error::NearDiagonal { distance: (r - s).abs(), cutoff });
    }
    Ok(())
}

/// `|S^{d−2}| ∫_{−1}^{1} K_t(r,s,u) P_m(u) (1−u²)^{(d−3)/2} du`.
pub fn funk_hecke_mehler(t: f64, m: u32, r: f64, s: f64, d: usize) -> Result<f64> {
    let e = 0.5 * (d as f64 - 3.0);
    let dh = 0.5 * d as f64;
    let sh = (2.0 * t).sinh();
    let a = r * s / sh;
    // K_t(r,s,u) = exp(lead − a(1−u)), lead = −¼coth t (r−s)² − ¼tanh t (r+s)²
    let lead = -dh * (2.0 * PI).ln() - dh * ln_sinh(2.0 * t) - 0.25 * coth(t) * (r - s).powi(2) - 0.25 * t.tanh() * (r + s).powi(2);
    let levels = ((8.0 * a.max(1.0)).log2().ceil() as u32).max(6);
    let near = graded_unit(e, levels)?;
    let far = graded_unit(e, 6)?;
    let mm = m as usize;
    let mut acc = 0.0;
    for (v, w) in near.iter1d() {
        // u = 1 − v on [0, 1]
        let p = gegenbauer_norms(mm, d, 1.0 - v)?[mm];
        acc += w * (2.0 - v).powf(e) * (-a * v).exp() * p;
    }
    for (v, w) in far.iter1d() {
        // u = v − 1 on [−1, 0]
        let p = gegenbauer_norms(mm, d, v - 1.0)?[mm];
        acc += w * (2.0 - v).powf(e) * (-a * (2.0 - v)).exp() * p;
    }
    Ok(sphere_area(d - 1) * lead.exp() * acc)
}

/// Projected kernel K_m(r, s) of H^{−1/2} on degree-m harmonics:
/// `F_{m,j}(r) = ∫ K_m(r, s) f_{m,j}(s) s^{d−1} ds`.
pub fn projected_kernel_km(m: u32, r: f64, s: f64, d: usize, route: KmRoute, opts: &SingularOptions) -> Result<f64> {
    check_km_args(m, r, s, d, opts)?;
    let rule = halfline_subordination_graded(d as f64, opts.tol, (r - s).abs())?;
    let alpha = 0.5 * d as f64 - 1.0;
    let mut acc = 0.0;
    for (t, w) in rule.iter1d() {
        let g = match route {
            KmRoute::FunkHecke => funk_hecke_mehler(t, m, r, s, d)?,
            KmRoute::HeckeBochner => (r * s).powi(m as i32) * laguerre_heat_closed(t, r, s, alpha + f64::from(m))?,
        };
        acc += w * g;
    }
    Ok(acc / PI.sqrt())
}

/// One row of a kernel sweep export.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelSweepRow {
    pub kernel: String,
    pub route: String,
    pub t: Option<f64>,
    pub r: f64,
    pub s: f64,
    pub param: Option<f64>,
    pub value: f64,
}

/// Writes sweep rows as CSV with a header line.
pub fn write_sweep_csv<W: Write>(rows: &[KernelSweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row).map_err(|e| Error::Io(e.to_string()))?;
    }
    w.flush().map_err(|e| Error::Io(e.to_string()))
}
