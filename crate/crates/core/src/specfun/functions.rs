//! Scalar special functions: Hermite functions, Laguerre polynomials and the
//! normalised Laguerre families, modified Bessel I_α, normalised Gegenbauer.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;
use std::f64::consts::PI;

use crate::error::{invalid, Error, Result};

/// Hermite multi-index μ ∈ ℕ^d.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        Self(entries)
    }

    pub fn zero(d: usize) -> Self {
        Self(vec![0; d])
    }

    pub fn unit(d: usize, j: usize) -> Self {
        let mut v = vec![0; d];
        v[j] = 1;
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// |μ| = Σ μ_j.
    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn get(&self, j: usize) -> u32 {
        self.0[j]
    }

    /// μ ± e_j, or `None` when the entry would go negative.
    pub fn shifted(&self, j: usize, up: bool) -> Option<MultiIndex> {
        let mut v = self.0.clone();
        if up {
            v[j] += 1;
        } else {
            v[j] = v[j].checked_sub(1)?;
        }
        Some(Self(v))
    }

    /// All μ ∈ ℕ^d with |μ| ≤ max_order, ordered by |μ| then lexicographically.
    pub fn all_up_to(d: usize, max_order: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        for n in 0..=max_order {
            let mut level = Vec::new();
            compositions(d, n, &mut Vec::new(), &mut level);
            level.sort();
            out.extend(level.into_iter().map(MultiIndex));
        }
        out
    }
}

/// Every exponent vector of length `d` summing to `n`.
pub fn compositions(d: usize, n: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if prefix.len() + 1 == d {
        let mut v = prefix.clone();
        v.push(n);
        out.push(v);
        return;
    }
    if d == 0 {
        return;
    }
    for k in 0..=n {
        prefix.push(k);
        compositions(d, n - k, prefix, out);
        prefix.pop();
    }
}

/// Sorted exponent vectors of length d and total degree n.
pub fn monomial_exponents(d: usize, n: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    compositions(d, n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Laguerre mode label (k, α).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LaguerreIndex {
    pub k: u32,
    pub alpha: f64,
}

impl LaguerreIndex {
    pub fn new(k: u32, alpha: f64) -> Result<Self> {
        if !(alpha >= -0.5) {
            return invalid(format!("Laguerre type must be >= -1/2, got {alpha}"));
        }
        Ok(Self { k, alpha })
    }

    /// Eigenvalue 4k + 2α + 2 of L_α.
    pub fn eigenvalue(&self) -> f64 {
        4.0 * f64::from(self.k) + 2.0 * self.alpha + 2.0
    }
}

/// h_0..h_kmax at x, L²(ℝ)-orthonormal Hermite functions.
pub fn hermite_fns(kmax: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(kmax + 1);
    out.push(PI.powf(-0.25) * (-0.5 * x * x).exp());
    if kmax >= 1 {
        out.push(2f64.sqrt() * x * out[0]);
    }
    for k in 1..kmax {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * x * out[k] - (kf / (kf + 1.0)).sqrt() * out[k - 1];
        out.push(next);
    }
    out
}

pub fn hermite_fn(k: usize, x: f64) -> f64 {
    hermite_fns(k, x)[k]
}

/// h_k from the explicit sum for the physicists' polynomial H_k.
pub fn hermite_fn_explicit(k: usize, x: f64) -> f64 {
    // a_m = (−1)^m k! 2^{k−2m} / (m!(k−2m)!)
    let mut a = 2f64.powi(k as i32);
    let mut hk = a * x.powi(k as i32);
    for m in 1..=k / 2 {
        a *= -(((k - 2 * m + 2) * (k - 2 * m + 1)) as f64) / (4.0 * m as f64);
        hk += a * x.powi((k - 2 * m) as i32);
    }
    let fact: f64 = (1..=k).map(|i| i as f64).product();
    hk / (2f64.powi(k as i32) * fact * PI.sqrt()).sqrt() * (-0.5 * x * x).exp()
}

/// Φ_μ(x) = Π_j h_{μ_j}(x_j).
pub fn hermite_fn_multi(mu: &MultiIndex, x: &[f64]) -> f64 {
    mu.0.iter().zip(x).map(|(&k, &xi)| hermite_fn(k as usize, xi)).product()
}

/// L_0^α..L_kmax^α at x by the three-term recurrence.
pub fn laguerre_polys(kmax: usize, alpha: f64, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(kmax + 1);
    out.push(1.0);
    if kmax >= 1 {
        out.push(alpha + 1.0 - x);
    }
    for k in 1..kmax {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * out[k] - (kf + alpha) * out[k - 1]) / (kf + 1.0);
        out.push(next);
    }
    out
}

/// L_k^α(x); zero for negative k (so L_{k−1} at k = 0 vanishes).
pub fn laguerre_poly(k: i64, alpha: f64, x: f64) -> f64 {
    if k < 0 {
        return 0.0;
    }
    laguerre_polys(k as usize, alpha, x)[k as usize]
}

/// L_k^α(x) = Σ_i (−1)^i C(k+α, k−i) x^i / i!.
pub fn laguerre_poly_explicit(k: u32, alpha: f64, x: f64) -> f64 {
    // c_0 = C(k+α, k) = Π_{j≤k} (α+j)/j
    let mut c: f64 = (1..=k).map(|j| (alpha + f64::from(j)) / f64::from(j)).product();
    let mut sum = c;
    for i in 0..k {
        let fi = f64::from(i);
        c *= -(f64::from(k) - fi) / ((alpha + fi + 1.0) * (fi + 1.0)) * x;
        sum += c;
    }
    sum
}

fn psi_norm(k: u32, alpha: f64) -> f64 {
    (0.5 * (2f64.ln() + ln_gamma(f64::from(k) + 1.0) - ln_gamma(f64::from(k) + alpha + 1.0))).exp()
}

/// ψ_k^α(r) = (2Γ(k+1)/Γ(k+α+1))^{1/2} L_k^α(r²) e^{−r²/2}.
pub fn psi(k: u32, alpha: f64, r: f64) -> f64 {
    psi_norm(k, alpha) * laguerre_poly(i64::from(k), alpha, r * r) * (-0.5 * r * r).exp()
}

/// dψ_k^α/dr, using (L_k^α)′ = −L_{k−1}^{α+1}.
pub fn psi_deriv(k: u32, alpha: f64, r: f64) -> f64 {
    let x = r * r;
    let l = laguerre_poly(i64::from(k), alpha, x);
    let dl = -laguerre_poly(i64::from(k) - 1, alpha + 1.0, x);
    psi_norm(k, alpha) * (2.0 * r * dl - r * l) * (-0.5 * x).exp()
}

/// (∂_r + r)ψ_k^α(r) = −2c_k r L_{k−1}^{α+1}(r²) e^{−r²/2}.
pub fn psi_raise(k: u32, alpha: f64, r: f64) -> f64 {
    let x = r * r;
    -2.0 * psi_norm(k, alpha) * r * laguerre_poly(i64::from(k) - 1, alpha + 1.0, x) * (-0.5 * x).exp()
}

pub(crate) fn phi_norm(k: u32, delta: f64) -> f64 {
    (0.5 * (ln_gamma(f64::from(k) + 1.0) - delta * 2f64.ln() - ln_gamma(f64::from(k) + delta + 1.0))).exp()
}

/// φ_k^δ(r) = (Γ(k+1)2^{−δ}/Γ(k+δ+1))^{1/2} L_k^δ(r²/2) e^{−r²/4}.
pub fn phi_small(k: u32, delta: f64, r: f64) -> f64 {
    let x = 0.5 * r * r;
    phi_norm(k, delta) * laguerre_poly(i64::from(k), delta, x) * (-0.5 * x).exp()
}

/// dφ_k^δ/dr.
pub fn phi_small_deriv(k: u32, delta: f64, r: f64) -> f64 {
    let x = 0.5 * r * r;
    let l = laguerre_poly(i64::from(k), delta, x);
    let dl = -laguerre_poly(i64::from(k) - 1, delta + 1.0, x);
    phi_norm(k, delta) * (r * dl - 0.5 * r * l) * (-0.5 * x).exp()
}

/// φ_k(z) = L_k^{d−1}(|z|²/2) e^{−|z|²/4} on ℂ^d.
pub fn laguerre_phi_fock(k: u32, d: usize, z: &[Complex64]) -> f64 {
    let r2: f64 = z.iter().map(|w| w.norm_sqr()).sum();
    laguerre_phi_fock_radial(k, d, r2.sqrt())
}

pub fn laguerre_phi_fock_radial(k: u32, d: usize, r: f64) -> f64 {
    let x = 0.5 * r * r;
    laguerre_poly(i64::from(k), d as f64 - 1.0, x) * (-0.5 * x).exp()
}

fn check_bessel_args(alpha: f64, x: f64) -> Result<()> {
    if !(alpha > -1.0) || !alpha.is_finite() {
        return Err(Error::Domain(format!("Bessel order must exceed -1, got {alpha}")));
    }
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("Bessel argument must be finite and >= 0, got {x}")));
    }
    Ok(())
}

/// e^{−x} I_α(x) from the power series, with the exponential folded into
/// the leading term so no intermediate overflows.
pub fn bessel_i_scaled_series(alpha: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if alpha == 0.0 { 1.0 } else { 0.0 };
    }
    let h = 0.5 * x;
    let mut term = (alpha * h.ln() - ln_gamma(alpha + 1.0) - x).exp();
    let q = h * h;
    let mut sum = 0.0;
    let mut k = 0.0;
    // compensated summation keeps the long positive series at full accuracy
    let mut comp = 0.0;
    for _ in 0..100_000 {
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        let ratio = q / ((k + 1.0) * (k + 1.0 + alpha));
        term *= ratio;
        k += 1.0;
        if ratio < 1.0 && term < 1e-18 * sum {
            break;
        }
    }
    sum
}

/// e^{−x} I_α(x) from the large-argument expansion
/// `(2πx)^{−1/2} Σ_k (−1)^k a_k(α) x^{−k}`, truncated at its smallest term.
pub fn bessel_i_scaled_asymptotic(alpha: f64, x: f64) -> f64 {
    let mu = 4.0 * alpha * alpha;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..500 {
        let kf = k as f64;
        let next = -term * (mu - (2.0 * kf - 1.0).powi(2)) / (8.0 * kf * x);
        if next == 0.0 {
            break;
        }
        if next.abs() >= term.abs() && kf > alpha {
            break;
        }
        sum += next;
        term = next;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum / (2.0 * PI * x).sqrt()
}

/// Argument above which the large-argument route is used.
pub fn bessel_split(alpha: f64) -> f64 {
    20.0 + alpha * alpha
}

/// e^{−x} I_α(x).
pub fn bessel_i_scaled(alpha: f64, x: f64) -> Result<f64> {
    check_bessel_args(alpha, x)?;
    Ok(if x < bessel_split(alpha) { bessel_i_scaled_series(alpha, x) } else { bessel_i_scaled_asymptotic(alpha, x) })
}

/// I_α(x); errors when the value exceeds the f64 range.
pub fn bessel_i(alpha: f64, x: f64) -> Result<f64> {
    let s = bessel_i_scaled(alpha, x)?;
    let v = s * x.exp();
    if !v.is_finite() {
        return Err(Error::Domain(format!("I_{alpha}({x}) overflows f64; use the scaled variant")));
    }
    Ok(v)
}

/// Normalised ultraspherical P_0..P_mmax of index λ = d/2 − 1 at u, P_m(1) = 1.
pub fn gegenbauer_norms(mmax: usize, d: usize, u: f64) -> Result<Vec<f64>> {
    if d < 2 {
        return invalid(format!("Gegenbauer index needs d >= 2, got {d}"));
    }
    if !(u.abs() <= 1.0 + 1e-12) {
        return Err(Error::Domain(format!("|u| = {} exceeds 1", u.abs())));
    }
    let u = u.clamp(-1.0, 1.0);
    let lambda = 0.5 * d as f64 - 1.0;
    let mut out = Vec::with_capacity(mmax + 1);
    out.push(1.0);
    if mmax >= 1 {
        out.push(u);
    }
    for m in 1..mmax {
        let mf = m as f64;
        let next = (2.0 * (mf + lambda) * u * out[m] - mf * out[m - 1]) / (mf + 2.0 * lambda);
        out.push(next);
    }
    Ok(out)
}

pub fn gegenbauer_norm(m: usize, d: usize, u: f64) -> Result<f64> {
    Ok(gegenbauer_norms(m, d, u)?[m])
}

pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    (ln_gamma(f64::from(n) + 1.0) - ln_gamma(f64::from(k) + 1.0) - ln_gamma(f64::from(n - k) + 1.0)).exp().round()
}
