//! Sampled decay ratios for the Riesz and projected kernels, the Beta-type
//! integral bound used for the operator-valued kernels, and Hörmander-type
//! integrals.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::weights::ball_measure;
use crate::error::{invalid, Error, Result};
use crate::kernels::{hermite_riesz_kernel, projected_kernel_km, KmRoute, SingularOptions};
use crate::quadrature::{composite, gauss_interval, geometric_breaks, graded_endpoint};

pub const DECAY_SCHEMA_VERSION: u32 = 1;

/// Kernel probed by [`kernel_decay_report`]; `j` is 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kernel", rename_all = "snake_case")]
pub enum DecayKernel {
    /// `R_j(x, y)` on ℝ^d.
    RieszPointwise { d: usize, j: usize },
    /// `R_j(r, s)` acting on `L²(S^{d−1})`, through `sup_ω ∫ |R_j(rω, sω′)| dω′`.
    RieszOperator { d: usize, j: usize },
    /// `K_m(r, s)`.
    ProjectedKm { d: usize, m: u32 },
}

/// Largest normalized value over the samples and where it occurred.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayBound {
    pub name: String,
    pub sup: f64,
    pub argmax: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayReport {
    pub schema_version: u32,
    pub kernel: DecayKernel,
    pub samples: usize,
    pub seed: u64,
    pub bounds: Vec<DecayBound>,
}

impl DecayReport {
    pub fn bound(&self, name: &str) -> Option<&DecayBound> {
        self.bounds.iter().find(|b| b.name == name)
    }
}

struct Tracker {
    bounds: Vec<DecayBound>,
}

impl Tracker {
    fn new(names: &[&str]) -> Self {
        Self { bounds: names.iter().map(|n| DecayBound { name: n.to_string(), sup: 0.0, argmax: Vec::new() }).collect() }
    }

    fn record(&mut self, values: &[f64], at: &[f64]) -> Result<()> {
        for (b, &v) in self.bounds.iter_mut().zip(values) {
            if !v.is_finite() {
                return Err(Error::Resolution(format!("non-finite {} at {at:?}", b.name)));
            }
            if v > b.sup {
                b.sup = v;
                b.argmax = at.to_vec();
            }
        }
        Ok(())
    }
}

fn unit_vector(rng: &mut ChaCha8Rng, d: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..d).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-8 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

/// `(r, s)` with `r` log-uniform in `[lo, hi]` and `s = r e^{±τ}`, `τ` log-uniform in `[τ_lo, τ_hi]`.
fn radial_pair(rng: &mut ChaCha8Rng, lo: f64, hi: f64, tau: (f64, f64)) -> (f64, f64) {
    let r = (lo.ln() + rng.random::<f64>() * (hi / lo).ln()).exp();
    let t = 10f64.powf(tau.0.log10() + rng.random::<f64>() * (tau.1 / tau.0).log10());
    let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
    (r, r * (sign * t).exp())
}

/// Points ω′ on S^{d−1} with weights, refined around ω at angular scale `scale`.
pub(crate) fn zonal_rule(omega: &[f64], scale: f64) -> Result<Vec<(Vec<f64>, f64)>> {
    let d = omega.len();
    let finest = (0.25 * scale).min(0.5);
    match d {
        2 => {
            let rule = composite(&geometric_breaks(0.0, std::f64::consts::PI, finest), 6)?;
            let mut out = Vec::with_capacity(2 * rule.len());
            for (th, w) in rule.iter1d() {
                for sgn in [1.0, -1.0] {
                    let (s, c) = (sgn * th).sin_cos();
                    out.push((vec![omega[0] * c - omega[1] * s, omega[0] * s + omega[1] * c], w));
                }
            }
            Ok(out)
        }
        3 => {
            // orthonormal frame (ω, e1, e2)
            let pivot = if omega[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
            let dot: f64 = pivot.iter().zip(omega).map(|(a, b)| a * b).sum();
            let mut e1: Vec<f64> = pivot.iter().zip(omega).map(|(a, b)| a - dot * b).collect();
            let n1 = e1.iter().map(|x| x * x).sum::<f64>().sqrt();
            e1.iter_mut().for_each(|x| *x /= n1);
            let e2 = [omega[1] * e1[2] - omega[2] * e1[1], omega[2] * e1[0] - omega[0] * e1[2], omega[0] * e1[1] - omega[1] * e1[0]];
            let rule = composite(&geometric_breaks(0.0, 2.0, 0.5 * finest * finest), 6)?;
            let naz = 12;
            let mut out = Vec::with_capacity(naz * rule.len());
            for (v, w) in rule.iter1d() {
                let u = 1.0 - v;
                let rad = (1.0 - u * u).max(0.0).sqrt();
                for k in 0..naz {
                    let (s, c) = (2.0 * std::f64::consts::PI * (k as f64 + 0.5) / naz as f64).sin_cos();
                    let p: Vec<f64> = (0..3).map(|i| u * omega[i] + rad * (c * e1[i] + s * e2[i])).collect();
                    out.push((p, w * 2.0 * std::f64::consts::PI / naz as f64));
                }
            }
            Ok(out)
        }
        _ => Err(Error::UnsupportedDimension { d, supported: "2..=3" }),
    }
}

fn probe_directions(d: usize, j: usize) -> Vec<Vec<f64>> {
    let mut e = vec![0.0; d];
    e[j] = 1.0;
    let diag = vec![1.0 / (d as f64).sqrt(); d];
    vec![e, diag]
}

fn scaled(v: &[f64], r: f64) -> Vec<f64> {
    v.iter().map(|x| r * x).collect()
}

/// `sup_ω ∫ |R_j(rω, sω′)| dω′` and the same for `∂_r R_j`.
fn operator_proxy(d: usize, j: usize, r: f64, s: f64, opts: &SingularOptions) -> Result<(f64, f64)> {
    let h = 0.01 * (r - s).abs();
    let scale = (r - s).abs() / r.max(s);
    let mut best = (0.0f64, 0.0f64);
    for omega in probe_directions(d, j) {
        let (x, xp, xm) = (scaled(&omega, r), scaled(&omega, r + h), scaled(&omega, r - h));
        let mut acc = (0.0, 0.0);
        for (w_dir, w) in zonal_rule(&omega, scale)? {
            let y = scaled(&w_dir, s);
            acc.0 += w * hermite_riesz_kernel(j, &x, &y, opts)?.abs();
            let dr = (hermite_riesz_kernel(j, &xp, &y, opts)? - hermite_riesz_kernel(j, &xm, &y, opts)?) / (2.0 * h);
            acc.1 += w * dr.abs();
        }
        best = (best.0.max(acc.0), best.1.max(acc.1));
    }
    Ok(best)
}

/// Sup over seeded off-diagonal samples of each kernel bound, normalized by
/// the claimed decay.
pub fn kernel_decay_report(kernel: DecayKernel, samples: usize, seed: u64) -> Result<DecayReport> {
    if samples == 0 {
        return invalid("need at least one sample");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let opts = SingularOptions::default();
    let tracker = match kernel {
        DecayKernel::RieszPointwise { d, j } => {
            if d == 0 || j >= d {
                return invalid(format!("Riesz index {j} out of range for d = {d}"));
            }
            let mut t = Tracker::new(&["kernel_times_dist_pow_d", "gradient_times_dist_pow_d_plus_1"]);
            for _ in 0..samples {
                let x = scaled(&unit_vector(&mut rng, d), 3.0 * rng.random::<f64>());
                let rho = 10f64.powf(-2.0 + rng.random::<f64>() * (4f64.log10() + 2.0));
                let y: Vec<f64> = x.iter().zip(unit_vector(&mut rng, d)).map(|(a, b)| a + rho * b).collect();
                let k = hermite_riesz_kernel(j, &x, &y, &opts)?;
                let h = 1e-3 * rho;
                let mut grad = 0.0;
                for i in 0..d {
                    let (mut xp, mut xm) = (x.clone(), x.clone());
                    xp[i] += h;
                    xm[i] -= h;
                    let g = (hermite_riesz_kernel(j, &xp, &y, &opts)? - hermite_riesz_kernel(j, &xm, &y, &opts)?) / (2.0 * h);
                    grad += g * g;
                }
                let at: Vec<f64> = x.iter().chain(&y).copied().collect();
                t.record(&[k.abs() * rho.powi(d as i32), grad.sqrt() * rho.powi(d as i32 + 1)], &at)?;
            }
            t
        }
        DecayKernel::RieszOperator { d, j } => {
            if !(2..=3).contains(&d) {
                return Err(Error::UnsupportedDimension { d, supported: "2..=3" });
            }
            if j >= d {
                return invalid(format!("Riesz index {j} out of range for d = {d}"));
            }
            let alpha = 0.5 * d as f64 - 1.0;
            let mut t = Tracker::new(&["proxy_times_ball", "proxy_times_dist_radial", "radial_derivative_times_dist_ball"]);
            for _ in 0..samples {
                let (r, s) = radial_pair(&mut rng, 0.2, 4.0, (0.03, 2.0));
                let (p0, p1) = operator_proxy(d, j, r, s, &opts)?;
                let dist = (r - s).abs();
                let mu = ball_measure(r, dist, alpha)?;
                let radial = dist * (r * r + s * s).powf(0.5 * (d as f64 - 1.0));
                t.record(&[p0 * mu, p0 * radial, p1 * dist * mu], &[r, s])?;
            }
            t
        }
        DecayKernel::ProjectedKm { d, m } => {
            let alpha = 0.5 * d as f64 - 1.0;
            let mut t = Tracker::new(&["raised_times_ball", "raised_derivative_times_dist_ball"]);
            for _ in 0..samples {
                let (r, s) = radial_pair(&mut rng, 0.1, 4.0, (0.03, 2.0));
                let dist = (r - s).abs();
                let h = 0.02 * dist.min(r);
                let k = |x: f64| projected_kernel_km(m, x, s, d, KmRoute::HeckeBochner, &opts);
                let v = [k(r - 2.0 * h)?, k(r - h)?, k(r)?, k(r + h)?, k(r + 2.0 * h)?];
                let d1 = (v[0] - 8.0 * v[1] + 8.0 * v[3] - v[4]) / (12.0 * h);
                let d2 = (-v[0] + 16.0 * v[1] - 30.0 * v[2] + 16.0 * v[3] - v[4]) / (12.0 * h * h);
                let raised = d1 + r * v[2];
                let raised_deriv = d2 + v[2] + r * d1;
                let mu = ball_measure(r, dist, alpha)?;
                t.record(&[raised.abs() * mu, raised_deriv.abs() * dist * mu], &[r, s])?;
            }
            t
        }
    };
    Ok(DecayReport { schema_version: DECAY_SCHEMA_VERSION, kernel, samples, seed, bounds: tracker.bounds })
}

/// One admissible `(A, B, c, λ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BetaSample {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub lambda: f64,
}

impl BetaSample {
    pub fn validate(&self) -> Result<()> {
        if !(self.c >= 0.5)
            || !(self.b > 0.0)
            || !(self.a > self.b)
            || !(self.lambda > 0.0)
            || !self.a.is_finite()
            || !self.c.is_finite()
            || !self.lambda.is_finite()
        {
            return invalid(format!("need c >= 1/2, 0 < B < A, λ > 0; got {self:?}"));
        }
        Ok(())
    }
}

/// `∫₀¹ (1−u)^{c−1/2} (A − Bu)^{−(c+λ+1/2)} du`.
pub fn beta_integral(s: &BetaSample) -> Result<f64> {
    s.validate()?;
    // with v = 1 − u the integrand is v^{c−1/2} (A − B + Bv)^{−q}, peaked at scale (A−B)/B
    let q = s.c + s.lambda + 0.5;
    let eps = (s.a - s.b) / s.b;
    let rule = graded_endpoint(1.0, s.c - 0.5, 0.05 * eps.min(1.0), 16)?;
    Ok(rule.integrate1d(|v| (s.a - s.b + s.b * v).powf(-q)))
}

/// `∫ ... · A^{c+1/2} (A−B)^λ`, bounded by a constant depending on `(c, λ)`.
pub fn beta_ratio(s: &BetaSample) -> Result<f64> {
    Ok(beta_integral(s)? * s.a.powf(s.c + 0.5) * (s.a - s.b).powf(s.lambda))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BetaReport {
    pub samples: Vec<BetaSample>,
    pub ratios: Vec<f64>,
    pub sup: f64,
    pub argmax: BetaSample,
}

pub fn lemma24_report(samples: &[BetaSample]) -> Result<BetaReport> {
    if samples.is_empty() {
        return invalid("need at least one sample");
    }
    let ratios: Vec<f64> = samples.iter().map(beta_ratio).collect::<Result<_>>()?;
    let (i, sup) = ratios.iter().copied().enumerate().fold((0, f64::MIN), |acc, (i, v)| if v > acc.1 { (i, v) } else { acc });
    Ok(BetaReport { samples: samples.to_vec(), ratios, sup, argmax: samples[i] })
}

/// Seeded tuples with `c ∈ [1/2, 5/2]`, `λ ∈ [1/2, 3/2]`, `A = 10^{U(−2,2)}`,
/// `B/A = 1 − 10^{−U(0.01, 6)}`.
pub fn random_beta_samples(n: usize, seed: u64) -> Vec<BetaSample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let a = 10f64.powf(rng.random_range(-2.0..2.0));
            let gap = 10f64.powf(-rng.random_range(0.01..6.0));
            BetaSample { a, b: a * (1.0 - gap), c: rng.random_range(0.5..2.5), lambda: rng.random_range(0.5..1.5) }
        })
        .collect()
}

/// Which Hörmander-type integral to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HormanderSide {
    /// `∫_{|r−s|>2|s−t|} ‖K(r,s) − K(r,t)‖ dμ_α(r)`.
    Column,
    /// `∫_{|r−s|>2|s−t|} ‖K(s,r) − K(t,r)‖ dμ_α(r)`.
    Row,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub struct HormanderOptions {
    /// Fixed outer radius; otherwise panels are added until the integrand
    /// drops below `1e−14` of its peak.
    pub truncation: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HormanderValue {
    pub s: f64,
    pub t: f64,
    pub side: HormanderSide,
    pub value: f64,
    /// Outer radius actually used.
    pub truncation: f64,
}

fn difference_proxy(d: usize, j: usize, r: f64, s: f64, t: f64, side: HormanderSide, opts: &SingularOptions) -> Result<f64> {
    let near = (r - s).abs().min((r - t).abs());
    let scale = near / r.max(s).max(t);
    let mut best = 0.0f64;
    for omega in probe_directions(d, j) {
        let mut acc = 0.0;
        for (w_dir, w) in zonal_rule(&omega, scale)? {
            let diff = match side {
                HormanderSide::Column => {
                    let x = scaled(&omega, r);
                    hermite_riesz_kernel(j, &x, &scaled(&w_dir, s), opts)? - hermite_riesz_kernel(j, &x, &scaled(&w_dir, t), opts)?
                }
                HormanderSide::Row => {
                    let y = scaled(&w_dir, r);
                    hermite_riesz_kernel(j, &scaled(&omega, s), &y, opts)? - hermite_riesz_kernel(j, &scaled(&omega, t), &y, opts)?
                }
            };
            acc += w * diff.abs();
        }
        best = best.max(acc);
    }
    Ok(best)
}

/// One Hörmander-type integral for the operator-valued Riesz kernel on
/// `(ℝ^+, dμ_{d/2−1})`, with the operator norm replaced by its sphere-integral bound.
pub fn hormander_integral(d: usize, j: usize, s: f64, t: f64, side: HormanderSide, options: &HormanderOptions) -> Result<HormanderValue> {
    if !(2..=3).contains(&d) {
        return Err(Error::UnsupportedDimension { d, supported: "2..=3" });
    }
    if j >= d || !(s > 0.0) || !(t > 0.0) {
        return invalid("need a valid index and positive s, t");
    }
    let delta = (s - t).abs();
    if delta == 0.0 {
        return Ok(HormanderValue { s, t, side, value: 0.0, truncation: s });
    }
    let opts = SingularOptions::default();
    let df = d as f64;
    let integrand = |r: f64| -> Result<f64> { Ok(difference_proxy(d, j, r, s, t, side, &opts)? * r.powf(df - 1.0)) };
    let panel = |a: f64, b: f64| -> Result<(f64, f64)> {
        let rule = gauss_interval(6, a, b)?;
        let mut sum = 0.0;
        let mut peak = 0.0f64;
        for (r, w) in rule.iter1d() {
            let v = integrand(r)?;
            sum += w * v;
            peak = peak.max(v);
        }
        Ok((sum, peak))
    };
    let mut value = 0.0;
    let mut peak = 0.0f64;
    // inner region (0, s − 2δ), graded toward its outer end
    let inner = s - 2.0 * delta;
    if inner > 0.0 {
        let mut hi = inner;
        let mut width = 2.0 * delta;
        while hi > 0.0 {
            let lo = (hi - width).max(0.0);
            let (v, p) = panel(lo, hi)?;
            value += v;
            peak = peak.max(p);
            hi = lo;
            width *= 2.0;
        }
    }
    // outer region (s + 2δ, R)
    let mut lo = s + 2.0 * delta;
    let mut width = 2.0 * delta;
    loop {
        let hi = match options.truncation {
            Some(cap) => (lo + width.min(0.5)).min(cap),
            None => lo + width.min(0.5),
        };
        if hi <= lo {
            break;
        }
        let (v, p) = panel(lo, hi)?;
        value += v;
        peak = peak.max(p);
        lo = hi;
        width *= 2.0;
        if options.truncation.is_none() && p < 1e-14 * peak {
            break;
        }
        if lo > 1e3 {
            return Err(Error::Resolution("Hörmander integrand did not decay".into()));
        }
    }
    Ok(HormanderValue { s, t, side, value, truncation: lo })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HormanderReport {
    pub d: usize,
    pub j: usize,
    pub rows: Vec<HormanderValue>,
    pub sup: f64,
}

/// Both integrals for every pair `(s, t)`.
pub fn hormander_report(d: usize, j: usize, pairs: &[(f64, f64)], options: &HormanderOptions) -> Result<HormanderReport> {
    let mut rows = Vec::with_capacity(2 * pairs.len());
    for &(s, t) in pairs {
        for side in [HormanderSide::Column, HormanderSide::Row] {
            rows.push(hormander_integral(d, j, s, t, side, options)?);
        }
    }
    let sup = rows.iter().map(|r| r.value).fold(0.0, f64::max);
    Ok(HormanderReport { d, j, rows, sup })
}

/// Seeded pairs with `s` log-uniform in `[0.2, 4]` and `t = s e^{±τ}`.
pub fn random_hormander_pairs(n: usize, seed: u64) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| radial_pair(&mut rng, 0.2, 4.0, (0.01, 0.5))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::sphere_area;

    #[test]
    fn zonal_rules_integrate_polynomials() {
        for omega in [vec![0.6, 0.8], vec![0.0, 0.6, 0.8], vec![1.0, 0.0, 0.0]] {
            let d = omega.len();
            let rule = zonal_rule(&omega, 0.01).unwrap();
            let area: f64 = rule.iter().map(|(_, w)| w).sum();
            assert!((area - sphere_area(d)).abs() < 1e-12);
            // ∫ (ω·ω′)² dω′ = |S| / d
            let second: f64 = rule.iter().map(|(p, w)| w * p.iter().zip(&omega).map(|(a, b)| a * b).sum::<f64>().powi(2)).sum();
            assert!((second - sphere_area(d) / d as f64).abs() < 1e-12);
        }
    }

    fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
        #[allow(clippy::too_many_arguments)]
        fn rec(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
            let m = 0.5 * (a + b);
            let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
            let (flm, frm) = (f(lm), f(rm));
            let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
            let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
            if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
                return left + right + (left + right - whole) / 15.0;
            }
            rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) + rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
        }
        let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
        rec(f, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, 40)
    }

    #[test]
    fn beta_integral_matches_adaptive_reference() {
        // (1−u)^{1/2} made smooth by 1 − u = w²
        let s = BetaSample { a: 2.0, b: 1.0, c: 1.0, lambda: 0.5 };
        let f = |w: f64| 2.0 * w * w * (2.0 - 1.0 + w * w).powf(-2.0);
        let reference = adaptive_simpson(&f, 0.0, 1.0, 1e-14);
        assert!((beta_integral(&s).unwrap() - reference).abs() < 1e-10);
        let near = BetaSample { a: 1.0, b: 1.0 - 1e-5, c: 1.5, lambda: 0.7 };
        let g = |w: f64| 2.0 * w * w.powi(2) * (1e-5 + (1.0 - 1e-5) * w * w).powf(-2.7);
        let reference = adaptive_simpson(&g, 0.0, 1.0, 1e-9);
        assert!((beta_integral(&near).unwrap() - reference).abs() < 1e-8 * reference);
    }

    #[test]
    fn beta_small_b_limit() {
        for c in [0.5, 1.0, 2.0] {
            let s = BetaSample { a: 3.0, b: 1e-9, c, lambda: 0.8 };
            assert!((beta_ratio(&s).unwrap() - 1.0 / (c + 0.5)).abs() < 1e-8);
        }
        assert!(beta_integral(&BetaSample { a: 1.0, b: 1.0, c: 1.0, lambda: 1.0 }).is_err());
        assert!(beta_integral(&BetaSample { a: 2.0, b: 1.0, c: 0.2, lambda: 1.0 }).is_err());
    }

    #[test]
    fn beta_sup_is_stable() {
        let a = lemma24_report(&random_beta_samples(1000, 1)).unwrap();
        let b = lemma24_report(&random_beta_samples(2000, 2)).unwrap();
        assert!(a.sup.is_finite() && a.sup > 0.0);
        assert!(b.sup / a.sup < 1.5 && a.sup / b.sup < 1.5, "{} {}", a.sup, b.sup);
    }

    #[test]
    fn pointwise_decay_is_stable() {
        let a = kernel_decay_report(DecayKernel::RieszPointwise { d: 2, j: 0 }, 1000, 3).unwrap();
        let b = kernel_decay_report(DecayKernel::RieszPointwise { d: 2, j: 0 }, 4000, 4).unwrap();
        for (x, y) in a.bounds.iter().zip(&b.bounds) {
            assert!(x.sup > 0.0 && y.sup / x.sup <= 2.0 && x.sup / y.sup <= 2.0, "{x:?} {y:?}");
        }
    }

    #[test]
    fn km_ratios_are_dominated_by_m0() {
        let sups = |n: usize| -> Vec<Vec<f64>> {
            (0..=6).map(|m| kernel_decay_report(DecayKernel::ProjectedKm { d: 3, m }, n, 5).unwrap().bounds.iter().map(|b| b.sup).collect()).collect()
        };
        let (coarse, fine) = (sups(100), sups(400));
        for k in 0..2 {
            for m in 0..=6 {
                assert!(coarse[m][k] <= coarse[0][k] * (1.0 + 1e-12));
                assert!(fine[m][k] / coarse[m][k] <= 2.0, "{m} {k}");
            }
        }
    }

    #[test]
    fn operator_valued_bound() {
        let rep = kernel_decay_report(DecayKernel::RieszOperator { d: 2, j: 0 }, 40, 6).unwrap();
        assert!(rep.bounds.iter().all(|b| b.sup > 0.0 && b.sup.is_finite()));
        assert!(rep.bound("proxy_times_dist_radial").is_some());
    }

    #[test]
    fn hormander_basics() {
        let zero = hormander_integral(2, 0, 1.0, 1.0, HormanderSide::Column, &HormanderOptions::default()).unwrap();
        assert_eq!(zero.value, 0.0);
        let a = hormander_integral(2, 0, 1.0, 1.1, HormanderSide::Column, &HormanderOptions::default()).unwrap();
        assert!(a.value.is_finite() && a.value > 0.0);
        let b = hormander_integral(2, 0, 1.0, 1.1, HormanderSide::Column, &HormanderOptions { truncation: Some(2.0 * a.truncation) }).unwrap();
        assert!((a.value - b.value).abs() <= 0.1 * a.value);
    }
}
