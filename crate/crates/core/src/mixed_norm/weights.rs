//! Radial weights, the measures `dμ_α = r^{2α+1} dr`, and `A_p^α` constants.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::quadrature::{composite, graded_endpoint, sphere_rule};

/// Shape of a radial weight.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WeightKind {
    /// `w(r) = r^γ`.
    Power { gamma: f64 },
    /// Log-log linear interpolation of positive samples, constant outside the grid.
    Tabulated { grid: Vec<f64>, values: Vec<f64> },
}

/// A weight together with the exponent `p` and the measure index `α` it is
/// meant for.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightSpec {
    pub kind: WeightKind,
    pub alpha: f64,
    pub p: f64,
}

impl WeightSpec {
    pub fn power(gamma: f64, alpha: f64, p: f64) -> Result<Self> {
        let w = Self { kind: WeightKind::Power { gamma }, alpha, p };
        w.validate()?;
        Ok(w)
    }

    pub fn unweighted(alpha: f64, p: f64) -> Result<Self> {
        Self::power(0.0, alpha, p)
    }

    pub fn tabulated(grid: Vec<f64>, values: Vec<f64>, alpha: f64, p: f64) -> Result<Self> {
        let w = Self { kind: WeightKind::Tabulated { grid, values }, alpha, p };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha >= -0.5) || !self.alpha.is_finite() {
            return invalid(format!("measure index must be >= -1/2, got {}", self.alpha));
        }
        if !(self.p > 1.0) || !self.p.is_finite() {
            return invalid(format!("exponent must lie in (1, ∞), got {}", self.p));
        }
        match &self.kind {
            WeightKind::Power { gamma } if !gamma.is_finite() => invalid("power exponent must be finite"),
            WeightKind::Power { .. } => Ok(()),
            WeightKind::Tabulated { grid, values } => {
                if grid.len() < 2 || grid.len() != values.len() {
                    return invalid("tabulated weight needs at least two matching samples");
                }
                if grid[0] <= 0.0 || grid.windows(2).any(|w| !(w[1] > w[0])) {
                    return invalid("tabulated grid must be positive and strictly increasing");
                }
                if values.iter().any(|v| !(*v > 0.0) || !v.is_finite()) {
                    return invalid("tabulated weight values must be positive");
                }
                Ok(())
            }
        }
    }

    /// Conjugate exponent `p′ = p/(p−1)`.
    pub fn conjugate_exponent(&self) -> f64 {
        self.p / (self.p - 1.0)
    }

    pub fn eval(&self, r: f64) -> f64 {
        match &self.kind {
            WeightKind::Power { gamma } => r.powf(*gamma),
            WeightKind::Tabulated { grid, values } => {
                if r <= grid[0] {
                    return values[0];
                }
                if r >= grid[grid.len() - 1] {
                    return values[values.len() - 1];
                }
                let i = grid.partition_point(|g| *g <= r) - 1;
                let beta = (values[i + 1] / values[i]).ln() / (grid[i + 1] / grid[i]).ln();
                values[i] * (r / grid[i]).powf(beta)
            }
        }
    }

    /// `w^{1−p′}` paired with `p′`.
    pub fn dual(&self) -> WeightSpec {
        let q = self.conjugate_exponent();
        let s = 1.0 - q;
        let kind = match &self.kind {
            WeightKind::Power { gamma } => WeightKind::Power { gamma: gamma * s },
            WeightKind::Tabulated { grid, values } => WeightKind::Tabulated { grid: grid.clone(), values: values.iter().map(|v| v.powf(s)).collect() },
        };
        WeightSpec { kind, alpha: self.alpha, p: q }
    }

    /// Power pieces `(a, b, c, β)` with `w(r) = c r^β` on `[a, b]`, covering `[lo, hi]`.
    fn pieces(&self, lo: f64, hi: f64) -> Vec<(f64, f64, f64, f64)> {
        match &self.kind {
            WeightKind::Power { gamma } => vec![(lo, hi, 1.0, *gamma)],
            WeightKind::Tabulated { grid, values } => {
                let mut knots = vec![lo];
                knots.extend(grid.iter().copied().filter(|g| *g > lo && *g < hi));
                knots.push(hi);
                knots
                    .windows(2)
                    .map(|w| {
                        let (a, b) = (w[0], w[1]);
                        let mid = if a == 0.0 { 0.5 * b } else { (a * b).sqrt() };
                        if mid <= grid[0] || mid >= grid[grid.len() - 1] {
                            (a, b, self.eval(mid), 0.0)
                        } else {
                            let i = grid.partition_point(|g| *g <= mid) - 1;
                            let beta = (values[i + 1] / values[i]).ln() / (grid[i + 1] / grid[i]).ln();
                            (a, b, values[i] * grid[i].powf(-beta), beta)
                        }
                    })
                    .collect()
            }
        }
    }

    /// `∫_a^b w(r)^s dμ_α(r)`, or `None` when it diverges at `r = 0`.
    pub fn moment(&self, s: f64, a: f64, b: f64) -> Option<f64> {
        let mut acc = 0.0;
        for (lo, hi, c, beta) in self.pieces(a, b) {
            acc += c.powf(s) * power_integral(lo, hi, s * beta + 2.0 * self.alpha + 2.0)?;
        }
        Some(acc)
    }
}

/// `∫_a^b r^{e−1} dr`, `None` if divergent at 0.
fn power_integral(a: f64, b: f64, e: f64) -> Option<f64> {
    if a == 0.0 {
        return if e > 0.0 { Some(b.powf(e) / e) } else { None };
    }
    let l = (b / a).ln();
    if e == 0.0 {
        return Some(l);
    }
    Some(a.powf(e) * (e * l).exp_m1() / e)
}

/// `μ_α([a, b]) = (b^{2α+2} − a^{2α+2}) / (2α+2)`.
pub fn mu_alpha(a: f64, b: f64, alpha: f64) -> Result<f64> {
    if !(a >= 0.0) || !(b > a) || !b.is_finite() {
        return invalid(format!("interval [{a}, {b}] must satisfy 0 <= a < b"));
    }
    if !(alpha >= -0.5) {
        return invalid(format!("measure index must be >= -1/2, got {alpha}"));
    }
    power_integral(a, b, 2.0 * alpha + 2.0).ok_or_else(|| Error::Domain("divergent measure".into()))
}

/// `μ_α(B(r, δ))` with the ball clipped at 0.
pub fn ball_measure(r: f64, delta: f64, alpha: f64) -> Result<f64> {
    if !(r > 0.0) || !(delta > 0.0) {
        return invalid("ball needs positive centre and radius");
    }
    mu_alpha((r - delta).max(0.0), r + delta, alpha)
}

/// Finite family of intervals `[a, b] ⊂ [0, ∞)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalFamily {
    pub intervals: Vec<(f64, f64)>,
}

impl IntervalFamily {
    /// Intervals centred at `2^c` with lengths `2^{c+l}`, clipped at 0.
    pub fn dyadic(centers: std::ops::RangeInclusive<i32>, lengths: std::ops::RangeInclusive<i32>) -> Self {
        let mut intervals = Vec::new();
        for c in centers {
            let x = 2f64.powi(c);
            for l in lengths.clone() {
                let h = 0.5 * x * 2f64.powi(l);
                intervals.push(((x - h).max(0.0), x + h));
            }
        }
        Self { intervals }
    }

    /// Centres `2^{−5}..2^5`, relative lengths `2^{−8}..2^2`.
    pub fn standard() -> Self {
        Self::dyadic(-5..=5, -8..=2)
    }

    /// `[2^{−k}, 1]` for `k = 1..=depth`.
    pub fn toward_origin(depth: u32) -> Self {
        Self { intervals: (1..=depth as i32).map(|k| (2f64.powi(-k), 1.0)).collect() }
    }

    /// `[1, 2^k]` for `k = 1..=depth`.
    pub fn toward_infinity(depth: u32) -> Self {
        Self { intervals: (1..=depth as i32).map(|k| (1.0, 2f64.powi(k))).collect() }
    }
}

/// Value of the `A_p` quotient on one interval; `None` marks a divergent average.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApInterval {
    pub a: f64,
    pub b: f64,
    pub value: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApReport {
    /// Largest finite quotient.
    pub max_finite: f64,
    pub intervals: Vec<ApInterval>,
    pub non_integrable: usize,
}

impl ApReport {
    /// The constant over the family, `None` if some interval diverges.
    pub fn constant(&self) -> Option<f64> {
        (self.non_integrable == 0).then_some(self.max_finite)
    }

    /// Interval attaining the largest finite quotient, or the first divergent one.
    pub fn worst(&self) -> Option<&ApInterval> {
        self.intervals
            .iter()
            .find(|i| i.value.is_none())
            .or_else(|| self.intervals.iter().filter(|i| i.value.is_some()).max_by(|x, y| x.value.partial_cmp(&y.value).expect("finite")))
    }
}

/// `(avg_Q w)(avg_Q w^{−p′/p})^{p−1}` under `μ_α` for every `Q` in the family.
pub fn ap_constant(w: &WeightSpec, family: &IntervalFamily) -> Result<ApReport> {
    w.validate()?;
    if family.intervals.is_empty() {
        return invalid("interval family is empty");
    }
    let s = -1.0 / (w.p - 1.0);
    let mut rows = Vec::with_capacity(family.intervals.len());
    let mut max_finite = 0.0f64;
    let mut non_integrable = 0;
    for &(a, b) in &family.intervals {
        let mu = mu_alpha(a, b, w.alpha)?;
        let value = match (w.moment(1.0, a, b), w.moment(s, a, b)) {
            (Some(m1), Some(m2)) => Some((m1 / mu) * (m2 / mu).powf(w.p - 1.0)),
            _ => None,
        };
        match value {
            Some(v) => max_finite = max_finite.max(v),
            None => non_integrable += 1,
        }
        rows.push(ApInterval { a, b, value });
    }
    Ok(ApReport { max_finite, intervals: rows, non_integrable })
}

/// Averages of `w` and `w^{−p′/p}` over one annulus in ℝ^d and over the
/// matching radial interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BridgeRow {
    pub a: f64,
    pub b: f64,
    pub annulus_avg: f64,
    pub radial_avg: f64,
    pub annulus_dual_avg: f64,
    pub radial_dual_avg: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BridgeReport {
    pub d: usize,
    pub rows: Vec<BridgeRow>,
    /// Largest relative mismatch.
    pub residual: f64,
}

fn annulus_average(w: &WeightSpec, s: f64, d: usize, a: f64, b: f64) -> Result<f64> {
    let sphere = sphere_rule(d, 2)?;
    let df = d as f64;
    // Radial nodes carry r^{d−1} (and r^{sγ} for power weights near 0).
    let mut nodes: Vec<(f64, f64)> = Vec::new();
    let mut knots = vec![a];
    if let WeightKind::Tabulated { grid, .. } = &w.kind {
        knots.extend(grid.iter().copied().filter(|g| *g > a && *g < b));
    }
    knots.push(b);
    for (i, win) in knots.windows(2).enumerate() {
        let (lo, hi) = (win[0], win[1]);
        if i == 0 && lo == 0.0 {
            let e = match &w.kind {
                WeightKind::Power { gamma } => s * gamma,
                WeightKind::Tabulated { .. } => 0.0,
            };
            if e + df - 1.0 <= -1.0 {
                return Err(Error::NonIntegrable { a, b });
            }
            let rule = graded_endpoint(hi, e + df - 1.0, 1e-8 * hi, 24)?;
            for (r, wt) in rule.iter1d() {
                nodes.push((r, wt / r.powf(e)));
            }
        } else {
            for (r, wt) in composite(&[lo, hi], 24)?.iter1d() {
                nodes.push((r, wt * r.powf(df - 1.0)));
            }
        }
    }
    let mut num = 0.0;
    for (omega, sw) in sphere.iter() {
        for &(r, rw) in &nodes {
            let x: Vec<f64> = omega.iter().map(|o| r * o).collect();
            let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            num += sw * rw * w.eval(norm).powf(s);
        }
    }
    let volume = crate::quadrature::sphere_area(d) * (b.powf(df) - a.powf(df)) / df;
    Ok(num / volume)
}

/// Compares d-dimensional annulus averages of a radial weight with the
/// `A_p^{d/2−1}` averages on the corresponding intervals.
pub fn radial_bridge(w: &WeightSpec, d: usize, family: &IntervalFamily) -> Result<BridgeReport> {
    if !(2..=4).contains(&d) {
        return Err(Error::UnsupportedDimension { d, supported: "2..=4" });
    }
    let alpha = 0.5 * d as f64 - 1.0;
    if (w.alpha - alpha).abs() > 1e-15 {
        return invalid(format!("weight is tagged with α = {}, expected {alpha}", w.alpha));
    }
    let s = -1.0 / (w.p - 1.0);
    let mut rows = Vec::new();
    let mut residual = 0.0f64;
    for &(a, b) in &family.intervals {
        let mu = mu_alpha(a, b, alpha)?;
        let (Some(m1), Some(m2)) = (w.moment(1.0, a, b), w.moment(s, a, b)) else {
            return Err(Error::NonIntegrable { a, b });
        };
        let row = BridgeRow {
            a,
            b,
            annulus_avg: annulus_average(w, 1.0, d, a, b)?,
            radial_avg: m1 / mu,
            annulus_dual_avg: annulus_average(w, s, d, a, b)?,
            radial_dual_avg: m2 / mu,
        };
        residual = residual
            .max(((row.annulus_avg - row.radial_avg) / row.radial_avg).abs())
            .max(((row.annulus_dual_avg - row.radial_dual_avg) / row.radial_dual_avg).abs());
        rows.push(row);
    }
    Ok(BridgeReport { d, rows, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn measure_values() {
        assert_eq!(mu_alpha(0.0, 1.0, 0.0).unwrap(), 0.5);
        assert!(mu_alpha(-0.1, 1.0, 0.0).is_err());
        assert!(mu_alpha(1.0, 1.0, 0.0).is_err());
        // α = d/2 − 1 gives density r^{d−1}
        let d = 3.0;
        let m = mu_alpha(0.5, 2.0, 0.5 * d - 1.0).unwrap();
        assert!((m - (8.0 - 0.125) / 3.0).abs() < 1e-15);
        assert_eq!(ball_measure(0.5, 1.0, 0.5).unwrap(), mu_alpha(0.0, 1.5, 0.5).unwrap());
    }

    proptest! {
        #[test]
        fn measure_additive(a in 0.0f64..3.0, l1 in 0.01f64..2.0, l2 in 0.01f64..2.0, alpha in -0.5f64..3.0) {
            let whole = mu_alpha(a, a + l1 + l2, alpha).unwrap();
            let parts = mu_alpha(a, a + l1, alpha).unwrap() + mu_alpha(a + l1, a + l1 + l2, alpha).unwrap();
            prop_assert!((whole - parts).abs() <= 1e-14 * whole.max(1.0));
        }

        #[test]
        fn ball_monotone(r in 0.01f64..5.0, d1 in 0.001f64..3.0, extra in 0.001f64..3.0, alpha in -0.5f64..3.0) {
            prop_assert!(ball_measure(r, d1, alpha).unwrap() < ball_measure(r, d1 + extra, alpha).unwrap());
        }
    }

    #[test]
    fn ball_comparability_is_stable() {
        let sweep = |n: usize| {
            let mut lo = f64::INFINITY;
            let mut hi = 0.0f64;
            for d in 2..=4 {
                let alpha = 0.5 * d as f64 - 1.0;
                for i in 0..n {
                    for k in 0..n {
                        let r = 10f64.powf(-2.0 + 4.0 * i as f64 / (n - 1) as f64);
                        let s = 10f64.powf(-2.0 + 4.0 * k as f64 / (n - 1) as f64);
                        if (r - s).abs() < 1e-12 {
                            continue;
                        }
                        let q = (r - s).abs() * (r * r + s * s).powf(0.5 * (d as f64 - 1.0)) / ball_measure(r, (r - s).abs(), alpha).unwrap();
                        lo = lo.min(q);
                        hi = hi.max(q);
                    }
                }
            }
            (lo, hi)
        };
        let (a1, b1) = sweep(41);
        let (a2, b2) = sweep(161);
        assert!(a1 > 0.0 && b1.is_finite());
        assert!(a1 / a2 < 1.5 && b2 / b1 < 1.5, "{a1} {a2} {b1} {b2}");
    }

    #[test]
    fn constant_weight_gives_one() {
        for fam in [IntervalFamily::standard(), IntervalFamily::toward_origin(10), IntervalFamily::dyadic(0..=0, 1..=1)] {
            for (alpha, p) in [(0.0, 2.0), (0.5, 1.5), (2.0, 4.0)] {
                let rep = ap_constant(&WeightSpec::unweighted(alpha, p).unwrap(), &fam).unwrap();
                assert!((rep.constant().unwrap() - 1.0).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn power_weights_in_and_out_of_range() {
        let fam = IntervalFamily::standard();
        for gamma in [-2.9, -1.0, 0.0, 1.5, 2.9] {
            let rep = ap_constant(&WeightSpec::power(gamma, 0.5, 2.0).unwrap(), &fam).unwrap();
            assert!(rep.constant().is_some(), "{gamma}");
        }
        let bad = WeightSpec::power(3.2, 0.5, 2.0).unwrap();
        let rep = ap_constant(&bad, &fam).unwrap();
        assert!(rep.constant().is_none() && rep.worst().unwrap().value.is_none());
        let seq: Vec<f64> = (4..=40).step_by(4).map(|k| ap_constant(&bad, &IntervalFamily::toward_origin(k)).unwrap().constant().unwrap()).collect();
        assert!(seq.windows(2).all(|w| w[1] > w[0]));
        assert!(seq[seq.len() - 1] > 10.0 * seq[0]);
        let good = WeightSpec::power(2.0, 0.5, 2.0).unwrap();
        let a = ap_constant(&good, &IntervalFamily::toward_origin(30)).unwrap().constant().unwrap();
        let b = ap_constant(&good, &IntervalFamily::toward_origin(60)).unwrap().constant().unwrap();
        assert!((b - a).abs() < 1e-6 * a);
    }

    #[test]
    fn duality_of_finiteness() {
        let fam = IntervalFamily::standard();
        for gamma in [-3.5, -2.5, 0.7, 2.5, 3.5] {
            for p in [1.5, 2.0, 3.0] {
                let w = WeightSpec::power(gamma, 0.5, p).unwrap();
                let a = ap_constant(&w, &fam).unwrap().constant().is_some();
                let b = ap_constant(&w.dual(), &fam).unwrap().constant().is_some();
                assert_eq!(a, b, "{gamma} {p}");
            }
        }
    }

    #[test]
    fn tabulated_matches_power() {
        let grid: Vec<f64> = (-12..=12).map(|k| 2f64.powi(k)).collect();
        let values: Vec<f64> = grid.iter().map(|r| r.powf(0.8)).collect();
        let tab = WeightSpec::tabulated(grid, values, 0.5, 2.0).unwrap();
        let pow = WeightSpec::power(0.8, 0.5, 2.0).unwrap();
        let fam = IntervalFamily::dyadic(-3..=3, -4..=0);
        let a = ap_constant(&tab, &fam).unwrap().constant().unwrap();
        let b = ap_constant(&pow, &fam).unwrap().constant().unwrap();
        assert!((a - b).abs() < 1e-12 * b);
        assert!(WeightSpec::tabulated(vec![1.0, 0.5], vec![1.0, 1.0], 0.0, 2.0).is_err());
        assert!(WeightSpec::power(0.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn bridge_matches() {
        let fam = IntervalFamily::dyadic(-3..=3, -4..=2);
        for d in 2..=4 {
            let alpha = 0.5 * d as f64 - 1.0;
            for gamma in [-1.5, 0.0, 0.5, 1.5] {
                let rep = radial_bridge(&WeightSpec::power(gamma, alpha, 2.0).unwrap(), d, &fam).unwrap();
                assert!(rep.residual < 1e-10, "{d} {gamma} {}", rep.residual);
            }
        }
        let grid: Vec<f64> = vec![0.1, 0.5, 1.0, 3.0];
        let tab = WeightSpec::tabulated(grid, vec![2.0, 1.0, 0.7, 3.0], 0.5, 3.0).unwrap();
        assert!(radial_bridge(&tab, 3, &fam).unwrap().residual < 1e-10);
    }
}
