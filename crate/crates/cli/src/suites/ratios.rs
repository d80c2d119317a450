use hermite_riesz::mixed_norm::{norm_ratio_sweep, ExperimentConfig, ProbeOperator, RatioReport, WeightSpec};
use hermite_riesz::Result;

use crate::config::SuiteConfig;

use super::{worse, Collector};

/// Largest allowed `max ratio / p=2 unweighted baseline`.
pub const BOUND_FACTOR: f64 = 10.0;
/// Largest allowed relative change of a max ratio between two master seeds.
pub const SEED_VARIATION: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioProbe {
    pub op: ProbeOperator,
    pub anchor: &'static str,
}

/// Operators probed for a real dimension `d`.
pub fn ratio_probes(d: usize) -> Vec<RatioProbe> {
    let mut out = vec![
        RatioProbe { op: ProbeOperator::HermiteRiesz { d, j: 0 }, anchor: "‖R_j f‖_{L^{p,2}(w)} ≲ ‖f‖_{L^{p,2}(w)}, w ∈ A_p^{d/2−1}" },
        RatioProbe { op: ProbeOperator::LaguerreRieszFamily { d }, anchor: "vector of Laguerre Riesz transforms r^m R^{α+m} f̃_{m,j} bounded on L^{p,2}(w)" },
        RatioProbe { op: ProbeOperator::RadialRiesz { d }, anchor: "radial part (r + ∂_r)F_{m,j} bounded on L^{p,2}(w)" },
        RatioProbe { op: ProbeOperator::AngularGradient { d }, anchor: "angular part m(m+d−2) r^{−2}|F_{m,j}|² bounded on L^{p,2}(w)" },
        RatioProbe { op: ProbeOperator::AngularLaguerre { d }, anchor: "m r^{m−1} L_{α+m}^{−1/2} f̃_{m,j} bounded on L^{p,2}(w)" },
    ];
    for conjugate in [false, true] {
        out.push(RatioProbe {
            op: ProbeOperator::SpecialRiesz { d: 1, j: 0, conjugate }, anchor: "‖S_j f‖_{L^{p,2}(w)} ≲ ‖f‖_{L^{p,2}(w)}, w ∈ A_p^{d−1}"
        });
    }
    for k in 1..=5 {
        out.push(RatioProbe { op: ProbeOperator::FiveTerm { d: 2, k }, anchor: "‖A_k‖_{L^{p,2}(w)} ≲ ‖f‖_{L^{p,2}(w)} for f ∈ L^p_h" });
    }
    out
}

/// `e = 2α + 2`; power weights `r^γ` are admissible iff `−e < γ < e(p−1)`.
fn exponent_range(op: ProbeOperator, p: f64) -> (f64, f64) {
    let e = 2.0 * op.space().alpha() + 2.0;
    (-e, e * (p - 1.0))
}

/// Half of the lower endpoint, zero and 40% of the upper endpoint.
pub fn default_gammas(op: ProbeOperator, p: f64) -> Vec<f64> {
    let (lo, hi) = exponent_range(op, p);
    vec![0.5 * lo, 0.0, 0.4 * hi]
}

fn gammas(cfg: &SuiteConfig, op: ProbeOperator, p: f64) -> Vec<f64> {
    cfg.weight_gamma.clone().unwrap_or_else(|| default_gammas(op, p))
}

/// First user exponent outside the admissible range of some probe.
pub fn inadmissible(cfg: &SuiteConfig, d: usize) -> Option<(ProbeOperator, f64, f64)> {
    let given = cfg.weight_gamma.as_ref()?;
    for probe in ratio_probes(d) {
        for &p in &cfg.p {
            let (lo, hi) = exponent_range(probe.op, p);
            if let Some(&g) = given.iter().find(|g| !(**g > lo && **g < hi)) {
                return Some((probe.op, p, g));
            }
        }
    }
    None
}

fn weights(cfg: &SuiteConfig, op: ProbeOperator) -> Result<Vec<WeightSpec>> {
    let alpha = op.space().alpha();
    let mut out = vec![WeightSpec::unweighted(alpha, 2.0)?];
    for &p in &cfg.p {
        for g in gammas(cfg, op, p) {
            out.push(WeightSpec::power(g, alpha, p)?);
        }
    }
    Ok(out)
}

fn sweep(op: ProbeOperator, ws: &[WeightSpec], trials: usize, seed: u64) -> Result<Vec<RatioReport>> {
    norm_ratio_sweep(op, ws, &ExperimentConfig { trials, seed, ..Default::default() })
}

pub(super) fn run(c: &mut Collector<'_>) -> Result<()> {
    for d in c.dims(&[3]) {
        for probe in ratio_probes(d) {
            let ws = weights(c.cfg, probe.op)?;
            let a = sweep(probe.op, &ws, c.cfg.trials, c.cfg.seed)?;
            let b = sweep(probe.op, &ws, c.cfg.trials, c.cfg.seed.wrapping_add(1))?;
            let baseline = a[0].max;
            let bound = a.iter().chain(&b).map(|r| r.max / baseline).fold(0.0, worse);
            let variation = a.iter().zip(&b).map(|(x, y)| (x.max - y.max).abs() / x.max.max(y.max)).fold(0.0, worse);
            let tag = probe.op.tag();
            c.fixed(format!("{tag}_bounded"), probe.anchor, bound, BOUND_FACTOR);
            c.fixed(format!("{tag}_seed_variation"), probe.anchor, variation, SEED_VARIATION);
            c.observe(format!("{tag}_baseline"), probe.anchor, baseline, "max ratio at p = 2, w ≡ 1");
        }
    }
    Ok(())
}
