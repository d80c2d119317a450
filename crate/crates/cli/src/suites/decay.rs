use hermite_riesz::mixed_norm::{
    hormander_report, kernel_decay_report, lemma24_report, random_beta_samples, random_hormander_pairs, DecayKernel, DecayReport, HormanderOptions,
};
use hermite_riesz::Result;

use super::{worse, Collector};

/// Fine runs use this many times the coarse sample count.
pub const REFINEMENT: usize = 4;
/// Largest allowed change of a sup under refinement.
pub const STABILITY_FACTOR: f64 = 2.0;
pub const MAX_KM_DEGREE: u32 = 6;

/// Coarse sample counts per kernel family, scaled from `samples` by cost.
fn counts(samples: usize) -> (usize, usize, usize) {
    (samples, (samples / 12).max(4), (samples / 5).max(4))
}

/// `max(a/b, b/a)`, infinite when either side vanishes or is not finite.
pub fn spread(a: f64, b: f64) -> f64 {
    if a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite() {
        (a / b).max(b / a)
    } else {
        f64::INFINITY
    }
}

fn pair(kernel: DecayKernel, n: usize, seed: u64) -> Result<(DecayReport, DecayReport)> {
    Ok((kernel_decay_report(kernel, n, seed)?, kernel_decay_report(kernel, REFINEMENT * n, seed)?))
}

fn refinement(c: &mut Collector<'_>, tag: &str, anchor: &str, coarse: &DecayReport, fine: &DecayReport) {
    for (a, b) in coarse.bounds.iter().zip(&fine.bounds) {
        c.fixed(format!("{tag}_{}_refinement", a.name), anchor, spread(a.sup, b.sup), STABILITY_FACTOR);
    }
}

pub(super) fn run(c: &mut Collector<'_>) -> Result<()> {
    let seed = c.cfg.seed;
    let (n_point, n_op, n_km) = counts(c.cfg.samples);
    for d in c.dims(&[2]) {
        let (a, b) = pair(DecayKernel::RieszPointwise { d, j: 0 }, n_point, seed)?;
        refinement(c, &format!("riesz_pointwise_d{d}"), "|R_j(x,y)| ≲ |x−y|^{-d}, |∇R_j(x,y)| ≲ |x−y|^{-d-1}", &a, &b);
        let (a, b) = pair(DecayKernel::RieszOperator { d, j: 0 }, n_op, seed)?;
        refinement(c, &format!("riesz_operator_d{d}"), "operator-valued R_j(r,s) size and smoothness against μ_α(B(r,|r−s|))", &a, &b);
    }
    for d in c.dims(&[3]) {
        let mut sups: Vec<(f64, f64)> = Vec::new();
        for m in 0..=MAX_KM_DEGREE {
            let (a, b) = pair(DecayKernel::ProjectedKm { d, m }, n_km, seed)?;
            refinement(c, &format!("km_d{d}_m{m}"), "(∂_r + r)K_m(r,s) and its r-derivative against μ_α(B(r,|r−s|))", &a, &b);
            sups.push((b.bounds[0].sup, b.bounds[1].sup));
        }
        let (k0, g0) = sups[0];
        let over = sups.iter().map(|(k, g)| (k / k0).max(g / g0)).fold(0.0, worse);
        c.fixed(format!("km_d{d}_bounded_by_m0"), "bounds on K_m uniform in m", over, 1.0);
        let spread_k = sups.iter().map(|s| s.0).fold(0.0, f64::max) / sups.iter().map(|s| s.0).fold(f64::INFINITY, f64::min);
        let spread_g = sups.iter().map(|s| s.1).fold(0.0, f64::max) / sups.iter().map(|s| s.1).fold(f64::INFINITY, f64::min);
        c.observe(
            format!("km_d{d}_spread_across_m"),
            "bounds on K_m uniform in m",
            spread_k.max(spread_g),
            "largest max/min ratio of the fine sups over m ≤ 6; the m = 0 kernel dominates near s ≪ r",
        );
    }

    let coarse = lemma24_report(&random_beta_samples(1000, seed))?;
    let fine = lemma24_report(&random_beta_samples(REFINEMENT * 1000, seed))?;
    c.fixed(
        "beta_integral_ratio_refinement",
        "∫₀¹ (1−u)^{c−1/2}(A−Bu)^{−(c+λ+1/2)} du ≤ C A^{−c−1/2}(A−B)^{−λ}",
        spread(coarse.sup, fine.sup),
        STABILITY_FACTOR,
    );

    let opts = HormanderOptions::default();
    for d in c.dims(&[2]) {
        let a = hormander_report(d, 0, &random_hormander_pairs(c.cfg.pairs, seed), &opts)?;
        let b = hormander_report(d, 0, &random_hormander_pairs(c.cfg.pairs, seed.wrapping_add(1)), &opts)?;
        c.fixed(
            format!("hormander_integrals_d{d}_seed_stability"),
            "∫_{|r−s|>2|s−t|} ‖K(r,s) − K(r,t)‖ dμ_α(r) bounded, and with the arguments swapped",
            spread(a.sup, b.sup),
            STABILITY_FACTOR,
        );
    }
    Ok(())
}
