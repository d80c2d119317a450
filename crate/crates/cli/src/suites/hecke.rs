use hermite_riesz::constants::HECKE_BOCHNER_CD;
use hermite_riesz::specfun::real_spherical_basis;
use hermite_riesz::sphere_calculus::hecke_bochner_hermite;
use hermite_riesz::Result;

use super::{worse, Collector};

pub(super) fn run(c: &mut Collector<'_>) -> Result<()> {
    const ANCHOR: &str = "Hecke–Bochner transport e^{-tH}(gY) = c_d r^m Y T_t^{α+m} g̃";
    let radii: Vec<f64> = (0..12).map(|i| 0.2 + 2.8 * f64::from(i) / 11.0).collect();
    for d in c.dims(&[3]) {
        let mut spread = 0.0f64;
        let mut cds = Vec::new();
        for m in 0..=2u32 {
            let y = real_spherical_basis(d, m)?[0].clone();
            let mi = m as i32;
            let inputs: [&dyn Fn(f64) -> f64; 2] = [&|r: f64| r.powi(mi) * (-0.5 * r * r).exp(), &|r: f64| r.powi(mi) * (1.0 + r * r) * (-0.8 * r * r).exp()];
            for g in inputs {
                for t in [0.2, 0.5, 1.0] {
                    let rep = hecke_bochner_hermite(g, &y, t, &radii)?;
                    spread = worse(spread, rep.spread);
                    cds.push(rep.c_d);
                }
            }
        }
        c.identity(format!("ratio_constancy_d{d}"), ANCHOR, spread, 1e-8);
        let (lo, hi) = cds.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
        c.identity(format!("calibrated_constant_reproducible_d{d}"), ANCHOR, (hi - lo) / HECKE_BOCHNER_CD, 1e-8);
        let pinned = cds.iter().map(|v| (v - HECKE_BOCHNER_CD).abs()).fold(0.0, worse);
        c.identity(format!("calibrated_constant_pinned_d{d}"), ANCHOR, pinned, 1e-8);
    }
    Ok(())
}
