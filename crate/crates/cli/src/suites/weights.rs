use hermite_riesz::mixed_norm::{ap_constant, radial_bridge, IntervalFamily, WeightSpec};
use hermite_riesz::Result;

use super::{worse, Collector};

/// Positions inside the admissible range `(−e, e(p−1))`, as fractions of the nearer endpoint.
const INSIDE: [f64; 5] = [-0.6, -0.3, 0.0, 0.3, 0.6];
/// Distance beyond an endpoint, as a fraction of `e = 2α + 2`.
const OUTSIDE: f64 = 0.07;

fn gamma_at(theta: f64, e: f64, p: f64) -> f64 {
    if theta < 0.0 {
        theta * e
    } else {
        theta * e * (p - 1.0)
    }
}

pub(super) fn run(c: &mut Collector<'_>) -> Result<()> {
    const ANCHOR: &str = "A_p^α power weights r^γ: finite constant iff −(2α+2) < γ < (2α+2)(p−1)";
    let dims = c.dims(&[2, 3, 4]);
    let mut unit = 0.0f64;
    for &d in &dims {
        let alpha = 0.5 * d as f64 - 1.0;
        for &p in &c.cfg.p {
            let w = WeightSpec::unweighted(alpha, p)?;
            for fam in [IntervalFamily::standard(), IntervalFamily::toward_origin(20), IntervalFamily::toward_infinity(20)] {
                unit = worse(unit, ap_constant(&w, &fam)?.constant().map_or(f64::INFINITY, |v| (v - 1.0).abs()));
            }
        }
    }
    c.identity("unweighted_constant_is_one", "A_p^α constant of w ≡ 1", unit, 1e-12);

    for &d in &dims {
        let alpha = 0.5 * d as f64 - 1.0;
        let e = 2.0 * alpha + 2.0;
        let mut inside = 0.0f64;
        let mut outside = 0.0f64;
        for &p in &c.cfg.p {
            for theta in INSIDE {
                let w = WeightSpec::power(gamma_at(theta, e, p), alpha, p)?;
                let standard = ap_constant(&w, &IntervalFamily::standard())?.constant();
                let a = ap_constant(&w, &IntervalFamily::toward_origin(30))?.constant();
                let b = ap_constant(&w, &IntervalFamily::toward_origin(60))?.constant();
                let res = match (standard, a, b) {
                    (Some(_), Some(a), Some(b)) => (b - a).abs() / a,
                    _ => f64::INFINITY,
                };
                inside = worse(inside, res);
            }
            for gamma in [-(1.0 + OUTSIDE) * e, e * (p - 1.0) + OUTSIDE * e] {
                let w = WeightSpec::power(gamma, alpha, p)?;
                let seq: Vec<f64> = (4..=40)
                    .step_by(4)
                    .map(|k| Ok(ap_constant(&w, &IntervalFamily::toward_origin(k))?.constant().unwrap_or(f64::NAN)))
                    .collect::<Result<_>>()?;
                let increasing = seq.windows(2).all(|x| x[1] > x[0]);
                // growth is reported as first/last, so a diverging sequence drives it to 0
                let res = if increasing { seq[0] / seq[seq.len() - 1] } else { f64::INFINITY };
                outside = worse(outside, res);
            }
        }
        c.identity(format!("inside_range_converges_d{d}"), ANCHOR, inside, 1e-6);
        c.fixed(format!("outside_range_grows_d{d}"), ANCHOR, outside, 0.1);
    }

    let fam = IntervalFamily::dyadic(-3..=3, -4..=1);
    for &d in &dims {
        let alpha = 0.5 * d as f64 - 1.0;
        let e = 2.0 * alpha + 2.0;
        let mut res = 0.0f64;
        for theta in [-0.75, 0.0, 0.25, 0.75] {
            let w = WeightSpec::power(gamma_at(theta, e, 2.0), alpha, 2.0)?;
            res = worse(res, radial_bridge(&w, d, &fam)?.residual);
        }
        c.identity(format!("radial_bridge_d{d}"), "A_p^α averages of w(r) equal A_p averages of w(|x|) over annuli in ℝ^d", res, 1e-10);
    }
    Ok(())
}
