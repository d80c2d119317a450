use hermite_riesz::operators::{expand, BandLimitedFunction, Basis, ModeLabel};
use hermite_riesz::specfun::real_spherical_basis;
use hermite_riesz::sphere_calculus::{laguerre_link, riesz_polar_identity};
use hermite_riesz::Result;
use num_complex::Complex64;

use super::{worse, Collector};

pub(super) fn run(c: &mut Collector<'_>) -> Result<()> {
    const ANCHOR: &str = "∫_{S^{d−1}} Σ_j |R_j f(rω)|² dω = Σ |(r + ∂_r)F_{m,j}|² + Σ m(m+d−2) r^{−2} |F_{m,j}|²";
    let radii: Vec<f64> = (0..12).map(|i| 0.3 + 2.2 * f64::from(i) / 11.0).collect();
    for d in c.dims(&[3]) {
        let b = Basis::Hermite { d };
        let y1 = real_spherical_basis(d, 1)?[0].clone();
        let y2 = real_spherical_basis(d, 2)?.last().cloned().unwrap_or_else(|| y1.clone());
        let gauss = |x: &[f64]| (-0.5 * x.iter().map(|v| v * v).sum::<f64>()).exp();
        let one = expand(|x| Complex64::new(gauss(x) * y1.poly.eval(x), 0.0), b, 3)?;
        let two = expand(|x| Complex64::new(gauss(x) * (y1.poly.eval(x) + 0.5 * y2.poly.eval(x)), 0.0), b, 3)?;
        c.identity(format!("one_mode_d{d}"), ANCHOR, riesz_polar_identity(&one, &radii)?.residual, 1e-7);
        c.identity(format!("two_mode_d{d}"), ANCHOR, riesz_polar_identity(&two, &radii)?.residual, 1e-7);
        let mut link = 0.0f64;
        let mut subst = 0.0f64;
        for (m, k) in [(0u32, 2u32), (1, 1), (2, 1)] {
            let y = real_spherical_basis(d, m)?[0].clone();
            let alpha = 0.5 * d as f64 - 1.0 + f64::from(m);
            let ft = BandLimitedFunction::mode(Basis::Laguerre { alpha }, ModeLabel::Laguerre { k })?;
            let rep = laguerre_link(&ft, &y, &radii)?;
            link = worse(link, rep.residual);
            subst = worse(subst, rep.substitution_residual);
        }
        c.identity(format!("laguerre_link_d{d}"), "(r + ∂_r)F_m = c_d r^m R^{α+m} f̃ + m r^{m−1} L_{α+m}^{−1/2} f̃", link, 1e-6);
        c.identity(format!("laguerre_substitution_d{d}"), "m r^{m−1} L_{α+m}^{−1/2} f̃ = (m/r) F_m", subst, 1e-8);
    }
    Ok(())
}
