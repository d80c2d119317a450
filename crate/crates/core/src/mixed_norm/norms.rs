//! Mixed norms `‖f‖_{L^{p,2}(w)}` by radial × sphere quadrature.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::weights::WeightSpec;
use crate::error::{invalid, Error, Result};
use crate::quadrature::{complex_sphere_rule, composite, geometric_breaks, sphere_rule, QuadratureRule};

/// Ambient space of a mixed norm: ℝ^d (α = d/2−1) or ℂ^d (α = d−1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Space {
    Real { d: usize },
    Complex { d: usize },
}

impl Space {
    pub fn real_dim(&self) -> usize {
        match *self {
            Space::Real { d } => d,
            Space::Complex { d } => 2 * d,
        }
    }

    /// Measure index attached to the space.
    pub fn alpha(&self) -> f64 {
        0.5 * self.real_dim() as f64 - 1.0
    }

    /// Unit-sphere rule exact for polynomials of degree `2·level + 1`.
    pub fn sphere(&self, level: usize) -> Result<QuadratureRule> {
        match *self {
            Space::Real { d } => sphere_rule(d, level),
            Space::Complex { d } => complex_sphere_rule(d, level),
        }
    }

    fn check_weight(&self, w: &WeightSpec) -> Result<()> {
        w.validate()?;
        if (w.alpha - self.alpha()).abs() > 1e-12 {
            return invalid(format!("weight is tagged with α = {}, the space needs {}", w.alpha, self.alpha()));
        }
        Ok(())
    }
}

/// Radial rule on `[r_min, r_max]` whose weights include `r^{D−1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialGrid {
    pub real_dim: usize,
    pub r_min: f64,
    pub r_max: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

const PANEL: f64 = 0.5;
const PER_PANEL: usize = 8;
const FINEST: f64 = 1e-7;

impl RadialGrid {
    /// Panels of width 1/2 with 8 Gauss points, refined geometrically toward 0.
    pub fn new(real_dim: usize, r_min: f64, r_max: f64) -> Result<Self> {
        if real_dim == 0 || !(r_min >= 0.0) || !(r_max > r_min) || !r_max.is_finite() {
            return invalid(format!("radial grid needs 0 <= r_min < r_max, got [{r_min}, {r_max}]"));
        }
        let first = (r_min + PANEL).min(r_max);
        let mut breaks = if r_min == 0.0 { geometric_breaks(0.0, first, FINEST) } else { vec![r_min, first] };
        let panels = ((r_max - first) / PANEL).ceil() as usize;
        for i in 1..=panels {
            breaks.push((first + i as f64 * PANEL).min(r_max));
        }
        breaks.dedup();
        let rule = composite(&breaks, PER_PANEL)?;
        let (nodes, weights) = rule.iter1d().map(|(r, w)| (r, w * r.powi(real_dim as i32 - 1))).unzip();
        Ok(Self { real_dim, r_min, r_max, nodes, weights })
    }

    /// Grid reaching far enough for expansions up to `cutoff` in the given space.
    pub fn for_cutoff(space: Space, cutoff: u32) -> Result<Self> {
        let n = f64::from(cutoff) + space.real_dim() as f64;
        let r_max = match space {
            Space::Real { .. } => (2.0 * n).sqrt() + 6.0,
            Space::Complex { .. } => 2.0 * (2.0 * n).sqrt() + 10.0,
        };
        Self::new(space.real_dim(), 0.0, r_max)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `(Σ_i W_i w(r_i) E_i^{p/2})^{1/p}` for sphere energies `E_i`.
    pub fn norm(&self, energies: &[f64], w: &WeightSpec) -> Result<f64> {
        if energies.len() != self.nodes.len() {
            return invalid("energy profile does not match the radial grid");
        }
        let mut acc = 0.0;
        for ((&r, &wt), &e) in self.nodes.iter().zip(&self.weights).zip(energies) {
            if !(e >= 0.0) {
                return Err(Error::Resolution(format!("negative or undefined sphere energy {e} at r = {r}")));
            }
            acc += wt * w.eval(r) * e.powf(0.5 * w.p);
        }
        Ok(acc.powf(1.0 / w.p))
    }
}

/// `E(r_i) = ∫_{S} |f(r_i ω)|² dω` at every grid radius.
pub fn sphere_energies<F: Fn(&[f64]) -> Complex64>(f: F, space: Space, grid: &RadialGrid, level: usize) -> Result<Vec<f64>> {
    if grid.real_dim != space.real_dim() {
        return invalid("radial grid dimension does not match the space");
    }
    let sphere = space.sphere(level)?;
    let mut x = vec![0.0; space.real_dim()];
    let mut out = Vec::with_capacity(grid.len());
    for &r in &grid.nodes {
        let mut e = 0.0;
        for (omega, sw) in sphere.iter() {
            for (xi, o) in x.iter_mut().zip(omega) {
                *xi = r * o;
            }
            let v = f(&x);
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::Resolution(format!("non-finite sample at radius {r}")));
            }
            e += sw * v.norm_sqr();
        }
        out.push(e);
    }
    Ok(out)
}

/// `(∫₀^∞ (∫_S |f(rω)|² dω)^{p/2} w(r) r^{D−1} dr)^{1/p}` with `p = w.p`.
pub fn mixed_norm<F: Fn(&[f64]) -> Complex64>(f: F, w: &WeightSpec, space: Space, grid: &RadialGrid, level: usize) -> Result<f64> {
    space.check_weight(w)?;
    grid.norm(&sphere_energies(f, space, grid, level)?, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{BandLimitedFunction, Basis, ModeLabel};
    use crate::specfun::{psi, real_spherical_basis, MultiIndex};
    use rand::{Rng, SeedableRng};

    fn random_hermite(d: usize, cutoff: u32, seed: u64) -> BandLimitedFunction {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let basis = Basis::Hermite { d };
        let coeffs: Vec<_> = MultiIndex::all_up_to(d, cutoff)
            .into_iter()
            .map(|mu| (ModeLabel::Hermite { mu }, Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))))
            .collect();
        BandLimitedFunction::from_coeffs(basis, coeffs).unwrap()
    }

    #[test]
    fn unweighted_p2_is_l2_norm() {
        for (d, cutoff) in [(2, 6), (3, 5)] {
            let f = random_hermite(d, cutoff, 7);
            let space = Space::Real { d };
            let grid = RadialGrid::for_cutoff(space, cutoff).unwrap();
            let w = WeightSpec::unweighted(space.alpha(), 2.0).unwrap();
            let n = mixed_norm(|x| f.eval(x).unwrap(), &w, space, &grid, cutoff as usize + 1).unwrap();
            assert!((n - f.norm_sq().sqrt()).abs() < 1e-8, "{n} {}", f.norm_sq().sqrt());
        }
        let special = BandLimitedFunction::from_coeffs(
            Basis::SpecialHermite { d: 1 },
            [
                (ModeLabel::Special { k: 1, m: 2, n: 0, j: 1 }, Complex64::new(0.3, 0.4)),
                (ModeLabel::Special { k: 0, m: 0, n: 1, j: 1 }, Complex64::new(-1.0, 0.0)),
            ],
        )
        .unwrap();
        let space = Space::Complex { d: 1 };
        let grid = RadialGrid::for_cutoff(space, 3).unwrap();
        let w = WeightSpec::unweighted(0.0, 2.0).unwrap();
        let n = mixed_norm(|x| special.eval(x).unwrap(), &w, space, &grid, 4).unwrap();
        assert!((n - special.norm_sq().sqrt()).abs() < 1e-8);
    }

    #[test]
    fn separated_function_reduces_to_radial_norm() {
        let d = 3;
        let y = real_spherical_basis(d, 2).unwrap();
        let space = Space::Real { d };
        let grid = RadialGrid::new(d, 0.0, 12.0).unwrap();
        let g = |r: f64| r * r * psi(0, 0.5 + 2.0, r);
        for (gamma, p) in [(0.0, 2.0), (0.5, 3.0), (-1.2, 1.5)] {
            let w = WeightSpec::power(gamma, space.alpha(), p).unwrap();
            let n = mixed_norm(
                |x| {
                    let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
                    let omega: Vec<f64> = x.iter().map(|v| v / r).collect();
                    Complex64::new(g(r) * y[1].eval(&omega), 0.0)
                },
                &w,
                space,
                &grid,
                3,
            )
            .unwrap();
            let fine = composite(&geometric_breaks(0.0, 12.0, 1e-9), 30).unwrap();
            let direct = fine.integrate1d(|r| g(r).abs().powf(p) * r.powf(gamma + 2.0)).powf(1.0 / p);
            assert!((n - direct).abs() < 1e-9 * direct, "{n} {direct}");
        }
    }

    #[test]
    fn triangle_inequality() {
        let d = 2;
        let space = Space::Real { d };
        let grid = RadialGrid::for_cutoff(space, 5).unwrap();
        for seed in 0..6u64 {
            let f = random_hermite(d, 5, seed);
            let g = random_hermite(d, 5, seed + 100);
            let sum = f.plus(&g).unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let w = WeightSpec::power(rng.random_range(-1.5..1.5), 0.0, rng.random_range(1.2..4.0)).unwrap();
            let nf = mixed_norm(|x| f.eval(x).unwrap(), &w, space, &grid, 6).unwrap();
            let ng = mixed_norm(|x| g.eval(x).unwrap(), &w, space, &grid, 6).unwrap();
            let ns = mixed_norm(|x| sum.eval(x).unwrap(), &w, space, &grid, 6).unwrap();
            assert!(ns <= (nf + ng) * (1.0 + 1e-12));
        }
    }

    #[test]
    fn rejects_mismatched_weight() {
        let space = Space::Real { d: 3 };
        let grid = RadialGrid::new(3, 0.0, 5.0).unwrap();
        let w = WeightSpec::unweighted(0.0, 2.0).unwrap();
        assert!(mixed_norm(|_| Complex64::new(1.0, 0.0), &w, space, &grid, 2).is_err());
        assert!(RadialGrid::new(3, 2.0, 1.0).is_err());
    }
}
