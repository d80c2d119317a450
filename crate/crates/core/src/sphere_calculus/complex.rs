//! Complex gradients on ℂ^d, their spherical splitting, and the bigraded
//! harmonic identities.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::operators::from_complex;
use crate::quadrature::complex_sphere_rule;
use crate::specfun::{bigraded_basis_up_to, BigradedHarmonic, ComplexPoly};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Gradients of a function at one point `z = rζ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexGradients {
    /// `∇^z = (∂/∂z_j)`.
    pub grad_z: Vec<Complex64>,
    /// `(∂/∂z̄_j)`.
    pub grad_zbar: Vec<Complex64>,
    /// `∇_0^z = ½(∇_0^x − i∇_0^y)` with `∇_0 = r(∇ − ζ ∂_r)`.
    pub grad0_z: Vec<Complex64>,
    /// `∂_r`.
    pub radial: Complex64,
    /// `max_j |∇^z − (∇_0^z/r + z̄ ∂_r/(2r))|`.
    pub split_residual: f64,
}

fn assemble(z: &[Complex64], real_grad: &[Complex64], grad_z: Vec<Complex64>, grad_zbar: Vec<Complex64>) -> ComplexGradients {
    let d = z.len();
    let p = from_complex(z);
    let r = p.iter().map(|v| v * v).sum::<f64>().sqrt();
    let radial: Complex64 = real_grad.iter().zip(&p).map(|(g, x)| g * (x / r)).sum();
    let grad0: Vec<Complex64> = real_grad.iter().zip(&p).map(|(g, x)| (g - radial * (x / r)) * r).collect();
    let grad0_z: Vec<Complex64> = (0..d).map(|j| 0.5 * (grad0[j] - I * grad0[d + j])).collect();
    let split_residual = (0..d).map(|j| (grad_z[j] - (grad0_z[j] / r + z[j].conj() * radial / (2.0 * r))).norm()).fold(0.0, f64::max);
    ComplexGradients { grad_z, grad_zbar, grad0_z, radial, split_residual }
}

fn real_gradient(p: &ComplexPoly, z: &[Complex64]) -> Vec<Complex64> {
    let d = z.len();
    (0..d).map(|j| p.d_x(j).eval(z)).chain((0..d).map(|j| p.d_y(j).eval(z))).collect()
}

/// Exact gradients of a polynomial at `z ≠ 0`.
pub fn complex_gradients(p: &ComplexPoly, z: &[Complex64]) -> Result<ComplexGradients> {
    check_point(p.dim(), z)?;
    let d = z.len();
    let gz = (0..d).map(|j| p.d_z(j).eval(z)).collect();
    let gzb = (0..d).map(|j| p.d_zbar(j).eval(z)).collect();
    Ok(assemble(z, &real_gradient(p, z), gz, gzb))
}

/// Gradients of a sampled function by central differences of size `step`.
pub fn complex_gradients_sampled<F: Fn(&[f64]) -> Complex64>(f: F, z: &[Complex64], step: f64) -> Result<ComplexGradients> {
    check_point(z.len(), z)?;
    let d = z.len();
    let p = from_complex(z);
    let mut q = p.clone();
    let mut real_grad = Vec::with_capacity(2 * d);
    for k in 0..2 * d {
        q[k] = p[k] + step;
        let a = f(&q);
        q[k] = p[k] - step;
        let b = f(&q);
        q[k] = p[k];
        real_grad.push((a - b) / (2.0 * step));
    }
    let gz = (0..d).map(|j| 0.5 * (real_grad[j] - I * real_grad[d + j])).collect();
    let gzb = (0..d).map(|j| 0.5 * (real_grad[j] + I * real_grad[d + j])).collect();
    Ok(assemble(z, &real_grad, gz, gzb))
}

fn check_point(dim: usize, z: &[Complex64]) -> Result<()> {
    if z.len() != dim {
        return invalid("point dimension does not match the polynomial");
    }
    if z.iter().all(|w| w.norm() == 0.0) {
        return invalid("gradient splitting is undefined at the origin");
    }
    Ok(())
}

/// Alternate constant `¼((m+n)² + (4d−3)m − n)`; agrees with [`lambda_true`] only for m = n, while `λ(m,n) + λ(n,m)` is the same for both.
pub fn lambda_alternate(d: usize, m: u32, n: u32) -> f64 {
    let (m, n, d) = (f64::from(m), f64::from(n), d as f64);
    0.25 * ((m + n).powi(2) + (4.0 * d - 3.0) * m - n)
}

/// Constant obtained by direct integration, `¼((m+n)² + 4(d−1)m)`.
pub fn lambda_true(d: usize, m: u32, n: u32) -> f64 {
    let (m, n, d) = (f64::from(m), f64::from(n), d as f64);
    0.25 * ((m + n).powi(2) + 4.0 * (d - 1.0) * m)
}

/// Residuals of the bigraded identities for one pair (P, Q).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Prop31Report {
    pub d: usize,
    pub p: (u32, u32, usize),
    pub q: (u32, u32, usize),
    /// `⟨z̄, ∇^z P⟩ = m P̄`.
    pub r1a: f64,
    /// `⟨z̄, ∇_0^z P⟩ = (r/2)(m−n) P̄`.
    pub r1b: f64,
    /// `⟨ζ̄, ∇_0^z P⟩ = (i/2)(ξ·∇_0^y P̄ − η·∇_0^x P̄)` on the sphere.
    pub r1c: f64,
    /// `⟨∇^z P, ∇^z Q⟩` expansion.
    pub r2: f64,
    /// Pointwise `⟨∇_0^z P, ∇_0^z Q⟩` expansion on the sphere.
    pub r3: f64,
    /// Integration by parts with factor `2d − 1`.
    pub r4: f64,
    /// `∫ ⟨∇_0^z P, ∇_0^z Q⟩`.
    pub integral: Complex64,
    /// `∫ P Q̄`.
    pub inner: Complex64,
    pub lambda_alternate: f64,
    pub lambda_true: f64,
    /// `|∫⟨∇_0^z P, ∇_0^z Q⟩ − λ_alternate ⟨P, Q⟩|`.
    pub r5_alternate: f64,
    pub r5_true: f64,
}

impl Prop31Report {
    /// Largest residual among items (1)–(4).
    pub fn max_structural(&self) -> f64 {
        [self.r1a, self.r1b, self.r1c, self.r2, self.r3, self.r4].into_iter().fold(0.0, f64::max)
    }
}

/// Tangential derivative along real coordinate `k` (x's then y's), valid on
/// the unit sphere: `∂_k G − x_k E G` with `E` the Euler operator.
fn tangential(p: &ComplexPoly, k: usize) -> ComplexPoly {
    let d = p.dim();
    let e = p.euler();
    if k < d {
        p.d_x(k).sub(&e.mul_z(k).add(&e.mul_zbar(k)).scaled(Complex64::new(0.5, 0.0)))
    } else {
        let j = k - d;
        p.d_y(j).sub(&e.mul_z(j).sub(&e.mul_zbar(j)).scaled(Complex64::new(0.0, -0.5)))
    }
}

/// Samples of one harmonic at the sphere nodes and at off-sphere points.
struct Samples {
    m: u32,
    n: u32,
    j: usize,
    sphere_val: Vec<Complex64>,
    sphere_grad: Vec<Vec<Complex64>>,
    sphere_mixed: Vec<Complex64>,
    off: Vec<(Complex64, ComplexGradients)>,
}

struct Nodes {
    d: usize,
    sphere: Vec<(Vec<Complex64>, f64)>,
    off: Vec<Vec<Complex64>>,
}

impl Nodes {
    fn new(d: usize, level: usize) -> Result<Self> {
        let rule = complex_sphere_rule(d, level)?;
        let sphere: Vec<(Vec<Complex64>, f64)> = (0..rule.len()).map(|i| (rule.complex_node(i), rule.weight(i))).collect();
        let off = sphere
            .iter()
            .step_by((sphere.len() / 24).max(1))
            .enumerate()
            .map(|(i, (z, _))| {
                let s = if i % 2 == 0 { 0.6 } else { 1.7 };
                z.iter().map(|c| c * s).collect()
            })
            .collect();
        Ok(Self { d, sphere, off })
    }

    fn sample(&self, y: &BigradedHarmonic) -> Result<Samples> {
        let d = self.d;
        let p = &y.poly;
        let tang: Vec<ComplexPoly> = (0..2 * d).map(|k| tangential(p, k)).collect();
        let mixed = (0..d).fold(ComplexPoly::zero(d), |acc, j| acc.add(&tangential(&tang[j], d + j)));
        let sphere_val = self.sphere.iter().map(|(z, _)| p.eval(z)).collect();
        let sphere_grad = self.sphere.iter().map(|(z, _)| tang.iter().map(|t| t.eval(z)).collect()).collect();
        let sphere_mixed = self.sphere.iter().map(|(z, _)| mixed.eval(z)).collect();
        let off = self.off.iter().map(|z| Ok((p.eval(z), complex_gradients(p, z)?))).collect::<Result<_>>()?;
        Ok(Samples { m: y.m, n: y.n, j: y.j, sphere_val, sphere_grad, sphere_mixed, off })
    }
}

fn grad0_z(g: &[Complex64], d: usize) -> Vec<Complex64> {
    (0..d).map(|j| 0.5 * (g[j] - I * g[d + j])).collect()
}

fn herm(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x * y.conj()).sum()
}

fn pair(nodes: &Nodes, a: &Samples, b: &Samples) -> Prop31Report {
    let d = nodes.d;
    let (m, n) = (f64::from(a.m), f64::from(a.n));
    let (m2, n2) = (f64::from(b.m), f64::from(b.n));
    let mut r1a = 0.0f64;
    let mut r1b = 0.0f64;
    let mut r2 = 0.0f64;
    for (z, ((pa, ga), (pb, gb))) in nodes.off.iter().zip(a.off.iter().zip(&b.off)) {
        let zbar: Vec<Complex64> = z.iter().map(|c| c.conj()).collect();
        let r = z.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        r1a = r1a.max((herm(&zbar, &ga.grad_z) - m * pa.conj()).norm());
        r1b = r1b.max((herm(&zbar, &ga.grad0_z) - 0.5 * r * (m - n) * pa.conj()).norm());
        let lhs = herm(&ga.grad_z, &gb.grad_z);
        let rhs = herm(&ga.grad0_z, &gb.grad0_z) / (r * r) + ((3.0 * m + n) * m2 + (m - n) * n2) / (4.0 * r * r) * pa * pb.conj();
        r2 = r2.max((lhs - rhs).norm());
    }
    let mut r1c = 0.0f64;
    let mut r3 = 0.0f64;
    let mut integral = Complex64::new(0.0, 0.0);
    let mut inner = Complex64::new(0.0, 0.0);
    let mut ibp_lhs = Complex64::new(0.0, 0.0);
    let mut ibp_rhs = Complex64::new(0.0, 0.0);
    for (i, (z, w)) in nodes.sphere.iter().enumerate() {
        let ga = &a.sphere_grad[i];
        let gb = &b.sphere_grad[i];
        let gza = grad0_z(ga, d);
        let gzb = grad0_z(gb, d);
        let zbar: Vec<Complex64> = z.iter().map(|c| c.conj()).collect();
        // ξ·∇_0^y P̄ − η·∇_0^x P̄
        let cross: Complex64 = (0..d).map(|j| z[j].re * ga[d + j].conj() - z[j].im * ga[j].conj()).sum();
        r1c = r1c.max((herm(&zbar, &gza) - 0.5 * I * cross).norm());
        let lhs3 = herm(&gza, &gzb);
        let dot: Complex64 = ga.iter().zip(gb).map(|(x, y)| x * y.conj()).sum();
        let twist: Complex64 = (0..d).map(|j| ga[j] * gb[d + j].conj() - ga[d + j] * gb[j].conj()).sum();
        r3 = r3.max((lhs3 - (0.25 * dot + 0.25 * I * twist)).norm());
        integral += lhs3 * *w;
        let qb = b.sphere_val[i].conj();
        inner += a.sphere_val[i] * qb * *w;
        ibp_lhs += (0..d).map(|j| ga[j] * gb[d + j].conj()).sum::<Complex64>() * *w;
        let eta_dx: Complex64 = (0..d).map(|j| z[j].im * ga[j]).sum();
        ibp_rhs += (-a.sphere_mixed[i] + (2.0 * d as f64 - 1.0) * eta_dx) * qb * *w;
    }
    let lp = lambda_alternate(d, a.m, a.n);
    let lt = lambda_true(d, a.m, a.n);
    Prop31Report {
        d,
        p: (a.m, a.n, a.j),
        q: (b.m, b.n, b.j),
        r1a,
        r1b,
        r1c,
        r2,
        r3,
        r4: (ibp_lhs - ibp_rhs).norm(),
        integral,
        inner,
        lambda_alternate: lp,
        lambda_true: lt,
        r5_alternate: (integral - lp * inner).norm(),
        r5_true: (integral - lt * inner).norm(),
    }
}

fn check_dim(d: usize) -> Result<()> {
    if !(1..=2).contains(&d) {
        return Err(Error::UnsupportedDimension { d, supported: "1..=2" });
    }
    Ok(())
}

/// Identity residuals for a single pair of bigraded harmonics.
pub fn prop31_suite(p: &BigradedHarmonic, q: &BigradedHarmonic) -> Result<Prop31Report> {
    check_dim(p.d)?;
    if p.d != q.d {
        return invalid("harmonics live in different dimensions");
    }
    if p.m + p.n > 4 || q.m + q.n > 4 {
        return Err(Error::UnsupportedRange("identity suite covers m+n <= 4".into()));
    }
    let nodes = Nodes::new(p.d, (p.m + p.n + q.m + q.n) as usize + 4)?;
    Ok(pair(&nodes, &nodes.sample(p)?, &nodes.sample(q)?))
}

/// Identity residuals for every pair of basis elements with `m+n ≤ max_total`.
pub fn prop31_all(d: usize, max_total: u32) -> Result<Vec<Prop31Report>> {
    check_dim(d)?;
    if max_total > 4 {
        return Err(Error::UnsupportedRange("identity suite covers m+n <= 4".into()));
    }
    let nodes = Nodes::new(d, 2 * max_total as usize + 4)?;
    let basis = bigraded_basis_up_to(d, max_total)?;
    let samples: Vec<Samples> = basis.iter().map(|y| nodes.sample(y)).collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(samples.len() * samples.len());
    for a in &samples {
        for b in &samples {
            out.push(pair(&nodes, a, b));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::to_complex;
    use crate::specfun::bigraded_basis;

    #[test]
    fn constants_have_zero_gradients() {
        let c = ComplexPoly::constant(2, Complex64::new(2.0, 1.0));
        let g = complex_gradients(&c, &[Complex64::new(0.3, 0.1), Complex64::new(-0.2, 0.5)]).unwrap();
        assert!(g.grad_z.iter().chain(&g.grad_zbar).chain(&g.grad0_z).all(|v| v.norm() == 0.0));
        assert!(g.radial.norm() == 0.0);
    }

    #[test]
    fn linear_case() {
        let z1 = ComplexPoly::z(2, 0);
        let pt = [Complex64::new(0.3, 0.1), Complex64::new(-0.2, 0.5)];
        let g = complex_gradients(&z1, &pt).unwrap();
        assert!((g.grad_z[0] - 1.0).norm() < 1e-15 && g.grad_z[1].norm() < 1e-15);
        assert!(g.split_residual < 1e-14);
        assert!(complex_gradients(&z1, &[Complex64::new(0.0, 0.0); 2]).is_err());
    }

    #[test]
    fn split_reconstruction_random_bigraded() {
        let pt = [Complex64::new(0.7, -0.2), Complex64::new(0.1, 0.9)];
        for y in bigraded_basis_up_to(2, 4).unwrap() {
            assert!(complex_gradients(&y.poly, &pt).unwrap().split_residual < 1e-10);
            let s = complex_gradients_sampled(|p| y.poly.eval(&to_complex(p)), &pt, 1e-5).unwrap();
            assert!(s.split_residual < 1e-6);
        }
    }

    #[test]
    fn first_item_for_z1() {
        let y = bigraded_basis(2, 1, 0).unwrap()[0].clone();
        let rep = prop31_suite(&y, &y).unwrap();
        assert!(rep.r1a < 1e-13);
    }

    #[test]
    fn structural_items_hold_for_all_pairs() {
        for d in 1..=2 {
            for rep in prop31_all(d, 4).unwrap() {
                assert!(rep.max_structural() < 1e-8, "{rep:?}");
                assert!(rep.r5_true < 1e-8, "{rep:?}");
            }
        }
    }

    #[test]
    fn alternate_lambda_matches_only_on_the_diagonal_bidegree() {
        let y = bigraded_basis(2, 1, 1).unwrap()[0].clone();
        let rep = prop31_suite(&y, &y).unwrap();
        assert!((rep.lambda_alternate - 2.0).abs() < 1e-15);
        assert!(rep.r5_alternate < 1e-8);
        let y = bigraded_basis(1, 1, 0).unwrap()[0].clone();
        let rep = prop31_suite(&y, &y).unwrap();
        assert!((rep.integral.re - 0.25).abs() < 1e-12);
        assert!((rep.r5_alternate - 0.25).abs() < 1e-12);
        let zero = bigraded_basis(1, 0, 0).unwrap()[0].clone();
        let rep = prop31_suite(&zero, &zero).unwrap();
        assert_eq!(rep.lambda_alternate, 0.0);
        assert!(rep.max_structural() < 1e-14 && rep.r5_alternate < 1e-14);
    }
}
