//! Orthonormal spherical harmonics on S^{d−1} and bigraded harmonics on S^{2d−1}.
//!
//! Both bases are produced the same way: project every monomial of the right
//! degree onto harmonics, then orthonormalise in lexicographic monomial order
//! using exact sphere moments. Results are cached per (d, degree).

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::functions::monomial_exponents;
use super::poly::{complex_sphere_moment, real_sphere_moment, ComplexPoly, RealPoly};
use crate::error::{Error, Result};

/// Relative norm below which a projected monomial is treated as dependent.
const RANK_TOL: f64 = 1e-9;

/// Real orthonormal harmonic Y_{m,j} on S^{d−1}, stored as a homogeneous polynomial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HarmonicBasisElement {
    pub d: usize,
    pub m: u32,
    pub j: usize,
    pub poly: RealPoly,
}

impl HarmonicBasisElement {
    pub fn eval(&self, x: &[f64]) -> f64 {
        self.poly.eval(x)
    }

    pub fn gradient_polys(&self) -> Vec<RealPoly> {
        (0..self.d).map(|i| self.poly.deriv(i)).collect()
    }

    /// Tangential gradient ∇₀Y(ω) = ∇Y − ω(ω·∇Y) at a point of the sphere.
    pub fn tangential_gradient(&self, omega: &[f64]) -> Vec<f64> {
        let g = self.poly.gradient(omega);
        let radial: f64 = g.iter().zip(omega).map(|(a, b)| a * b).sum();
        g.iter().zip(omega).map(|(gi, wi)| gi - wi * radial).collect()
    }
}

/// Complex orthonormal harmonic of bidegree (m, n) on S^{2d−1}.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BigradedHarmonic {
    pub d: usize,
    pub m: u32,
    pub n: u32,
    pub j: usize,
    pub poly: ComplexPoly,
}

impl BigradedHarmonic {
    pub fn eval(&self, z: &[Complex64]) -> Complex64 {
        self.poly.eval(z)
    }
}

type RealCache = Mutex<HashMap<(usize, u32), Arc<Vec<HarmonicBasisElement>>>>;
type ComplexCache = Mutex<HashMap<(usize, u32, u32), Arc<Vec<BigradedHarmonic>>>>;

fn real_cache() -> &'static RealCache {
    static CACHE: OnceLock<RealCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn complex_cache() -> &'static ComplexCache {
    static CACHE: OnceLock<ComplexCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Modified Gram–Schmidt (two passes) with a Hermitian Gram matrix.
/// Returns coefficient vectors of the orthonormal family.
/// Each candidate carries the norm of the monomial it was projected from, so
/// that projections which cancel to roundoff are recognised as zero.
fn orthonormalise(candidates: Vec<(DVector<Complex64>, f64)>, gram: &DMatrix<Complex64>) -> Vec<DVector<Complex64>> {
    let mut basis: Vec<DVector<Complex64>> = Vec::new();
    let mut gram_basis: Vec<DVector<Complex64>> = Vec::new();
    for (h, h_norm) in candidates {
        let mut v = h;
        for _ in 0..2 {
            for (e, ge) in basis.iter().zip(&gram_basis) {
                // ⟨v, e⟩ = e^* G v = (G e)^* v
                let c = ge.dotc(&v);
                v -= e * c;
            }
        }
        let gv = gram * &v;
        let norm = v.dotc(&gv).re.max(0.0).sqrt();
        if norm <= RANK_TOL * h_norm {
            continue;
        }
        let scale = Complex64::new(1.0 / norm, 0.0);
        basis.push(&v * scale);
        gram_basis.push(gv * scale);
    }
    basis
}

/// Orthonormal real basis of H_m on S^{d−1}, ordered by generating monomial.
pub fn real_spherical_basis(d: usize, m: u32) -> Result<Arc<Vec<HarmonicBasisElement>>> {
    if !(2..=4).contains(&d) || m > 8 {
        return Err(Error::UnsupportedRange(format!("real spherical basis needs 2 <= d <= 4 and m <= 8, got d={d}, m={m}")));
    }
    if let Some(b) = real_cache().lock().expect("basis cache poisoned").get(&(d, m)) {
        return Ok(b.clone());
    }
    let exps = monomial_exponents(d, m);
    let index: HashMap<&Vec<u32>, usize> = exps.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let n = exps.len();
    let gram = DMatrix::from_fn(n, n, |a, b| {
        let s: Vec<u32> = exps[a].iter().zip(&exps[b]).map(|(x, y)| x + y).collect();
        Complex64::new(real_sphere_moment(&s), 0.0)
    });
    let candidates = exps
        .iter()
        .map(|e| {
            let h = RealPoly::monomial(e.clone(), 1.0).harmonic_projection(m);
            let mut v = DVector::from_element(n, Complex64::new(0.0, 0.0));
            for (te, c) in h.terms() {
                v[index[&te.to_vec()]] = Complex64::new(c, 0.0);
            }
            (v, real_sphere_moment(&e.iter().map(|x| 2 * x).collect::<Vec<_>>()).sqrt())
        })
        .collect();
    let vecs = orthonormalise(candidates, &gram);
    let basis: Vec<HarmonicBasisElement> = vecs
        .iter()
        .enumerate()
        .map(|(j, v)| {
            let mut p = RealPoly::zero(d);
            for (i, e) in exps.iter().enumerate() {
                if v[i].re.abs() > 1e-15 {
                    p.add_term(e.clone(), v[i].re);
                }
            }
            HarmonicBasisElement { d, m, j: j + 1, poly: p }
        })
        .collect();
    let basis = Arc::new(basis);
    real_cache().lock().expect("basis cache poisoned").insert((d, m), basis.clone());
    Ok(basis)
}

/// Orthonormal basis of H_{m,n} on S^{2d−1}; empty when the space is trivial.
pub fn bigraded_basis(d: usize, m: u32, n: u32) -> Result<Arc<Vec<BigradedHarmonic>>> {
    if !(1..=2).contains(&d) || m + n > 6 {
        return Err(Error::UnsupportedRange(format!("bigraded basis needs d in {{1,2}} and m+n <= 6, got d={d}, (m,n)=({m},{n})")));
    }
    if let Some(b) = complex_cache().lock().expect("basis cache poisoned").get(&(d, m, n)) {
        return Ok(b.clone());
    }
    let mut keys: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
    for a in monomial_exponents(d, m) {
        for b in monomial_exponents(d, n) {
            keys.push((a.clone(), b));
        }
    }
    keys.sort();
    let index: HashMap<&(Vec<u32>, Vec<u32>), usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let size = keys.len();
    let gram = DMatrix::from_fn(size, size, |i, k| {
        let (a1, b1) = &keys[i];
        let (a2, b2) = &keys[k];
        // ∫ z^{a1} z̄^{b1} · conj(z^{a2} z̄^{b2}) = ∫ z^{a1+b2} z̄^{b1+a2}
        let g: Vec<u32> = a1.iter().zip(b2).map(|(x, y)| x + y).collect();
        let h: Vec<u32> = b1.iter().zip(a2).map(|(x, y)| x + y).collect();
        if g == h {
            Complex64::new(complex_sphere_moment(&g), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let candidates = keys
        .iter()
        .map(|(a, b)| {
            let h = ComplexPoly::monomial(a.clone(), b.clone(), Complex64::new(1.0, 0.0)).harmonic_projection(m + n);
            let mut v = DVector::from_element(size, Complex64::new(0.0, 0.0));
            for (ta, tb, c) in h.terms() {
                v[index[&(ta.to_vec(), tb.to_vec())]] = c;
            }
            let g: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            (v, complex_sphere_moment(&g).sqrt())
        })
        .collect();
    let vecs = orthonormalise(candidates, &gram);
    let basis: Vec<BigradedHarmonic> = vecs
        .iter()
        .enumerate()
        .map(|(j, v)| {
            let mut p = ComplexPoly::zero(d);
            for (i, (a, b)) in keys.iter().enumerate() {
                if v[i].norm() > 1e-15 {
                    p.add_term(a.clone(), b.clone(), v[i]);
                }
            }
            BigradedHarmonic { d, m, n, j: j + 1, poly: p }
        })
        .collect();
    let basis = Arc::new(basis);
    complex_cache().lock().expect("basis cache poisoned").insert((d, m, n), basis.clone());
    Ok(basis)
}

/// All bigraded harmonics with m + n ≤ max_total, ordered by (m+n, m, j).
pub fn bigraded_basis_up_to(d: usize, max_total: u32) -> Result<Vec<BigradedHarmonic>> {
    let mut out = Vec::new();
    for total in 0..=max_total {
        for m in (0..=total).rev() {
            out.extend(bigraded_basis(d, m, total - m)?.iter().cloned());
        }
    }
    Ok(out)
}

/// All real harmonics of degree ≤ max_degree, ordered by (m, j).
pub fn real_basis_up_to(d: usize, max_degree: u32) -> Result<Vec<HarmonicBasisElement>> {
    let mut out = Vec::new();
    for m in 0..=max_degree {
        out.extend(real_spherical_basis(d, m)?.iter().cloned());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{complex_sphere_rule, sphere_rule};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cz(p: &[f64], d: usize) -> Vec<Complex64> {
        (0..d).map(|j| Complex64::new(p[j], p[d + j])).collect()
    }

    #[test]
    fn real_basis_dimensions() {
        for m in 0..=8 {
            assert_eq!(real_spherical_basis(3, m).unwrap().len(), 2 * m as usize + 1);
            assert_eq!(real_spherical_basis(4, m).unwrap().len(), ((m + 1) * (m + 1)) as usize);
            assert_eq!(real_spherical_basis(2, m).unwrap().len(), if m == 0 { 1 } else { 2 });
        }
        assert!(matches!(real_spherical_basis(5, 1), Err(Error::UnsupportedRange(_))));
        assert!(matches!(real_spherical_basis(3, 9), Err(Error::UnsupportedRange(_))));
    }

    #[test]
    fn real_basis_orthonormal_by_quadrature() {
        for d in 2..=4 {
            let rule = sphere_rule(d, 9).unwrap();
            let all = real_basis_up_to(d, 4).unwrap();
            for a in &all {
                assert!(a.poly.laplacian().max_abs_coeff() < 1e-10);
                for b in &all {
                    let v = rule.integrate(|x| a.eval(x) * b.eval(x));
                    let expect = if a.m == b.m && a.j == b.j { 1.0 } else { 0.0 };
                    assert!((v - expect).abs() < 1e-10, "d={d} {}/{} vs {}/{}: {v}", a.m, a.j, b.m, b.j);
                }
            }
        }
    }

    #[test]
    fn orthonormality_by_monte_carlo() {
        let basis = real_spherical_basis(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 400_000;
        let (mut s11, mut s12) = (0.0, 0.0);
        for _ in 0..n {
            let v: [f64; 3] = loop {
                let p = [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)];
                let r2: f64 = p.iter().map(|x| x * x).sum();
                if r2 > 1e-6 && r2 <= 1.0 {
                    let r = r2.sqrt();
                    break [p[0] / r, p[1] / r, p[2] / r];
                }
            };
            let a = basis[0].eval(&v);
            let b = basis[1].eval(&v);
            s11 += a * a;
            s12 += a * b;
        }
        let area = 4.0 * std::f64::consts::PI;
        assert!((s11 / n as f64 * area - 1.0).abs() < 0.02);
        assert!((s12 / n as f64 * area).abs() < 0.02);
    }

    #[test]
    fn tangential_facts() {
        let rule = sphere_rule(3, 6).unwrap();
        let y = &real_spherical_basis(3, 2).unwrap()[0];
        let energy = rule.integrate(|w| y.tangential_gradient(w).iter().map(|g| g * g).sum());
        assert!((energy - 6.0).abs() < 1e-10);
        for d in 2..=4 {
            let rule = sphere_rule(d, 4).unwrap();
            for m in 0..=4 {
                for y in real_spherical_basis(d, m).unwrap().iter() {
                    for (w, _) in rule.iter() {
                        let g = y.tangential_gradient(w);
                        let dot: f64 = g.iter().zip(w).map(|(a, b)| a * b).sum();
                        assert!(dot.abs() < 1e-10);
                    }
                }
            }
        }
    }

    #[test]
    fn bigraded_dimensions_and_structure() {
        assert!(bigraded_basis(1, 2, 1).unwrap().is_empty());
        assert_eq!(bigraded_basis(1, 3, 0).unwrap().len(), 1);
        let lin = bigraded_basis(2, 1, 0).unwrap();
        assert_eq!(lin.len(), 2);
        for y in lin.iter() {
            assert_eq!(y.poly.table().len(), 1);
        }
        for m in 0..=6 {
            for n in 0..=(6 - m) {
                assert_eq!(bigraded_basis(2, m, n).unwrap().len(), (m + n + 1) as usize);
            }
        }
        assert!(bigraded_basis(3, 1, 0).is_err());
        assert!(bigraded_basis(2, 4, 3).is_err());
    }

    #[test]
    fn bigraded_orthonormal_and_homogeneous() {
        for d in 1..=2 {
            let rule = complex_sphere_rule(d, 8).unwrap();
            let all = bigraded_basis_up_to(d, 4).unwrap();
            for a in &all {
                assert!(a.poly.laplacian().max_abs_coeff() < 1e-10);
                for b in &all {
                    let v = rule.integrate_complex(|p| {
                        let z = cz(p, d);
                        a.eval(&z) * b.eval(&z).conj()
                    });
                    let same = a.m == b.m && a.n == b.n && a.j == b.j;
                    let expect = if same { 1.0 } else { 0.0 };
                    assert!((v - Complex64::new(expect, 0.0)).norm() < 1e-10, "d={d} ({},{},{}) ({},{},{}) {v}", a.m, a.n, a.j, b.m, b.n, b.j);
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(5);
            for y in &all {
                for _ in 0..5 {
                    let z: Vec<Complex64> = (0..d).map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
                    let lam = Complex64::new(rng.random_range(-1.5..1.5), rng.random_range(-1.5..1.5));
                    let zl: Vec<Complex64> = z.iter().map(|w| w * lam).collect();
                    let lhs = y.eval(&zl);
                    let rhs = lam.powu(y.m) * lam.conj().powu(y.n) * y.eval(&z);
                    assert!((lhs - rhs).norm() < 1e-12 * (1.0 + rhs.norm()));
                    let th: f64 = rng.random_range(0.0..6.3);
                    let e = Complex64::from_polar(1.0, th);
                    let zr: Vec<Complex64> = z.iter().map(|w| w * e).collect();
                    let phase = Complex64::from_polar(1.0, (y.m as f64 - y.n as f64) * th);
                    assert!((y.eval(&zr) - phase * y.eval(&z)).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn conjugate_lies_in_swapped_bidegree() {
        for d in 1..=2 {
            for m in 0..=3 {
                for n in 0..=(3 - m) {
                    let target = bigraded_basis(d, n, m).unwrap();
                    for y in bigraded_basis(d, m, n).unwrap().iter() {
                        let c = y.poly.conj();
                        let mut resid = c.clone();
                        for e in target.iter() {
                            let coef = c.sphere_inner(&e.poly);
                            resid.axpy(-coef, &e.poly);
                        }
                        assert!(resid.max_abs_coeff() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn basis_json_round_trip() {
        let b = real_spherical_basis(3, 2).unwrap();
        let s = serde_json::to_string(&*b).unwrap();
        let back: Vec<HarmonicBasisElement> = serde_json::from_str(&s).unwrap();
        assert_eq!(&back, &*b);
        let c = bigraded_basis(2, 1, 1).unwrap();
        let back: Vec<BigradedHarmonic> = serde_json::from_str(&serde_json::to_string(&*c).unwrap()).unwrap();
        assert_eq!(&back, &*c);
    }

    #[test]
    fn lexicographic_determinism() {
        let a = real_spherical_basis(4, 3).unwrap();
        let fresh: Vec<_> = a.iter().cloned().collect();
        let again = real_spherical_basis(4, 3).unwrap();
        assert_eq!(fresh, *again);
    }
}
