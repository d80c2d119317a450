//! Verification suites. Each suite appends gated checks and free-standing
//! observations to a [`Collector`].

mod decay;
mod five_term;
mod hecke;
mod kernels;
mod operators;
mod polar;
mod prop31;
mod ratios;
mod weights;

use serde::{Deserialize, Serialize};

use crate::config::{SuiteConfig, SuiteName};
use crate::report::{Check, Observation, Report};

pub use decay::{spread, MAX_KM_DEGREE, REFINEMENT, STABILITY_FACTOR};
pub use ratios::{default_gammas, inadmissible, ratio_probes, RatioProbe, BOUND_FACTOR, SEED_VARIATION};

/// Accumulates the outcome of one suite run.
pub struct Collector<'a> {
    cfg: &'a SuiteConfig,
    checks: Vec<Check>,
    observations: Vec<Observation>,
}

impl<'a> Collector<'a> {
    fn new(cfg: &'a SuiteConfig) -> Self {
        Self { cfg, checks: Vec::new(), observations: Vec::new() }
    }

    /// Identity check; `--tol` replaces the default tolerance.
    fn identity(&mut self, name: impl Into<String>, anchor: &str, residual: f64, tolerance: f64) {
        let tol = self.cfg.tol.unwrap_or(tolerance);
        self.checks.push(Check::new(name, anchor, residual, tol));
    }

    /// Check with a fixed tolerance (stability factors, sign conditions).
    fn fixed(&mut self, name: impl Into<String>, anchor: &str, residual: f64, tolerance: f64) {
        self.checks.push(Check::new(name, anchor, residual, tolerance));
    }

    fn observe(&mut self, name: impl Into<String>, anchor: &str, value: f64, note: &str) {
        self.observations.push(Observation { name: name.into(), anchor: anchor.into(), value, note: note.into() });
    }

    fn dims(&self, defaults: &[usize]) -> Vec<usize> {
        match self.cfg.dim {
            Some(d) => vec![d],
            None => defaults.to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: SuiteName,
    pub description: String,
    pub anchor: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub schema_version: u32,
    pub suites: Vec<CatalogEntry>,
}

pub const CATALOG_SCHEMA_VERSION: u32 = 1;

fn describe(name: SuiteName) -> (&'static str, &'static str) {
    match name {
        SuiteName::Kernels => (
            "closed forms against eigen-series for the Mehler, Laguerre, special Hermite and φ_k^δ heat kernels; semigroup laws",
            "Mehler formula; Laguerre heat kernel; special Hermite heat kernel; k_t^δ",
        ),
        SuiteName::Operators => (
            "finite-difference eigenvalues, Riesz transform routes, L² contraction, twisted-convolution projections",
            "eigenvalues 2|μ|+d, 4k+2α+2, 2k+d; R_j = A_j H^{-1/2}; φ_k × φ_l = (2π)^d δ_kl φ_k",
        ),
        SuiteName::HeckeBochner => {
            ("Hermite semigroup on g(|x|)Y(x/|x|) against the type-shifted Laguerre semigroup", "Hecke–Bochner transport e^{-tH}(gY) = c_d r^m Y T_t^{α+m} g̃")
        }
        SuiteName::Prop31 => (
            "bigraded harmonic gradient identities and the angular Dirichlet eigenvalue",
            "gradient identities for bigraded harmonics P_{m,n} on the complex sphere",
        ),
        SuiteName::PolarIdentity => ("Σ_j |R_j f|² split into radial and angular parts on spheres", "polar form of the Riesz square sum"),
        SuiteName::FiveTerm => (
            "five-term radial decomposition of Σ_j |S_j f|² + |S̄_j f|² and the supporting profile identities",
            "five-term decomposition A_1²+A_2²+A_3²+A_4²+A_5",
        ),
        SuiteName::Decay => (
            "normalised kernel decay sups under sample refinement, K_m uniformity, beta-integral ratio, Hörmander-type integrals",
            "size and smoothness bounds of the Riesz kernels and of K_m; beta-integral lemma",
        ),
        SuiteName::ApWeights => ("A_p^α constants of power weights, family refinement and the radial-weight bridge", "A_p^α weights on the half-line"),
        SuiteName::NormRatios => (
            "seeded mixed-norm ratio probes of the weighted boundedness statements",
            "weighted L^{p,2} bounds for R_j, S_j, the Laguerre Riesz family and the five radial terms",
        ),
        SuiteName::All => ("every suite above in sequence", "all of the above"),
    }
}

pub fn catalog() -> Catalog {
    let suites = SuiteName::ALL
        .iter()
        .map(|&name| {
            let (description, anchor) = describe(name);
            CatalogEntry { name, description: description.into(), anchor: anchor.into() }
        })
        .collect();
    Catalog { schema_version: CATALOG_SCHEMA_VERSION, suites }
}

fn run_one(name: SuiteName, c: &mut Collector<'_>) -> hermite_riesz::Result<()> {
    match name {
        SuiteName::Kernels => kernels::run(c),
        SuiteName::Operators => operators::run(c),
        SuiteName::HeckeBochner => hecke::run(c),
        SuiteName::Prop31 => prop31::run(c),
        SuiteName::PolarIdentity => polar::run(c),
        SuiteName::FiveTerm => five_term::run(c),
        SuiteName::Decay => decay::run(c),
        SuiteName::ApWeights => weights::run(c),
        SuiteName::NormRatios => ratios::run(c),
        SuiteName::All => {
            for s in SuiteName::ALL.iter().filter(|s| **s != SuiteName::All) {
                let before = (c.checks.len(), c.observations.len());
                run_one(*s, c)?;
                for ch in &mut c.checks[before.0..] {
                    ch.name = format!("{s}/{}", ch.name);
                }
                for ob in &mut c.observations[before.1..] {
                    ob.name = format!("{s}/{}", ob.name);
                }
            }
            Ok(())
        }
    }
}

/// Runs a validated configuration.
pub fn run_suite(cfg: &SuiteConfig) -> hermite_riesz::Result<Report> {
    let mut c = Collector::new(cfg);
    run_one(cfg.suite, &mut c)?;
    Ok(Report::new(cfg.clone(), c.checks, c.observations))
}

/// Running maximum in which NaN dominates.
fn worse(acc: f64, v: f64) -> f64 {
    if v.is_nan() || acc.is_nan() {
        f64::NAN
    } else {
        acc.max(v)
    }
}

/// Largest relative deviation `|a − b| / |b|`.
fn max_rel(pairs: impl IntoIterator<Item = (f64, f64)>) -> f64 {
    pairs.into_iter().map(|(a, b)| (a - b).abs() / b.abs()).fold(0.0, worse)
}
