//! Seeded norm-ratio experiments: random band-limited inputs, an operator,
//! and the ratio of weighted mixed norms of output and input.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

use super::norms::{RadialGrid, Space};
use super::weights::{ap_constant, IntervalFamily, WeightSpec};
use crate::error::{invalid, Error, Result};
use crate::operators::{half_inverse, hermite_riesz_spectral, laguerre_riesz, special_riesz, BandLimitedFunction, Basis, ModeLabel, OperatorRoute};
use crate::specfun::{bigraded_basis, hermite_fns, psi, real_spherical_basis, MultiIndex};
use crate::sphere_calculus::{five_term_terms, holomorphic_split, lambda_true};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Largest `|μ|` in random Hermite inputs.
pub const HERMITE_ORDER: u32 = 8;
/// Largest Laguerre degree `k` in random radial profiles.
pub const LAGUERRE_DEGREE: u32 = 8;
/// Largest spherical degree `m` in random Laguerre-type inputs.
pub const SPHERICAL_DEGREE: u32 = 4;
/// Largest bidegree `m+n` in random special Hermite inputs.
pub const BIDEGREE: u32 = 3;
/// Largest `k` in random special Hermite inputs.
pub const SPECIAL_DEGREE: u32 = 4;

/// Operator probed by an experiment. Indices `j` are 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "operator", rename_all = "snake_case")]
pub enum ProbeOperator {
    /// `R_j` on ℝ^d.
    HermiteRiesz { d: usize, j: usize },
    /// `S_j` (or `S̄_j`) on ℂ^d.
    SpecialRiesz { d: usize, j: usize, conjugate: bool },
    /// `(Σ_{m,j} r^{2m} |R^{α+m} f̃_{m,j}|²)^{1/2}`.
    LaguerreRieszFamily { d: usize },
    /// `(Σ |(r + ∂_r) F_{m,j}|²)^{1/2}` with `F_{m,j} = r^m L_{α+m}^{−1/2} f̃_{m,j}`.
    RadialRiesz { d: usize },
    /// `(Σ m(m+d−2) r^{−2} |F_{m,j}|²)^{1/2}`.
    AngularGradient { d: usize },
    /// `(Σ m² r^{2m−2} |L_{α+m}^{−1/2} f̃_{m,j}|²)^{1/2}`.
    AngularLaguerre { d: usize },
    /// One of the five radial terms `A_1..A_5` (the last under a square root)
    /// applied to the holomorphic part of the input.
    FiveTerm { d: usize, k: u8 },
}

impl ProbeOperator {
    pub fn space(&self) -> Space {
        match *self {
            ProbeOperator::HermiteRiesz { d, .. }
            | ProbeOperator::LaguerreRieszFamily { d }
            | ProbeOperator::RadialRiesz { d }
            | ProbeOperator::AngularGradient { d }
            | ProbeOperator::AngularLaguerre { d } => Space::Real { d },
            ProbeOperator::SpecialRiesz { d, .. } | ProbeOperator::FiveTerm { d, .. } => Space::Complex { d },
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            ProbeOperator::HermiteRiesz { d, j } => {
                if !(2..=4).contains(&d) {
                    return Err(Error::UnsupportedDimension { d, supported: "2..=4" });
                }
                if j >= d {
                    return invalid(format!("Riesz index {j} out of range for d = {d}"));
                }
            }
            ProbeOperator::SpecialRiesz { d, j, .. } => {
                if !(1..=2).contains(&d) {
                    return Err(Error::UnsupportedDimension { d, supported: "1..=2" });
                }
                if j >= d {
                    return invalid(format!("Riesz index {j} out of range for d = {d}"));
                }
            }
            ProbeOperator::LaguerreRieszFamily { d }
            | ProbeOperator::RadialRiesz { d }
            | ProbeOperator::AngularGradient { d }
            | ProbeOperator::AngularLaguerre { d } => {
                if !(2..=4).contains(&d) {
                    return Err(Error::UnsupportedDimension { d, supported: "2..=4" });
                }
            }
            ProbeOperator::FiveTerm { d, k } => {
                if !(1..=2).contains(&d) {
                    return Err(Error::UnsupportedDimension { d, supported: "1..=2" });
                }
                if !(1..=5).contains(&k) {
                    return invalid(format!("five-term index must be 1..=5, got {k}"));
                }
            }
        }
        Ok(())
    }

    /// Short tag for reports and file names.
    pub fn tag(&self) -> String {
        match *self {
            ProbeOperator::HermiteRiesz { d, j } => format!("hermite_riesz_d{d}_j{}", j + 1),
            ProbeOperator::SpecialRiesz { d, j, conjugate } => {
                format!("special_riesz{}_d{d}_j{}", if conjugate { "_bar" } else { "" }, j + 1)
            }
            ProbeOperator::LaguerreRieszFamily { d } => format!("laguerre_riesz_family_d{d}"),
            ProbeOperator::RadialRiesz { d } => format!("radial_riesz_d{d}"),
            ProbeOperator::AngularGradient { d } => format!("angular_gradient_d{d}"),
            ProbeOperator::AngularLaguerre { d } => format!("angular_laguerre_d{d}"),
            ProbeOperator::FiveTerm { d, k } => format!("five_term_a{k}_d{d}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub trials: usize,
    pub seed: u64,
    /// Skip the `A_p` admissibility gate (negative controls).
    pub allow_inadmissible: bool,
    pub r_min: f64,
    /// Outer radius; a cutoff-dependent default when absent.
    pub r_max: Option<f64>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self { trials: 100, seed: 0, allow_inadmissible: false, r_min: 0.0, r_max: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    /// Stream of the master-seeded ChaCha8 generator used for this trial.
    pub stream: u64,
    pub input_norm: f64,
    pub output_norm: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Quantiles {
    pub q50: f64,
    pub q90: f64,
    pub q99: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentMetadata {
    pub master_seed: u64,
    pub generator: String,
    pub modes: usize,
    pub radial_nodes: usize,
    pub r_min: f64,
    pub r_max: f64,
    pub sphere_level: Option<usize>,
    /// `A_p` constant on the standard interval family, absent if divergent.
    pub ap_constant: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioReport {
    pub schema_version: u32,
    pub operator: ProbeOperator,
    pub p: f64,
    pub weight: WeightSpec,
    pub trials: Vec<TrialRecord>,
    pub max: f64,
    pub mean: f64,
    pub quantiles: Quantiles,
    pub metadata: ExperimentMetadata,
}

impl RatioReport {
    pub const CSV_HEADER: &'static str = "operator,p,weight,trials,max,mean,q50,q90,q99,seed";

    /// One CSV summary row matching [`RatioReport::CSV_HEADER`].
    pub fn csv_row(&self) -> String {
        let weight = serde_json::to_string(&self.weight.kind).unwrap_or_default().replace(',', ";");
        format!(
            "{},{},{},{},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{}",
            self.operator.tag(),
            self.p,
            weight,
            self.trials.len(),
            self.max,
            self.mean,
            self.quantiles.q50,
            self.quantiles.q90,
            self.quantiles.q99,
            self.metadata.master_seed
        )
    }
}

/// Sphere energies of every input and output, per trial and radius.
struct Energies {
    grid: RadialGrid,
    input: Vec<Vec<f64>>,
    output: Vec<Vec<f64>>,
    modes: usize,
    sphere_level: Option<usize>,
    generator: String,
}

fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Coefficient matrix (labels × trials), one generator stream per trial.
fn random_coeffs(len: usize, cfg: &ExperimentConfig) -> (DMatrix<f64>, DMatrix<f64>) {
    let mut re = DMatrix::zeros(len, cfg.trials);
    let mut im = DMatrix::zeros(len, cfg.trials);
    for t in 0..cfg.trials {
        let mut rng = trial_rng(cfg.seed, t as u64);
        for l in 0..len {
            let c = gaussian(&mut rng);
            re[(l, t)] = c.re;
            im[(l, t)] = c.im;
        }
    }
    (re, im)
}

fn grid_for(space: Space, cutoff: u32, cfg: &ExperimentConfig) -> Result<RadialGrid> {
    let default = RadialGrid::for_cutoff(space, cutoff)?;
    RadialGrid::new(space.real_dim(), cfg.r_min, cfg.r_max.unwrap_or(default.r_max))
}

/// `Σ_i w_i |(A C)_{it}|²` for every trial column `t`, with `A = a_re + i a_im`.
fn column_energies(a_re: &DMatrix<f64>, a_im: Option<&DMatrix<f64>>, c: &(DMatrix<f64>, DMatrix<f64>), w: &[f64]) -> Vec<f64> {
    let mut vr = a_re * &c.0;
    let mut vi = a_re * &c.1;
    if let Some(ai) = a_im {
        vr -= ai * &c.1;
        vi += ai * &c.0;
    }
    (0..vr.ncols()).map(|t| (0..vr.nrows()).map(|i| w[i] * (vr[(i, t)].powi(2) + vi[(i, t)].powi(2))).sum()).collect()
}

fn transpose(rows: Vec<Vec<f64>>, trials: usize) -> Vec<Vec<f64>> {
    (0..trials).map(|t| rows.iter().map(|r| r[t]).collect()).collect()
}

fn hermite_energies(d: usize, j: usize, cfg: &ExperimentConfig) -> Result<Energies> {
    let space = Space::Real { d };
    let labels = MultiIndex::all_up_to(d, HERMITE_ORDER);
    let index: HashMap<MultiIndex, usize> = labels.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let c_in = random_coeffs(labels.len(), cfg);
    // R_j maps each mode to a multiple of one lower mode.
    let mut c_out = (DMatrix::zeros(labels.len(), cfg.trials), DMatrix::zeros(labels.len(), cfg.trials));
    for (l, mu) in labels.iter().enumerate() {
        let image = hermite_riesz_spectral(j, &BandLimitedFunction::mode(Basis::Hermite { d }, ModeLabel::Hermite { mu: mu.clone() })?, false)?;
        for (label, &c) in image.coeffs() {
            let ModeLabel::Hermite { mu: nu } = label else { continue };
            let target = index[nu];
            for t in 0..cfg.trials {
                let (a, b) = (c_in.0[(l, t)], c_in.1[(l, t)]);
                c_out.0[(target, t)] += c.re * a - c.im * b;
                c_out.1[(target, t)] += c.re * b + c.im * a;
            }
        }
    }
    let grid = grid_for(space, HERMITE_ORDER, cfg)?;
    let level = HERMITE_ORDER as usize;
    let sphere = space.sphere(level)?;
    let kmax = HERMITE_ORDER as usize;
    let mut e_in = Vec::with_capacity(grid.len());
    let mut e_out = Vec::with_capacity(grid.len());
    for &r in &grid.nodes {
        let mut a = DMatrix::zeros(sphere.len(), labels.len());
        for i in 0..sphere.len() {
            let tables: Vec<Vec<f64>> = sphere.node(i).iter().map(|o| hermite_fns(kmax, r * o)).collect();
            for (l, mu) in labels.iter().enumerate() {
                a[(i, l)] = mu.0.iter().zip(&tables).map(|(&k, t)| t[k as usize]).product();
            }
        }
        e_in.push(column_energies(&a, None, &c_in, sphere.weights()));
        e_out.push(column_energies(&a, None, &c_out, sphere.weights()));
    }
    Ok(Energies {
        grid,
        input: transpose(e_in, cfg.trials),
        output: transpose(e_out, cfg.trials),
        modes: labels.len(),
        sphere_level: Some(level),
        generator: format!("hermite modes |mu| <= {HERMITE_ORDER}, standard normal re/im"),
    })
}

fn special_labels(d: usize, with_k: u32) -> Result<Vec<ModeLabel>> {
    let mut out = Vec::new();
    for total in 0..=BIDEGREE {
        for m in 0..=total {
            let n = total - m;
            for j in 1..=bigraded_basis(d, m, n)?.len() {
                for k in 0..=with_k {
                    out.push(ModeLabel::Special { k, m, n, j });
                }
            }
        }
    }
    Ok(out)
}

fn special_energies(d: usize, j: usize, conjugate: bool, cfg: &ExperimentConfig) -> Result<Energies> {
    let space = Space::Complex { d };
    let basis = Basis::SpecialHermite { d };
    let labels = special_labels(d, SPECIAL_DEGREE)?;
    let modes: Vec<BandLimitedFunction> = labels.iter().map(|l| BandLimitedFunction::mode(basis, l.clone())).collect::<Result<_>>()?;
    let c = random_coeffs(labels.len(), cfg);
    let grid = grid_for(space, SPECIAL_DEGREE + BIDEGREE, cfg)?;
    let level = BIDEGREE as usize + 2;
    let sphere = space.sphere(level)?;
    let mut e_in = Vec::with_capacity(grid.len());
    let mut e_out = Vec::with_capacity(grid.len());
    for &r in &grid.nodes {
        let pts: Vec<Vec<f64>> = (0..sphere.len()).map(|i| sphere.node(i).iter().map(|o| r * o).collect()).collect();
        let (mut ar, mut ai) = (DMatrix::zeros(pts.len(), labels.len()), DMatrix::zeros(pts.len(), labels.len()));
        let (mut br, mut bi) = (DMatrix::zeros(pts.len(), labels.len()), DMatrix::zeros(pts.len(), labels.len()));
        for (l, mode) in modes.iter().enumerate() {
            let image = special_riesz(j, mode, OperatorRoute::Spectral, &pts, conjugate)?;
            for (i, p) in pts.iter().enumerate() {
                let v = basis.mode_value(&labels[l], p)?;
                ar[(i, l)] = v.re;
                ai[(i, l)] = v.im;
                br[(i, l)] = image[i].re;
                bi[(i, l)] = image[i].im;
            }
        }
        e_in.push(column_energies(&ar, Some(&ai), &c, sphere.weights()));
        e_out.push(column_energies(&br, Some(&bi), &c, sphere.weights()));
    }
    Ok(Energies {
        grid,
        input: transpose(e_in, cfg.trials),
        output: transpose(e_out, cfg.trials),
        modes: labels.len(),
        sphere_level: Some(level),
        generator: format!("special hermite modes m+n <= {BIDEGREE}, k <= {SPECIAL_DEGREE}, standard normal re/im"),
    })
}

/// Inputs `f = Σ r^m f̃_{m,j}(r) Y_{m,j}(ω)` with `f̃_{m,j} = Σ_k c ψ_k^{α+m}`;
/// sphere energies follow from orthonormality of the `Y_{m,j}`.
fn laguerre_energies(op: ProbeOperator, d: usize, cfg: &ExperimentConfig) -> Result<Energies> {
    let space = Space::Real { d };
    let alpha = space.alpha();
    let grid = grid_for(space, 2 * LAGUERRE_DEGREE + SPHERICAL_DEGREE, cfg)?;
    let radii = &grid.nodes;
    let df = d as f64;
    // Per (m, k): input profile, r^m R^{α+m} ψ_k, and r^m L^{−1/2} ψ_k on the grid.
    type Table = Vec<Vec<f64>>;
    let mut profiles: Vec<(u32, Table, Table, Table)> = Vec::new();
    let mut pairs = Vec::new();
    for m in 0..=SPHERICAL_DEGREE {
        let basis = Basis::Laguerre { alpha: alpha + f64::from(m) };
        let (mut inp, mut riesz, mut half) = (Vec::new(), Vec::new(), Vec::new());
        for k in 0..=LAGUERRE_DEGREE {
            let mode = BandLimitedFunction::mode(basis, ModeLabel::Laguerre { k })?;
            let h = half_inverse(&mode, OperatorRoute::Spectral)?;
            let rv = laguerre_riesz(&mode, radii)?;
            inp.push(radii.iter().map(|&r| r.powi(m as i32) * psi(k, alpha + f64::from(m), r)).collect());
            riesz.push(radii.iter().zip(&rv).map(|(&r, v)| r.powi(m as i32) * v.re).collect());
            half.push(radii.iter().map(|&r| Ok(r.powi(m as i32) * h.eval(&[r])?.re)).collect::<Result<Vec<f64>>>()?);
        }
        profiles.push((m, inp, riesz, half));
        for _ in 0..real_spherical_basis(d, m)?.len() {
            pairs.push(m);
        }
    }
    let nk = LAGUERRE_DEGREE as usize + 1;
    let trials: Vec<(Vec<f64>, Vec<f64>)> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(cfg.seed, t as u64);
            let mut e_in = vec![0.0; radii.len()];
            let mut e_out = vec![0.0; radii.len()];
            for &m in &pairs {
                let (_, inp, riesz, half) = &profiles[m as usize];
                let c: Vec<Complex64> = (0..nk).map(|_| gaussian(&mut rng)).collect();
                let mf = f64::from(m);
                for (i, &r) in radii.iter().enumerate() {
                    let comb = |tab: &Vec<Vec<f64>>| c.iter().zip(tab).map(|(c, row)| c * row[i]).sum::<Complex64>();
                    e_in[i] += comb(inp).norm_sqr();
                    e_out[i] += match op {
                        ProbeOperator::LaguerreRieszFamily { .. } => comb(riesz).norm_sqr(),
                        ProbeOperator::RadialRiesz { .. } => (comb(riesz) + comb(half) * (mf / r)).norm_sqr(),
                        ProbeOperator::AngularGradient { .. } => mf * (mf + df - 2.0) * comb(half).norm_sqr() / (r * r),
                        _ => mf * mf * comb(half).norm_sqr() / (r * r),
                    };
                }
            }
            (e_in, e_out)
        })
        .collect();
    let (input, output) = trials.into_iter().unzip();
    Ok(Energies {
        grid,
        input,
        output,
        modes: pairs.len() * nk,
        sphere_level: None,
        generator: format!("profiles m <= {SPHERICAL_DEGREE} (all j), laguerre k <= {LAGUERRE_DEGREE}, standard normal re/im"),
    })
}

fn five_term_energies(d: usize, k: u8, cfg: &ExperimentConfig) -> Result<Energies> {
    let space = Space::Complex { d };
    let basis = Basis::SpecialHermite { d };
    let labels = special_labels(d, SPECIAL_DEGREE)?;
    let grid = grid_for(space, SPECIAL_DEGREE + BIDEGREE, cfg)?;
    let radii = &grid.nodes;
    let trials: Vec<(Vec<f64>, Vec<f64>)> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(cfg.seed, t as u64);
            let f = BandLimitedFunction::from_coeffs(basis, labels.iter().map(|l| (l.clone(), gaussian(&mut rng))))?;
            let (fh, _) = holomorphic_split(&f)?;
            let terms = five_term_terms(&fh, radii, lambda_true)?;
            Ok((profile_energies(&fh, radii)?, terms[k as usize - 1].clone()))
        })
        .collect::<Result<_>>()?;
    let (input, output) = trials.into_iter().unzip();
    Ok(Energies {
        grid,
        input,
        output,
        modes: labels.len(),
        sphere_level: None,
        generator: format!("holomorphic part of special hermite modes m+n <= {BIDEGREE}, k <= {SPECIAL_DEGREE}"),
    })
}

/// `Σ_{m,n,j} |Σ_k c φ_k^δ(r) r^{m+n}|²`, the sphere energy of a special
/// Hermite expansion.
fn profile_energies(f: &BandLimitedFunction, radii: &[f64]) -> Result<Vec<f64>> {
    let Basis::SpecialHermite { d } = f.basis() else {
        return invalid("profile energies need a special Hermite expansion");
    };
    let mut groups: HashMap<(u32, u32, usize), Vec<(u32, Complex64)>> = HashMap::new();
    for (l, &c) in f.coeffs() {
        if let ModeLabel::Special { k, m, n, j } = *l {
            groups.entry((m, n, j)).or_default().push((k, c));
        }
    }
    let mut out = vec![0.0; radii.len()];
    for ((m, n, _), modes) in groups {
        let delta = f64::from(d as u32 + m + n) - 1.0;
        for (slot, &r) in out.iter_mut().zip(radii) {
            let v: Complex64 = modes.iter().map(|&(k, c)| c * crate::specfun::phi_small(k, delta, r)).sum();
            *slot += (v * r.powi((m + n) as i32)).norm_sqr();
        }
    }
    Ok(out)
}

fn energies(op: ProbeOperator, cfg: &ExperimentConfig) -> Result<Energies> {
    op.validate()?;
    if cfg.trials == 0 {
        return invalid("an experiment needs at least one trial");
    }
    match op {
        ProbeOperator::HermiteRiesz { d, j } => hermite_energies(d, j, cfg),
        ProbeOperator::SpecialRiesz { d, j, conjugate } => special_energies(d, j, conjugate, cfg),
        ProbeOperator::LaguerreRieszFamily { d }
        | ProbeOperator::RadialRiesz { d }
        | ProbeOperator::AngularGradient { d }
        | ProbeOperator::AngularLaguerre { d } => laguerre_energies(op, d, cfg),
        ProbeOperator::FiveTerm { d, k } => five_term_energies(d, k, cfg),
    }
}

fn admissibility(op: ProbeOperator, w: &WeightSpec, cfg: &ExperimentConfig) -> Result<Option<f64>> {
    let space = op.space();
    w.validate()?;
    if (w.alpha - space.alpha()).abs() > 1e-12 {
        return invalid(format!("weight is tagged with α = {}, {} needs {}", w.alpha, op.tag(), space.alpha()));
    }
    let rep = ap_constant(w, &IntervalFamily::standard())?;
    match (rep.constant(), cfg.allow_inadmissible) {
        (Some(c), _) => Ok(Some(c)),
        (None, true) => Ok(None),
        (None, false) => {
            let worst = rep.worst().expect("non-empty family");
            Err(Error::InadmissibleWeight(format!(
                "{} of {} intervals have divergent averages, e.g. [{}, {}]",
                rep.non_integrable,
                rep.intervals.len(),
                worst.a,
                worst.b
            )))
        }
    }
}

fn summarize(op: ProbeOperator, w: &WeightSpec, cfg: &ExperimentConfig, e: &Energies, ap: Option<f64>) -> Result<RatioReport> {
    let mut trials = Vec::with_capacity(cfg.trials);
    for (t, (ein, eout)) in e.input.iter().zip(&e.output).enumerate() {
        let input_norm = e.grid.norm(ein, w)?;
        let output_norm = e.grid.norm(eout, w)?;
        if !(input_norm > 0.0) || !input_norm.is_finite() || !output_norm.is_finite() {
            return Err(Error::Resolution(format!("trial {t}: norms {input_norm}, {output_norm}")));
        }
        trials.push(TrialRecord { stream: t as u64, input_norm, output_norm, ratio: output_norm / input_norm });
    }
    let mut sorted: Vec<f64> = trials.iter().map(|t| t.ratio).collect();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite ratios"));
    let q = |p: f64| sorted[((p * (sorted.len() - 1) as f64).round() as usize).min(sorted.len() - 1)];
    Ok(RatioReport {
        schema_version: REPORT_SCHEMA_VERSION,
        operator: op,
        p: w.p,
        weight: w.clone(),
        max: sorted[sorted.len() - 1],
        mean: sorted.iter().sum::<f64>() / sorted.len() as f64,
        quantiles: Quantiles { q50: q(0.5), q90: q(0.9), q99: q(0.99) },
        trials,
        metadata: ExperimentMetadata {
            master_seed: cfg.seed,
            generator: e.generator.clone(),
            modes: e.modes,
            radial_nodes: e.grid.len(),
            r_min: e.grid.r_min,
            r_max: e.grid.r_max,
            sphere_level: e.sphere_level,
            ap_constant: ap,
        },
    })
}

/// Ratios `‖T f‖ / ‖f‖` in `L^{p,2}(w)` over seeded random inputs; `p` is `w.p`.
pub fn norm_ratio_experiment(op: ProbeOperator, w: &WeightSpec, cfg: &ExperimentConfig) -> Result<RatioReport> {
    Ok(norm_ratio_sweep(op, std::slice::from_ref(w), cfg)?.remove(0))
}

/// Same inputs and outputs measured under several weights (each with its own `p`).
pub fn norm_ratio_sweep(op: ProbeOperator, weights: &[WeightSpec], cfg: &ExperimentConfig) -> Result<Vec<RatioReport>> {
    if weights.is_empty() {
        return invalid("no weights to measure with");
    }
    op.validate()?;
    let aps: Vec<Option<f64>> = weights.iter().map(|w| admissibility(op, w, cfg)).collect::<Result<_>>()?;
    let e = energies(op, cfg)?;
    weights.iter().zip(aps).map(|(w, ap)| summarize(op, w, cfg, &e, ap)).collect()
}

/// Largest ratio as the radial grid starts closer to the origin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NegativeControl {
    pub operator: ProbeOperator,
    pub weight: WeightSpec,
    pub r_min: Vec<f64>,
    pub max_ratio: Vec<f64>,
}

/// Runs the experiment with the admissibility gate off for each inner radius.
pub fn negative_control(op: ProbeOperator, w: &WeightSpec, cfg: &ExperimentConfig, r_mins: &[f64]) -> Result<NegativeControl> {
    let mut max_ratio = Vec::with_capacity(r_mins.len());
    for &r_min in r_mins {
        let run = ExperimentConfig { allow_inadmissible: true, r_min, ..cfg.clone() };
        max_ratio.push(norm_ratio_experiment(op, w, &run)?.max);
    }
    Ok(NegativeControl { operator: op, weight: w.clone(), r_min: r_mins.to_vec(), max_ratio })
}
