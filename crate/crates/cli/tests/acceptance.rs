//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Criteria 5, 9 and 12 each contain one sub-check that does not hold for
//! the formula or bound it names; those lines print FAIL while the process
//! still exits 0 as long as every other sub-check passes.

use std::process::{Command, ExitCode};
use std::time::Instant;

use hriesz::{run_suite, Report, SuiteConfig, SuiteName};

struct Part {
    label: String,
    pass: bool,
    /// Sub-check whose failure is expected and does not fail the run.
    tolerated: bool,
}

struct Criterion {
    id: u8,
    title: &'static str,
    parts: Vec<Part>,
}

impl Criterion {
    fn new(id: u8, title: &'static str) -> Self {
        Self { id, title, parts: Vec::new() }
    }

    fn part(&mut self, label: impl Into<String>, pass: bool) -> &mut Self {
        self.parts.push(Part { label: label.into(), pass, tolerated: false });
        self
    }

    fn tolerated(&mut self, label: impl Into<String>, pass: bool) -> &mut Self {
        self.parts.push(Part { label: label.into(), pass, tolerated: true });
        self
    }

    /// Every named check of the report passes.
    fn checks(&mut self, rep: &Report, filter: impl Fn(&str) -> bool) -> &mut Self {
        for c in rep.checks.iter().filter(|c| filter(&c.name)) {
            self.part(format!("{} residual {:.2e} ≤ {:.0e}", c.name, c.residual, c.tolerance), c.pass);
        }
        self
    }

    fn pass(&self) -> bool {
        !self.parts.is_empty() && self.parts.iter().all(|p| p.pass)
    }

    fn unexpected(&self) -> bool {
        self.parts.is_empty() || self.parts.iter().any(|p| !p.pass && !p.tolerated)
    }
}

fn suite(name: SuiteName, edit: impl FnOnce(&mut SuiteConfig)) -> Report {
    let mut cfg = SuiteConfig::new(name);
    edit(&mut cfg);
    cfg.validate().expect("valid configuration");
    let start = Instant::now();
    let rep = run_suite(&cfg).unwrap_or_else(|e| panic!("suite {name} aborted: {e}"));
    println!("  [{name} ran in {:.1} s]", start.elapsed().as_secs_f64());
    rep
}

fn obs(rep: &Report, name: &str) -> f64 {
    rep.observation(name).unwrap_or_else(|| panic!("missing observation {name}")).value
}

fn main() -> ExitCode {
    let mut out = Vec::new();

    let kernels = suite(SuiteName::Kernels, |_| {});
    let mut c = Criterion::new(1, "dual-route kernels and semigroup laws");
    c.checks(&kernels, |_| true);
    out.push(c);

    let ops = suite(SuiteName::Operators, |_| {});
    let mut c = Criterion::new(2, "finite-difference eigenvalues");
    c.checks(&ops, |n| n.contains("fd_eigen"));
    out.push(c);
    let mut c = Criterion::new(3, "Riesz route equivalence and L² contraction");
    c.checks(&ops, |n| n.starts_with("hermite_riesz_"));
    out.push(c);

    let hb = suite(SuiteName::HeckeBochner, |_| {});
    let mut c = Criterion::new(4, "Hecke–Bochner ratio constancy and calibrated constant");
    c.checks(&hb, |_| true);
    out.push(c);

    let p31 = suite(SuiteName::Prop31, |_| {});
    let mut c = Criterion::new(5, "bigraded gradient identities and λ_d(m,n) = ¼((m+n)²+(4d−3)m−n)");
    c.checks(&p31, |_| true);
    for d in [1, 2] {
        let v = obs(&p31, &format!("dirichlet_eigenvalue_alternate_form_d{d}"));
        c.tolerated(format!("λ = ¼((m+n)²+(4d−3)m−n) residual {v:.2e} ≤ 1e-8 (d={d})"), v <= 1e-8);
    }
    out.push(c);

    let polar = suite(SuiteName::PolarIdentity, |_| {});
    let mut c = Criterion::new(6, "polar Riesz-square identity");
    c.checks(&polar, |n| n.starts_with("one_mode") || n.starts_with("two_mode"));
    out.push(c);

    let five = suite(SuiteName::FiveTerm, |_| {});
    let mut c = Criterion::new(7, "five-term decomposition and A_5 ≥ 0 on holomorphic-type inputs");
    c.checks(&five, |n| n == "decomposition_d1" || n == "a5_nonnegative_holomorphic_d1");
    out.push(c);

    let mut c = Criterion::new(8, "twisted-convolution projections");
    c.checks(&ops, |n| n.starts_with("twisted_"));
    out.push(c);

    let decay = suite(SuiteName::Decay, |_| {});
    let mut c = Criterion::new(9, "kernel decay sups stable under 4× refinement; K_m uniform; beta-integral ratio");
    c.checks(&decay, |_| true);
    let spread = obs(&decay, "km_d3_spread_across_m");
    c.tolerated(format!("K_m sups within 2× across m ≤ 6: max/min = {spread:.2}"), spread <= 2.0);
    out.push(c);

    let ap = suite(SuiteName::ApWeights, |_| {});
    let mut c = Criterion::new(10, "A_p machinery");
    c.checks(&ap, |_| true);
    out.push(c);

    let ratios = suite(SuiteName::NormRatios, |_| {});
    let mut c = Criterion::new(11, "empirical mixed-norm bounds: ≤ 10× baseline, ≤ 10% seed variation");
    c.part(format!("{} trials per probe", ratios.config.trials), ratios.config.trials >= 100);
    c.checks(&ratios, |_| true);
    out.push(c);

    let mut c = Criterion::new(12, "rotation covariance");
    c.checks(&ops, |n| n.contains("covariance"));
    let direct = obs(&ops, "special_covariance_direct_form");
    c.tolerated(format!("special Hermite form with k·w: residual {direct:.2e} ≤ 1e-5"), direct <= 1e-5);
    out.push(c);

    let mut c = Criterion::new(13, "determinism");
    let small = |cfg: &mut SuiteConfig| {
        cfg.samples = 40;
        cfg.pairs = 2;
        cfg.seed = 17;
    };
    let a = suite(SuiteName::Decay, small).to_json().expect("json");
    let b = suite(SuiteName::Decay, small).to_json().expect("json");
    c.part("decay report identical across runs", a == b);
    let dir = std::env::temp_dir().join(format!("hriesz-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let mut files = Vec::new();
    for i in 0..2 {
        let path = dir.join(format!("five-term-{i}.json"));
        let status = Command::new(env!("CARGO_BIN_EXE_hriesz")).args(["run", "five-term", "--seed", "5", "--out"]).arg(&path).status().expect("binary runs");
        c.part(format!("binary run {i} exits 0"), status.success());
        files.push(std::fs::read(&path).unwrap_or_default());
    }
    c.part("binary reports byte-identical", !files[0].is_empty() && files[0] == files[1]);
    let _ = std::fs::remove_dir_all(&dir);
    out.push(c);

    println!();
    let mut unexpected = false;
    for c in &out {
        println!("criterion {:>2}: {}  {}", c.id, if c.pass() { "PASS" } else { "FAIL" }, c.title);
        for p in c.parts.iter().filter(|p| !p.pass || p.tolerated) {
            println!("    {} {}", if p.pass { "ok  " } else { "FAIL" }, p.label);
        }
        unexpected |= c.unexpected();
    }
    let passed = out.iter().filter(|c| c.pass()).count();
    println!("\n{passed}/{} criteria pass", out.len());
    if unexpected {
        println!("unexpected failures present");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
