use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use hriesz::{catalog, exit, run_suite, Format, Overrides, Report, SuiteConfig, SuiteName};

#[derive(Parser)]
#[command(name = "hriesz", version, about = "Verification suites for Hermite, Laguerre and special Hermite Riesz transforms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a suite and write its report.
    Run(Box<RunArgs>),
    /// List the registered suites.
    List {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct RunArgs {
    suite: SuiteName,
    /// Plain-text `key = value` file; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated exponents.
    #[arg(long)]
    p: Option<String>,
    /// Comma-separated power-weight exponents.
    #[arg(long, allow_hyphen_values = true)]
    weight_gamma: Option<String>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    pairs: Option<usize>,
    #[arg(long)]
    max_bidegree: Option<u32>,
    /// Report path; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Stamp the report with the current time.
    #[arg(long)]
    timestamp: bool,
}

impl RunArgs {
    fn overrides(&self) -> Overrides {
        let mut o = Overrides::default();
        let mut put = |key: &str, value: Option<String>| {
            if let Some(v) = value {
                o.push(key, v);
            }
        };
        put("dim", self.dim.map(|v| v.to_string()));
        put("tol", self.tol.map(|v| v.to_string()));
        put("seed", self.seed.map(|v| v.to_string()));
        put("p", self.p.clone());
        put("weight_gamma", self.weight_gamma.clone());
        put("trials", self.trials.map(|v| v.to_string()));
        put("samples", self.samples.map(|v| v.to_string()));
        put("pairs", self.pairs.map(|v| v.to_string()));
        put("max_bidegree", self.max_bidegree.map(|v| v.to_string()));
        put("out", self.out.as_ref().map(|v| v.display().to_string()));
        put("format", self.format.map(|f| if f == Format::Csv { "csv".into() } else { "json".into() }));
        o
    }
}

fn resolve(args: &RunArgs) -> Result<SuiteConfig, hriesz::ConfigError> {
    let mut cfg = SuiteConfig::new(args.suite);
    if let Some(path) = &args.config {
        cfg.apply(&Overrides::from_file(path)?)?;
    }
    cfg.apply(&args.overrides())?;
    cfg.validate()?;
    Ok(cfg)
}

fn emit(report: &Report, cfg: &SuiteConfig) -> std::io::Result<()> {
    let mut buf = Vec::new();
    match cfg.format {
        Format::Json => buf.extend(report.to_json()?.into_bytes()),
        Format::Csv => report.write_csv(&mut buf).map_err(std::io::Error::other)?,
    }
    match &cfg.out {
        Some(path) => std::fs::write(path, buf),
        None => std::io::stdout().write_all(&buf),
    }
}

fn run(args: RunArgs) -> i32 {
    let cfg = match resolve(&args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("config error: {e}");
            return exit::CONFIG;
        }
    };
    let mut report = match run_suite(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("suite {} aborted: {e}", cfg.suite);
            return exit::RUNTIME;
        }
    };
    if args.timestamp {
        report.timestamp = SystemTime::now().duration_since(UNIX_EPOCH).ok().map(|d| d.as_secs());
    }
    if let Err(e) = emit(&report, &cfg) {
        eprintln!("cannot write report: {e}");
        return exit::RUNTIME;
    }
    for c in report.checks.iter().filter(|c| !c.pass) {
        eprintln!("FAIL {}: residual {:e} > tolerance {:e}", c.name, c.residual, c.tolerance);
    }
    eprintln!("{}: {}/{} checks passed", cfg.suite, report.summary.passed, report.summary.total);
    if report.all_passed() {
        exit::SUCCESS
    } else {
        exit::CHECK_FAILED
    }
}

fn list(json: bool) -> i32 {
    let cat = catalog();
    if json {
        match serde_json::to_string_pretty(&cat) {
            Ok(s) => println!("{s}"),
            Err(e) => {
                eprintln!("{e}");
                return exit::RUNTIME;
            }
        }
    } else {
        for e in &cat.suites {
            println!("{:<15} {}\n{:<15} certifies: {}", e.name.as_str(), e.description, "", e.anchor);
        }
    }
    exit::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Run(args) => run(*args),
        Command::List { json } => list(json),
    };
    ExitCode::from(code as u8)
}
