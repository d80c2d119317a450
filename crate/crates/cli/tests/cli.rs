use std::path::Path;
use std::process::{Command, Output};

use hriesz::{exit, Catalog, Report, SuiteName};

fn hriesz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hriesz")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn read_report(path: &Path) -> Report {
    Report::from_json(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn prop31_run_writes_residuals() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = hriesz(&["run", "prop31", "--dim", "2", "--max-bidegree", "4", "--tol", "1e-8", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), exit::SUCCESS, "{}", String::from_utf8_lossy(&o.stderr));
    let rep = read_report(&out);
    assert_eq!(rep.suite, SuiteName::Prop31);
    assert_eq!(rep.config.dim, Some(2));
    assert!(!rep.checks.is_empty());
    assert!(rep.checks.iter().all(|c| c.pass && c.residual <= 1e-8 && c.tolerance == 1e-8));
    assert_eq!(rep.summary.total, rep.checks.len());
    assert_eq!(rep.timestamp, None);
}

#[test]
fn unknown_suite_is_usage_error_without_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = hriesz(&["run", "bogus", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), exit::USAGE);
    assert!(!out.exists());
}

#[test]
fn json_and_csv_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json");
    let csv = dir.path().join("r.csv");
    assert_eq!(code(&hriesz(&["run", "polar-identity", "--out", json.to_str().unwrap()])), exit::SUCCESS);
    let rep = read_report(&json);
    assert_eq!(rep.to_json().unwrap(), std::fs::read_to_string(&json).unwrap());
    assert_eq!(code(&hriesz(&["run", "polar-identity", "--format", "csv", "--out", csv.to_str().unwrap()])), exit::SUCCESS);
    let mut reader = csv::Reader::from_path(&csv).unwrap();
    assert_eq!(reader.headers().unwrap(), vec!["name", "anchor", "residual", "tolerance", "pass"]);
    let names: Vec<String> = reader.records().map(|r| r.unwrap()[0].to_string()).collect();
    assert_eq!(names, rep.checks.iter().map(|c| c.name.clone()).collect::<Vec<_>>());
}

#[test]
fn list_json_is_catalog() {
    let o = hriesz(&["list", "--json"]);
    assert_eq!(code(&o), exit::SUCCESS);
    let cat: Catalog = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(cat.suites.len(), SuiteName::ALL.len());
    let five = cat.suites.iter().find(|e| e.name == SuiteName::FiveTerm).unwrap();
    assert!(five.anchor.contains("A_"));
    assert!(cat.suites.iter().all(|e| !e.description.is_empty() && !e.anchor.is_empty()));
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    let out = dir.path().join("r.json");
    std::fs::write(&cfg, "# prop31 at low degree\nmax-bidegree = 2\nseed = 4\ndim = 1\n").unwrap();
    let o = hriesz(&["run", "prop31", "--config", cfg.to_str().unwrap(), "--seed", "9", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), exit::SUCCESS);
    let rep = read_report(&out);
    assert_eq!((rep.config.max_bidegree, rep.config.seed, rep.config.dim), (2, 9, Some(1)));
}

#[test]
fn config_errors_exit_before_running() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.conf");
    let out = dir.path().join("r.json");
    std::fs::write(&cfg, "colour = red\n").unwrap();
    let o = hriesz(&["run", "kernels", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), exit::CONFIG);
    assert!(String::from_utf8_lossy(&o.stderr).contains("colour"));
    assert!(!out.exists());
    let o = hriesz(&["run", "prop31", "--dim", "3", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), exit::CONFIG);
    let o = hriesz(&["run", "norm-ratios", "--p", "2", "--weight-gamma", "2.5", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), exit::CONFIG);
    assert!(!out.exists());
}

#[test]
fn failing_check_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = hriesz(&["run", "polar-identity", "--tol", "1e-300", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), exit::CHECK_FAILED);
    let rep = read_report(&out);
    assert!(rep.summary.failed > 0);
}

#[test]
fn reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let files: Vec<Vec<u8>> = (0..2)
        .map(|i| {
            let out = dir.path().join(format!("r{i}.json"));
            let o = hriesz(&["run", "five-term", "--seed", "3", "--out", out.to_str().unwrap()]);
            assert_eq!(code(&o), exit::SUCCESS);
            std::fs::read(out).unwrap()
        })
        .collect();
    assert_eq!(files[0], files[1]);
}

#[test]
fn negative_weight_exponents_are_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = hriesz(&["run", "norm-ratios", "--dim", "2", "--p", "2", "--weight-gamma", "-1,0.5", "--trials", "5", "--out", out.to_str().unwrap()]);
    assert!(matches!(code(&o), 0 | 1), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(read_report(&out).config.weight_gamma, Some(vec![-1.0, 0.5]));
}
