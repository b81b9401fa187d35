use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use mexhat_cli::commands::{cmd_build, cmd_cwt, cmd_sample};
use mexhat_cli::config::{OutputFormat, RunConfig};
use mexhat_cli::validate::{run_validation, Level, ValidationContext};
use mexhat_cli::CliError;
use tempfile::TempDir;

fn mexhat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mexhat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines()
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect()
}

#[test]
fn build_exit_codes() {
    let dir = TempDir::new().unwrap();
    let ok = write(dir.path(), "hat.cfg", "g = 0.5, 0, -0.5\n");
    let out = mexhat(&["build", "--config", ok.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("envelope: [1, 0, -1]"), "{text}");
    assert!(text.contains("residual: 0\n"));
    assert!(text.contains("crossings: 2\n"));

    let bad = write(dir.path(), "gauss.cfg", "g = 1\n");
    let out = mexhat(&["build", "--config", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.contains(&format!("residual: {}", PI.powf(-0.25))),
        "{text}"
    );

    let broken = write(dir.path(), "broken.cfg", "g = 1\nsample_count = x\n");
    let out = mexhat(&["build", "--config", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 2"));

    let missing = dir.path().join("nope.cfg");
    assert_eq!(
        mexhat(&["build", "--config", missing.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn case_three_build() {
    let cfg = RunConfig::parse("g = 1, 0, 2, 0, 4, 0, -1\n").unwrap();
    let r = cmd_build(&cfg.wavelet).unwrap();
    assert_eq!(r.envelope, vec![26.0, 0.0, -134.0, 0.0, 76.0, 0.0, -8.0]);
    assert_eq!(r.crossings, 6);
}

#[test]
fn sample_writes_deterministic_files() {
    let dir = TempDir::new().unwrap();
    let cfg = write(
        dir.path(),
        "hat.cfg",
        "g = 0.5, 0, -0.5\nsample_range = -5, 5\nsample_count = 1001\n",
    );
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let out = mexhat(&[
            "sample",
            "--config",
            cfg.to_str().unwrap(),
            "--output",
            p.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let text = String::from_utf8(ta).unwrap();
    assert!(text.starts_with("x,psi\n"));
    let data = rows(&text);
    assert_eq!(data.len(), 1001);

    let (imax, max) =
        data.iter().enumerate().fold(
            (0, f64::MIN),
            |a, (i, r)| if r[1] > a.1 { (i, r[1]) } else { a },
        );
    assert_eq!(data[imax][0], 0.0);
    assert!((max - PI.powf(-0.25)).abs() < 1e-10);
    // minima near ±√3
    let (imin, _) =
        data.iter().enumerate().fold(
            (0, f64::MAX),
            |a, (i, r)| if r[1] < a.1 { (i, r[1]) } else { a },
        );
    assert!((data[imin][0].abs() - 3f64.sqrt()).abs() < 0.01);

    let svg = dir.path().join("a.svg");
    let out = mexhat(&[
        "sample",
        "--config",
        cfg.to_str().unwrap(),
        "--output",
        svg.to_str().unwrap(),
        "--format",
        "svg",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let svg = std::fs::read_to_string(svg).unwrap();
    assert_eq!(svg.matches("<polyline").count(), 1);
    assert_eq!(svg.matches(',').count(), 1001);
}

#[test]
fn unwritable_output_is_an_io_error() {
    let dir = TempDir::new().unwrap();
    let cfg = write(dir.path(), "hat.cfg", "g = 0.5, 0, -0.5\n");
    let target = dir.path().join("missing").join("out.csv");
    let out = mexhat(&[
        "sample",
        "--config",
        cfg.to_str().unwrap(),
        "--output",
        target.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn case_two_peak() {
    let cfg = RunConfig::parse("g = -1, 0, -2, 0, 1\nsample_count = 1001\n").unwrap();
    let data = rows(&cmd_sample(&cfg.wavelet, OutputFormat::Csv).unwrap());
    let mid = &data[500];
    assert_eq!(mid[0], 0.0);
    assert!((mid[1] - 4.0 * PI.powf(-0.25)).abs() < 1e-10);
}

#[test]
fn sample_then_cwt_recovers_norm() {
    let dir = TempDir::new().unwrap();
    let cfg = write(
        dir.path(),
        "hat.cfg",
        "g = 0.5, 0, -0.5\nsample_range = -12, 12\nsample_count = 2401\noutput = hat.csv\nsignal = hat.csv\nmu = 0.5, 1, 2\ns = -1, 0, 1\n",
    );
    let out = mexhat(&["sample", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let out = mexhat(&[
        "cwt",
        "--config",
        cfg.to_str().unwrap(),
        "--output",
        dir.path().join("w.csv").to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = std::fs::read_to_string(dir.path().join("w.csv")).unwrap();
    assert!(text.starts_with("mu,s,w\n"));
    let data = rows(&text);
    assert_eq!(data.len(), 9);
    // row-major over μ then s
    assert_eq!((data[1][0], data[1][1]), (0.5, 0.0));
    assert_eq!((data[3][0], data[3][1]), (1.0, -1.0));
    let cell = &data[4];
    assert_eq!((cell[0], cell[1]), (1.0, 0.0));
    assert!((cell[2] - 0.75).abs() < 1e-5, "{}", cell[2]);
}

#[test]
fn zero_and_constant_signals() {
    let dir = TempDir::new().unwrap();
    let xs: Vec<f64> = (0..=4000).map(|i| -20.0 + 0.01 * i as f64).collect();
    let zero: String = xs.iter().map(|x| format!("{x},0\n")).collect();
    let constant: String = xs.iter().map(|x| format!("{x},2.5\n")).collect();
    write(dir.path(), "zero.csv", &format!("x,f\n{zero}"));
    write(dir.path(), "const.csv", &constant);
    for (name, tol) in [("zero.csv", 0.0), ("const.csv", 1e-6)] {
        let cfg_path = write(
            dir.path(),
            "run.cfg",
            &format!("g = -1, 0, -2, 0, 1\nsignal = {name}\nmu = 0.5, 1, 1.5\ns = -2, 0, 2\n"),
        );
        let cfg = RunConfig::load(&cfg_path).unwrap();
        let out = cmd_cwt(&cfg).unwrap();
        assert!(out.warnings.is_empty());
        for row in rows(&out.csv) {
            assert!(row[2].abs() <= tol, "{name}: {row:?}");
        }
    }
}

#[test]
fn malformed_signals_report_lines() {
    let dir = TempDir::new().unwrap();
    for (text, line) in [("x,f\n0,1\n1,2\n0.5,3\n", 4), ("0,1\n1,oops\n", 2)] {
        write(dir.path(), "sig.csv", text);
        let cfg = write(
            dir.path(),
            "run.cfg",
            "g = 0.5, 0, -0.5\nsignal = sig.csv\nmu = 1\ns = 0\n",
        );
        match cmd_cwt(&RunConfig::load(&cfg).unwrap()) {
            Err(CliError::Signal { line: l, .. }) => assert_eq!(l, line),
            other => panic!("{other:?}"),
        }
        let out = mexhat(&["cwt", "--config", cfg.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2));
        assert!(String::from_utf8(out.stderr)
            .unwrap()
            .contains(&format!(":{line}:")));
    }
}

#[test]
fn narrow_signal_warns_on_stderr() {
    let dir = TempDir::new().unwrap();
    let sig: String = (0..=200)
        .map(|i| format!("{},1\n", -1.0 + 0.01 * i as f64))
        .collect();
    write(dir.path(), "sig.csv", &sig);
    let cfg = write(
        dir.path(),
        "run.cfg",
        "g = 0.5, 0, -0.5\nsignal = sig.csv\nmu = 1\ns = 0\n",
    );
    let out = mexhat(&["cwt", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stderr).unwrap().contains("warning"));
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .starts_with("mu,s,w\n1,0,"));
}

#[test]
fn validate_tiers() {
    let out = mexhat(&["validate", "--level", "quick"]);
    assert_eq!(out.status.code(), Some(0));
    let out = mexhat(&["validate", "--level", "full"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("two-route-equivalence"));
}

#[test]
fn full_tier_names_a_broken_weight_table() {
    let ctx = ValidationContext::with_weight_table(|n| [1.0, 1.0, 3.0, 16.0, 105.0][n.min(4)]);
    let report = run_validation(Level::Full, &ctx);
    assert!(!report.passed());
    let failed: Vec<&str> = report.failures().map(|r| r.name).collect();
    assert!(failed.contains(&"weight-table"));
    assert!(failed.contains(&"coherent-oracle"));
    assert!(report.render().contains("FAIL weight-table"));
}
