use std::path::Path;
use std::process::{Command, Output};

use carleson::harness::{generate_counterexample, generate_radial, CounterexampleSpec};
use carleson_cli::document::{self, PointRecord, PointSetDocument};
use proptest::prelude::*;
use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_carleson-cli");

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("CARLESON_LOG")
        .output()
        .unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

fn two_points(dir: &TempDir) -> String {
    write(
        dir,
        "two.json",
        r#"{"schema_version":1,"label":"two","points":[{"re":0.0,"im":0.0},{"re":0.5,"im":0.0}]}"#,
    )
}

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![
        -1.0..1.0f64,
        any::<f64>().prop_filter("finite", |v| v.is_finite()),
        Just(-0.0),
        Just(f64::MIN_POSITIVE),
        Just(5e-324),
    ]
}

proptest! {
    #[test]
    fn documents_round_trip_bit_exactly(
        pts in prop::collection::vec((finite(), finite()), 0..20),
        label in prop::option::of("[a-z0-9 ]{0,12}"),
    ) {
        let doc = PointSetDocument {
            schema_version: 1,
            label,
            points: pts.iter().map(|&(re, im)| PointRecord { re, im }).collect(),
        };
        let back = PointSetDocument::parse(&doc.to_json()).unwrap();
        prop_assert_eq!(&back.label, &doc.label);
        prop_assert_eq!(back.points.len(), doc.points.len());
        for (a, b) in back.points.iter().zip(&doc.points) {
            prop_assert_eq!(a.re.to_bits(), b.re.to_bits());
            prop_assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }
}

#[test]
fn generated_sequences_survive_save_and_load() {
    let dir = TempDir::new().unwrap();
    let seq = generate_radial(0.7, 8).unwrap();
    let path = dir.path().join("r.json");
    document::save(&path, &seq).unwrap();
    assert_eq!(document::load(&path).unwrap(), seq);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let doc = write(
        &dir,
        "r6.json",
        &PointSetDocument::from_sequence(&generate_radial(0.5, 6).unwrap()).to_json(),
    );
    for cmd in [
        vec!["analyze", doc.as_str()],
        vec!["decompose", doc.as_str()],
        vec!["verify", doc.as_str()],
        vec!["field", doc.as_str(), "--which", "B1", "--grid-resolution", "48"],
        vec!["generate", "random", "--count", "10", "--seed", "9"],
    ] {
        let a = run(&cmd);
        let b = run(&cmd);
        assert!(a.status.success(), "{cmd:?}");
        assert_eq!(a.stdout, b.stdout, "{cmd:?}");
    }
}

#[test]
fn verify_exit_codes() {
    let dir = TempDir::new().unwrap();
    let two = two_points(&dir);
    let out = run(&["verify", &two]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["hypothesis_ok"], true);
    assert_eq!(report["c"].as_f64().unwrap(), 2.0);
    for key in [
        "eta",
        "step_a",
        "step_b",
        "step_c",
        "final",
        "carleson_direct",
        "fitted_a",
        "fitted_b",
        "delta",
    ] {
        assert!(report.get(key).is_some(), "missing {key}");
    }

    let spec = CounterexampleSpec {
        num_pairs: 4,
        gap: 1e-7,
        base_radial_ratio: 0.5,
    };
    let (seq, _) = generate_counterexample(&spec, 64).unwrap();
    let ce = dir.path().join("ce.json");
    document::save(&ce, &seq).unwrap();
    let out = run(&["verify", ce.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["hypothesis_ok"], false);
}

#[test]
fn invalid_input_exits_one_and_names_the_index() {
    let dir = TempDir::new().unwrap();
    let outside = write(
        &dir,
        "out.json",
        r#"{"schema_version":1,"points":[{"re":0.0,"im":0.0},{"re":0.1,"im":0.2},{"re":1.0,"im":0.0}]}"#,
    );
    let out = run(&["analyze", &outside]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("point 2"));

    let dup = write(
        &dir,
        "dup.json",
        r#"{"schema_version":1,"points":[{"re":0.1,"im":0.0},{"re":0.1,"im":0.0}]}"#,
    );
    let out = run(&["analyze", &dup]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("points 0 and 1"));

    for (name, text) in [
        ("empty.json", r#"{"schema_version":1,"points":[]}"#),
        ("version.json", r#"{"schema_version":2,"points":[{"re":0.0,"im":0.0}]}"#),
        ("garbage.json", "not json"),
    ] {
        let p = write(&dir, name, text);
        assert_eq!(run(&["analyze", &p]).status.code(), Some(1), "{name}");
    }
    assert_eq!(run(&["analyze", "/nonexistent/x.json"]).status.code(), Some(1));
}

#[test]
fn usage_errors_exit_64() {
    let dir = TempDir::new().unwrap();
    let two = two_points(&dir);
    assert_eq!(run(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(run(&[]).status.code(), Some(64));
    assert_eq!(run(&["interpolate", &two, "--target", "1"]).status.code(), Some(64));
    assert_eq!(
        run(&["interpolate", &two, "--target", "1", "--target", "a,b"])
            .status
            .code(),
        Some(64)
    );
    assert_eq!(
        run(&["analyze", &two, "--grid-resolution", "8"]).status.code(),
        Some(64)
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn numerical_faults_exit_two() {
    use carleson_cli::CliError;
    let fault = CliError::Core(carleson::Error::RecursionBreakdown { step: 1, modulus: 1.5 });
    assert_eq!(fault.exit_code(), 2);
    let domain = CliError::Core(carleson::Error::EmptyGrid { delta: 0.9 });
    assert_eq!(domain.exit_code(), 1);
}

#[test]
fn interpolate_reports_and_writes_boundary_csv() {
    let dir = TempDir::new().unwrap();
    let two = two_points(&dir);
    let csv = dir.path().join("b.csv");
    let out = run(&[
        "interpolate",
        &two,
        "--target",
        "0",
        "--target",
        "1,0",
        "--boundary-csv",
        csv.to_str().unwrap(),
        "--boundary-grid",
        "512",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((report["min_norm"].as_f64().unwrap() - 2.0).abs() < 1e-7);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("theta,re,im,modulus\n"));
    assert_eq!(text.lines().count(), 513);
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "cfg.json", r#"{"grid_resolution": 40, "seed": 3}"#);
    let by_file = run(&["generate", "random", "--count", "6", "--config", &cfg]);
    let by_flag = run(&["generate", "random", "--count", "6", "--seed", "3"]);
    let overridden = run(&["generate", "random", "--count", "6", "--config", &cfg, "--seed", "4"]);
    assert_eq!(by_file.stdout, by_flag.stdout);
    assert_ne!(by_file.stdout, overridden.stdout);

    let bad = write(&dir, "bad.json", r#"{"grid_resolutoin": 40}"#);
    assert_eq!(
        run(&["generate", "radial", "--count", "3", "--config", &bad])
            .status
            .code(),
        Some(64)
    );

    let out_path = dir.path().join("report.json");
    let two = two_points(&dir);
    let out = run(&["analyze", &two, "-o", out_path.to_str().unwrap()]);
    assert!(out.status.success() && out.stdout.is_empty());
    assert!(Path::new(&out_path).exists());
}

#[test]
fn field_and_counterexample_commands() {
    let dir = TempDir::new().unwrap();
    let one = write(
        &dir,
        "one.json",
        r#"{"schema_version":1,"points":[{"re":0.0,"im":0.0}]}"#,
    );
    let out = run(&["field", &one, "--grid-resolution", "33"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("x,y,log_modulus\n"));
    assert!(text.lines().any(|l| l.ends_with(",NaN")));

    let pts = dir.path().join("ce.json");
    let out = run(&[
        "counterexample",
        "--pairs",
        "2",
        "--gap",
        "0.01",
        "--points-out",
        pts.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report["summary"]["separation_constant"].as_f64().unwrap() <= 0.01 * (1.0 + 1e-9));
    assert_eq!(document::load(&pts).unwrap().len(), 4);

    let out = run(&["counterexample", "--sweep", "0.1,0.01"]);
    let rows: Vec<serde_json::Value> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rows.len(), 2);

    assert_eq!(run(&["counterexample", "--gap", "0.5"]).status.code(), Some(1));
}
