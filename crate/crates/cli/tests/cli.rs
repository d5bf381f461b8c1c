use std::process::{Command, Output};

use qecsim::qec::{QecCode, BIT_FLIP_DECODER, BIT_FLIP_ENCODER};
use qecsim::quantum::layout::block;
use qecsim::{CodeKind, Gate, QecScheme};
use qecsim_cli::{verify, Model, CSV_HEADER, EXIT_IO, EXIT_USAGE, EXIT_VERIFY_FAILED};

fn qecsim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qecsim")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn scheme_with_decoder(decoder: &[Gate]) -> QecScheme {
    QecScheme::new(
        QecCode::from_circuits(CodeKind::BitFlipCode, &BIT_FLIP_ENCODER, decoder).unwrap(),
        QecCode::from_circuits(CodeKind::PhaseFlipCode, &BIT_FLIP_ENCODER, decoder).unwrap(),
    )
    .unwrap()
}

#[test]
fn concurrence_sweep_has_two_rows_per_point() {
    let out = qecsim(&["sweep", "--case", "I", "--quantity", "concurrence", "--steps", "101", "--qec", "both"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(CSV_HEADER));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 202);
    for row in rows.iter().filter(|r| r[0] == "0") {
        assert_eq!(row[3], "concurrence");
        assert!((row[4].parse::<f64>().unwrap() - 1.0).abs() < 1e-12);
    }
    let ps: Vec<f64> = rows.iter().map(|r| r[0].parse().unwrap()).collect();
    assert!(ps.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn case_two_fidelity_bottoms_out_at_one_third() {
    let out = qecsim(&["sweep", "--case", "II", "--quantity", "fidelity", "--qec", "off"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let last: Vec<&str> = text.lines().last().unwrap().split(',').collect();
    assert_eq!(&last[..4], &["1.00000000000000", "II", "off", "fidelity"]);
    assert!((last[4].parse::<f64>().unwrap() - 1.0 / 3.0).abs() < 1e-12);
}

#[test]
fn output_is_deterministic() {
    let args = ["sweep", "--steps", "21"];
    assert_eq!(qecsim(&args).stdout, qecsim(&args).stdout);
    let json = ["sweep", "--steps", "11", "--output-format", "json"];
    assert_eq!(qecsim(&json).stdout, qecsim(&json).stdout);
}

#[test]
fn json_mirrors_csv() {
    let csv = stdout(&qecsim(&["sweep", "--steps", "5"]));
    let json: serde_json::Value = serde_json::from_slice(&qecsim(&["sweep", "--steps", "5", "--format", "json"]).stdout).unwrap();
    let rows = json.as_array().unwrap();
    assert_eq!(rows.len(), csv.lines().count() - 1);
    for (obj, line) in rows.iter().zip(csv.lines().skip(1)) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(obj["case"], fields[1]);
        assert_eq!(obj["qec"], fields[2]);
        assert_eq!(obj["quantity"], fields[3]);
        let sim = obj["simulated"].as_f64().unwrap();
        assert!((sim - fields[4].parse::<f64>().unwrap()).abs() <= 1e-14 * sim.abs().max(1.0));
    }
}

#[test]
fn writes_to_output_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curves.csv");
    let out = qecsim(&["sweep", "--steps", "3", "--output-path", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    // 3 points × 2 cases × 2 settings × 4 quantities
    assert_eq!(text.lines().count(), 1 + 48);
}

#[test]
fn unwritable_path_fails() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("out.csv");
    let out = qecsim(&["sweep", "--steps", "3", "--output-path", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(i32::from(EXIT_IO)));
    assert!(String::from_utf8_lossy(&out.stderr).contains("I/O error"));
}

#[test]
fn invalid_config_is_usage_error() {
    for args in [
        &["sweep", "--p-min", "0.8", "--p-max", "0.2"][..],
        &["sweep", "--p-max", "1.5"],
        &["sweep", "--steps", "0"],
        &["sweep", "--case", "III"],
        &["sweep", "--quantity", "entropy"],
        &["verify", "--tolerance", "-1"],
        &["frobnicate"],
    ] {
        assert_eq!(qecsim(args).status.code(), Some(i32::from(EXIT_USAGE)), "{args:?}");
    }
}

#[test]
fn verify_passes_on_correct_build() {
    let out = qecsim(&["verify"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    for q in ["concurrence", "bmax", "mutual_info", "fidelity"] {
        assert!(text.lines().any(|l| l.starts_with(q)), "{q} missing from table");
    }
    assert!(text.contains("PASS"));
}

#[test]
fn verify_detects_misplaced_toffoli() {
    // the Toffoli fires on (carrier, ancilla 1) and writes into ancilla 2,
    // so the carrier is never corrected
    let mut decoder = BIT_FLIP_DECODER;
    decoder[2] = Gate::Toffoli { controls: [block::CARRIER, block::ANCILLA_1], target: block::ANCILLA_2 };
    let report = verify(&Model::with_scheme(scheme_with_decoder(&decoder)), 1e-9).unwrap();
    assert_eq!(report.exit_code(), EXIT_VERIFY_FAILED);
    assert!(report.offending.iter().any(|r| r.qec == "on" && r.quantity == "concurrence"));
    assert!(report.offending.iter().all(|r| r.qec == "on"));
}

#[test]
fn control_order_of_toffoli_is_irrelevant() {
    let mut decoder = BIT_FLIP_DECODER;
    decoder[2] = Gate::Toffoli { controls: [block::ANCILLA_2, block::ANCILLA_1], target: block::CARRIER };
    let report = verify(&Model::with_scheme(scheme_with_decoder(&decoder)), 1e-9).unwrap();
    assert!(report.passed());
}

#[test]
fn verify_report_lists_failures() {
    let report = verify(&Model::standard(), 0.0).unwrap();
    let mut buf = Vec::new();
    report.write(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    if report.passed() {
        assert!(text.contains("PASS"));
    } else {
        assert!(text.contains("FAIL"));
        assert!(text.contains("case="));
    }
}
