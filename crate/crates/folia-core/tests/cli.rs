//! End-to-end tests of the `folia` binary: exit codes, formats, tolerance
//! resolution, rescaling, and the JSON report's reproducibility.

use std::path::PathBuf;
use std::process::{Command, Output};

use folia_core::tensor::FrameTensor;

fn folia() -> Command {
    Command::new(env!("CARGO_BIN_EXE_folia"))
}

fn run(args: &[&str]) -> Output {
    folia().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

fn temp_path(name: &str) -> PathBuf {
    let mut path = std::env::temp_dir();
    path.push(format!("folia-test-{}-{name}", std::process::id()));
    path
}

fn write_example(name: &str, extra: &[&str]) -> PathBuf {
    let path = temp_path(&format!("{name}.json"));
    let mut args = vec!["example", name];
    args.extend_from_slice(extra);
    args.push("--emit");
    let path_str = path.to_str().unwrap().to_string();
    args.push(&path_str);
    let output = run(&args);
    assert_eq!(output.status.code(), Some(0), "example generation failed");
    path
}

#[test]
fn report_carriere_text() {
    let path = write_example("carriere", &["--trace", "3"]);
    let output = run(&["report", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    assert!(text.contains("verdict: nontaut"));
    assert!(text.contains("eigenvalue: 1.85251856462e0"));
    assert!(text.contains("transverse Einstein: yes"));
    assert!(text.contains("not critical"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn report_heisenberg_taut() {
    let path = write_example("heisenberg", &[]);
    let output = run(&["report", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(output.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(value["report"]["verdict"], "taut");
    assert_eq!(value["report"]["critical"], true);
}

#[test]
fn report_hrw7_exit_zero() {
    let path = write_example("hrw7", &["--coshk", "1.5", "--n1", "1.0", "--n2", "1.0"]);
    let output = run(&["report", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(output.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    let mu = value["report"]["jacobi_eigenvalue"].as_f64().unwrap();
    let k = (1.5f64).acosh();
    assert!((mu - 4.0 * k * k).abs() < 1e-9);
}

#[test]
fn check_verb_exit_codes() {
    let path = write_example("carriere", &[]);
    let output = run(&["check", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout(&output).starts_with("ok:"));

    // Same algebra with leaf {3} violates the Riemannian condition.
    let text = std::fs::read_to_string(&path).unwrap();
    let bad = text.replace("\"leaf\": [\n    1\n  ]", "\"leaf\": [3]");
    assert_ne!(text, bad, "leaf replacement must apply");
    let bad_path = temp_path("bad-leaf.json");
    std::fs::write(&bad_path, bad).unwrap();
    let output = run(&["check", bad_path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stdout(&output).contains("not Riemannian"));
}

#[test]
fn invalid_leaf_report_exits_one() {
    let path = write_example("carriere", &[]);
    let text = std::fs::read_to_string(&path).unwrap();
    let bad = text.replace("\"leaf\": [\n    1\n  ]", "\"leaf\": [3]");
    let bad_path = temp_path("bad-leaf-report.json");
    std::fs::write(&bad_path, bad).unwrap();
    let output = run(&["report", bad_path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(output.status.code(), Some(1));
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(value["error"]["kind"], "NotRiemannian");
    assert_eq!(value["exit_code"], 1);
}

#[test]
fn parse_failures_exit_three() {
    let path = temp_path("garbage.json");
    std::fs::write(&path, "{definitely not json").unwrap();
    let output = run(&["report", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(3));

    let output = run(&["report", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(output.status.code(), Some(3));
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(value["error"]["kind"], "ParseError");

    let output = run(&["report", "/nonexistent/folia-input.json"]);
    assert_eq!(output.status.code(), Some(3));

    let output = run(&["example", "carriere", "--trace", "2"]);
    assert_eq!(output.status.code(), Some(3));
}

#[test]
fn rescale_quarters_scalar_curvature() {
    let path = write_example("carriere", &[]);
    let rescaled_path = temp_path("carriere-rescaled.json");
    let output = run(&[
        "rescale",
        path.to_str().unwrap(),
        "--factor",
        "4",
        "--emit",
        rescaled_path.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(0));

    let report = |p: &PathBuf| -> serde_json::Value {
        let output = run(&["report", p.to_str().unwrap(), "--format", "json"]);
        assert_eq!(output.status.code(), Some(0));
        serde_json::from_str(&stdout(&output)).unwrap()
    };
    let before = report(&path)["geometry"]["scalar_q"].as_f64().unwrap();
    let after = report(&rescaled_path)["geometry"]["scalar_q"].as_f64().unwrap();
    assert!((after - before / 4.0).abs() < 1e-12);
}

#[test]
fn tolerance_resolution_order() {
    let path = write_example("carriere", &[]);

    // Environment default applies when neither flag nor document set one.
    let output = folia()
        .args(["report", path.to_str().unwrap(), "--format", "json"])
        .env("FOLIA_TOLERANCE", "1e-6")
        .output()
        .unwrap();
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(value["tolerance"].as_f64().unwrap(), 1e-6);

    // The flag wins over the environment.
    let output = folia()
        .args([
            "report",
            path.to_str().unwrap(),
            "--format",
            "json",
            "--tolerance",
            "1e-7",
        ])
        .env("FOLIA_TOLERANCE", "1e-6")
        .output()
        .unwrap();
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(value["tolerance"].as_f64().unwrap(), 1e-7);

    // A malformed environment value is a hard error.
    let output = folia()
        .args(["report", path.to_str().unwrap()])
        .env("FOLIA_TOLERANCE", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(3));
}

/// Text and JSON formats agree on every scalar to the 12 printed
/// significant digits.
#[test]
fn text_and_json_agree_to_twelve_digits() {
    let path = write_example("carriere", &[]);
    let text = stdout(&run(&["report", path.to_str().unwrap()]));
    let json: serde_json::Value = serde_json::from_str(&stdout(&run(&[
        "report",
        path.to_str().unwrap(),
        "--format",
        "json",
    ])))
    .unwrap();

    let twelve = |x: f64| format!("{x:.11e}");

    let scalar_q = json["geometry"]["scalar_q"].as_f64().unwrap();
    assert!(text.contains(&format!("transverse scalar curvature S_Q: {}", twelve(scalar_q))));

    let mu = json["report"]["jacobi_eigenvalue"].as_f64().unwrap();
    assert!(text.contains(&format!("eigenvalue: {}", twelve(mu))));

    let kappa = json["geometry"]["kappa_b"]["entries"][1].as_f64().unwrap();
    assert!(text.contains(&twelve(kappa)));

    let critical = json["report"]["critical_residual_norm"].as_f64().unwrap();
    assert!(text.contains(&format!("critical metric residual: {}", twelve(critical))));

    for (_, residual) in json["report"]["identity_residuals"].as_object().unwrap() {
        assert!(text.contains(&twelve(residual.as_f64().unwrap())));
    }
}

/// The JSON report reproduces bit-for-bit: rerunning the pipeline on the
/// embedded input yields the identical document, and residuals recomputed
/// from the emitted tensors equal the reported values exactly.
#[test]
fn json_report_roundtrips_bit_for_bit() {
    let path = write_example("hrw7", &[]);
    let first = stdout(&run(&["report", path.to_str().unwrap(), "--format", "json"]));
    let value: serde_json::Value = serde_json::from_str(&first).unwrap();

    // Re-emit the embedded input and rerun: byte-identical report.
    let embedded = temp_path("embedded-input.json");
    std::fs::write(
        &embedded,
        serde_json::to_string_pretty(&value["input"]).unwrap(),
    )
    .unwrap();
    let second = stdout(&run(&["report", embedded.to_str().unwrap(), "--format", "json"]));
    assert_eq!(first, second, "report is not reproducible");

    // Recompute the critical residual and trace from the emitted tensors;
    // identical op order must give bitwise-equal values.
    let parse_tensor = |v: &serde_json::Value| -> FrameTensor {
        let indices: Vec<usize> = v["indices"]
            .as_array()
            .unwrap()
            .iter()
            .map(|i| i.as_u64().unwrap() as usize - 1)
            .collect();
        let rank = v["rank"].as_u64().unwrap() as usize;
        fn flatten(node: &serde_json::Value, out: &mut Vec<f64>) {
            match node {
                serde_json::Value::Array(items) => items.iter().for_each(|n| flatten(n, out)),
                other => out.push(other.as_f64().unwrap()),
            }
        }
        let mut entries = Vec::new();
        flatten(&v["entries"], &mut entries);
        FrameTensor::from_entries(&indices, rank, entries)
    };

    let ricci = parse_tensor(&value["geometry"]["ricci_q"]);
    let t_kappa = parse_tensor(&value["geometry"]["t_kappa"]);
    let scalar_q = value["geometry"]["scalar_q"].as_f64().unwrap();
    let q = ricci.dim() as f64;
    let lambda = scalar_q / q;
    let metric = FrameTensor::identity(ricci.indices());
    let recomputed = ricci.add(&t_kappa).sub(&metric.scale(lambda)).frobenius_norm();
    let reported = value["report"]["critical_residual_norm"].as_f64().unwrap();
    assert_eq!(recomputed.to_bits(), reported.to_bits());

    let trace_residual = t_kappa.trace().abs();
    let reported_trace = value["report"]["identity_residuals"]["t_kappa_trace"]
        .as_f64()
        .unwrap();
    assert_eq!(trace_residual.to_bits(), reported_trace.to_bits());
}

/// A valid foliation on a nonunimodular algebra violates the standing
/// coclosedness assumption; the report must fail with exit code 2 rather
/// than misclassify.
#[test]
fn nonunimodular_input_exits_two() {
    let path = temp_path("hyperbolic-plane.json");
    std::fs::write(
        &path,
        r#"{"dimension": 2, "brackets": [{"i": 1, "j": 2, "k": 1, "c": 1.0}], "leaf": [1]}"#,
    )
    .unwrap();
    let output = run(&["report", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(output.status.code(), Some(2));
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(value["error"]["kind"], "MeanCurvatureNotCoclosed");
}

#[test]
fn example_prints_to_stdout_without_emit() {
    let output = run(&["example", "heisenberg"]);
    assert_eq!(output.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(doc["dimension"], 3);
    assert_eq!(doc["leaf"], serde_json::json!([3]));
}
