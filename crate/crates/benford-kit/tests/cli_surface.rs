//! Integration tests for the command-line surface: exit-code contract,
//! deterministic output, file formats, and JSON schema conformance.

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_benford-kit")
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn work_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("benford-kit-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

// ---------------------------------------------------------------------------
// Minimal JSON Schema checker (the subset the shipped schemas use:
// type, enum, properties, required, additionalProperties, items).
// ---------------------------------------------------------------------------

fn validate(schema: &Value, value: &Value, path: &str, errors: &mut Vec<String>) {
    if let Some(allowed) = schema.get("enum").and_then(Value::as_array) {
        if !allowed.contains(value) {
            errors.push(format!("{path}: {value} not in enum {allowed:?}"));
        }
        return;
    }
    if let Some(ty) = schema.get("type").and_then(Value::as_str) {
        let ok = match ty {
            "object" => value.is_object(),
            "array" => value.is_array(),
            "string" => value.is_string(),
            "number" => value.is_number(),
            "integer" => value.as_i64().is_some() || value.as_u64().is_some(),
            "boolean" => value.is_boolean(),
            other => {
                errors.push(format!("{path}: unsupported schema type {other}"));
                return;
            }
        };
        if !ok {
            errors.push(format!("{path}: expected {ty}, got {value}"));
            return;
        }
    }
    if let Some(object) = value.as_object() {
        if let Some(required) = schema.get("required").and_then(Value::as_array) {
            for key in required.iter().filter_map(Value::as_str) {
                if !object.contains_key(key) {
                    errors.push(format!("{path}: missing required key {key}"));
                }
            }
        }
        let properties = schema.get("properties").and_then(Value::as_object);
        let additional = schema
            .get("additionalProperties")
            .and_then(Value::as_bool)
            .unwrap_or(true);
        for (key, sub) in object {
            match properties.and_then(|p| p.get(key)) {
                Some(sub_schema) => validate(sub_schema, sub, &format!("{path}.{key}"), errors),
                None if !additional => {
                    errors.push(format!("{path}: unexpected key {key}"));
                }
                None => {}
            }
        }
    }
    if let (Some(items), Some(array)) = (schema.get("items"), value.as_array()) {
        for (i, item) in array.iter().enumerate() {
            validate(items, item, &format!("{path}[{i}]"), errors);
        }
    }
}

fn assert_matches_schema(schema_path: &Path, text: &str) {
    let schema: Value =
        serde_json::from_str(&std::fs::read_to_string(schema_path).unwrap()).unwrap();
    let value: Value = serde_json::from_str(text).unwrap();
    let mut errors = Vec::new();
    validate(&schema, &value, "$", &mut errors);
    assert!(errors.is_empty(), "schema violations: {errors:#?}");
}

fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("schema")
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

#[test]
fn eval_benford_exact_conforms() {
    let (code, stdout, _) = run(&["eval", "benford-exact", "--format", "json"]);
    assert_eq!(code, 0);
    assert_matches_schema(&schema_dir().join("eval_report.schema.json"), &stdout);
    let report: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["verdict"], "CONFORMS");
    for row in report["digits"].as_array().unwrap() {
        assert!(row["er"].as_f64().unwrap().abs() <= 1e-9);
    }
}

#[test]
fn eval_uniform_violates_with_exit_3() {
    let (code, stdout, _) = run(&["eval", "uniform:lo=1,hi=2", "--format", "json"]);
    assert_eq!(code, 3);
    let report: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["verdict"], "VIOLATES");
    let er1 = report["digits"][0]["er"].as_f64().unwrap();
    assert!((er1 - 0.6989700043360187).abs() < 1e-9);
}

#[test]
fn eval_exponential_conforms_within_paper_bound() {
    let (code, stdout, _) = run(&[
        "eval",
        "exponential:λ=1",
        "--format",
        "json",
        "--tol",
        "1e-8",
    ]);
    assert_eq!(code, 0);
    let report: Value = serde_json::from_str(&stdout).unwrap();
    assert!(report["max_abs_er"].as_f64().unwrap() <= 0.03);
}

#[test]
fn eval_rejects_bad_spec_with_exit_2() {
    let (code, _, stderr) = run(&["eval", "warp-drive:q=1"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("error"));
    let (code, _, _) = run(&["eval", "exponential:rate=-3"]);
    assert_eq!(code, 2);
}

#[test]
fn eval_table_and_csv_formats() {
    let (code, table, _) = run(&["eval", "benford-exact"]);
    assert_eq!(code, 0);
    assert!(table.contains("verdict = CONFORMS"));
    let (code, csv, _) = run(&["eval", "benford-exact", "--format", "csv"]);
    assert_eq!(code, 0);
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "digit,probability,error_bound,reference,er"
    );
    assert_eq!(csv.lines().count(), 10);
}

#[test]
fn eval_other_bases() {
    let (code, stdout, _) = run(&["eval", "benford-exact", "--base", "8", "--format", "json"]);
    assert_eq!(
        code, 3,
        "a base-10 reference fixture is not base-8 conforming"
    );
    let report: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["digits"].as_array().unwrap().len(), 7);
}

// ---------------------------------------------------------------------------
// scan
// ---------------------------------------------------------------------------

#[test]
fn scan_row_counts_and_envelope() {
    let dir = work_dir("scan");
    let out = dir.join("scan.csv");
    let (code, _, _) = run(&["scan", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "d,lambda,er");
    assert_eq!(lines.len(), 1 + 9 * 256 + 9);
    let mut summaries = 0;
    for line in &lines[1..] {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 3);
        if fields[1] == "max" {
            summaries += 1;
            let max_abs: f64 = fields[2].parse().unwrap();
            assert!(max_abs <= 0.03, "digit {} envelope {max_abs}", fields[0]);
        }
    }
    assert_eq!(summaries, 9);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn scan_is_byte_deterministic() {
    let dir = work_dir("scan-det");
    let a = dir.join("a.csv");
    let b = dir.join("b.csv");
    for out in [&a, &b] {
        let (code, _, _) = run(&["scan", "--points", "32", "--out", out.to_str().unwrap()]);
        assert_eq!(code, 0);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    std::fs::remove_dir_all(&dir).ok();
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

#[test]
fn analyze_newline_numbers_and_csv_column() {
    let dir = work_dir("analyze");
    let plain = dir.join("values.txt");
    std::fs::write(&plain, "1.2\n13\n175\n2.4\n0\n-9\n").unwrap();
    let (code, stdout, _) = run(&["analyze", plain.to_str().unwrap(), "--format", "json"]);
    let report: Value = serde_json::from_str(&stdout).unwrap();
    assert_matches_schema(&schema_dir().join("analyze_report.schema.json"), &stdout);
    assert_eq!(report["total"], 4);
    assert_eq!(report["excluded"], 2);
    assert!(code == 0 || code == 3);

    let csv = dir.join("ledger.csv");
    std::fs::write(&csv, "id,amount\n1,1.2\n2,13\n3,175\n4,2.4\n").unwrap();
    let (_, csv_out, _) = run(&[
        "analyze",
        csv.to_str().unwrap(),
        "--column",
        "amount",
        "--format",
        "csv",
    ]);
    assert_eq!(
        csv_out.lines().next().unwrap(),
        "pattern,observed,observed_freq,expected_freq"
    );
    let (_, by_name, _) = run(&[
        "analyze",
        csv.to_str().unwrap(),
        "--column",
        "amount",
        "--format",
        "json",
    ]);
    let by_name: Value = serde_json::from_str(&by_name).unwrap();
    assert_eq!(by_name["total"], 4);
    let (_, by_index, _) = run(&[
        "analyze",
        csv.to_str().unwrap(),
        "--column",
        "1",
        "--format",
        "json",
    ]);
    let by_index: Value = serde_json::from_str(&by_index).unwrap();
    assert_eq!(by_index["rows"], by_name["rows"]);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn analyze_empty_file_is_exit_4() {
    let dir = work_dir("analyze-empty");
    let empty = dir.join("empty.txt");
    std::fs::write(&empty, "").unwrap();
    let (code, _, stderr) = run(&["analyze", empty.to_str().unwrap()]);
    assert_eq!(code, 4);
    assert!(stderr.contains("empty dataset"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn analyze_missing_file_is_exit_2() {
    let (code, _, _) = run(&["analyze", "/nonexistent/benford-input.txt"]);
    assert_eq!(code, 2);
}

#[test]
fn analyze_integers_violate() {
    let dir = work_dir("analyze-int");
    let path = dir.join("integers.txt");
    let mut text = String::new();
    for i in 1..=9999 {
        text.push_str(&format!("{i}\n"));
    }
    std::fs::write(&path, text).unwrap();
    let (code, stdout, _) = run(&["analyze", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code, 3);
    let report: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["verdict"], "VIOLATES");
    // every first digit appears exactly 1111 times in 1..=9999
    for row in report["rows"].as_array().unwrap() {
        assert_eq!(row["observed"], 1111);
    }
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn analyze_two_digit_patterns() {
    let dir = work_dir("analyze-k2");
    let path = dir.join("values.txt");
    let mut text = String::new();
    for i in 0..2000 {
        text.push_str(&format!("{}\n", 10.0 + (i as f64) * 0.045));
    }
    std::fs::write(&path, text).unwrap();
    let (code, stdout, _) = run(&[
        "analyze",
        path.to_str().unwrap(),
        "--digits",
        "2",
        "--format",
        "json",
    ]);
    assert!(code == 0 || code == 3);
    let report: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["dof"], 89);
    assert_eq!(report["rows"].as_array().unwrap().len(), 90);
    std::fs::remove_dir_all(&dir).ok();
}

// ---------------------------------------------------------------------------
// generate
// ---------------------------------------------------------------------------

#[test]
fn generate_zero_count_writes_empty_file() {
    let dir = work_dir("gen-zero");
    let out = dir.join("empty.txt");
    let (code, _, _) = run(&[
        "generate",
        "benford-exact",
        "-n",
        "0",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(std::fs::read(&out).unwrap().len(), 0);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn generate_same_seed_is_byte_identical() {
    let dir = work_dir("gen-det");
    let a = dir.join("a.txt");
    let b = dir.join("b.txt");
    for out in [&a, &b] {
        let (code, _, _) = run(&[
            "generate",
            "exponential:rate=1",
            "-n",
            "5000",
            "--seed",
            "7",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn generate_round_trips_through_analyze() {
    // text round trip must preserve classification: the analyzed first-digit
    // counts equal the counts over the in-memory samples
    let dir = work_dir("gen-rt");
    let out = dir.join("samples.txt");
    let (code, _, _) = run(&[
        "generate",
        "benford-exact",
        "-n",
        "20000",
        "--seed",
        "3",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let (code, stdout, _) = run(&["analyze", out.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code, 0);
    let report: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["total"], 20000);

    use benford_kit::density::{BenfordExact, Density};
    use benford_kit::empirical::count_digits;
    let samples = BenfordExact::new().sample(20000, 3).unwrap();
    let counts = count_digits(&samples, 10, 1).unwrap();
    for row in report["rows"].as_array().unwrap() {
        let d = row["pattern"][0].as_u64().unwrap() as u32;
        assert_eq!(row["observed"].as_u64().unwrap(), counts.get(&[d]));
    }
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn generate_unsupported_sampler_is_exit_2() {
    let dir = work_dir("gen-tab");
    // tabulated densities sample fine; an unknown density is the parse-error
    // path, and a zero-mass region is a domain error: both exit 2
    let (code, _, _) = run(&["generate", "warp-drive", "-n", "5"]);
    assert_eq!(code, 2);
    std::fs::remove_dir_all(&dir).ok();
}

// ---------------------------------------------------------------------------
// file-backed densities
// ---------------------------------------------------------------------------

#[test]
fn tabulated_and_mixture_densities_from_files() {
    let dir = work_dir("files");
    let table = dir.join("density.txt");
    std::fs::write(&table, "# x pdf\n1 0.0\n2 2.0\n").unwrap();
    let (code, stdout, _) = run(&[
        "eval",
        &format!("tabulated:file={}", table.display()),
        "--format",
        "json",
    ]);
    assert_eq!(code, 3, "a narrow triangle density is non-conforming");
    let report: Value = serde_json::from_str(&stdout).unwrap();
    let p1 = report["digits"][0]["probability"].as_f64().unwrap();
    assert!((p1 - 1.0).abs() < 1e-9, "triangle sits inside [1,2): {p1}");

    let mixture = dir.join("mixture.txt");
    std::fs::write(&mixture, "0.5 1.0\n0.5 10.0\n").unwrap();
    let (code, _, _) = run(&[
        "eval",
        &format!("mixture:file={}", mixture.display()),
        "--tol",
        "1e-8",
    ]);
    assert_eq!(
        code, 0,
        "exponential mixtures conform at the default threshold"
    );
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn eval_unreachable_tolerance_is_exit_4() {
    let (code, _, stderr) = run(&["eval", "truncated-normal:mean=50,sd=10", "--tol", "1e-16"]);
    assert_eq!(code, 4);
    assert!(stderr.contains("tolerance not met"));
    assert!(stderr.contains("achieved"));
}

#[test]
fn thread_cap_does_not_change_output() {
    let dir = work_dir("threads");
    let capped = dir.join("capped.json");
    let free = dir.join("free.json");
    let out = Command::new(bin())
        .args([
            "eval",
            "exponential:rate=1",
            "--tol",
            "1e-8",
            "--format",
            "json",
            "--out",
        ])
        .arg(&capped)
        .env("BENFORD_KIT_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = Command::new(bin())
        .args([
            "eval",
            "exponential:rate=1",
            "--tol",
            "1e-8",
            "--format",
            "json",
            "--out",
        ])
        .arg(&free)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        std::fs::read(&capped).unwrap(),
        std::fs::read(&free).unwrap()
    );
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn help_and_version_exit_zero() {
    let (code, stdout, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("eval") && stdout.contains("analyze"));
    let (code, _, _) = run(&["--version"]);
    assert_eq!(code, 0);
    let (code, _, _) = run(&["no-such-command"]);
    assert_eq!(code, 2);
}
