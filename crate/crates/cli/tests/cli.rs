//! End-to-end runs of the `slicebound` binary: outputs and the exit-code contract.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use approx::assert_relative_eq;
use proptest::prelude::*;
use serde_json::Value;
use slicebound_bounds::BoundReport;
use slicebound_cli::output::fmt_f64;
use tempfile::TempDir;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_slicebound"));
    cmd.env_remove("SLICEBOUND_SEED");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}); stderr: {}",
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn construct(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let mut full = vec!["construct"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--output", path.to_str().unwrap()]);
    let out = run(&full);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    path
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn csv_rows(bytes: &[u8]) -> (Vec<String>, Vec<Vec<String>>) {
    let mut reader = csv::Reader::from_reader(bytes);
    let header = reader.headers().unwrap().iter().map(String::from).collect();
    let rows = reader
        .records()
        .map(|r| r.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

fn column(header: &[String], name: &str) -> usize {
    header.iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"))
}

fn cell(row: &[String], idx: usize) -> Option<f64> {
    let s = &row[idx];
    (!s.is_empty()).then(|| s.parse().unwrap())
}

#[test]
fn hadamard_construct_then_verify() {
    let dir = TempDir::new().unwrap();
    let fixture = construct(dir.path(), "h.json", &["hadamard", "--k", "2", "--n", "3"]);
    let out = run(&[
        "verify",
        "--input",
        fixture.to_str().unwrap(),
        "--oracle",
        "both",
        "--seed",
        "11",
        "--samples",
        "400000",
        "--bounds",
        "symmetric_case1,ab_old",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v = stdout_json(&out);
    let exact = v["volume"]["exact"].as_f64().unwrap();
    assert_relative_eq!(exact, 6.0, max_relative = 1e-9);
    let mean = v["volume"]["mc"]["mean"].as_f64().unwrap();
    let se = v["volume"]["mc"]["std_error"].as_f64().unwrap();
    assert!((mean - 6.0).abs() <= 3.0 * se, "mc {mean} ± {se}");
    assert_eq!(v["volume"]["mc_agrees_with_exact"], Value::Bool(true));
    let report: BoundReport = serde_json::from_value(v["report"].clone()).unwrap();
    assert_relative_eq!(
        report.value("symmetric_case1".parse().unwrap()).unwrap(),
        6.0,
        max_relative = 1e-12
    );
    assert_eq!(v["consistent"], Value::Bool(true));
}

#[test]
fn bound_all_on_cube_reports_mean_width() {
    let dir = TempDir::new().unwrap();
    for k in 1..=3usize {
        let fixture = construct(dir.path(), "c.json", &["cube", "--n", "4", "--k", &k.to_string()]);
        let out = run(&["bound", "--input", fixture.to_str().unwrap()]);
        assert_eq!(code(&out), 0, "{}", stderr(&out));
        let v = stdout_json(&out);
        assert_relative_eq!(v["values"]["mean_width"].as_f64().unwrap(), 2.0 * k as f64, max_relative = 1e-12);
        assert_relative_eq!(
            v["values"]["symmetric_case1"].as_f64().unwrap(),
            2f64.powi(k as i32),
            max_relative = 1e-12
        );
        // The K_1 bounds need a K_p body and are listed as skipped.
        let skipped: Vec<&str> = v["report"]["skipped"]
            .as_array()
            .unwrap()
            .iter()
            .map(|s| s["name"].as_str().unwrap())
            .collect();
        assert!(skipped.contains(&"k1_upper"));
    }
}

#[test]
fn bound_on_kp_body_via_flags() {
    let dir = TempDir::new().unwrap();
    let fixture = construct(dir.path(), "e.json", &["standard-basis", "--n", "4", "--k", "2"]);
    let out = run(&["bound", "--input", fixture.to_str().unwrap(), "--p", "2", "--bounds", "kp_upper"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v = stdout_json(&out);
    assert_eq!(v["body"], "kp");
    assert_relative_eq!(v["values"]["kp_upper"].as_f64().unwrap(), PI, max_relative = 1e-12);
}

#[test]
fn parseval_on_diagonal_cube_sections() {
    let dir = TempDir::new().unwrap();
    // {e_j} with weights 1: the cube [-1, 1]^n, cut by diagonal subspaces.
    let cases = [
        (r#"{"dim":2,"vectors":[[1,0],[0,1]],"weights":[1,1]}"#, r#"[[1,1]]"#),
        (r#"{"dim":3,"vectors":[[1,0,0],[0,1,0],[0,0,1]],"weights":[1,1,1]}"#, r#"[[1,1,1]]"#),
        (
            r#"{"dim":3,"vectors":[[1,0,0],[0,1,0],[0,0,1]],"weights":[1,1,1]}"#,
            r#"{"orthogonal_to":[[1,1,1]]}"#,
        ),
    ];
    for (decomp, subspace) in cases {
        let input = write(dir.path(), "d.json", decomp);
        let out = run(&["verify", "parseval", "--input", input.to_str().unwrap(), "--subspace", subspace]);
        assert_eq!(code(&out), 0, "{}", stderr(&out));
        let v = stdout_json(&out);
        assert_eq!(v["status"], "agrees", "{v}");
        assert!(v["discrepancy"].as_f64().unwrap() <= 1e-6);
        assert!(v["check"]["gates"].as_array().unwrap().iter().all(|g| g["satisfied"] == true));
    }
}

#[test]
fn mean_width_verification_on_full_cube() {
    let dir = TempDir::new().unwrap();
    let fixture = construct(dir.path(), "c.json", &["cube", "--n", "3"]);
    let out = run(&["verify", "mean-width", "--input", fixture.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v = stdout_json(&out);
    assert!((v["mean_width"].as_f64().unwrap() - 6.0).abs() <= 1e-3);
    assert_eq!(v["consistent"], true);
}

#[test]
fn sweep_cross_polytope_k1_chain() {
    let out = run(&[
        "sweep",
        "--family",
        "cross-polytope",
        "--n",
        "4",
        "--k",
        "2",
        "--count",
        "100",
        "--seed",
        "5",
        "--samples",
        "2000",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let (header, rows) = csv_rows(&out.stdout);
    assert_eq!(rows.len(), 100);
    let upper = column(&header, "k1_upper");
    let mid = column(&header, "k1_intermediate");
    for (i, row) in rows.iter().enumerate() {
        assert_eq!(row[0], i.to_string(), "rows are ordered by index");
        let (m, u) = (cell(row, mid).unwrap(), cell(row, upper).unwrap());
        assert!(m <= u * (1.0 + 1e-12), "row {i}: {m} > {u}");
    }
}

#[test]
fn sweep_profiles_karamata() {
    let out = run(&[
        "sweep", "--family", "profiles", "--k", "3", "--m0", "5", "--count", "100", "--seed", "9",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let (header, rows) = csv_rows(&out.stdout);
    assert_eq!(rows.len(), 100);
    let case1 = column(&header, "symmetric_case1");
    let old = column(&header, "ab_old");
    for row in &rows {
        let (c, a) = (cell(row, case1).unwrap(), cell(row, old).unwrap());
        assert!(c <= a * (1.0 + 1e-12), "{c} > {a}");
    }
}

#[test]
fn empty_sweep_is_header_only() {
    let out = run(&["sweep", "--family", "cube", "--n", "3", "--k", "2", "--count", "0", "--seed", "1"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1);
    assert!(text.starts_with("row,config_digest,body,n,k,m0,symmetric_case1,"));
}

#[test]
fn sweep_is_deterministic() {
    let args = [
        "sweep", "--family", "cube", "--n", "4", "--k", "2", "--count", "12", "--seed", "77", "--samples", "5000",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0, "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn seed_falls_back_to_environment() {
    let base = ["sweep", "--family", "cube", "--n", "3", "--k", "2", "--count", "3", "--samples", "2000"];
    let missing = run(&base);
    assert_eq!(code(&missing), 1);
    assert!(stderr(&missing).contains("SLICEBOUND_SEED"));
    let from_env = bin().args(base).env("SLICEBOUND_SEED", "42").output().unwrap();
    let mut explicit = base.to_vec();
    explicit.extend(["--seed", "42"]);
    let from_flag = run(&explicit);
    assert_eq!(code(&from_env), 0);
    assert_eq!(from_env.stdout, from_flag.stdout);
}

#[test]
fn too_few_samples_is_structural() {
    let dir = TempDir::new().unwrap();
    let fixture = construct(dir.path(), "c.json", &["cube", "--n", "2"]);
    let out = run(&["verify", "--input", fixture.to_str().unwrap(), "--seed", "1", "--samples", "999"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("--samples"));
    // Exact-only verification needs neither.
    let out = run(&["verify", "--input", fixture.to_str().unwrap(), "--oracle", "exact"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
}

#[test]
fn malformed_json_names_the_field() {
    let dir = TempDir::new().unwrap();
    let missing = write(dir.path(), "m.json", r#"{"decomposition":{"dim":2,"vectors":[[1,0],[0,1]]}}"#);
    let out = run(&["validate", "--input", missing.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("weights"), "{}", stderr(&out));
    let typed = write(dir.path(), "t.json", r#"{"dim":2,"vectors":[[1,0],[0,1]],"weights":["a",1]}"#);
    let out = run(&["validate", "--input", typed.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("weights"), "{}", stderr(&out));
    let syntax = write(dir.path(), "s.json", "{");
    assert_eq!(code(&run(&["validate", "--input", syntax.to_str().unwrap()])), 1);
    let absent = run(&["validate", "--input", dir.path().join("nope.json").to_str().unwrap()]);
    assert_eq!(code(&absent), 1);
}

#[test]
fn unknown_bound_lists_valid_names() {
    let dir = TempDir::new().unwrap();
    let fixture = construct(dir.path(), "c.json", &["cube", "--n", "2"]);
    let out = run(&["bound", "--input", fixture.to_str().unwrap(), "--bounds", "case3"]);
    assert_eq!(code(&out), 1);
    let err = stderr(&out);
    assert!(err.contains("case3"));
    for name in ["symmetric_case1", "k1_upper", "nonsym_hyperplane"] {
        assert!(err.contains(name), "{err}");
    }
}

#[test]
fn invalid_decomposition_exits_one_with_report() {
    let dir = TempDir::new().unwrap();
    let input = write(dir.path(), "b.json", r#"{"dim":2,"vectors":[[1,0],[0,1]],"weights":[1,0.5]}"#);
    let out = run(&["validate", "--input", input.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout_json(&out)["valid"], false);
}

#[test]
fn gate_failure_exits_two_and_force_still_emits() {
    let dir = TempDir::new().unwrap();
    let fixture = construct(dir.path(), "c.json", &["cube", "--n", "3"]);
    let base = [
        "bound",
        "--input",
        fixture.to_str().unwrap(),
        "--subspace",
        "[[1,1,1]]",
        "--bounds",
        "symmetric_case1",
    ];
    let out = run(&base);
    assert_eq!(code(&out), 2);
    let v = stdout_json(&out);
    assert_eq!(v["values"]["symmetric_case1"], Value::Null);
    assert_eq!(v["report"]["entries"][0]["gate"]["satisfied"], false);

    let mut forced = base.to_vec();
    forced.push("--force");
    let out = run(&forced);
    assert_eq!(code(&out), 2);
    let v = stdout_json(&out);
    assert!(v["values"]["symmetric_case1"].as_f64().unwrap() > 0.0);
    assert_eq!(v["report"]["entries"][0]["forced"], true);

    // `all` reports failed hypotheses without failing the run.
    let out = run(&["bound", "--input", fixture.to_str().unwrap(), "--subspace", "[[1,1,1]]"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
}

#[test]
fn parseval_on_saturated_coordinate_section() {
    let dir = TempDir::new().unwrap();
    // Every projected weight is 1, so there is no complement and the rhs is a plain product.
    let input = write(dir.path(), "e.json", r#"{"dim":2,"vectors":[[1,0],[0,1]],"weights":[1,1]}"#);
    let out = run(&["verify", "parseval", "--input", input.to_str().unwrap(), "--subspace", r#"{"coordinate":[0]}"#]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v = stdout_json(&out);
    assert_eq!(v["status"], "agrees");
    assert_eq!(v["check"]["d"], 0);
    assert_relative_eq!(v["check"]["lhs"].as_f64().unwrap(), 2.0, max_relative = 1e-12);
}

#[test]
fn reports_round_trip_and_digests_are_stable() {
    let dir = TempDir::new().unwrap();
    let fixture = construct(dir.path(), "h.json", &["hadamard", "--k", "2", "--n", "4"]);
    let args = [
        "verify",
        "--input",
        fixture.to_str().unwrap(),
        "--seed",
        "3",
        "--samples",
        "20000",
    ];
    let a = stdout_json(&run(&args));
    let b = stdout_json(&run(&args));
    assert_eq!(a, b);
    let report: BoundReport = serde_json::from_value(a["report"].clone()).unwrap();
    let again = serde_json::to_value(&report).unwrap();
    assert_eq!(again, a["report"]);
    assert_eq!(report.metadata.seeds, vec![3]);
    // The constructed fixture validates.
    assert_eq!(code(&run(&["validate", "--input", fixture.to_str().unwrap()])), 0);
}

#[test]
fn csv_values_match_json() {
    let dir = TempDir::new().unwrap();
    let fixture = construct(dir.path(), "h.json", &["hadamard", "--k", "2", "--n", "3"]);
    let json = stdout_json(&run(&["bound", "--input", fixture.to_str().unwrap()]));
    let out = run(&["bound", "--input", fixture.to_str().unwrap(), "--format", "csv"]);
    let (header, rows) = csv_rows(&out.stdout);
    let (name, value) = (column(&header, "name"), column(&header, "value"));
    for row in &rows {
        if let Some(v) = cell(row, value) {
            assert_eq!(v, json["values"][&row[name]].as_f64().unwrap(), "{}", row[name]);
        }
    }
}

#[test]
fn nonsymmetric_simplex_bounds() {
    let dir = TempDir::new().unwrap();
    let fixture = construct(dir.path(), "s.json", &["simplex", "--n", "2"]);
    let out = run(&[
        "verify",
        "--input",
        fixture.to_str().unwrap(),
        "--subspace",
        r#"{"orthogonal_to":[[1,-1]]}"#,
        "--seed",
        "2",
        "--samples",
        "50000",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v = stdout_json(&out);
    assert_eq!(v["body"], "nonsymmetric");
    let hyper = v["report"]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["name"] == "nonsym_hyperplane")
        .unwrap();
    assert_eq!(hyper["value"].as_f64().unwrap(), 3.0);
    // The sharp direction: the section length is 3 (exact route).
    assert_relative_eq!(v["volume"]["exact"].as_f64().unwrap(), 3.0, max_relative = 1e-9);
    assert_eq!(v["consistent"], true);
}

proptest! {
    #[test]
    fn csv_floats_round_trip(v in any::<f64>().prop_filter("finite", |v| v.is_finite())) {
        let s = fmt_f64(v);
        prop_assert_eq!(s.parse::<f64>().unwrap(), v);
        let digits = s.split('e').next().unwrap().chars().filter(char::is_ascii_digit).count();
        prop_assert_eq!(digits, 17);
    }
}
