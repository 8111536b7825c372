use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rsdensity::io::{read_family, FamilyFile};
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rsdensity"))
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn rsdensity")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn crossover_value() {
    let v = json(&run(&["density", "crossover", "--n", "3"]));
    let t = v["crossover"].as_f64().unwrap();
    assert!((t - 0.3169873).abs() < 5e-8);
    assert!((t - (3.0 - 3f64.sqrt()) / 4.0).abs() < 1e-12);
}

#[test]
fn coefficient_matrix_at_one_is_all_ones() {
    let corpus = data("corpus.json");
    for path in [data("single.json"), corpus] {
        let v = json(&run(&["rs", "coeff", "--family", path.to_str().unwrap(), "--m", "1"]));
        for row in v["matrix"].as_array().unwrap() {
            for c in row.as_array().unwrap() {
                assert_eq!(c, &serde_json::json!([1.0, 0.0]));
            }
        }
    }
}

#[test]
fn single_coefficient() {
    let single = data("single.json");
    let v = json(&run(&["rs", "coeff", "--family", single.to_str().unwrap(), "--m", "4", "--pair", "a,a"]));
    let re = v["coefficient"][0].as_f64().unwrap();
    assert!((re - 10.7426407).abs() < 1e-6);
}

#[test]
fn psd_on_corpus_exits_zero() {
    let corpus = data("corpus.json");
    let out = run(&["rs", "psd", "--family", corpus.to_str().unwrap(), "--prime", "2", "--kmax", "6", "--tol", "1e-9"]);
    let v = json(&out);
    assert_eq!(v["pass"], Value::Bool(true));
    assert_eq!(v["checks"].as_array().unwrap().len(), 7);
}

#[test]
fn psd_failure_exits_two() {
    // A negative tolerance makes the singular degree-0 matrix fail.
    let corpus = data("corpus.json");
    let out = run(&["rs", "psd", "--family", corpus.to_str().unwrap(), "--prime", "2", "--kmax", "1", "--tol=-1"]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pass"], Value::Bool(false));
}

#[test]
fn psd_kmax_beyond_truncation_is_input_error() {
    let corpus = data("corpus.json");
    let out = run(&["rs", "psd", "--family", corpus.to_str().unwrap(), "--prime", "2", "--kmax", "9"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&[
        "rs", "psd", "--family", corpus.to_str().unwrap(), "--prime", "2", "--kmax", "9", "--truncation", "9",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn lower_bound_equality_case() {
    let dir = tempfile::tempdir().unwrap();
    let fam = write(
        dir.path(),
        "f.json",
        r#"{"version":1,"n":2,"reps":[
          {"id":"a","arith_conductor":1,"archimedean":[[0,0],[0,0]],
           "finite":{"2":{"type":"unramified","mu":[[0.25,0],[-0.25,0]]}}},
          {"id":"b","arith_conductor":1,"archimedean":[[0,0],[0,0]],
           "finite":{"2":{"type":"unramified","mu":[[0.1,0],[-0.1,0]]}}}]}"#,
    );
    let w = write(dir.path(), "w.json", "[[1,0],[1,0]]");
    let v = json(&run(&["rs", "lowerbound", "--family", &fam, "--prime", "2", "--k", "1", "--weights", &w]));
    assert!((v["lhs"].as_f64().unwrap() - 16.2805).abs() < 1e-3);
    assert!(v["slack"].as_f64().unwrap().abs() < 1e-9);
}

#[test]
fn triple_sum_with_default_weights() {
    let dir = tempfile::tempdir().unwrap();
    let single = data("single.json");
    let u = write(dir.path(), "u.json", "[1, 0, 0, 0]");
    let beta = write(dir.path(), "b.json", "[0.5]");
    let v = json(&run(&[
        "rs", "triplesum", "--family", single.to_str().unwrap(), "--u", &u, "--beta", &beta, "--M", "4",
    ]));
    // Only m = 1 contributes: a(1) · 4^{2·0.5}.
    assert!((v["value"][0].as_f64().unwrap() - 4.0).abs() < 1e-12);
}

#[test]
fn validate_reports_and_rejects() {
    let v = json(&run(&["validate", "--family", data("corpus.json").to_str().unwrap()]));
    assert_eq!(v["valid"], Value::Bool(true));
    assert_eq!(v["size"], 6);

    let dir = tempfile::tempdir().unwrap();
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"version":1,"n":2,"reps":[{"id":"x","arith_conductor":1,
            "archimedean":[[0.3,0],[0.3,0]]}]}"#,
    );
    let out = run(&["validate", "--family", &bad]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unitarity"));

    let unknown = write(dir.path(), "u.json", r#"{"version":1,"n":2,"reps":[],"extra":0}"#);
    assert_eq!(run(&["validate", "--family", &unknown]).status.code(), Some(1));
    assert_eq!(run(&["validate", "--family", "/nonexistent.json"]).status.code(), Some(1));
}

#[test]
fn unknown_flags_and_missing_modes_exit_one() {
    assert_eq!(run(&["density", "crossover", "--n", "3", "--nope"]).status.code(), Some(1));
    assert_eq!(run(&["turan", "--M", "3"]).status.code(), Some(1));
    assert_eq!(
        run(&["density", "simulate", "--family", data("single.json").to_str().unwrap()]).status.code(),
        Some(1)
    );
}

#[test]
fn help_names_the_object() {
    let out = run(&["rs", "coeff", "--help"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("a_{π×π̃'}(m)"));
}

#[test]
fn mellin_point_value() {
    let v = json(&run(&["analytic", "mellin", "--kernel", "gauss", "--exponent", "1,0", "--s", "2,0"]));
    let want = std::f64::consts::PI.sqrt() / 4.0;
    assert!((v["value"][0].as_f64().unwrap() - want).abs() < 1e-12);
}

#[test]
fn smooth_sum_methods_agree() {
    let dir = tempfile::tempdir().unwrap();
    let c = write(dir.path(), "c.json", "[1, [0.5, 0.5], -0.25, 0, 2, [0, -1], 0.75]");
    let args = |m: &'static str| {
        let mut a = vec!["analytic", "smoothsum", "--coeffs", c.as_str(), "--M", "3", "--kernel", "gauss", "--exponent", "0.5"];
        a.push(m);
        a
    };
    let d = json(&run(&args("--direct")));
    let k = json(&run(&args("--contour")));
    for i in 0..2 {
        let (a, b) = (d["value"][i].as_f64().unwrap(), k["value"][i].as_f64().unwrap());
        assert!((a - b).abs() <= 1e-6 * d["value"][0].as_f64().unwrap().abs().max(1.0));
    }
    assert_eq!(run(&["analytic", "smoothsum", "--coeffs", &c, "--M", "3", "--kernel", "gauss"]).status.code(), Some(1));
}

#[test]
fn turan_single_and_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let z = write(dir.path(), "z.json", "[[0.5, 0.5]]");
    let v = json(&run(&["turan", "--z", &z, "--M", "7"]));
    assert_eq!(v["ratio"].as_f64().unwrap(), 7.0);

    let sweep = ["turan", "--sweep", "--N", "3", "--trials", "40", "--M-list", "1,3,9", "--seed", "5", "--format", "csv"];
    let a = run(&sweep);
    let b = run(&sweep);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(String::from_utf8_lossy(&a.stdout).lines().count(), 4);
    let mut other = sweep.to_vec();
    other[9] = "6";
    assert_ne!(run(&other).stdout, a.stdout);
}

#[test]
fn simulate_both_places() {
    let corpus = data("corpus.json");
    let fam = corpus.to_str().unwrap();
    let v = json(&run(&["density", "simulate", "--finite", "--prime", "3", "--k0", "2", "--family", fam]));
    assert_eq!(v["pass"], Value::Bool(true));
    assert_eq!(v["steps"].as_array().unwrap().len(), 3);
    let v = json(&run(&["density", "simulate", "--infty", "--theta", "0.1", "--ell", "50", "--family", fam]));
    assert_eq!(v["pass"], Value::Bool(true));
    assert_eq!(v["place"], "infinity");
}

#[test]
fn exponent_and_amplified() {
    let v = json(&run(&["density", "exponent", "--n", "3", "--theta", "0.25", "--base", "conductor"]));
    assert!((v["exponent"].as_f64().unwrap() - 3.0).abs() < 1e-12);
    let v = json(&run(&["density", "exponent", "--n", "3", "--theta", "0.25", "--base", "rs"]));
    assert!((v["exponent"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    let theta = (0.5 - 1.0 / 10.0).to_string();
    let v = json(&run(&["density", "amplified", "--n", "3", "--theta", &theta, "--q", "7"]));
    assert_eq!(v["verdict"], "boundary");
}

#[test]
fn sample_output_is_a_valid_family_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.json");
    let args = ["sample", "--n", "2", "--size", "4", "--theta", "0.2", "--ramified", "7", "--seed", "9"];
    let out = bin().args(args).arg("--output").arg(&path).output().unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let f = read_family(&path).unwrap();
    assert!(f.is_valid());
    let text = std::fs::read_to_string(&path).unwrap();
    let file: FamilyFile = serde_json::from_str(&text).unwrap();
    assert_eq!(file, FamilyFile::from_family(&f));
    assert_eq!(run(&args).stdout, text.as_bytes());
    assert_eq!(run(&["sample", "--n", "2", "--size", "1", "--theta", "0.2", "--format", "csv"]).status.code(), Some(1));
}

#[test]
fn csv_matrix_cells() {
    let out = run(&["rs", "coeff", "--family", data("single.json").to_str().unwrap(), "--m", "1", "--format", "csv"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "id,a\na,\"1,0\"\n");
}
