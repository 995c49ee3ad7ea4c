use std::path::PathBuf;

use fanocheck::cli::{list_scenarios, run_cli, run_scenario, RunConfig};
use fanocheck::Error;

const REQUIRED: [&str; 20] = [
    "lem-discriminant",
    "autfinite-1a-discriminant",
    "autfinite-8-discriminant",
    "t3aut-veronese-forms",
    "t3aut-torus-weights",
    "t3aut-nu-transforms",
    "t3aut-sigma",
    "t3aut-ga-fixed-point",
    "t4aut-normal-form-action",
    "iso26-vanishing-forms",
    "iso26-theta-blowup",
    "t6aut-po3-action",
    "t6aut-tau-parametrization",
    "t6aut-crossproduct-equivariance",
    "link-p1cubed-curve",
    "link-p1cubed-point",
    "link-ptp2-line",
    "link-ptp2-point",
    "table1-invariants",
    "balanced-classes",
];

fn cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let code = run_cli(std::iter::once("fanocheck").chain(args.iter().copied()), &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn temp_file(name: &str, body: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("fanocheck-{}-{name}", std::process::id()));
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn listing_is_sorted_unique_and_complete() {
    let names: Vec<&str> = list_scenarios().into_iter().map(|(n, _)| n).collect();
    let mut sorted = names.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(names, sorted);
    for r in REQUIRED {
        assert!(names.contains(&r), "missing {r}");
    }
    let (code, text) = cli(&["list"]);
    assert_eq!(code, 0);
    assert_eq!(text.lines().count(), names.len());
}

#[test]
fn unknown_scenario_lists_valid_names() {
    match run_scenario("no-such-lemma", &RunConfig::default()) {
        Err(Error::UnknownScenario { name, valid }) => {
            assert_eq!(name, "no-such-lemma");
            assert!(valid.contains("link-p1cubed-curve") && valid.contains("table1-invariants"));
        }
        other => panic!("expected UnknownScenario, got {other:?}"),
    }
    assert_eq!(cli(&["run", "--scenario", "no-such-lemma"]).0, 2);
}

#[test]
fn malformed_arguments_exit_2() {
    assert_eq!(cli(&["run"]).0, 2);
    assert_eq!(cli(&["run", "--all", "--scenario", "t3aut-sigma"]).0, 2);
    assert_eq!(cli(&["frobnicate"]).0, 2);
    assert_eq!(cli(&["run", "--all", "--seed", "minus-one"]).0, 2);
    assert_eq!(cli(&["run", "--all", "--input", "/nonexistent/overrides.toml"]).0, 2);
}

#[test]
fn json_report_shape() {
    let (code, text) = cli(&["run", "--scenario", "t3aut-sigma", "--format", "json", "--seed", "7"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let obj = v.as_object().unwrap();
    let keys: Vec<&str> = obj.keys().map(String::as_str).collect();
    assert_eq!(keys, ["checks", "elapsed_ms", "scenario", "seed"]);
    assert_eq!(obj["scenario"], "t3aut-sigma");
    assert_eq!(obj["seed"], 7);
    assert_eq!(obj["elapsed_ms"], 0);
    for c in obj["checks"].as_array().unwrap() {
        let c = c.as_object().unwrap();
        assert!(c["name"].is_string() && c["detail"].is_string());
        assert!(["pass", "fail", "error", "assumed"].contains(&c["status"].as_str().unwrap()));
    }
    // field order on the wire is scenario, seed, checks, elapsed_ms
    let at = |k: &str| text.find(&format!("\"{k}\"")).unwrap();
    assert!(at("scenario") < at("seed") && at("seed") < at("checks") && at("checks") < at("elapsed_ms"));
}

#[test]
fn reports_are_deterministic_per_seed() {
    let run = |seed| cli(&["run", "--scenario", "t4aut-normal-form-action", "--scenario", "t3aut-veronese-forms", "--format", "json", "--seed", seed]);
    let (a, b) = (run("3"), run("3"));
    assert_eq!(a.0, 0);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a.1).unwrap();
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["scenario"].as_str().unwrap()).collect();
    assert_eq!(names, ["t3aut-veronese-forms", "t4aut-normal-form-action"]);
}

#[test]
fn catalog_lists_nine_rows() {
    let (code, text) = cli(&["catalog", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 9);
}

#[test]
fn input_bundles_are_checked() {
    let p = temp_file(
        "bundles.toml",
        r#"
[discriminant]
samples = 3

[[bundle]]
name = "diag-u-1-1"
shape = "symmetric"
matrix = [["u", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]

[[bundle]]
name = "hyperbola"
shape = "bilinear"
matrix = [["u", "1"], ["1", "v"]]
points = [["1", "1"], ["2", "1/2"], ["-1/3", "-3"]]
"#,
    );
    let (code, text) = cli(&["run", "--scenario", "lem-discriminant", "--format", "json", "--input", p.to_str().unwrap()]);
    std::fs::remove_file(&p).ok();
    assert_eq!(code, 0, "{text}");
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let checks = v["checks"].as_array().unwrap();
    for name in ["input-bundle/diag-u-1-1", "input-bundle/hyperbola"] {
        let c = checks.iter().find(|c| c["name"] == name).unwrap_or_else(|| panic!("no {name}"));
        assert_eq!(c["status"], "pass", "{c}");
    }
}

#[test]
fn singular_input_bundle_fails() {
    // M(0,0) = 0 for a 2×2 matrix forces a singular total space
    let p = temp_file("singular.toml", "[[bundle]]\nname = \"diag-u-v\"\nshape = \"bilinear\"\nmatrix = [[\"u\", \"0\"], [\"0\", \"v\"]]\n\n[discriminant]\nsamples = 1\n");
    let (code, text) = cli(&["run", "--scenario", "lem-discriminant", "--input", p.to_str().unwrap()]);
    std::fs::remove_file(&p).ok();
    assert_eq!(code, 1, "{text}");
    assert!(text.contains("input-bundle/diag-u-v: total space is singular"));
}

#[test]
fn unknown_override_keys_are_rejected() {
    let p = temp_file("typo.toml", "[[bundel]]\nname = \"x\"\n");
    let code = cli(&["run", "--scenario", "lem-discriminant", "--input", p.to_str().unwrap()]).0;
    std::fs::remove_file(&p).ok();
    assert_eq!(code, 2);
}

#[test]
fn broken_lattice_fails_its_certificate() {
    let src = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/p1cubed_point.toml")).unwrap();
    let broken = src.replacen("expected = [1, 1, 1, 1]", "expected = [1, 1, 1, 2]", 1);
    assert_ne!(src, broken);
    let lattice: toml::Value = toml::from_str(&broken).unwrap();
    let mut inner = toml::Table::new();
    inner.insert("p1cubed-point".into(), lattice);
    let mut top = toml::Table::new();
    top.insert("lattice".into(), toml::Value::Table(inner));
    let p = temp_file("lattice.toml", &toml::to_string(&top).unwrap());
    let (code, text) = cli(&["run", "--scenario", "link-p1cubed-point", "--input", p.to_str().unwrap()]);
    std::fs::remove_file(&p).ok();
    assert_eq!(code, 1, "{text}");
    assert!(text.lines().any(|l| l.trim_start().starts_with("fail") && l.contains("certificate/first-link-divisor")));
}
