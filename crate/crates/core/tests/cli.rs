use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_braided-verify")).args(args).output().expect("spawn binary")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn report(args: &[&str]) -> (i32, Value, Vec<u8>) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let mut all = args.to_vec();
    let p = path.to_str().unwrap();
    all.extend(["--report", p]);
    let o = run(&all);
    let bytes = std::fs::read(&path).expect("report written");
    (code(&o), serde_json::from_slice(&bytes).expect("valid JSON"), bytes)
}

#[test]
fn single_check_passes_with_per_sample_residuals() {
    let (c, v, _) = report(&["--model", "csg", "--checks", "QYBE_A", "--samples", "5", "--seed", "7"]);
    assert_eq!(c, 0);
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 1);
    let r = &results[0];
    assert_eq!(r["model"], "csg");
    assert_eq!(r["check"], "QYBE_A");
    assert_eq!(r["passed"], true);
    let samples = r["samples"].as_array().unwrap();
    assert_eq!(samples.len(), 5);
    for s in samples {
        assert!(s["residual"].as_f64().unwrap() < 1e-10);
        for key in ["p", "lambda", "mu"] {
            assert!(s[key]["re"].is_f64() && s[key]["im"].is_f64());
        }
    }
}

#[test]
fn report_has_the_documented_fields() {
    let (_, v, _) =
        report(&["--model", "cp2", "--checks", "SCALAR_FACTOR,GAMMA_TILDE", "--samples", "2", "--seed", "3"]);
    assert!(v["version"].as_str().unwrap().contains("chacha8"));
    assert_eq!(v["seed"], 3);
    for k in ["exact", "limit", "classical"] {
        assert!(v["tolerances"][k].is_f64());
    }
    assert!(v["warnings"].is_array());
    let r = &v["results"][0];
    for k in ["model", "check", "max_relative", "tolerance", "passed", "detected_scalar", "samples"] {
        assert!(r.get(k).is_some(), "missing {k}");
    }
    assert!(r["detected_scalar"]["re"].is_f64());
}

#[test]
fn reports_are_byte_identical_for_a_seed() {
    let args = ["--model", "su3so3", "--checks", "QYBE_A,ACC,exchange1", "--samples", "3", "--seed", "42"];
    let (_, _, a) = report(&args);
    let (_, _, b) = report(&args);
    assert_eq!(a, b);
    let (_, _, other) =
        report(&["--model", "su3so3", "--checks", "QYBE_A,ACC,exchange1", "--samples", "3", "--seed", "43"]);
    assert_ne!(a, other);
}

#[test]
fn unknown_model_is_a_usage_error() {
    let o = run(&["--model", "bogus"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("bogus"));
}

#[test]
fn unknown_flag_prints_usage() {
    let o = run(&["--frobnicate"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
}

#[test]
fn zero_samples_and_bad_tolerances_are_rejected() {
    assert_eq!(code(&run(&["--samples", "0"])), 2);
    assert_eq!(code(&run(&["--tol-exact", "-1"])), 2);
    assert_eq!(code(&run(&["--checks", "NOPE"])), 2);
}

#[test]
fn unwritable_report_path_fails() {
    let o = run(&["--model", "cp2", "--checks", "QYBE_A", "--samples", "1", "--report", "/nonexistent/dir/r.json"]);
    assert_eq!(code(&o), 1);
    assert!(!o.stderr.is_empty());
}

#[test]
fn list_checks_names_every_check() {
    let o = run(&["--list-checks"]);
    assert_eq!(code(&o), 0);
    let s = String::from_utf8_lossy(&o.stdout);
    for name in ["UNIT_AD", "HAT_UNITARITY", "exchange1", "exchange2", "global2"] {
        assert!(s.contains(name), "{name}");
    }
    assert_eq!(s.lines().count(), 21);
}

#[test]
fn explicit_point_is_evaluated_once() {
    let (c, v, _) = report(&["--model", "cp2", "--checks", "QYBE_A", "--point", "1.1+0.2i", "0.5-0.3i", "-0.7+0.1i"]);
    assert_eq!(c, 0);
    let s = &v["results"][0]["samples"][0];
    assert_eq!(v["results"][0]["samples"].as_array().unwrap().len(), 1);
    assert_eq!(s["lambda"]["im"], -0.3);
    assert_eq!(s["mu"]["re"], -0.7);
}

#[test]
fn catalogue_and_one_site_exchange_pass_for_every_model() {
    let mut checks: Vec<&str> = vec![
        "UNIT_AD",
        "BC_TRANSPOSE",
        "QYBE_A",
        "QYBE_D",
        "ACC",
        "DBB",
        "QYBE_B",
        "QYBE_C",
        "ABCD_FACTOR",
        "GAMMA_LOCAL",
        "GAMMA_TILDE",
        "LIMITS_SMALL",
        "LIMITS_LARGE",
        "CLASSICAL_LIMIT",
        "RZ_RELATIONS",
        "SCALAR_FACTOR",
        "DA_SWAP",
        "HAT_UNITARITY",
    ];
    checks.push("exchange1");
    let list = checks.join(",");
    let (c, v, _) = report(&["--model", "all", "--checks", &list, "--samples", "1"]);
    assert_eq!(c, 0, "{v:#}");
    let warnings = v["warnings"].as_array().unwrap();
    assert_eq!(warnings.len(), 4, "{warnings:?}");
}

#[test]
fn default_run_fails_only_on_two_site_exchange() {
    let (c, v, _) = report(&["--samples", "1"]);
    assert_eq!(c, 1);
    let failed: Vec<(String, String)> = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["passed"] == false)
        .map(|r| (r["model"].as_str().unwrap().to_string(), r["check"].as_str().unwrap().to_string()))
        .collect();
    assert!(!failed.is_empty());
    for (m, check) in &failed {
        assert!(check == "exchange2" || check == "global2", "{m} {check}");
    }
}
