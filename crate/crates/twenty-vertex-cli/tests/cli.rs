use std::process::{Command, Output};

use serde_json::Value;

fn twentyv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twentyv"))
        .args(args)
        .env_remove("TWENTYV_CAPS")
        .output()
        .expect("spawn twentyv")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout));
    })
}

#[test]
fn count_reports_the_refined_split() {
    let out = twentyv(&["count", "--m", "5"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["total"], "184");
    assert_eq!(v["refined"], serde_json::json!(["20", "60", "66", "32", "6"]));
    let routes = v["routes"].as_object().unwrap();
    assert!(routes.len() >= 2);
    for r in routes.values() {
        assert_eq!(r, &v["refined"]);
    }
}

#[test]
fn count_csv_has_one_row_per_k() {
    let out = twentyv(&["count", "--m", "4", "--bc", "dwbc1", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.split("\r\n").filter(|l| !l.is_empty()).collect();
    assert_eq!(rows[0], "k,count,H,D");
    assert_eq!(rows.len(), 5);
}

#[test]
fn verify_suite_passes() {
    let out = twentyv(&["verify", "--m", "6"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["status"], "pass");
    for r in v["identities"].as_array().unwrap() {
        assert_eq!(r["pass"], true, "{r}");
    }
}

#[test]
fn uniform_curve_sits_on_its_degree_ten_curve() {
    let out = twentyv(&["curve", "--eta", "1/8", "--lambda", "5/8", "--format", "json"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["params"]["regime"], "disordered");
    assert!(v["uniformResidual"].as_f64().unwrap() < 1e-6);
    for j in v["joins"].as_array().unwrap() {
        assert!(j[1].as_f64().unwrap() < 1e-8, "{j}");
    }
    for b in v["branches"].as_array().unwrap() {
        assert_eq!(b["points"].as_array().unwrap().len(), 201);
    }
}

#[test]
fn free_fermion_curve_crosses_the_gauge_pole() {
    let out = twentyv(&["curve", "--eta", "1/4", "--lambda", "1/8", "--mu", "0", "--format", "json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["params"]["regime"], "free-fermion");
    let ne = v["branches"][0]["points"].as_array().unwrap();
    assert!(ne.iter().any(|q| q["kappa"].is_null()));
    assert!(ne.iter().all(|q| q["X"].as_f64().unwrap().is_finite()));
}

#[test]
fn negative_mu_and_radians_parse() {
    let out = twentyv(&["curve", "--eta", "1/6", "--lambda", "5/12", "--mu", "-1/8", "--format", "json"]);
    assert!(out.status.success());
    let out = twentyv(&["curve", "--radians", "--eta", "0.3", "--lambda", "1.4", "--mu", "0.2", "--format", "svg"]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("<?xml"));
}

#[test]
fn samples_are_deterministic_in_the_seed() {
    let args = ["sample", "--m", "7", "--seed", "11", "--n", "20", "--format", "json"];
    let a = twentyv(&args);
    let b = twentyv(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = twentyv(&["sample", "--m", "7", "--seed", "12", "--n", "20", "--format", "json"]);
    assert_ne!(a.stdout, c.stdout);
    let svg = ["sample", "--m", "6", "--seed", "4", "--phases"];
    assert_eq!(twentyv(&svg).stdout, twentyv(&svg).stdout);
}

#[test]
fn histogram_matches_the_exact_distribution() {
    let out = twentyv(&["sample", "--m", "6", "--seed", "1", "--n", "4000", "--histogram", "--format", "json"]);
    assert!(out.status.success());
    let v = json(&out);
    assert!(v["maxAbsZ"].as_f64().unwrap() <= 3.0);
    assert_eq!(v["bins"].as_array().unwrap().len(), 6);
}

#[test]
fn bad_parameters_exit_with_a_json_error() {
    let out = twentyv(&["curve", "--eta", "3/4", "--lambda", "1/8"]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(v["status"], "error");
    assert!(out.stdout.is_empty());
}

#[test]
fn caps_come_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_twentyv"))
        .args(["count", "--m", "9"])
        .env("TWENTYV_CAPS", "brute=0,transfer=0,det=5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_writes_a_file() {
    let dir = std::env::temp_dir().join(format!("twentyv-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("count.json");
    let out = twentyv(&["count", "--m", "3", "-o", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["total"], "6");
    std::fs::remove_dir_all(dir).unwrap();
}
