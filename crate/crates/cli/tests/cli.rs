use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn superq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superq")).args(args).env_remove("SUPERQ_SEED").output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

fn statuses(r: &Value) -> Vec<String> {
    r["checks"].as_array().unwrap().iter().map(|c| c["status"].as_str().unwrap().to_string()).collect()
}

fn emit(dir: &TempDir, name: &str, params: &[&str]) -> PathBuf {
    let mut args = vec!["catalog", "emit", name];
    for p in params {
        args.extend(["--param", p]);
    }
    let out = superq(&args);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let path = dir.path().join(format!("{name}.json"));
    std::fs::write(&path, &out.stdout).unwrap();
    path
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn emitted_entries_check_clean() {
    let dir = TempDir::new().unwrap();
    for (name, params) in
        [("g4_1s", &[][..]), ("g6_4s_symplectic", &["b1=2", "c3=1/2"][..]), ("g6_6s", &["lambda=1+1√2"][..])]
    {
        let file = emit(&dir, name, params);
        let out = superq(&["check", p(&file)]);
        assert_eq!(code(&out), 0);
        assert!(statuses(&report(&out)).iter().all(|s| s == "pass"));
    }
}

#[test]
fn symplectic_search_reports_singular_families() {
    let dir = TempDir::new().unwrap();
    let file = emit(&dir, "g4_2s", &[]);
    let out = superq(&["symplectic-search", p(&file), "--format", "text"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("identically_singular: no symplectic structure"));

    let file = emit(&dir, "g6_4s", &[]);
    let r = report(&superq(&["symplectic-search", p(&file)]));
    let last = r["checks"].as_array().unwrap().last().unwrap();
    assert_eq!(last["status"], "pass");
    assert!(last["detail"]["omega"].as_array().is_some_and(|w| !w.is_empty()));
}

#[test]
fn jacobi_failure_exits_one() {
    let dir = TempDir::new().unwrap();
    let file = emit(&dir, "g6_7s", &[]);
    let mut alg: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    for b in alg["brackets"].as_array_mut().unwrap() {
        if b["lhs"] == "Y0" && b["rhs"] == "Y2" {
            b["value"] = serde_json::json!([{ "basis": "Y1", "coeff": "-1" }]);
        }
    }
    let bad = write(&dir, "g67_printed.json", &alg.to_string());
    let out = superq(&["check", p(&bad)]);
    assert_eq!(code(&out), 1);
    assert!(report(&out)["checks"][0]["detail"].as_str().unwrap().contains("Jacobi"));
}

#[test]
fn non_invariant_form_exits_one() {
    let dir = TempDir::new().unwrap();
    let file = emit(&dir, "g4_1s", &[]);
    let text = std::fs::read_to_string(&file).unwrap();
    let mut alg: Value = serde_json::from_str(&text).unwrap();
    alg["form_B"][0]["coeff"] = "2".into();
    let bad = write(&dir, "bad_form.json", &alg.to_string());
    let out = superq(&["check", p(&bad)]);
    assert_eq!(code(&out), 1);
    let r = report(&out);
    assert_eq!(r["checks"][1]["detail"]["counterexample"]["property"], "invariant");
}

#[test]
fn parse_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let broken = write(&dir, "broken.json", "{\"name\": \"x\"");
    assert_eq!(code(&superq(&["check", p(&broken)])), 2);
    let bad_scalar = write(
        &dir,
        "scalar.json",
        r#"{"name":"x","even_basis":["A"],"odd_basis":[],"brackets":[{"lhs":"A","rhs":"A","value":[{"basis":"A","coeff":"1/0"}]}]}"#,
    );
    assert_eq!(code(&superq(&["check", p(&bad_scalar)])), 2);
    assert_eq!(code(&superq(&["check", "/nonexistent/file.json"])), 2);
    assert_eq!(code(&superq(&["catalog", "emit", "g6_6s", "--param", "lambda=0"])), 2);

    let base = emit(&dir, "abelian", &[]);
    let spec = write(&dir, "spec.json", r#"{"kind": "gde", "X0": ["1", "0"]}"#);
    assert_eq!(code(&superq(&["extend", p(&base), p(&spec)])), 2);
    let spec = write(&dir, "kind.json", r#"{"kind": "triple"}"#);
    assert_eq!(code(&superq(&["extend", p(&base), p(&spec)])), 2);
}

#[test]
fn extend_then_peel_round_trip() {
    let dir = TempDir::new().unwrap();
    let g41 = emit(&dir, "g4_1s_symplectic", &[]);
    let spec = write(
        &dir,
        "gde.json",
        r#"{"kind": "gde",
            "D": [["0","0","0","-2"],["0","0","0","0"],["0","-2","0","0"],["0","0","0","0"]],
            "X0": [{"basis": "X0", "coeff": "1"}], "A1": [{"basis": "Y2", "coeff": "1"}], "alpha": "-3"}"#,
    );
    let out = superq(&["extend", p(&g41), p(&spec)]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    let result = r["checks"].as_array().unwrap().iter().find(|c| c["name"] == "result").unwrap()["detail"].clone();
    let lifted = write(&dir, "lifted.json", &result.to_string());

    let out = superq(&["peel", p(&lifted)]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    let dec = &r["checks"][2]["detail"];
    assert_eq!(dec["case"], "generalized");
    assert_eq!(dec["alpha"], "-3");
}

#[test]
fn peel_rejects_non_filiform() {
    let dir = TempDir::new().unwrap();
    let file = emit(&dir, "abelian", &[]);
    assert_eq!(code(&superq(&["peel", p(&file)])), 1);
}

#[test]
fn derivations_subcommand() {
    let dir = TempDir::new().unwrap();
    let file = emit(&dir, "g4_1s", &[]);
    let r = report(&superq(&["derivations", p(&file), "--skew"]));
    assert_eq!(r["checks"][1]["detail"]["dim"], 2);
    assert_eq!(r["checks"][2]["detail"]["status"], "invertible_on");
    let r = report(&superq(&["derivations", p(&file), "--parity", "odd", "--skew"]));
    assert!(r["checks"][1]["detail"]["dim"].as_u64().unwrap() >= 2);
}

#[test]
fn catalog_list_names_every_entry() {
    let r = report(&superq(&["catalog", "list"]));
    let names: Vec<&str> = r["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    for n in [
        "g4_1s",
        "g4_2s",
        "diamond_g4",
        "g6_4s",
        "g6_5s",
        "g6_6s",
        "g6_7s",
        "prop33_family",
        "prop34_family",
        "gde41_family",
        "sec5_example",
        "abelian",
    ] {
        assert!(names.contains(&n), "{n}");
    }
}

#[test]
fn verify_paper_is_deterministic() {
    let a = superq(&["verify-paper"]);
    let b = superq(&["verify-paper"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let r = report(&a);
    assert!(r["checks"].as_array().unwrap().len() >= 25);
    assert!(statuses(&r).iter().all(|s| s != "fail"));
}

#[test]
fn env_seed_overrides_flag() {
    let out = Command::new(env!("CARGO_BIN_EXE_superq"))
        .args(["verify-paper", "--seed", "1"])
        .env("SUPERQ_SEED", "9")
        .output()
        .unwrap();
    let r = report(&out);
    assert_eq!(r["checks"][0]["name"], "seed");
    assert_eq!(r["checks"][0]["detail"], 9);
}
