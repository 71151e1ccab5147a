use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lattice-forge"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).env_remove("LATTICE_FORGE_CAP").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn catalog_dir(kind: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/catalog").join(kind)
}

#[test]
fn word_normal_form() {
    let out = run(&["word", "nf", "x*y*x"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "0\n");
    let out = run(&["word", "nf", "z*x*y"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "x*y*z\n");
}

#[test]
fn semigroup_check_and_info() {
    let zm2 = catalog_dir("semigroups").join("ZM2.json");
    let out = run(&["sgp", "check", zm2.to_str().unwrap(), "--identity", "x1*x2 = 0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["holds"], true);

    let out = run(&["sgp", "check", "SL2", "--identity", "x*y = x"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["holds"], false);
    assert_eq!(v["witness"], serde_json::json!({"x": 1, "y": 0}));

    let out = run(&["sgp", "info", "N3"]);
    let v = json(&out);
    assert_eq!(v["predicates"]["nilpotency_index"], 3);
    assert_eq!(v["zero"], 2);
}

#[test]
fn lattice_commands() {
    let out = run(&["lattice", "check", "M3", "--element", "a"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v[0]["element"], "a");
    assert_eq!(v[0]["cancellable"], false);

    let out = run(&["lattice", "lemmas", "--enumerate", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["violations"], 0);
    assert_eq!(v["class_counts"]["7"], 53);
    assert_eq!(v["lattices"], 78);
}

#[test]
fn random_corpus_needs_a_seed_and_is_reproducible() {
    let out = run(&["lattice", "lemmas", "--random", "4", "--size", "9..12"]);
    assert_eq!(out.status.code(), Some(2));
    let args = ["lattice", "lemmas", "--random", "4", "--size", "9..12", "--seed", "7"];
    let one = run(&args);
    let two = bin().args(["--workers", "1"]).args(args).output().unwrap();
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, two.stdout);
    let v = json(&one);
    assert_eq!(v["reports"][0]["lattice_id"], "random(size=9,seed=7)");
    assert_eq!(v["reports"][15]["lattice_id"], "random(size=12,seed=10)");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["lattice", "lemmas"]).status.code(), Some(2));
    assert_eq!(run(&["word", "nf", "x**y"]).status.code(), Some(2));
    assert_eq!(run(&["lattice", "check", "/no/such/file.json"]).status.code(), Some(2));
    assert_eq!(run(&["replay", "case1", "--m", "3", "--k", "3"]).status.code(), Some(2));
}

#[test]
fn bad_lattice_file_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"elements":["0","a","b"],"covers":[["0","a"],["0","b"]]}"#).unwrap();
    let out = run(&["lattice", "check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn deduce_prints_a_checkable_proof() {
    let out = run(&["deduce", "--axioms", "W", "--from", "x*y*x", "--to", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "yes");
    let steps = v["proof"].as_array().unwrap();
    assert_eq!(steps.first().unwrap()["before"], "x*y*x");
    assert_eq!(steps.last().unwrap()["after"], "0");

    let out = run(&["deduce", "--axioms", "W", "--from", "x^2", "--to", "0", "--max-len", "8"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["verdict"], "no");

    let dir = tempfile::tempdir().unwrap();
    let axioms = dir.path().join("ax.txt");
    std::fs::write(&axioms, "x*y = y*x\n").unwrap();
    let out = run(&["deduce", "--axioms", axioms.to_str().unwrap(), "--from", "x*y*z", "--to", "z*y*x"]);
    assert_eq!(json(&out)["verdict"], "yes");
}

#[test]
fn replays() {
    let out = run(&["replay", "case2", "--n", "3", "--i", "1", "--j", "1", "--l", "2", "--ip", "2", "--jp", "3", "--r", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["branch"], "staggered");
    assert_eq!(v["derived"], true);
    let out = run(&["replay", "case1", "--m", "3", "--k", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["derived"], true);
}

#[test]
fn variety_membership_and_cap() {
    let out = run(&["variety", "member", "ZM2", "--in", "SL2"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["verdict"], "no");
    assert_eq!(v["witness"], "x1 = x1^2");

    let out = run(&["variety", "member", "ZM2", "--in", "ZM3", "N3"]);
    assert_eq!(out.status.code(), Some(0));

    let out = bin()
        .args(["variety", "member", "N4", "--in", "N4"])
        .env("LATTICE_FORGE_CAP", "2")
        .output()
        .unwrap();
    assert_eq!(json(&out)["verdict"], "resource-limit");
    let out = run(&["variety", "member", "N4", "--in", "N4", "--cap", "3"]);
    assert_eq!(json(&out)["cap"], 3);
}

#[test]
fn variety_lattice_writes_lattice_and_metadata() {
    let dir = tempfile::tempdir().unwrap();
    let cat = dir.path().join("cat");
    std::fs::create_dir(&cat).unwrap();
    for name in ["T1", "SL2", "ZM2"] {
        std::fs::copy(catalog_dir("semigroups").join(format!("{name}.json")), cat.join(format!("{name}.json"))).unwrap();
    }
    let out_file = dir.path().join("proxy.json");
    let out = run(&[
        "variety", "lattice", "--catalog", cat.to_str().unwrap(), "--out", out_file.to_str().unwrap(), "--probe",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let summary = json(&out);
    assert_eq!(summary["probe"]["label"], "EXPLORATORY");
    assert_eq!(summary["meet_is_exact"], false);
    let lattice: Value = serde_json::from_str(&std::fs::read_to_string(&out_file).unwrap()).unwrap();
    assert_eq!(lattice["elements"].as_array().unwrap().len(), 4);
    let meta: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("proxy.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["join_is_exact"], true);
    assert_eq!(meta["nodes"][3]["name"], "V(SL2,ZM2)");
}
