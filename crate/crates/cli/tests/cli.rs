use std::path::PathBuf;
use std::process::{Command, Output};

use relhom::algebra::Algebra;
use relhom::audit::{AuditReport, BundleJson};
use relhom::exactla::Field;
use relhom::io::*;
use relhom::relclass::AllowableClass;

fn example(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples").join(name).display().to_string()
}

fn relhom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relhom")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn resolve_simple_over_a2() {
    let o = relhom(&["resolve", "--algebra", &example("a2.algebra.json"), "--module", &example("a2_s1.module.json"), "--length", "2"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("stage dimensions: [2, 1]"), "{s}");
    assert!(s.contains("resolution length: 1"), "{s}");
}

#[test]
fn resolve_zero_module() {
    let o = relhom(&["resolve", "--module", "zero"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("resolution length: 0"));
}

#[test]
fn resolve_json_round_trips() {
    let o = relhom(&["resolve", "--algebra", "poly:2", "--module", "trivial", "--length", "3", "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["length"].is_null());
    let a = Algebra::truncated_polynomial(Field::new(2).unwrap(), 2).unwrap();
    let ms: Vec<ModuleJson> = serde_json::from_value(v["modules"].clone()).unwrap();
    for m in &ms {
        assert_eq!(module_from_json(m, &a).unwrap().dim(), 2);
    }
}

#[test]
fn malformed_input_is_exit_2() {
    let path = std::env::temp_dir().join("relhom_malformed.json");
    std::fs::write(&path, "{\"dim\": 1").unwrap();
    let o = relhom(&["resolve", "--module", path.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let o = relhom(&["resolve", "--module", "/nonexistent/module.json"]);
    assert_eq!(code(&o), 2);
    let o = relhom(&["resolve", "--algebra", "poly:2", "--field", "4", "--module", "trivial"]);
    assert_eq!(code(&o), 2);
    // three action matrices for a two-dimensional algebra
    let o = relhom(&["resolve", "--algebra", "poly:2", "--module", &example("a2_s1.module.json")]);
    assert_eq!(code(&o), 2);
}

#[test]
fn computation_errors_are_exit_3() {
    // zero map out of a nonzero module is not a cofibration
    let o = relhom(&["pushout", "--f", "zero:regular:zero", "--g", "identity:regular"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn counterexample_on_a2() {
    let o = relhom(&["counterexample", "--algebra", &example("a2.algebra.json")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("verdict: NOT stable equivalence"));
    let o = relhom(&["counterexample", "--json"]);
    assert_eq!(code(&o), 0);
    let b: BundleJson = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(b.x_pd, 1);
    assert_eq!(b.verdict, "NOT stable equivalence");
    assert!(b.diagram.reverify().unwrap());
}

#[test]
fn no_counterexample_over_dual_numbers() {
    let o = relhom(&["counterexample", "--algebra", &example("poly2.algebra.json")]);
    assert_eq!(code(&o), 1);
    let o = relhom(&["counterexample", "--class", "split"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn audit_group_algebra_is_clean() {
    let o = relhom(&["audit", "--algebra", &example("f2c2.algebra.json"), "--trials", "200"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("0 violations"));
}

#[test]
fn injected_audit_is_refuted_and_reverifies() {
    let out = std::env::temp_dir().join("relhom_audit_report.json");
    let o = relhom(&["audit", "--inject", "--trials", "10", "--seed", "5", "--json", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let r = AuditReport::from_json(&stdout(&o)).unwrap();
    assert_eq!(r.seed, 5);
    assert!(r.violation_count() >= 1);
    assert!(r.reverify_all().unwrap());
    let written = AuditReport::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(written, r);
}

#[test]
fn stable_check_verdicts() {
    let o = relhom(&["stable-check", "--morphism", "identity:simple:0"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("stable equivalence: yes"));
    let o = relhom(&["stable-check", "--morphism", &example("a2_s1_identity.morphism.json")]);
    assert_eq!(code(&o), 0);
    let o = relhom(&["stable-check", "--morphism", "zero:simple:0:zero"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("stable equivalence: no"));
    let o = relhom(&["stable-check", "--morphism", &example("a2_inclusion.morphism.json"), "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["stable_equivalence"], true);
    assert!(v["certificate"]["iso"].is_array());
}

#[test]
fn pushout_and_factorize() {
    let inc = example("a2_inclusion.morphism.json");
    let o = relhom(&["pushout", "--f", &inc, "--g", &inc, "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let a = Algebra::a2(Field::new(2).unwrap()).unwrap();
    let obj: ModuleJson = serde_json::from_value(v["object"].clone()).unwrap();
    assert_eq!(module_from_json(&obj, &a).unwrap().dim(), 3);
    assert_eq!(v["left_proper"], false);

    let o = relhom(&["factorize", "--algebra", "cyclic:2", "--morphism", "zero:trivial:regular"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("pushout comparison is a weak equivalence: true"));
}

#[test]
fn realize_bundled_simplicial() {
    let o = relhom(&["realize", "--algebra", &example("f2c2.algebra.json"), "--simplicial", &example("f2c2_k.simplicial.json"), "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let a = Algebra::cyclic_group_algebra(Field::new(2).unwrap(), 2).unwrap();
    let tower: TowerJson = serde_json::from_value(v["tower"].clone()).unwrap();
    let t = tower_from_json(&tower, &AllowableClass::absolute(a)).unwrap();
    assert_eq!(t.len(), v["stage_dims"].as_array().unwrap().len());
}

#[test]
fn ext_over_a2_and_truncated_polynomial() {
    let o = relhom(&["ext", "--module", "simple:0", "--target", "simple:1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("dim Ext^1 = 1"));
    let o = relhom(&["ext", "--algebra", "poly:3", "--field", "3", "--module", "trivial", "--target", "trivial", "--degree", "4"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("dim Ext^4 = 1"));
}

#[test]
fn bundled_examples_load() {
    for name in ["a2.algebra.json", "poly2.algebra.json", "poly3.algebra.json", "f2c2.algebra.json"] {
        let o = relhom(&["resolve", "--algebra", &example(name), "--module", "regular", "--class", &example("absolute.class.json")]);
        assert_eq!(code(&o), 0, "{name}");
        assert!(stdout(&o).contains("projective dimension: 0"), "{name}");
        let o = relhom(&["audit", "--algebra", &example(name), "--class", &example("split.class.json"), "--trials", "5"]);
        assert_eq!(code(&o), 0, "{name}");
    }
}
