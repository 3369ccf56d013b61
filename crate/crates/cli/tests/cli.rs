use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn kplane(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kplane")).args(args).output().expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    kplane(args).status.code().expect("exit code")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(p: &Path) -> serde_json::Value {
    serde_json::from_slice(&std::fs::read(p).unwrap()).unwrap()
}

fn markers(svg: &Path) -> usize {
    std::fs::read_to_string(svg).unwrap().matches(r#"<circle class="crossing""#).count()
}

#[test]
fn simplify_4planar_on_f4() {
    let dir = TempDir::new().unwrap();
    let (out, rep, trace) = (dir.path().join("out.json"), dir.path().join("rep.json"), dir.path().join("trace.json"));
    let f4 = fixture("f4.json");
    assert_eq!(
        code(&["simplify", "--algo", "4planar", "--in", s(&f4), "--out", s(&out), "--report", s(&rep), "--trace", s(&trace)]),
        0
    );
    let report = json(&rep);
    assert_eq!(report["after"]["simple"], true);
    assert!(report["after"]["max_crossings"].as_u64().unwrap() <= 8);
    assert_eq!(json(&trace)["phase2"][0]["outcome"], "Rerouted");
    assert_eq!(code(&["check", "--in", s(&out), "--simple"]), 0);
}

#[test]
fn simplify_general_on_f1_respects_k() {
    let dir = TempDir::new().unwrap();
    let (out, rep) = (dir.path().join("out.json"), dir.path().join("rep.json"));
    let f1 = fixture("f1.json");
    assert_eq!(
        code(&["simplify", "--algo", "general", "-k", "3", "--in", s(&f1), "--out", s(&out), "--report", s(&rep)]),
        0
    );
    assert!(json(&rep)["after"]["max_crossings"].as_u64().unwrap() <= 3);
    assert_eq!(code(&["check", "--in", s(&out), "--simple"]), 0);
}

#[test]
fn check_flags_non_simple_and_broken_drawings() {
    let f1 = fixture("f1.json");
    assert_eq!(code(&["check", "--in", s(&f1)]), 0);
    assert_eq!(code(&["check", "--in", s(&f1), "--simple"]), 1);

    let dir = TempDir::new().unwrap();
    let broken = dir.path().join("broken.json");
    let out = dir.path().join("out.json");
    assert_eq!(code(&["simplify", "--algo", "general", "--in", s(&fixture("f3.json")), "--out", s(&out)]), 0);
    let mut value = json(&out);
    // Reverse every corridor with two strands.
    for (_, list) in value["state"]["corridor_orders"].as_object_mut().unwrap() {
        list.as_array_mut().unwrap().reverse();
    }
    // Point the first route at a node it does not reach.
    value["state"]["routes"]["0"][1] = serde_json::json!(0);
    std::fs::write(&broken, serde_json::to_vec(&value).unwrap()).unwrap();
    assert_eq!(code(&["check", "--in", s(&broken)]), 1);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["check"]), 2);
    assert_eq!(code(&["simplify", "--algo", "fast", "--in", "a", "--out", "b"]), 2);
    assert_eq!(code(&["check", "--in", "/nonexistent/file.json"]), 2);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn gen_is_deterministic_and_refuses_dense_targets() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for p in [&a, &b] {
        assert_eq!(code(&["gen", "--n", "50", "--m", "120", "--k", "4", "--seed", "1", "--out", s(p)]), 0);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let c = dir.path().join("c.json");
    assert_eq!(code(&["gen", "--n", "10", "--m", "40", "--k", "1", "--out", s(&c)]), 1);
}

#[test]
fn render_marks_every_crossing() {
    let dir = TempDir::new().unwrap();
    let (before, out, after) = (dir.path().join("before.svg"), dir.path().join("out.json"), dir.path().join("after.svg"));
    let f1 = fixture("f1.json");
    assert_eq!(code(&["render", "--svg", "--in", s(&f1), "--out", s(&before)]), 0);
    assert_eq!(markers(&before), 2);
    assert_eq!(code(&["simplify", "--algo", "general", "--in", s(&f1), "--out", s(&out)]), 0);
    assert_eq!(code(&["render", "--svg", "--in", s(&out), "--out", s(&after)]), 0);
    assert_eq!(markers(&after), 0);
}

#[test]
fn ingest_then_check() {
    let dir = TempDir::new().unwrap();
    let comb = dir.path().join("f4.json");
    let output = kplane(&["ingest", "--in", s(&fixture("f4.json")), "--out", s(&comb)]);
    assert!(output.status.success());
    assert_eq!(json(&comb)["kind"], "combinatorial");
    assert_eq!(code(&["check", "--in", s(&comb)]), 0);
}

#[test]
fn bench_report_is_reproducible_without_timing() {
    let dir = TempDir::new().unwrap();
    for name in ["f1.json", "f3.json", "f4.json"] {
        std::fs::copy(fixture(name), dir.path().join(name)).unwrap();
    }
    let run = || kplane(&["bench", "--dir", s(dir.path()), "--k", "4", "--no-timing"]).stdout;
    let first = run();
    assert_eq!(first, run());
    let text = String::from_utf8(first).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().nth(1).unwrap().starts_with("f1.json,4,2,4,2,0,0,"));
}

#[test]
fn refuses_4planar_on_denser_input() {
    let dir = TempDir::new().unwrap();
    let found = (0..20).find_map(|seed| {
        let p = dir.path().join(format!("g{seed}.json"));
        let seed = seed.to_string();
        assert_eq!(code(&["gen", "--n", "30", "--m", "60", "--k", "6", "--seed", &seed, "--out", s(&p)]), 0);
        let out = dir.path().join("out.json");
        let rep = dir.path().join("rep.json");
        assert_eq!(code(&["simplify", "--algo", "general", "-k", "6", "--in", s(&p), "--out", s(&out), "--report", s(&rep)]), 0);
        (json(&rep)["before"]["max_crossings"].as_u64().unwrap() > 4).then_some(p)
    });
    let p = found.expect("a 5- or 6-plane sample");
    let out = dir.path().join("x.json");
    assert_eq!(code(&["simplify", "--algo", "4planar", "--in", s(&p), "--out", s(&out)]), 1);
}
