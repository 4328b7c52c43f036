//! The binary against the fixtures, with every reported witness replayed
//! through the library.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

use exangulate::cli::{load, SessionOptions};
use exangulate::exangulated::{inner_exactness_failures, realize, Side};
use exangulate::localization::IdealQuotient;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_exangulate")).args(args).env_remove("EXANGULATE_SEED").output().unwrap()
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json", "-"];
    all.extend_from_slice(args);
    let out = run(&all);
    (out.status.code().unwrap(), serde_json::from_slice(&out.stdout).unwrap())
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("exangulate-{}-{name}", std::process::id()));
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn fixture_exit_codes() {
    for (file, code, verdict) in [
        ("a4-trivial.exg", 0, "2-exangulated"),
        ("a4-cluster.exg", 20, "fails weak-kc"),
        ("a4-projinj.exg", 20, "fails weak-kc"),
        ("a4-saturate-mr1.exg", 30, "MR precondition failed"),
    ] {
        let path = fixture(file);
        let out = run(&["localize", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(code), "{file}");
        let text = String::from_utf8(out.stdout).unwrap();
        assert!(text.ends_with(&format!("verdict: {verdict} (exit {code})\n")), "{file}: {text}");
    }
    let out = run(&["check", fixture("a4-cluster.exg").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn json_reports_are_byte_identical_across_runs() {
    for file in ["a4-cluster.exg", "a4-trivial.exg", "a4-saturate-mr1.exg"] {
        let path = fixture(file);
        let a = run(&["--json", "-", "localize", path.to_str().unwrap()]).stdout;
        let b = run(&["--json", "-", "localize", path.to_str().unwrap()]).stdout;
        assert_eq!(a, b, "{file}");
        let v: Value = serde_json::from_slice(&a).unwrap();
        assert_eq!(v["schema"], 1);
    }
    let out = scratch("report.json", "");
    let path = fixture("a4-cluster.exg");
    let status = run(&["--json", out.to_str().unwrap(), "localize", path.to_str().unwrap()]);
    assert_eq!(status.status.code(), Some(20));
    assert_eq!(std::fs::read(&out).unwrap(), run(&["--json", "-", "localize", path.to_str().unwrap()]).stdout);
    std::fs::remove_file(out).ok();
}

/// Re-realizes each reported extension in the base category, projects to
/// the quotient by `N` and confirms the reported exactness failure.
fn replay_weak_kc(file: &str) -> usize {
    let path = fixture(file);
    let (code, rep) = run_json(&["localize", path.to_str().unwrap()]);
    assert_eq!(code, 20);
    let session = load(&path, SessionOptions::default()).unwrap();
    let base = session.presentation();
    let nf = session.localize_options().unwrap().nf;
    let q = IdealQuotient::new(base, &nf).unwrap();
    let failures = rep["weak_kc_failures"].as_array().unwrap();
    for w in failures {
        let ext = &w["extension"];
        let label = |v: &Value| session.object(v.as_array().unwrap()[0].as_str().unwrap()).unwrap();
        let (c, a) = (label(&ext["c"]), label(&ext["a"]));
        let delta: Vec<u32> = serde_json::from_value(ext["coords"].clone()).unwrap();
        let x = session.with_realizer(|r| realize(r, &a, &c, &delta)).unwrap();
        let terms: Vec<String> = x.terms.iter().map(|t| base.object_label(t)).collect();
        assert_eq!(Value::from(terms), w["objects"]);
        let f = &w["failure"];
        let found = inner_exactness_failures(q.category(), &q.project_complex(&x));
        let t = base.generator_index(f["test_object"].as_str().unwrap()).unwrap();
        assert!(
            found.iter().any(|e| serde_json::to_value(e.side).unwrap() == f["side"] && e.position == f["position"].as_u64().unwrap() as usize && e.test_object == t),
            "{w}"
        );
        // The same complex is exact in the base category.
        assert!(inner_exactness_failures(base, &x).is_empty());
    }
    failures.len()
}

#[test]
fn weak_kc_witnesses_replay() {
    assert_eq!(replay_weak_kc("a4-cluster.exg"), 5);
    assert_eq!(replay_weak_kc("a4-projinj.exg"), 2);
}

#[test]
fn sequence_verdicts_replay() {
    let path = fixture("a4-cluster.exg");
    let (_, rep) = run_json(&["check", path.to_str().unwrap()]);
    let seqs = rep["sequences"].as_array().unwrap();
    let session = load(&path, SessionOptions::default()).unwrap();
    let base = session.presentation();
    let specs = session.sequences().unwrap();
    assert_eq!(seqs.len(), specs.len());
    let printed = &seqs[0];
    assert_eq!(printed["n_exangle"], false);
    assert_eq!(printed["failure"]["test_object"], "3/4");
    let x = specs[0].complex.clone().unwrap();
    let found = inner_exactness_failures(base, &x);
    assert!(found.iter().any(|e| e.side == Side::Contravariant && e.position == 1 && base.label(e.test_object) == "3/4"), "{found:?}");
    assert_eq!(seqs[1]["distinguished"], true);
    let y = specs[1].complex.clone().unwrap();
    assert!(session.with_realizer(|r| r.realizes(&y, &specs[1].delta)).unwrap());
}

#[test]
fn hom_and_ext_dimensions() {
    let path = fixture("a4-cluster.exg");
    let p = path.to_str().unwrap();
    let out = run(&["hom", p, "4", "2/3/4"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "dim Hom(4, 2/3/4) = 1\n");
    let out = run(&["ext", p, "1", "4"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "dim E(1, 4) = 1\n");
    let out = run(&["ext", p, "4", "1"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "dim E(4, 1) = 0\n");
    let (code, v) = run_json(&["hom", p, "4 + 3/4", "2/3/4 + 1/2/3"]);
    assert_eq!(code, 0);
    assert_eq!((v["schema"].as_u64(), v["kind"].as_str(), v["dim"].as_u64()), (Some(1), Some("hom"), Some(3)));
    let out = run(&["hom", p, "4", "5/6"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("unknown object `5/6`"));
}

#[test]
fn syntax_errors_report_their_line() {
    let good = std::fs::read_to_string(fixture("a4-trivial.exg")).unwrap();
    let bad = good.replace("vertices = 4", "vertices = ");
    let line = bad.lines().position(|l| l.starts_with("vertices")).unwrap() + 1;
    let path = scratch("bad.exg", &bad);
    let out = run(&["localize", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.starts_with("error: ") && err.contains(&format!("line {line}")), "{err}");
    let out = run(&["localize", "/nonexistent/file.exg"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn prime_override_and_seed() {
    let path = fixture("a4-cluster.exg");
    let (code, v) = run_json(&["--prime", "3", "localize", path.to_str().unwrap()]);
    assert_eq!((code, v["prime"].as_u64()), (20, Some(3)));
    assert_eq!(v["generators"], serde_json::json!(["4", "3/4", "2/3/4", "1/2/3", "1/2", "1"]));
    let out = Command::new(env!("CARGO_BIN_EXE_exangulate")).args(["localize", path.to_str().unwrap()]).env("EXANGULATE_SEED", "17").output().unwrap();
    assert_eq!(out.status.code(), Some(20));
    let out = Command::new(env!("CARGO_BIN_EXE_exangulate")).args(["localize", path.to_str().unwrap()]).env("EXANGULATE_SEED", "x").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["--prime", "4", "localize", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verbose_prints_every_witness() {
    let path = fixture("a4-cluster.exg");
    let terse = String::from_utf8(run(&["localize", path.to_str().unwrap()]).stdout).unwrap();
    let loud = String::from_utf8(run(&["-v", "localize", path.to_str().unwrap()]).stdout).unwrap();
    assert!(terse.contains("(5 failures in total)"));
    assert!(loud.matches("\"test_object\"").count() >= 5);
}
