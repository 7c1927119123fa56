use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_frobtower"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn example(dir: &Path, file: &str, args: &[&str]) -> PathBuf {
    let path = dir.join(file);
    let mut full = vec!["examples"];
    full.extend_from_slice(args);
    full.extend(["--out", path.to_str().unwrap()]);
    let out = run(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn catalog_is_listed() {
    let out = run(&["examples"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "group-pair"));
}

#[test]
fn unknown_example_lists_catalog() {
    let out = run(&["examples", "no-such-thing"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("trivial") && err.contains("skew-star-z3"), "{err}");
}

#[test]
fn examples_are_deterministic_and_have_sidecars() {
    let dir = tempfile::tempdir().unwrap();
    let a = example(dir.path(), "a.json", &["quadratic", "2"]);
    let b = example(dir.path(), "b.json", &["quadratic", "2"]);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert!(dir.path().join("a.expected.json").exists());
}

#[test]
fn trivial_extension_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let p = example(dir.path(), "trivial.json", &["trivial"]);
    let out = run(&["verify", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("0 failed"));
}

#[test]
fn non_normal_subgroup_reports_without_failing() {
    let dir = tempfile::tempdir().unwrap();
    let p = example(dir.path(), "s3a3.json", &["group-pair", "S3", "A3"]);
    let out = run(&["verify", p.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["hypotheses"]["irreducible"], false);

    let hopf = run(&["hopf", p.to_str().unwrap()]);
    assert_eq!(hopf.status.code(), Some(1));
    assert!(String::from_utf8(hopf.stderr).unwrap().contains("irreducibility failed"));
}

#[test]
fn verify_json_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let p = example(dir.path(), "fn.json", &["m2f2-skew-trace"]);
    let (o1, o2) = (dir.path().join("r1.json"), dir.path().join("r2.json"));
    for o in [&o1, &o2] {
        let out = run(&["verify", p.to_str().unwrap(), "--json", "--out", o.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&o1).unwrap(), std::fs::read(&o2).unwrap());
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, "{\"kind\": \"extension\", \"field\": ").unwrap();
    assert_eq!(run(&["verify", p.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["verify", "/nonexistent/input.json"]).status.code(), Some(2));
}

#[test]
fn pair_check_rejects_extension_files() {
    let dir = tempfile::tempdir().unwrap();
    let p = example(dir.path(), "t.json", &["trivial"]);
    assert_eq!(run(&["pair-check", p.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn hopf_writes_both_dumps() {
    let dir = tempfile::tempdir().unwrap();
    let p = example(dir.path(), "sp.json", &["skew-path-z2"]);
    let out_dir = dir.path().join("hopf");
    let out = run(&["hopf", p.to_str().unwrap(), "--out", out_dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    for f in ["hopf-a.json", "hopf-b.json"] {
        let v: serde_json::Value = serde_json::from_slice(&std::fs::read(out_dir.join(f)).unwrap()).unwrap();
        assert!(v.is_object());
    }
}

#[test]
fn tower_levels_truncate() {
    let dir = tempfile::tempdir().unwrap();
    let p = example(dir.path(), "q.json", &["quadratic", "2"]);
    let out = run(&["tower", p.to_str().unwrap(), "--levels", "1", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["dims"], serde_json::json!([1, 2, 4]));
    assert_eq!(v["levels"].as_array().unwrap().len(), 1);
}

#[test]
fn pair_check_accepts_group_pairing() {
    use frobtower::exact::Field;
    use frobtower::io::{to_canonical_json, InputFile, PairingSpec};
    use frobtower::models::{group_hopf, Group};

    let gh = group_hopf(Field::Rational, &Group::symmetric3()).unwrap();
    let spec = PairingSpec { name: "s3".into(), a: gh.kg.algebra.clone(), b: gh.kfun.algebra.clone(), pairing: gh.pairing.clone(), antipode: None };
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("s3.json");
    std::fs::write(&p, to_canonical_json(&InputFile::Pairing(spec.to_file(None, None)))).unwrap();
    let out = run(&["pair-check", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(String::from_utf8(out.stdout).unwrap().contains("pairing-duality"));
}
