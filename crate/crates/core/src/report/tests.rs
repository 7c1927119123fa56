use super::*;
use crate::io::{parse_input, to_canonical_json, ExtensionSpec, InputFile, PairingSpec};
use crate::exact::Field;
use crate::models::{catalog, generate_example, group_hopf, sidecar, Group};

fn run(spec: &ExtensionSpec) -> PipelineReport {
    run_extension(spec, &Options::default()).unwrap()
}

#[test]
fn registry_ids_are_unique() {
    let mut ids: Vec<&str> = registry::REGISTRY.iter().map(|(k, _)| *k).collect();
    let n = ids.len();
    ids.sort_unstable();
    ids.dedup();
    assert_eq!(ids.len(), n);
}

#[test]
fn trivial_passes_everything() {
    let r = run(&catalog::trivial(Field::Rational));
    assert_eq!(r.exit_code(), 0);
    assert!(r.checks.iter().all(CheckResult::is_pass), "{}", r.to_text());
    assert_eq!((r.dims["A"], r.dims["B"]), (1, 1));
    assert!(r.verdict.conclusions_certified.contains(&"galois-extension"));
    // every extension id is reported exactly once, in registry order
    let ids: Vec<&str> = r.checks.iter().map(|c| c.id.as_str()).collect();
    let expected: Vec<&str> = registry::REGISTRY.iter().map(|(k, _)| *k).filter(|k| !k.starts_with("pairing.")).collect();
    assert_eq!(ids, expected);
}

#[test]
fn gated_checks_cite_the_hypothesis() {
    let r = run(&generate_example("group-pair", &["S3".into(), "A3".into()]).unwrap());
    assert_eq!(r.exit_code(), 0);
    assert_eq!(r.hypotheses.irreducible, Some(false));
    assert_eq!(r.hypotheses.depth_two, Some(true));
    for c in r.checks.iter().filter(|c| c.id.starts_with("hopf.") || c.id.starts_with("galois.")) {
        assert_eq!(c.status, "skipped");
        assert!(c.reason.as_deref().unwrap().contains("irreducibility failed"), "{c:?}");
    }
    assert!(r.checks.iter().filter(|c| c.id.starts_with("tower.")).all(CheckResult::is_pass));
}

#[test]
fn levels_one_stops_after_m1() {
    let opts = Options { levels: 1, ..Options::default() };
    let r = run_extension(&catalog::skew_path_z2(), &opts).unwrap();
    let status = |id: &str| r.checks.iter().find(|c| c.id == id).unwrap().status;
    assert_eq!(status("tower.endo-iso"), "pass");
    assert_eq!(status("tower.braid"), "skipped");
    assert!(!r.dims.contains_key("M2"));
}

#[test]
fn check_filter_and_timing() {
    let opts = Options { check: Some("tower.braid".into()), timing: true, ..Options::default() };
    let r = run_extension(&catalog::quadratic(Field::Rational, 2), &opts).unwrap();
    assert_eq!(r.checks.len(), 1);
    assert!(r.checks[0].timing_ms.is_some());
    assert!(run(&catalog::quadratic(Field::Rational, 2)).checks.iter().all(|c| c.timing_ms.is_none()));
}

#[test]
fn missing_expectation_skips_everything() {
    let mut spec = catalog::quadratic(Field::Rational, 2);
    spec.expectation = None;
    let r = run(&spec);
    assert_eq!(r.exit_code(), 0);
    assert!(r.checks.iter().all(|c| c.status == "skipped"));
}

#[test]
fn perturbed_expectation_rejects_supplied_dual_bases() {
    let mut spec = catalog::quadratic(Field::Rational, 2);
    // E(a + b√2) = a + b: still Frobenius, but the catalog dual bases belong
    // to E(a + b√2) = a and the index is no longer scalar
    let rows = spec.expectation.as_mut().unwrap();
    rows[1] = rows[0].clone();
    let r = run(&spec);
    let status = |id: &str| r.checks.iter().find(|c| c.id == id).unwrap().status;
    assert_eq!(status("frobenius.dual-bases"), "pass");
    assert_eq!(status("frobenius.supplied-dual-bases"), "fail");
    assert_eq!(status("frobenius.index-scalar"), "skipped");
    assert_eq!(status("tower.braid"), "skipped");
    assert_eq!(r.exit_code(), 1);
}

#[test]
fn zero_expectation_is_not_frobenius() {
    let mut spec = catalog::quadratic(Field::Rational, 2);
    spec.dual_bases = None;
    let zero = spec.upper.zero();
    spec.expectation = Some(vec![zero.clone(), zero]);
    let r = run(&spec);
    assert_eq!(r.checks[0].status, "pass");
    assert_eq!(r.checks[1].status, "fail");
    assert_eq!(r.hypotheses.frobenius, Some(false));
    assert_eq!(r.exit_code(), 1);
}

#[test]
fn normalization_is_recorded() {
    let r = run(&catalog::twisted_trace_m2());
    assert_eq!(r.notes.len(), 1);
    assert_eq!(r.index.as_deref(), Some("9/2"));
}

#[test]
fn pairing_report() {
    let gh = group_hopf(Field::Rational, &Group::cyclic(3)).unwrap();
    let spec = PairingSpec { name: "z3".into(), a: gh.kg.algebra.clone(), b: gh.kfun.algebra.clone(), pairing: gh.pairing.clone(), antipode: None };
    let r = run_pairing(&spec, &Options::default()).unwrap();
    assert_eq!(r.exit_code(), 0, "{}", r.to_text());
    assert!(r.checks.iter().all(CheckResult::is_pass));
    assert_eq!(r.verdict.conclusions_certified, vec!["hopf-algebra-b", "hopf-algebra-a", "pairing-duality"]);
    // round trip through the file format
    let text = to_canonical_json(&InputFile::Pairing(spec.to_file(None, None)));
    assert_eq!(run_input(&parse_input(&text).unwrap(), &Options::default()).unwrap(), r);
}

#[test]
fn reconstruction_reasons() {
    let ext0 = InputFile::Extension(catalog::trivial(Field::Rational).to_file());
    let rec = reconstruct(&ext0).unwrap().unwrap();
    assert_eq!((rec.a.dim(), rec.b.dim()), (1, 1));
    let ext1 = InputFile::Extension(generate_example("group-pair", &["S3".into(), "A3".into()]).unwrap().to_file());
    assert!(reconstruct(&ext1).unwrap().unwrap_err().contains("irreducibility failed"));
}

#[test]
fn sidecars_agree_with_reports() {
    for (name, params) in [("trivial", vec![]), ("group-pair", vec!["S3", "A3"]), ("group-pair", vec!["Z4", "Z4"]), ("quadratic", vec!["3"]), ("m2f2-skew-trace", vec![]), ("twisted-trace-m2q", vec![]), ("skew-path-z2", vec![])] {
        let params: Vec<String> = params.into_iter().map(String::from).collect();
        let sc = sidecar(name, &params).unwrap();
        let r = run(&generate_example(name, &params).unwrap());
        assert_eq!(sidecar_mismatches(&sc, &r), Vec::<String>::new(), "{name} {params:?}");
    }
}
