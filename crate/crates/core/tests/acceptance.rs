//! Acceptance criteria 1-10, one PASS/FAIL line each. Runs without the
//! libtest harness so the lines are always printed.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use frobtower::algebra::{endomorphism_algebra, LinMap, RightModule};
use frobtower::depth_two::{check_depth_two, nakayama_relations, second_centralizers};
use frobtower::exact::{Field, Scalar, Vector};
use frobtower::frobenius::{compose, nakayama, separability_element_field, simple_extension, solve_dual_bases, verify_conditional_expectation, Extension, FrobeniusSystem};
use frobtower::galois::{psi_map, smash_product, verify_action};
use frobtower::hopf::{bialgebra_from_abstract_pairing, dualize, verify_hopf_axioms, AntipodeMode};
use frobtower::io::ExtensionSpec;
use frobtower::models::catalog::{self, quadratic_field};
use frobtower::models::galois_models::{galois_quadratic, translation};
use frobtower::models::{galois_frobenius_system, generate_example, group_hopf, Group};
use frobtower::report::{depth_two_summary, reconstruct, run_extension, Options, PipelineReport};
use frobtower::tower::{build_tower, endo_ring_iso, verify_braid_relations, verify_pimsner_popa, TowerData};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn system(spec: &ExtensionSpec) -> FrobeniusSystem {
    let ext = spec.extension().unwrap();
    let e = spec.expectation_map(&ext).unwrap().unwrap();
    solve_dual_bases(&ext, &e).unwrap()
}

fn example(name: &str, params: &[&str]) -> ExtensionSpec {
    let params: Vec<String> = params.iter().map(|s| s.to_string()).collect();
    generate_example(name, &params).unwrap()
}

/// EXT0 to EXT4.
fn ext(i: usize) -> ExtensionSpec {
    match i {
        0 => example("trivial", &[]),
        1 => example("group-pair", &["S3", "A3"]),
        2 => example("group-pair", &["S3", "C2"]),
        3 => example("quadratic", &["2"]),
        4 => example("m2f2-skew-trace", &[]),
        _ => unreachable!(),
    }
}

fn tower(spec: &ExtensionSpec) -> TowerData {
    build_tower(&system(spec)).unwrap()
}

fn run(spec: &ExtensionSpec) -> PipelineReport {
    run_extension(spec, &Options::default()).unwrap()
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let spec = ext(4);
    let f2 = Field::Prime(2);
    let ext = spec.extension().unwrap();
    let e = spec.expectation_map(&ext).unwrap().ok_or("EXT4 carries no expectation")?;
    // E(A) = a₁₁ + a₁₂ + a₂₁ on the basis e₁₁, e₁₂, e₂₁, e₂₂
    let images: Vec<Vector> = (0..4).map(|i| e.image(i)).collect();
    let want: Vec<Vector> = [1, 1, 1, 0].iter().map(|&v| vec![f2.from_i64(v)]).collect();
    ensure(images == want, || format!("E on matrix units is {images:?}"))?;
    let rep = verify_conditional_expectation(&ext, &e);
    ensure(rep.passes(), || format!("{rep:?}"))?;
    let solved = solve_dual_bases(&ext, &e).map_err(|err| err.to_string())?;
    let tensor = spec.dual_bases.clone().ok_or("EXT4 carries no dual bases")?;
    let given = FrobeniusSystem::from_parts(ext.clone(), e, solved.quotient.clone(), tensor).map_err(|err| err.to_string())?;
    ensure(given.index == *ext.upper.one(), || format!("Σ xᵢyᵢ = {:?}", given.index))?;
    ensure(given.tensor_class() == solved.tensor_class(), || "supplied tensor differs from the solved one".into())?;
    ensure(given.e_of_one() == Some(f2.one()), || "E(1) != 1".into())?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))
}

fn criterion_2() -> Check {
    let q = Field::Rational;
    let f7 = Field::Prime(7);
    // x² = 2, and x³ = x + 3 (irreducible over F₇)
    for (field, coeffs) in [(q, vec![q.from_i64(2), q.zero()]), (f7, vec![f7.from_i64(3), f7.one(), f7.zero()])] {
        let alg = simple_extension(field, &coeffs);
        ensure(alg.dim() == coeffs.len(), || "wrong extension degree".into())?;
        let s = separability_element_field(field, &coeffs).map_err(|e| e.to_string())?;
        ensure(s.multiplication_is_one, || format!("μ(e) != 1 over {field}"))?;
        ensure(s.central, || format!("me != em over {field}"))?;
    }
    Ok(())
}

fn criterion_3() -> Check {
    let start = Instant::now();
    let mut largest = 0;
    for i in 0..5 {
        let t = tower(&ext(i));
        largest = largest.max(t.m2().dim());
        let br = verify_braid_relations(&t);
        ensure(br.holds(), || format!("EXT{i} braid: {br:?}"))?;
        ensure(br.e_m_of_e1 && br.e_m1_of_e2, || format!("EXT{i}: E_{{M_i}}(e_{{i+1}}) != λ"))?;
        let pp = verify_pimsner_popa(&t);
        ensure(pp.holds(), || format!("EXT{i} Pimsner-Popa: {pp:?}"))?;
        for (k, level) in t.levels.iter().enumerate() {
            let below = if k == 0 { &t.base } else { &t.levels[k - 1].system };
            let iso = endo_ring_iso(below, level).map_err(|e| format!("EXT{i} level {}: {e}", k + 1))?;
            ensure(iso.is_isomorphism && iso.inverse_agrees, || format!("EXT{i} level {}: {iso:?}", k + 1))?;
        }
    }
    let elapsed = start.elapsed();
    println!("    towers EXT0-EXT4: largest algebra dim {largest}, {elapsed:?}");
    ensure(elapsed < Duration::from_secs(30), || format!("took {elapsed:?}"))
}

fn criterion_4() -> Check {
    let f = Field::Rational;
    let q = |n| f.from_i64(n);
    let t = system(&catalog::trivial(f));
    let (_, rep) = compose(&t, &t).map_err(|e| e.to_string())?;
    ensure(rep.lagrange == Some(true), || "Lagrange fails on k ⊆ k ⊆ k".into())?;

    // Q ⊆ Q(√2) ⊆ Q(√2, i)
    let mn = system(&catalog::quadratic(f, 2));
    let (r, emb) = catalog::biquadratic();
    let ext_rm = Extension::new(r, quadratic_field(f, 2), LinMap::from_images(f, 4, &emb)).map_err(|e| e.to_string())?;
    let fmap = LinMap::from_images(f, 2, &[vec![q(1), q(0)], vec![q(0), q(0)], vec![q(0), q(1)], vec![q(0), q(0)]]);
    let rm = solve_dual_bases(&ext_rm, &fmap).map_err(|e| e.to_string())?;
    let (rn, _) = compose(&rm, &mn).map_err(|e| e.to_string())?;
    ensure(rn.frobenius_failure().is_none(), || "composite fails the Frobenius equations".into())?;
    // [R:N] = [R:M][M:N]
    let product = rm.lambda_inv.clone().zip(mn.lambda_inv.clone()).map(|(a, b)| &a * &b);
    ensure(rn.lambda_inv == product && rn.lambda_inv == Some(q(4)), || format!("index {:?} vs {product:?}", rn.lambda_inv))?;

    // N ⊆ M ⊆ M₁ for the skew group algebras: E_M ∘ E_{M₁} over both steps
    let mut lagrange_seen = false;
    for spec in [catalog::skew_path_z2(), catalog::skew_star_z3()] {
        let tw = tower(&spec);
        let (c, rep) = compose(&tw.levels[0].system, &tw.base).map_err(|e| format!("{}: {e}", spec.name))?;
        ensure(c.frobenius_failure().is_none(), || format!("{}: composite fails the Frobenius equations", spec.name))?;
        ensure(rep.lagrange != Some(false), || format!("{}: Lagrange equation fails", spec.name))?;
        lagrange_seen |= rep.lagrange == Some(true);
    }
    println!("    Lagrange on irreducible skew-group factors: {}", if lagrange_seen { "checked" } else { "no irreducible pair" });
    Ok(())
}

fn criterion_5() -> Check {
    for field in [Field::Rational, Field::Prime(7)] {
        for g in [Group::cyclic(2), Group::cyclic(3), Group::symmetric3()] {
            let gh = group_hopf(field, &g).map_err(|e| e.to_string())?;
            let (data, hb, report) = bialgebra_from_abstract_pairing(gh.kg.algebra.clone(), gh.kfun.algebra.clone(), gh.pairing.clone(), AntipodeMode::Solve)
                .map_err(|e| e.to_string())?;
            let tag = format!("|G| = {} over {field}", g.order());
            for (k, o) in report.entries() {
                ensure(o.is_pass(), || format!("{tag}: {k}: {o:?}"))?;
            }
            ensure(verify_hopf_axioms(&hb).all_pass(), || format!("{tag}: axioms on B"))?;
            ensure(hb.delta == gh.kfun.delta && hb.eps == gh.kfun.eps && hb.antipode == gh.kfun.antipode, || format!("{tag}: k^G differs"))?;
            let ha = dualize(&data, &hb);
            ensure(ha.delta == gh.kg.delta && ha.eps == gh.kg.eps && ha.antipode == gh.kg.antipode, || format!("{tag}: k[G] differs"))?;
            let s = hb.antipode.clone().ok_or("no antipode")?;
            ensure(s.compose(&s).unwrap() == LinMap::identity(field, g.order()), || format!("{tag}: S² != id"))?;
        }
    }
    Ok(())
}

fn criterion_6() -> Check {
    let bundles = [galois_quadratic(), translation(Field::Prime(7), &Group::cyclic(3)).map_err(|e| e.to_string())?];
    for bundle in &bundles {
        let tag = &bundle.name;
        ensure(verify_action(&bundle.action).all_pass(), || format!("{tag}: action"))?;
        let sys = galois_frobenius_system(bundle, None).map_err(|e| format!("{tag}: {e}"))?;
        let rep = verify_conditional_expectation(&sys.ext, &sys.e);
        ensure(rep.passes(), || format!("{tag}: {rep:?}"))?;
        let order = sys.field().from_i64(bundle.hopf.kg.dim() as i64);
        ensure(bundle.hopf.index() == order, || format!("{tag}: f(1) != |G|"))?;
        ensure(sys.lambda_inv == Some(order), || format!("{tag}: Σ xᵢyᵢ = {:?}", sys.index))?;
        let sm = smash_product(&bundle.action).map_err(|e| format!("{tag}: {e:?}"))?;
        let end = endomorphism_algebra(&RightModule::restriction(&sys.ext.upper, &sys.ext.lower, &sys.ext.incl)).map_err(|e| e.to_string())?;
        let psi = psi_map(&sm, &bundle.action, &end, Some((&sys, &bundle.hopf.t)));
        for (k, o) in psi.entries() {
            ensure(o.is_pass(), || format!("{tag}: Ψ {k}: {o:?}"))?;
        }
    }
    Ok(())
}

fn criterion_7() -> Check {
    let spec = ext(0);
    let r = run(&spec);
    let bad: Vec<&str> = r.checks.iter().filter(|c| !c.is_pass()).map(|c| c.id.as_str()).collect();
    ensure(bad.is_empty(), || format!("not passing: {bad:?}"))?;
    for stage in ["depth2.", "hopf.pairing", "hopf.b.antipode-left", "galois.theta.", "galois.cleft.cocycle-trivial", "galois.galois-map"] {
        ensure(r.checks.iter().any(|c| c.id.starts_with(stage)), || format!("stage {stage} missing"))?;
    }
    let rec = reconstruct(&frobtower::io::InputFile::Extension(spec.to_file())).unwrap()?;
    ensure(rec.a.dim() == 1 && rec.b.dim() == 1, || format!("dim A = {}, dim B = {}", rec.a.dim(), rec.b.dim()))
}

fn criterion_8() -> Check {
    for i in [1, 2] {
        let r = run(&ext(i));
        ensure(r.verdict.failed == 0, || format!("EXT{i}: {} failures", r.verdict.failed))?;
        let gated: Vec<_> = r.checks.iter().filter(|c| c.id.starts_with("hopf.") || c.id.starts_with("galois.")).collect();
        ensure(!gated.is_empty(), || format!("EXT{i}: gated checks missing"))?;
        for c in gated {
            let reason = c.reason.as_deref().unwrap_or("");
            ensure(c.status == "skipped", || format!("EXT{i}: {} is {}", c.id, c.status))?;
            ensure(reason.contains("irreducibility failed") || reason.contains("depth-two failed"), || format!("EXT{i}: {} reason {reason:?}", c.id))?;
        }
        ensure(r.hypotheses.irreducible == Some(false), || format!("EXT{i} reported irreducible"))?;
    }
    let normal = depth_two_summary(&tower(&ext(1)));
    let non_normal = depth_two_summary(&tower(&ext(2)));
    ensure(normal.depth_two && !non_normal.depth_two, || "normal/non-normal depth-two verdicts do not differ as expected".into())?;
    for (tag, s) in [("S3/A3", &normal), ("S3/C2", &non_normal)] {
        ensure(s.level1.brute_force_agrees && s.level2.brute_force_agrees, || format!("{tag}: brute force disagrees"))?;
    }
    Ok(())
}

fn criterion_9() -> Check {
    let f = Field::Rational;
    let sys = system(&catalog::twisted_trace_m2());
    let m = sys.upper().clone();
    let naka = nakayama(&sys, &sys.ext.centralizer()).map_err(|e| e.to_string())?;
    let u: Vector = [1, 0, 0, 2].iter().map(|&v| f.from_i64(v)).collect();
    let half: Scalar = f.ratio(1, 2).unwrap();
    let u_inv: Vector = vec![f.one(), f.zero(), f.zero(), half];
    for i in 0..4 {
        let c = m.basis(i);
        let got = naka.apply(&c).ok_or("matrix unit outside the scope")?;
        ensure(got == m.mul_all(&[&u_inv, &c, &u]), || format!("q(e_{i}) = {got:?}"))?;
    }

    let mut checked = Vec::new();
    for spec in [ext(0), ext(1), ext(3), ext(4), catalog::skew_path_z2(), catalog::skew_star_z3()] {
        let t = tower(&spec);
        let d2 = check_depth_two(&t, second_centralizers(&t));
        // relations need F faithful on C; other models are reported and skipped
        let Ok(rel) = nakayama_relations(&t, &d2) else { continue };
        ensure(rel.q_fixes_e1 && rel.q_fixes_e2, || format!("{}: q moves a Jones idempotent", spec.name))?;
        checked.push(spec.name.clone());
    }
    println!("    q(e₁) = e₁, q(e₂) = e₂ on: {}", checked.join(", "));
    ensure(!checked.is_empty(), || "no model with F faithful on C".into())
}

fn criterion_10() -> Check {
    let examples: [(&str, &[&str]); 9] = [
        ("trivial", &[]),
        ("group-pair", &["S3", "A3"]),
        ("group-pair", &["S3", "C2"]),
        ("group-pair", &["Z3", "1"]),
        ("quadratic", &["2"]),
        ("m2f2-skew-trace", &[]),
        ("twisted-trace-m2q", &[]),
        ("skew-path-z2", &[]),
        ("skew-star-z3", &[]),
    ];
    for (name, params) in examples {
        let spec = example(name, params);
        let a = run(&spec).to_json();
        let b = run(&spec).to_json();
        ensure(a == b, || format!("{name} {params:?}: reports differ"))?;
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("M₂(F₂) example with E(a) = a₁₁ + a₁₂ + a₂₁ verified in under 1 s", criterion_1),
        ("separability elements over Q and F₇", criterion_2),
        ("tower identities on EXT0-EXT4 in under 30 s", criterion_3),
        ("composition and the Lagrange equation", criterion_4),
        ("Hopf algebras from abstract group pairings", criterion_5),
        ("Galois models give Frobenius systems and Ψ isomorphisms", criterion_6),
        ("trivial extension passes every stage", criterion_7),
        ("hypothesis gating and independent depth-two re-solve", criterion_8),
        ("Nakayama automorphisms", criterion_9),
        ("deterministic reports", criterion_10),
    ];
    let mut failed = Vec::new();
    for (i, (title, check)) in criteria.iter().enumerate() {
        let n = i + 1;
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        match outcome {
            Ok(()) => println!("PASS criterion {n}: {title}"),
            Err(why) => {
                println!("FAIL criterion {n}: {title}: {why}");
                failed.push(n);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed.len(), criteria.len());
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
