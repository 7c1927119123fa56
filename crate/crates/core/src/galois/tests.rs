use super::*;
use crate::algebra::{endomorphism_algebra, RightModule};
use crate::depth_two::{check_depth_two, second_centralizers, DepthTwoData};
use crate::frobenius::solve_dual_bases;
use crate::hopf::{compute_pairing, dualize, tower_hopf, TowerPairing};
use crate::io::ExtensionSpec;
use crate::models::galois_models::{galois_quadratic, grading_agrees, translation, trivial_quadratic};
use crate::models::{catalog, galois_frobenius_system, group_hopf, Group, ModelError};
use crate::tower::{build_tower, TowerData};

struct Setup {
    t: TowerData,
    d2: DepthTwoData,
    tp: TowerPairing,
    hb: HopfStructure,
    ha: HopfStructure,
}

fn setup(spec: &ExtensionSpec) -> Setup {
    let ext = spec.extension().unwrap();
    let e = spec.expectation_map(&ext).unwrap().unwrap();
    let t = build_tower(&solve_dual_bases(&ext, &e).unwrap()).unwrap();
    let d2 = check_depth_two(&t, second_centralizers(&t));
    let tp = compute_pairing(&t, &d2).unwrap();
    let hb = tower_hopf(&t, &tp).unwrap();
    let ha = dualize(&tp.data, &hb);
    Setup { t, d2, tp, hb, ha }
}

fn assert_pass<K: std::fmt::Display>(entries: Vec<(K, &Outcome)>) {
    for (k, o) in entries {
        assert!(o.is_pass(), "{k}: {o:?}");
    }
}

fn full_tower_checks(s: &Setup) -> (ModuleAction, ModuleAction) {
    let b_act = action_b_on_m1(&s.t, &s.tp, &s.hb);
    assert_pass(verify_b_action(&s.t, &s.tp, &b_act).entries());
    assert_pass(theta_report(&s.t, &s.tp, &s.d2.cents, &b_act).entries());
    let a_act = action_a_on_m(&s.t, &s.tp, &s.ha).unwrap();
    assert_pass(verify_a_action(&s.t, &s.tp, &a_act).entries());
    assert_pass(cleft_data(&s.t, &s.tp, &s.ha, &b_act, &a_act).entries());
    let beta = galois_map_tower(&s.t, &s.tp, &s.hb, &a_act);
    assert!(beta.bijective(), "{beta:?}");
    (b_act, a_act)
}

#[test]
fn trivial_tower() {
    let s = setup(&catalog::trivial(Field::Rational));
    let (b_act, _) = full_tower_checks(&s);
    assert_eq!(b_act.matrices, vec![Matrix::identity(Field::Rational, 1)]);
}

#[test]
fn skew_path_tower() {
    let s = setup(&catalog::skew_path_z2());
    let (_, a_act) = full_tower_checks(&s);
    assert!(grading_agrees(&s.t, &s.tp, &s.hb, &a_act, &Group::cyclic(2)).is_pass());
}

#[test]
fn skew_star_tower() {
    let s = setup(&catalog::skew_star_z3());
    let (_, a_act) = full_tower_checks(&s);
    assert!(grading_agrees(&s.t, &s.tp, &s.hb, &a_act, &Group::cyclic(3)).is_pass());
}

#[test]
fn corrupted_action_is_caught() {
    let s = setup(&catalog::skew_path_z2());
    let mut b_act = action_b_on_m1(&s.t, &s.tp, &s.hb);
    let f = Field::Rational;
    let d = b_act.algebra.dim();
    // swap two columns of a non-unit action matrix
    let m = &b_act.matrices[1];
    b_act.matrices[1] = Matrix::from_fn(f, d, d, |r, c| m.get(r, [1, 0].get(c).copied().unwrap_or(c)).clone());
    assert!(!verify_action(&b_act).all_pass());
    let theta = theta_report(&s.t, &s.tp, &s.d2.cents, &b_act);
    match theta.theta_m1 {
        Outcome::Fail { witness } => assert!(witness.get("multiplicative_failure").is_some()),
        other => panic!("expected failure, got {other:?}"),
    }
}

fn end_of(sys: &FrobeniusSystem) -> crate::algebra::EndAlgebra {
    endomorphism_algebra(&RightModule::restriction(&sys.ext.upper, &sys.ext.lower, &sys.ext.incl)).unwrap()
}

#[test]
fn quadratic_galois_model() {
    let bundle = galois_quadratic();
    assert!(verify_action(&bundle.action).all_pass());
    let sys = galois_frobenius_system(&bundle, None).unwrap();
    assert_eq!(sys.ext.lower.dim(), 1);
    assert_eq!(sys.lambda_inv, Some(Field::Rational.from_i64(2)));
    // E(a + b√2) = a
    assert_eq!(sys.e.image(0), vec![Field::Rational.one()]);
    assert_eq!(sys.e.image(1), vec![Field::Rational.zero()]);
    let sm = smash_product(&bundle.action).unwrap();
    assert_eq!(sm.algebra.dim(), 4);
    let end = end_of(&sys);
    assert_eq!(end.algebra.dim(), 4);
    let psi = psi_map(&sm, &bundle.action, &end, Some((&sys, &bundle.hopf.t)));
    assert_pass(psi.entries());

    let rho = coaction_from_action(&bundle.action, &bundle.hopf.pairing.columns());
    let beta = galois_map(&sys.ext.upper, &sys.quotient, sys.ext.lower_generators(), &rho, bundle.hopf.kfun.algebra.one());
    assert!(beta.bijective(), "{beta:?}");
    assert_eq!((beta.source_dim, beta.target_dim), (4, 4));
}

#[test]
fn translation_model_over_f7() {
    let bundle = translation(Field::Prime(7), &Group::cyclic(3)).unwrap();
    assert!(verify_action(&bundle.action).all_pass());
    let sys = galois_frobenius_system(&bundle, None).unwrap();
    assert_eq!(sys.lambda_inv, Some(Field::Prime(7).from_i64(3)));
    let sm = smash_product(&bundle.action).unwrap();
    let end = end_of(&sys);
    assert_eq!(end.algebra.dim(), 9);
    assert_pass(psi_map(&sm, &bundle.action, &end, Some((&sys, &bundle.hopf.t))).entries());
}

#[test]
fn trivial_coaction_is_not_galois() {
    let bundle = trivial_quadratic();
    let x = &bundle.action.algebra;
    let q = crate::frobenius::Extension::from_embedding(x.clone(), &[x.basis(0), x.basis(1)]).unwrap();
    let quotient = TensorQuotient::new(x, q.lower_generators());
    let rho = coaction_from_action(&bundle.action, &bundle.hopf.pairing.columns());
    let beta = galois_map(x, &quotient, q.lower_generators(), &rho, bundle.hopf.kfun.algebra.one());
    assert!(!beta.bijective());
    assert_eq!((beta.source_dim, beta.target_dim), (2, 4));

    let scalars = Subspace::span(Field::Rational, 2, [x.one().clone()]);
    assert!(matches!(galois_frobenius_system(&bundle, Some(&scalars)), Err(ModelError::InvariantsMismatch { .. })));
    assert!(galois_frobenius_system(&bundle, None).is_err());
}

#[test]
fn smash_with_ground_field() {
    let gh = group_hopf(Field::Rational, &Group::cyclic(1)).unwrap();
    let x = catalog::quadratic_field(Field::Rational, 3);
    let act = ModuleAction::from_fn(gh.kg.clone(), x.clone(), |_, v| v.to_vec());
    let sm = smash_product(&act).unwrap();
    let id = LinMap::identity(Field::Rational, 2);
    assert!(crate::algebra::check_morphism(&id, &sm.algebra, &x).is_isomorphism());
    assert_eq!(invariants(&act).dim(), 2);
}
