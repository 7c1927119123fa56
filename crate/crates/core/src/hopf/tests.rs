use super::*;
use crate::depth_two::{check_depth_two, nakayama_relations, second_centralizers, DepthTwoData};
use crate::frobenius::solve_dual_bases;
use crate::io::ExtensionSpec;
use crate::models::{catalog, group_hopf, Group, GroupHopfError};
use crate::tower::{build_tower, TowerData};

fn analyse(spec: &ExtensionSpec) -> (TowerData, DepthTwoData) {
    let ext = spec.extension().unwrap();
    let e = spec.expectation_map(&ext).unwrap().unwrap();
    let t = build_tower(&solve_dual_bases(&ext, &e).unwrap()).unwrap();
    let d2 = check_depth_two(&t, second_centralizers(&t));
    (t, d2)
}

fn assert_all_pass(entries: Vec<(impl std::fmt::Display, &Outcome)>) {
    for (name, o) in entries {
        assert!(!o.is_fail(), "{name}: {o:?}");
    }
}

fn abstract_group(field: Field, g: &Group) {
    let gh = group_hopf(field, g).unwrap();
    assert!(gh.normalization().is_pass());
    let (data, hb, report) = bialgebra_from_abstract_pairing(gh.kg.algebra.clone(), gh.kfun.algebra.clone(), gh.pairing.clone(), AntipodeMode::Solve).unwrap();
    assert_all_pass(report.entries());
    assert!(report.axioms.all_pass());
    assert_eq!(hb.delta, gh.kfun.delta);
    assert_eq!(hb.eps, gh.kfun.eps);
    assert_eq!(hb.antipode, gh.kfun.antipode);
    let ha = dualize(&data, &hb);
    assert_eq!(ha.delta, gh.kg.delta);
    assert_eq!(ha.eps, gh.kg.eps);
    assert_eq!(ha.antipode, gh.kg.antipode);
    let s = hb.antipode.unwrap();
    assert_eq!(s.compose(&s).unwrap(), LinMap::identity(field, g.order()));
}

#[test]
fn abstract_z2_matches_closed_forms() {
    abstract_group(Field::Rational, &Group::cyclic(2));
}

#[test]
fn abstract_z3_and_s3() {
    abstract_group(Field::Rational, &Group::cyclic(3));
    abstract_group(Field::Prime(7), &Group::symmetric3());
}

#[test]
fn group_model_normalization() {
    let gh = group_hopf(Field::Rational, &Group::cyclic(2)).unwrap();
    let half = Field::Rational.ratio(1, 2).unwrap();
    assert_eq!(gh.t, vec![half.clone(), half]);
    assert_eq!(gh.f, vec![Field::Rational.from_i64(2), Field::Rational.zero()]);
    assert_eq!(gh.index(), Field::Rational.from_i64(2));
    assert!(matches!(group_hopf(Field::Prime(2), &Group::cyclic(2)), Err(GroupHopfError::CharDividesOrder { .. })));
    assert!(verify_hopf_axioms(&gh.kg).all_pass());
    assert!(verify_hopf_axioms(&gh.kfun).all_pass());
    // integrals: Σg in k[G], δ_e in k^G
    assert_eq!(left_integrals(&gh.kg).basis(), vec![vec![Field::Rational.one(); 2]]);
    assert_eq!(left_integrals(&gh.kfun).basis(), vec![vector::unit(Field::Rational, 2, 0)]);
}

#[test]
fn group_algebra_paired_with_itself_fails() {
    let g = Group::cyclic(2);
    let kg = crate::algebra::group_algebra(Field::Rational, &g.table);
    let (_, _, report) = bialgebra_from_abstract_pairing(kg.clone(), kg, Matrix::identity(Field::Rational, 2), AntipodeMode::Skip).unwrap();
    assert!(report.axioms.delta_multiplicative.is_fail());
    assert!(matches!(report.axioms.antipode_left, Outcome::Skipped { .. }));
}

#[test]
fn corrupted_delta_breaks_coassociativity() {
    let mut gh = group_hopf(Field::Rational, &Group::cyclic(3)).unwrap();
    let f = Field::Rational;
    let mut images = gh.kfun.delta.images();
    images[1] = vector::add(&images[1], &vector::unit(f, 9, 4));
    gh.kfun.delta = LinMap::from_images(f, 9, &images);
    let ax = verify_hopf_axioms(&gh.kfun);
    match &ax.coassociativity {
        Outcome::Fail { witness } => assert!(witness.get("component").is_some()),
        other => panic!("expected failure, got {other:?}"),
    }
}

#[test]
fn singular_pairing_is_rejected() {
    let f = Field::Rational;
    let a = crate::models::group_hopf::function_algebra(f, 2);
    let p = Matrix::from_rows(f, 2, &[vec![f.one(), f.one()], vec![f.one(), f.one()]]);
    assert_eq!(PairingData::new(a.clone(), a, p).unwrap_err(), HopfError::PairingSingular);
}

fn tower_reconstruction(spec: &ExtensionSpec) -> (TowerPairing, HopfStructure, HopfStructure) {
    let (t, d2) = analyse(spec);
    assert!(d2.passes());
    let tp = compute_pairing(&t, &d2).unwrap();
    let hb = tower_hopf(&t, &tp).unwrap();
    let ha = dualize(&tp.data, &hb);
    assert!(verify_hopf_axioms(&hb).all_pass(), "{:?}", verify_hopf_axioms(&hb));
    assert!(verify_hopf_axioms(&ha).all_pass(), "{:?}", verify_hopf_axioms(&ha));
    let q_b = nakayama_relations(&t, &d2).ok().map(|r| r.q_b);
    let report = verify_tower_identities(&t, &tp, &hb, &ha, q_b.as_ref());
    assert_all_pass(report.entries());
    assert!(report.s_involution.is_pass());
    (tp, hb, ha)
}

#[test]
fn trivial_tower_reconstruction() {
    let (tp, hb, _) = tower_reconstruction(&catalog::trivial(Field::Rational));
    assert_eq!(tp.data.p, Matrix::identity(Field::Rational, 1));
    assert_eq!(hb.antipode.unwrap(), LinMap::identity(Field::Rational, 1));
}

#[test]
fn skew_path_reconstruction() {
    let (tp, hb, _) = tower_reconstruction(&catalog::skew_path_z2());
    assert_eq!(tp.data.p.rank(), 2);
    assert_eq!(hb.dim(), 2);
    assert_eq!(left_integrals(&hb).dim(), 1);
}

#[test]
fn skew_star_reconstruction() {
    let (_, hb, ha) = tower_reconstruction(&catalog::skew_star_z3());
    assert_eq!((hb.dim(), ha.dim()), (3, 3));
}

#[test]
fn non_irreducible_tower_is_refused() {
    let (t, d2) = analyse(&catalog::quadratic(Field::Rational, 2));
    assert_eq!(compute_pairing(&t, &d2).unwrap_err(), crate::depth_two::SKIP_NOT_IRREDUCIBLE);
}
