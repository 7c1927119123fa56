use super::*;
use crate::frobenius::solve_dual_bases;
use crate::io::ExtensionSpec;
use crate::models::catalog;
use crate::tower::build_tower;

fn tower(spec: &ExtensionSpec) -> TowerData {
    let ext = spec.extension().unwrap();
    let e = spec.expectation_map(&ext).unwrap().unwrap();
    build_tower(&solve_dual_bases(&ext, &e).unwrap()).unwrap()
}

fn analyse(spec: &ExtensionSpec) -> (TowerData, DepthTwoData) {
    let t = tower(spec);
    let cents = second_centralizers(&t);
    let d2 = check_depth_two(&t, cents);
    (t, d2)
}

#[test]
fn trivial_extension() {
    let (t, d2) = analyse(&catalog::trivial(Field::Rational));
    assert_eq!((d2.cents.a.dim(), d2.cents.b.dim(), d2.cents.c.dim()), (1, 1, 1));
    assert!(d2.passes());
    let zw = d2.zw().unwrap();
    assert_eq!(zw.z, vec![t.m1().one().clone()]);
    assert_eq!(zw.w, vec![t.m1().one().clone()]);
    assert!(verify_c_structure(&t, &d2).unwrap().holds());
    let ex = conditional_expectations(&t, &d2).unwrap();
    assert!(ex.report.holds());
    assert_eq!(ex.e_a, LinMap::identity(Field::Rational, 1));
    assert_eq!(ex.e_b, LinMap::identity(Field::Rational, 1));
    let faithful = verify_f_faithful(&t, &d2.cents.c).unwrap();
    assert_eq!((faithful.dim_c, faithful.gram_rank), (1, 1));
    assert!(nakayama_relations(&t, &d2).unwrap().holds());
}

#[test]
fn quadratic_field_is_not_irreducible() {
    let (t, d2) = analyse(&catalog::quadratic(Field::Rational, 2));
    assert_eq!(d2.cents.a.dim(), 4);
    assert!(!d2.cents.base_irreducible);
    assert_eq!(verify_c_structure(&t, &d2).unwrap_err(), SKIP_NOT_IRREDUCIBLE);
}

#[test]
fn normal_and_non_normal_subgroups() {
    let (t, normal) = analyse(&catalog::group_pair(Field::Rational, "S3", "A3").unwrap());
    assert!(normal.cents.contains_base_centralizer);
    assert!(normal.cents.a.dim() >= 4);
    assert!(normal.passes(), "{:?} {:?}", normal.level1.result, normal.level2.result);
    assert!(normal.level1.brute_force_agrees && normal.level2.brute_force_agrees);
    assert_eq!(verify_f_faithful(&t, &normal.cents.c).unwrap_err(), SKIP_F_NOT_SCALAR);

    let (_, non_normal) = analyse(&catalog::group_pair(Field::Rational, "S3", "C2").unwrap());
    assert!(!non_normal.level1.passes());
    assert!(non_normal.level1.brute_force_agrees);
    // Decided by the span obstruction, not by search.
    assert_eq!(non_normal.level1.method, "span");
    assert!(matches!(non_normal.level1.result, Err(DepthTwoFailure::SystemInconsistent { .. })));
    assert!(!non_normal.level2.passes() && non_normal.level2.brute_force_agrees);
}

#[test]
fn dimension_obstruction() {
    let t = tower(&catalog::quadratic(Field::Rational, 2));
    let scalars = Subspace::span(Field::Rational, t.m1().dim(), [t.m1().one().clone()]);
    let v = check_level(&t.levels[0].system, &scalars);
    assert!(matches!(v.result, Err(DepthTwoFailure::DimensionObstruction { .. })));
}

#[test]
fn skew_path_structure() {
    let (t, d2) = analyse(&catalog::skew_path_z2());
    assert!(d2.cents.base_irreducible);
    assert_eq!((d2.cents.a.dim(), d2.cents.b.dim(), d2.cents.c.dim()), (2, 2, 4));
    assert!(d2.passes());
    assert_eq!(d2.level1.method, "gram");
    assert!(d2.level1.brute_force_agrees && d2.level2.brute_force_agrees);
    let cs = verify_c_structure(&t, &d2).unwrap();
    assert!(cs.holds(), "{cs:?}");
    assert_eq!(cs.n, 2);
    let ex = conditional_expectations(&t, &d2).unwrap();
    assert!(ex.report.holds(), "{:?}", ex.report);
    assert!(verify_f_faithful(&t, &d2.cents.c).unwrap().faithful());
    let nr = nakayama_relations(&t, &d2).unwrap();
    assert!(nr.holds() && nr.q_is_identity);
}

#[test]
fn skew_star_structure() {
    let (t, d2) = analyse(&catalog::skew_star_z3());
    assert!(d2.passes());
    let cs = verify_c_structure(&t, &d2).unwrap();
    assert!(cs.holds(), "{cs:?}");
    assert_eq!(cs.n, 3);
    let nr = nakayama_relations(&t, &d2).unwrap();
    assert!(nr.holds() && nr.q_is_identity);
}

#[test]
fn m2f2_extension_is_depth_two_but_not_irreducible() {
    let (t, d2) = analyse(&catalog::m2f2_skew_trace());
    assert_eq!(d2.cents.a.dim(), 16);
    assert!(d2.level1.passes());
    assert!(d2.level1.brute_force_agrees);
    assert_eq!(verify_c_structure(&t, &d2).unwrap_err(), SKIP_NOT_IRREDUCIBLE);
}
