use super::*;
use crate::algebra::check_morphism;
use crate::exact::Field;
use crate::frobenius::{normalize, solve_dual_bases};
use crate::io::ExtensionSpec;
use crate::models::catalog;

fn system(spec: &ExtensionSpec) -> FrobeniusSystem {
    let ext = spec.extension().unwrap();
    let e = spec.expectation_map(&ext).unwrap().unwrap();
    solve_dual_bases(&ext, &e).unwrap()
}

fn half() -> Scalar {
    Field::Rational.ratio(1, 2).unwrap()
}

fn full_checks(t: &TowerData) {
    assert!(verify_braid_relations(t).holds(), "{:?}", verify_braid_relations(t));
    assert!(verify_pimsner_popa(t).holds(), "{:?}", verify_pimsner_popa(t));
    let em = verify_emtwo(t);
    assert!(em.holds(), "{em:?}");
    assert_eq!(cyclic_generation_rank(t), t.m1().dim());
}

#[test]
fn trivial_tower() {
    let sys = system(&catalog::trivial(Field::Rational));
    let t = build_tower(&sys).unwrap();
    assert_eq!(dump(&t).dims, vec![1, 1, 1, 1]);
    assert_eq!(t.e1(), t.m1().one());
    assert_eq!(t.lambda(), Field::Rational.one());
    full_checks(&t);
    let iso = endo_ring_iso(&sys, &t.levels[0]).unwrap();
    assert!(iso.is_isomorphism && iso.inverse_agrees);
}

#[test]
fn quadratic_tower() {
    let sys = system(&catalog::quadratic(Field::Rational, 2));
    let t = build_tower(&sys).unwrap();
    assert_eq!(t.m1().dim(), 4);
    assert_eq!(t.m2().dim(), 8);
    assert_eq!(t.lambda(), half());
    let e1 = t.e1();
    assert_eq!(&t.m1().mul(e1, e1), e1);
    full_checks(&t);
    let iso = endo_ring_iso(&sys, &t.levels[0]).unwrap();
    assert_eq!((iso.end_dim, iso.m1_dim), (4, 4));
    assert!(iso.is_isomorphism && iso.inverse_agrees);
    // M₁ ≅ M₂(Q) directly: End is the full matrix algebra on Q².
    let mq = crate::algebra::Algebra::matrix_algebra(Field::Rational, 2);
    let module = RightModule::restriction(t.m(), t.n(), &t.base.ext.incl);
    let end = endomorphism_algebra(&module).unwrap();
    let to_end = LinMap::from_fn(Field::Rational, 4, 4, |k| {
        let mut mat = crate::exact::Matrix::zeros(Field::Rational, 2, 2);
        mat.set(k / 2, k % 2, Field::Rational.one());
        end.coordinates(&mat).unwrap()
    });
    let composite = iso.map.compose(&to_end).unwrap();
    assert!(check_morphism(&composite, &mq, t.m1()).is_isomorphism());
}

#[test]
fn group_tower() {
    let sys = system(&catalog::group_pair(Field::Rational, "S3", "A3").unwrap());
    let t = build_tower(&sys).unwrap();
    assert_eq!(t.m1().dim(), 12);
    assert_eq!(t.m2().dim(), 24);
    assert_eq!(t.lambda(), half());
    full_checks(&t);
}

#[test]
fn m2f2_tower() {
    let sys = system(&catalog::m2f2_skew_trace());
    let t = build_tower(&sys).unwrap();
    assert_eq!(dump(&t).dims, vec![1, 4, 16, 64]);
    full_checks(&t);
    let iso = endo_ring_iso(&sys, &t.levels[0]).unwrap();
    assert_eq!((iso.end_dim, iso.m1_dim), (16, 16));
    assert!(iso.is_isomorphism && iso.inverse_agrees);
}

#[test]
fn skew_towers() {
    let t = build_tower(&system(&catalog::skew_path_z2())).unwrap();
    assert_eq!(dump(&t).dims, vec![5, 10, 20, 40]);
    full_checks(&t);
    let t = build_tower(&system(&catalog::skew_star_z3())).unwrap();
    assert_eq!(dump(&t).dims, vec![7, 21, 63, 189]);
    assert!(verify_braid_relations(&t).holds());
}

#[test]
fn preconditions() {
    // E(a) = tr(a·diag(1, -1)) on M₂(Q): E(1) = 0 and the index tr(u⁻¹) = 0.
    let f = Field::Rational;
    let q = |n: i64| f.from_i64(n);
    let m = crate::algebra::Algebra::matrix_algebra(f, 2);
    let ext = Extension::from_embedding(m, &[vec![q(1), q(0), q(0), q(1)]]).unwrap();
    let e = LinMap::from_images(f, 1, &[vec![q(1)], vec![q(0)], vec![q(0)], vec![q(-1)]]);
    let sys = solve_dual_bases(&ext, &e).unwrap();
    assert_eq!(basic_construction(&sys).unwrap_err(), TowerError::ZeroIndex);

    // Doubling E keeps it Frobenius but breaks normalization; normalize repairs it.
    let base = system(&catalog::quadratic(f, 2));
    let doubled = LinMap::from_images(f, 1, &base.e.images().iter().map(|v| vector::scale(&q(2), v)).collect::<Vec<_>>());
    let sys = solve_dual_bases(&base.ext, &doubled).unwrap();
    assert_eq!(basic_construction(&sys).unwrap_err(), TowerError::NotNormalized);
    assert!(basic_construction(&normalize(&sys).unwrap()).is_ok());
}
