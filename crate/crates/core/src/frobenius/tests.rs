use super::*;
use crate::algebra::tensor_sparse;
use crate::io::ExtensionSpec;
use crate::models::catalog::{self, quadratic_field};

fn system(spec: &ExtensionSpec) -> FrobeniusSystem {
    let ext = spec.extension().unwrap();
    let e = spec.expectation_map(&ext).unwrap().unwrap();
    solve_dual_bases(&ext, &e).unwrap()
}

fn q(n: i64) -> Scalar {
    Field::Rational.from_i64(n)
}

#[test]
fn conditional_expectation_examples() {
    for spec in [catalog::group_pair(Field::Rational, "S3", "A3").unwrap(), catalog::quadratic(Field::Rational, 2)] {
        let ext = spec.extension().unwrap();
        let e = spec.expectation_map(&ext).unwrap().unwrap();
        assert!(verify_conditional_expectation(&ext, &e).passes(), "{}", spec.name);
    }
    let spec = catalog::quadratic(Field::Rational, 2);
    let ext = spec.extension().unwrap();
    let zero = LinMap::zero(Field::Rational, 2, 1);
    let r = verify_conditional_expectation(&ext, &zero);
    assert!(r.is_bimodule_map() && !r.unital);
}

#[test]
fn dual_bases_examples() {
    let t0 = system(&catalog::trivial(Field::Rational));
    assert_eq!(t0.tensor, vec![(0, q(1))]);

    let spec = catalog::quadratic(Field::Rational, 2);
    let t3 = system(&spec);
    assert!(t3.quotient.same_class(&t3.tensor, spec.dual_bases.as_ref().unwrap()));
    assert_eq!(t3.lambda_inv, Some(q(2)));

    let spec = catalog::m2f2_skew_trace();
    let t4 = system(&spec);
    let printed = spec.dual_bases.clone().unwrap();
    assert!(t4.quotient.same_class(&t4.tensor, &printed));
    let from_printed = FrobeniusSystem::from_parts(t4.ext.clone(), t4.e.clone(), t4.quotient.clone(), printed).unwrap();
    assert_eq!(from_printed.lambda_inv, Some(Field::Prime(2).one()));
    assert_eq!(from_printed.e_of_one(), Some(Field::Prime(2).one()));
}

#[test]
fn not_frobenius_is_reported() {
    // E = 0 on Q(√2) / Q admits no dual bases.
    let spec = catalog::quadratic(Field::Rational, 2);
    let ext = spec.extension().unwrap();
    let zero = LinMap::zero(Field::Rational, 2, 1);
    assert_eq!(solve_dual_bases(&ext, &zero).unwrap_err(), FrobeniusError::NotFrobenius);
    let wrong = vec![(0, q(1))];
    let sys = system(&spec);
    assert!(matches!(
        FrobeniusSystem::from_parts(ext, sys.e.clone(), sys.quotient.clone(), wrong),
        Err(FrobeniusError::BadDualBases(_))
    ));
}

#[test]
fn classification_examples() {
    let c4 = classify(&system(&catalog::m2f2_skew_trace()));
    assert!(c4.split && c4.separable && c4.normalized && !c4.irreducible);
    assert_eq!(c4.strongly_separable, StrongSeparability::Holds);

    let s1 = system(&catalog::group_pair(Field::Rational, "S3", "A3").unwrap());
    assert_eq!(s1.lambda_inv, Some(q(2)));
    let c1 = classify(&s1);
    assert!(c1.split && c1.separable && !c1.irreducible);
    assert_eq!(c1.centralizer_dim, 4);

    let s0 = system(&catalog::trivial(Field::Rational));
    let c0 = classify(&s0);
    assert!(c0.split && c0.separable && c0.irreducible && c0.normalized);
    assert_eq!(s0.lambda_inv, Some(q(1)));
}

#[test]
fn index_non_scalar_status() {
    // Q × Q over Q with E(a, b) = a + 2b: index (1, 1/2) is not scalar.
    let f = Field::Rational;
    let m = crate::algebra::Algebra::from_constants(f, 2, [(0, 0, 0, q(1)), (1, 1, 1, q(1))], vec![q(1), q(1)]).unwrap();
    let ext = Extension::from_embedding(m, &[vec![q(1), q(1)]]).unwrap();
    let e = LinMap::from_images(f, 1, &[vec![q(1)], vec![q(2)]]);
    let sys = solve_dual_bases(&ext, &e).unwrap();
    assert_eq!(sys.lambda_inv, None);
    assert_eq!(classify(&sys).strongly_separable, StrongSeparability::IndexNonScalar);
}

#[test]
fn normalization() {
    let base = system(&catalog::quadratic(Field::Rational, 2));
    let doubled = LinMap::from_images(Field::Rational, 1, &base.e.images().iter().map(|v| vector::scale(&q(2), v)).collect::<Vec<_>>());
    let sys = solve_dual_bases(&base.ext, &doubled).unwrap();
    assert_eq!(sys.lambda_inv, Some(q(1)));
    let n = normalize(&sys).unwrap();
    assert_eq!(n.e, base.e);
    assert_eq!(n.lambda_inv, Some(q(2)));
    let again = normalize(&base).unwrap();
    assert_eq!(again.e, base.e);
    assert_eq!(again.tensor, base.tensor);

    // E(a) = tr(a·diag(1, -1)) is Frobenius with E(1) = 0.
    let m = crate::algebra::Algebra::matrix_algebra(Field::Rational, 2);
    let ext = Extension::from_embedding(m, &[vec![q(1), q(0), q(0), q(1)]]).unwrap();
    let e = LinMap::from_images(Field::Rational, 1, &[vec![q(1)], vec![q(0)], vec![q(0)], vec![q(-1)]]);
    let sys = solve_dual_bases(&ext, &e).unwrap();
    assert_eq!(normalize(&sys).unwrap_err(), FrobeniusError::NotNormalizable);
}

#[test]
fn nakayama_examples() {
    let sys = system(&catalog::quadratic(Field::Rational, 2));
    let scope = sys.ext.centralizer();
    assert!(nakayama(&sys, &scope).unwrap().is_identity());

    // E(a) = tr(a u), u = diag(1, 2): q(c) = u⁻¹ c u
    let sys = system(&catalog::twisted_trace_m2());
    let m = sys.upper().clone();
    let scope = sys.ext.centralizer();
    assert_eq!(scope.dim(), 4);
    let naka = nakayama(&sys, &scope).unwrap();
    let u = vec![q(1), q(0), q(0), q(2)];
    let u_inv = vec![q(1), q(0), q(0), Field::Rational.ratio(1, 2).unwrap()];
    for i in 0..4 {
        let c = m.basis(i);
        assert_eq!(naka.apply(&c).unwrap(), m.mul_all(&[&u_inv, &c, &u]));
    }

    // Over F2, E(a) = tr(a u) with u = [[1, 1], [1, 0]] of order 3.
    let sys = system(&catalog::m2f2_skew_trace());
    let f2 = Field::Prime(2);
    let m = sys.upper().clone();
    let scope = sys.ext.centralizer();
    let naka = nakayama(&sys, &scope).unwrap();
    let u: Vector = [1, 1, 1, 0].iter().map(|&v| f2.from_i64(v)).collect();
    let u_inv: Vector = [0, 1, 1, 1].iter().map(|&v| f2.from_i64(v)).collect();
    for i in 0..4 {
        let c = m.basis(i);
        assert_eq!(naka.apply(&c).unwrap(), m.mul_all(&[&u_inv, &c, &u]));
    }
    let q3 = naka.map.compose(&naka.map).unwrap().compose(&naka.map).unwrap();
    assert_eq!(q3, LinMap::identity(f2, 4));
    assert!(!naka.is_identity());
}

#[test]
fn index_is_central_and_solution_is_canonical() {
    for spec in [catalog::group_pair(Field::Rational, "S3", "C2").unwrap(), catalog::m2f2_skew_trace(), catalog::skew_path_z2()] {
        let sys = system(&spec);
        assert!(sys.upper().is_central(&sys.index), "{}", spec.name);
        let supplied = spec.dual_bases.clone().unwrap();
        assert!(sys.quotient.same_class(&sys.tensor, &supplied), "{}", spec.name);
    }
}

#[test]
fn composition() {
    let t = system(&catalog::trivial(Field::Rational));
    let (tt, rep) = compose(&t, &t).unwrap();
    assert_eq!(tt.tensor, vec![(0, q(1))]);
    assert_eq!(rep.lagrange, Some(true));

    let s3 = system(&catalog::quadratic(Field::Rational, 2));
    let (c, rep) = compose(&s3, &t).unwrap();
    assert_eq!(c.e, s3.e);
    assert!(c.quotient.same_class(&c.tensor, &s3.tensor));
    assert_eq!(rep.lagrange, None);

    // Q ⊆ Q(√2) ⊆ Q(√2, i)
    let (r, emb) = catalog::biquadratic();
    let f = Field::Rational;
    let ext_rm = Extension::new(r.clone(), quadratic_field(f, 2), LinMap::from_images(f, 4, &emb)).unwrap();
    // F(x ⊗ 1 + y ⊗ i) = x
    let fmap = LinMap::from_images(f, 2, &[vec![q(1), q(0)], vec![q(0), q(0)], vec![q(0), q(1)], vec![q(0), q(0)]]);
    let rm = solve_dual_bases(&ext_rm, &fmap).unwrap();
    assert_eq!(rm.lambda_inv, Some(q(2)));
    let (rn, _) = compose(&rm, &s3).unwrap();
    assert_eq!(rn.lambda_inv, Some(q(4)));
    assert!(rn.frobenius_failure().is_none());
    assert!(matches!(compose(&s3, &rm), Err(FrobeniusError::Incompatible(_))));
}

#[test]
fn separability_elements() {
    let f = Field::Rational;
    let s = separability_element_field(f, &[q(2), q(0)]).unwrap();
    assert!(s.multiplication_is_one && s.central);
    let half = f.ratio(1, 2).unwrap();
    let quarter = f.ratio(1, 4).unwrap();
    let expected = sparse_collect(
        f,
        tensor_sparse(2, &[half, q(0)], &[q(1), q(0)]).into_iter().chain(tensor_sparse(2, &[q(0), quarter], &[q(0), q(1)])),
    );
    assert_eq!(s.tensor, expected);

    let lin = separability_element_field(f, &[q(5)]).unwrap();
    assert_eq!(lin.tensor, vec![(0, q(1))]);

    let f7 = Field::Prime(7);
    let cubic = separability_element_field(f7, &[f7.from_i64(2), f7.zero(), f7.zero()]).unwrap();
    assert!(cubic.multiplication_is_one && cubic.central);
    let cubic2 = separability_element_field(f7, &[f7.from_i64(3), f7.from_i64(1), f7.zero()]).unwrap();
    assert!(cubic2.multiplication_is_one && cubic2.central);

    let f2 = Field::Prime(2);
    assert!(matches!(separability_element_field(f2, &[f2.one(), f2.zero()]), Err(FrobeniusError::Inseparable(_))));
}
