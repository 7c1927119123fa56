//! Named example extensions.

use crate::algebra::{group_algebra, tensor_sparse, Algebra};
use crate::exact::echelon::sparse_collect;
use crate::exact::{vector, Field, Scalar, Vector};
use crate::io::ExtensionSpec;

use super::groups::{Group, GroupError};

fn e_rows(alg: &Algebra, f: impl Fn(usize) -> Vector) -> Vec<Vector> {
    (0..alg.dim()).map(f).collect()
}

/// `k ⊆ k` with `E = id` and dual bases `1 ⊗ 1`.
pub fn trivial(field: Field) -> ExtensionSpec {
    let k = Algebra::ground(field);
    ExtensionSpec {
        name: "trivial".into(),
        upper: k.clone(),
        names: Some(vec!["1".into()]),
        embedding: vec![k.one().clone()],
        expectation: Some(vec![k.one().clone()]),
        dual_bases: Some(vec![(0, field.one())]),
    }
}

/// `k[H] ⊆ k[G]` with `E` the restriction of coefficients to `H` and dual
/// bases given by left coset representatives `g_i` and their inverses.
pub fn group_pair(field: Field, group: &str, sub: &str) -> Result<ExtensionSpec, GroupError> {
    let g = Group::by_name(group)?;
    let h = g.subgroup(group, sub)?;
    let m = group_algebra(field, &g.table);
    let n = g.order();
    let embedding = h.iter().map(|&x| m.basis(x)).collect();
    let expectation = e_rows(&m, |x| if h.contains(&x) { m.basis(x) } else { m.zero() });
    let reps = g.coset_representatives(&h);
    let dual = sparse_collect(field, reps.iter().map(|&r| (r * n + g.inverse(r), field.one())));
    Ok(ExtensionSpec {
        name: format!("group-pair-{group}-{sub}"),
        upper: m,
        names: Some(g.names.clone()),
        embedding,
        expectation: Some(expectation),
        dual_bases: Some(dual),
    })
}

/// `Q(√d)` on the basis `1, √d`.
pub fn quadratic_field(field: Field, d: i64) -> Algebra {
    let one = field.one();
    Algebra::from_constants(
        field,
        2,
        [(0, 0, 0, one.clone()), (0, 1, 1, one.clone()), (1, 0, 1, one.clone()), (1, 1, 0, field.from_i64(d))],
        vector::unit(field, 2, 0),
    )
    .expect("valid table")
}

/// `Q(√d) / Q` with `E(a + b√d) = a` and dual bases `1⊗1 + √d ⊗ √d/d`.
pub fn quadratic(field: Field, d: i64) -> ExtensionSpec {
    let m = quadratic_field(field, d);
    let inv_d = field.ratio(1, d).expect("d invertible");
    ExtensionSpec {
        name: format!("quadratic-{d}"),
        upper: m.clone(),
        names: Some(vec!["1".into(), format!("sqrt{d}")]),
        embedding: vec![m.one().clone()],
        expectation: Some(vec![m.one().clone(), m.zero()]),
        dual_bases: Some(vec![(0, field.one()), (3, inv_d)]),
    }
}

/// `M_2(F_2) / F_2` with `E(a) = a11 + a12 + a21` and the printed dual-bases
/// tensor. Matrix units are ordered `e11, e12, e21, e22`.
pub fn m2f2_skew_trace() -> ExtensionSpec {
    let f = Field::Prime(2);
    let m = Algebra::matrix_algebra(f, 2);
    let one = f.one();
    let e = |v: i64| vec![f.from_i64(v)];
    let lower = |v: Vec<Scalar>| vector::scale(&v[0], m.one());
    let (e11, e12, e21, e22) = (0, 1, 2, 3);
    let printed = [(e11, e21), (e12, e11), (e12, e21), (e22, e12), (e22, e22), (e21, e22)];
    ExtensionSpec {
        name: "m2f2-skew-trace".into(),
        upper: m.clone(),
        names: Some(vec!["e11".into(), "e12".into(), "e21".into(), "e22".into()]),
        embedding: vec![m.one().clone()],
        expectation: Some(vec![lower(e(1)), lower(e(1)), lower(e(1)), lower(e(0))]),
        dual_bases: Some(sparse_collect(f, printed.iter().map(|(a, b)| (a * 4 + b, one.clone())))),
    }
}

/// `M_2(Q) / Q` with `E(a) = tr(a·diag(1, 2))`; dual bases left to the solver.
pub fn twisted_trace_m2() -> ExtensionSpec {
    let f = Field::Rational;
    let m = Algebra::matrix_algebra(f, 2);
    let s = |v: i64| vector::scale(&f.from_i64(v), m.one());
    ExtensionSpec {
        name: "twisted-trace-m2q".into(),
        upper: m.clone(),
        names: Some(vec!["e11".into(), "e12".into(), "e21".into(), "e22".into()]),
        embedding: vec![m.one().clone()],
        expectation: Some(vec![s(1), s(0), s(0), s(2)]),
        dual_bases: None,
    }
}

/// Radical-square-zero path algebra of a quiver: vertices first, then arrows
/// `(source, target)`, with `e_t a = a = a e_s` and all arrow products zero.
pub fn radical_square_zero(field: Field, vertices: usize, arrows: &[(usize, usize)]) -> Algebra {
    let dim = vertices + arrows.len();
    let mut entries = Vec::new();
    for v in 0..vertices {
        entries.push((v, v, v, field.one()));
    }
    for (k, &(s, t)) in arrows.iter().enumerate() {
        let a = vertices + k;
        entries.push((t, a, a, field.one()));
        entries.push((a, s, a, field.one()));
    }
    let unit = (0..dim).map(|i| if i < vertices { field.one() } else { field.zero() }).collect();
    Algebra::from_constants(field, dim, entries, unit).expect("valid table")
}

/// `N # k[G]` where `action[g]` permutes the basis of `N` by algebra
/// automorphisms. Basis `n_i # g` sits at index `i * |G| + g`.
pub fn skew_group_algebra(n: &Algebra, g: &Group, action: &[Vec<usize>]) -> Algebra {
    let field = n.field();
    let order = g.order();
    let dim = n.dim() * order;
    let mut unit = vector::zeros(field, dim);
    for (i, c) in n.one().iter().enumerate() {
        unit[i * order] = c.clone();
    }
    Algebra::from_products(
        field,
        dim,
        |p, q| {
            let (i, a) = (p / order, p % order);
            let (j, b) = (q / order, q % order);
            let ab = g.mul(a, b);
            n.basis_product(i, action[a][j]).iter().map(|(k, c)| (k * order + ab, c.clone())).collect()
        },
        unit,
    )
}

/// `N ⊆ N # k[G]` with `E(n # g) = δ_{g,e} n` and dual bases `{1#g}`, `{1#g⁻¹}`.
fn skew_extension(name: &str, n: &Algebra, n_names: &[String], g: &Group, action: &[Vec<usize>]) -> ExtensionSpec {
    let field = n.field();
    let order = g.order();
    let m = skew_group_algebra(n, g, action);
    let embedding: Vec<Vector> = (0..n.dim()).map(|i| m.basis(i * order)).collect();
    let expectation = e_rows(&m, |p| if p % order == 0 { m.basis(p) } else { m.zero() });
    let one_hash = |h: usize| -> Vector {
        let mut v = m.zero();
        for (i, c) in n.one().iter().enumerate() {
            v[i * order + h] = c.clone();
        }
        v
    };
    let dual = sparse_collect(
        field,
        (0..order).flat_map(|h| tensor_sparse(m.dim(), &one_hash(h), &one_hash(g.inverse(h)))),
    );
    let names = n_names.iter().flat_map(|x| g.names.iter().map(move |h| format!("{x}#{h}"))).collect();
    ExtensionSpec {
        name: name.into(),
        upper: m,
        names: Some(names),
        embedding,
        expectation: Some(expectation),
        dual_bases: Some(dual),
    }
}

/// Quiver `1 -> 2 <- 3` (radical square zero) with `Z/2` swapping the two
/// sources, over `Q`.
pub fn skew_path_z2() -> ExtensionSpec {
    let f = Field::Rational;
    // basis: e1, e2, e3, a: 1->2, b: 3->2
    let n = radical_square_zero(f, 3, &[(0, 1), (2, 1)]);
    let names: Vec<String> = ["e1", "e2", "e3", "a", "b"].iter().map(|s| s.to_string()).collect();
    let g = Group::cyclic(2);
    let action = vec![vec![0, 1, 2, 3, 4], vec![2, 1, 0, 4, 3]];
    skew_extension("skew-path-z2", &n, &names, &g, &action)
}

/// Star quiver with three leaves pointing at a centre (radical square zero)
/// and `Z/3` rotating the leaves, over `F_7`.
pub fn skew_star_z3() -> ExtensionSpec {
    let f = Field::Prime(7);
    // basis: c, l1, l2, l3, a1: l1->c, a2: l2->c, a3: l3->c
    let n = radical_square_zero(f, 4, &[(1, 0), (2, 0), (3, 0)]);
    let names: Vec<String> = ["c", "l1", "l2", "l3", "a1", "a2", "a3"].iter().map(|s| s.to_string()).collect();
    let g = Group::cyclic(3);
    let rot = |k: usize| -> Vec<usize> {
        let leaf = |i: usize| 1 + (i - 1 + k) % 3;
        let arrow = |i: usize| 4 + (i - 4 + k) % 3;
        vec![0, leaf(1), leaf(2), leaf(3), arrow(4), arrow(5), arrow(6)]
    };
    let action = vec![rot(0), rot(1), rot(2)];
    skew_extension("skew-star-z3", &n, &names, &g, &action)
}

/// `Q(√2, i)` on the basis `1, √2, i, √2 i`, with `Q(√2)` embedded as the
/// first two coordinates. Used for composing field extensions.
pub fn biquadratic() -> (Algebra, Vec<Vector>) {
    let f = Field::Rational;
    let qr2 = quadratic_field(f, 2);
    let qi = quadratic_field(f, -1);
    // (a ⊗ b)(c ⊗ d) = ac ⊗ bd on index a * 2 + b with a from Q(√2), b from Q(i)
    let r = Algebra::from_products(
        f,
        4,
        |p, q| {
            let (a, b, c, d) = (p / 2, p % 2, q / 2, q % 2);
            let left = qr2.basis_product(a, c);
            let right = qi.basis_product(b, d);
            left.iter().flat_map(|(x, s)| right.iter().map(move |(y, t)| (x * 2 + y, s * t))).collect()
        },
        vector::unit(f, 4, 0),
    );
    // 1 ↦ 1 ⊗ 1, √2 ↦ √2 ⊗ 1
    let embedding = vec![r.basis(0), r.basis(2)];
    (r, embedding)
}

/// Every catalog name accepted by [`generate_example`].
pub const CATALOG: &[&str] = &[
    "trivial",
    "group-pair",
    "quadratic",
    "m2f2-skew-trace",
    "twisted-trace-m2q",
    "skew-path-z2",
    "skew-star-z3",
];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown example {name:?}; available: {}", CATALOG.join(", "))]
    Unknown { name: String },
    #[error("invalid parameters for {name}: {reason}")]
    Params { name: String, reason: String },
}

/// Builds a named example. `params` are positional: `group-pair G H [field]`,
/// `quadratic d [field]`, `trivial [field]`.
pub fn generate_example(name: &str, params: &[String]) -> Result<ExtensionSpec, CatalogError> {
    let bad = |reason: String| CatalogError::Params { name: name.to_string(), reason };
    let field_at = |i: usize| -> Result<Field, CatalogError> {
        params.get(i).map_or(Ok(Field::Rational), |s| s.parse::<Field>().map_err(|e| bad(e.to_string())))
    };
    match name {
        "trivial" => Ok(trivial(field_at(0)?)),
        "group-pair" => {
            let (g, h) = match params {
                [g, h, ..] => (g.as_str(), h.as_str()),
                _ => return Err(bad("expected G H".into())),
            };
            let field = field_at(2)?;
            let order = super::groups::Group::by_name(g).map_err(|e| bad(e.to_string()))?.order() as u64;
            if field.characteristic() != 0 && order.is_multiple_of(field.characteristic()) {
                return Err(bad(format!("characteristic divides |{g}|")));
            }
            group_pair(field, g, h).map_err(|e| bad(e.to_string()))
        }
        "quadratic" => {
            let d: i64 = params.first().and_then(|s| s.parse().ok()).ok_or_else(|| bad("expected integer d".into()))?;
            let field = field_at(1)?;
            if field.ratio(1, d).is_none() {
                return Err(bad("d must be invertible".into()));
            }
            Ok(quadratic(field, d))
        }
        "m2f2-skew-trace" => Ok(m2f2_skew_trace()),
        "twisted-trace-m2q" => Ok(twisted_trace_m2()),
        "skew-path-z2" => Ok(skew_path_z2()),
        "skew-star-z3" => Ok(skew_star_z3()),
        _ => Err(CatalogError::Unknown { name: name.to_string() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::verify_algebra;

    #[test]
    fn catalog_algebras_are_associative() {
        for spec in [
            trivial(Field::Rational),
            group_pair(Field::Rational, "S3", "A3").unwrap(),
            group_pair(Field::Rational, "S3", "C2").unwrap(),
            quadratic(Field::Rational, 2),
            m2f2_skew_trace(),
            skew_path_z2(),
            skew_star_z3(),
        ] {
            assert_eq!(verify_algebra(&spec.upper), Ok(()), "{}", spec.name);
            spec.extension().unwrap();
        }
        assert_eq!(verify_algebra(&biquadratic().0), Ok(()));
    }

    #[test]
    fn unknown_names_list_catalog() {
        let err = generate_example("nope", &[]).unwrap_err().to_string();
        assert!(err.contains("m2f2-skew-trace"));
        assert!(generate_example("group-pair", &["Z2".into(), "1".into(), "F2".into()]).is_err());
    }
}
