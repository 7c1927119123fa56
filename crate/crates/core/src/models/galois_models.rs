//! Module-algebra models `X` over `k[G]` and the Frobenius systems they
//! induce on `X^G ⊆ X` through `E(m) = t ⊲ m`.

use serde_json::json;

use super::group_hopf::{function_algebra, group_hopf, GroupHopf, GroupHopfError};
use super::{catalog, Group};
use crate::check::Outcome;
use crate::exact::{vector, Field, Matrix, Scalar, Subspace, Vector};
use crate::frobenius::{solve_dual_bases, verify_conditional_expectation, Extension, FrobeniusSystem};
use crate::galois::{invariants, subspaces_equal, ModuleAction};
use crate::hopf::{HopfStructure, TowerPairing};
use crate::algebra::LinMap;
use crate::tower::TowerData;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error(transparent)]
    Hopf(#[from] GroupHopfError),
    #[error("invariant subalgebra has dimension {got}, expected the given subalgebra of dimension {expected}")]
    InvariantsMismatch { got: usize, expected: usize },
    #[error("E = t ⊲ (-) is not a conditional expectation onto the invariants")]
    NotExpectation,
    #[error("X is not H*-Galois over N: {0}")]
    NotGalois(String),
    #[error("index {got} differs from f(1) = {expected}")]
    IndexMismatch { got: String, expected: String },
}

/// `k[G]`, its dual, and a module algebra `X` over `k[G]`.
#[derive(Clone, Debug)]
pub struct ModelBundle {
    pub name: String,
    pub hopf: GroupHopf,
    pub action: ModuleAction,
}

fn by_permutations(gh: &GroupHopf, x: crate::algebra::Algebra, perms: &[Vec<usize>], signs: Option<&[Vec<i64>]>) -> ModuleAction {
    let field = x.field();
    let d = x.dim();
    let matrices = perms
        .iter()
        .enumerate()
        .map(|(g, perm)| {
            let mut m = Matrix::zeros(field, d, d);
            for (i, &j) in perm.iter().enumerate() {
                let s = signs.map_or(1, |s| s[g][i]);
                m.set(j, i, field.from_i64(s));
            }
            m
        })
        .collect();
    ModuleAction { hopf: gh.kg.clone(), algebra: x, matrices }
}

/// `Q(√2)` with `Z/2` acting by `√2 ↦ -√2`.
pub fn galois_quadratic() -> ModelBundle {
    let f = Field::Rational;
    let gh = group_hopf(f, &Group::cyclic(2)).expect("char 0");
    let x = catalog::quadratic_field(f, 2);
    let signs = vec![vec![1, 1], vec![1, -1]];
    let action = by_permutations(&gh, x, &[vec![0, 1], vec![0, 1]], Some(&signs));
    ModelBundle { name: "galois-quadratic".into(), hopf: gh, action }
}

/// `k^G` with `G` acting by translation, `g ⊲ δ_x = δ_{x g⁻¹}`.
pub fn translation(field: Field, group: &Group) -> Result<ModelBundle, ModelError> {
    let gh = group_hopf(field, group)?;
    let n = group.order();
    let perms: Vec<Vec<usize>> = (0..n).map(|g| (0..n).map(|x| group.mul(x, group.inverse(g))).collect()).collect();
    let action = by_permutations(&gh, function_algebra(field, n), &perms, None);
    Ok(ModelBundle { name: format!("translation-{}", group.order()), hopf: gh, action })
}

/// `Q(√2)` with the trivial `Z/2` action.
pub fn trivial_quadratic() -> ModelBundle {
    let f = Field::Rational;
    let gh = group_hopf(f, &Group::cyclic(2)).expect("char 0");
    let x = catalog::quadratic_field(f, 2);
    let action = by_permutations(&gh, x, &[vec![0, 1], vec![0, 1]], None);
    ModelBundle { name: "trivial-quadratic".into(), hopf: gh, action }
}

/// `N = X^G`, `E = t ⊲ (-)`, dual bases solved linearly, and `λ⁻¹ = f(1)`
/// cross-checked.
pub fn galois_frobenius_system(bundle: &ModelBundle, expected_n: Option<&Subspace>) -> Result<FrobeniusSystem, ModelError> {
    let act = &bundle.action;
    let x = &act.algebra;
    let inv = invariants(act);
    if let Some(exp) = expected_n {
        if !subspaces_equal(&inv, exp) {
            return Err(ModelError::InvariantsMismatch { got: inv.dim(), expected: exp.dim() });
        }
    }
    let ext = Extension::from_embedding(x.clone(), &inv.basis()).map_err(|e| ModelError::NotGalois(e.to_string()))?;
    let images: Vec<Vector> = (0..x.dim())
        .map(|i| ext.lower_coordinates(&act.act(&bundle.hopf.t, &x.basis(i))).ok_or(ModelError::NotExpectation))
        .collect::<Result<_, _>>()?;
    let e = LinMap::from_images(x.field(), ext.lower.dim(), &images);
    if !verify_conditional_expectation(&ext, &e).passes() {
        return Err(ModelError::NotExpectation);
    }
    let sys = solve_dual_bases(&ext, &e).map_err(|e| ModelError::NotGalois(e.to_string()))?;
    let expected = bundle.hopf.index();
    if sys.lambda_inv.as_ref() != Some(&expected) {
        return Err(ModelError::IndexMismatch {
            got: sys.lambda_inv.as_ref().map_or("non-scalar".into(), Scalar::to_string),
            expected: expected.to_string(),
        });
    }
    Ok(sys)
}

/// For `M = N # k[G]` (basis `n_i # g` at `i * |G| + g`): every graded piece
/// `N # g` is an eigenspace of the reconstructed `A`-action for a character
/// `χ_g`, the characters are distinct, and the corresponding elements
/// `b_g ∈ B` are group-like with `b_g b_h = b_{gh}`.
pub fn grading_agrees(t: &TowerData, tp: &TowerPairing, hb: &HopfStructure, a_act: &ModuleAction, group: &Group) -> Outcome {
    let field = hb.field();
    let order = group.order();
    let dm = t.m().dim();
    let dn = dm / order;
    let da = a_act.hopf.dim();
    let mut chars: Vec<Vec<Scalar>> = Vec::with_capacity(order);
    for g in 0..order {
        let mut chi = Vec::with_capacity(da);
        for j in 0..da {
            let lead = a_act.act_basis(j, &vector::unit(field, dm, g));
            let Some(c) = vector::scalar_multiple_of(&lead, &vector::unit(field, dm, g)) else {
                return Outcome::Fail { witness: json!({"component": g, "a": j, "reason": "not an eigenvector"}) };
            };
            for i in 0..dn {
                let v = vector::unit(field, dm, i * order + g);
                if a_act.act_basis(j, &v) != vector::scale(&c, &v) {
                    return Outcome::Fail { witness: json!({"component": g, "a": j, "n": i}) };
                }
            }
            chi.push(c);
        }
        chars.push(chi);
    }
    for g in 0..order {
        for h in 0..g {
            if chars[g] == chars[h] {
                return Outcome::Fail { witness: json!({"equal_characters": [h, g]}) };
            }
        }
    }
    let dual = tp.data.dual_basis_b();
    let b_of = |g: usize| vector::combine(field, hb.dim(), &chars[g], &dual);
    let bs: Vec<Vector> = (0..order).map(b_of).collect();
    for (g, b) in bs.iter().enumerate() {
        let d = hb.dim();
        let bb: Vector = b.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect();
        debug_assert_eq!(bb.len(), d * d);
        if hb.delta_of(b) != bb || !hb.eps_of(b).is_one() {
            return Outcome::Fail { witness: json!({"not_group_like": g}) };
        }
        for h in 0..order {
            if hb.algebra.mul(b, &bs[h]) != bs[group.mul(g, h)] {
                return Outcome::Fail { witness: json!({"group_law": [g, h]}) };
            }
        }
    }
    Outcome::Pass
}
