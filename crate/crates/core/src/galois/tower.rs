use serde::Serialize;
use serde_json::{json, Value};

use super::{
    coaction_from_action, galois_map, invariants, morphism_outcome, smash_product_unchecked, subspaces_equal, verify_action, ActionReport,
    GaloisMapReport, ModuleAction,
};
use crate::algebra::{check_morphism, subalgebra, verify_algebra, Algebra, LinMap};
use crate::check::{coords, Outcome};
use crate::depth_two::Centralizers;
use crate::exact::{vector, Scalar, Subspace, Vector};
use crate::hopf::{HopfStructure, TowerPairing};
use crate::tower::TowerData;

/// `b ⊲ x = λ⁻¹ E_{M₁}(b x e₂)` on `M₁`.
pub fn action_b_on_m1(t: &TowerData, tp: &TowerPairing, hb: &HopfStructure) -> ModuleAction {
    let m2 = t.m2();
    let lam_inv = t.lambda_inv().clone();
    let e2 = t.e2().clone();
    ModuleAction::from_fn(hb.clone(), t.m1().clone(), |j, x| {
        let b = tp.b_elem(&hb.algebra.basis(j));
        vector::scale(&lam_inv, &t.e_m1().apply(&m2.mul_all(&[&b, &t.m1_to_m2(x), &e2])))
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct BActionReport {
    pub axioms: ActionReport,
    /// `b ⊲ x = b₍₁₎ x S(b₍₂₎)` computed in `M₂`.
    pub outer_formula: Outcome,
    pub e2_acts_as_e_m: Outcome,
    pub invariants_are_m: Outcome,
}

impl BActionReport {
    pub fn entries(&self) -> Vec<(String, &Outcome)> {
        let mut out: Vec<(String, &Outcome)> = self.axioms.entries().into_iter().map(|(k, v)| (k.to_string(), v)).collect();
        out.push(("outer-formula".into(), &self.outer_formula));
        out.push(("e2-acts-as-e-m".into(), &self.e2_acts_as_e_m));
        out.push(("invariants-are-m".into(), &self.invariants_are_m));
        out
    }
}

fn image_space(t: &TowerData, vectors: impl IntoIterator<Item = Vector>, ambient: usize) -> Subspace {
    Subspace::span(t.m().field(), ambient, vectors)
}

pub fn verify_b_action(t: &TowerData, tp: &TowerPairing, act: &ModuleAction) -> BActionReport {
    let (m1, m2) = (t.m1(), t.m2());
    let hb = &act.hopf;
    let s = hb.antipode.as_ref().expect("antipode");
    let axioms = verify_action(act);
    let outer_formula = Outcome::from_failure((0..hb.dim()).find_map(|j| {
        let terms = hb.sweedler(&hb.algebra.basis(j));
        (0..m1.dim()).find_map(|i| {
            let x = t.m1_to_m2(&m1.basis(i));
            let mut rhs = m2.zero();
            for (c, p, q) in &terms {
                let bp = tp.b_elem(&hb.algebra.basis(*p));
                let sq = tp.b_elem(&s.image(*q));
                vector::axpy(&mut rhs, c, &m2.mul_all(&[&bp, &x, &sq]));
            }
            let lhs = t.m1_to_m2(&act.act_basis(j, &m1.basis(i)));
            (lhs != rhs).then(|| json!({"b": j, "x": i}))
        })
    }));
    let e2_acts_as_e_m = match tp.b_coords(t.e2()) {
        None => Outcome::Fail { witness: json!({"reason": "e₂ is not in B"}) },
        Some(c) => Outcome::from_failure((0..m1.dim()).find_map(|i| {
            let x = m1.basis(i);
            let (lhs, rhs) = (act.act(&c, &x), t.e_m_up(&x));
            (lhs != rhs).then(|| json!({"x": i, "lhs": coords(&lhs), "rhs": coords(&rhs)}))
        })),
    };
    let inv = invariants(act);
    let m_image = image_space(t, (0..t.m().dim()).map(|i| t.m_to_m1(&t.m().basis(i))), m1.dim());
    let invariants_are_m = Outcome::from_bool(subspaces_equal(&inv, &m_image), || json!({"invariants_dim": inv.dim(), "m_dim": m_image.dim()}));
    BActionReport { axioms, outer_formula, e2_acts_as_e_m, invariants_are_m }
}

/// `θ: M₁ # B -> M₂`, `x # b ↦ xb`, and its restriction `A # B -> C`.
#[derive(Clone, Debug, Serialize)]
pub struct ThetaReport {
    pub smash_associative: Outcome,
    pub theta_m1: Outcome,
    pub a_stable: Outcome,
    pub theta_c: Outcome,
}

impl ThetaReport {
    pub fn entries(&self) -> Vec<(&'static str, &Outcome)> {
        vec![
            ("smash-associative", &self.smash_associative),
            ("theta-m1-smash-b", &self.theta_m1),
            ("a-stable-under-b", &self.a_stable),
            ("theta-a-smash-b", &self.theta_c),
        ]
    }
}

pub fn theta_report(t: &TowerData, tp: &TowerPairing, cents: &Centralizers, act: &ModuleAction) -> ThetaReport {
    let m2 = t.m2();
    let field = m2.field();
    let hb = &act.hopf;
    let db = hb.dim();
    let b_top: Vec<Vector> = (0..db).map(|j| tp.b_elem(&hb.algebra.basis(j))).collect();
    let sm = smash_product_unchecked(act);
    let smash_associative = match verify_algebra(&sm.algebra) {
        Ok(()) => Outcome::Pass,
        Err(d) => Outcome::Fail { witness: json!({"defect": format!("{d:?}")}) },
    };
    let theta = LinMap::from_fn(field, sm.algebra.dim(), m2.dim(), |idx| {
        m2.mul(&t.m1_to_m2(&t.m1().basis(idx / db)), &b_top[idx % db])
    });
    let theta_m1 = morphism_outcome(&check_morphism(&theta, &sm.algebra, m2));
    let (a_stable, theta_c) = match act.restrict(&cents.a) {
        None => (Outcome::Fail { witness: json!({"reason": "B ⊲ A ⊄ A"}) }, Outcome::skipped("A is not B-stable")),
        Some(ra) => {
            let sa = smash_product_unchecked(&ra);
            let (c_alg, _) = subalgebra(m2, &cents.c).expect("C is a subalgebra");
            let a_basis = cents.a.basis();
            let imgs: Option<Vec<Vector>> = (0..sa.algebra.dim())
                .map(|idx| cents.c.coordinates(&m2.mul(&t.m1_to_m2(&a_basis[idx / db]), &b_top[idx % db])))
                .collect();
            let theta_c = match imgs {
                None => Outcome::Fail { witness: json!({"reason": "ab ∉ C"}) },
                Some(imgs) => {
                    let map = LinMap::from_images(field, c_alg.dim(), &imgs);
                    morphism_outcome(&check_morphism(&map, &sa.algebra, &c_alg))
                }
            };
            (Outcome::Pass, theta_c)
        }
    };
    ThetaReport { smash_associative, theta_m1, a_stable, theta_c }
}

/// `a ⊲ m = a₍₁₎ m S(a₍₂₎)` computed in `M₁`; the witness names the first
/// value outside `M`.
pub fn action_a_on_m(t: &TowerData, tp: &TowerPairing, ha: &HopfStructure) -> Result<ModuleAction, Value> {
    let m1 = t.m1();
    let m = t.m();
    let up = &t.levels[0].system.ext;
    let s = ha.antipode.as_ref().expect("antipode");
    let mut matrices = Vec::with_capacity(ha.dim());
    for j in 0..ha.dim() {
        let terms = ha.sweedler(&ha.algebra.basis(j));
        let mut cols = Vec::with_capacity(m.dim());
        for i in 0..m.dim() {
            let x = t.m_to_m1(&m.basis(i));
            let mut acc = m1.zero();
            for (c, p, q) in &terms {
                let ap = tp.a_elem(&ha.algebra.basis(*p));
                let sq = tp.a_elem(&s.image(*q));
                vector::axpy(&mut acc, c, &m1.mul_all(&[&ap, &x, &sq]));
            }
            cols.push(up.lower_coordinates(&acc).ok_or_else(|| json!({"a": j, "m": i, "value": coords(&acc)}))?);
        }
        matrices.push(crate::exact::Matrix::from_columns(m.field(), m.dim(), &cols));
    }
    Ok(ModuleAction { hopf: ha.clone(), algebra: m.clone(), matrices })
}

#[derive(Clone, Debug, Serialize)]
pub struct AActionReport {
    pub axioms: ActionReport,
    pub e1_acts_as_e: Outcome,
    pub invariants_are_n: Outcome,
}

impl AActionReport {
    pub fn entries(&self) -> Vec<(String, &Outcome)> {
        let mut out: Vec<(String, &Outcome)> = self.axioms.entries().into_iter().map(|(k, v)| (k.to_string(), v)).collect();
        out.push(("e1-acts-as-e".into(), &self.e1_acts_as_e));
        out.push(("invariants-are-n".into(), &self.invariants_are_n));
        out
    }
}

pub fn verify_a_action(t: &TowerData, tp: &TowerPairing, act: &ModuleAction) -> AActionReport {
    let m = t.m();
    let axioms = verify_action(act);
    let e1_acts_as_e = match tp.a_coords(t.e1()) {
        None => Outcome::Fail { witness: json!({"reason": "e₁ is not in A"}) },
        Some(c) => Outcome::from_failure((0..m.dim()).find_map(|i| {
            let x = m.basis(i);
            let (lhs, rhs) = (act.act(&c, &x), t.base.e_up(&x));
            (lhs != rhs).then(|| json!({"m": i, "lhs": coords(&lhs), "rhs": coords(&rhs)}))
        })),
    };
    let inv = invariants(act);
    let n_space = t.base.ext.lower_space();
    let invariants_are_n = Outcome::from_bool(subspaces_equal(&inv, n_space), || json!({"invariants_dim": inv.dim(), "n_dim": n_space.dim()}));
    AActionReport { axioms, e1_acts_as_e, invariants_are_n }
}

/// `A`-cleftness of `M₁/M` through `ι: A ↪ M₁`.
#[derive(Clone, Debug, Serialize)]
pub struct CleftReport {
    pub coaction_algebra_map: Outcome,
    pub coaction_coassociative: Outcome,
    pub coaction_counital: Outcome,
    pub iota_comodule_map: Outcome,
    pub convolution_inverse: Outcome,
    pub cocycle_trivial: Outcome,
    pub m_smash_a_iso: Outcome,
}

impl CleftReport {
    pub fn entries(&self) -> Vec<(&'static str, &Outcome)> {
        vec![
            ("coaction-algebra-map", &self.coaction_algebra_map),
            ("coaction-coassociative", &self.coaction_coassociative),
            ("coaction-counital", &self.coaction_counital),
            ("iota-comodule-map", &self.iota_comodule_map),
            ("convolution-inverse", &self.convolution_inverse),
            ("cocycle-trivial", &self.cocycle_trivial),
            ("m-smash-a-iso", &self.m_smash_a_iso),
        ]
    }
}

/// `(x ⊗ h)(x' ⊗ h') = xx' ⊗ hh'` in `X ⊗ K`.
fn tensor_mul(x: &Algebra, k: &Algebra, s: &[Scalar], u: &[Scalar]) -> Vector {
    let dk = k.dim();
    let mut out = vector::zeros(x.field(), x.dim() * dk);
    for (i, a) in s.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in u.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let ab = a * b;
            for (p, c) in x.basis_product(i / dk, j / dk) {
                for (q, d) in k.basis_product(i % dk, j % dk) {
                    out[p * dk + q] = &out[p * dk + q] + &(&ab * &(c * d));
                }
            }
        }
    }
    out
}

/// `x ⊗ h` in `X ⊗ K`.
fn pure(x: &[Scalar], h: &[Scalar]) -> Vector {
    x.iter().flat_map(|a| h.iter().map(move |b| a * b)).collect()
}

pub fn cleft_data(t: &TowerData, tp: &TowerPairing, ha: &HopfStructure, b_act: &ModuleAction, a_act: &ModuleAction) -> CleftReport {
    let m1 = t.m1();
    let field = m1.field();
    let a_alg = &ha.algebra;
    let (d1, da) = (m1.dim(), ha.dim());
    let rho = coaction_from_action(b_act, &tp.data.dual_basis_a());
    let rho_imgs = rho.images();

    let one_one = pure(m1.one(), a_alg.one());
    let coaction_algebra_map = Outcome::from_failure(
        (rho.apply(m1.one()) != one_one).then(|| json!({"reason": "ρ(1) != 1 ⊗ 1"})).or_else(|| {
            (0..d1).find_map(|i| {
                (0..d1).find_map(|j| {
                    let lhs = rho.apply(&m1.mul(&m1.basis(i), &m1.basis(j)));
                    let rhs = tensor_mul(m1, a_alg, &rho_imgs[i], &rho_imgs[j]);
                    (lhs != rhs).then(|| json!({"x": [i, j]}))
                })
            })
        }),
    );

    let coaction_coassociative = Outcome::from_failure((0..d1).find_map(|i| {
        let mut left = vector::zeros(field, d1 * da * da);
        let mut right = vector::zeros(field, d1 * da * da);
        for (idx, c) in rho_imgs[i].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (p, q) = (idx / da, idx % da);
            // (ρ ⊗ id): ρ(x_p) ⊗ a_q
            for (jdx, u) in rho_imgs[p].iter().enumerate() {
                if !u.is_zero() {
                    let k = jdx * da + q;
                    left[k] = &left[k] + &(c * u);
                }
            }
            // (id ⊗ Δ_A): x_p ⊗ Δ(a_q)
            for (jdx, u) in ha.delta.image(q).iter().enumerate() {
                if !u.is_zero() {
                    let k = p * da * da + jdx;
                    right[k] = &right[k] + &(c * u);
                }
            }
        }
        (left != right).then(|| json!({"x": i}))
    }));

    let coaction_counital = Outcome::from_failure((0..d1).find_map(|i| {
        let mut acc = m1.zero();
        for (idx, c) in rho_imgs[i].iter().enumerate() {
            if !c.is_zero() {
                let e = ha.eps_of(&a_alg.basis(idx % da));
                acc[idx / da] = &acc[idx / da] + &(c * &e);
            }
        }
        (acc != m1.basis(i)).then(|| json!({"x": i, "value": coords(&acc)}))
    }));

    let iota = |a: &[Scalar]| tp.a_elem(a);
    let iota_comodule_map = Outcome::from_failure((0..da).find_map(|i| {
        let lhs = rho.apply(&iota(&a_alg.basis(i)));
        let mut rhs = vector::zeros(field, d1 * da);
        for (c, p, q) in ha.sweedler(&a_alg.basis(i)) {
            vector::axpy(&mut rhs, &c, &pure(&iota(&a_alg.basis(p)), &a_alg.basis(q)));
        }
        (lhs != rhs).then(|| json!({"a": i}))
    }));

    let s = ha.antipode.as_ref().expect("antipode");
    let conv = |terms: &[(Scalar, usize, usize)], left_s: bool| -> Vector {
        let mut acc = m1.zero();
        for (c, p, q) in terms {
            let v = if left_s {
                m1.mul(&iota(&s.image(*p)), &iota(&a_alg.basis(*q)))
            } else {
                m1.mul(&iota(&a_alg.basis(*p)), &iota(&s.image(*q)))
            };
            vector::axpy(&mut acc, c, &v);
        }
        acc
    };
    let convolution_inverse = Outcome::from_failure((0..da).find_map(|i| {
        let terms = ha.sweedler(&a_alg.basis(i));
        let want = vector::scale(&ha.eps_of(&a_alg.basis(i)), m1.one());
        let (l, r) = (conv(&terms, true), conv(&terms, false));
        (l != want || r != want).then(|| json!({"a": i}))
    }));

    // σ(a, a') = ι(a₍₁₎ a'₍₁₎) ι(S(a₍₂₎ a'₍₂₎))
    let cocycle_trivial = Outcome::from_failure((0..da).find_map(|i| {
        (0..da).find_map(|j| {
            let prod = tensor_mul(a_alg, a_alg, &ha.delta.image(i), &ha.delta.image(j));
            let terms: Vec<(Scalar, usize, usize)> =
                prod.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(idx, c)| (c, idx / da, idx % da)).collect();
            let sigma = conv(&terms, false);
            let want = vector::scale(&(&ha.eps_of(&a_alg.basis(i)) * &ha.eps_of(&a_alg.basis(j))), m1.one());
            (sigma != want).then(|| json!({"a": [i, j], "sigma": coords(&sigma)}))
        })
    }));

    let sm = smash_product_unchecked(a_act);
    let m_smash = LinMap::from_fn(field, sm.algebra.dim(), d1, |idx| {
        m1.mul(&t.m_to_m1(&t.m().basis(idx / da)), &iota(&a_alg.basis(idx % da)))
    });
    let m_smash_a_iso = morphism_outcome(&check_morphism(&m_smash, &sm.algebra, m1));

    CleftReport {
        coaction_algebra_map,
        coaction_coassociative,
        coaction_counital,
        iota_comodule_map,
        convolution_inverse,
        cocycle_trivial,
        m_smash_a_iso,
    }
}

/// `β: M ⊗_N M -> M ⊗ B` for the coaction `ρ(m) = Σ_i (a_i ⊲ m) ⊗ bⁱ`.
pub fn galois_map_tower(t: &TowerData, tp: &TowerPairing, hb: &HopfStructure, a_act: &ModuleAction) -> GaloisMapReport {
    let rho = coaction_from_action(a_act, &tp.data.dual_basis_b());
    galois_map(t.m(), &t.base.quotient, t.base.ext.lower_generators(), &rho, hb.algebra.one())
}
