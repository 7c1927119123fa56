use serde::Serialize;
use serde_json::json;

use super::{algebra_pairing_failure, basis_independence, coalgebra_pairing_failure, comultiplication, HopfStructure, PairingData};
use crate::algebra::{subalgebra, LinMap};
use crate::check::{coords, Outcome};
use crate::depth_two::{DepthTwoData, SKIP_NOT_IRREDUCIBLE};
use crate::exact::{vector, Matrix, Scalar, Subspace, Vector};
use crate::frobenius::Nakayama;
use crate::tower::TowerData;

/// The pairing `⟨a, b⟩ = λ⁻² F(a e₂ e₁ b)` on `A ⊗ B`.
#[derive(Clone, Debug)]
pub struct TowerPairing {
    pub data: PairingData,
    /// `A` inside `M₁`, `B` inside `M₂`; the algebra bases are the
    /// canonical bases of these subspaces.
    pub a_space: Subspace,
    pub b_space: Subspace,
    /// `Φ(b) = E_{M₁}(e₂ e₁ b)` as a map `B -> A`.
    pub phi: LinMap,
}

impl TowerPairing {
    pub fn a_elem(&self, coords: &[Scalar]) -> Vector {
        self.a_space.from_coordinates(coords)
    }

    pub fn b_elem(&self, coords: &[Scalar]) -> Vector {
        self.b_space.from_coordinates(coords)
    }

    pub fn b_coords(&self, x: &[Scalar]) -> Option<Vector> {
        self.b_space.coordinates(x)
    }

    pub fn a_coords(&self, x: &[Scalar]) -> Option<Vector> {
        self.a_space.coordinates(x)
    }
}

fn f_scalar(t: &TowerData, x: &[Scalar]) -> Result<Scalar, String> {
    t.m().as_scalar(&t.f.apply(x)).ok_or_else(|| "F is not scalar-valued on C".to_string())
}

pub fn compute_pairing(t: &TowerData, d2: &DepthTwoData) -> Result<TowerPairing, String> {
    if !d2.cents.base_irreducible {
        return Err(SKIP_NOT_IRREDUCIBLE.into());
    }
    let (m1, m2) = (t.m1(), t.m2());
    let field = m1.field();
    let (a_alg, _) = subalgebra(m1, &d2.cents.a).map_err(|e| format!("A: {e}"))?;
    let (b_alg, _) = subalgebra(m2, &d2.cents.b).map_err(|e| format!("B: {e}"))?;
    let a_basis: Vec<Vector> = d2.cents.a.basis().iter().map(|a| t.m1_to_m2(a)).collect();
    let b_basis = d2.cents.b.basis();
    let lam_inv2 = t.lambda_inv() * t.lambda_inv();
    let e2e1 = m2.mul(t.e2(), &t.e1_top());
    let mut p = Matrix::zeros(field, a_basis.len(), b_basis.len());
    for (i, a) in a_basis.iter().enumerate() {
        let ae = m2.mul(a, &e2e1);
        for (j, b) in b_basis.iter().enumerate() {
            p.set(i, j, &lam_inv2 * &f_scalar(t, &m2.mul(&ae, b))?);
        }
    }
    let phi_images = b_basis
        .iter()
        .map(|b| d2.cents.a.coordinates(&t.e_m1().apply(&m2.mul(&e2e1, b))).ok_or("E_{M₁}(e₂e₁b) is not in A"))
        .collect::<Result<Vec<_>, _>>()?;
    let phi = LinMap::from_images(field, a_basis.len(), &phi_images);
    let data = PairingData::new(a_alg, b_alg, p).map_err(|e| e.to_string())?;
    Ok(TowerPairing { data, a_space: d2.cents.a.clone(), b_space: d2.cents.b.clone(), phi })
}

/// `S = Φ⁻¹∘Ψ` with `Ψ(b) = E_{M₁}(b e₁ e₂)`.
pub fn tower_antipode(t: &TowerData, tp: &TowerPairing) -> Result<LinMap, String> {
    let m2 = t.m2();
    let e1e2 = m2.mul(&t.e1_top(), t.e2());
    let psi_images = tp
        .b_space
        .basis()
        .iter()
        .map(|b| tp.a_coords(&t.e_m1().apply(&m2.mul(b, &e1e2))).ok_or("E_{M₁}(be₁e₂) is not in A"))
        .collect::<Result<Vec<_>, _>>()?;
    let psi = LinMap::from_images(m2.field(), tp.a_space.dim(), &psi_images);
    let phi_inv = tp.phi.inverse().map_err(|_| "Φ: B -> A is not bijective".to_string())?;
    Ok(phi_inv.compose(&psi).expect("dimensions"))
}

/// `Δ`, `ε` from the pairing and `S = Φ⁻¹Ψ` on `B`.
pub fn tower_hopf(t: &TowerData, tp: &TowerPairing) -> Result<HopfStructure, String> {
    let (delta, eps) = comultiplication(&tp.data);
    let antipode = Some(tower_antipode(t, tp)?);
    Ok(HopfStructure { algebra: tp.data.b.clone(), delta, eps, antipode })
}

/// Identities specific to the reconstruction from a tower.
#[derive(Clone, Debug, Serialize)]
pub struct TowerHopfReport {
    pub dim_a_eq_dim_b: Outcome,
    pub phi_bijective: Outcome,
    pub pairing_one_e2: Outcome,
    pub coalgebra_pairing: Outcome,
    pub algebra_pairing: Outcome,
    pub basis_independence: Outcome,
    pub eps_matches_f: Outcome,
    pub antipode_remark: Outcome,
    pub s_fixes_e2: Outcome,
    pub s_squared_q_inverse: Outcome,
    pub s_involution: Outcome,
    pub exchange: Outcome,
    pub action: Outcome,
    pub left_action: Outcome,
    pub e2_central_in_b: Outcome,
    pub e1_central_in_a: Outcome,
    pub e2_integral: Outcome,
    pub e1_integral: Outcome,
    pub eps_a_e1: Outcome,
}

impl TowerHopfReport {
    pub fn entries(&self) -> Vec<(&'static str, &Outcome)> {
        vec![
            ("dim-a-eq-dim-b", &self.dim_a_eq_dim_b),
            ("phi-bijective", &self.phi_bijective),
            ("pairing-one-e2", &self.pairing_one_e2),
            ("coalgebra-pairing", &self.coalgebra_pairing),
            ("algebra-pairing", &self.algebra_pairing),
            ("basis-independence", &self.basis_independence),
            ("eps-matches-f", &self.eps_matches_f),
            ("antipode-remark", &self.antipode_remark),
            ("s-fixes-e2", &self.s_fixes_e2),
            ("s-squared-q-inverse", &self.s_squared_q_inverse),
            ("s-involution", &self.s_involution),
            ("exchange", &self.exchange),
            ("action", &self.action),
            ("left-action", &self.left_action),
            ("e2-central-in-b", &self.e2_central_in_b),
            ("e1-central-in-a", &self.e1_central_in_a),
            ("e2-integral", &self.e2_integral),
            ("e1-integral", &self.e1_integral),
            ("eps-a-e1", &self.eps_a_e1),
        ]
    }

    pub fn all_pass(&self) -> bool {
        self.entries().iter().all(|(_, o)| !o.is_fail())
    }
}

/// `Σ c (f(p) · g(q))` over the Sweedler terms of `Δ(b)`.
fn sweedler_sum(h: &HopfStructure, b: &[Scalar], n: usize, mut term: impl FnMut(usize, usize) -> Vector) -> Vector {
    let f = h.field();
    let mut acc = vector::zeros(f, n);
    for (c, p, q) in h.sweedler(b) {
        vector::axpy(&mut acc, &c, &term(p, q));
    }
    acc
}

/// Checks every tower-side identity of the reconstruction. `q_b` is the
/// Nakayama automorphism of `E_{M₁}` on `B`, when available.
pub fn verify_tower_identities(
    t: &TowerData,
    tp: &TowerPairing,
    hb: &HopfStructure,
    ha: &HopfStructure,
    q_b: Option<&Nakayama>,
) -> TowerHopfReport {
    let (m1, m2) = (t.m1(), t.m2());
    let field = m1.field();
    let (d1, d2) = (m1.dim(), m2.dim());
    let db = hb.dim();
    let da = ha.dim();
    let lam_inv = t.lambda_inv().clone();
    let e2 = t.e2().clone();
    let e1 = t.e1().clone();
    let b_basis: Vec<Vector> = (0..db).map(|j| tp.b_elem(&hb.algebra.basis(j))).collect();
    let m1_basis: Vec<Vector> = (0..d1).map(|i| m1.basis(i)).collect();
    let m1_top: Vec<Vector> = m1_basis.iter().map(|x| t.m1_to_m2(x)).collect();
    let e = |x: &[Scalar]| t.e_m1().apply(x);
    let s = hb.antipode.as_ref().expect("tower antipode");
    let s_elem = |j: usize| tp.b_elem(&s.image(j));

    let dim_a_eq_dim_b = Outcome::from_bool(da == db, || json!({"dim_a": da, "dim_b": db}));
    let phi_bijective = Outcome::from_bool(tp.phi.is_bijective(), || json!({"rank": tp.phi.rank()}));

    let one_a = ha.algebra.one();
    let e2_b = tp.b_coords(&e2);
    let pairing_one_e2 = match &e2_b {
        None => Outcome::Fail { witness: json!({"reason": "e₂ is not in B"}) },
        Some(c) => {
            let v = tp.data.pair(one_a, c);
            Outcome::from_bool(v.is_one(), || json!({"value": v.to_string()}))
        }
    };
    let coalgebra_pairing = Outcome::from_failure(coalgebra_pairing_failure(&tp.data, &hb.delta));
    let algebra_pairing = Outcome::from_failure(algebra_pairing_failure(&tp.data, &ha.delta));
    let basis_independence = basis_independence(&tp.data, &hb.delta);

    let eps_matches_f = Outcome::from_failure((0..db).find_map(|j| {
        let via_f = t.m().as_scalar(&t.f.apply(&m2.mul(&b_basis[j], &e2))).map(|v| &lam_inv * &v);
        let eps = hb.eps_of(&hb.algebra.basis(j));
        (via_f.as_ref() != Some(&eps)).then(|| json!({"basis": j, "eps": eps.to_string(), "f_side": via_f.map(|v| v.to_string())}))
    }));

    // E_{M₁}(b x e₂) = E_{M₁}(e₂ x S(b))
    let antipode_remark = Outcome::from_failure((0..db).find_map(|j| {
        let sb = s_elem(j);
        m1_top.iter().enumerate().find_map(|(i, x)| {
            let lhs = e(&m2.mul_all(&[&b_basis[j], x, &e2]));
            let rhs = e(&m2.mul_all(&[&e2, x, &sb]));
            (lhs != rhs).then(|| json!({"b": j, "x": i, "lhs": coords(&lhs), "rhs": coords(&rhs)}))
        })
    }));

    let s_fixes_e2 = match &e2_b {
        None => Outcome::skipped("e₂ is not in B"),
        Some(c) => {
            let img = s.apply(c);
            Outcome::from_bool(&img == c, || json!({"s_e2": coords(&img)}))
        }
    };

    let s2 = s.compose(s).expect("square");
    let s_squared_q_inverse = match q_b {
        None => Outcome::skipped("Nakayama automorphism on B unavailable"),
        Some(q) => {
            let prod = s2.compose(&q.map).expect("square");
            Outcome::from_bool(prod == LinMap::identity(field, db), || json!({"s2_q": prod.matrix().to_string_rows()}))
        }
    };
    let s_involution = match q_b {
        Some(q) if q.is_identity() => {
            Outcome::from_bool(s2 == LinMap::identity(field, db), || json!({"s2": s2.matrix().to_string_rows()}))
        }
        Some(_) => Outcome::skipped("q on B is not the identity"),
        None => Outcome::skipped("Nakayama automorphism on B unavailable"),
    };

    // T[x][q] = E_{M₁}(e₂ x b_q), U[x][q] = E_{M₁}(b_q x e₂)
    let t_tab: Vec<Vec<Vector>> = m1_top.iter().map(|x| b_basis.iter().map(|b| e(&m2.mul_all(&[&e2, x, b]))).collect()).collect();
    let u_tab: Vec<Vec<Vector>> = m1_top.iter().map(|x| b_basis.iter().map(|b| e(&m2.mul_all(&[b, x, &e2]))).collect()).collect();

    // y b = λ⁻¹ b₍₂₎ E_{M₁}(e₂ y b₍₁₎)
    let exchange = Outcome::from_failure((0..db).find_map(|j| {
        let bj = hb.algebra.basis(j);
        (0..d1).find_map(|y| {
            let lhs = m2.mul(&m1_top[y], &b_basis[j]);
            let rhs = vector::scale(&lam_inv, &sweedler_sum(hb, &bj, d2, |p, q| m2.mul(&b_basis[q], &t.m1_to_m2(&t_tab[y][p]))));
            (lhs != rhs).then(|| json!({"b": j, "y": y}))
        })
    }));

    // E_{M₁}(e₂ x y b) = λ⁻¹ E_{M₁}(e₂ x b₍₂₎) E_{M₁}(e₂ y b₍₁₎)
    // E_{M₁}(b x y e₂) = λ⁻¹ E_{M₁}(b₍₁₎ x e₂) E_{M₁}(b₍₂₎ y e₂)
    let mut action = None;
    let mut left_action = None;
    'outer: for j in 0..db {
        let bj = hb.algebra.basis(j);
        for x in 0..d1 {
            for y in 0..d1 {
                let xy = t.m1_to_m2(&m1.mul(&m1_basis[x], &m1_basis[y]));
                if action.is_none() {
                    let lhs = e(&m2.mul_all(&[&e2, &xy, &b_basis[j]]));
                    let rhs = vector::scale(&lam_inv, &sweedler_sum(hb, &bj, d1, |p, q| m1.mul(&t_tab[x][q], &t_tab[y][p])));
                    if lhs != rhs {
                        action = Some(json!({"b": j, "x": x, "y": y, "lhs": coords(&lhs), "rhs": coords(&rhs)}));
                    }
                }
                if left_action.is_none() {
                    let lhs = e(&m2.mul_all(&[&b_basis[j], &xy, &e2]));
                    let rhs = vector::scale(&lam_inv, &sweedler_sum(hb, &bj, d1, |p, q| m1.mul(&u_tab[x][p], &u_tab[y][q])));
                    if lhs != rhs {
                        left_action = Some(json!({"b": j, "x": x, "y": y, "lhs": coords(&lhs), "rhs": coords(&rhs)}));
                    }
                }
                if action.is_some() && left_action.is_some() {
                    break 'outer;
                }
            }
        }
    }

    let e2_central_in_b = match &e2_b {
        None => Outcome::Fail { witness: json!({"reason": "e₂ is not in B"}) },
        Some(c) => Outcome::from_bool(hb.algebra.is_central(c), || json!({"e2": coords(c)})),
    };
    let e1_in_a = tp.a_coords(&e1);
    let e1_central_in_a = match &e1_in_a {
        None => Outcome::Fail { witness: json!({"reason": "e₁ is not in A"}) },
        Some(c) => Outcome::from_bool(ha.algebra.is_central(c), || json!({"e1": coords(c)})),
    };

    // e₂ b = ε(b) e₂
    let e2_integral = Outcome::from_failure((0..db).find_map(|j| {
        let lhs = m2.mul(&e2, &b_basis[j]);
        let rhs = vector::scale(&hb.eps_of(&hb.algebra.basis(j)), &e2);
        (lhs != rhs).then(|| json!({"b": j}))
    }));
    // e₁ a = ε_A(a) e₁ = a e₁
    let e1_integral = Outcome::from_failure((0..da).find_map(|i| {
        let a = tp.a_elem(&ha.algebra.basis(i));
        let want = vector::scale(&ha.eps_of(&ha.algebra.basis(i)), &e1);
        let (l, r) = (m1.mul(&e1, &a), m1.mul(&a, &e1));
        (l != want || r != want).then(|| json!({"a": i, "left_ok": l == want, "right_ok": r == want}))
    }));
    let eps_a_e1 = match &e1_in_a {
        None => Outcome::Fail { witness: json!({"reason": "e₁ is not in A"}) },
        Some(c) => {
            let v = ha.eps_of(c);
            Outcome::from_bool(v.is_one(), || json!({"value": v.to_string()}))
        }
    };

    TowerHopfReport {
        dim_a_eq_dim_b,
        phi_bijective,
        pairing_one_e2,
        coalgebra_pairing,
        algebra_pairing,
        basis_independence,
        eps_matches_f,
        antipode_remark,
        s_fixes_e2,
        s_squared_q_inverse,
        s_involution,
        exchange,
        action: Outcome::from_failure(action),
        left_action: Outcome::from_failure(left_action),
        e2_central_in_b,
        e1_central_in_a,
        e2_integral,
        e1_integral,
        eps_a_e1,
    }
}
