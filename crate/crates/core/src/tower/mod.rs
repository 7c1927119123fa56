//! Basic construction and the Jones tower `N ⊆ M ⊆ M₁ ⊆ M₂`.
//!
//! `M₁ = M ⊗_N M` carries the E-multiplication
//! `(m₁ ⊗ m₂)(m₃ ⊗ m₄) = m₁ E(m₂ m₃) ⊗ m₄` on the canonical quotient basis.
//! `M₂` is built by running the same construction on `M ⊆ M₁` with the
//! expectation `E_M = λμ`, and the isomorphism `M₂ ≅ M ⊗_N M ⊗_N M` is
//! verified rather than assumed. Cross-level identities are evaluated in `M₂`
//! after pushing elements up through the inclusions.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{
    check_morphism, endomorphism_algebra, pure_tensor, tensor_sparse, verify_algebra, Algebra, AlgebraDefect, AlgebraError, LinMap,
    RightModule, TensorQuotient,
};
use crate::exact::echelon::{dense_from_sparse, sparse_collect, sparse_from_dense, SparseVec};
use crate::exact::{echelon, vector, Echelon, Scalar, Vector};
use crate::frobenius::{verify_conditional_expectation, Extension, FrobeniusError, FrobeniusSystem};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TowerError {
    #[error("index is not a scalar multiple of 1")]
    IndexNotScalar,
    #[error("index is zero")]
    ZeroIndex,
    #[error("Frobenius homomorphism is not normalized (E(1) != 1)")]
    NotNormalized,
    #[error("level {level}: E-multiplication is not a unital associative algebra: {defect}")]
    Defect { level: usize, defect: AlgebraDefect },
    #[error("level {level}: {what}")]
    Verification { level: usize, what: String },
    #[error(transparent)]
    Frobenius(#[from] FrobeniusError),
}

/// One step `M_{k-1} ⊆ M_k` of the tower.
#[derive(Clone, Debug)]
pub struct TowerLevel {
    /// Level number `k` (1 or 2).
    pub level: usize,
    /// Frobenius system of `M_k` over `M_{k-1}`: its upper algebra is `M_k`,
    /// its inclusion is `m ↦ m·1_k` and its expectation is `E_{M_{k-1}}`.
    pub system: FrobeniusSystem,
    /// Jones idempotent `e_k = 1 ⊗ 1`.
    pub jones: Vector,
    pub lambda_inv: Scalar,
    /// `M_{k-2} ⊗ M_{k-2}` modulo balancing, whose quotient basis indexes `M_k`.
    below: Arc<TensorQuotient>,
}

impl TowerLevel {
    pub fn algebra(&self) -> &Algebra {
        &self.system.ext.upper
    }

    pub fn inclusion(&self) -> &LinMap {
        &self.system.ext.incl
    }

    pub fn cond_exp(&self) -> &LinMap {
        &self.system.e
    }

    pub fn lambda(&self) -> Scalar {
        self.lambda_inv.inv().expect("nonzero index")
    }

    /// The tensor quotient whose basis is the basis of this level.
    pub fn quotient(&self) -> &TensorQuotient {
        &self.below
    }
}

/// `N ⊆ M ⊆ M₁ ⊆ M₂` with `F = E_M ∘ E_{M₁}: M₂ -> M`.
#[derive(Clone, Debug)]
pub struct TowerData {
    pub base: FrobeniusSystem,
    pub levels: Vec<TowerLevel>,
    pub f: LinMap,
}

fn ensure_ready(sys: &FrobeniusSystem) -> Result<Scalar, TowerError> {
    let lambda_inv = sys.lambda_inv.clone().ok_or(TowerError::IndexNotScalar)?;
    if lambda_inv.is_zero() {
        return Err(TowerError::ZeroIndex);
    }
    if sys.e.apply(sys.upper().one()) != *sys.ext.lower.one() {
        return Err(TowerError::NotNormalized);
    }
    Ok(lambda_inv)
}

/// The E-multiplication algebra on `M ⊗_N M`, its unit `Σ x_i ⊗ y_i`.
fn e_multiplication(sys: &FrobeniusSystem) -> Algebra {
    let m = sys.upper();
    let f = m.field();
    let d = m.dim();
    let q = &sys.quotient;
    let eprod: Vec<SparseVec> = (0..d * d)
        .map(|ij| sparse_from_dense(&sys.e_up(&dense_from_sparse(f, d, m.basis_product(ij / d, ij % d)))))
        .collect();
    Algebra::from_products(
        f,
        q.dim(),
        |i, j| {
            let (a, b) = q.pair(i);
            let (c, e) = q.pair(j);
            let left = m.mul_sparse(&[(a, f.one())], &eprod[b * d + c]);
            sparse_from_dense(&q.project_sparse(&pure_tensor(d, &left, &[(e, f.one())])))
        },
        q.project_sparse(&sys.tensor),
    )
}

/// `M₁ = M ⊗_N M` with `e₁`, the inclusion `m ↦ m·1₁` and `E_M = λμ`, verified
/// as an algebra extension with dual bases `{λ⁻¹x_i ⊗ 1}`, `{1 ⊗ y_i}`.
pub fn basic_construction(sys: &FrobeniusSystem) -> Result<TowerLevel, TowerError> {
    basic_construction_at(sys, 1)
}

fn basic_construction_at(sys: &FrobeniusSystem, level: usize) -> Result<TowerLevel, TowerError> {
    let lambda_inv = ensure_ready(sys)?;
    let lambda = lambda_inv.inv().expect("nonzero");
    let m = sys.upper();
    let f = m.field();
    let d = m.dim();
    let q = sys.quotient.clone();
    let m1 = e_multiplication(sys);
    verify_algebra(&m1).map_err(|defect| TowerError::Defect { level, defect })?;
    let big = m1.dim();

    let jones = q.project_pure(m.one(), m.one());
    if m1.mul(&jones, &jones) != jones {
        return Err(TowerError::Verification { level, what: "Jones idempotent is not idempotent".into() });
    }

    // m ↦ m·1₁ = Σ m x_i ⊗ y_i
    let incl_images: Vec<Vector> = (0..d)
        .map(|r| {
            let t: SparseVec = sys
                .tensor
                .iter()
                .flat_map(|(idx, c)| {
                    let left = m.mul_sparse(&[(r, f.one())], &[(idx / d, c.clone())]);
                    pure_tensor(d, &left, &[(idx % d, f.one())])
                })
                .collect();
            q.project_sparse(&sparse_collect(f, t))
        })
        .collect();
    let incl = LinMap::from_images(f, big, &incl_images);
    let ext = Extension::new(m1.clone(), m.clone(), incl).map_err(|e| TowerError::Verification {
        level,
        what: format!("inclusion m ↦ m·1 is not a unital monomorphism ({e})"),
    })?;

    // E_M(a ⊗ b) = λ ab
    let e_images: Vec<Vector> = (0..big)
        .map(|i| {
            let (a, b) = q.pair(i);
            vector::scale(&lambda, &dense_from_sparse(f, d, m.basis_product(a, b)))
        })
        .collect();
    let e_m = LinMap::from_images(f, d, &e_images);
    let rep = verify_conditional_expectation(&ext, &e_m);
    if !rep.passes() {
        return Err(TowerError::Verification { level, what: format!("E_M is not a conditional expectation ({rep:?})") });
    }

    let one = m.one();
    let mut entries = Vec::new();
    for (x, y) in sys.pairs() {
        let u = q.project_pure(&vector::scale(&lambda_inv, &x), one);
        let v = q.project_pure(one, &y);
        entries.extend(tensor_sparse(big, &u, &v));
    }
    let tensor = sparse_collect(f, entries);
    let next_quotient = Arc::new(TensorQuotient::new(&m1, ext.lower_generators()));
    let system = FrobeniusSystem::from_parts(ext, e_m, next_quotient, tensor)?;
    if system.lambda_inv.as_ref() != Some(&lambda_inv) {
        return Err(TowerError::Verification { level, what: "index changed under the basic construction".into() });
    }
    Ok(TowerLevel { level, system, jones, lambda_inv, below: q })
}

/// Levels 1 and 2 with `F = E_M ∘ E_{M₁}`.
pub fn build_tower(sys: &FrobeniusSystem) -> Result<TowerData, TowerError> {
    extend_tower(sys, basic_construction_at(sys, 1)?)
}

/// Adds level 2 on top of an already built level 1.
pub fn extend_tower(sys: &FrobeniusSystem, l1: TowerLevel) -> Result<TowerData, TowerError> {
    let l2 = basic_construction_at(&l1.system, 2)?;
    let f = l1.cond_exp().compose(l2.cond_exp()).expect("dimensions");
    Ok(TowerData { base: sys.clone(), levels: vec![l1, l2], f })
}

impl TowerData {
    pub fn lambda(&self) -> Scalar {
        self.levels[0].lambda()
    }

    pub fn lambda_inv(&self) -> &Scalar {
        &self.levels[0].lambda_inv
    }

    pub fn n(&self) -> &Algebra {
        &self.base.ext.lower
    }

    pub fn m(&self) -> &Algebra {
        self.base.upper()
    }

    pub fn m1(&self) -> &Algebra {
        self.levels[0].algebra()
    }

    pub fn m2(&self) -> &Algebra {
        self.levels[1].algebra()
    }

    /// `E_M: M₁ -> M`.
    pub fn e_m(&self) -> &LinMap {
        self.levels[0].cond_exp()
    }

    /// `E_{M₁}: M₂ -> M₁`.
    pub fn e_m1(&self) -> &LinMap {
        self.levels[1].cond_exp()
    }

    pub fn e1(&self) -> &Vector {
        &self.levels[0].jones
    }

    pub fn e2(&self) -> &Vector {
        &self.levels[1].jones
    }

    pub fn m1_to_m2(&self, x: &[Scalar]) -> Vector {
        self.levels[1].inclusion().apply(x)
    }

    pub fn m_to_m1(&self, x: &[Scalar]) -> Vector {
        self.levels[0].inclusion().apply(x)
    }

    pub fn m_to_m2(&self, x: &[Scalar]) -> Vector {
        self.m1_to_m2(&self.m_to_m1(x))
    }

    pub fn n_to_m(&self, x: &[Scalar]) -> Vector {
        self.base.ext.embed(x)
    }

    /// `e₁` as an element of `M₂`.
    pub fn e1_top(&self) -> Vector {
        self.m1_to_m2(self.e1())
    }

    /// `E_M` composed with the inclusion into `M₁`.
    pub fn e_m_up(&self, x: &[Scalar]) -> Vector {
        self.m_to_m1(&self.e_m().apply(x))
    }

    /// `E_{M₁}` composed with the inclusion into `M₂`.
    pub fn e_m1_up(&self, x: &[Scalar]) -> Vector {
        self.m1_to_m2(&self.e_m1().apply(x))
    }

    /// Generators of `N` and of `M` as elements of `M₂`.
    pub fn n_generators_top(&self) -> Vec<Vector> {
        self.base.ext.lower_generators().iter().map(|g| self.m_to_m2(g)).collect()
    }

    pub fn m_generators_top(&self) -> Vec<Vector> {
        self.levels[0].system.ext.lower_generators().iter().map(|g| self.m1_to_m2(g)).collect()
    }

    /// Generators of `N` inside `M₁`.
    pub fn n_generators_m1(&self) -> Vec<Vector> {
        self.base.ext.lower_generators().iter().map(|g| self.m_to_m1(g)).collect()
    }
}

/// `f ↦ Σ f(x_i) ⊗ y_i` from `End(M_N)` to `M₁`, checked to be an algebra
/// isomorphism.
#[derive(Clone, Debug)]
pub struct EndoRingIso {
    pub map: LinMap,
    pub end_dim: usize,
    pub m1_dim: usize,
    pub is_isomorphism: bool,
    /// `m ⊗ n ↦ λ_m E λ_n` composed with the forward map is the identity on `M₁`.
    pub inverse_agrees: bool,
}

pub fn endo_ring_iso(sys: &FrobeniusSystem, level: &TowerLevel) -> Result<EndoRingIso, AlgebraError> {
    let m = sys.upper();
    let f = m.field();
    let d = m.dim();
    let module = RightModule::restriction(m, &sys.ext.lower, &sys.ext.incl);
    let end = endomorphism_algebra(&module)?;
    let q = level.quotient();
    let pairs = sys.pairs();
    let images: Vec<Vector> = end
        .maps
        .iter()
        .map(|g| {
            let t: SparseVec = pairs.iter().flat_map(|(x, y)| tensor_sparse(d, &g.mul_vec(x), y)).collect();
            q.project_sparse(&sparse_collect(f, t))
        })
        .collect();
    let map = LinMap::from_images(f, level.algebra().dim(), &images);
    let report = check_morphism(&map, &end.algebra, level.algebra());
    // λ_a E λ_b for the quotient basis (a, b): v ↦ e_a E(e_b v)
    let inverse_agrees = (0..q.dim()).all(|i| {
        let (a, b) = q.pair(i);
        let g = crate::exact::Matrix::from_columns(
            f,
            d,
            &(0..d).map(|c| m.mul(&m.basis(a), &sys.e_up(&m.mul(&m.basis(b), &m.basis(c))))).collect::<Vec<_>>(),
        );
        match end.coordinates(&g) {
            Some(coords) => map.apply(&coords) == vector::unit(f, q.dim(), i),
            None => false,
        }
    });
    Ok(EndoRingIso { map, end_dim: end.algebra.dim(), m1_dim: level.algebra().dim(), is_isomorphism: report.is_isomorphism(), inverse_agrees })
}

/// `M₂ ≅ M ⊗_N M ⊗_N M` through `m₁ ⊗ m₂ ⊗ m₃ ↦ (m₁ ⊗ m₂) ⊗_M (1 ⊗ m₃)`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct EmtwoReport {
    pub triple_dim: usize,
    pub m2_dim: usize,
    /// The map kills every relation of the triple tensor product.
    pub well_defined: bool,
    pub rank: usize,
}

impl EmtwoReport {
    pub fn holds(&self) -> bool {
        self.well_defined && self.triple_dim == self.m2_dim && self.rank == self.m2_dim
    }
}

pub fn verify_emtwo(t: &TowerData) -> EmtwoReport {
    let m = t.m();
    let f = m.field();
    let d = m.dim();
    let l1 = &t.levels[0];
    let l2 = &t.levels[1];
    let q1 = l1.quotient();
    let q2 = l2.quotient();
    let idx = |a: usize, b: usize, c: usize| (a * d + b) * d + c;
    // Relations n-balanced in both slots.
    let mut rel = Echelon::new(f, d * d * d);
    for g in t.base.ext.lower_generators() {
        let gs = sparse_from_dense(g);
        for a in 0..d {
            let ag = m.mul_sparse(&[(a, f.one())], &gs);
            for b in 0..d {
                let bg = m.mul_sparse(&[(b, f.one())], &gs);
                let gb = m.mul_sparse(&gs, &[(b, f.one())]);
                for c in 0..d {
                    let mut r1: SparseVec = ag.iter().map(|(k, x)| (idx(*k, b, c), x.clone())).collect();
                    r1.extend(gb.iter().map(|(k, x)| (idx(a, *k, c), -x)));
                    rel.insert_sparse(sparse_collect(f, r1));
                    let gc = m.mul_sparse(&gs, &[(c, f.one())]);
                    let mut r2: SparseVec = bg.iter().map(|(k, x)| (idx(a, *k, c), x.clone())).collect();
                    r2.extend(gc.iter().map(|(k, x)| (idx(a, b, *k), -x)));
                    rel.insert_sparse(sparse_collect(f, r2));
                }
            }
        }
    }
    let relations = rel.finish();
    let triple_dim = d * d * d - relations.dim();
    let one = m.one();
    let phi = |a: usize, b: usize, c: usize| -> Vector {
        let u = q1.project_pure(&m.basis(a), &m.basis(b));
        let v = q1.project_pure(one, &m.basis(c));
        q2.project_pure(&u, &v)
    };
    let images: Vec<Vector> = (0..d * d * d).map(|i| phi(i / (d * d), (i / d) % d, i % d)).collect();
    let apply = |s: &[(usize, Scalar)]| -> Vector {
        let mut out = vector::zeros(f, q2.dim());
        for (i, x) in s {
            vector::axpy(&mut out, x, &images[*i]);
        }
        out
    };
    let well_defined = relations.basis_sparse().iter().all(|r| vector::is_zero(&apply(r)));
    let rank = echelon::rank_of(f, q2.dim(), &images);
    EmtwoReport { triple_dim, m2_dim: q2.dim(), well_defined, rank }
}

/// `e₁e₂e₁ = λe₁`, `e₂e₁e₂ = λe₂`, `E_M(e₁) = λ`, `E_{M₁}(e₂) = λ`,
/// `F(e₂) = λ` and `F(e₂e₁) = λ²`, all evaluated in `M₂`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct BraidReport {
    pub e1e2e1: bool,
    pub e2e1e2: bool,
    pub e_m_of_e1: bool,
    pub e_m1_of_e2: bool,
    pub f_of_e2: bool,
    pub f_of_e2e1: bool,
}

impl BraidReport {
    pub fn holds(&self) -> bool {
        self.e1e2e1 && self.e2e1e2 && self.e_m_of_e1 && self.e_m1_of_e2 && self.f_of_e2 && self.f_of_e2e1
    }
}

pub fn verify_braid_relations(t: &TowerData) -> BraidReport {
    let m2 = t.m2();
    let lambda = t.lambda();
    let e1 = t.e1_top();
    let e2 = t.e2().clone();
    let scalar_m = |c: &Scalar| t.m().scalar(c);
    BraidReport {
        e1e2e1: m2.mul_all(&[&e1, &e2, &e1]) == vector::scale(&lambda, &e1),
        e2e1e2: m2.mul_all(&[&e2, &e1, &e2]) == vector::scale(&lambda, &e2),
        e_m_of_e1: t.e_m().apply(t.e1()) == scalar_m(&lambda),
        e_m1_of_e2: t.e_m1().apply(&e2) == t.m1().scalar(&lambda),
        f_of_e2: t.f.apply(&e2) == scalar_m(&lambda),
        f_of_e2e1: t.f.apply(&m2.mul(&e2, &e1)) == scalar_m(&(&lambda * &lambda)),
    }
}

/// First failing basis element for each Pimsner–Popa identity:
/// `λ⁻¹e₁E_M(e₁x) = e₁x`, `λ⁻¹E_M(xe₁)e₁ = xe₁` on `M₁` and the same with
/// `e₂`, `E_{M₁}` on `M₂`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct PimsnerPopaReport {
    pub level1: Option<usize>,
    pub level1_opposite: Option<usize>,
    pub level2: Option<usize>,
    pub level2_opposite: Option<usize>,
}

impl PimsnerPopaReport {
    pub fn holds(&self) -> bool {
        self.level1.is_none() && self.level1_opposite.is_none() && self.level2.is_none() && self.level2_opposite.is_none()
    }
}

fn pimsner_popa(alg: &Algebra, e: &[Scalar], exp_up: impl Fn(&[Scalar]) -> Vector, lambda_inv: &Scalar) -> (Option<usize>, Option<usize>) {
    let mut left = None;
    let mut right = None;
    for i in 0..alg.dim() {
        let x = alg.basis(i);
        let ex = alg.mul(e, &x);
        if left.is_none() && vector::scale(lambda_inv, &alg.mul(e, &exp_up(&ex))) != ex {
            left = Some(i);
        }
        let xe = alg.mul(&x, e);
        if right.is_none() && vector::scale(lambda_inv, &alg.mul(&exp_up(&xe), e)) != xe {
            right = Some(i);
        }
    }
    (left, right)
}

pub fn verify_pimsner_popa(t: &TowerData) -> PimsnerPopaReport {
    let li = t.lambda_inv();
    let (level1, level1_opposite) = pimsner_popa(t.m1(), t.e1(), |x| t.e_m_up(x), li);
    let (level2, level2_opposite) = pimsner_popa(t.m2(), t.e2(), |x| t.e_m1_up(x), li);
    PimsnerPopaReport { level1, level1_opposite, level2, level2_opposite }
}

/// Rank of `span{x e₁ y : x, y ∈ M}` inside `M₁`.
pub fn cyclic_generation_rank(t: &TowerData) -> usize {
    let m = t.m();
    let m1 = t.m1();
    let ups: Vec<Vector> = (0..m.dim()).map(|i| t.m_to_m1(&m.basis(i))).collect();
    let left: Vec<Vector> = ups.iter().map(|x| m1.mul(x, t.e1())).collect();
    let prods = left.iter().flat_map(|xe| ups.iter().map(move |y| m1.mul(xe, y)));
    echelon::rank_of(m1.field(), m1.dim(), prods)
}

/// Reproducible dump of one level.
#[derive(Clone, Debug, Serialize)]
pub struct LevelDump {
    pub level: usize,
    pub dim: usize,
    pub unit: Vec<String>,
    pub structure: Vec<(usize, usize, usize, String)>,
    pub jones: Vec<String>,
    /// Rows of the matrix of the inclusion from the level below.
    pub inclusion: Vec<Vec<String>>,
    /// Rows of the matrix of the conditional expectation onto the level below.
    pub cond_exp: Vec<Vec<String>>,
    pub lambda_inverse: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TowerDump {
    pub dims: Vec<usize>,
    pub levels: Vec<LevelDump>,
}

pub fn dump(t: &TowerData) -> TowerDump {
    let levels = t
        .levels
        .iter()
        .map(|l| LevelDump {
            level: l.level,
            dim: l.algebra().dim(),
            unit: vector::to_strings(l.algebra().one()),
            structure: l.algebra().constants().into_iter().map(|(i, j, k, c)| (i, j, k, c.to_string())).collect(),
            jones: vector::to_strings(&l.jones),
            inclusion: l.inclusion().matrix().to_string_rows(),
            cond_exp: l.cond_exp().matrix().to_string_rows(),
            lambda_inverse: l.lambda_inv.to_string(),
        })
        .collect();
    TowerDump { dims: vec![t.n().dim(), t.m().dim(), t.m1().dim(), t.m2().dim()], levels }
}

#[cfg(test)]
mod tests;
