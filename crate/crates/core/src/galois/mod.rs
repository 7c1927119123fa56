//! Module-algebra actions, invariants and smash products, and the
//! Galois-theoretic identities of a depth-two tower: the action of `B` on
//! `M₁`, `M₂ ≅ M₁ # B`, the action of `A` on `M`, cleftness of `M₁/M`, and
//! bijectivity of Galois maps and of `Ψ: X # H -> End(X_N)`.

mod tower;

pub use tower::{
    action_a_on_m, action_b_on_m1, cleft_data, galois_map_tower, theta_report, verify_a_action, verify_b_action, AActionReport,
    BActionReport, CleftReport, ThetaReport,
};

use serde::Serialize;
use serde_json::json;

use crate::algebra::{subalgebra, verify_algebra, Algebra, AlgebraDefect, EndAlgebra, LinMap, MorphismReport, TensorQuotient};
use crate::check::{coords, Outcome};
use crate::exact::{echelon, vector, Echelon, Field, Matrix, Scalar, Subspace, Vector};
use crate::frobenius::FrobeniusSystem;
use crate::hopf::HopfStructure;

/// A left action of `hopf` on `algebra`; `matrices[j]` is `x ↦ h_j ⊲ x`.
#[derive(Clone, Debug)]
pub struct ModuleAction {
    pub hopf: HopfStructure,
    pub algebra: Algebra,
    pub matrices: Vec<Matrix>,
}

impl ModuleAction {
    pub fn from_fn(hopf: HopfStructure, algebra: Algebra, f: impl Fn(usize, &[Scalar]) -> Vector) -> ModuleAction {
        let d = algebra.dim();
        let field = algebra.field();
        let matrices = (0..hopf.dim())
            .map(|j| Matrix::from_columns(field, d, &(0..d).map(|i| f(j, &algebra.basis(i))).collect::<Vec<_>>()))
            .collect();
        ModuleAction { hopf, algebra, matrices }
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn act_basis(&self, j: usize, x: &[Scalar]) -> Vector {
        self.matrices[j].mul_vec(x)
    }

    pub fn act(&self, h: &[Scalar], x: &[Scalar]) -> Vector {
        let mut out = self.algebra.zero();
        for (j, c) in h.iter().enumerate() {
            if !c.is_zero() {
                vector::axpy(&mut out, c, &self.act_basis(j, x));
            }
        }
        out
    }

    /// The action on a stable subalgebra, in the subspace's canonical
    /// coordinates; `None` if the subspace is not stable.
    pub fn restrict(&self, sub: &Subspace) -> Option<ModuleAction> {
        let (alg, _) = subalgebra(&self.algebra, sub).ok()?;
        let basis = sub.basis();
        let field = self.field();
        let matrices = self
            .matrices
            .iter()
            .map(|m| {
                let cols = basis.iter().map(|v| sub.coordinates(&m.mul_vec(v))).collect::<Option<Vec<_>>>()?;
                Some(Matrix::from_columns(field, basis.len(), &cols))
            })
            .collect::<Option<Vec<_>>>()?;
        Some(ModuleAction { hopf: self.hopf.clone(), algebra: alg, matrices })
    }
}

/// Module-algebra axioms, each on all basis tuples.
#[derive(Clone, Debug, Serialize)]
pub struct ActionReport {
    pub unit_acts_trivially: Outcome,
    pub associative: Outcome,
    pub module_algebra: Outcome,
    pub unital: Outcome,
}

impl ActionReport {
    pub fn entries(&self) -> Vec<(&'static str, &Outcome)> {
        vec![
            ("unit-acts-trivially", &self.unit_acts_trivially),
            ("associative", &self.associative),
            ("module-algebra", &self.module_algebra),
            ("unital", &self.unital),
        ]
    }

    pub fn all_pass(&self) -> bool {
        self.entries().iter().all(|(_, o)| o.is_pass())
    }
}

pub fn verify_action(act: &ModuleAction) -> ActionReport {
    let h = &act.hopf;
    let x = &act.algebra;
    let (dh, dx) = (h.dim(), x.dim());
    let xb: Vec<Vector> = (0..dx).map(|i| x.basis(i)).collect();

    let unit_acts_trivially = Outcome::from_failure((0..dx).find_map(|i| {
        let v = act.act(h.algebra.one(), &xb[i]);
        (v != xb[i]).then(|| json!({"x": i, "image": coords(&v)}))
    }));

    let associative = Outcome::from_failure((0..dh).find_map(|a| {
        (0..dh).find_map(|b| {
            let hab = h.algebra.mul(&h.algebra.basis(a), &h.algebra.basis(b));
            (0..dx).find_map(|i| {
                let lhs = act.act(&hab, &xb[i]);
                let rhs = act.act_basis(a, &act.act_basis(b, &xb[i]));
                (lhs != rhs).then(|| json!({"h": [a, b], "x": i}))
            })
        })
    }));

    let images: Vec<Vec<Vector>> = (0..dh).map(|j| xb.iter().map(|v| act.act_basis(j, v)).collect()).collect();
    let module_algebra = Outcome::from_failure((0..dh).find_map(|a| {
        let terms = h.sweedler(&h.algebra.basis(a));
        (0..dx).find_map(|i| {
            (0..dx).find_map(|k| {
                let lhs = act.act_basis(a, &x.mul(&xb[i], &xb[k]));
                let mut rhs = x.zero();
                for (c, p, q) in &terms {
                    vector::axpy(&mut rhs, c, &x.mul(&images[*p][i], &images[*q][k]));
                }
                (lhs != rhs).then(|| json!({"h": a, "x": [i, k], "lhs": coords(&lhs), "rhs": coords(&rhs)}))
            })
        })
    }));

    let unital = Outcome::from_failure((0..dh).find_map(|a| {
        let lhs = act.act_basis(a, x.one());
        let rhs = vector::scale(&h.eps_of(&h.algebra.basis(a)), x.one());
        (lhs != rhs).then(|| json!({"h": a, "image": coords(&lhs)}))
    }));

    ActionReport { unit_acts_trivially, associative, module_algebra, unital }
}

/// `{x : h ⊲ x = ε(h) x for all h}`.
pub fn invariants(act: &ModuleAction) -> Subspace {
    let f = act.field();
    let d = act.algebra.dim();
    let mut rows = Echelon::new(f, d);
    for (j, m) in act.matrices.iter().enumerate() {
        let e = act.hopf.eps_of(&act.hopf.algebra.basis(j));
        for r in 0..d {
            let row: Vector = (0..d).map(|c| if r == c { m.get(r, c) - &e } else { m.get(r, c).clone() }).collect();
            rows.insert(&row);
        }
    }
    Subspace::span(f, d, echelon::null_space(&rows.finish()))
}

pub fn subspaces_equal(a: &Subspace, b: &Subspace) -> bool {
    a.contains_subspace(b) && b.contains_subspace(a)
}

/// `X # H` on the basis `x_i # h_a` at index `i * dim H + a`.
#[derive(Clone, Debug)]
pub struct SmashProduct {
    pub algebra: Algebra,
    pub x_dim: usize,
    pub h_dim: usize,
}

impl SmashProduct {
    pub fn pure(&self, x: &[Scalar], h: &[Scalar]) -> Vector {
        let f = self.algebra.field();
        let mut out = vector::zeros(f, self.algebra.dim());
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in h.iter().enumerate() {
                if !b.is_zero() {
                    out[i * self.h_dim + j] = a * b;
                }
            }
        }
        out
    }
}

/// `(x # h)(x' # h') = x (h₍₁₎ ⊲ x') # h₍₂₎ h'`, without the associativity
/// check.
pub fn smash_product_unchecked(act: &ModuleAction) -> SmashProduct {
    let h = &act.hopf;
    let x = &act.algebra;
    let field = act.field();
    let (dh, dx) = (h.dim(), x.dim());
    let images: Vec<Vec<Vector>> = (0..dh).map(|j| (0..dx).map(|k| act.act_basis(j, &x.basis(k))).collect()).collect();
    let deltas: Vec<Vec<(Scalar, usize, usize)>> = (0..dh).map(|a| h.sweedler(&h.algebra.basis(a))).collect();
    let mut unit = vector::zeros(field, dx * dh);
    for (i, a) in x.one().iter().enumerate() {
        for (j, b) in h.algebra.one().iter().enumerate() {
            if !a.is_zero() && !b.is_zero() {
                unit[i * dh + j] = a * b;
            }
        }
    }
    let algebra = Algebra::from_products(
        field,
        dx * dh,
        |pidx, qidx| {
            let (i, a) = (pidx / dh, pidx % dh);
            let (k, b) = (qidx / dh, qidx % dh);
            let mut entries = Vec::new();
            for (c, p, q) in &deltas[a] {
                let xs = x.mul_sparse(&[(i, field.one())], &echelon::sparse_from_dense(&images[*p][k]));
                let hs = h.algebra.basis_product(*q, b);
                for (r, u) in &xs {
                    for (s, w) in hs {
                        entries.push((r * dh + s, &(c * u) * w));
                    }
                }
            }
            echelon::sparse_collect(field, entries)
        },
        unit,
    );
    SmashProduct { algebra, x_dim: dx, h_dim: dh }
}

/// The smash product with associativity re-verified on all basis triples.
pub fn smash_product(act: &ModuleAction) -> Result<SmashProduct, AlgebraDefect> {
    let sm = smash_product_unchecked(act);
    verify_algebra(&sm.algebra)?;
    Ok(sm)
}

pub fn morphism_outcome(r: &MorphismReport) -> Outcome {
    Outcome::from_bool(r.is_isomorphism(), || {
        json!({
            "unital": r.unital,
            "multiplicative_failure": r.multiplicative_failure,
            "injective": r.injective,
            "surjective": r.surjective,
        })
    })
}

/// `ρ(x) = Σ_j (h_j ⊲ x) ⊗ hʲ` into `X ⊗ K`, where `dual[j]` is `hʲ` in the
/// coordinates of `K`.
pub fn coaction_from_action(act: &ModuleAction, dual: &[Vector]) -> LinMap {
    let field = act.field();
    let dx = act.algebra.dim();
    let k = dual.first().map_or(0, Vec::len);
    LinMap::from_fn(field, dx, dx * k, |i| {
        let x = act.algebra.basis(i);
        let mut out = vector::zeros(field, dx * k);
        for (j, hj) in dual.iter().enumerate() {
            let img = act.act_basis(j, &x);
            for (p, a) in img.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (q, b) in hj.iter().enumerate() {
                    if !b.is_zero() {
                        out[p * k + q] = &out[p * k + q] + &(a * b);
                    }
                }
            }
        }
        out
    })
}

/// `β: X ⊗_N X -> X ⊗ K`, `x ⊗ x' ↦ x x'₍₀₎ ⊗ x'₍₁₎`.
#[derive(Clone, Debug, Serialize)]
pub struct GaloisMapReport {
    /// `ρ(n) = n ⊗ 1` for the generators of `N`.
    pub n_coinvariant: bool,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
}

impl GaloisMapReport {
    pub fn bijective(&self) -> bool {
        self.n_coinvariant && self.rank == self.source_dim && self.rank == self.target_dim
    }

    pub fn outcome(&self) -> Outcome {
        Outcome::from_bool(self.bijective(), || serde_json::to_value(self).expect("serializable"))
    }
}

pub fn galois_map(x: &Algebra, quotient: &TensorQuotient, n_gens: &[Vector], rho: &LinMap, k_unit: &[Scalar]) -> GaloisMapReport {
    let field = x.field();
    let dx = x.dim();
    let k = k_unit.len();
    let n_coinvariant = n_gens.iter().all(|n| {
        let mut want = vector::zeros(field, dx * k);
        for (p, a) in n.iter().enumerate() {
            for (q, b) in k_unit.iter().enumerate() {
                want[p * k + q] = a * b;
            }
        }
        rho.apply(n) == want
    });
    let rho_imgs = rho.images();
    let columns: Vec<Vector> = (0..quotient.dim())
        .map(|qi| {
            let (i, j) = quotient.pair(qi);
            let mut out = vector::zeros(field, dx * k);
            for (idx, c) in rho_imgs[j].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (p, s) = (idx / k, idx % k);
                for (r, u) in x.basis_product(i, p) {
                    out[r * k + s] = &out[r * k + s] + &(c * u);
                }
            }
            out
        })
        .collect();
    let rank = echelon::rank_of(field, dx * k, &columns);
    GaloisMapReport { n_coinvariant, source_dim: quotient.dim(), target_dim: dx * k, rank }
}

/// `Ψ(x # h) = (y ↦ x (h ⊲ y))` into `End(X_N)`, with the inverse
/// `g ↦ Σ_i g(x_i) t y_i` when dual bases for `E = t ⊲ (-)` are supplied.
#[derive(Clone, Debug, Serialize)]
pub struct PsiReport {
    pub smash_dim: usize,
    pub end_dim: usize,
    pub lands_in_end: Outcome,
    pub isomorphism: Outcome,
    pub inverse: Outcome,
}

impl PsiReport {
    pub fn entries(&self) -> Vec<(&'static str, &Outcome)> {
        vec![("lands-in-end", &self.lands_in_end), ("isomorphism", &self.isomorphism), ("inverse", &self.inverse)]
    }
}

pub fn psi_map(sm: &SmashProduct, act: &ModuleAction, end: &EndAlgebra, frob: Option<(&FrobeniusSystem, &Vector)>) -> PsiReport {
    let x = &act.algebra;
    let field = x.field();
    let dh = sm.h_dim;
    let op = |idx: usize| -> Matrix { x.left_mult(&x.basis(idx / dh)).mul(&act.matrices[idx % dh]).expect("square") };
    let images: Vec<Option<Vector>> = (0..sm.algebra.dim()).map(|idx| end.coordinates(&op(idx))).collect();
    let base = PsiReport {
        smash_dim: sm.algebra.dim(),
        end_dim: end.algebra.dim(),
        lands_in_end: Outcome::Pass,
        isomorphism: Outcome::skipped("Ψ does not land in End(X_N)"),
        inverse: Outcome::skipped("Ψ does not land in End(X_N)"),
    };
    if let Some(bad) = images.iter().position(Option::is_none) {
        return PsiReport { lands_in_end: Outcome::Fail { witness: json!({"smash_basis": bad}) }, ..base };
    }
    let images: Vec<Vector> = images.into_iter().map(Option::unwrap).collect();
    let psi = LinMap::from_images(field, end.algebra.dim(), &images);
    let isomorphism = morphism_outcome(&crate::algebra::check_morphism(&psi, &sm.algebra, &end.algebra));
    let inverse = match frob {
        None => Outcome::skipped("no Frobenius system for X/N supplied"),
        Some((sys, t)) => {
            let pairs = sys.pairs();
            let t_el = sm.pure(x.one(), t);
            let inv = |g: &Matrix| -> Vector {
                let mut acc = sm.algebra.zero();
                for (xi, yi) in &pairs {
                    let gx = sm.pure(&g.mul_vec(xi), act.hopf.algebra.one());
                    let y = sm.pure(yi, act.hopf.algebra.one());
                    acc = vector::add(&acc, &sm.algebra.mul_all(&[&gx, &t_el, &y]));
                }
                acc
            };
            let inv_map = LinMap::from_fn(field, end.algebra.dim(), sm.algebra.dim(), |j| inv(&end.maps[j]));
            let left = inv_map.compose(&psi).expect("dims");
            let right = psi.compose(&inv_map).expect("dims");
            let left_ok = left == LinMap::identity(field, sm.algebra.dim());
            let right_ok = right == LinMap::identity(field, end.algebra.dim());
            Outcome::from_bool(left_ok && right_ok, || json!({"inverse_after_psi": left_ok, "psi_after_inverse": right_ok}))
        }
    };
    PsiReport { isomorphism, inverse, ..base }
}

#[cfg(test)]
mod tests;
