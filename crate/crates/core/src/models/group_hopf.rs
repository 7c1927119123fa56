//! `k[G]` and its dual `k^G` as Hopf algebras, with normalized integrals
//! `t = |G|⁻¹ Σ g` and `f = |G| δ_e`.

use serde_json::json;

use super::Group;
use crate::algebra::{group_algebra, Algebra, LinMap};
use crate::check::Outcome;
use crate::exact::{vector, Field, Matrix, Scalar, Vector};
use crate::hopf::HopfStructure;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupHopfError {
    #[error("characteristic {p} divides the group order {order}")]
    CharDividesOrder { p: u64, order: usize },
    #[error(transparent)]
    Group(#[from] super::GroupError),
}

#[derive(Clone, Debug)]
pub struct GroupHopf {
    pub group: Group,
    /// `Δ(g) = g ⊗ g`, `ε(g) = 1`, `S(g) = g⁻¹`.
    pub kg: HopfStructure,
    /// `Δ(δ_x) = Σ_{yz=x} δ_y ⊗ δ_z`, `ε(δ_x) = [x = e]`, `S(δ_x) = δ_{x⁻¹}`.
    pub kfun: HopfStructure,
    /// `⟨g, δ_x⟩ = [g = x]`.
    pub pairing: Matrix,
    /// `t ∈ k[G]`.
    pub t: Vector,
    /// `f ∈ k^G`.
    pub f: Vector,
}

/// `k^G` on the basis `δ_x` of point indicators.
pub fn function_algebra(field: Field, n: usize) -> Algebra {
    let one = vec![field.one(); n];
    Algebra::from_products(field, n, |i, j| if i == j { vec![(i, field.one())] } else { Vec::new() }, one)
}

fn tensor_unit(field: Field, n: usize, p: usize, q: usize) -> Vector {
    vector::unit(field, n * n, p * n + q)
}

pub fn group_hopf(field: Field, group: &Group) -> Result<GroupHopf, GroupHopfError> {
    group.verify()?;
    let n = group.order();
    let p = field.characteristic();
    if p != 0 && (n as u64).is_multiple_of(p) {
        return Err(GroupHopfError::CharDividesOrder { p, order: n });
    }
    let kg = HopfStructure {
        algebra: group_algebra(field, &group.table),
        delta: LinMap::from_fn(field, n, n * n, |g| tensor_unit(field, n, g, g)),
        eps: LinMap::from_fn(field, n, 1, |_| vec![field.one()]),
        antipode: Some(LinMap::from_fn(field, n, n, |g| vector::unit(field, n, group.inverse(g)))),
    };
    let kfun = HopfStructure {
        algebra: function_algebra(field, n),
        delta: LinMap::from_fn(field, n, n * n, |x| {
            let mut out = vector::zeros(field, n * n);
            for y in 0..n {
                let z = group.mul(group.inverse(y), x);
                out[y * n + z] = field.one();
            }
            out
        }),
        eps: LinMap::from_fn(field, n, 1, |x| vec![if x == 0 { field.one() } else { field.zero() }]),
        antipode: Some(LinMap::from_fn(field, n, n, |x| vector::unit(field, n, group.inverse(x)))),
    };
    let order = field.from_i64(n as i64);
    let t = vec![order.inv().expect("char does not divide |G|"); n];
    let f = vector::scale(&order, &vector::unit(field, n, 0));
    Ok(GroupHopf { group: group.clone(), kg, kfun, pairing: Matrix::identity(field, n), t, f })
}

impl GroupHopf {
    pub fn field(&self) -> Field {
        self.kg.field()
    }

    /// `⟨h, φ⟩` for `h ∈ k[G]`, `φ ∈ k^G`.
    pub fn eval(&self, h: &[Scalar], phi: &[Scalar]) -> Scalar {
        vector::dot(h, phi, self.field())
    }

    /// `f(t) = f(S(t)) = 1`, `ε(t) = 1`, `f(1) = |G| != 0`, `t` a two-sided
    /// integral.
    pub fn normalization(&self) -> Outcome {
        let fl = self.field();
        let s_t = self.kg.antipode.as_ref().expect("antipode").apply(&self.t);
        let one = self.kg.algebra.one();
        let f_one = self.eval(one, &self.f);
        let integral = (0..self.group.order()).all(|g| {
            let gv = self.kg.algebra.basis(g);
            self.kg.algebra.mul(&gv, &self.t) == self.t && self.kg.algebra.mul(&self.t, &gv) == self.t
        });
        let ok = self.eval(&self.t, &self.f).is_one()
            && self.eval(&s_t, &self.f).is_one()
            && self.kg.eps_of(&self.t).is_one()
            && !f_one.is_zero()
            && integral;
        Outcome::from_bool(ok, || {
            json!({
                "f_t": self.eval(&self.t, &self.f).to_string(),
                "f_St": self.eval(&s_t, &self.f).to_string(),
                "eps_t": self.kg.eps_of(&self.t).to_string(),
                "f_1": f_one.to_string(),
                "t_integral": integral,
                "field": fl.to_string(),
            })
        })
    }

    /// `λ⁻¹ = f(1)`.
    pub fn index(&self) -> Scalar {
        self.eval(self.kg.algebra.one(), &self.f)
    }
}
