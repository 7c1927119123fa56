use crate::exact::echelon::SparseVec;
use crate::exact::{vector, Echelon, Field, Scalar, Subspace, Vector};

use super::Algebra;

/// `M ⊗_N M` as the quotient of `M ⊗_k M` by `span{mn ⊗ m' - m ⊗ nm'}`.
///
/// Tensors in `M ⊗_k M` are indexed by `a * dim + b` for `e_a ⊗ e_b`. The
/// quotient basis is the set of pure basis tensors at the non-pivot columns of
/// the relation subspace, so the section sends a quotient basis vector to a
/// single pure tensor.
#[derive(Clone, Debug)]
pub struct TensorQuotient {
    field: Field,
    dim: usize,
    relations: Subspace,
    basis: Vec<(usize, usize)>,
    position: Vec<Option<usize>>,
}

/// `x ⊗ y` as a sparse vector over `a * dim + b`.
pub fn pure_tensor(dim: usize, x: &[(usize, Scalar)], y: &[(usize, Scalar)]) -> SparseVec {
    let mut out = Vec::with_capacity(x.len() * y.len());
    for (a, s) in x {
        for (b, t) in y {
            out.push((a * dim + b, s * t));
        }
    }
    out
}

/// `x ⊗ y` for dense factors.
pub fn tensor_sparse(dim: usize, x: &[Scalar], y: &[Scalar]) -> SparseVec {
    let xs = crate::exact::echelon::sparse_from_dense(x);
    let ys = crate::exact::echelon::sparse_from_dense(y);
    pure_tensor(dim, &xs, &ys)
}

impl TensorQuotient {
    /// `n_gens` must generate the subalgebra `N` as an algebra (any spanning
    /// set also works).
    pub fn new(m: &Algebra, n_gens: &[Vector]) -> Self {
        let field = m.field();
        let d = m.dim();
        let mut e = Echelon::new(field, d * d);
        let gens: Vec<SparseVec> = n_gens.iter().map(|g| crate::exact::echelon::sparse_from_dense(g)).collect();
        for g in &gens {
            let right: Vec<SparseVec> = (0..d).map(|a| m.mul_sparse(&[(a, field.one())], g)).collect();
            let left: Vec<SparseVec> = (0..d).map(|b| m.mul_sparse(g, &[(b, field.one())])).collect();
            for a in 0..d {
                for b in 0..d {
                    let mut rel = pure_tensor(d, &right[a], &[(b, field.one())]);
                    for (idx, x) in pure_tensor(d, &[(a, field.one())], &left[b]) {
                        rel.push((idx, -&x));
                    }
                    e.insert_sparse(rel);
                }
            }
        }
        let relations = e.finish();
        let mut basis = Vec::new();
        let mut position = vec![None; d * d];
        for c in 0..d * d {
            if !relations.is_pivot(c) {
                position[c] = Some(basis.len());
                basis.push((c / d, c % d));
            }
        }
        TensorQuotient { field, dim: d, relations, basis, position }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Dimension of the factor `M`.
    pub fn factor_dim(&self) -> usize {
        self.dim
    }

    /// The pure basis tensor `(a, b)` representing quotient basis vector `q`.
    pub fn pair(&self, q: usize) -> (usize, usize) {
        self.basis[q]
    }

    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    /// Projection `M ⊗_k M -> M ⊗_N M` in quotient coordinates.
    pub fn project_sparse(&self, t: &[(usize, Scalar)]) -> Vector {
        let mut out = vector::zeros(self.field, self.dim());
        for (c, x) in self.relations.reduce_sparse(t) {
            let q = self.position[c].expect("remainder lies on free columns");
            out[q] = x;
        }
        out
    }

    pub fn project_pure(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let xs = crate::exact::echelon::sparse_from_dense(x);
        let ys = crate::exact::echelon::sparse_from_dense(y);
        self.project_sparse(&pure_tensor(self.dim, &xs, &ys))
    }

    /// Section `M ⊗_N M -> M ⊗_k M` sending basis vectors to pure tensors.
    pub fn section(&self, q: &[Scalar]) -> SparseVec {
        let mut out: SparseVec = q
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| {
                let (a, b) = self.basis[i];
                (a * self.dim + b, x.clone())
            })
            .collect();
        out.sort_by_key(|(c, _)| *c);
        out
    }

    /// Whether two representatives in `M ⊗_k M` agree in the quotient.
    pub fn same_class(&self, s: &[(usize, Scalar)], t: &[(usize, Scalar)]) -> bool {
        let mut diff: SparseVec = s.to_vec();
        diff.extend(t.iter().map(|(c, x)| (*c, -x)));
        let diff = crate::exact::echelon::sparse_collect(self.field, diff);
        self.relations.reduce_sparse(&diff).is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{group_algebra, Algebra};

    #[test]
    fn quotient_dimensions() {
        let f = Field::Rational;
        let s3 = group_algebra(f, &crate::algebra::tests::s3_table());
        let all: Vec<Vector> = (0..6).map(|i| s3.basis(i)).collect();
        assert_eq!(TensorQuotient::new(&s3, &all).dim(), 6);
        assert_eq!(TensorQuotient::new(&s3, &[]).dim(), 36);
        let tq = TensorQuotient::new(&s3, &[s3.basis(1)]);
        assert_eq!(tq.dim(), 12);
        for q in 0..tq.dim() {
            let v = vector::unit(f, tq.dim(), q);
            assert_eq!(tq.project_sparse(&tq.section(&v)), v);
        }
        let m2 = Algebra::matrix_algebra(f, 2);
        assert_eq!(TensorQuotient::new(&m2, &[m2.one().clone()]).dim(), 16);
    }
}
