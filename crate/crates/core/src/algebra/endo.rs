use crate::exact::echelon::{self, sparse_from_dense};
use crate::exact::{Echelon, Field, Matrix, Subspace, Vector};

use super::{verify_algebra, Algebra, AlgebraError, LinMap};

/// A right module over `ring`: `actions[i]` is the matrix of `v ↦ v·n_i` for
/// the `i`-th basis element of `ring`.
#[derive(Clone, Debug)]
pub struct RightModule {
    pub ring: Algebra,
    pub dim: usize,
    pub actions: Vec<Matrix>,
}

impl RightModule {
    /// `M` as a right `N`-module through the inclusion `incl: N -> M`.
    pub fn restriction(m: &Algebra, n: &Algebra, incl: &LinMap) -> RightModule {
        let actions = (0..n.dim()).map(|i| m.right_mult(&incl.image(i))).collect();
        RightModule { ring: n.clone(), dim: m.dim(), actions }
    }

    fn action_of(&self, x: &[crate::exact::Scalar]) -> Matrix {
        let f = self.ring.field();
        let mut acc = Matrix::zeros(f, self.dim, self.dim);
        for (c, a) in x.iter().zip(&self.actions) {
            if c.is_zero() {
                continue;
            }
            for r in 0..self.dim {
                for s in 0..self.dim {
                    let v = acc.get(r, s) + &(c * a.get(r, s));
                    acc.set(r, s, v);
                }
            }
        }
        acc
    }

    /// `v·1 = v` and `(v·n)·n' = v·(nn')` on basis elements.
    pub fn verify(&self) -> Result<(), AlgebraError> {
        let f = self.ring.field();
        if self.actions.len() != self.ring.dim() {
            return Err(AlgebraError::ModuleAxioms("one action matrix per ring basis element required".into()));
        }
        if self.action_of(self.ring.one()) != Matrix::identity(f, self.dim) {
            return Err(AlgebraError::ModuleAxioms("unit does not act as identity".into()));
        }
        for i in 0..self.ring.dim() {
            for j in 0..self.ring.dim() {
                let prod = echelon::dense_from_sparse(f, self.ring.dim(), self.ring.basis_product(i, j));
                let lhs = self.action_of(&prod);
                let rhs = self.actions[j].mul(&self.actions[i]).expect("square");
                if lhs != rhs {
                    return Err(AlgebraError::ModuleAxioms(format!("(v·n{i})·n{j} != v·(n{i}n{j})")));
                }
            }
        }
        Ok(())
    }
}

/// `End(V_N)` with composition as multiplication.
#[derive(Clone, Debug)]
pub struct EndAlgebra {
    pub algebra: Algebra,
    /// Basis endomorphisms in the order of the algebra basis.
    pub maps: Vec<Matrix>,
    space: Subspace,
}

fn flatten(m: &Matrix) -> Vector {
    (0..m.rows()).flat_map(|r| m.row(r).to_vec()).collect()
}

impl EndAlgebra {
    /// Coordinates of an endomorphism, or `None` if it is not `N`-linear.
    pub fn coordinates(&self, f: &Matrix) -> Option<Vector> {
        self.space.coordinates(&flatten(f))
    }

    pub fn map_of(&self, x: &[crate::exact::Scalar]) -> Matrix {
        let f = self.algebra.field();
        let n = self.maps.first().map_or(0, Matrix::rows);
        let flat = self.space.from_coordinates(x);
        Matrix::from_fn(f, n, n, |r, c| flat[r * n + c].clone())
    }
}

/// All `N`-linear endomorphisms `f` (`f(v·n) = f(v)·n`), solved as the kernel
/// of the commutation constraints with each action matrix.
pub fn endomorphism_algebra(module: &RightModule) -> Result<EndAlgebra, AlgebraError> {
    module.verify()?;
    let field: Field = module.ring.field();
    let d = module.dim;
    // Unknown f is flattened row-major: f[r][c] at r * d + c.
    let mut e = Echelon::new(field, d * d);
    for a in &module.actions {
        // (f a - a f)[r][c] = sum_k f[r][k] a[k][c] - a[r][k] f[k][c]
        for r in 0..d {
            for c in 0..d {
                let mut row = Vec::new();
                for k in 0..d {
                    let x = a.get(k, c);
                    if !x.is_zero() {
                        row.push((r * d + k, x.clone()));
                    }
                    let y = a.get(r, k);
                    if !y.is_zero() {
                        row.push((k * d + c, -y));
                    }
                }
                e.insert_sparse(echelon::sparse_collect(field, row));
            }
        }
    }
    let space = Subspace::span(field, d * d, echelon::null_space(&e.finish()));
    let to_matrix = |v: &Vector| Matrix::from_fn(field, d, d, |r, c| v[r * d + c].clone());
    let maps: Vec<Matrix> = space.basis().iter().map(to_matrix).collect();
    let unit = space.coordinates(&flatten(&Matrix::identity(field, d))).expect("identity is N-linear");
    let algebra = Algebra::from_products(
        field,
        maps.len(),
        |i, j| {
            let comp = maps[i].mul(&maps[j]).expect("square");
            sparse_from_dense(&space.coordinates(&flatten(&comp)).expect("closed under composition"))
        },
        unit,
    );
    verify_algebra(&algebra).map_err(AlgebraError::Defect)?;
    Ok(EndAlgebra { algebra, maps, space })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{group_algebra, subalgebra_from_basis};

    #[test]
    fn endomorphism_examples() {
        let f = Field::Rational;
        let k = Algebra::ground(f);
        let triv = RightModule::restriction(&k, &k, &LinMap::identity(f, 1));
        assert_eq!(endomorphism_algebra(&triv).unwrap().algebra.dim(), 1);

        // Q(sqrt 2) over Q: all linear maps.
        let two = f.from_i64(2);
        let qr2 = Algebra::from_constants(
            f,
            2,
            [(0, 0, 0, f.one()), (0, 1, 1, f.one()), (1, 0, 1, f.one()), (1, 1, 0, two)],
            vec![f.one(), f.zero()],
        )
        .unwrap();
        let incl = LinMap::from_images(f, 2, &[qr2.one().clone()]);
        let m = RightModule::restriction(&qr2, &k, &incl);
        assert_eq!(endomorphism_algebra(&m).unwrap().algebra.dim(), 4);

        let s3 = group_algebra(f, &crate::algebra::tests::s3_table());
        let rows = vec![s3.basis(0), s3.basis(1), s3.basis(2)];
        let (a3, incl) = subalgebra_from_basis(&s3, &rows).unwrap();
        let m = RightModule::restriction(&s3, &a3, &incl);
        let end = endomorphism_algebra(&m).unwrap();
        assert_eq!(end.algebra.dim(), 12);
        assert_eq!(end.coordinates(&Matrix::identity(f, 6)), Some(end.algebra.one().clone()));
    }

    #[test]
    fn module_axioms_checked() {
        let f = Field::Rational;
        let k = Algebra::ground(f);
        let bad = RightModule { ring: k, dim: 2, actions: vec![Matrix::zeros(f, 2, 2)] };
        assert!(endomorphism_algebra(&bad).is_err());
    }
}
