//! Finite-dimensional associative unital algebras given by structure
//! constants, together with subalgebras, centralizers, tensor products over a
//! subalgebra, endomorphism algebras and morphism checks.

mod endo;
mod linmap;
mod tensor;

pub use endo::{endomorphism_algebra, EndAlgebra, RightModule};
pub use linmap::LinMap;
pub use tensor::{pure_tensor, tensor_sparse, TensorQuotient};

use std::collections::BTreeMap;

use crate::exact::echelon::{self, sparse_collect, sparse_from_dense, SparseVec};
use crate::exact::{vector, Echelon, Field, Matrix, Scalar, Subspace, Vector};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("structure constant index ({0}, {1}, {2}) out of range for dimension {3}")]
    IndexOutOfRange(usize, usize, usize, usize),
    #[error("unit vector has length {got}, expected {expected}")]
    UnitLength { got: usize, expected: usize },
    #[error("{0}")]
    Defect(AlgebraDefect),
    #[error("subspace is not a unital subalgebra")]
    NotSubalgebra,
    #[error("module axioms fail: {0}")]
    ModuleAxioms(String),
}

/// First violation found by [`verify_algebra`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraDefect {
    Associativity { triple: (usize, usize, usize), left: Vector, right: Vector },
    LeftUnit { basis: usize, got: Vector },
    RightUnit { basis: usize, got: Vector },
}

impl std::fmt::Display for AlgebraDefect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AlgebraDefect::Associativity { triple: (i, j, k), .. } => {
                write!(f, "associativity fails on basis triple ({i}, {j}, {k})")
            }
            AlgebraDefect::LeftUnit { basis, .. } => write!(f, "unit fails on the left of basis element {basis}"),
            AlgebraDefect::RightUnit { basis, .. } => write!(f, "unit fails on the right of basis element {basis}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Algebra {
    field: Field,
    dim: usize,
    /// `table[i * dim + j]` is the product of basis elements `i` and `j`.
    table: Vec<SparseVec>,
    unit: Vector,
}

impl Algebra {
    /// Builds an algebra from `(i, j, k, c)` entries meaning `e_i e_j` has
    /// coefficient `c` on `e_k`. Duplicate entries are summed. No axioms are
    /// checked; see [`verify_algebra`].
    pub fn from_constants(
        field: Field,
        dim: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
        unit: Vector,
    ) -> Result<Algebra, AlgebraError> {
        if unit.len() != dim {
            return Err(AlgebraError::UnitLength { got: unit.len(), expected: dim });
        }
        let mut acc: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); dim * dim];
        for (i, j, k, c) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(AlgebraError::IndexOutOfRange(i, j, k, dim));
            }
            acc[i * dim + j].push((k, c));
        }
        let table = acc.into_iter().map(|v| sparse_collect(field, v)).collect();
        Ok(Algebra { field, dim, table, unit })
    }

    /// Builds an algebra from the product of each ordered basis pair.
    pub fn from_products(field: Field, dim: usize, product: impl Fn(usize, usize) -> SparseVec, unit: Vector) -> Algebra {
        let mut table = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                table.push(product(i, j));
            }
        }
        Algebra { field, dim, table, unit }
    }

    /// The ground field viewed as a one-dimensional algebra.
    pub fn ground(field: Field) -> Algebra {
        Self::from_products(field, 1, |_, _| vec![(0, field.one())], vec![field.one()])
    }

    /// Full matrix algebra `M_n(k)` on matrix units `E_ij` at index `i * n + j`.
    pub fn matrix_algebra(field: Field, n: usize) -> Algebra {
        let unit = (0..n * n).map(|k| if k / n == k % n { field.one() } else { field.zero() }).collect();
        Self::from_products(
            field,
            n * n,
            |a, b| {
                let (i, j, k, l) = (a / n, a % n, b / n, b % n);
                if j == k {
                    vec![(i * n + l, field.one())]
                } else {
                    Vec::new()
                }
            },
            unit,
        )
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn one(&self) -> &Vector {
        &self.unit
    }

    pub fn zero(&self) -> Vector {
        vector::zeros(self.field, self.dim)
    }

    pub fn basis(&self, i: usize) -> Vector {
        vector::unit(self.field, self.dim, i)
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim + j]
    }

    /// All structure constants as `(i, j, k, c)`, ordered by `(i, j, k)`.
    pub fn constants(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let mut out = Vec::new();
        for (ij, prod) in self.table.iter().enumerate() {
            for (k, c) in prod {
                out.push((ij / self.dim, ij % self.dim, *k, c.clone()));
            }
        }
        out
    }

    pub fn mul_sparse(&self, a: &[(usize, Scalar)], b: &[(usize, Scalar)]) -> SparseVec {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, x) in a {
            for (j, y) in b {
                let xy = x * y;
                for (k, c) in &self.table[i * self.dim + j] {
                    let e = acc.entry(*k).or_insert_with(|| self.field.zero());
                    *e = &*e + &(&xy * c);
                }
            }
        }
        acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        debug_assert_eq!(a.len(), self.dim);
        debug_assert_eq!(b.len(), self.dim);
        let mut out = self.zero();
        let bs = sparse_from_dense(b);
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in &bs {
                let xy = x * y;
                for (k, c) in &self.table[i * self.dim + j] {
                    out[*k] = &out[*k] + &(&xy * c);
                }
            }
        }
        out
    }

    /// Product of a list of elements, left to right.
    pub fn mul_all(&self, factors: &[&[Scalar]]) -> Vector {
        let mut acc = self.unit.clone();
        for f in factors {
            acc = self.mul(&acc, f);
        }
        acc
    }

    pub fn commutator(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        vector::sub(&self.mul(a, b), &self.mul(b, a))
    }

    /// Matrix of `x ↦ a x`.
    pub fn left_mult(&self, a: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.mul(a, &self.basis(j))).collect();
        Matrix::from_columns(self.field, self.dim, &cols)
    }

    /// Matrix of `x ↦ x a`.
    pub fn right_mult(&self, a: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.mul(&self.basis(j), a)).collect();
        Matrix::from_columns(self.field, self.dim, &cols)
    }

    pub fn is_central(&self, z: &[Scalar]) -> bool {
        (0..self.dim).all(|i| vector::is_zero(&self.commutator(z, &self.basis(i))))
    }

    /// Scalar `c` with `x = c·1`, if any.
    pub fn as_scalar(&self, x: &[Scalar]) -> Option<Scalar> {
        if vector::is_zero(x) {
            return Some(self.field.zero());
        }
        vector::scalar_multiple_of(x, &self.unit)
    }

    pub fn scalar(&self, c: &Scalar) -> Vector {
        vector::scale(c, &self.unit)
    }
}

/// Checks associativity on all basis triples and the unit law on all basis
/// elements; returns the first defect found.
pub fn verify_algebra(alg: &Algebra) -> Result<(), AlgebraDefect> {
    let d = alg.dim;
    let us = sparse_from_dense(&alg.unit);
    for i in 0..d {
        let ei = vec![(i, alg.field.one())];
        let l = alg.mul_sparse(&us, &ei);
        if l != ei {
            return Err(AlgebraDefect::LeftUnit { basis: i, got: echelon::dense_from_sparse(alg.field, d, &l) });
        }
        let r = alg.mul_sparse(&ei, &us);
        if r != ei {
            return Err(AlgebraDefect::RightUnit { basis: i, got: echelon::dense_from_sparse(alg.field, d, &r) });
        }
    }
    for i in 0..d {
        let ei = [(i, alg.field.one())];
        for j in 0..d {
            let ij = &alg.table[i * d + j];
            for k in 0..d {
                let ek = [(k, alg.field.one())];
                let left = alg.mul_sparse(ij, &ek);
                let right = alg.mul_sparse(&ei, &alg.table[j * d + k]);
                if left != right {
                    return Err(AlgebraDefect::Associativity {
                        triple: (i, j, k),
                        left: echelon::dense_from_sparse(alg.field, d, &left),
                        right: echelon::dense_from_sparse(alg.field, d, &right),
                    });
                }
            }
        }
    }
    Ok(())
}

/// Whether `s` contains the unit and is closed under multiplication.
pub fn is_unital_subalgebra(alg: &Algebra, s: &Subspace) -> bool {
    if !s.contains(&alg.unit) {
        return false;
    }
    let basis = s.basis_sparse();
    basis.iter().all(|a| {
        basis.iter().all(|b| {
            let p = alg.mul_sparse(a, b);
            s.reduce_sparse(&p).is_empty()
        })
    })
}

/// The subalgebra generated by `gens` (always containing the unit).
pub fn generated_subalgebra(alg: &Algebra, gens: &[Vector]) -> Subspace {
    let mut e = Echelon::new(alg.field, alg.dim);
    let mut members: Vec<Vector> = Vec::new();
    let mut frontier: Vec<Vector> = Vec::new();
    for v in std::iter::once(alg.unit.clone()).chain(gens.iter().cloned()) {
        if e.insert(&v) {
            members.push(v.clone());
            frontier.push(v);
        }
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for f in &frontier {
            for g in gens {
                for p in [alg.mul(f, g), alg.mul(g, f)] {
                    if e.insert(&p) {
                        members.push(p.clone());
                        next.push(p);
                    }
                }
            }
        }
        frontier = next;
    }
    e.finish()
}

/// A small set of algebra generators for the subalgebra `s`, chosen greedily
/// from its canonical basis.
pub fn algebra_generators(alg: &Algebra, s: &Subspace) -> Vec<Vector> {
    let mut gens: Vec<Vector> = Vec::new();
    let mut generated = generated_subalgebra(alg, &gens);
    for v in s.basis() {
        if generated.dim() == s.dim() {
            break;
        }
        if !generated.contains(&v) {
            gens.push(v);
            generated = generated_subalgebra(alg, &gens);
        }
    }
    gens
}

/// `{x : x s = s x for all s in gens}`. Passing algebra generators of a
/// subalgebra gives its centralizer.
pub fn centralizer(alg: &Algebra, gens: &[Vector]) -> Subspace {
    let d = alg.dim;
    let mut e = Echelon::new(alg.field, d);
    for s in gens {
        let l = alg.left_mult(s);
        let r = alg.right_mult(s);
        // Row k of (R_s - L_s) applied to x is the k-th coordinate of xs - sx.
        for k in 0..d {
            let row: Vec<Scalar> = (0..d).map(|j| r.get(k, j) - l.get(k, j)).collect();
            e.insert(&row);
        }
    }
    let rows = e.finish();
    Subspace::span(alg.field, d, echelon::null_space(&rows))
}

/// Restricts the structure constants of `alg` to the unital subalgebra with
/// basis `rows` (in that order). Returns the subalgebra and its inclusion.
pub fn subalgebra_from_basis(alg: &Algebra, rows: &[Vector]) -> Result<(Algebra, LinMap), AlgebraError> {
    let k = rows.len();
    let space = Subspace::span(alg.field, alg.dim, rows);
    if space.dim() != k || !is_unital_subalgebra(alg, &space) {
        return Err(AlgebraError::NotSubalgebra);
    }
    // Coordinates w.r.t. `rows` = canonical coordinates times the inverse of
    // the change-of-basis matrix.
    let change = Matrix::from_columns(alg.field, k, &rows.iter().map(|r| space.coordinates(r).expect("member")).collect::<Vec<_>>());
    let inv = change.inverse().map_err(|_| AlgebraError::NotSubalgebra)?;
    let coords = |v: &[Scalar]| inv.mul_vec(&space.coordinates(v).expect("closed"));
    let sub = Algebra::from_products(
        alg.field,
        k,
        |i, j| sparse_from_dense(&coords(&alg.mul(&rows[i], &rows[j]))),
        coords(&alg.unit),
    );
    Ok((sub, LinMap::from_images(alg.field, alg.dim, rows)))
}

/// Subalgebra on the canonical basis of `s`.
pub fn subalgebra(alg: &Algebra, s: &Subspace) -> Result<(Algebra, LinMap), AlgebraError> {
    subalgebra_from_basis(alg, &s.basis())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismReport {
    pub unital: bool,
    /// First basis pair `(i, j)` with `f(e_i e_j) != f(e_i) f(e_j)`.
    pub multiplicative_failure: Option<(usize, usize)>,
    pub injective: bool,
    pub surjective: bool,
}

impl MorphismReport {
    pub fn is_homomorphism(&self) -> bool {
        self.unital && self.multiplicative_failure.is_none()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_homomorphism() && self.injective && self.surjective
    }
}

/// Checks unitality and multiplicativity of `f: a -> b` on all basis pairs,
/// and bijectivity by rank.
pub fn check_morphism(f: &LinMap, a: &Algebra, b: &Algebra) -> MorphismReport {
    assert_eq!(f.domain(), a.dim, "domain mismatch");
    assert_eq!(f.codomain(), b.dim, "codomain mismatch");
    let images = f.images();
    let unital = f.apply(&a.unit) == b.unit;
    let mut multiplicative_failure = None;
    'outer: for i in 0..a.dim {
        for j in 0..a.dim {
            let lhs = f.apply(&echelon::dense_from_sparse(a.field, a.dim, a.basis_product(i, j)));
            if lhs != b.mul(&images[i], &images[j]) {
                multiplicative_failure = Some((i, j));
                break 'outer;
            }
        }
    }
    let rank = f.rank();
    MorphismReport { unital, multiplicative_failure, injective: rank == a.dim, surjective: rank == b.dim }
}

/// Group algebra `k[G]` from a multiplication table on `0..n` with identity 0.
pub fn group_algebra(field: Field, table: &[Vec<usize>]) -> Algebra {
    let n = table.len();
    Algebra::from_products(field, n, |i, j| vec![(table[i][j], field.one())], vector::unit(field, n, 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2(field: Field) -> Algebra {
        group_algebra(field, &[vec![0, 1], vec![1, 0]])
    }

    pub(crate) fn s3_table() -> Vec<Vec<usize>> {
        // Permutations of {0,1,2} as images; composition (p*q)(x) = p(q(x)).
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 2, 0], [2, 0, 1], [1, 0, 2], [0, 2, 1], [2, 1, 0]];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        perms.iter().map(|p| perms.iter().map(|q| idx([p[q[0]], p[q[1]], p[q[2]]])).collect()).collect()
    }

    fn q(n: i64) -> Scalar {
        Field::Rational.from_i64(n)
    }

    #[test]
    fn verify_examples() {
        assert_eq!(verify_algebra(&z2(Field::Rational)), Ok(()));
        assert_eq!(verify_algebra(&Algebra::matrix_algebra(Field::Prime(2), 2)), Ok(()));
        // Any unital 2-dimensional table is associative, so perturb Z/3.
        let mut bad = group_algebra(Field::Rational, &[vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]);
        bad.table[3 + 1] = vec![(1, q(1))];
        let err = verify_algebra(&bad).unwrap_err();
        assert!(matches!(err, AlgebraDefect::Associativity { triple: (1, 1, 2), .. }), "{err:?}");
    }

    #[test]
    fn centralizer_examples() {
        let f = Field::Rational;
        let m2 = Algebra::matrix_algebra(f, 2);
        let all: Vec<Vector> = (0..4).map(|i| m2.basis(i)).collect();
        let z = centralizer(&m2, &all);
        assert_eq!(z.dim(), 1);
        assert!(z.contains(m2.one()));
        assert_eq!(centralizer(&m2, &[m2.one().clone()]).dim(), 4);

        let s3 = group_algebra(f, &s3_table());
        let a3 = vec![s3.basis(1)];
        let c = centralizer(&s3, &a3);
        assert_eq!(c.dim(), 4);
        let transpositions: Vector = vec![q(0), q(0), q(0), q(1), q(1), q(1)];
        assert!(c.contains(&transpositions));
        for i in 0..3 {
            assert!(c.contains(&s3.basis(i)));
        }
        assert!(is_unital_subalgebra(&s3, &c));
        // C(C(C(S))) = C(S)
        let cc = centralizer(&s3, &c.basis());
        let ccc = centralizer(&s3, &cc.basis());
        assert_eq!(ccc, c);
    }

    #[test]
    fn generators_and_subalgebras() {
        let f = Field::Rational;
        let s3 = group_algebra(f, &s3_table());
        let whole = Subspace::whole(f, 6);
        let gens = algebra_generators(&s3, &whole);
        assert!(gens.len() <= 2);
        assert_eq!(generated_subalgebra(&s3, &gens), whole);
        let a3 = generated_subalgebra(&s3, &[s3.basis(1)]);
        assert_eq!(a3.dim(), 3);
        let (sub, incl) = subalgebra(&s3, &a3).unwrap();
        assert_eq!(verify_algebra(&sub), Ok(()));
        assert!(check_morphism(&incl, &sub, &s3).is_homomorphism());
        let not_sub = Subspace::span(f, 6, [s3.basis(3)]);
        assert!(subalgebra(&s3, &not_sub).is_err());
    }

    #[test]
    fn morphism_examples() {
        let f = Field::Rational;
        let a = z2(f);
        let id = LinMap::identity(f, 2);
        assert!(check_morphism(&id, &a, &a).is_isomorphism());
        let zero = LinMap::zero(f, 2, 2);
        let r = check_morphism(&zero, &a, &a);
        assert!(!r.unital && !r.is_homomorphism());
    }
}
