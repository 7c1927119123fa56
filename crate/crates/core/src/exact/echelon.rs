//! Sparse incremental row reduction and canonical subspaces.
//!
//! [`Echelon`] accepts spanning vectors one at a time and keeps a
//! semi-echelon basis (distinct leading columns, leading coefficient 1).
//! [`Echelon::finish`] back-substitutes to the reduced row-echelon form,
//! which is the canonical basis carried by [`Subspace`].

use std::collections::BTreeMap;

use super::field::{Field, Scalar};
use super::matrix::Solution;
use super::vector::{self, Vector};

/// Sorted `(column, value)` pairs with no explicit zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

pub fn sparse_from_dense(v: &[Scalar]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

pub fn dense_from_sparse(field: Field, n: usize, v: &[(usize, Scalar)]) -> Vector {
    let mut out = vector::zeros(field, n);
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// Accumulates `(column, value)` pairs, summing duplicates and dropping zeros.
pub fn sparse_collect(field: Field, entries: impl IntoIterator<Item = (usize, Scalar)>) -> SparseVec {
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (i, x) in entries {
        if x.is_zero() {
            continue;
        }
        let e = acc.entry(i).or_insert_with(|| field.zero());
        *e = &*e + &x;
    }
    acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    ambient: usize,
    rows: Vec<SparseVec>,
    pivot_row: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(field: Field, ambient: usize) -> Self {
        Echelon { field, ambient, rows: Vec::new(), pivot_row: vec![None; ambient] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    fn reduce_map(&self, v: impl IntoIterator<Item = (usize, Scalar)>) -> BTreeMap<usize, Scalar> {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, x) in v {
            if !x.is_zero() {
                let e = acc.entry(i).or_insert_with(|| self.field.zero());
                *e = &*e + &x;
            }
        }
        acc.retain(|_, x| !x.is_zero());
        let mut cursor = 0;
        loop {
            let next = acc
                .range(cursor..)
                .find(|(c, _)| self.pivot_row[**c].is_some())
                .map(|(c, x)| (*c, x.clone()));
            let Some((c, x)) = next else { break };
            let row = &self.rows[self.pivot_row[c].expect("pivot")];
            for (j, y) in row {
                let t = &x * y;
                let e = acc.entry(*j).or_insert_with(|| self.field.zero());
                *e = &*e - &t;
                if e.is_zero() {
                    acc.remove(j);
                }
            }
            cursor = c + 1;
        }
        acc
    }

    /// Inserts a vector; returns `true` when it enlarged the span.
    pub fn insert_sparse(&mut self, v: impl IntoIterator<Item = (usize, Scalar)>) -> bool {
        let acc = self.reduce_map(v);
        let Some((&lead, lead_val)) = acc.iter().next() else {
            return false;
        };
        let inv = lead_val.inv().expect("nonzero");
        let row: SparseVec = acc.iter().map(|(j, x)| (*j, x * &inv)).collect();
        self.pivot_row[lead] = Some(self.rows.len());
        self.rows.push(row);
        true
    }

    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        debug_assert_eq!(v.len(), self.ambient);
        self.insert_sparse(sparse_from_dense(v))
    }

    pub fn contains_sparse(&self, v: impl IntoIterator<Item = (usize, Scalar)>) -> bool {
        self.reduce_map(v).is_empty()
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.contains_sparse(sparse_from_dense(v))
    }

    pub fn finish(self) -> Subspace {
        let Echelon { field, ambient, mut rows, .. } = self;
        rows.sort_by_key(|r| r[0].0);
        let pivots: Vec<usize> = rows.iter().map(|r| r[0].0).collect();
        let mut pivot_row = vec![None; ambient];
        for (i, &p) in pivots.iter().enumerate() {
            pivot_row[p] = Some(i);
        }
        // Back-substitute from the bottom so each row only meets fully
        // reduced rows.
        for i in (0..rows.len()).rev() {
            let hits: Vec<(usize, Scalar)> = rows[i][1..]
                .iter()
                .filter(|(c, _)| pivot_row[*c].is_some())
                .cloned()
                .collect();
            if hits.is_empty() {
                continue;
            }
            let mut acc: BTreeMap<usize, Scalar> = rows[i].iter().cloned().collect();
            for (c, x) in hits {
                let j = pivot_row[c].expect("pivot");
                for (col, y) in &rows[j] {
                    let t = &x * y;
                    let e = acc.entry(*col).or_insert_with(|| field.zero());
                    *e = &*e - &t;
                    if e.is_zero() {
                        acc.remove(col);
                    }
                }
            }
            rows[i] = acc.into_iter().collect();
        }
        Subspace { field, ambient, basis: rows, pivots, pivot_row }
    }
}

/// A subspace of `field^ambient` held by its reduced row-echelon basis.
///
/// Because the basis is in reduced form, the coordinates of a member vector
/// are read off at the pivot columns.
#[derive(Clone, Debug)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<SparseVec>,
    pivots: Vec<usize>,
    pivot_row: Vec<Option<usize>>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis == other.basis
    }
}

impl Eq for Subspace {}

impl Subspace {
    pub fn span<I, V>(field: Field, ambient: usize, vectors: I) -> Subspace
    where
        I: IntoIterator<Item = V>,
        V: AsRef<[Scalar]>,
    {
        let mut e = Echelon::new(field, ambient);
        for v in vectors {
            e.insert(v.as_ref());
        }
        e.finish()
    }

    pub fn whole(field: Field, ambient: usize) -> Subspace {
        Self::span(field, ambient, (0..ambient).map(|i| vector::unit(field, ambient, i)))
    }

    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Echelon::new(field, ambient).finish()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col].is_some()
    }

    pub fn basis_sparse(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        dense_from_sparse(self.field, self.ambient, &self.basis[i])
    }

    pub fn basis(&self) -> Vec<Vector> {
        (0..self.dim()).map(|i| self.basis_vector(i)).collect()
    }

    /// Remainder of `v` modulo the subspace; supported on non-pivot columns.
    pub fn reduce_sparse(&self, v: &[(usize, Scalar)]) -> SparseVec {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, x) in v {
            if x.is_zero() {
                continue;
            }
            match self.pivot_row[*i] {
                None => {
                    let e = acc.entry(*i).or_insert_with(|| self.field.zero());
                    *e = &*e + x;
                }
                Some(r) => {
                    for (j, y) in &self.basis[r][1..] {
                        let t = x * y;
                        let e = acc.entry(*j).or_insert_with(|| self.field.zero());
                        *e = &*e - &t;
                    }
                }
            }
        }
        acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
    }

    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        dense_from_sparse(self.field, self.ambient, &self.reduce_sparse(&sparse_from_dense(v)))
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce_sparse(&sparse_from_dense(v)).is_empty()
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` is not a
    /// member.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        self.contains(v).then(|| self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn from_coordinates(&self, c: &[Scalar]) -> Vector {
        let mut out = vector::zeros(self.field, self.ambient);
        for (x, row) in c.iter().zip(&self.basis) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in row {
                out[*j] = &out[*j] + &(x * y);
            }
        }
        out
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis().iter().all(|v| self.contains(v))
    }

    pub fn intersect_dim(&self, other: &Subspace) -> usize {
        let sum = Self::span(self.field, self.ambient, self.basis().into_iter().chain(other.basis()));
        self.dim() + other.dim() - sum.dim()
    }
}

/// Basis of `{x : r.x = 0}` for the rows `r` spanning `rows`, one vector per
/// non-pivot column in increasing order.
pub fn null_space(rows: &Subspace) -> Vec<Vector> {
    let f = rows.field();
    let n = rows.ambient();
    (0..n)
        .filter(|&c| !rows.is_pivot(c))
        .map(|free| {
            let mut v = vector::zeros(f, n);
            v[free] = f.one();
            for (row, &p) in rows.basis_sparse().iter().zip(rows.pivots()) {
                if let Ok(k) = row.binary_search_by_key(&free, |(c, _)| *c) {
                    v[p] = -&row[k].1;
                }
            }
            v
        })
        .collect()
}

/// Solves the sparse system whose equations are `(coefficients, rhs)` pairs
/// over `unknowns` variables. Free variables are set to zero in the particular
/// solution.
pub fn solve_sparse(
    field: Field,
    unknowns: usize,
    equations: impl IntoIterator<Item = (SparseVec, Scalar)>,
) -> Solution {
    let mut e = Echelon::new(field, unknowns + 1);
    for (mut row, rhs) in equations {
        if !rhs.is_zero() {
            row.push((unknowns, rhs));
        }
        e.insert_sparse(row);
    }
    let s = e.finish();
    if s.is_pivot(unknowns) {
        return Solution::Inconsistent;
    }
    let mut particular = vector::zeros(field, unknowns);
    for (row, &p) in s.basis_sparse().iter().zip(s.pivots()) {
        if let Some((c, x)) = row.last() {
            if *c == unknowns {
                particular[p] = x.clone();
            }
        }
    }
    let kernel = null_space(&s)
        .into_iter()
        .filter(|v| v[unknowns].is_zero())
        .map(|mut v| {
            v.pop();
            v
        })
        .collect();
    Solution::Consistent { particular, kernel }
}

/// Rank of a family of vectors.
pub fn rank_of<V: AsRef<[Scalar]>>(field: Field, ambient: usize, vectors: impl IntoIterator<Item = V>) -> usize {
    Subspace::span(field, ambient, vectors).dim()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::matrix::Matrix;
    use proptest::prelude::*;

    fn qv(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| Field::Rational.from_i64(x)).collect()
    }

    #[test]
    fn canonical_basis_is_insertion_order_independent() {
        let f = Field::Rational;
        let a = Subspace::span(f, 3, [qv(&[1, 2, 3]), qv(&[0, 1, 1])]);
        let b = Subspace::span(f, 3, [qv(&[1, 3, 4]), qv(&[2, 4, 6]), qv(&[0, 2, 2])]);
        assert_eq!(a, b);
        assert_eq!(a.pivots(), &[0, 1]);
        assert_eq!(a.basis(), vec![qv(&[1, 0, 1]), qv(&[0, 1, 1])]);
        assert_eq!(a.coordinates(&qv(&[2, 3, 5])), Some(qv(&[2, 3])));
        assert_eq!(a.coordinates(&qv(&[0, 0, 1])), None);
        assert_eq!(a.reduce(&qv(&[0, 0, 1])), qv(&[0, 0, 1]));
        assert_eq!(a.reduce(&qv(&[1, 0, 0])), qv(&[0, 0, -1]));
    }

    proptest! {
        #[test]
        fn matches_dense_rref(xs in proptest::collection::vec(-2i64..3, 20)) {
            let f = Field::Rational;
            let rows: Vec<Vector> = xs.chunks(5).map(qv).collect();
            let s = Subspace::span(f, 5, &rows);
            let r = Matrix::from_rows(f, 5, &rows).rref();
            prop_assert_eq!(s.pivots(), &r.pivots[..]);
            for (i, v) in s.basis().iter().enumerate() {
                prop_assert_eq!(v.as_slice(), r.matrix.row(i));
            }
            for v in &rows {
                let c = s.coordinates(v).unwrap();
                prop_assert_eq!(&s.from_coordinates(&c), v);
            }
            for k in null_space(&s) {
                for v in &rows {
                    prop_assert!(vector::dot(v, &k, f).is_zero());
                }
            }
            prop_assert_eq!(null_space(&s).len() + s.dim(), 5);
        }

        #[test]
        fn sparse_solve_agrees_with_dense(xs in proptest::collection::vec(-2i64..3, 12), b in proptest::collection::vec(-2i64..3, 3)) {
            let f = Field::Rational;
            let rows: Vec<Vector> = xs.chunks(4).map(qv).collect();
            let b = qv(&b);
            let dense = Matrix::from_rows(f, 4, &rows).solve(&b).unwrap();
            let sparse = solve_sparse(f, 4, rows.iter().zip(&b).map(|(r, y)| (sparse_from_dense(r), y.clone())));
            prop_assert_eq!(dense, sparse);
        }
    }
}
