//! Dense exact matrices and Gauss–Jordan elimination.
//!
//! Pivots are chosen as the first nonzero entry of the current column
//! scanning rows top to bottom, so every result is canonical and repeatable.

use std::fmt;

use super::field::{Field, Scalar};
use super::vector::{self, Vector};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinAlgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Outcome of [`Matrix::solve`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    /// One particular solution (free variables set to zero) and a basis of
    /// the homogeneous solution space.
    Consistent { particular: Vector, kernel: Vec<Vector> },
    Inconsistent,
}

impl Solution {
    pub fn particular(&self) -> Option<&Vector> {
        match self {
            Solution::Consistent { particular, .. } => Some(particular),
            Solution::Inconsistent => None,
        }
    }

    /// The solution when it exists and is unique.
    pub fn unique(self) -> Option<Vector> {
        match self {
            Solution::Consistent { particular, kernel } if kernel.is_empty() => Some(particular),
            _ => None,
        }
    }
}

/// Reduced row-echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_rows(field: Field, cols: usize, rows: &[Vector]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r.iter().cloned());
        }
        Matrix { field, rows: rows.len(), cols, data }
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vector]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged column");
            for (i, x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        m
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, f: impl Fn(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { field, rows, cols, data }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols, "vector length");
        let mut out = vector::zeros(self.field, self.rows);
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = &self.data[i * self.cols + j];
                if !a.is_zero() {
                    *o = &*o + &(a * x);
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinAlgError> {
        if self.cols != other.rows {
            return Err(LinAlgError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: vector::sub(&self.data, &other.data),
        }
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let idx = r * m.cols + j;
                if !m.data[idx].is_zero() {
                    m.data[idx] = &m.data[idx] * &inv;
                }
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let pv = &m.data[r * m.cols + j];
                    if pv.is_zero() {
                        continue;
                    }
                    let t = &factor * pv;
                    let idx = i * m.cols + j;
                    m.data[idx] = &m.data[idx] - &t;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of `{x : self * x = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vector> {
        let Rref { matrix, pivots } = self.rref();
        kernel_from_rref(&matrix, &pivots)
    }

    pub fn solve(&self, b: &[Scalar]) -> Result<Solution, LinAlgError> {
        if b.len() != self.rows {
            return Err(LinAlgError::DimensionMismatch(format!(
                "right-hand side has length {} but matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let mut aug = Matrix::zeros(self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let Rref { matrix, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(Solution::Inconsistent);
        }
        let mut particular = vector::zeros(self.field, self.cols);
        for (r, &c) in pivots.iter().enumerate() {
            particular[c] = matrix.get(r, self.cols).clone();
        }
        let mut coeff = Matrix::zeros(self.field, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                coeff.set(i, j, matrix.get(i, j).clone());
            }
        }
        let kernel = kernel_from_rref(&coeff, &pivots);
        Ok(Solution::Consistent { particular, kernel })
    }

    pub fn inverse(&self) -> Result<Matrix, LinAlgError> {
        if self.rows != self.cols {
            return Err(LinAlgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, self.field.one());
        }
        let Rref { matrix, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(LinAlgError::Singular);
        }
        Ok(Matrix::from_fn(self.field, n, n, |i, j| matrix.get(i, n + j).clone()))
    }

    /// Strings in the exact serialization, row-major.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| vector::to_strings(self.row(i))).collect()
    }
}

fn kernel_from_rref(m: &Matrix, pivots: &[usize]) -> Vec<Vector> {
    let field = m.field;
    let mut is_pivot = vec![false; m.cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for f in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vector::zeros(field, m.cols);
        v[f] = field.one();
        for (r, &p) in pivots.iter().enumerate() {
            let x = m.get(r, f);
            if !x.is_zero() {
                v[p] = -x;
            }
        }
        out.push(v);
    }
    out
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", vector::to_strings(self.row(i)))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(rows: &[&[i64]]) -> Matrix {
        let f = Field::Rational;
        let cols = rows[0].len();
        let rs: Vec<Vector> = rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect();
        Matrix::from_rows(f, cols, &rs)
    }

    #[test]
    fn solve_identity() {
        let f = Field::Rational;
        let b: Vector = [3, -1, 2].iter().map(|&x| f.from_i64(x)).collect();
        let s = Matrix::identity(f, 3).solve(&b).unwrap();
        assert_eq!(s, Solution::Consistent { particular: b, kernel: vec![] });
    }

    #[test]
    fn solve_zero_map() {
        let f = Field::Rational;
        let s = Matrix::zeros(f, 2, 2).solve(&vector::zeros(f, 2)).unwrap();
        let Solution::Consistent { particular, kernel } = s else { panic!() };
        assert!(vector::is_zero(&particular));
        assert_eq!(kernel.len(), 2);
    }

    #[test]
    fn solve_over_f2_matches_enumeration() {
        let f = Field::prime(2).unwrap();
        let a = Matrix::from_fn(f, 2, 2, |_, _| f.one());
        let b = vec![f.one(), f.one()];
        // Enumerate all four vectors of F_2^2.
        let sols: Vec<Vector> = (0..4)
            .map(|m| vec![f.from_i64(m & 1), f.from_i64(m >> 1)])
            .filter(|x| a.mul_vec(x) == b)
            .collect();
        assert_eq!(sols, vec![vec![f.one(), f.zero()], vec![f.zero(), f.one()]]);
        let Solution::Consistent { particular, kernel } = a.solve(&b).unwrap() else { panic!() };
        assert_eq!(particular, vec![f.one(), f.zero()]);
        assert_eq!(kernel, vec![vec![f.one(), f.one()]]);
    }

    #[test]
    fn inconsistent_and_mismatch() {
        let a = q(&[&[1, 1], &[1, 1]]);
        let f = Field::Rational;
        assert_eq!(a.solve(&[f.one(), f.zero()]).unwrap(), Solution::Inconsistent);
        assert!(matches!(a.solve(&[f.one()]), Err(LinAlgError::DimensionMismatch(_))));
    }

    #[test]
    fn inverses() {
        let f = Field::Rational;
        assert_eq!(Matrix::identity(f, 3).inverse().unwrap(), Matrix::identity(f, 3));
        let d = q(&[&[2, 0], &[0, 3]]).inverse().unwrap();
        assert_eq!(d.get(0, 0), &f.ratio(1, 2).unwrap());
        assert_eq!(d.get(1, 1), &f.ratio(1, 3).unwrap());
        let u = q(&[&[1, 1], &[0, 1]]);
        let ui = u.inverse().unwrap();
        assert_eq!(ui, q(&[&[1, -1], &[0, 1]]));
        assert_eq!(u.mul(&ui).unwrap(), Matrix::identity(f, 2));
        assert_eq!(q(&[&[1, 2], &[2, 4]]).inverse(), Err(LinAlgError::Singular));
        assert!(matches!(q(&[&[1, 2]]).inverse(), Err(LinAlgError::NotSquare { .. })));
    }

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-3i64..4, r * c).prop_map(move |xs| {
                let f = Field::Rational;
                Matrix::from_fn(f, r, c, |i, j| f.from_i64(xs[i * c + j]))
            })
        })
    }

    proptest! {
        #[test]
        fn solve_results_are_exact(a in small_matrix(), seed in proptest::collection::vec(-3i64..4, 5)) {
            let f = Field::Rational;
            let b: Vector = (0..a.rows()).map(|i| f.from_i64(seed[i])).collect();
            if let Solution::Consistent { particular, kernel } = a.solve(&b).unwrap() {
                prop_assert_eq!(a.mul_vec(&particular), b);
                for k in &kernel {
                    prop_assert!(vector::is_zero(&a.mul_vec(k)));
                }
            }
            prop_assert_eq!(a.rank() + a.kernel().len(), a.cols());
        }

        #[test]
        fn over_f5_rank_nullity(xs in proptest::collection::vec(0i64..5, 12)) {
            let f = Field::prime(5).unwrap();
            let a = Matrix::from_fn(f, 3, 4, |i, j| f.from_i64(xs[i * 4 + j]));
            prop_assert_eq!(a.rank() + a.kernel().len(), 4);
            for k in a.kernel() {
                prop_assert!(vector::is_zero(&a.mul_vec(&k)));
            }
        }
    }
}
