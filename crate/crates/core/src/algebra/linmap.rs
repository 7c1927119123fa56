use crate::exact::{echelon, Field, LinAlgError, Matrix, Scalar, Vector};

/// A linear map between coordinate spaces, stored as a `codomain x domain`
/// matrix acting on column vectors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinMap {
    matrix: Matrix,
}

impl LinMap {
    pub fn from_matrix(matrix: Matrix) -> Self {
        LinMap { matrix }
    }

    /// Builds the map from the images of the domain's standard basis.
    pub fn from_images(field: Field, codomain: usize, images: &[Vector]) -> Self {
        LinMap { matrix: Matrix::from_columns(field, codomain, images) }
    }

    pub fn from_fn(field: Field, domain: usize, codomain: usize, f: impl Fn(usize) -> Vector) -> Self {
        let images: Vec<Vector> = (0..domain).map(f).collect();
        Self::from_images(field, codomain, &images)
    }

    pub fn identity(field: Field, n: usize) -> Self {
        LinMap { matrix: Matrix::identity(field, n) }
    }

    pub fn zero(field: Field, domain: usize, codomain: usize) -> Self {
        LinMap { matrix: Matrix::zeros(field, codomain, domain) }
    }

    pub fn field(&self) -> Field {
        self.matrix.field()
    }

    pub fn domain(&self) -> usize {
        self.matrix.cols()
    }

    pub fn codomain(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        self.matrix.mul_vec(v)
    }

    /// Image of the `i`-th basis vector.
    pub fn image(&self, i: usize) -> Vector {
        self.matrix.column(i)
    }

    pub fn images(&self) -> Vec<Vector> {
        self.matrix.columns()
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &LinMap) -> Result<LinMap, LinAlgError> {
        Ok(LinMap { matrix: self.matrix.mul(&inner.matrix)? })
    }

    pub fn inverse(&self) -> Result<LinMap, LinAlgError> {
        Ok(LinMap { matrix: self.matrix.inverse()? })
    }

    pub fn transpose(&self) -> LinMap {
        LinMap { matrix: self.matrix.transpose() }
    }

    pub fn rank(&self) -> usize {
        echelon::rank_of(self.field(), self.codomain(), self.images())
    }

    pub fn is_bijective(&self) -> bool {
        self.domain() == self.codomain() && self.rank() == self.domain()
    }
}
