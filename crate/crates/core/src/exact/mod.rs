//! Exact scalars (rationals and prime fields) and dense/sparse linear algebra.

pub mod echelon;
pub mod field;
pub mod matrix;
pub mod rational;
pub mod vector;

pub use echelon::{Echelon, SparseVec, Subspace};
pub use field::{Field, FieldError, Scalar};
pub use matrix::{LinAlgError, Matrix, Solution};
pub use rational::Rational;
pub use vector::Vector;
