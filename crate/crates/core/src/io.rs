//! JSON file schema for extensions, abstract pairings and sidecars.
//!
//! Scalars are strings in canonical form (`"p/q"` over `Q`, least residues
//! over `F_p`). Matrices are row-major lists of rows.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, AlgebraError, LinMap};
use crate::exact::echelon::{sparse_collect, SparseVec};
use crate::exact::{vector, Field, FieldError, Matrix, Scalar, Vector};
use crate::frobenius::{expectation_from_upper_images, Extension, FrobeniusError};

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Frobenius(#[from] FrobeniusError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub dim: usize,
    pub unit: Vec<String>,
    pub structure: Vec<(usize, usize, usize, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionFile {
    pub name: String,
    pub field: Field,
    pub algebra: AlgebraFile,
    /// Images of the basis of `N` in `M` coordinates.
    pub subalgebra: Vec<Vec<String>>,
    /// `E(e_i)` in `M` coordinates, one row per basis element of `M`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expectation: Option<Vec<Vec<String>>>,
    /// `Σ c e_i ⊗ e_j` as `[i, j, c]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual_bases: Option<Vec<(usize, usize, String)>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingFile {
    pub name: String,
    pub field: Field,
    pub a: AlgebraFile,
    pub b: AlgebraFile,
    /// `P[i][j] = <a_i, b_j>`.
    pub pairing: Vec<Vec<String>>,
    /// Candidate antipode on `B`, as a matrix acting on column vectors.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum InputFile {
    Extension(ExtensionFile),
    Pairing(PairingFile),
}

/// Expected outcomes: check id -> expected status, plus named values.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sidecar {
    pub example: String,
    pub checks: BTreeMap<String, String>,
    pub values: BTreeMap<String, String>,
}

fn parse_vec(field: Field, v: &[String], len: usize, what: &str) -> Result<Vector, InputError> {
    if v.len() != len {
        return Err(InputError::Shape(format!("{what}: expected {len} entries, found {}", v.len())));
    }
    v.iter().map(|s| field.parse(s).map_err(InputError::from)).collect()
}

pub fn strings(v: &[Scalar]) -> Vec<String> {
    vector::to_strings(v)
}

impl AlgebraFile {
    pub fn from_algebra(alg: &Algebra, names: Option<Vec<String>>) -> Self {
        AlgebraFile {
            dim: alg.dim(),
            unit: strings(alg.one()),
            structure: alg.constants().into_iter().map(|(i, j, k, c)| (i, j, k, c.to_string())).collect(),
            names,
        }
    }

    pub fn to_algebra(&self, field: Field) -> Result<Algebra, InputError> {
        let unit = parse_vec(field, &self.unit, self.dim, "unit")?;
        let mut entries = Vec::with_capacity(self.structure.len());
        for (i, j, k, c) in &self.structure {
            entries.push((*i, *j, *k, field.parse(c)?));
        }
        if let Some(n) = &self.names {
            if n.len() != self.dim {
                return Err(InputError::Shape(format!("names: expected {} entries", self.dim)));
            }
        }
        Ok(Algebra::from_constants(field, self.dim, entries, unit)?)
    }
}

fn parse_rows(field: Field, rows: &[Vec<String>], len: usize, what: &str) -> Result<Vec<Vector>, InputError> {
    rows.iter().map(|r| parse_vec(field, r, len, what)).collect()
}

pub fn matrix_rows(m: &Matrix) -> Vec<Vec<String>> {
    m.to_string_rows()
}

pub fn parse_matrix(field: Field, rows: &[Vec<String>], nrows: usize, ncols: usize, what: &str) -> Result<Matrix, InputError> {
    if rows.len() != nrows {
        return Err(InputError::Shape(format!("{what}: expected {nrows} rows, found {}", rows.len())));
    }
    Ok(Matrix::from_rows(field, ncols, &parse_rows(field, rows, ncols, what)?))
}

/// A parsed extension file.
#[derive(Clone, Debug)]
pub struct ExtensionSpec {
    pub name: String,
    pub upper: Algebra,
    pub names: Option<Vec<String>>,
    pub embedding: Vec<Vector>,
    pub expectation: Option<Vec<Vector>>,
    pub dual_bases: Option<SparseVec>,
}

impl ExtensionSpec {
    pub fn field(&self) -> Field {
        self.upper.field()
    }

    pub fn from_file(file: &ExtensionFile) -> Result<Self, InputError> {
        let field = file.field;
        let upper = file.algebra.to_algebra(field)?;
        let d = upper.dim();
        let embedding = parse_rows(field, &file.subalgebra, d, "subalgebra row")?;
        if embedding.is_empty() {
            return Err(InputError::Shape("subalgebra must have at least one basis element".into()));
        }
        let expectation = match &file.expectation {
            None => None,
            Some(rows) => {
                if rows.len() != d {
                    return Err(InputError::Shape(format!("expectation: expected {d} rows, found {}", rows.len())));
                }
                Some(parse_rows(field, rows, d, "expectation row")?)
            }
        };
        let dual_bases = match &file.dual_bases {
            None => None,
            Some(entries) => {
                let mut out = Vec::with_capacity(entries.len());
                for (i, j, c) in entries {
                    if *i >= d || *j >= d {
                        return Err(InputError::Shape(format!("dual_bases index ({i}, {j}) out of range")));
                    }
                    out.push((i * d + j, field.parse(c)?));
                }
                Some(sparse_collect(field, out))
            }
        };
        Ok(ExtensionSpec { name: file.name.clone(), upper, names: file.algebra.names.clone(), embedding, expectation, dual_bases })
    }

    pub fn to_file(&self) -> ExtensionFile {
        let d = self.upper.dim();
        ExtensionFile {
            name: self.name.clone(),
            field: self.field(),
            algebra: AlgebraFile::from_algebra(&self.upper, self.names.clone()),
            subalgebra: self.embedding.iter().map(|r| strings(r)).collect(),
            expectation: self.expectation.as_ref().map(|rows| rows.iter().map(|r| strings(r)).collect()),
            dual_bases: self.dual_bases.as_ref().map(|t| t.iter().map(|(idx, c)| (idx / d, idx % d, c.to_string())).collect()),
        }
    }

    pub fn extension(&self) -> Result<Extension, InputError> {
        Ok(Extension::from_embedding(self.upper.clone(), &self.embedding)?)
    }

    /// `E: M -> N` in `N` coordinates, when supplied.
    pub fn expectation_map(&self, ext: &Extension) -> Result<Option<LinMap>, InputError> {
        match &self.expectation {
            None => Ok(None),
            Some(images) => Ok(Some(expectation_from_upper_images(ext, images)?)),
        }
    }
}

/// A parsed abstract pairing file.
#[derive(Clone, Debug)]
pub struct PairingSpec {
    pub name: String,
    pub a: Algebra,
    pub b: Algebra,
    pub pairing: Matrix,
    pub antipode: Option<Matrix>,
}

impl PairingSpec {
    pub fn from_file(file: &PairingFile) -> Result<Self, InputError> {
        let field = file.field;
        let a = file.a.to_algebra(field)?;
        let b = file.b.to_algebra(field)?;
        let pairing = parse_matrix(field, &file.pairing, a.dim(), b.dim(), "pairing")?;
        let antipode = match &file.antipode {
            None => None,
            Some(rows) => Some(parse_matrix(field, rows, b.dim(), b.dim(), "antipode")?),
        };
        Ok(PairingSpec { name: file.name.clone(), a, b, pairing, antipode })
    }

    pub fn to_file(&self, a_names: Option<Vec<String>>, b_names: Option<Vec<String>>) -> PairingFile {
        PairingFile {
            name: self.name.clone(),
            field: self.a.field(),
            a: AlgebraFile::from_algebra(&self.a, a_names),
            b: AlgebraFile::from_algebra(&self.b, b_names),
            pairing: matrix_rows(&self.pairing),
            antipode: self.antipode.as_ref().map(matrix_rows),
        }
    }
}

pub fn parse_input(text: &str) -> Result<InputFile, InputError> {
    Ok(serde_json::from_str(text)?)
}

/// Canonical pretty JSON with a trailing newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn malformed_inputs_rejected() {
        assert!(parse_input("{").is_err());
        let bad = r#"{"kind":"extension","name":"x","field":"Q","algebra":{"dim":1,"unit":["1"],"structure":[[0,0,3,"1"]]},"subalgebra":[["1"]]}"#;
        let InputFile::Extension(f) = parse_input(bad).unwrap() else { panic!() };
        assert!(ExtensionSpec::from_file(&f).is_err());
        let bad_field = r#"{"kind":"extension","name":"x","field":"F4","algebra":{"dim":1,"unit":["1"],"structure":[]},"subalgebra":[["1"]]}"#;
        assert!(parse_input(bad_field).is_err());
    }
}
