//! Frobenius systems `(E, Σ x_i ⊗ y_i)` on an algebra extension `N ⊆ M`:
//! verification, solving for dual bases, classification, normalization,
//! Nakayama automorphisms, composition and separability elements of simple
//! field extensions.

mod separability;

pub use separability::{separability_element_field, simple_extension, SeparabilityElement};

use std::sync::Arc;

use crate::algebra::{algebra_generators, centralizer, check_morphism, subalgebra_from_basis, Algebra, LinMap, TensorQuotient};
use crate::exact::echelon::{dense_from_sparse, solve_sparse, sparse_collect, sparse_from_dense, SparseVec};
use crate::exact::{vector, Field, Matrix, Scalar, Solution, Subspace, Vector};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FrobeniusError {
    #[error("inclusion is not a unital algebra monomorphism")]
    BadInclusion,
    #[error("subalgebra embedding is not a unital subalgebra")]
    NotSubalgebra,
    #[error("image of E({0}) does not lie in N")]
    NotIntoLower(usize),
    #[error("E is not a Frobenius homomorphism: the dual-bases system is inconsistent")]
    NotFrobenius,
    #[error("supplied dual bases fail the Frobenius equations at basis element {0}")]
    BadDualBases(usize),
    #[error("index is not a scalar multiple of 1")]
    IndexNotScalar,
    #[error("index is zero")]
    ZeroIndex,
    #[error("E(1) is not an invertible scalar multiple of 1")]
    NotNormalizable,
    #[error("extensions are not composable: {0}")]
    Incompatible(String),
    #[error("Nakayama equation has no solution")]
    NakayamaUnsolvable,
    #[error("Nakayama equation has more than one solution")]
    NakayamaNotUnique,
    #[error("{0}")]
    Inseparable(String),
}

/// An algebra extension `N ⊆ M` given by a unital monomorphism `incl: N -> M`.
#[derive(Clone, Debug)]
pub struct Extension {
    pub upper: Algebra,
    pub lower: Algebra,
    pub incl: LinMap,
    lower_space: Subspace,
    /// Canonical coordinates in `lower_space` -> coordinates in `lower`.
    to_lower: Matrix,
    lower_gens: Vec<Vector>,
}

impl Extension {
    pub fn new(upper: Algebra, lower: Algebra, incl: LinMap) -> Result<Extension, FrobeniusError> {
        if incl.domain() != lower.dim() || incl.codomain() != upper.dim() {
            return Err(FrobeniusError::BadInclusion);
        }
        if !check_morphism(&incl, &lower, &upper).is_homomorphism() || incl.rank() != lower.dim() {
            return Err(FrobeniusError::BadInclusion);
        }
        let images = incl.images();
        let lower_space = Subspace::span(upper.field(), upper.dim(), &images);
        let change = Matrix::from_columns(
            upper.field(),
            lower.dim(),
            &images.iter().map(|v| lower_space.coordinates(v).expect("member")).collect::<Vec<_>>(),
        );
        let to_lower = change.inverse().map_err(|_| FrobeniusError::BadInclusion)?;
        let gens_in_lower = algebra_generators(&lower, &Subspace::whole(lower.field(), lower.dim()));
        let lower_gens = gens_in_lower.iter().map(|g| incl.apply(g)).collect();
        Ok(Extension { upper, lower, incl, lower_space, to_lower, lower_gens })
    }

    /// Extension whose lower algebra is spanned by `rows` (coordinates in
    /// `upper`), with the lower basis taken in the given order.
    pub fn from_embedding(upper: Algebra, rows: &[Vector]) -> Result<Extension, FrobeniusError> {
        let (lower, incl) = subalgebra_from_basis(&upper, rows).map_err(|_| FrobeniusError::NotSubalgebra)?;
        Self::new(upper, lower, incl)
    }

    pub fn field(&self) -> Field {
        self.upper.field()
    }

    pub fn embed(&self, n: &[Scalar]) -> Vector {
        self.incl.apply(n)
    }

    /// Image of `N` in `M`.
    pub fn lower_space(&self) -> &Subspace {
        &self.lower_space
    }

    /// Algebra generators of `N`, as elements of `M`.
    pub fn lower_generators(&self) -> &[Vector] {
        &self.lower_gens
    }

    /// Coordinates in `N` of an element of `M`, if it lies in `N`.
    pub fn lower_coordinates(&self, m: &[Scalar]) -> Option<Vector> {
        self.lower_space.coordinates(m).map(|c| self.to_lower.mul_vec(&c))
    }

    /// `C_M(N)`.
    pub fn centralizer(&self) -> Subspace {
        centralizer(&self.upper, &self.lower_gens)
    }
}

/// Result of [`verify_conditional_expectation`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpectationReport {
    /// First `(n, m)` basis pair with `E(n m) != n E(m)`.
    pub left_failure: Option<(usize, usize)>,
    /// First `(m, n)` basis pair with `E(m n) != E(m) n`.
    pub right_failure: Option<(usize, usize)>,
    pub unital: bool,
}

impl ExpectationReport {
    pub fn is_bimodule_map(&self) -> bool {
        self.left_failure.is_none() && self.right_failure.is_none()
    }

    pub fn passes(&self) -> bool {
        self.is_bimodule_map() && self.unital
    }
}

/// Checks that `E: M -> N` is an `N`-bimodule map and whether `E(1) = 1`.
/// Left and right linearity on basis pairs is equivalent to
/// `E(n m n') = n E(m) n'` on basis triples.
pub fn verify_conditional_expectation(ext: &Extension, e: &LinMap) -> ExpectationReport {
    let (m, n) = (&ext.upper, &ext.lower);
    let mut left_failure = None;
    let mut right_failure = None;
    let images: Vec<Vector> = (0..m.dim()).map(|j| e.image(j)).collect();
    'left: for i in 0..n.dim() {
        let ni = ext.incl.image(i);
        for j in 0..m.dim() {
            let lhs = e.apply(&m.mul(&ni, &m.basis(j)));
            if lhs != n.mul(&n.basis(i), &images[j]) {
                left_failure = Some((i, j));
                break 'left;
            }
        }
    }
    'right: for j in 0..m.dim() {
        for i in 0..n.dim() {
            let ni = ext.incl.image(i);
            let lhs = e.apply(&m.mul(&m.basis(j), &ni));
            if lhs != n.mul(&images[j], &n.basis(i)) {
                right_failure = Some((j, i));
                break 'right;
            }
        }
    }
    let unital = e.apply(m.one()) == *n.one();
    ExpectationReport { left_failure, right_failure, unital }
}

/// Converts a map given by images in `M` coordinates into a map `M -> N`.
pub fn expectation_from_upper_images(ext: &Extension, images: &[Vector]) -> Result<LinMap, FrobeniusError> {
    let lower_images = images
        .iter()
        .enumerate()
        .map(|(i, v)| ext.lower_coordinates(v).ok_or(FrobeniusError::NotIntoLower(i)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LinMap::from_images(ext.field(), ext.lower.dim(), &lower_images))
}

/// Which of the defining conditions of strong separability hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StrongSeparability {
    Holds,
    Fails,
    IndexNonScalar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub split: bool,
    pub separable: bool,
    pub strongly_separable: StrongSeparability,
    pub irreducible: bool,
    pub normalized: bool,
    pub centralizer_dim: usize,
}

/// A Frobenius homomorphism `E: M -> N` with its dual-bases tensor.
#[derive(Clone, Debug)]
pub struct FrobeniusSystem {
    pub ext: Extension,
    /// `E` as a map into `N` coordinates.
    pub e: LinMap,
    pub quotient: Arc<TensorQuotient>,
    /// A representative of `Σ x_i ⊗ y_i` in `M ⊗_k M`, indexed `a * dim + b`.
    pub tensor: SparseVec,
    /// `Σ x_i y_i`.
    pub index: Vector,
    /// `λ⁻¹` when the index is a scalar multiple of 1.
    pub lambda_inv: Option<Scalar>,
}

impl FrobeniusSystem {
    /// Assembles a system from supplied data and checks both Frobenius
    /// equations on every basis element.
    pub fn from_parts(ext: Extension, e: LinMap, quotient: Arc<TensorQuotient>, tensor: SparseVec) -> Result<Self, FrobeniusError> {
        let sys = Self::assemble(ext, e, quotient, tensor);
        match sys.frobenius_failure() {
            None => Ok(sys),
            Some(m) => Err(FrobeniusError::BadDualBases(m)),
        }
    }

    fn assemble(ext: Extension, e: LinMap, quotient: Arc<TensorQuotient>, tensor: SparseVec) -> Self {
        let m = &ext.upper;
        let d = m.dim();
        let mut index = m.zero();
        for (idx, c) in &tensor {
            for (k, x) in m.basis_product(idx / d, idx % d) {
                index[*k] = &index[*k] + &(c * x);
            }
        }
        let lambda_inv = m.as_scalar(&index);
        FrobeniusSystem { ext, e, quotient, tensor, index, lambda_inv }
    }

    pub fn field(&self) -> Field {
        self.ext.field()
    }

    pub fn upper(&self) -> &Algebra {
        &self.ext.upper
    }

    /// `ι(E(m))` as an element of `M`.
    pub fn e_up(&self, m: &[Scalar]) -> Vector {
        self.ext.embed(&self.e.apply(m))
    }

    /// Dual bases as pairs `(x_i, y_i)` with `x_i` a basis vector of `M`.
    pub fn pairs(&self) -> Vec<(Vector, Vector)> {
        let m = &self.ext.upper;
        let d = m.dim();
        let mut out: Vec<(usize, Vector)> = Vec::new();
        for (idx, c) in &self.tensor {
            let (a, b) = (idx / d, idx % d);
            if out.last().map(|(x, _)| *x) != Some(a) {
                out.push((a, m.zero()));
            }
            let y = &mut out.last_mut().expect("pushed").1;
            y[b] = &y[b] + c;
        }
        out.into_iter().map(|(a, y)| (m.basis(a), y)).collect()
    }

    /// Class of the dual-bases tensor in `M ⊗_N M`.
    pub fn tensor_class(&self) -> Vector {
        self.quotient.project_sparse(&self.tensor)
    }

    /// First basis element `m` where `Σ E(m x_i) y_i = m = Σ x_i E(y_i m)` fails.
    pub fn frobenius_failure(&self) -> Option<usize> {
        let m = &self.ext.upper;
        let pairs = self.pairs();
        (0..m.dim()).find(|&r| {
            let er = m.basis(r);
            let mut left = m.zero();
            let mut right = m.zero();
            for (x, y) in &pairs {
                let l = m.mul(&self.e_up(&m.mul(&er, x)), y);
                left = vector::add(&left, &l);
                let r2 = m.mul(x, &self.e_up(&m.mul(y, &er)));
                right = vector::add(&right, &r2);
            }
            left != er || right != er
        })
    }

    pub fn lambda(&self) -> Option<Scalar> {
        self.lambda_inv.as_ref().and_then(Scalar::inv)
    }

    /// `E(1)` as a scalar, when it is one.
    pub fn e_of_one(&self) -> Option<Scalar> {
        let v = self.e.apply(self.ext.upper.one());
        self.ext.lower.as_scalar(&v)
    }
}

/// Solves both Frobenius equations for the tensor `Σ x_i ⊗ y_i` as a single
/// unknown in `M ⊗_N M`.
pub fn solve_dual_bases(ext: &Extension, e: &LinMap) -> Result<FrobeniusSystem, FrobeniusError> {
    let quotient = Arc::new(TensorQuotient::new(&ext.upper, ext.lower_generators()));
    solve_dual_bases_in(ext, e, quotient)
}

fn solve_dual_bases_in(ext: &Extension, e: &LinMap, quotient: Arc<TensorQuotient>) -> Result<FrobeniusSystem, FrobeniusError> {
    let m = &ext.upper;
    let f = m.field();
    let d = m.dim();
    let e_up = |v: &[Scalar]| ext.embed(&e.apply(v));
    // e_up of every basis product, shared by both equations.
    let eprod: Vec<SparseVec> = (0..d * d)
        .map(|ij| sparse_from_dense(&e_up(&dense_from_sparse(f, d, m.basis_product(ij / d, ij % d)))))
        .collect();
    let mut rows: Vec<SparseVec> = vec![Vec::new(); 2 * d * d];
    for q in 0..quotient.dim() {
        let (a, b) = quotient.pair(q);
        for r in 0..d {
            // E(e_r e_a) e_b
            let l = m.mul_sparse(&eprod[r * d + a], &[(b, f.one())]);
            for (k, x) in l {
                rows[r * d + k].push((q, x));
            }
            // e_a E(e_b e_r)
            let rt = m.mul_sparse(&[(a, f.one())], &eprod[b * d + r]);
            for (k, x) in rt {
                rows[d * d + r * d + k].push((q, x));
            }
        }
    }
    let rhs = |row: usize| {
        let (r, k) = ((row % (d * d)) / d, row % d);
        if r == k {
            f.one()
        } else {
            f.zero()
        }
    };
    let sol = solve_sparse(f, quotient.dim(), rows.into_iter().enumerate().map(|(i, row)| (row, rhs(i))));
    let coords = match sol {
        Solution::Inconsistent => return Err(FrobeniusError::NotFrobenius),
        Solution::Consistent { particular, .. } => particular,
    };
    let tensor = quotient.section(&coords);
    FrobeniusSystem::from_parts(ext.clone(), e.clone(), quotient, tensor)
}

/// Decides split / separable / strongly separable / irreducible / normalized.
pub fn classify(sys: &FrobeniusSystem) -> Classification {
    let m = &sys.ext.upper;
    let f = m.field();
    let c = sys.ext.centralizer();
    let cb = c.basis();
    // split: E(d) = 1 with d in C_M(N)
    let n_dim = sys.ext.lower.dim();
    let images: Vec<Vector> = cb.iter().map(|b| sys.e.apply(b)).collect();
    let split = Matrix::from_columns(f, n_dim, &images)
        .solve(sys.ext.lower.one())
        .map(|s| s.particular().is_some())
        .unwrap_or(false);
    // separable: Σ x_i d y_i = 1 with d in C_M(N)
    let pairs = sys.pairs();
    let sep_images: Vec<Vector> = cb
        .iter()
        .map(|b| pairs.iter().fold(m.zero(), |acc, (x, y)| vector::add(&acc, &m.mul(&m.mul(x, b), y))))
        .collect();
    let separable = Matrix::from_columns(f, m.dim(), &sep_images)
        .solve(m.one())
        .map(|s| s.particular().is_some())
        .unwrap_or(false);
    let e1 = sys.e.apply(m.one());
    let strongly_separable = match &sys.lambda_inv {
        None => StrongSeparability::IndexNonScalar,
        Some(l) if !l.is_zero() && !vector::is_zero(&e1) => StrongSeparability::Holds,
        Some(_) => StrongSeparability::Fails,
    };
    Classification {
        split,
        separable,
        strongly_separable,
        irreducible: c.dim() == 1,
        normalized: e1 == *sys.ext.lower.one(),
        centralizer_dim: c.dim(),
    }
}

/// Rescales to `E(1) = 1`: `E ↦ μ⁻¹E`, `x_i ↦ μ x_i` where `E(1) = μ·1`.
pub fn normalize(sys: &FrobeniusSystem) -> Result<FrobeniusSystem, FrobeniusError> {
    let mu = sys.e_of_one().filter(|s| !s.is_zero()).ok_or(FrobeniusError::NotNormalizable)?;
    let inv = mu.inv().expect("nonzero");
    let f = sys.field();
    let e = LinMap::from_images(f, sys.e.codomain(), &sys.e.images().iter().map(|v| vector::scale(&inv, v)).collect::<Vec<_>>());
    let tensor = sys.tensor.iter().map(|(i, c)| (*i, c * &mu)).collect();
    FrobeniusSystem::from_parts(sys.ext.clone(), e, sys.quotient.clone(), tensor)
}

/// A Nakayama automorphism on a subalgebra `scope`, in scope coordinates.
#[derive(Clone, Debug)]
pub struct Nakayama {
    pub scope: Subspace,
    pub map: LinMap,
}

impl Nakayama {
    /// `q(c)` for `c` in the scope, in ambient coordinates.
    pub fn apply(&self, c: &[Scalar]) -> Option<Vector> {
        let coords = self.scope.coordinates(c)?;
        Some(self.scope.from_coordinates(&self.map.apply(&coords)))
    }

    pub fn is_identity(&self) -> bool {
        self.map == LinMap::identity(self.map.field(), self.map.domain())
    }
}

/// Solves `E(q(c) m) = E(m c)` for every basis `c` of `scope` and every `m`
/// in `tests`, and verifies `q` is a unital algebra automorphism of `scope`.
pub fn nakayama_map(
    alg: &Algebra,
    e: impl Fn(&[Scalar]) -> Vector,
    scope: &Subspace,
    tests: &[Vector],
) -> Result<Nakayama, FrobeniusError> {
    let f = alg.field();
    let sb = scope.basis();
    // Column k of the system: E(s_k m) for all test m, stacked.
    let columns: Vec<Vector> = sb.iter().map(|s| tests.iter().flat_map(|m| e(&alg.mul(s, m))).collect()).collect();
    let height = columns.first().map_or(0, Vec::len);
    let system = Matrix::from_columns(f, height, &columns);
    let mut images = Vec::with_capacity(sb.len());
    for c in &sb {
        let rhs: Vector = tests.iter().flat_map(|m| e(&alg.mul(m, c))).collect();
        match system.solve(&rhs).expect("dimensions agree") {
            Solution::Inconsistent => return Err(FrobeniusError::NakayamaUnsolvable),
            Solution::Consistent { particular, kernel } => {
                if !kernel.is_empty() {
                    return Err(FrobeniusError::NakayamaNotUnique);
                }
                images.push(particular);
            }
        }
    }
    let map = LinMap::from_images(f, sb.len(), &images);
    let naka = Nakayama { scope: scope.clone(), map };
    // automorphism check: multiplicative, unital, bijective
    let q = |x: &Vector| naka.apply(x).expect("in scope");
    if q(alg.one()) != *alg.one() || !naka.map.is_bijective() {
        return Err(FrobeniusError::NakayamaUnsolvable);
    }
    for a in &sb {
        for b in &sb {
            if q(&alg.mul(a, b)) != alg.mul(&q(a), &q(b)) {
                return Err(FrobeniusError::NakayamaUnsolvable);
            }
        }
    }
    Ok(naka)
}

/// Nakayama automorphism of `sys` on `scope` (normally `C_M(N)`).
pub fn nakayama(sys: &FrobeniusSystem, scope: &Subspace) -> Result<Nakayama, FrobeniusError> {
    let m = &sys.ext.upper;
    let tests: Vec<Vector> = (0..m.dim()).map(|i| m.basis(i)).collect();
    nakayama_map(m, |v| sys.e.apply(v), scope, &tests)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionReport {
    /// Present when both factors are irreducible.
    pub lagrange: Option<bool>,
}

/// `E∘F` for `R/M` (system `rm`, Frobenius homomorphism `F`) over `M/N`
/// (system `mn`, `E`), with dual bases `{z_j x_i}`, `{y_i w_j}`.
pub fn compose(rm: &FrobeniusSystem, mn: &FrobeniusSystem) -> Result<(FrobeniusSystem, CompositionReport), FrobeniusError> {
    let r = &rm.ext.upper;
    let mid = &rm.ext.lower;
    if mid.dim() != mn.ext.upper.dim() || mid.constants() != mn.ext.upper.constants() || mid.one() != mn.ext.upper.one() {
        return Err(FrobeniusError::Incompatible("middle algebras differ".into()));
    }
    let f = r.field();
    let incl = rm.ext.incl.compose(&mn.ext.incl).expect("dimensions");
    let ext = Extension::new(r.clone(), mn.ext.lower.clone(), incl)?;
    let e = mn.e.compose(&rm.e).expect("dimensions");
    let d = r.dim();
    let mut entries: Vec<(usize, Scalar)> = Vec::new();
    for (z, w) in rm.pairs() {
        for (x, y) in mn.pairs() {
            let zx = r.mul(&z, &rm.ext.embed(&x));
            let yw = r.mul(&rm.ext.embed(&y), &w);
            entries.extend(crate::algebra::tensor_sparse(d, &zx, &yw));
        }
    }
    let tensor = sparse_collect(f, entries);
    let quotient = Arc::new(TensorQuotient::new(r, ext.lower_generators()));
    let sys = FrobeniusSystem::from_parts(ext, e, quotient, tensor)?;
    let both_irreducible = classify(rm).irreducible && classify(mn).irreducible;
    let lagrange = both_irreducible.then(|| match (&sys.lambda_inv, &rm.lambda_inv, &mn.lambda_inv) {
        (Some(a), Some(b), Some(c)) => *a == b * c,
        _ => false,
    });
    Ok((sys, CompositionReport { lagrange }))
}

#[cfg(test)]
mod tests;
