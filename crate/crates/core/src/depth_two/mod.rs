//! Second centralizers `A = C_{M₁}(N)`, `B = C_{M₂}(M)`, `C = C_{M₂}(N)`, the
//! depth-two test by orthogonal dual bases, and the structure of `C`.
//!
//! For a step `L ⊆ X` with expectation `E` and candidate subalgebra `S`, the
//! test asks for `z_i, w_i ∈ S` with `Σ E(x z_i) w_i = x` on `X` and
//! `E(w_i z_j) = δ_ij`. Such bases exist exactly when some `w ∈ S^r` is a free
//! left `L`-basis of `X` (the coordinate functionals are then `E(· z_i)` with
//! `z_i` automatically in `S`). Invertibility of the matrix of
//! `(l_k) ↦ Σ l_k w_i` is a polynomial condition in `w`, so a seeded random
//! search decides it with a Schwartz–Zippel error bound. A second, independent
//! search solves the defining equations for `z` directly and must agree.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{centralizer, Algebra, LinMap};
use crate::exact::{echelon, vector, Field, Matrix, Scalar, Solution, Subspace, Vector};
use crate::frobenius::{nakayama_map, FrobeniusSystem, Nakayama};
use crate::tower::TowerData;

/// Random candidates tried before the search gives up.
pub const SEARCH_TRIES: usize = 24;
const SEED_MAIN: u64 = 0x00d2_5eed;
const SEED_BRUTE: u64 = 0x00b2_f0ce;

#[derive(Clone, Debug)]
pub struct Centralizers {
    /// `C_{M₁}(N)` in `M₁` coordinates.
    pub a: Subspace,
    /// `C_{M₂}(M)` in `M₂` coordinates.
    pub b: Subspace,
    /// `C_{M₂}(N)` in `M₂` coordinates.
    pub c: Subspace,
    /// `C_M(N)` pushed into `M₁` lies in `A`.
    pub contains_base_centralizer: bool,
    pub base_irreducible: bool,
}

pub fn second_centralizers(t: &TowerData) -> Centralizers {
    let a = centralizer(t.m1(), &t.n_generators_m1());
    let b = centralizer(t.m2(), &t.m_generators_top());
    let c = centralizer(t.m2(), &t.n_generators_top());
    let base = t.base.ext.centralizer();
    let contains_base_centralizer = base.basis().iter().all(|v| a.contains(&t.m_to_m1(v)));
    Centralizers { a, b, c, contains_base_centralizer, base_irreducible: base.dim() == 1 }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DepthTwoFailure {
    #[error("dimension obstruction: {reason}")]
    DimensionObstruction { reason: String },
    #[error("Gram matrix E(a_i a_j) on the candidate subalgebra is singular")]
    GramSingular,
    #[error("orthogonal dual bases system is inconsistent: {reason}")]
    SystemInconsistent { reason: String },
}

/// `{z_i}`, `{w_i}` in the coordinates of the ambient level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalDualBases {
    pub z: Vec<Vector>,
    pub w: Vec<Vector>,
}

#[derive(Clone, Debug)]
pub struct LevelVerdict {
    pub result: Result<OrthogonalDualBases, DepthTwoFailure>,
    /// `"gram"` or `"free-basis search"`.
    pub method: &'static str,
    /// The independent solver reached the same verdict.
    pub brute_force_agrees: bool,
    /// Upper bound on the probability that a negative search verdict is
    /// wrong, when the verdict came from a search.
    pub error_bound: Option<f64>,
}

impl LevelVerdict {
    pub fn passes(&self) -> bool {
        self.result.is_ok()
    }
}

#[derive(Clone, Debug)]
pub struct DepthTwoData {
    pub cents: Centralizers,
    pub level1: LevelVerdict,
    pub level2: LevelVerdict,
}

impl DepthTwoData {
    pub fn passes(&self) -> bool {
        self.level1.passes() && self.level2.passes()
    }

    /// `{z_i}`, `{w_i}` in `A`.
    pub fn zw(&self) -> Option<&OrthogonalDualBases> {
        self.level1.result.as_ref().ok()
    }

    /// `{u_j}`, `{v_j}` in `B`.
    pub fn uv(&self) -> Option<&OrthogonalDualBases> {
        self.level2.result.as_ref().ok()
    }

    pub fn n(&self) -> Option<usize> {
        self.uv().map(|b| b.u().len())
    }
}

impl OrthogonalDualBases {
    pub fn u(&self) -> &[Vector] {
        &self.z
    }

    pub fn v(&self) -> &[Vector] {
        &self.w
    }
}

fn random_scalar(field: Field, rng: &mut ChaCha8Rng) -> Scalar {
    field.from_i64(rng.gen_range(-50..=50))
}

fn random_element(field: Field, basis: &[Vector], ambient: usize, rng: &mut ChaCha8Rng) -> Vector {
    let coeffs: Vec<Scalar> = basis.iter().map(|_| random_scalar(field, rng)).collect();
    vector::combine(field, ambient, &coeffs, basis)
}

/// First basis element where `Σ E(x z_i) w_i = x` fails, or the first pair
/// where `E(w_i z_j) = δ_ij` fails (offset by `dim X`).
pub fn orthogonal_failure(sys: &FrobeniusSystem, b: &OrthogonalDualBases) -> Option<usize> {
    let x_alg = sys.upper();
    let lower = &sys.ext.lower;
    let d = x_alg.dim();
    for k in 0..d {
        let x = x_alg.basis(k);
        let mut acc = x_alg.zero();
        for (z, w) in b.z.iter().zip(&b.w) {
            acc = vector::add(&acc, &x_alg.mul(&sys.e_up(&x_alg.mul(&x, z)), w));
        }
        if acc != x {
            return Some(k);
        }
    }
    let r = b.z.len();
    for i in 0..r {
        for j in 0..r {
            let v = sys.e.apply(&x_alg.mul(&b.w[i], &b.z[j]));
            let want = if i == j { lower.one().clone() } else { lower.zero() };
            if v != want {
                return Some(d + i * r + j);
            }
        }
    }
    None
}

/// Coordinate functionals of a free left `L`-basis `w`, turned into `z_i`
/// through the Frobenius dual bases: `z_i = Σ_k x_k φ_i(y_k)`.
fn from_free_basis(sys: &FrobeniusSystem, w: &[Vector]) -> Option<OrthogonalDualBases> {
    let x_alg = sys.upper();
    let f = x_alg.field();
    let lower = &sys.ext.lower;
    let dl = lower.dim();
    let ups: Vec<Vector> = (0..dl).map(|k| sys.ext.embed(&lower.basis(k))).collect();
    let columns: Vec<Vector> = w.iter().flat_map(|wi| ups.iter().map(move |l| x_alg.mul(l, wi))).collect();
    if columns.len() != x_alg.dim() {
        return None;
    }
    let inv = Matrix::from_columns(f, x_alg.dim(), &columns).inverse().ok()?;
    let pairs = sys.pairs();
    let mut z = vec![x_alg.zero(); w.len()];
    for (xk, yk) in &pairs {
        let coeffs = inv.mul_vec(yk);
        for (i, zi) in z.iter_mut().enumerate() {
            let phi = sys.ext.embed(&coeffs[i * dl..(i + 1) * dl]);
            *zi = vector::add(zi, &x_alg.mul(xk, &phi));
        }
    }
    Some(OrthogonalDualBases { z, w: w.to_vec() })
}

/// Solves the defining equations for `z ∈ S^r` given `w`, by dense
/// elimination over all of them at once.
fn solve_for_z(sys: &FrobeniusSystem, s_basis: &[Vector], w: &[Vector]) -> Option<OrthogonalDualBases> {
    let x_alg = sys.upper();
    let f = x_alg.field();
    let lower = &sys.ext.lower;
    let (d, r, ds, dl) = (x_alg.dim(), w.len(), s_basis.len(), lower.dim());
    let unknowns = r * ds;
    let mut rows: Vec<Vector> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    // Σ_{i,s} ζ_is E(x s) w_i = x
    for k in 0..d {
        let x = x_alg.basis(k);
        let terms: Vec<Vec<Vector>> =
            (0..r).map(|i| s_basis.iter().map(|s| x_alg.mul(&sys.e_up(&x_alg.mul(&x, s)), &w[i])).collect()).collect();
        for out in 0..d {
            let mut row = vector::zeros(f, unknowns);
            for i in 0..r {
                for s in 0..ds {
                    row[i * ds + s] = terms[i][s][out].clone();
                }
            }
            rows.push(row);
            rhs.push(x[out].clone());
        }
    }
    // Σ_s ζ_js E(w_i s) = δ_ij
    for i in 0..r {
        let es: Vec<Vector> = s_basis.iter().map(|s| sys.e.apply(&x_alg.mul(&w[i], s))).collect();
        for j in 0..r {
            for out in 0..dl {
                let mut row = vector::zeros(f, unknowns);
                for s in 0..ds {
                    row[j * ds + s] = es[s][out].clone();
                }
                rows.push(row);
                rhs.push(if i == j { lower.one()[out].clone() } else { f.zero() });
            }
        }
    }
    let sol = Matrix::from_rows(f, unknowns, &rows).solve(&rhs).ok()?;
    let zeta = match sol {
        Solution::Inconsistent => return None,
        Solution::Consistent { particular, .. } => particular,
    };
    let z = (0..r).map(|i| vector::combine(f, d, &zeta[i * ds..(i + 1) * ds], s_basis)).collect();
    Some(OrthogonalDualBases { z, w: w.to_vec() })
}

fn brute_force(sys: &FrobeniusSystem, s_basis: &[Vector], r: usize) -> bool {
    let x_alg = sys.upper();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED_BRUTE);
    (0..SEARCH_TRIES).any(|_| {
        let w: Vec<Vector> = (0..r).map(|_| random_element(x_alg.field(), s_basis, x_alg.dim(), &mut rng)).collect();
        solve_for_z(sys, s_basis, &w).is_some_and(|b| orthogonal_failure(sys, &b).is_none())
    })
}

/// Decides whether orthogonal dual bases for `sys` exist inside `candidates`.
pub fn check_level(sys: &FrobeniusSystem, candidates: &Subspace) -> LevelVerdict {
    let x_alg = sys.upper();
    let lower = &sys.ext.lower;
    let (dx, dl) = (x_alg.dim(), lower.dim());
    let s_basis = candidates.basis();
    let fail = |e: DepthTwoFailure, method| LevelVerdict { result: Err(e), method, brute_force_agrees: true, error_bound: None };
    if dx % dl != 0 {
        return fail(DepthTwoFailure::DimensionObstruction { reason: format!("{dl} does not divide {dx}") }, "dimension");
    }
    let r = dx / dl;
    if s_basis.len() < r {
        let reason = format!("need {r} elements but the candidate subalgebra has dimension {}", s_basis.len());
        return fail(DepthTwoFailure::DimensionObstruction { reason }, "dimension");
    }
    let ups: Vec<Vector> = (0..dl).map(|k| sys.ext.embed(&lower.basis(k))).collect();
    let span_rank = echelon::rank_of(x_alg.field(), dx, ups.iter().flat_map(|l| s_basis.iter().map(move |s| x_alg.mul(l, s))));
    let brute = brute_force(sys, &s_basis, r);
    if span_rank < dx {
        let reason = format!("L·S spans only {span_rank} of {dx} dimensions");
        return LevelVerdict {
            result: Err(DepthTwoFailure::SystemInconsistent { reason }),
            method: "span",
            brute_force_agrees: !brute,
            error_bound: None,
        };
    }
    // Scalar-valued Gram on a candidate space of exactly the right size.
    if s_basis.len() == r {
        let gram: Option<Vec<Vec<Scalar>>> = s_basis
            .iter()
            .map(|a| s_basis.iter().map(|b| lower.as_scalar(&sys.e.apply(&x_alg.mul(a, b)))).collect())
            .collect();
        if let Some(g) = gram {
            let f = x_alg.field();
            let gm = Matrix::from_fn(f, r, r, |i, j| g[i][j].clone());
            let result = match gm.inverse() {
                Err(_) => Err(DepthTwoFailure::GramSingular),
                Ok(inv) => {
                    // E(w_i z_j) = δ_ij with z = basis, w_i = Σ_k (G⁻¹)_ik s_k
                    let w = (0..r).map(|i| vector::combine(f, dx, inv.row(i), &s_basis)).collect();
                    let b = OrthogonalDualBases { z: s_basis.clone(), w };
                    match orthogonal_failure(sys, &b) {
                        None => Ok(b),
                        Some(k) => Err(DepthTwoFailure::SystemInconsistent {
                            reason: format!("dual-basis equation fails at basis element {k}"),
                        }),
                    }
                }
            };
            let agrees = result.is_ok() == brute;
            return LevelVerdict { result, method: "gram", brute_force_agrees: agrees, error_bound: None };
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(SEED_MAIN);
    for _ in 0..SEARCH_TRIES {
        let w: Vec<Vector> = (0..r).map(|_| random_element(x_alg.field(), &s_basis, dx, &mut rng)).collect();
        if let Some(b) = from_free_basis(sys, &w) {
            if orthogonal_failure(sys, &b).is_none() && b.z.iter().all(|z| candidates.contains(z)) {
                return LevelVerdict { result: Ok(b), method: "free-basis search", brute_force_agrees: brute, error_bound: None };
            }
        }
    }
    // Each try misses a nonvanishing determinant of degree dx with
    // probability at most dx / |sample set|.
    let sample = match x_alg.field() {
        Field::Rational => 101.0,
        Field::Prime(p) => (p as f64).min(101.0),
    };
    let per_try = (dx as f64 / sample).min(1.0);
    let reason = format!("no free left basis inside the candidate subalgebra after {SEARCH_TRIES} random trials");
    LevelVerdict {
        result: Err(DepthTwoFailure::SystemInconsistent { reason }),
        method: "free-basis search",
        brute_force_agrees: !brute,
        error_bound: Some(per_try.powi(SEARCH_TRIES as i32)),
    }
}

pub fn check_depth_two(t: &TowerData, cents: Centralizers) -> DepthTwoData {
    let level1 = check_level(&t.levels[0].system, &cents.a);
    let level2 = check_level(&t.levels[1].system, &cents.b);
    DepthTwoData { cents, level1, level2 }
}

/// Why a gated check did not run.
pub const SKIP_NOT_IRREDUCIBLE: &str = "base extension is not irreducible (C_M(N) != k)";
pub const SKIP_NOT_DEPTH_TWO: &str = "depth-two verdict did not pass";

pub fn gate(d2: &DepthTwoData) -> Result<(), &'static str> {
    if !d2.passes() {
        return Err(SKIP_NOT_DEPTH_TWO);
    }
    if !d2.cents.base_irreducible {
        return Err(SKIP_NOT_IRREDUCIBLE);
    }
    Ok(())
}

fn rank(alg: &Algebra, vs: impl IntoIterator<Item = Vector>) -> usize {
    echelon::rank_of(alg.field(), alg.dim(), vs)
}

/// Separability element `λ Σ z_i ⊗ w_i` of a subalgebra `S`: `μ(e) = 1` and
/// `s e = e s` for `s` in a basis of `S`, computed in `S ⊗ S` coordinates.
pub fn is_separability_element(alg: &Algebra, s: &Subspace, lambda: &Scalar, b: &OrthogonalDualBases) -> bool {
    let f = alg.field();
    let ds = s.dim();
    let coords = |v: &Vector| s.coordinates(v);
    let mut mu = alg.zero();
    for (z, w) in b.z.iter().zip(&b.w) {
        mu = vector::add(&mu, &alg.mul(z, w));
    }
    if vector::scale(lambda, &mu) != *alg.one() {
        return false;
    }
    let tensor = |pairs: &[(Vector, Vector)]| -> Option<Vector> {
        let mut out = vector::zeros(f, ds * ds);
        for (x, y) in pairs {
            let (cx, cy) = (coords(x)?, coords(y)?);
            for (i, a) in cx.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, c) in cy.iter().enumerate() {
                    out[i * ds + j] = &out[i * ds + j] + &(a * c);
                }
            }
        }
        Some(out)
    };
    s.basis().iter().all(|a| {
        let left: Vec<(Vector, Vector)> = b.z.iter().zip(&b.w).map(|(z, w)| (alg.mul(a, z), w.clone())).collect();
        let right: Vec<(Vector, Vector)> = b.z.iter().zip(&b.w).map(|(z, w)| (z.clone(), alg.mul(w, a))).collect();
        matches!((tensor(&left), tensor(&right)), (Some(l), Some(r)) if l == r)
    })
}

/// Structure of `C` when the extension is irreducible and of depth two.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CStructureReport {
    pub n: usize,
    pub dims: (usize, usize, usize),
    /// `a ⊗ b ↦ ab` and `b ⊗ a ↦ ba` are bijections onto `C`.
    pub a_tensor_b: bool,
    pub b_tensor_a: bool,
    /// `span(A e₂ A) = C`.
    pub a_e2_a: bool,
    /// `e₂A = e₂C` and `Ae₂ = Ce₂`.
    pub e2_a_is_e2_c: bool,
    /// First basis `c` with `e₁ c e₁ != e₁ E_{M₁}(c)`.
    pub e1_c_e1_failure: Option<usize>,
    /// `u_i e₁ v_j` are `n²` matrix units spanning `C` with `Σ u_i e₁ v_i = 1`.
    pub matrix_units: bool,
    /// `n·1 != 0` and `λ⁻¹ = n`.
    pub characteristic_ok: bool,
    pub dim_a_eq_dim_b: bool,
    /// `M ⊗ A -> M₁` and `M₁ ⊗ B -> M₂` by multiplication are bijective.
    pub m_tensor_a: bool,
    pub m1_tensor_b: bool,
    pub a_separable: bool,
    pub b_separable: bool,
}

impl CStructureReport {
    pub fn holds(&self) -> bool {
        self.a_tensor_b
            && self.b_tensor_a
            && self.a_e2_a
            && self.e2_a_is_e2_c
            && self.e1_c_e1_failure.is_none()
            && self.matrix_units
            && self.characteristic_ok
            && self.dim_a_eq_dim_b
            && self.m_tensor_a
            && self.m1_tensor_b
            && self.a_separable
            && self.b_separable
    }
}

pub fn verify_c_structure(t: &TowerData, d2: &DepthTwoData) -> Result<CStructureReport, &'static str> {
    gate(d2)?;
    let m2 = t.m2();
    let m1 = t.m1();
    let f = m2.field();
    let cents = &d2.cents;
    let a_top: Vec<Vector> = cents.a.basis().iter().map(|a| t.m1_to_m2(a)).collect();
    let b_basis = cents.b.basis();
    let c = &cents.c;
    let (da, db, dc) = (cents.a.dim(), cents.b.dim(), c.dim());
    let e1 = t.e1_top();
    let e2 = t.e2();

    let products_in_c = |vs: &[Vector]| vs.iter().all(|v| c.contains(v));
    let ab: Vec<Vector> = a_top.iter().flat_map(|a| b_basis.iter().map(move |b| m2.mul(a, b))).collect();
    let ba: Vec<Vector> = a_top.iter().flat_map(|a| b_basis.iter().map(move |b| m2.mul(b, a))).collect();
    let a_tensor_b = da * db == dc && products_in_c(&ab) && rank(m2, ab) == dc;
    let b_tensor_a = da * db == dc && products_in_c(&ba) && rank(m2, ba) == dc;
    let aea: Vec<Vector> = a_top.iter().flat_map(|a| a_top.iter().map(move |a2| m2.mul_all(&[a, e2, a2]))).collect();
    let a_e2_a = products_in_c(&aea) && rank(m2, aea) == dc;

    let e2a = Subspace::span(f, m2.dim(), a_top.iter().map(|a| m2.mul(e2, a)));
    let e2c = Subspace::span(f, m2.dim(), c.basis().iter().map(|x| m2.mul(e2, x)));
    let ae2 = Subspace::span(f, m2.dim(), a_top.iter().map(|a| m2.mul(a, e2)));
    let ce2 = Subspace::span(f, m2.dim(), c.basis().iter().map(|x| m2.mul(x, e2)));
    let e2_a_is_e2_c = e2a == e2c && ae2 == ce2;

    let e1_c_e1_failure = c.basis().iter().position(|x| m2.mul_all(&[&e1, x, &e1]) != m2.mul(&e1, &t.e_m1_up(x)));

    let uv = d2.uv().expect("gated");
    let n = uv.u().len();
    let units: Vec<Vec<Vector>> = (0..n).map(|i| (0..n).map(|j| m2.mul_all(&[&uv.u()[i], &e1, &uv.v()[j]])).collect()).collect();
    let mut matrix_units = n * n == dc && rank(m2, units.iter().flatten().cloned()) == dc;
    let mut diag = m2.zero();
    for i in 0..n {
        diag = vector::add(&diag, &units[i][i]);
        for j in 0..n {
            matrix_units &= c.contains(&units[i][j]);
            for k in 0..n {
                for l in 0..n {
                    let want = if j == k { units[i][l].clone() } else { m2.zero() };
                    matrix_units &= m2.mul(&units[i][j], &units[k][l]) == want;
                }
            }
        }
    }
    matrix_units &= diag == *m2.one();

    let n_scalar = f.from_i64(n as i64);
    let characteristic_ok = !n_scalar.is_zero() && *t.lambda_inv() == n_scalar;

    let m = t.m();
    let m_ups: Vec<Vector> = (0..m.dim()).map(|i| t.m_to_m1(&m.basis(i))).collect();
    let a_basis = cents.a.basis();
    let m_tensor_a =
        m.dim() * da == m1.dim() && rank(m1, m_ups.iter().flat_map(|x| a_basis.iter().map(move |a| m1.mul(x, a)))) == m1.dim();
    let m1_ups: Vec<Vector> = (0..m1.dim()).map(|i| t.m1_to_m2(&m1.basis(i))).collect();
    let m1_tensor_b =
        m1.dim() * db == m2.dim() && rank(m2, m1_ups.iter().flat_map(|x| b_basis.iter().map(move |b| m2.mul(x, b)))) == m2.dim();

    let lambda = t.lambda();
    let a_separable = is_separability_element(m1, &cents.a, &lambda, d2.zw().expect("gated"));
    let b_separable = is_separability_element(m2, &cents.b, &lambda, uv);

    Ok(CStructureReport {
        n,
        dims: (da, db, dc),
        a_tensor_b,
        b_tensor_a,
        a_e2_a,
        e2_a_is_e2_c,
        e1_c_e1_failure,
        matrix_units,
        characteristic_ok,
        dim_a_eq_dim_b: da == db,
        m_tensor_a,
        m1_tensor_b,
        a_separable,
        b_separable,
    })
}

/// `E_B(c) = Σ_j F(c u_j) v_j` and `E_A = E_{M₁}|_C`, both in subspace
/// coordinates (`C -> B`, `C -> A`).
#[derive(Clone, Debug)]
pub struct Expectations {
    pub e_b: LinMap,
    pub e_a: LinMap,
    pub report: ExpectationsReport,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ExpectationsReport {
    pub e_b_identity_on_b: bool,
    pub e_b_bimodule: bool,
    /// `E_B(b e₁ b') = λ b b'`.
    pub e_b_jones: bool,
    /// `E_B(e₁) = λ`.
    pub e_b_of_e1: bool,
    pub e_a_into_a: bool,
    pub e_a_identity_on_a: bool,
    pub e_a_bimodule: bool,
    /// `F(a e₂) = F(e₂ a) = λF(a)` and `F(b e₁) = F(e₁ b) = λF(b)`.
    pub markov_a: bool,
    pub markov_b: bool,
    /// `F∘E_{M₁} = F` and `F∘E_B = F` on `C`.
    pub f_invariant_e_m1: bool,
    pub f_invariant_e_b: bool,
}

impl ExpectationsReport {
    pub fn holds(&self) -> bool {
        self.e_b_identity_on_b
            && self.e_b_bimodule
            && self.e_b_jones
            && self.e_b_of_e1
            && self.e_a_into_a
            && self.e_a_identity_on_a
            && self.e_a_bimodule
            && self.markov_a
            && self.markov_b
            && self.f_invariant_e_m1
            && self.f_invariant_e_b
    }
}

pub fn conditional_expectations(t: &TowerData, d2: &DepthTwoData) -> Result<Expectations, &'static str> {
    gate(d2)?;
    let m2 = t.m2();
    let m = t.m();
    let f = m2.field();
    let (a, b, c) = (&d2.cents.a, &d2.cents.b, &d2.cents.c);
    let uv = d2.uv().expect("gated");
    let lambda = t.lambda();
    let fs = |x: &Vector| m.as_scalar(&t.f.apply(x));

    // E_B in ambient coordinates; None when F(c u_j) is not scalar.
    let e_b_amb = |x: &Vector| -> Option<Vector> {
        let mut acc = m2.zero();
        for (u, v) in uv.u().iter().zip(uv.v()) {
            let s = fs(&m2.mul(x, u))?;
            acc = vector::add(&acc, &vector::scale(&s, v));
        }
        Some(acc)
    };
    let c_basis = c.basis();
    let e_b_images: Vec<Vector> = c_basis
        .iter()
        .map(|x| e_b_amb(x).and_then(|y| b.coordinates(&y)))
        .collect::<Option<_>>()
        .ok_or("F is not scalar-valued on C u_j")?;
    let e_b = LinMap::from_images(f, b.dim(), &e_b_images);
    let e_b_on = |x: &Vector| -> Vector { b.from_coordinates(&e_b.apply(&c.coordinates(x).expect("in C"))) };

    let b_top = b.basis();
    let e1 = t.e1_top();
    let e2 = t.e2();
    let e_b_identity_on_b = b_top.iter().all(|x| e_b_on(x) == *x);
    let e_b_bimodule = c_basis.iter().all(|x| {
        b_top.iter().all(|y| e_b_on(&m2.mul(y, x)) == m2.mul(y, &e_b_on(x)) && e_b_on(&m2.mul(x, y)) == m2.mul(&e_b_on(x), y))
    });
    let e_b_jones = b_top.iter().all(|x| {
        b_top.iter().all(|y| {
            let v = m2.mul_all(&[x, &e1, y]);
            c.contains(&v) && e_b_on(&v) == vector::scale(&lambda, &m2.mul(x, y))
        })
    });
    let e_b_of_e1 = e_b_on(&e1) == m2.scalar(&lambda);

    let a_top = Subspace::span(f, m2.dim(), a.basis().iter().map(|x| t.m1_to_m2(x)));
    let e_a_up: Vec<Vector> = c_basis.iter().map(|x| t.e_m1_up(x)).collect();
    let e_a_into_a = e_a_up.iter().all(|v| a_top.contains(v));
    let e_a_images: Vec<Vector> = c_basis.iter().map(|x| a.coordinates(&t.e_m1().apply(x)).unwrap_or_else(|| vector::zeros(f, a.dim()))).collect();
    let e_a = LinMap::from_images(f, a.dim(), &e_a_images);
    let e_a_identity_on_a = a_top.basis().iter().all(|x| t.e_m1_up(x) == *x);
    let e_a_bimodule = c_basis.iter().all(|x| {
        a_top.basis().iter().all(|y| t.e_m1_up(&m2.mul(y, x)) == m2.mul(y, &t.e_m1_up(x)) && t.e_m1_up(&m2.mul(x, y)) == m2.mul(&t.e_m1_up(x), y))
    });

    let f_val = |x: &Vector| t.f.apply(x);
    let lam_f = |x: &Vector| vector::scale(&lambda, &f_val(x));
    let markov_a = a_top.basis().iter().all(|x| f_val(&m2.mul(x, e2)) == lam_f(x) && f_val(&m2.mul(e2, x)) == lam_f(x));
    let markov_b = b_top.iter().all(|x| f_val(&m2.mul(x, &e1)) == lam_f(x) && f_val(&m2.mul(&e1, x)) == lam_f(x));
    let f_invariant_e_m1 = c_basis.iter().all(|x| f_val(&t.e_m1_up(x)) == f_val(x));
    let f_invariant_e_b = c_basis.iter().all(|x| f_val(&e_b_on(x)) == f_val(x));

    let report = ExpectationsReport {
        e_b_identity_on_b,
        e_b_bimodule,
        e_b_jones,
        e_b_of_e1,
        e_a_into_a,
        e_a_identity_on_a,
        e_a_bimodule,
        markov_a,
        markov_b,
        f_invariant_e_m1,
        f_invariant_e_b,
    };
    Ok(Expectations { e_b, e_a, report })
}

/// Gram matrix `[F(c_i c_j)]` on the basis of `C`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct FaithfulReport {
    pub dim_c: usize,
    pub gram_rank: usize,
}

impl FaithfulReport {
    pub fn faithful(&self) -> bool {
        self.gram_rank == self.dim_c
    }
}

pub const SKIP_F_NOT_SCALAR: &str = "F not scalar-valued on C (base not irreducible)";

pub fn verify_f_faithful(t: &TowerData, c: &Subspace) -> Result<FaithfulReport, &'static str> {
    let m2 = t.m2();
    let m = t.m();
    let basis = c.basis();
    if basis.iter().any(|x| m.as_scalar(&t.f.apply(x)).is_none()) {
        return Err(SKIP_F_NOT_SCALAR);
    }
    let gram = Matrix::from_fn(m2.field(), basis.len(), basis.len(), |i, j| {
        m.as_scalar(&t.f.apply(&m2.mul(&basis[i], &basis[j]))).expect("F(C) ⊆ k")
    });
    Ok(FaithfulReport { dim_c: basis.len(), gram_rank: gram.rank() })
}

/// Nakayama automorphisms `q` of `F` on `C`, `q_A` of `E_M|_A`, `q_B` of
/// `E_{M₁}|_B`, and the relations between them.
#[derive(Clone, Debug)]
pub struct NakayamaRelations {
    pub q: Nakayama,
    pub q_a: Nakayama,
    pub q_b: Nakayama,
    pub q_restricts_to_q_a: bool,
    pub q_restricts_to_q_b: bool,
    /// `E_{M₁}∘q = q_A∘E_{M₁}` on `C`.
    pub diagram_commutes: bool,
    pub q_fixes_e1: bool,
    pub q_fixes_e2: bool,
    pub q_is_identity: bool,
}

impl NakayamaRelations {
    pub fn holds(&self) -> bool {
        self.q_restricts_to_q_a && self.q_restricts_to_q_b && self.diagram_commutes && self.q_fixes_e1 && self.q_fixes_e2
    }
}

pub fn nakayama_relations(t: &TowerData, d2: &DepthTwoData) -> Result<NakayamaRelations, String> {
    let faithful = verify_f_faithful(t, &d2.cents.c).map_err(str::to_string)?;
    if !faithful.faithful() {
        return Err("F is not faithful on C".into());
    }
    let m2 = t.m2();
    let m1 = t.m1();
    let (a, b, c) = (&d2.cents.a, &d2.cents.b, &d2.cents.c);
    let f_fn = |v: &[Scalar]| t.f.apply(v);
    let q = nakayama_map(m2, f_fn, c, &c.basis()).map_err(|e| format!("q on C: {e}"))?;
    let q_a = nakayama_map(m1, |v: &[Scalar]| t.e_m().apply(v), a, &a.basis()).map_err(|e| format!("q_A: {e}"))?;
    let q_b = nakayama_map(m2, |v: &[Scalar]| t.e_m1().apply(v), b, &b.basis()).map_err(|e| format!("q_B: {e}"))?;
    let q_on = |x: &Vector| q.apply(x).expect("in C");
    let q_restricts_to_q_a = a.basis().iter().all(|x| q_on(&t.m1_to_m2(x)) == t.m1_to_m2(&q_a.apply(x).expect("in A")));
    let q_restricts_to_q_b = b.basis().iter().all(|x| q_on(x) == q_b.apply(x).expect("in B"));
    let diagram_commutes = c.basis().iter().all(|x| {
        let lhs = t.e_m1().apply(&q_on(x));
        let ex = t.e_m1().apply(x);
        a.contains(&ex) && q_a.apply(&ex).is_some_and(|r| r == lhs)
    });
    let e1 = t.e1_top();
    let q_fixes_e1 = c.contains(&e1) && q_on(&e1) == e1;
    let q_fixes_e2 = c.contains(t.e2()) && q_on(t.e2()) == *t.e2();
    let q_is_identity = q.is_identity();
    Ok(NakayamaRelations { q, q_a, q_b, q_restricts_to_q_a, q_restricts_to_q_b, diagram_commutes, q_fixes_e1, q_fixes_e2, q_is_identity })
}

#[cfg(test)]
mod tests;
