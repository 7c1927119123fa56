//! Hopf structure on `B` (and dually on `A`) from a non-degenerate pairing
//! `⟨a, b⟩`, either computed from a depth-two tower as
//! `⟨a, b⟩ = λ⁻² F(a e₂ e₁ b)` or supplied abstractly.
//!
//! `Δ(b) = Σ_ij ⟨a_i a_j, b⟩ bⁱ ⊗ bʲ` with `{bⁱ}` dual to `{a_i}`, and
//! `ε(b) = ⟨1, b⟩`. Tensors in `H ⊗ H` are indexed `p * dim + q`.

mod tower_pairing;

pub use tower_pairing::{compute_pairing, tower_antipode, tower_hopf, verify_tower_identities, TowerHopfReport, TowerPairing};

use serde::Serialize;
use serde_json::json;

use crate::algebra::{Algebra, LinMap};
use crate::check::{coords, Outcome};
use crate::exact::{echelon, vector, Field, Matrix, Scalar, Solution, Subspace, Vector};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HopfError {
    #[error("pairing matrix is singular: the pairing is degenerate")]
    PairingSingular,
    #[error("pairing matrix has shape {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    Shape { rows: usize, cols: usize, expected_rows: usize, expected_cols: usize },
    #[error("supplied antipode has the wrong shape")]
    AntipodeShape,
}

/// `A`, `B` and `P[i][j] = ⟨a_i, b_j⟩`.
#[derive(Clone, Debug)]
pub struct PairingData {
    pub a: Algebra,
    pub b: Algebra,
    pub p: Matrix,
    pub p_inv: Matrix,
}

impl PairingData {
    pub fn new(a: Algebra, b: Algebra, p: Matrix) -> Result<PairingData, HopfError> {
        if p.rows() != a.dim() || p.cols() != b.dim() {
            return Err(HopfError::Shape { rows: p.rows(), cols: p.cols(), expected_rows: a.dim(), expected_cols: b.dim() });
        }
        let p_inv = p.inverse().map_err(|_| HopfError::PairingSingular)?;
        Ok(PairingData { a, b, p, p_inv })
    }

    pub fn field(&self) -> Field {
        self.a.field()
    }

    /// `xᵀ P y`.
    pub fn pair(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        vector::dot(x, &self.p.mul_vec(y), self.field())
    }

    /// `{bʲ}` with `⟨a_i, bʲ⟩ = δ_ij`: the columns of `P⁻¹`.
    pub fn dual_basis_b(&self) -> Vec<Vector> {
        self.p_inv.columns()
    }

    /// `{aⁱ}` with `⟨aⁱ, b_j⟩ = δ_ij`: the rows of `P⁻¹`.
    pub fn dual_basis_a(&self) -> Vec<Vector> {
        self.p_inv.row_vectors()
    }
}

/// A bialgebra with optional antipode, all maps on the canonical basis.
#[derive(Clone, Debug)]
pub struct HopfStructure {
    pub algebra: Algebra,
    /// `H -> H ⊗ H`.
    pub delta: LinMap,
    /// `H -> k`.
    pub eps: LinMap,
    pub antipode: Option<LinMap>,
}

impl HopfStructure {
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn delta_of(&self, x: &[Scalar]) -> Vector {
        self.delta.apply(x)
    }

    pub fn eps_of(&self, x: &[Scalar]) -> Scalar {
        self.eps.apply(x)[0].clone()
    }

    /// `Σ c_pq (b_p, b_q)` for the nonzero terms of `Δ(x)`.
    pub fn sweedler(&self, x: &[Scalar]) -> Vec<(Scalar, usize, usize)> {
        let d = self.dim();
        self.delta_of(x)
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(idx, c)| (c, idx / d, idx % d))
            .collect()
    }
}

/// `Δ` and `ε` on `B` from the pairing, using `a_basis` (elements of `A` in
/// canonical coordinates) as the basis of `A`.
pub fn comultiplication_in_basis(p: &PairingData, a_basis: &[Vector]) -> Result<(LinMap, LinMap), HopfError> {
    let f = p.field();
    let db = p.b.dim();
    let pp = Matrix::from_fn(f, a_basis.len(), db, |i, k| p.pair(&a_basis[i], &p.b.basis(k)));
    let pinv = pp.inverse().map_err(|_| HopfError::PairingSingular)?;
    let dual = pinv.columns();
    let products: Vec<Vec<Vector>> = a_basis.iter().map(|x| a_basis.iter().map(|y| p.a.mul(x, y)).collect()).collect();
    let delta = LinMap::from_fn(f, db, db * db, |l| {
        let bl = p.b.basis(l);
        let mut out = vector::zeros(f, db * db);
        for (i, row) in products.iter().enumerate() {
            for (j, prod) in row.iter().enumerate() {
                let c = p.pair(prod, &bl);
                if c.is_zero() {
                    continue;
                }
                add_tensor(&mut out, &c, &dual[i], &dual[j]);
            }
        }
        out
    });
    let eps = LinMap::from_fn(f, db, 1, |l| vec![p.pair(p.a.one(), &p.b.basis(l))]);
    Ok((delta, eps))
}

pub fn comultiplication(p: &PairingData) -> (LinMap, LinMap) {
    let basis: Vec<Vector> = (0..p.a.dim()).map(|i| p.a.basis(i)).collect();
    comultiplication_in_basis(p, &basis).expect("P is invertible")
}

/// `Δ_A(a) = Σ_ij ⟨a, b_i b_j⟩ aⁱ ⊗ aʲ`, `ε_A(a) = ⟨a, 1⟩`, `S_A = (P S_B P⁻¹)ᵀ`.
pub fn dualize(p: &PairingData, hb: &HopfStructure) -> HopfStructure {
    let f = p.field();
    let da = p.a.dim();
    let dual = p.dual_basis_a();
    let products: Vec<Vec<Vector>> = (0..p.b.dim()).map(|i| (0..p.b.dim()).map(|j| p.b.mul(&p.b.basis(i), &p.b.basis(j))).collect()).collect();
    let delta = LinMap::from_fn(f, da, da * da, |l| {
        let al = p.a.basis(l);
        let mut out = vector::zeros(f, da * da);
        for (i, row) in products.iter().enumerate() {
            for (j, prod) in row.iter().enumerate() {
                let c = p.pair(&al, prod);
                if !c.is_zero() {
                    add_tensor(&mut out, &c, &dual[i], &dual[j]);
                }
            }
        }
        out
    });
    let eps = LinMap::from_fn(f, da, 1, |l| vec![p.pair(&p.a.basis(l), p.b.one())]);
    let antipode = hb.antipode.as_ref().map(|s| {
        let m = p.p.mul(s.matrix()).expect("square").mul(&p.p_inv).expect("square");
        LinMap::from_matrix(m.transpose())
    });
    HopfStructure { algebra: p.a.clone(), delta, eps, antipode }
}

fn add_tensor(out: &mut [Scalar], c: &Scalar, x: &[Scalar], y: &[Scalar]) {
    let d = y.len();
    for (p, xp) in x.iter().enumerate() {
        if xp.is_zero() {
            continue;
        }
        let cx = c * xp;
        for (q, yq) in y.iter().enumerate() {
            if !yq.is_zero() {
                out[p * d + q] = &out[p * d + q] + &(&cx * yq);
            }
        }
    }
}

/// First `(i, j, l)` with `⟨a_i a_j, b_l⟩ != ⟨a_i, b_l(1)⟩⟨a_j, b_l(2)⟩`.
pub fn coalgebra_pairing_failure(p: &PairingData, delta: &LinMap) -> Option<serde_json::Value> {
    let db = p.b.dim();
    let da = p.a.dim();
    for l in 0..db {
        let dl = delta.image(l);
        for i in 0..da {
            for j in 0..da {
                let lhs = p.pair(&p.a.mul(&p.a.basis(i), &p.a.basis(j)), &p.b.basis(l));
                let mut rhs = p.field().zero();
                for (idx, c) in dl.iter().enumerate() {
                    if !c.is_zero() {
                        rhs = &rhs + &(&(c * p.p.get(i, idx / db)) * p.p.get(j, idx % db));
                    }
                }
                if lhs != rhs {
                    return Some(json!({"a": [i, j], "b": l, "lhs": lhs.to_string(), "rhs": rhs.to_string()}));
                }
            }
        }
    }
    None
}

/// First `(l, i, j)` with `⟨a_l, b_i b_j⟩ != ⟨a_l(1), b_i⟩⟨a_l(2), b_j⟩`.
pub fn algebra_pairing_failure(p: &PairingData, delta_a: &LinMap) -> Option<serde_json::Value> {
    let da = p.a.dim();
    let db = p.b.dim();
    for l in 0..da {
        let dl = delta_a.image(l);
        for i in 0..db {
            for j in 0..db {
                let lhs = p.pair(&p.a.basis(l), &p.b.mul(&p.b.basis(i), &p.b.basis(j)));
                let mut rhs = p.field().zero();
                for (idx, c) in dl.iter().enumerate() {
                    if !c.is_zero() {
                        rhs = &rhs + &(&(c * p.p.get(idx / da, i)) * p.p.get(idx % da, j));
                    }
                }
                if lhs != rhs {
                    return Some(json!({"a": l, "b": [i, j], "lhs": lhs.to_string(), "rhs": rhs.to_string()}));
                }
            }
        }
    }
    None
}

/// Solves `S(b₍₁₎)b₍₂₎ = ε(b)1 = b₍₁₎S(b₍₂₎)` for `S`; `None` if inconsistent.
pub fn solve_antipode(h: &HopfStructure) -> Option<LinMap> {
    let f = h.field();
    let d = h.dim();
    let alg = &h.algebra;
    // unknown S_rp (coefficient of b_r in S(b_p)) at r * d + p
    let mut rows: Vec<Vector> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    for l in 0..d {
        let terms = h.sweedler(&alg.basis(l));
        let target = vector::scale(&h.eps_of(&alg.basis(l)), alg.one());
        let mut left = vec![vector::zeros(f, d * d); d];
        let mut right = vec![vector::zeros(f, d * d); d];
        for (c, p, q) in &terms {
            for r in 0..d {
                for (k, x) in alg.basis_product(r, *q) {
                    left[*k][r * d + p] = &left[*k][r * d + p] + &(c * x);
                }
                for (k, x) in alg.basis_product(*p, r) {
                    right[*k][r * d + q] = &right[*k][r * d + q] + &(c * x);
                }
            }
        }
        for k in 0..d {
            rows.push(left[k].clone());
            rhs.push(target[k].clone());
            rows.push(right[k].clone());
            rhs.push(target[k].clone());
        }
    }
    match Matrix::from_rows(f, d * d, &rows).solve(&rhs).ok()? {
        Solution::Inconsistent => None,
        Solution::Consistent { particular, .. } => Some(LinMap::from_matrix(Matrix::from_fn(f, d, d, |r, p| particular[r * d + p].clone()))),
    }
}

/// Every Hopf-algebra axiom, checked on all basis tuples.
#[derive(Clone, Debug, Serialize)]
pub struct HopfAxioms {
    pub coassociativity: Outcome,
    pub counit: Outcome,
    pub delta_multiplicative: Outcome,
    pub delta_unital: Outcome,
    pub eps_multiplicative: Outcome,
    pub antipode_left: Outcome,
    pub antipode_right: Outcome,
    pub antipode_anti_coalgebra: Outcome,
    pub antipode_bijective: Outcome,
}

impl HopfAxioms {
    pub fn entries(&self) -> Vec<(&'static str, &Outcome)> {
        vec![
            ("coassociativity", &self.coassociativity),
            ("counit", &self.counit),
            ("delta-multiplicative", &self.delta_multiplicative),
            ("delta-unital", &self.delta_unital),
            ("eps-multiplicative", &self.eps_multiplicative),
            ("antipode-left", &self.antipode_left),
            ("antipode-right", &self.antipode_right),
            ("antipode-anti-coalgebra", &self.antipode_anti_coalgebra),
            ("antipode-bijective", &self.antipode_bijective),
        ]
    }

    pub fn all_pass(&self) -> bool {
        self.entries().iter().all(|(_, o)| o.is_pass())
    }
}

/// `(f ⊗ g)(t)` for `t ∈ X ⊗ Y` with `dim Y = dy`.
fn tensor_apply(t: &[Scalar], dy: usize, f: impl Fn(usize) -> Vector, g: impl Fn(usize) -> Vector, field: Field) -> Vector {
    let mut out: Option<Vector> = None;
    for (idx, c) in t.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (x, y) = (f(idx / dy), g(idx % dy));
        let acc = out.get_or_insert_with(|| vector::zeros(field, x.len() * y.len()));
        add_tensor(acc, c, &x, &y);
    }
    out.unwrap_or_default()
}

fn zero_if_empty(v: Vector, field: Field, n: usize) -> Vector {
    if v.is_empty() {
        vector::zeros(field, n)
    } else {
        v
    }
}

/// `(x ⊗ y)(x' ⊗ y') = xx' ⊗ yy'`.
fn tensor_mul(alg: &Algebra, s: &[Scalar], t: &[Scalar]) -> Vector {
    let f = alg.field();
    let d = alg.dim();
    let mut out = vector::zeros(f, d * d);
    for (i, a) in s.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in t.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let ab = a * b;
            let (p, q, r, s2) = (i / d, i % d, j / d, j % d);
            for (k, x) in alg.basis_product(p, r) {
                for (l, y) in alg.basis_product(q, s2) {
                    out[k * d + l] = &out[k * d + l] + &(&ab * &(x * y));
                }
            }
        }
    }
    out
}

pub fn verify_hopf_axioms(h: &HopfStructure) -> HopfAxioms {
    let f = h.field();
    let d = h.dim();
    let alg = &h.algebra;
    let basis: Vec<Vector> = (0..d).map(|i| alg.basis(i)).collect();
    let delta_img: Vec<Vector> = (0..d).map(|i| h.delta.image(i)).collect();
    let eps: Vec<Scalar> = (0..d).map(|i| h.eps_of(&basis[i])).collect();
    let unit_vec = |i: usize| vector::unit(f, d, i);

    let coassociativity = Outcome::from_failure((0..d).find_map(|l| {
        let dl = &delta_img[l];
        let left = zero_if_empty(tensor_apply(dl, d, |p| delta_img[p].clone(), unit_vec, f), f, d * d * d);
        let right = zero_if_empty(tensor_apply(dl, d, unit_vec, |q| delta_img[q].clone(), f), f, d * d * d);
        (left != right).then(|| {
            let k = (0..left.len()).find(|&k| left[k] != right[k]).expect("differ");
            json!({"basis": l, "component": [k / (d * d), (k / d) % d, k % d], "lhs": left[k].to_string(), "rhs": right[k].to_string()})
        })
    }));

    let counit = Outcome::from_failure((0..d).find_map(|l| {
        let mut left = vector::zeros(f, d);
        let mut right = vector::zeros(f, d);
        for (idx, c) in delta_img[l].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (p, q) = (idx / d, idx % d);
            left[q] = &left[q] + &(c * &eps[p]);
            right[p] = &right[p] + &(c * &eps[q]);
        }
        (left != basis[l] || right != basis[l]).then(|| json!({"basis": l, "left": coords(&left), "right": coords(&right)}))
    }));

    let delta_multiplicative = Outcome::from_failure((0..d).find_map(|i| {
        (0..d).find_map(|j| {
            let lhs = h.delta_of(&alg.mul(&basis[i], &basis[j]));
            let rhs = tensor_mul(alg, &delta_img[i], &delta_img[j]);
            (lhs != rhs).then(|| json!({"pair": [i, j], "lhs": coords(&lhs), "rhs": coords(&rhs)}))
        })
    }));

    let one_one = echelon::dense_from_sparse(f, d * d, &crate::algebra::tensor_sparse(d, alg.one(), alg.one()));
    let delta_one = h.delta_of(alg.one());
    let delta_unital = Outcome::from_bool(delta_one == one_one, || json!({"delta_of_one": coords(&delta_one)}));

    let eps_multiplicative = Outcome::from_failure(
        (h.eps_of(alg.one()) != f.one()).then(|| json!({"eps_of_one": h.eps_of(alg.one()).to_string()})).or_else(|| {
            (0..d).find_map(|i| {
                (0..d).find_map(|j| {
                    let lhs = h.eps_of(&alg.mul(&basis[i], &basis[j]));
                    let rhs = &eps[i] * &eps[j];
                    (lhs != rhs).then(|| json!({"pair": [i, j], "lhs": lhs.to_string(), "rhs": rhs.to_string()}))
                })
            })
        }),
    );

    let (antipode_left, antipode_right, antipode_anti_coalgebra, antipode_bijective) = match &h.antipode {
        None => {
            let s = || Outcome::skipped("no antipode supplied");
            (s(), s(), s(), s())
        }
        Some(s) => {
            let s_img: Vec<Vector> = (0..d).map(|i| s.image(i)).collect();
            let conv = |left_side: bool| {
                Outcome::from_failure((0..d).find_map(|l| {
                    let mut acc = alg.zero();
                    for (c, p, q) in h.sweedler(&basis[l]) {
                        let term = if left_side { alg.mul(&s_img[p], &basis[q]) } else { alg.mul(&basis[p], &s_img[q]) };
                        acc = vector::add(&acc, &vector::scale(&c, &term));
                    }
                    let want = vector::scale(&eps[l], alg.one());
                    (acc != want).then(|| json!({"basis": l, "lhs": coords(&acc), "rhs": coords(&want)}))
                }))
            };
            // Δ(S(b)) = S(b₍₂₎) ⊗ S(b₍₁₎) and ε∘S = ε
            let anti = Outcome::from_failure((0..d).find_map(|l| {
                let lhs = h.delta_of(&s_img[l]);
                let flipped = tensor_apply(&delta_img[l], d, |p| s_img[p].clone(), |q| s_img[q].clone(), f);
                let flipped = zero_if_empty(flipped, f, d * d);
                let rhs: Vector = (0..d * d).map(|idx| flipped[(idx % d) * d + idx / d].clone()).collect();
                let eps_ok = h.eps_of(&s_img[l]) == eps[l];
                (lhs != rhs || !eps_ok).then(|| json!({"basis": l, "lhs": coords(&lhs), "rhs": coords(&rhs), "counit_preserved": eps_ok}))
            }));
            let bij = Outcome::from_bool(s.is_bijective(), || json!({"rank": s.rank()}));
            (conv(true), conv(false), anti, bij)
        }
    };

    HopfAxioms {
        coassociativity,
        counit,
        delta_multiplicative,
        delta_unital,
        eps_multiplicative,
        antipode_left,
        antipode_right,
        antipode_anti_coalgebra,
        antipode_bijective,
    }
}

/// Left integrals `{Λ : bΛ = ε(b)Λ}`.
pub fn left_integrals(h: &HopfStructure) -> Subspace {
    let f = h.field();
    let d = h.dim();
    let alg = &h.algebra;
    let mut rows = crate::exact::Echelon::new(f, d);
    for i in 0..d {
        let b = alg.basis(i);
        let e = h.eps_of(&b);
        // (L_b - ε(b) I) Λ = 0, one row per output coordinate
        let l = alg.left_mult(&b);
        for k in 0..d {
            let row: Vector = (0..d).map(|j| if k == j { l.get(k, j) - &e } else { l.get(k, j).clone() }).collect();
            rows.insert(&row);
        }
    }
    Subspace::span(f, d, echelon::null_space(&rows.finish()))
}

/// How the abstract path obtains an antipode.
#[derive(Clone, Debug)]
pub enum AntipodeMode {
    Supplied(Matrix),
    Solve,
    Skip,
}

/// Axioms plus the pairing identities and basis independence of `Δ`.
#[derive(Clone, Debug, Serialize)]
pub struct AbstractReport {
    pub axioms: HopfAxioms,
    pub coalgebra_pairing: Outcome,
    pub algebra_pairing: Outcome,
    pub basis_independence: Outcome,
    pub dual_axioms: Option<HopfAxioms>,
}

impl AbstractReport {
    pub fn entries(&self) -> Vec<(String, &Outcome)> {
        let mut out: Vec<(String, &Outcome)> = self.axioms.entries().into_iter().map(|(k, v)| (format!("b.{k}"), v)).collect();
        out.push(("coalgebra-pairing".into(), &self.coalgebra_pairing));
        out.push(("algebra-pairing".into(), &self.algebra_pairing));
        out.push(("basis-independence".into(), &self.basis_independence));
        if let Some(d) = &self.dual_axioms {
            out.extend(d.entries().into_iter().map(|(k, v)| (format!("a.{k}"), v)));
        }
        out
    }
}

/// `Δ` recomputed from the reversed, rescaled basis of `A` agrees with `Δ`.
pub fn basis_independence(p: &PairingData, delta: &LinMap) -> Outcome {
    let f = p.field();
    let da = p.a.dim();
    let scale = if f.characteristic() == 2 { f.one() } else { f.from_i64(2) };
    let changed: Vec<Vector> = (0..da).rev().map(|i| vector::scale(&scale, &p.a.basis(i))).collect();
    match comultiplication_in_basis(p, &changed) {
        Err(_) => Outcome::Fail { witness: json!({"reason": "changed basis gives a singular pairing"}) },
        Ok((d2, _)) => Outcome::from_failure((0..p.b.dim()).find(|&l| d2.image(l) != delta.image(l)).map(|l| json!({"basis": l}))),
    }
}

/// The abstract oracle path: `Δ`, `ε` from `P`, antipode per `mode`, and a
/// full verification of `B` and of its dual `A`.
pub fn bialgebra_from_abstract_pairing(
    a: Algebra,
    b: Algebra,
    p: Matrix,
    mode: AntipodeMode,
) -> Result<(PairingData, HopfStructure, AbstractReport), HopfError> {
    let data = PairingData::new(a, b, p)?;
    let (delta, eps) = comultiplication(&data);
    let mut hb = HopfStructure { algebra: data.b.clone(), delta, eps, antipode: None };
    hb.antipode = match mode {
        AntipodeMode::Skip => None,
        AntipodeMode::Solve => solve_antipode(&hb),
        AntipodeMode::Supplied(m) => {
            if m.rows() != data.b.dim() || m.cols() != data.b.dim() {
                return Err(HopfError::AntipodeShape);
            }
            Some(LinMap::from_matrix(m))
        }
    };
    let axioms = verify_hopf_axioms(&hb);
    let coalgebra_pairing = Outcome::from_failure(coalgebra_pairing_failure(&data, &hb.delta));
    let basis_independence = basis_independence(&data, &hb.delta);
    let ha = dualize(&data, &hb);
    let algebra_pairing = Outcome::from_failure(algebra_pairing_failure(&data, &ha.delta));
    let dual_axioms = Some(verify_hopf_axioms(&ha));
    let report = AbstractReport { axioms, coalgebra_pairing, algebra_pairing, basis_independence, dual_axioms };
    Ok((data, hb, report))
}

/// Reproducible dump of a Hopf structure.
#[derive(Clone, Debug, Serialize)]
pub struct HopfDump {
    pub dim: usize,
    pub unit: Vec<String>,
    pub structure: Vec<(usize, usize, usize, String)>,
    /// Row `l` lists `Δ(b_l)` over `p * dim + q`.
    pub delta: Vec<Vec<String>>,
    pub eps: Vec<String>,
    /// Column `p` of the matrix is `S(b_p)`.
    pub antipode: Option<Vec<Vec<String>>>,
    pub left_integrals: Vec<Vec<String>>,
    pub pairing: Vec<Vec<String>>,
}

pub fn dump(h: &HopfStructure, p: &PairingData) -> HopfDump {
    HopfDump {
        dim: h.dim(),
        unit: vector::to_strings(h.algebra.one()),
        structure: h.algebra.constants().into_iter().map(|(i, j, k, c)| (i, j, k, c.to_string())).collect(),
        delta: h.delta.images().iter().map(|v| vector::to_strings(v)).collect(),
        eps: vector::to_strings(h.eps.matrix().row(0)),
        antipode: h.antipode.as_ref().map(|s| s.matrix().to_string_rows()),
        left_integrals: left_integrals(h).basis().iter().map(|v| vector::to_strings(v)).collect(),
        pairing: p.p.to_string_rows(),
    }
}

#[cfg(test)]
mod tests;
