use crate::algebra::{tensor_sparse, Algebra};
use crate::exact::echelon::{sparse_collect, SparseVec};
use crate::exact::{vector, Field, Matrix, Scalar, Vector};

use super::FrobeniusError;

/// A separability element of `E' = F'[x]/(p)` over `F'`, with its checks.
#[derive(Clone, Debug)]
pub struct SeparabilityElement {
    /// `E'` on the power basis `1, α, ..., α^{n-1}`.
    pub algebra: Algebra,
    /// `e` in `E' ⊗ E'`, indexed `i * n + j`.
    pub tensor: SparseVec,
    /// `μ(e) = 1`.
    pub multiplication_is_one: bool,
    /// `m e = e m` for every basis element `m`.
    pub central: bool,
}

/// `F'[x]/(p)` for `p(x) = x^n - Σ_{i<n} c_i x^i`.
pub fn simple_extension(field: Field, coeffs: &[Scalar]) -> Algebra {
    let n = coeffs.len();
    let reduce = |mut poly: Vector| -> Vector {
        // x^k = Σ c_i x^{k-n+i} for k >= n
        for k in (n..poly.len()).rev() {
            let top = poly[k].clone();
            if top.is_zero() {
                continue;
            }
            for (i, c) in coeffs.iter().enumerate() {
                let t = k - n + i;
                poly[t] = &poly[t] + &(&top * c);
            }
            poly[k] = field.zero();
        }
        poly.truncate(n);
        poly
    };
    Algebra::from_products(
        field,
        n,
        |i, j| {
            let mut poly = vector::zeros(field, 2 * n);
            poly[i + j] = field.one();
            crate::exact::echelon::sparse_from_dense(&reduce(poly))
        },
        vector::unit(field, n, 0),
    )
}

fn invert(alg: &Algebra, u: &[Scalar]) -> Option<Vector> {
    let l: Matrix = alg.left_mult(u);
    l.solve(alg.one()).ok()?.unique()
}

/// `Σ_i α^i ⊗ (Σ_{j≤i} c_j α^j) / (p'(α) α^{i+1})`.
///
/// Errors when `p'(α)` or `α` is not invertible in `F'[x]/(p)`.
pub fn separability_element_field(field: Field, coeffs: &[Scalar]) -> Result<SeparabilityElement, FrobeniusError> {
    let n = coeffs.len();
    if n == 0 {
        return Err(FrobeniusError::Inseparable("polynomial must have degree at least 1".into()));
    }
    let alg = simple_extension(field, coeffs);
    let power = |k: usize| -> Vector {
        let mut acc = alg.one().clone();
        let alpha = if n == 1 { alg.scalar(&coeffs[0]) } else { alg.basis(1) };
        for _ in 0..k {
            acc = alg.mul(&acc, &alpha);
        }
        acc
    };
    // p'(α) = n α^{n-1} - Σ i c_i α^{i-1}
    let mut dp = vector::scale(&field.from_i64(n as i64), &power(n - 1));
    for (i, c) in coeffs.iter().enumerate().skip(1) {
        let term = vector::scale(&(&field.from_i64(i as i64) * c), &power(i - 1));
        dp = vector::sub(&dp, &term);
    }
    let dp_inv = invert(&alg, &dp).ok_or_else(|| FrobeniusError::Inseparable("p'(α) is not invertible".into()))?;
    let alpha_inv = invert(&alg, &power(1)).ok_or_else(|| FrobeniusError::Inseparable("α is not invertible (p(0) = 0)".into()))?;
    let mut entries = Vec::new();
    let mut partial = alg.zero();
    let mut alpha_inv_pow = alpha_inv.clone();
    for i in 0..n {
        partial = vector::add(&partial, &vector::scale(&coeffs[i], &power(i)));
        let w = alg.mul(&alg.mul(&partial, &dp_inv), &alpha_inv_pow);
        entries.extend(tensor_sparse(n, &power(i), &w));
        alpha_inv_pow = alg.mul(&alpha_inv_pow, &alpha_inv);
    }
    let tensor = sparse_collect(field, entries);

    let mut mu = alg.zero();
    for (idx, c) in &tensor {
        for (k, x) in alg.basis_product(idx / n, idx % n) {
            mu[*k] = &mu[*k] + &(c * x);
        }
    }
    let multiplication_is_one = mu == *alg.one();
    let central = (0..n).all(|m| {
        let left = sparse_collect(
            field,
            tensor.iter().flat_map(|(idx, c)| {
                let (a, b) = (idx / n, idx % n);
                alg.basis_product(m, a).iter().map(move |(k, x)| (k * n + b, c * x)).collect::<Vec<_>>()
            }),
        );
        let right = sparse_collect(
            field,
            tensor.iter().flat_map(|(idx, c)| {
                let (a, b) = (idx / n, idx % n);
                alg.basis_product(b, m).iter().map(move |(k, x)| (a * n + k, c * x)).collect::<Vec<_>>()
            }),
        );
        left == right
    });
    Ok(SeparabilityElement { algebra: alg, tensor, multiplication_is_one, central })
}
