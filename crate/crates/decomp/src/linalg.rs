//! Small dense helpers: operator norms of symmetric residuals and Gram–Schmidt completion.

use nalgebra::{DMatrix, DVector};

/// `max |eigenvalue|` of a symmetric matrix.
pub fn symmetric_op_norm(m: &DMatrix<f64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    let sym = (m + m.transpose()) * 0.5;
    sym.symmetric_eigenvalues()
        .iter()
        .fold(0.0, |acc, e| acc.max(e.abs()))
}

/// `|| sum_j w_j x_j x_j^T - Id ||_op`.
pub fn identity_residual<'a, I>(dim: usize, terms: I) -> f64
where
    I: IntoIterator<Item = (f64, &'a DVector<f64>)>,
{
    let mut acc = -DMatrix::<f64>::identity(dim, dim);
    for (w, x) in terms {
        acc.ger(w, x, x, 1.0);
    }
    symmetric_op_norm(&acc)
}

/// Remove the components of `v` along each (orthonormal) row in `rows`, twice.
fn orthogonalize(v: &mut DVector<f64>, rows: &[DVector<f64>]) {
    for _ in 0..2 {
        for r in rows {
            let c = r.dot(v);
            v.axpy(-c, r, 1.0);
        }
    }
}

/// Orthonormalize `vectors` in order. Returns the index of the first vector
/// whose residual norm falls below `pivot_tol` relative to its original norm.
pub fn orthonormalize(vectors: &[DVector<f64>], pivot_tol: f64) -> Result<Vec<DVector<f64>>, usize> {
    let mut out: Vec<DVector<f64>> = Vec::with_capacity(vectors.len());
    for (i, v) in vectors.iter().enumerate() {
        let scale = v.norm();
        let mut w = v.clone();
        orthogonalize(&mut w, &out);
        let n = w.norm();
        if !(scale > 0.0) || n < pivot_tol * scale {
            return Err(i);
        }
        out.push(w / n);
    }
    Ok(out)
}

/// Extend the orthonormal set `rows` to an orthonormal basis of `R^dim` using the
/// canonical vectors `e_1, ..., e_dim` as seeds, in order, skipping seeds whose
/// residual falls below `pivot_tol`.
pub fn complete_basis(rows: &[DVector<f64>], dim: usize, pivot_tol: f64) -> Vec<DVector<f64>> {
    let mut basis = rows.to_vec();
    let mut added = Vec::new();
    for i in 0..dim {
        if basis.len() == dim {
            break;
        }
        let mut seed = DVector::zeros(dim);
        seed[i] = 1.0;
        orthogonalize(&mut seed, &basis);
        let n = seed.norm();
        if n < pivot_tol {
            continue;
        }
        let unit = seed / n;
        basis.push(unit.clone());
        added.push(unit);
    }
    added
}

/// Flip `v` so that its first coordinate with `|v_i| > tiny` is positive.
pub fn canonical_sign(v: &mut DVector<f64>) {
    let tiny = 1e-12 * v.amax().max(f64::MIN_POSITIVE);
    if let Some(first) = v.iter().find(|x| x.abs() > tiny) {
        if *first < 0.0 {
            v.neg_mut();
        }
    }
}
