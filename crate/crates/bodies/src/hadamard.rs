use nalgebra::DMatrix;
use slicebound_decomp::JohnDecomposition;

use crate::error::{BodiesError, Result};

/// `H_1 = [1]`, `H_2q = [[H_q, H_q], [H_q, -H_q]]`.
pub fn sylvester_hadamard(order: usize) -> Result<DMatrix<f64>> {
    if !order.is_power_of_two() {
        return Err(BodiesError::UnsupportedOrder(order));
    }
    let mut h = DMatrix::from_element(1, 1, 1.0);
    while h.nrows() < order {
        let q = h.nrows();
        h = DMatrix::from_fn(2 * q, 2 * q, |i, j| {
            let sign = if i >= q && j >= q { -1.0 } else { 1.0 };
            sign * h[(i % q, j % q)]
        });
    }
    Ok(h)
}

fn check_range(k: usize, n: usize) -> Result<()> {
    if k == 0 || !k.is_power_of_two() || n < k || n > 2 * k {
        return Err(BodiesError::HadamardRange { k, n });
    }
    Ok(())
}

/// The `2k` columns of the upper `n x 2k` block of `H_2k`, scaled to unit length,
/// with weights `n / 2k`. Not centered.
pub fn hadamard_decomposition(k: usize, n: usize) -> Result<JohnDecomposition> {
    check_range(k, n)?;
    let m = 2 * k;
    let h = sylvester_hadamard(m)?;
    let scale = (n as f64).sqrt();
    let vectors = (0..m)
        .map(|j| (0..n).map(|i| h[(i, j)] / scale).collect())
        .collect();
    Ok(JohnDecomposition::new(n, vectors, vec![n as f64 / m as f64; m], false)?)
}

/// Exact `vol_k(L ∩ R^k) = (n/k)^(k/2) 2^k`, cross-checked against `|det W| (2 sqrt(n/k))^k`
/// with `W = H_k / sqrt(k)`.
pub fn hadamard_section_exact(k: usize, n: usize) -> Result<f64> {
    check_range(k, n)?;
    let ratio = n as f64 / k as f64;
    let closed_form = ratio.powf(k as f64 / 2.0) * 2f64.powi(k as i32);
    let w = sylvester_hadamard(k)? / (k as f64).sqrt();
    let det_route = w.determinant().abs() * (2.0 * ratio.sqrt()).powi(k as i32);
    if (det_route - closed_form).abs() > 1e-9 * closed_form {
        return Err(BodiesError::Inconsistent {
            det_route,
            closed_form,
        });
    }
    Ok(closed_form)
}
