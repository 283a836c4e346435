use nalgebra::DVector;
use slicebound_decomp::{linalg::complete_basis, JohnDecomposition, PIVOT_TOL};

use crate::error::{BodiesError, Result};
use crate::kp::KpBall;

/// `{+e_1, -e_1, +e_2, -e_2, ...}` with weights 1/2; the cube `[-1, 1]^n`.
pub fn cube_decomposition(n: usize) -> Result<JohnDecomposition> {
    if n == 0 {
        return Err(BodiesError::ZeroDimension);
    }
    let vectors = (0..n)
        .flat_map(|j| {
            [1.0, -1.0].map(|s| {
                let mut e = vec![0.0; n];
                e[j] = s;
                e
            })
        })
        .collect();
    Ok(JohnDecomposition::new(n, vectors, vec![0.5; 2 * n], true)?)
}

/// `{e_j}` with weights 1.
pub fn standard_basis_decomposition(n: usize) -> Result<JohnDecomposition> {
    if n == 0 {
        return Err(BodiesError::ZeroDimension);
    }
    let vectors = (0..n)
        .map(|j| {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            e
        })
        .collect();
    Ok(JohnDecomposition::new(n, vectors, vec![1.0; n], false)?)
}

/// `B_1^n` as the `K_1` ball of the standard basis.
pub fn cross_polytope_ball(n: usize) -> Result<KpBall> {
    KpBall::new(standard_basis_decomposition(n)?, 1.0, vec![1.0; n])
}

/// Orthonormal basis of `1^perp` in `R^(n+1)`.
///
/// The first two vectors are `(d + q)/sqrt2` and `(q - d)/sqrt2` with
/// `d = (e_1 - e_2)/sqrt2` and `q = (e_1 + e_2 - 2 e_3)/sqrt6`, so that
/// `u_1 - u_2` points along `(1, -1, 0, ...)` in simplex coordinates.
fn simplex_frame(n: usize) -> Vec<DVector<f64>> {
    let dim = n + 1;
    let unit = |entries: &[(usize, f64)]| {
        let mut v = DVector::zeros(dim);
        for &(i, x) in entries {
            v[i] = x;
        }
        v
    };
    let d = unit(&[(0, 1.0), (1, -1.0)]) / 2f64.sqrt();
    if n == 1 {
        return vec![d];
    }
    let q = unit(&[(0, 1.0), (1, 1.0), (2, -2.0)]) / 6f64.sqrt();
    let mut frame = vec![(&d + &q) / 2f64.sqrt(), (&q - &d) / 2f64.sqrt()];
    let ones = DVector::from_element(dim, 1.0 / (dim as f64).sqrt());
    let mut seeded = vec![ones];
    seeded.extend(frame.iter().cloned());
    frame.extend(complete_basis(&seeded, dim, PIVOT_TOL));
    frame
}

/// Regular simplex system: `n + 1` unit vectors with pairwise inner products `-1/n`,
/// weights `n/(n+1)`, centered. Its body `{x : <x, u_j> <= 1}` is the simplex with
/// inscribed unit ball.
pub fn simplex_decomposition(n: usize) -> Result<JohnDecomposition> {
    if n == 0 {
        return Err(BodiesError::ZeroDimension);
    }
    let frame = simplex_frame(n);
    let m = n + 1;
    let scale = (m as f64 / n as f64).sqrt();
    let mean = 1.0 / m as f64;
    let vectors = (0..m)
        .map(|j| {
            frame
                .iter()
                .map(|b| scale * (b[j] - mean * b.sum()))
                .collect()
        })
        .collect();
    Ok(JohnDecomposition::new(n, vectors, vec![n as f64 / m as f64; m], true)?)
}
