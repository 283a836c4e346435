use nalgebra::{DMatrix, DVector};

use crate::error::{DecompError, Result};
use crate::linalg::{canonical_sign, complete_basis, identity_residual, symmetric_op_norm};
use crate::projection::{ProjectedDecomposition, ProjectionProfile};
use crate::tolerances::{Tolerances, PIVOT_TOL};

/// Orthonormal frame `x_1..x_m0` of `R^m0` with `x_j = sqrt(ctilde_j) u_j (+) sqrt(1 - ctilde_j) w_j`.
///
/// `H` sits in `R^m0` as the first `k` coordinates; `w_j` are expressed in the
/// remaining `d = m0 - k` coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Lift {
    profile: ProjectionProfile,
    directions: Vec<DVector<f64>>,
    frame: Vec<DVector<f64>>,
    unsaturated: Vec<usize>,
    complement_vectors: Vec<DVector<f64>>,
    frame_residual: f64,
    embedding_residual: f64,
    complement_residual: f64,
}

pub fn lift(proj: &ProjectedDecomposition, tol: &Tolerances) -> Result<Lift> {
    let k = proj.dim();
    let m0 = proj.m0();
    if m0 < k {
        return Err(DecompError::TooFewProjected { m0, k });
    }
    let tilde = proj.tilde_weights();
    let top = DMatrix::from_fn(k, m0, |i, j| tilde[j].sqrt() * proj.directions()[j][i]);
    let row_residual = symmetric_op_norm(&(&top * top.transpose() - DMatrix::identity(k, k)));
    if !(row_residual <= tol.identity) {
        return Err(DecompError::RowsNotOrthonormal {
            residual: row_residual,
            tolerance: tol.identity,
        });
    }

    // Re-normalize the rows so the completion starts from an exactly orthonormal set.
    let rows: Vec<DVector<f64>> = (0..k).map(|i| top.row(i).transpose().normalize()).collect();
    let added = complete_basis(&rows, m0, PIVOT_TOL);
    let d = m0 - k;
    if added.len() != d {
        return Err(DecompError::RowsNotOrthonormal {
            residual: row_residual,
            tolerance: tol.identity,
        });
    }
    let full = DMatrix::from_fn(m0, m0, |i, j| if i < k { top[(i, j)] } else { added[i - k][j] });
    let frame: Vec<DVector<f64>> = (0..m0).map(|j| full.column(j).into_owned()).collect();

    let frame_residual = (full.transpose() * &full - DMatrix::identity(m0, m0)).amax();
    let embedding_residual = frame
        .iter()
        .zip(proj.directions())
        .zip(tilde)
        .map(|((x, u), &ct)| (x.rows(0, k) - u * ct.sqrt()).norm())
        .fold(0.0, f64::max);

    let profile = proj.profile().clone();
    let unsaturated: Vec<usize> = profile.unsaturated().collect();
    let complement_vectors: Vec<DVector<f64>> = unsaturated
        .iter()
        .map(|&j| {
            let mut w = frame[j].rows(k, d).into_owned() / (1.0 - tilde[j]).sqrt();
            canonical_sign(&mut w);
            w
        })
        .collect();
    let complement_residual = identity_residual(
        d,
        unsaturated
            .iter()
            .map(|&j| 1.0 - tilde[j])
            .zip(&complement_vectors),
    );

    Ok(Lift {
        profile,
        directions: proj.directions().to_vec(),
        frame,
        unsaturated,
        complement_vectors,
        frame_residual,
        embedding_residual,
        complement_residual,
    })
}

impl Lift {
    pub fn profile(&self) -> &ProjectionProfile {
        &self.profile
    }

    pub fn dim(&self) -> usize {
        self.profile.dim()
    }

    pub fn m0(&self) -> usize {
        self.frame.len()
    }

    /// `d = m0 - k`.
    pub fn complement_dim(&self) -> usize {
        self.m0() - self.dim()
    }

    pub fn directions(&self) -> &[DVector<f64>] {
        &self.directions
    }

    pub fn frame(&self) -> &[DVector<f64>] {
        &self.frame
    }

    /// Positions `j` (within the support) with `ctilde_j < 1`, aligned with
    /// [`complement_vectors`](Self::complement_vectors).
    pub fn unsaturated(&self) -> &[usize] {
        &self.unsaturated
    }

    pub fn complement_vectors(&self) -> &[DVector<f64>] {
        &self.complement_vectors
    }

    pub fn defect_weights(&self) -> impl Iterator<Item = f64> + '_ {
        self.unsaturated
            .iter()
            .map(|&j| 1.0 - self.profile.tilde_weights()[j])
    }

    /// Max entry of `X^T X - Id`.
    pub fn frame_residual(&self) -> f64 {
        self.frame_residual
    }

    /// `max_j |P_H x_j - sqrt(ctilde_j) u_j|`.
    pub fn embedding_residual(&self) -> f64 {
        self.embedding_residual
    }

    /// `|| sum (1 - ctilde_j) w_j w_j^T - Id_{H^perp} ||_op`.
    pub fn complement_residual(&self) -> f64 {
        self.complement_residual
    }

    /// Rank of `{w_j}` in `H^perp`, computed from singular values.
    pub fn complement_rank(&self) -> usize {
        let d = self.complement_dim();
        if d == 0 || self.complement_vectors.is_empty() {
            return 0;
        }
        let m = DMatrix::from_fn(d, self.complement_vectors.len(), |i, j| self.complement_vectors[j][i]);
        m.singular_values().iter().filter(|s| **s > 1e-9).count()
    }
}
