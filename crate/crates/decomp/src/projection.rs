use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::decomposition::JohnDecomposition;
use crate::error::{DecompError, Result};
use crate::linalg::identity_residual;
use crate::subspace::Subspace;
use crate::tolerances::{Tolerances, NEAR_THRESHOLD_FACTOR, TOL_SATURATED};

/// The scalar data every section bound consumes: ambient `n`, section dimension `k`,
/// and for each `j` in the support the pair `(c_j, ctilde_j)`.
/// Thresholds follow as `t_j = sqrt(c_j / ctilde_j)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectionProfile {
    ambient_dim: usize,
    dim: usize,
    weights: Vec<f64>,
    tilde_weights: Vec<f64>,
}

impl ProjectionProfile {
    pub fn new(ambient_dim: usize, dim: usize, weights: Vec<f64>, tilde_weights: Vec<f64>) -> Result<Self> {
        if dim == 0 || dim > ambient_dim {
            return Err(DecompError::BadSubspaceDimension {
                k: dim,
                ambient: ambient_dim,
            });
        }
        if weights.len() != tilde_weights.len() {
            return Err(DecompError::CountMismatch {
                vectors: tilde_weights.len(),
                weights: weights.len(),
            });
        }
        for (j, (&c, &ct)) in weights.iter().zip(&tilde_weights).enumerate() {
            if !(c.is_finite() && c > 0.0) {
                return Err(DecompError::BadWeight { index: j, value: c });
            }
            if !(ct.is_finite() && ct > 0.0 && ct <= c * (1.0 + 1e-6)) {
                return Err(DecompError::BadProfile(format!(
                    "ctilde[{j}] = {ct} must lie in (0, c_j = {c}]"
                )));
            }
        }
        Ok(Self {
            ambient_dim,
            dim,
            weights,
            tilde_weights,
        })
    }

    /// Ambient dimension `n`.
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Section dimension `k`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `m0 = |J|`.
    pub fn m0(&self) -> usize {
        self.weights.len()
    }

    /// `m0 - k`, the dimension of the complement in the lifted space.
    pub fn complement_dim(&self) -> usize {
        self.m0().saturating_sub(self.dim)
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn tilde_weights(&self) -> &[f64] {
        &self.tilde_weights
    }

    pub fn thresholds(&self) -> impl Iterator<Item = f64> + '_ {
        self.weights
            .iter()
            .zip(&self.tilde_weights)
            .map(|(c, ct)| (c / ct).sqrt())
    }

    pub fn threshold(&self, j: usize) -> f64 {
        (self.weights[j] / self.tilde_weights[j]).sqrt()
    }

    pub fn is_saturated(&self, j: usize) -> bool {
        self.tilde_weights[j] >= 1.0 - TOL_SATURATED
    }

    /// Positions (within the support) of indices with `ctilde_j < 1`.
    pub fn unsaturated(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.m0()).filter(|&j| !self.is_saturated(j))
    }

    pub fn tilde_sum(&self) -> f64 {
        self.tilde_weights.iter().sum()
    }
}

/// The system induced on `H`: support `J`, directions `u_j` (in H-coordinates),
/// weights `ctilde_j = c_j |P_H v_j|^2` and thresholds `t_j = 1 / |P_H v_j|`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectedDecomposition {
    profile: ProjectionProfile,
    support: Vec<usize>,
    directions: Vec<DVector<f64>>,
    thresholds: Vec<f64>,
    subspace: Subspace,
    identity_residual: f64,
    near_threshold: Vec<usize>,
}

/// Project `decomp` onto `subspace`.
pub fn project(decomp: &JohnDecomposition, subspace: &Subspace, tol: &Tolerances) -> Result<ProjectedDecomposition> {
    if subspace.ambient_dim() != decomp.dim() {
        return Err(DecompError::AmbientMismatch {
            expected: decomp.dim(),
            found: subspace.ambient_dim(),
        });
    }
    let mut support = Vec::new();
    let mut weights = Vec::new();
    let mut tilde = Vec::new();
    let mut directions = Vec::new();
    let mut thresholds = Vec::new();
    let mut near_threshold = Vec::new();
    for (j, (v, &c)) in decomp.vectors().iter().zip(decomp.weights()).enumerate() {
        let coords = subspace.coords(v);
        let len = coords.norm();
        let cutoff = tol.proj * v.norm();
        if len > cutoff / NEAR_THRESHOLD_FACTOR && len < cutoff * NEAR_THRESHOLD_FACTOR {
            near_threshold.push(j);
        }
        if len > cutoff {
            support.push(j);
            weights.push(c);
            tilde.push(c * len * len);
            thresholds.push(1.0 / len);
            directions.push(coords / len);
        }
    }
    let k = subspace.dim();
    let identity_residual = identity_residual(k, tilde.iter().copied().zip(&directions));
    let profile = ProjectionProfile {
        ambient_dim: decomp.dim(),
        dim: k,
        weights,
        tilde_weights: tilde,
    };
    Ok(ProjectedDecomposition {
        profile,
        support,
        directions,
        thresholds,
        subspace: subspace.clone(),
        identity_residual,
        near_threshold,
    })
}

impl ProjectedDecomposition {
    pub fn profile(&self) -> &ProjectionProfile {
        &self.profile
    }

    pub fn dim(&self) -> usize {
        self.profile.dim
    }

    pub fn ambient_dim(&self) -> usize {
        self.profile.ambient_dim
    }

    pub fn m0(&self) -> usize {
        self.support.len()
    }

    /// Original indices `j` with `P_H v_j != 0`.
    pub fn support(&self) -> &[usize] {
        &self.support
    }

    /// Unit vectors `u_j` in H-coordinates.
    pub fn directions(&self) -> &[DVector<f64>] {
        &self.directions
    }

    pub fn weights(&self) -> &[f64] {
        &self.profile.weights
    }

    pub fn tilde_weights(&self) -> &[f64] {
        &self.profile.tilde_weights
    }

    /// `t_j = 1 / |P_H v_j|`.
    pub fn thresholds(&self) -> &[f64] {
        &self.thresholds
    }

    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    /// `|| sum_J ctilde_j u_j u_j^T - Id_H ||_op`.
    pub fn identity_residual(&self) -> f64 {
        self.identity_residual
    }

    pub fn trace_residual(&self) -> f64 {
        (self.profile.tilde_sum() - self.dim() as f64).abs()
    }

    /// Largest `ctilde_j`; values above `1 + tol_identity` are reported, not rejected.
    pub fn max_tilde_weight(&self) -> f64 {
        self.profile.tilde_weights.iter().copied().fold(0.0, f64::max)
    }

    /// Original indices whose `|P_H v_j|` lies close to the support threshold.
    pub fn near_threshold(&self) -> &[usize] {
        &self.near_threshold
    }

    pub fn is_valid(&self, tol: &Tolerances) -> bool {
        self.identity_residual <= tol.identity
            && self.trace_residual() <= tol.identity
            && self.max_tilde_weight() <= 1.0 + tol.identity
    }
}
