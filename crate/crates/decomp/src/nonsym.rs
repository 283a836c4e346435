use nalgebra::DVector;

use crate::decomposition::JohnDecomposition;
use crate::error::{DecompError, Result};
use crate::linalg::identity_residual;
use crate::projection::{project, ProjectedDecomposition};
use crate::subspace::Subspace;
use crate::tolerances::Tolerances;

/// A centered system `(c_j, u_j)` in `R^n` lifted to `R^(n+1)`:
/// `v_j = sqrt(n/(n+1)) (-u_j, 1/sqrt(n))`, `delta_j = (n+1)/n c_j`,
/// projected onto `H = F (+) R e_(n+1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct NonsymLift {
    base_dim: usize,
    section: Subspace,
    lifted: JohnDecomposition,
    projection: ProjectedDecomposition,
    identity_residual: f64,
    apex_residual: f64,
}

pub fn lift_nonsymmetric(decomp: &JohnDecomposition, section: &Subspace, tol: &Tolerances) -> Result<NonsymLift> {
    let n = decomp.dim();
    if section.ambient_dim() != n {
        return Err(DecompError::AmbientMismatch {
            expected: n,
            found: section.ambient_dim(),
        });
    }
    let residual = decomp.centering_residual();
    if !(residual <= tol.identity) {
        return Err(DecompError::NotCentered {
            residual,
            tolerance: tol.identity,
        });
    }
    let nf = n as f64;
    let scale = (nf / (nf + 1.0)).sqrt();
    let vectors: Vec<DVector<f64>> = decomp
        .vectors()
        .iter()
        .map(|u| DVector::from_fn(n + 1, |i, _| if i < n { -scale * u[i] } else { scale / nf.sqrt() }))
        .collect();
    let weights: Vec<f64> = decomp.weights().iter().map(|c| c * (nf + 1.0) / nf).collect();
    let lifted = JohnDecomposition::from_vectors(n + 1, vectors, weights, false)?;

    let identity_residual = identity_residual(n + 1, lifted.weights().iter().copied().zip(lifted.vectors()));
    let mut apex = lifted
        .vectors()
        .iter()
        .zip(lifted.weights())
        .fold(DVector::zeros(n + 1), |acc, (v, d)| acc + v * *d);
    apex[n] -= (nf + 1.0).sqrt();
    let apex_residual = apex.norm();

    let mut basis: Vec<DVector<f64>> = section
        .basis()
        .iter()
        .map(|b| DVector::from_fn(n + 1, |i, _| if i < n { b[i] } else { 0.0 }))
        .collect();
    let mut top = DVector::zeros(n + 1);
    top[n] = 1.0;
    basis.push(top);
    let lifted_subspace = Subspace::from_vectors(n + 1, &basis)?;
    let projection = project(&lifted, &lifted_subspace, tol)?;

    Ok(NonsymLift {
        base_dim: n,
        section: section.clone(),
        lifted,
        projection,
        identity_residual,
        apex_residual,
    })
}

impl NonsymLift {
    /// `n`, the dimension of the original body.
    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    /// `k = dim F`.
    pub fn section_dim(&self) -> usize {
        self.section.dim()
    }

    /// The input subspace `F` of `R^n`.
    pub fn section(&self) -> &Subspace {
        &self.section
    }

    pub fn lifted(&self) -> &JohnDecomposition {
        &self.lifted
    }

    pub fn lifted_vectors(&self) -> &[DVector<f64>] {
        self.lifted.vectors()
    }

    /// `delta_j`.
    pub fn lifted_weights(&self) -> &[f64] {
        self.lifted.weights()
    }

    /// `H = F (+) R e_(n+1)`, of dimension `k + 1`.
    pub fn lifted_subspace(&self) -> &Subspace {
        self.projection.subspace()
    }

    /// The lifted system projected onto `H`; its tilde weights are the `kappa_j`.
    pub fn projection(&self) -> &ProjectedDecomposition {
        &self.projection
    }

    /// `kappa_j = delta_j |P_H v_j|^2`, one per support index.
    pub fn kappa(&self) -> &[f64] {
        self.projection.tilde_weights()
    }

    /// `P_H v_j / |P_H v_j|` in H-coordinates.
    pub fn directions(&self) -> &[DVector<f64>] {
        self.projection.directions()
    }

    pub fn identity_residual(&self) -> f64 {
        self.identity_residual
    }

    /// `|sum delta_j v_j - (0, sqrt(n+1))|`.
    pub fn apex_residual(&self) -> f64 {
        self.apex_residual
    }

    pub fn delta_sum_residual(&self) -> f64 {
        (self.lifted.weights().iter().sum::<f64>() - (self.base_dim + 1) as f64).abs()
    }

    pub fn kappa_sum_residual(&self) -> f64 {
        (self.kappa().iter().sum::<f64>() - (self.section_dim() + 1) as f64).abs()
    }

    pub fn min_kappa(&self) -> f64 {
        self.kappa().iter().copied().fold(f64::INFINITY, f64::min)
    }
}
