use nalgebra::DVector;
use serde::{Deserialize, Serialize};
use slicebound_decomp::{project, JohnDecomposition, ProjectedDecomposition, Subspace, Tolerances};

use crate::error::{BodiesError, Result};

/// Unit ball of `||x|| = (sum_j alpha_j |<x, v_j>|^p)^(1/p)`, `1 <= p <= 2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KpBall {
    decomp: JohnDecomposition,
    p: f64,
    alphas: Vec<f64>,
}

impl KpBall {
    pub fn new(decomp: JohnDecomposition, p: f64, alphas: Vec<f64>) -> Result<Self> {
        if !(1.0..=2.0).contains(&p) {
            return Err(BodiesError::BadExponent(p));
        }
        if alphas.len() != decomp.len() {
            return Err(BodiesError::AlphaCount {
                expected: decomp.len(),
                found: alphas.len(),
            });
        }
        if let Some((index, &value)) = alphas
            .iter()
            .enumerate()
            .find(|(_, a)| !(a.is_finite() && **a > 0.0))
        {
            return Err(BodiesError::BadAlpha { index, value });
        }
        Ok(Self { decomp, p, alphas })
    }

    pub fn decomp(&self) -> &JohnDecomposition {
        &self.decomp
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    pub fn norm(&self, x: &DVector<f64>) -> f64 {
        self.decomp
            .vectors()
            .iter()
            .zip(&self.alphas)
            .map(|(v, a)| a * v.dot(x).abs().powf(self.p))
            .sum::<f64>()
            .powf(1.0 / self.p)
    }

    /// `beta_j = alpha_j / c_j^(p/2)`.
    pub fn betas(&self) -> Vec<f64> {
        self.alphas
            .iter()
            .zip(self.decomp.weights())
            .map(|(a, c)| a / c.powf(self.p / 2.0))
            .collect()
    }

    pub fn section(&self, subspace: &Subspace, tol: &Tolerances) -> Result<KpSection> {
        let projection = project(&self.decomp, subspace, tol)?;
        let alphas: Vec<f64> = projection.support().iter().map(|&j| self.alphas[j]).collect();
        let normals = projection
            .directions()
            .iter()
            .zip(projection.thresholds())
            .map(|(u, t)| u / *t)
            .collect();
        Ok(KpSection {
            p: self.p,
            alphas,
            normals,
            projection,
        })
    }
}

/// `K_p ∩ H` in H-coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct KpSection {
    p: f64,
    alphas: Vec<f64>,
    normals: Vec<DVector<f64>>,
    projection: ProjectedDecomposition,
}

impl KpSection {
    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.projection.dim()
    }

    /// `alpha_j` for `j` in the support, aligned with the projection.
    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    pub fn projection(&self) -> &ProjectedDecomposition {
        &self.projection
    }

    /// `sum_J alpha_j |<y, P_H v_j>|^p`.
    pub fn norm_p(&self, y: &[f64]) -> f64 {
        self.normals
            .iter()
            .zip(&self.alphas)
            .map(|(a, alpha)| {
                let dot: f64 = a.iter().zip(y).map(|(x, z)| x * z).sum();
                alpha * dot.abs().powf(self.p)
            })
            .sum()
    }

    pub fn contains(&self, y: &[f64]) -> bool {
        self.norm_p(y) <= 1.0
    }

    /// `sqrt(sum_J c_j alpha_j^(-2/p))` bounds `|y|` on the section.
    pub fn envelope_radius(&self) -> f64 {
        self.projection
            .weights()
            .iter()
            .zip(&self.alphas)
            .map(|(c, a)| c * a.powf(-2.0 / self.p))
            .sum::<f64>()
            .sqrt()
    }
}
