use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{DecompError, Result};
use crate::linalg::identity_residual;
use crate::tolerances::Tolerances;

/// Largest number of vectors accepted; memory is `O(m n)`.
pub const MAX_VECTORS: usize = 10_000;

/// Weighted unit vectors `(c_j, v_j)` in `R^n` meant to satisfy `sum c_j v_j v_j^T = Id`.
///
/// Construction only checks structure (lengths, finiteness, positive weights).
/// Whether the system actually resolves the identity is reported by [`validate`](Self::validate).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDecomposition", into = "RawDecomposition")]
pub struct JohnDecomposition {
    dim: usize,
    vectors: Vec<DVector<f64>>,
    weights: Vec<f64>,
    centered: bool,
}

/// JSON shape: `{"dim": n, "vectors": [[...]], "weights": [...], "centered": bool}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDecomposition {
    pub dim: usize,
    pub vectors: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
    #[serde(default)]
    pub centered: bool,
}

impl TryFrom<RawDecomposition> for JohnDecomposition {
    type Error = DecompError;

    fn try_from(raw: RawDecomposition) -> Result<Self> {
        JohnDecomposition::new(raw.dim, raw.vectors, raw.weights, raw.centered)
    }
}

impl From<JohnDecomposition> for RawDecomposition {
    fn from(d: JohnDecomposition) -> Self {
        RawDecomposition {
            dim: d.dim,
            vectors: d.vectors.iter().map(|v| v.iter().copied().collect()).collect(),
            weights: d.weights,
            centered: d.centered,
        }
    }
}

impl JohnDecomposition {
    pub fn new(dim: usize, vectors: Vec<Vec<f64>>, weights: Vec<f64>, centered: bool) -> Result<Self> {
        let vectors = vectors.into_iter().map(DVector::from_vec).collect();
        Self::from_vectors(dim, vectors, weights, centered)
    }

    pub fn from_vectors(
        dim: usize,
        vectors: Vec<DVector<f64>>,
        weights: Vec<f64>,
        centered: bool,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(DecompError::ZeroDimension);
        }
        if vectors.len() != weights.len() {
            return Err(DecompError::CountMismatch {
                vectors: vectors.len(),
                weights: weights.len(),
            });
        }
        if vectors.len() < dim {
            return Err(DecompError::TooFewVectors {
                count: vectors.len(),
                dim,
            });
        }
        if vectors.len() > MAX_VECTORS {
            return Err(DecompError::TooManyVectors {
                count: vectors.len(),
                max: MAX_VECTORS,
            });
        }
        for (index, v) in vectors.iter().enumerate() {
            if v.len() != dim {
                return Err(DecompError::DimensionMismatch {
                    index,
                    expected: dim,
                    found: v.len(),
                });
            }
            if v.iter().any(|x| !x.is_finite()) {
                return Err(DecompError::NonFinite { index });
            }
        }
        if let Some((index, &value)) = weights
            .iter()
            .enumerate()
            .find(|(_, w)| !(w.is_finite() && **w > 0.0))
        {
            return Err(DecompError::BadWeight { index, value });
        }
        Ok(Self {
            dim,
            vectors,
            weights,
            centered,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[DVector<f64>] {
        &self.vectors
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn centered(&self) -> bool {
        self.centered
    }

    /// `|| sum_j c_j v_j ||_2`.
    pub fn centering_residual(&self) -> f64 {
        self.vectors
            .iter()
            .zip(&self.weights)
            .fold(DVector::zeros(self.dim), |acc, (v, c)| acc + v * *c)
            .norm()
    }

    /// The same system after applying the orthogonal map `q` to every vector.
    pub fn rotated(&self, q: &DMatrix<f64>) -> Self {
        Self {
            dim: self.dim,
            vectors: self.vectors.iter().map(|v| q * v).collect(),
            weights: self.weights.clone(),
            centered: self.centered,
        }
    }

    pub fn validate(&self, tol: &Tolerances) -> ValidationReport {
        let unit = self
            .vectors
            .iter()
            .map(|v| (v.norm() - 1.0).abs())
            .fold(0.0, f64::max);
        let identity = identity_residual(self.dim, self.weights.iter().copied().zip(&self.vectors));
        let trace = (self.weights.iter().sum::<f64>() - self.dim as f64).abs();
        let mut checks = vec![
            Check::new("unit_vectors", unit, tol.unit),
            Check::new("identity_resolution", identity, tol.identity),
            Check::new("trace", trace, tol.identity),
        ];
        if self.centered {
            checks.push(Check::new("centering", self.centering_residual(), tol.identity));
        }
        ValidationReport { checks }
    }
}

/// One residual compared against its tolerance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    pub fn new(name: &str, residual: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_owned(),
            residual,
            tolerance,
            passed: residual <= tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn residual(&self, name: &str) -> Option<f64> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.residual)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}
