use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{DecompError, Result};
use crate::linalg::{complete_basis, orthonormalize};
use crate::tolerances::PIVOT_TOL;

/// A `k`-dimensional linear subspace `H` of `R^n` with orthonormal bases of `H` and `H^perp`.
///
/// "H-coordinates" of a point are its inner products with the rows of [`basis`](Self::basis).
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<DVector<f64>>,
    complement: Vec<DVector<f64>>,
}

/// Ways to describe a subspace in JSON.
///
/// - `[[...], ...]`: spanning rows (orthonormalized in order).
/// - `{"coordinate": [i, ...]}`: span of the listed canonical vectors (0-based).
/// - `{"orthogonal_to": [[...], ...]}`: orthogonal complement of the listed vectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SubspaceSpec {
    Basis(Vec<Vec<f64>>),
    Coordinate { coordinate: Vec<usize> },
    OrthogonalTo { orthogonal_to: Vec<Vec<f64>> },
}

impl SubspaceSpec {
    pub fn build(&self, ambient_dim: usize) -> Result<Subspace> {
        match self {
            SubspaceSpec::Basis(rows) => Subspace::from_rows(ambient_dim, rows),
            SubspaceSpec::Coordinate { coordinate } => Subspace::coordinate(ambient_dim, coordinate),
            SubspaceSpec::OrthogonalTo { orthogonal_to } => Subspace::orthogonal_to(ambient_dim, orthogonal_to),
        }
    }
}

fn check_rows(ambient_dim: usize, rows: &[Vec<f64>]) -> Result<Vec<DVector<f64>>> {
    rows.iter()
        .enumerate()
        .map(|(index, r)| {
            if r.len() != ambient_dim {
                Err(DecompError::DimensionMismatch {
                    index,
                    expected: ambient_dim,
                    found: r.len(),
                })
            } else if r.iter().any(|x| !x.is_finite()) {
                Err(DecompError::NonFinite { index })
            } else {
                Ok(DVector::from_column_slice(r))
            }
        })
        .collect()
}

impl Subspace {
    /// Build from orthonormal basis vectors (already orthonormal; re-orthonormalized anyway).
    pub fn from_vectors(ambient_dim: usize, vectors: &[DVector<f64>]) -> Result<Self> {
        if ambient_dim == 0 {
            return Err(DecompError::ZeroDimension);
        }
        let k = vectors.len();
        if k == 0 || k > ambient_dim {
            return Err(DecompError::BadSubspaceDimension { k, ambient: ambient_dim });
        }
        if let Some((index, v)) = vectors.iter().enumerate().find(|(_, v)| v.len() != ambient_dim) {
            return Err(DecompError::DimensionMismatch {
                index,
                expected: ambient_dim,
                found: v.len(),
            });
        }
        let basis = orthonormalize(vectors, 1e-10).map_err(|row| DecompError::RankDeficient { row })?;
        let complement = complete_basis(&basis, ambient_dim, PIVOT_TOL);
        Ok(Self {
            ambient_dim,
            basis,
            complement,
        })
    }

    pub fn from_rows(ambient_dim: usize, rows: &[Vec<f64>]) -> Result<Self> {
        let vectors = check_rows(ambient_dim, rows)?;
        Self::from_vectors(ambient_dim, &vectors)
    }

    /// `span{e_i : i in indices}` with 0-based indices.
    pub fn coordinate(ambient_dim: usize, indices: &[usize]) -> Result<Self> {
        let vectors: Vec<_> = indices
            .iter()
            .map(|&i| {
                if i >= ambient_dim {
                    Err(DecompError::CoordinateOutOfRange {
                        index: i,
                        ambient: ambient_dim,
                    })
                } else {
                    let mut e = DVector::zeros(ambient_dim);
                    e[i] = 1.0;
                    Ok(e)
                }
            })
            .collect::<Result<_>>()?;
        Self::from_vectors(ambient_dim, &vectors)
    }

    /// The first `k` coordinates.
    pub fn leading_coordinates(ambient_dim: usize, k: usize) -> Result<Self> {
        Self::coordinate(ambient_dim, &(0..k).collect::<Vec<_>>())
    }

    pub fn full(ambient_dim: usize) -> Result<Self> {
        Self::leading_coordinates(ambient_dim, ambient_dim)
    }

    /// Orthogonal complement of the span of `normals`.
    pub fn orthogonal_to(ambient_dim: usize, normals: &[Vec<f64>]) -> Result<Self> {
        let normals = check_rows(ambient_dim, normals)?;
        let normal_basis = orthonormalize(&normals, 1e-10).map_err(|row| DecompError::RankDeficient { row })?;
        let basis = complete_basis(&normal_basis, ambient_dim, PIVOT_TOL);
        if basis.is_empty() {
            return Err(DecompError::BadSubspaceDimension { k: 0, ambient: ambient_dim });
        }
        Ok(Self {
            ambient_dim,
            basis,
            complement: normal_basis,
        })
    }

    /// Uniformly distributed `k`-dimensional subspace: orthonormalized Gaussian rows.
    pub fn random<R: Rng + ?Sized>(ambient_dim: usize, k: usize, rng: &mut R) -> Result<Self> {
        if k == 0 || k > ambient_dim {
            return Err(DecompError::BadSubspaceDimension { k, ambient: ambient_dim });
        }
        loop {
            let rows: Vec<DVector<f64>> = (0..k)
                .map(|_| DVector::from_fn(ambient_dim, |_, _| rng.sample(StandardNormal)))
                .collect();
            if let Ok(s) = Self::from_vectors(ambient_dim, &rows) {
                return Ok(s);
            }
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn codim(&self) -> usize {
        self.complement.len()
    }

    pub fn basis(&self) -> &[DVector<f64>] {
        &self.basis
    }

    pub fn complement(&self) -> &[DVector<f64>] {
        &self.complement
    }

    /// H-coordinates of the orthogonal projection of `x`.
    pub fn coords(&self, x: &DVector<f64>) -> DVector<f64> {
        DVector::from_iterator(self.dim(), self.basis.iter().map(|b| b.dot(x)))
    }

    /// Coordinates of `P_{H^perp} x` in the complement basis.
    pub fn complement_coords(&self, x: &DVector<f64>) -> DVector<f64> {
        DVector::from_iterator(self.codim(), self.complement.iter().map(|b| b.dot(x)))
    }

    /// The point of `R^n` with the given H-coordinates.
    pub fn embed(&self, coords: &DVector<f64>) -> DVector<f64> {
        self.basis
            .iter()
            .zip(coords.iter())
            .fold(DVector::zeros(self.ambient_dim), |acc, (b, c)| acc + b * *c)
    }

    /// `P_H` as an `n x n` matrix.
    pub fn projector(&self) -> DMatrix<f64> {
        let mut p = DMatrix::zeros(self.ambient_dim, self.ambient_dim);
        for b in &self.basis {
            p.ger(1.0, b, b, 1.0);
        }
        p
    }

    pub fn rotated(&self, q: &DMatrix<f64>) -> Self {
        Self {
            ambient_dim: self.ambient_dim,
            basis: self.basis.iter().map(|b| q * b).collect(),
            complement: self.complement.iter().map(|b| q * b).collect(),
        }
    }

    /// Largest deviation of the combined basis from orthonormality.
    pub fn orthonormality_residual(&self) -> f64 {
        let all: Vec<_> = self.basis.iter().chain(&self.complement).collect();
        let mut worst: f64 = 0.0;
        for (i, a) in all.iter().enumerate() {
            for (j, b) in all.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((a.dot(b) - target).abs());
            }
        }
        worst
    }

    pub fn basis_rows(&self) -> Vec<Vec<f64>> {
        self.basis.iter().map(|b| b.iter().copied().collect()).collect()
    }
}

/// Haar-distributed orthogonal matrix (QR of a Gaussian matrix with sign correction).
pub fn random_rotation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<f64> {
    let g = DMatrix::from_fn(n, n, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            let mut col = q.column_mut(j);
            col.neg_mut();
        }
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn coordinate_subspace_and_complement() {
        let h = Subspace::coordinate(4, &[1, 3]).unwrap();
        assert_eq!(h.dim(), 2);
        assert_eq!(h.codim(), 2);
        assert!(h.orthonormality_residual() < 1e-15);
        assert_eq!(h.complement()[0][0], 1.0);
    }

    #[test]
    fn orthogonal_to_a_normal() {
        let h = Subspace::orthogonal_to(3, &[vec![1.0, 1.0, 1.0]]).unwrap();
        assert_eq!(h.dim(), 2);
        let n = DVector::from_vec(vec![1.0, 1.0, 1.0]);
        assert!(h.coords(&n).norm() < 1e-14);
    }

    #[test]
    fn bad_specs_are_rejected() {
        assert!(Subspace::coordinate(3, &[3]).is_err());
        assert!(Subspace::from_rows(3, &[vec![1.0, 0.0]]).is_err());
        assert!(Subspace::from_rows(2, &[vec![1.0, 0.0], vec![2.0, 0.0]]).is_err());
        assert!(Subspace::orthogonal_to(2, &[vec![1.0, 0.0], vec![0.0, 1.0]]).is_err());
    }

    #[test]
    fn spec_json_shapes() {
        let a: SubspaceSpec = serde_json::from_str(r#"{"coordinate": [0, 2]}"#).unwrap();
        let b: SubspaceSpec = serde_json::from_str(r#"{"orthogonal_to": [[1, -1, 0]]}"#).unwrap();
        let c: SubspaceSpec = serde_json::from_str(r#"[[1, 0, 0]]"#).unwrap();
        assert_eq!(a.build(3).unwrap().dim(), 2);
        assert_eq!(b.build(3).unwrap().dim(), 2);
        assert_eq!(c.build(3).unwrap().dim(), 1);
    }

    #[test]
    fn rotation_is_orthogonal() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let q = random_rotation(5, &mut rng);
        let err = (q.transpose() * &q - DMatrix::identity(5, 5)).amax();
        assert!(err < 1e-13);
    }
}
