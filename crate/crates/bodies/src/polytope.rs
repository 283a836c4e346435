use serde::{Deserialize, Serialize};
use slicebound_decomp::{NonsymLift, ProjectedDecomposition};

/// Matching tolerance when merging constraints that coincide after sign normalization.
pub const DEDUP_TOL: f64 = 1e-10;

/// `{y in R^k : <a_i, y> <= b_i}` where `y` are coordinates in the orthonormal `basis` of `H`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HPolytopeSection {
    pub dim: usize,
    pub basis: Vec<Vec<f64>>,
    pub normals: Vec<Vec<f64>>,
    pub offsets: Vec<f64>,
    pub symmetric: bool,
    /// Every point of the polytope has Euclidean norm at most this.
    pub envelope_radius: f64,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn close(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).abs() <= DEDUP_TOL)
}

impl HPolytopeSection {
    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    pub fn constraints(&self) -> impl Iterator<Item = (&[f64], f64)> {
        self.normals.iter().map(Vec::as_slice).zip(self.offsets.iter().copied())
    }

    /// `max_i (<a_i, y> - b_i)`; non-positive inside.
    pub fn max_violation(&self, y: &[f64]) -> f64 {
        self.constraints()
            .map(|(a, b)| dot(a, y) - b)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn contains(&self, y: &[f64]) -> bool {
        self.constraints().all(|(a, b)| dot(a, y) <= b)
    }

    fn push_unique(&mut self, normal: Vec<f64>, offset: f64) -> bool {
        let seen = self
            .constraints()
            .any(|(a, b)| (b - offset).abs() <= DEDUP_TOL && close(a, &normal));
        if !seen {
            self.normals.push(normal);
            self.offsets.push(offset);
        }
        !seen
    }
}

/// `L ∩ H = {y : |<y, u_j>| <= t_j, j in J}`, emitted as `±u_j` pairs.
pub fn section_polytope(proj: &ProjectedDecomposition) -> HPolytopeSection {
    let mut poly = HPolytopeSection {
        dim: proj.dim(),
        basis: proj.subspace().basis_rows(),
        normals: Vec::new(),
        offsets: Vec::new(),
        symmetric: true,
        envelope_radius: proj.weights().iter().sum::<f64>().sqrt(),
    };
    for (u, &t) in proj.directions().iter().zip(proj.thresholds()) {
        let mut a: Vec<f64> = u.iter().copied().collect();
        if let Some(first) = a.iter().find(|x| x.abs() > DEDUP_TOL) {
            if *first < 0.0 {
                a.iter_mut().for_each(|x| *x = -*x);
            }
        }
        let neg: Vec<f64> = a.iter().map(|x| -x).collect();
        if poly.push_unique(a, t) {
            poly.normals.push(neg);
            poly.offsets.push(t);
        }
    }
    poly
}

/// `C ∩ F` with `C = {x : <x, u_j> <= 1}` for a centered system; coordinates are in `F`.
///
/// `C` contains the unit ball and lies in the ball of radius `n`.
pub fn nonsym_section_polytope(nl: &NonsymLift) -> HPolytopeSection {
    let n = nl.base_dim();
    let section = nl.section();
    let unscale = -((n + 1) as f64 / n as f64).sqrt();
    let mut poly = HPolytopeSection {
        dim: section.dim(),
        basis: section.basis_rows(),
        normals: Vec::new(),
        offsets: Vec::new(),
        symmetric: false,
        envelope_radius: n as f64,
    };
    for v in nl.lifted_vectors() {
        let u = v.rows(0, n).into_owned() * unscale;
        let a: Vec<f64> = section.coords(&u).iter().copied().collect();
        // A zero normal is the vacuous constraint 0 <= 1.
        if a.iter().any(|x| x.abs() > DEDUP_TOL) {
            poly.normals.push(a);
            poly.offsets.push(1.0);
        }
    }
    poly
}
