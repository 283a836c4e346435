//! Vertex enumeration and exact volumes of small polytopes.

use nalgebra::{DMatrix, DVector};
use slicebound_bodies::HPolytopeSection;

use crate::error::{OracleError, Result};

const FEASIBILITY_TOL: f64 = 1e-9;
const MERGE_TOL: f64 = 1e-9;
pub const MAX_EXACT_DIM: usize = 3;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Rejects polytopes whose normals do not span `R^k`: those contain a line.
pub fn check_bounded(poly: &HPolytopeSection) -> Result<()> {
    let k = poly.dim;
    if k == 0 {
        return Err(OracleError::InvalidArgument("polytope of dimension 0".into()));
    }
    let rank = if poly.is_empty() {
        0
    } else {
        let a = DMatrix::from_fn(poly.len(), k, |i, j| poly.normals[i][j]);
        let sv = a.singular_values();
        let top = sv.max();
        sv.iter().filter(|s| **s > 1e-10 * top.max(1.0)).count()
    };
    if rank < k {
        return Err(OracleError::Unbounded { rank, dim: k });
    }
    Ok(())
}

fn require_small(poly: &HPolytopeSection, what: &'static str) -> Result<()> {
    if poly.dim > MAX_EXACT_DIM {
        return Err(OracleError::Unsupported {
            what,
            dim: poly.dim,
            max: MAX_EXACT_DIM,
        });
    }
    check_bounded(poly)
}

/// Calls `visit` with every `k`-subset of `0..m` in lexicographic order.
fn for_each_subset(m: usize, k: usize, mut visit: impl FnMut(&[usize])) {
    if k > m {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        visit(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] < m - k + i) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Vertices of a bounded polytope in dimension at most 3, each listed once.
pub fn vertices(poly: &HPolytopeSection) -> Result<Vec<Vec<f64>>> {
    require_small(poly, "vertex enumeration")?;
    let k = poly.dim;
    let scale = poly.envelope_radius.max(1.0);
    let mut out: Vec<Vec<f64>> = Vec::new();
    for_each_subset(poly.len(), k, |rows| {
        let a = DMatrix::from_fn(k, k, |i, j| poly.normals[rows[i]][j]);
        let b = DVector::from_iterator(k, rows.iter().map(|&r| poly.offsets[r]));
        let Some(x) = a.lu().solve(&b) else { return };
        let x: Vec<f64> = x.iter().copied().collect();
        if !x.iter().all(|v| v.is_finite()) || poly.max_violation(&x) > FEASIBILITY_TOL * scale {
            return;
        }
        if !out.iter().any(|v| v.iter().zip(&x).all(|(p, q)| (p - q).abs() <= MERGE_TOL * scale)) {
            out.push(x);
        }
    });
    if out.is_empty() {
        return Err(OracleError::NoVertices);
    }
    Ok(out)
}

fn centroid(points: &[Vec<f64>]) -> Vec<f64> {
    let dim = points[0].len();
    let mut c = vec![0.0; dim];
    for p in points {
        c.iter_mut().zip(p).for_each(|(ci, pi)| *ci += pi);
    }
    c.iter_mut().for_each(|ci| *ci /= points.len() as f64);
    c
}

/// Area of the convex polygon through `points`, given in 2-D coordinates.
fn polygon_area(points: &mut [[f64; 2]]) -> f64 {
    let n = points.len() as f64;
    let cx = points.iter().map(|p| p[0]).sum::<f64>() / n;
    let cy = points.iter().map(|p| p[1]).sum::<f64>() / n;
    points.sort_by(|p, q| {
        let ap = (p[1] - cy).atan2(p[0] - cx);
        let aq = (q[1] - cy).atan2(q[0] - cx);
        ap.total_cmp(&aq)
    });
    let twice: f64 = (0..points.len())
        .map(|i| {
            let p = points[i];
            let q = points[(i + 1) % points.len()];
            p[0] * q[1] - p[1] * q[0]
        })
        .sum();
    0.5 * twice.abs()
}

/// Orthonormal pair spanning the plane with unit normal `n`.
fn plane_basis(n: &[f64]) -> ([f64; 3], [f64; 3]) {
    let seed = if n[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let proj = dot(&seed, n);
    let mut e1 = [seed[0] - proj * n[0], seed[1] - proj * n[1], seed[2] - proj * n[2]];
    let l = norm(&e1);
    e1.iter_mut().for_each(|x| *x /= l);
    let e2 = [
        n[1] * e1[2] - n[2] * e1[1],
        n[2] * e1[0] - n[0] * e1[2],
        n[0] * e1[1] - n[1] * e1[0],
    ];
    (e1, e2)
}

/// Exact `vol_k` for `k <= 3`: interval length, shoelace area, or a pyramid
/// decomposition over facets from the vertex centroid.
pub fn exact_volume_smallk(poly: &HPolytopeSection) -> Result<f64> {
    let verts = vertices(poly)?;
    match poly.dim {
        1 => {
            let (lo, hi) = verts
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v[0]), hi.max(v[0])));
            Ok(hi - lo)
        }
        2 => {
            if verts.len() < 3 {
                return Ok(0.0);
            }
            let mut pts: Vec<[f64; 2]> = verts.iter().map(|v| [v[0], v[1]]).collect();
            Ok(polygon_area(&mut pts))
        }
        _ => Ok(polyhedron_volume(poly, &verts)),
    }
}

fn polyhedron_volume(poly: &HPolytopeSection, verts: &[Vec<f64>]) -> f64 {
    if verts.len() < 4 {
        return 0.0;
    }
    let center = centroid(verts);
    let scale = poly.envelope_radius.max(1.0);
    let mut seen: Vec<(Vec<f64>, f64)> = Vec::new();
    let mut volume = 0.0;
    for (a, b) in poly.constraints() {
        let len = norm(a);
        let unit: Vec<f64> = a.iter().map(|x| x / len).collect();
        let offset = b / len;
        // Duplicate constraints describe the same facet.
        if seen
            .iter()
            .any(|(u, o)| (o - offset).abs() <= MERGE_TOL * scale && u.iter().zip(&unit).all(|(p, q)| (p - q).abs() <= 1e-9))
        {
            continue;
        }
        seen.push((unit.clone(), offset));
        let on_facet: Vec<&Vec<f64>> = verts
            .iter()
            .filter(|v| (dot(&unit, v) - offset).abs() <= FEASIBILITY_TOL * scale)
            .collect();
        if on_facet.len() < 3 {
            continue;
        }
        let (e1, e2) = plane_basis(&unit);
        let mut pts: Vec<[f64; 2]> = on_facet.iter().map(|v| [dot(&e1, v), dot(&e2, v)]).collect();
        let height = offset - dot(&unit, &center);
        volume += polygon_area(&mut pts) * height / 3.0;
    }
    volume
}

#[cfg(test)]
mod tests {
    use super::*;

    fn boxed(half: &[f64]) -> HPolytopeSection {
        let k = half.len();
        let mut normals = Vec::new();
        let mut offsets = Vec::new();
        for (i, &h) in half.iter().enumerate() {
            for s in [1.0, -1.0] {
                let mut a = vec![0.0; k];
                a[i] = s;
                normals.push(a);
                offsets.push(h);
            }
        }
        HPolytopeSection {
            dim: k,
            basis: Vec::new(),
            normals,
            offsets,
            symmetric: true,
            envelope_radius: half.iter().map(|h| h * h).sum::<f64>().sqrt(),
        }
    }

    #[test]
    fn subsets_are_enumerated_once() {
        let mut seen = Vec::new();
        for_each_subset(5, 3, |s| seen.push(s.to_vec()));
        assert_eq!(seen.len(), 10);
        assert_eq!(seen[0], vec![0, 1, 2]);
        assert_eq!(seen[9], vec![2, 3, 4]);
    }

    #[test]
    fn boxes() {
        assert_eq!(exact_volume_smallk(&boxed(&[1.5])).unwrap(), 3.0);
        assert!((exact_volume_smallk(&boxed(&[1.0, 2.0])).unwrap() - 8.0).abs() < 1e-12);
        assert!((exact_volume_smallk(&boxed(&[1.0, 2.0, 0.5])).unwrap() - 8.0).abs() < 1e-12);
        assert_eq!(vertices(&boxed(&[1.0, 1.0, 1.0])).unwrap().len(), 8);
    }

    #[test]
    fn unbounded_and_oversized() {
        let mut slab = boxed(&[1.0, 1.0]);
        slab.normals.truncate(2);
        slab.offsets.truncate(2);
        assert!(matches!(check_bounded(&slab), Err(OracleError::Unbounded { rank: 1, dim: 2 })));
        assert!(matches!(
            exact_volume_smallk(&boxed(&[1.0; 4])),
            Err(OracleError::Unsupported { .. })
        ));
    }
}
