#![allow(dead_code)]

use slicebound_decomp::JohnDecomposition;

pub fn cube(n: usize) -> JohnDecomposition {
    let mut vectors = Vec::new();
    for j in 0..n {
        for sign in [1.0, -1.0] {
            let mut e = vec![0.0; n];
            e[j] = sign;
            vectors.push(e);
        }
    }
    JohnDecomposition::new(n, vectors, vec![0.5; 2 * n], true).unwrap()
}

/// Upper `n` rows of the Sylvester matrix of order `2k`, columns scaled to unit length.
pub fn hadamard(k: usize, n: usize) -> JohnDecomposition {
    let m = 2 * k;
    let entry = |i: usize, j: usize| if (i & j).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
    let scale = (n as f64).sqrt();
    let vectors = (0..m)
        .map(|j| (0..n).map(|i| entry(i, j) / scale).collect())
        .collect();
    JohnDecomposition::new(n, vectors, vec![n as f64 / m as f64; m], false).unwrap()
}

/// Regular simplex directions in `R^n` built from `e_j - 1/(n+1)` in `R^(n+1)`, weights `n/(n+1)`.
pub fn simplex(n: usize) -> JohnDecomposition {
    let m = n + 1;
    // Orthonormal basis of the hyperplane sum x = 0 via Helmert rows.
    let basis: Vec<Vec<f64>> = (1..m)
        .map(|r| {
            let norm = ((r * (r + 1)) as f64).sqrt();
            (0..m)
                .map(|i| match i.cmp(&r) {
                    std::cmp::Ordering::Less => 1.0 / norm,
                    std::cmp::Ordering::Equal => -(r as f64) / norm,
                    std::cmp::Ordering::Greater => 0.0,
                })
                .collect()
        })
        .collect();
    let scale = ((n + 1) as f64 / n as f64).sqrt();
    let vectors = (0..m)
        .map(|j| {
            basis
                .iter()
                .map(|b| {
                    let ej_minus_mean: f64 = (0..m)
                        .map(|i| b[i] * (if i == j { 1.0 } else { 0.0 } - 1.0 / m as f64))
                        .sum();
                    scale * ej_minus_mean
                })
                .collect()
        })
        .collect();
    JohnDecomposition::new(n, vectors, vec![n as f64 / m as f64; m], true).unwrap()
}
