mod common;

use approx::assert_abs_diff_eq;
use nalgebra::DVector;
use slicebound_decomp::*;

fn tol() -> Tolerances {
    Tolerances::default()
}

#[test]
fn cube_validates_exactly() {
    let report = common::cube(3).validate(&tol());
    assert!(report.passed());
    for c in &report.checks {
        assert!(c.residual <= 1e-12, "{}: {}", c.name, c.residual);
    }
}

#[test]
fn overshooting_weights_fail_with_residual_one() {
    let d = JohnDecomposition::new(2, vec![vec![1.0, 0.0], vec![0.0, 1.0]], vec![1.0, 2.0], false).unwrap();
    let report = d.validate(&tol());
    assert!(!report.passed());
    assert_abs_diff_eq!(report.residual("identity_resolution").unwrap(), 1.0, epsilon = 1e-12);
}

#[test]
fn structural_errors() {
    assert!(matches!(
        JohnDecomposition::new(2, vec![vec![1.0, 0.0], vec![0.0]], vec![1.0, 1.0], false),
        Err(DecompError::DimensionMismatch { index: 1, .. })
    ));
    assert!(matches!(
        JohnDecomposition::new(2, vec![vec![1.0, 0.0]], vec![1.0], false),
        Err(DecompError::TooFewVectors { .. })
    ));
    assert!(matches!(
        JohnDecomposition::new(1, vec![vec![1.0]], vec![-1.0], false),
        Err(DecompError::BadWeight { .. })
    ));
}

#[test]
fn hadamard_systems_validate() {
    // Independent check: (1/2k) sum beta beta^T over the +-1 columns of a Sylvester block.
    for (k, n) in [(2, 3), (4, 4), (4, 8), (2, 4)] {
        let d = common::hadamard(k, n);
        assert!(d.validate(&tol()).passed(), "({k},{n})");
        assert_abs_diff_eq!(d.weights()[0], n as f64 / (2 * k) as f64, epsilon = 1e-15);
    }
}

#[test]
fn json_round_trip_and_unknown_fields() {
    let d = common::simplex(3);
    let text = serde_json::to_string(&d).unwrap();
    let back: JohnDecomposition = serde_json::from_str(&text).unwrap();
    assert_eq!(d, back);
    let bad = r#"{"dim": 1, "vectors": [[1]], "weights": [1], "extra": 0}"#;
    assert!(serde_json::from_str::<JohnDecomposition>(bad).is_err());
    let short = r#"{"dim": 2, "vectors": [[1, 0], [0, 1, 0]], "weights": [1, 1]}"#;
    assert!(serde_json::from_str::<JohnDecomposition>(short).is_err());
}

#[test]
fn cube_coordinate_projection() {
    let h = Subspace::leading_coordinates(4, 2).unwrap();
    let p = project(&common::cube(4), &h, &tol()).unwrap();
    assert_eq!(p.support(), &[0, 1, 2, 3]);
    for (&ct, &t) in p.tilde_weights().iter().zip(p.thresholds()) {
        assert_abs_diff_eq!(ct, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(t, 1.0, epsilon = 1e-15);
    }
    assert!(p.is_valid(&tol()));
}

#[test]
fn full_space_projection_keeps_everything() {
    let d = common::hadamard(2, 3);
    let p = project(&d, &Subspace::full(3).unwrap(), &tol()).unwrap();
    assert_eq!(p.m0(), 4);
    for (ct, c) in p.tilde_weights().iter().zip(d.weights()) {
        assert_abs_diff_eq!(ct, c, epsilon = 1e-14);
    }
    assert!(p.thresholds().iter().all(|t| (t - 1.0).abs() < 1e-14));
}

#[test]
fn hadamard_plane_gives_half_weights() {
    // c = 3/4 and |P_H v|^2 = 2/3.
    let p = project(&common::hadamard(2, 3), &Subspace::leading_coordinates(3, 2).unwrap(), &tol()).unwrap();
    for &ct in p.tilde_weights() {
        assert_abs_diff_eq!(ct, 0.5, epsilon = 1e-14);
    }
}

#[test]
fn ambient_mismatch_is_an_error() {
    let h = Subspace::leading_coordinates(2, 1).unwrap();
    assert!(matches!(
        project(&common::cube(3), &h, &tol()),
        Err(DecompError::AmbientMismatch { .. })
    ));
}

#[test]
fn near_threshold_indices_are_reported() {
    let eps: f64 = 1e-10;
    let v = DVector::from_vec(vec![eps, (1.0 - eps * eps).sqrt()]);
    let d = JohnDecomposition::from_vectors(2, vec![v.clone(), -v], vec![1.0, 1.0], false).unwrap();
    let p = project(&d, &Subspace::leading_coordinates(2, 1).unwrap(), &tol()).unwrap();
    assert_eq!(p.m0(), 0);
    assert_eq!(p.near_threshold(), &[0, 1]);
}

#[test]
fn two_point_lift_in_the_plane() {
    let profile_proj = {
        let d = JohnDecomposition::new(2, vec![vec![1.0, 0.0], vec![0.0, 1.0]], vec![1.0, 1.0], false).unwrap();
        let h = Subspace::from_rows(2, &[vec![1.0, 1.0]]).unwrap();
        project(&d, &h, &tol()).unwrap()
    };
    let l = lift(&profile_proj, &tol()).unwrap();
    let r = 0.5f64.sqrt();
    assert_abs_diff_eq!(l.frame()[0][0], r, epsilon = 1e-15);
    assert_abs_diff_eq!(l.frame()[1][0], r, epsilon = 1e-15);
    assert_abs_diff_eq!(l.frame()[0][1].abs(), r, epsilon = 1e-15);
    assert_abs_diff_eq!(l.frame()[0][1], -l.frame()[1][1], epsilon = 1e-15);
    assert!(l.frame_residual() < 1e-15);
}

#[test]
fn saturated_index_is_dropped_from_complement() {
    let d = JohnDecomposition::new(
        2,
        vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![0.0, -1.0]],
        vec![1.0, 0.5, 0.5],
        false,
    )
    .unwrap();
    let p = project(&d, &Subspace::full(2).unwrap(), &tol()).unwrap();
    let l = lift(&p, &tol()).unwrap();
    assert_eq!(l.unsaturated(), &[1, 2]);
    assert!(l.frame()[0].rows(2, 1).norm() < 1e-14);
}

#[test]
fn cube_plane_lift_resolves_the_complement() {
    let p = project(&common::cube(3), &Subspace::leading_coordinates(3, 2).unwrap(), &tol()).unwrap();
    let l = lift(&p, &tol()).unwrap();
    assert_eq!(l.complement_dim(), 2);
    assert_eq!(l.complement_vectors().len(), 4);
    assert!(l.complement_residual() < 1e-12);
    for w in l.complement_vectors() {
        let first = w.iter().find(|x| x.abs() > 1e-12).unwrap();
        assert!(*first > 0.0);
    }
}

#[test]
fn lift_rejects_a_broken_projection() {
    let d = JohnDecomposition::new(2, vec![vec![1.0, 0.0], vec![0.0, 1.0]], vec![1.0, 2.0], false).unwrap();
    let p = project(&d, &Subspace::full(2).unwrap(), &tol()).unwrap();
    assert!(matches!(lift(&p, &tol()), Err(DecompError::RowsNotOrthonormal { .. })));
}

fn planar_simplex_at_90_210_330() -> JohnDecomposition {
    let vectors = [90.0f64, 210.0, 330.0]
        .iter()
        .map(|deg| vec![deg.to_radians().cos(), deg.to_radians().sin()])
        .collect();
    JohnDecomposition::new(2, vectors, vec![2.0 / 3.0; 3], true).unwrap()
}

#[test]
fn planar_simplex_lifts_to_unit_weights() {
    let d = planar_simplex_at_90_210_330();
    let nl = lift_nonsymmetric(&d, &Subspace::full(2).unwrap(), &tol()).unwrap();
    for &delta in nl.lifted_weights() {
        assert_abs_diff_eq!(delta, 1.0, epsilon = 1e-15);
    }
    assert!(nl.identity_residual() < 1e-12);
    assert!(nl.apex_residual() < 1e-12);
    // k = n: H is all of R^3, so kappa = delta.
    for &kappa in nl.kappa() {
        assert_abs_diff_eq!(kappa, 1.0, epsilon = 1e-14);
    }
}

#[test]
fn planar_simplex_antidiagonal_line() {
    let d = planar_simplex_at_90_210_330();
    let f = Subspace::from_rows(2, &[vec![1.0, 1.0]]).unwrap();
    let nl = lift_nonsymmetric(&d, &f, &tol()).unwrap();
    assert_eq!(nl.lifted_subspace().dim(), 2);
    assert!(nl.kappa_sum_residual() < 1e-12);
    // kappa_j = c_j (|P_F u_j|^2 + 1/n)
    for (j, &kappa) in nl.kappa().iter().enumerate() {
        let u = &d.vectors()[j];
        let pf = (u[0] + u[1]).powi(2) / 2.0;
        assert_abs_diff_eq!(kappa, 2.0 / 3.0 * (pf + 0.5), epsilon = 1e-14);
    }
}

#[test]
fn nonsym_rejects_uncentered_input() {
    let err = lift_nonsymmetric(&common::hadamard(2, 3), &Subspace::full(3).unwrap(), &tol()).unwrap_err();
    match err {
        DecompError::NotCentered { residual, .. } => assert!(residual > 0.1),
        other => panic!("unexpected {other:?}"),
    }
}
