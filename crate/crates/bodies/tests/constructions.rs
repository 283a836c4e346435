use approx::assert_abs_diff_eq;
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use slicebound_bodies::*;
use slicebound_decomp::{lift_nonsymmetric, project, random_rotation, Subspace, Tolerances};

fn tol() -> Tolerances {
    Tolerances::default()
}

#[test]
fn sylvester_small_orders() {
    assert_eq!(sylvester_hadamard(1).unwrap(), DMatrix::from_element(1, 1, 1.0));
    assert_eq!(
        sylvester_hadamard(2).unwrap(),
        DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, -1.0])
    );
    let h8 = sylvester_hadamard(8).unwrap();
    assert_eq!(h8.transpose() * &h8, DMatrix::identity(8, 8) * 8.0);
    assert!(h8.iter().all(|x| x.abs() == 1.0));
    assert!(matches!(sylvester_hadamard(6), Err(BodiesError::UnsupportedOrder(6))));
}

#[test]
fn hadamard_decompositions() {
    let d = hadamard_decomposition(2, 3).unwrap();
    assert_eq!(d.len(), 4);
    assert!(d.weights().iter().all(|&c| c == 0.75));
    assert!(!d.centered());
    let d = hadamard_decomposition(4, 4).unwrap();
    assert_eq!(d.len(), 8);
    assert!(d.weights().iter().all(|&c| c == 0.5));
    assert!(matches!(hadamard_decomposition(2, 5), Err(BodiesError::HadamardRange { .. })));
    assert!(hadamard_decomposition(3, 4).is_err());
    for (k, n) in [(1, 1), (1, 2), (2, 2), (2, 3), (2, 4), (4, 5), (4, 8), (8, 12)] {
        let report = hadamard_decomposition(k, n).unwrap().validate(&tol());
        assert!(report.passed());
        assert!(report.residual("identity_resolution").unwrap() <= 1e-10);
    }
}

#[test]
fn hadamard_exact_sections() {
    assert_abs_diff_eq!(hadamard_section_exact(2, 3).unwrap(), 6.0, epsilon = 1e-12);
    assert_abs_diff_eq!(hadamard_section_exact(4, 4).unwrap(), 16.0, epsilon = 1e-12);
    assert_abs_diff_eq!(hadamard_section_exact(4, 8).unwrap(), 64.0, epsilon = 1e-12);
}

#[test]
fn hadamard_plane_section_is_a_rotated_square() {
    let d = hadamard_decomposition(2, 3).unwrap();
    let p = project(&d, &Subspace::leading_coordinates(3, 2).unwrap(), &tol()).unwrap();
    let poly = section_polytope(&p);
    assert_eq!(poly.len(), 4);
    for (a, b) in poly.constraints() {
        assert_abs_diff_eq!(b, 1.5f64.sqrt(), epsilon = 1e-14);
        assert_abs_diff_eq!(a[0].abs(), 0.5f64.sqrt(), epsilon = 1e-14);
    }
    // Vertices of the square of side 2 sqrt(3/2) rotated by 45 degrees lie on the axes.
    let r = 3f64.sqrt();
    assert!(poly.max_violation(&[r, 0.0]).abs() < 1e-14);
    assert!(!poly.contains(&[r + 1e-9, 0.0]));
}

#[test]
fn cube_section_is_deduplicated() {
    let d = cube_decomposition(5).unwrap();
    let p = project(&d, &Subspace::leading_coordinates(5, 3).unwrap(), &tol()).unwrap();
    let poly = section_polytope(&p);
    assert_eq!(poly.len(), 6);
    assert!(poly.symmetric);
    assert!(poly.contains(&[1.0, -1.0, 1.0]));
    assert!(!poly.contains(&[1.0 + 1e-12, 0.0, 0.0]));
}

#[test]
fn simplex_in_the_plane() {
    let d = simplex_decomposition(2).unwrap();
    assert!(d.centered());
    assert!(d.centering_residual() <= 1e-12);
    for w in &d.weights()[..] {
        assert_abs_diff_eq!(*w, 2.0 / 3.0, epsilon = 1e-15);
    }
    let v = d.vectors();
    for i in 0..3 {
        for j in 0..i {
            let angle = v[i].dot(&v[j]).acos().to_degrees();
            assert_abs_diff_eq!(angle, 120.0, epsilon = 1e-10);
        }
    }
    // u_1 - u_2 points along (1, -1).
    let diff = &v[0] - &v[1];
    assert_abs_diff_eq!(diff[0], -diff[1], epsilon = 1e-14);
    assert!(diff[0] > 0.0);
}

#[test]
fn canonical_systems_validate() {
    assert!(cube_decomposition(3).unwrap().validate(&tol()).passed());
    assert!(standard_basis_decomposition(4).unwrap().validate(&tol()).passed());
    for n in 1..=8 {
        assert!(simplex_decomposition(n).unwrap().validate(&tol()).passed(), "n = {n}");
    }
    assert!(matches!(cube_decomposition(0), Err(BodiesError::ZeroDimension)));
}

#[test]
fn kp_ball_with_p_two_is_euclidean() {
    let ball = KpBall::new(standard_basis_decomposition(3).unwrap(), 2.0, vec![1.0; 3]).unwrap();
    let x = DVector::from_vec(vec![0.3, -1.2, 2.0]);
    assert_abs_diff_eq!(ball.norm(&x), x.norm(), epsilon = 1e-14);
    let cross = cross_polytope_ball(3).unwrap();
    assert_abs_diff_eq!(cross.norm(&x), 3.5, epsilon = 1e-14);
    assert!(matches!(
        KpBall::new(standard_basis_decomposition(2).unwrap(), 2.5, vec![1.0; 2]),
        Err(BodiesError::BadExponent(_))
    ));
    assert!(KpBall::new(standard_basis_decomposition(2).unwrap(), 1.5, vec![1.0]).is_err());
    assert!(KpBall::new(standard_basis_decomposition(2).unwrap(), 1.5, vec![1.0, 0.0]).is_err());
}

#[test]
fn kp_section_membership() {
    let ball = cross_polytope_ball(3).unwrap();
    let h = Subspace::orthogonal_to(3, &[vec![1.0, 1.0, 1.0]]).unwrap();
    let s = ball.section(&h, &tol()).unwrap();
    // Hexagon with vertices (1, -1, 0)/2 and permutations.
    let vertex = DVector::from_vec(vec![0.5, -0.5, 0.0]);
    let y: Vec<f64> = h.coords(&vertex).iter().copied().collect();
    assert_abs_diff_eq!(s.norm_p(&y), 1.0, epsilon = 1e-14);
    assert!(s.envelope_radius() >= vertex.norm());
}

#[test]
fn simplex_median_section() {
    let d = simplex_decomposition(2).unwrap();
    let a = [0.5f64.sqrt(), -(0.5f64.sqrt())];
    let f = Subspace::orthogonal_to(2, &[a.to_vec()]).unwrap();
    let nl = lift_nonsymmetric(&d, &f, &tol()).unwrap();
    let mut kappa = nl.kappa().to_vec();
    kappa.sort_by(f64::total_cmp);
    assert_abs_diff_eq!(kappa[0], 0.5, epsilon = 1e-14);
    assert_abs_diff_eq!(kappa[1], 0.5, epsilon = 1e-14);
    assert_abs_diff_eq!(kappa[2], 1.0, epsilon = 1e-14);
    let poly = nonsym_section_polytope(&nl);
    assert!(!poly.symmetric);
    assert_eq!(poly.dim, 1);
    // The median of a triangle with inradius 1 has length 3.
    let upper = poly.constraints().filter(|(n, _)| n[0] > 0.0).map(|(n, b)| b / n[0]).fold(f64::INFINITY, f64::min);
    let lower = poly.constraints().filter(|(n, _)| n[0] < 0.0).map(|(n, b)| b / n[0]).fold(f64::NEG_INFINITY, f64::max);
    assert_abs_diff_eq!(upper - lower, 3.0, epsilon = 1e-12);
}

#[test]
fn simplex_hyperplane_polytope_has_all_facets() {
    for n in 2..=6 {
        let d = simplex_decomposition(n).unwrap();
        let mut a = vec![0.0; n];
        a[0] = 0.5f64.sqrt();
        a[1] = -(0.5f64.sqrt());
        let f = Subspace::orthogonal_to(n, &[a]).unwrap();
        let poly = nonsym_section_polytope(&lift_nonsymmetric(&d, &f, &tol()).unwrap());
        assert_eq!(poly.dim, n - 1);
        assert_eq!(poly.len(), n + 1);
    }
}

#[test]
fn polytope_json_fields() {
    let p = project(&cube_decomposition(2).unwrap(), &Subspace::full(2).unwrap(), &tol()).unwrap();
    let value = serde_json::to_value(section_polytope(&p)).unwrap();
    for key in ["normals", "offsets", "basis", "symmetric"] {
        assert!(value.get(key).is_some(), "{key}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn simplex_inner_products(n in 1usize..=12) {
        let d = simplex_decomposition(n).unwrap();
        let v = d.vectors();
        for i in 0..=n {
            prop_assert!((v[i].norm() - 1.0).abs() <= 1e-12);
            for j in 0..i {
                prop_assert!((v[i].dot(&v[j]) + 1.0 / n as f64).abs() <= 1e-12);
            }
        }
        prop_assert!(d.centering_residual() <= 1e-12);
    }

    #[test]
    fn section_sits_between_unit_ball_and_envelope(seed in any::<u64>(), which in 0usize..3, k_frac in 0.01f64..1.0) {
        let d = match which {
            0 => cube_decomposition(4).unwrap(),
            1 => hadamard_decomposition(4, 6).unwrap(),
            _ => simplex_decomposition(4).unwrap(),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = d.rotated(&random_rotation(d.dim(), &mut rng));
        let k = ((k_frac * d.dim() as f64).ceil() as usize).max(1);
        let h = Subspace::random(d.dim(), k, &mut rng).unwrap();
        let p = project(&d, &h, &tol()).unwrap();
        let poly = section_polytope(&p);
        prop_assert!(p.thresholds().iter().all(|t| *t >= 1.0 - 1e-12));
        // Along random rays, the boundary lies between radius 1 and the envelope radius.
        for _ in 0..20 {
            let dir = Subspace::random(k, 1, &mut rng).unwrap().basis()[0].clone();
            let exit = poly
                .constraints()
                .filter_map(|(a, b)| {
                    let s: f64 = a.iter().zip(dir.iter()).map(|(x, y)| x * y).sum();
                    (s > 0.0).then(|| b / s)
                })
                .fold(f64::INFINITY, f64::min);
            prop_assert!(exit >= 1.0 - 1e-12);
            prop_assert!(exit <= poly.envelope_radius + 1e-12);
        }
    }
}
