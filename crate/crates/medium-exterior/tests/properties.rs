use medium_exact::{linalg, ratio, Mat, Rational};
use medium_exterior::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn small_int_matrix(n: usize) -> impl Strategy<Value = Mat<Rational>> {
    prop::collection::vec(-4i64..=4, n * n)
        .prop_map(move |v| Mat::from_vec(n, n, v.into_iter().map(|x| ratio(x, 1)).collect()))
}

fn invertible4() -> impl Strategy<Value = Mat<Rational>> {
    small_int_matrix(4).prop_filter("invertible", |j| !linalg::det(j).eq(&ratio(0, 1)))
}

fn random_metric(rng: &mut ChaCha8Rng, diagonal: bool) -> PseudoMetric4 {
    loop {
        let m = if diagonal {
            Mat::diag(&std::array::from_fn::<f64, 4, _>(|_| {
                let x: f64 = rng.random_range(0.2..3.0);
                if rng.random_bool(0.5) { -x } else { x }
            }))
        } else {
            let a = Mat::from_fn(4, 4, |_, _| rng.random_range(-2.0..2.0));
            &a + &a.transpose()
        };
        // Keep the spectrum within [0.25, 4] in absolute value.
        let eig = nalgebra::SymmetricEigen::new(m.to_nalgebra()).eigenvalues;
        if eig.iter().all(|x| (0.25..=4.0).contains(&x.abs())) {
            return PseudoMetric4::new(&m).unwrap();
        }
    }
}

proptest! {
    #[test]
    fn compound_is_functorial(j1 in invertible4(), j2 in invertible4()) {
        let lhs = induced_bivector_transform(&(&j1 * &j2)).unwrap();
        let rhs = &induced_bivector_transform(&j1).unwrap() * &induced_bivector_transform(&j2).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pairing_is_a_density(j in invertible4()) {
        let p = induced_bivector_transform(&j).unwrap();
        let b = pairing_matrix::<Rational>();
        let d = linalg::det(&j);
        prop_assert_eq!(&(&p * &b) * &p.transpose(), b.scale(&d));
        prop_assert_eq!(linalg::det(&p), d.clone() * d.clone() * d);
    }

    #[test]
    fn coordinate_changes_compose(a in small_int_matrix(6), j1 in invertible4(), j2 in invertible4()) {
        let step = conjugate_by_coordinates(&conjugate_by_coordinates(&a, &j1).unwrap(), &j2).unwrap();
        prop_assert_eq!(step, conjugate_by_coordinates(&a, &(&j2 * &j1)).unwrap());
    }

    #[test]
    fn coordinate_changes_preserve_trace_and_parts(a in small_int_matrix(6), j in invertible4()) {
        let at = conjugate_by_coordinates(&a, &j).unwrap();
        prop_assert_eq!(trace22(&at), trace22(&a));
        let parts = decompose(&a);
        let moved = decompose(&at);
        prop_assert_eq!(moved.skewon, conjugate_by_coordinates(&parts.skewon, &j).unwrap());
        prop_assert_eq!(moved.principal, conjugate_by_coordinates(&parts.principal, &j).unwrap());
    }

    #[test]
    fn decomposition_is_idempotent(a in small_int_matrix(6)) {
        let parts = decompose(&a);
        prop_assert_eq!(parts.reconstruct(), a);
        let z = decompose(&parts.principal);
        prop_assert!(z.skewon.is_zero() && z.axion_coefficient == ratio(0, 1));
        prop_assert_eq!(&z.principal, &parts.principal);
        let w = decompose(&parts.skewon);
        prop_assert!(w.principal.is_zero() && w.axion_coefficient == ratio(0, 1));
        let b = pairing_matrix::<Rational>();
        let bz = &b * &parts.principal;
        prop_assert_eq!(bz.transpose(), bz);
        let bw = &b * &parts.skewon;
        prop_assert_eq!(bw.transpose(), -bw);
    }

    #[test]
    fn plucker_factor_recovers_wedges(a in prop::array::uniform4(-3.0f64..3.0), b in prop::array::uniform4(-3.0f64..3.0)) {
        let q = wedge(&a, &b);
        prop_assume!(q.iter().fold(0.0f64, |m, x| m.max(x.abs())) > 1e-3);
        let (x, y) = plucker_factor(&q, 1e-9).unwrap();
        let back = wedge(&x, &y);
        for k in 0..6 {
            prop_assert!((back[k] - q[k]).abs() < 1e-12 * (1.0 + q[k].abs()) * 10.0);
        }
    }
}

/// Rank of `A ↦ part(A)` on the 36 elementary matrices.
fn projector_rank(part: impl Fn(&Mat<Rational>) -> Mat<Rational>) -> usize {
    let cols: Vec<Vec<Rational>> = (0..36)
        .map(|k| {
            let e = Mat::from_fn(6, 6, |i, j| if i * 6 + j == k { ratio(1, 1) } else { ratio(0, 1) });
            part(&e).as_slice().to_vec()
        })
        .collect();
    linalg::rank(&Mat::from_columns(&cols))
}

#[test]
fn projector_ranks() {
    assert_eq!(projector_rank(|a| decompose(a).principal), 20);
    assert_eq!(projector_rank(|a| decompose(a).skewon), 15);
    assert_eq!(projector_rank(|a| Mat::identity(6).scale(&decompose(a).axion_coefficient)), 1);
}

#[test]
fn epsilon_contraction_exhaustive() {
    for k in 0..4 {
        for l in 0..4 {
            for r in 0..4 {
                for s in 0..4 {
                    let mut lhs = 0;
                    for i in 0..4 {
                        for j in 0..4 {
                            lhs += levi_civita(i, j, k, l) * levi_civita(i, j, r, s);
                        }
                    }
                    let d = |a: usize, b: usize| (a == b) as i32;
                    assert_eq!(lhs, 2 * (d(k, r) * d(l, s) - d(k, s) * d(l, r)));
                }
            }
        }
    }
}

#[test]
fn hodge_square_and_conformal_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 0..200 {
        let g = random_metric(&mut rng, n % 2 == 0);
        let star = hodge_star_matrix(&g);
        let sq = &star * &star;
        let target = Mat::identity(6).scale(&g.det().signum());
        assert!(sq.max_diff(&target) < 1e-10, "square residual {}", sq.max_diff(&target));
        let lambda = rng.random_range(0.1..10.0);
        let scaled = PseudoMetric4::new(&g.matrix().scale(&lambda)).unwrap();
        assert!(hodge_star_matrix(&scaled).max_diff(&star) < 1e-10);
    }
}

#[test]
fn mixing_relation() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for n in 0..100 {
        let g = random_metric(&mut rng, n < 50);
        let h = random_metric(&mut rng, n < 50);
        let k = mix_metrics(&g, &h).unwrap();
        let sg = hodge_star_matrix(&g);
        let sg_inv = Mat::from_nalgebra(&sg.to_nalgebra().try_inverse().unwrap());
        let rhs = (&(&sg_inv * &hodge_star_matrix(&h)) * &sg).scale(&(g.det() / h.det()).signum());
        let res = hodge_star_matrix(&k).max_diff(&rhs);
        assert!(res < 1e-10, "mixing residual {res}");
    }
}

#[test]
fn mixing_examples() {
    let e = PseudoMetric4::diagonal([1.0; 4]).unwrap();
    let l = PseudoMetric4::diagonal([-1.0, 1.0, 1.0, 1.0]).unwrap();
    assert_eq!(mix_metrics(&l, &l).unwrap().matrix(), l.matrix());
    assert_eq!(mix_metrics(&e, &l).unwrap().matrix(), l.matrix());
}

#[test]
fn lorentz_hodge_blocks() {
    let l = PseudoMetric4::diagonal([-1.0, 1.0, 1.0, 1.0]).unwrap();
    let expected = Mat::from_fn(6, 6, |i, j| match () {
        _ if i < 3 && j == i + 3 => 1.0,
        _ if i >= 3 && j + 3 == i => -1.0,
        _ => 0.0,
    });
    assert_eq!(hodge_star_matrix(&l), expected);
}

#[test]
fn area_metric_round_trip_and_symmetry() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for n in 0..50 {
        let a = Mat::from_fn(6, 6, |_, _| rng.random_range(-1.0..1.0));
        let g = random_metric(&mut rng, n % 2 == 0);
        let area = area_metric_matrix(&a, &g);
        let back = area_metric_inverse(&area.matrix, &g);
        assert!(back.max_diff(&a) < 1e-12, "round trip {}", back.max_diff(&a));
        assert!(!area.is_symmetric(1e-9));
        let parts = decompose(&a);
        let skew_free = &parts.principal + &Mat::identity(6).scale(&parts.axion_coefficient);
        assert!(area_metric_matrix(&skew_free, &g).is_symmetric(1e-12));
    }
    let e = PseudoMetric4::diagonal([1.0; 4]).unwrap();
    assert_eq!(area_metric_matrix(&Mat::identity(6), &e).matrix, pairing_matrix::<f64>());
}

#[test]
fn frame_factorization_covers_every_branch() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut seen = [false; 4];
    for n in 0..200 {
        let x = loop {
            let x = Mat::from_fn(4, 4, |_, _| rng.random_range(-2.0..2.0));
            if linalg::det(&x) > 0.2 {
                break x;
            }
        };
        // Columns of `x` are the covectors; the generated system is `H·C₂(X)`.
        let c2 = compound2(&x);
        let (t_mat, alpha) = match n % 4 {
            0 => (c2, 1),
            1 => (-c2, 0),
            2 => (&hodge_basis::<f64>(2) * &c2, 2),
            _ => (&hodge_basis::<f64>(3) * &c2, 3),
        };
        let t: [TwoForm; 6] = std::array::from_fn(|j| std::array::from_fn(|i| t_mat[(i, j)]));
        let f = factor_frame(&t, 1e-9).unwrap();
        assert!(f.residual < 1e-8, "residual {}", f.residual);
        assert!(f.det.abs() > 1e-3);
        assert_eq!(f.alpha, alpha);
        seen[match f.branch {
            Branch::ZeroD { .. } => 0,
            Branch::Generic { .. } => 1,
            Branch::ZeroZeta { .. } => 2,
        }] = true;
    }
    assert_eq!(seen, [true, true, false, false], "ζ = 0 only occurs on a measure-zero set");

    // Diagonal frames keep T^03 free of a ξ⁰∧ζ part, which forces the ζ = 0 branch.
    let mut sigmas = Vec::new();
    for n in 0..40 {
        let x = Mat::diag(&[0, 1, 2, 3].map(|_| rng.random_range(0.5..2.0)));
        let alpha = 2 + (n % 2) as u8;
        let t_mat = &hodge_basis::<f64>(alpha) * &compound2(&x);
        let t: [TwoForm; 6] = std::array::from_fn(|j| std::array::from_fn(|i| t_mat[(i, j)]));
        let f = factor_frame(&t, 1e-9).unwrap();
        assert!(f.residual < 1e-8, "residual {}", f.residual);
        assert_eq!(f.alpha, alpha);
        match f.branch {
            Branch::ZeroZeta { sigma } => sigmas.push(sigma),
            b => panic!("expected the ζ = 0 branch, got {b:?}"),
        }
    }
    assert!(sigmas.contains(&1) && sigmas.contains(&-1));
}

#[test]
fn factor_frame_rejects_bad_systems() {
    let t: [TwoForm; 6] = [[1.0, 0.0, 0.0, 0.0, 0.0, 0.0]; 6];
    assert!(matches!(factor_frame(&t, 1e-9), Err(ExteriorError::WedgeGram { .. })));
    assert!(matches!(factor_frame(&[[0.0; 6]; 6], 1e-9), Err(ExteriorError::ZeroForm)));
}
