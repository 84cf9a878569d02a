use medium_canonical::*;
use medium_exact::Mat;
use proptest::prelude::*;

fn inv(m: &Mat<f64>) -> Mat<f64> {
    Mat::from_nalgebra(&m.to_nalgebra().try_inverse().unwrap())
}

fn well_conditioned() -> impl Strategy<Value = Mat<f64>> {
    prop::collection::vec(-4i32..=4, 36)
        .prop_map(|v| Mat::from_fn(6, 6, |i, j| v[i * 6 + j] as f64 / 4.0 + if i == j { 3.0 } else { 0.0 }))
        .prop_filter("condition number at most 20", |q| {
            let sv = q.to_nalgebra().singular_values();
            sv.max() / sv.min() <= 20.0
        })
}

fn sample_form() -> JordanForm {
    JordanForm {
        real_blocks: vec![RealBlock { eigenvalue: 3.0, size: 2 }, RealBlock { eigenvalue: 3.0, size: 2 }],
        complex_blocks: vec![ComplexBlock { sigma: 0.0, tau: 1.0, half_size: 1 }],
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jordan_form_is_similarity_invariant(q in well_conditioned()) {
        let a = Mat::from_fn(6, 6, |i, j| match (i, j) {
            (0, 0) | (1, 1) => 1.0,
            (0, 1) => 1.0,
            (2, 2) => -0.5,
            (3, 3) | (4, 4) => 0.25,
            (3, 4) => 2.0,
            (4, 3) => -2.0,
            (5, 5) => 2.0,
            _ => 0.0,
        });
        let base = real_jordan(&a, 1e-9).unwrap();
        let moved = real_jordan(&(&(&q * &a) * &inv(&q)), 1e-9).unwrap();
        prop_assert_eq!(base.form.segre(), moved.form.segre());
        for (x, y) in base.form.blocks().iter().zip(moved.form.blocks()) {
            prop_assert!(x.matrix().max_diff(&y.matrix()) < 1e-7);
        }
        prop_assert!(moved.residual < 1e-9);
    }

    #[test]
    fn repeated_blocks_are_recovered(q in well_conditioned()) {
        let v = assemble_blocks(&sample_form()).unwrap();
        let d = real_jordan(&(&(&q * &v) * &inv(&q)), 1e-9).unwrap();
        prop_assert_eq!(d.form.segre(), SegreType::new(vec![2, 2], vec![1]));
        prop_assert!(d.form.blocks().iter().zip(sample_form().blocks()).all(|(x, y)| x.matrix().max_diff(&y.matrix()) < 1e-6));
    }

    #[test]
    fn block_permutations_reorder_contents(vals in prop::collection::vec(-5.0f64..5.0, 12)) {
        let blocks: Vec<Mat<f64>> = (0..3).map(|b| Mat::from_fn(2, 2, |i, j| vals[4 * b + 2 * i + j])).collect();
        let perm = [1, 2, 0];
        let p = permutation_for_blocks(&[2, 2, 2], &perm).unwrap();
        let m = Mat::direct_sum(&blocks);
        let permuted = Mat::direct_sum(&perm.iter().map(|&i| blocks[i].clone()).collect::<Vec<_>>());
        prop_assert_eq!(&(&p.transpose() * &m) * &p, permuted);
        prop_assert_eq!(&p.transpose() * &p, Mat::identity(6));
    }
}

#[test]
fn symmetric_involution_spectrum() {
    let h2 = Mat::from_fn(6, 6, |i, j| if i + 3 == j || j + 3 == i { 1.0 } else { 0.0 });
    let d = real_jordan(&h2, 1e-9).unwrap();
    let eig: Vec<f64> = d.form.real_blocks.iter().map(|b| b.eigenvalue).collect();
    assert_eq!(d.form.real_blocks.len(), 6);
    for (e, x) in eig.iter().zip([-1.0, -1.0, -1.0, 1.0, 1.0, 1.0]) {
        assert!((e - x).abs() < 1e-12);
    }
}

#[test]
fn preconditions_are_checked() {
    let h2 = Mat::from_fn(6, 6, |i, j| if i + 3 == j || j + 3 == i { 1.0 } else { 0.0 });
    let mut asym = h2.clone();
    asym[(0, 1)] = 1.0;
    assert!(matches!(h_canonical_pair(&Mat::identity(6), &asym, 1e-9), Err(CanonicalError::AsymmetricForm { .. })));
    let mut sing = h2.clone();
    sing[(0, 3)] = 0.0;
    sing[(3, 0)] = 0.0;
    assert!(matches!(h_canonical_pair(&Mat::identity(6), &sing, 1e-9), Err(CanonicalError::SingularForm)));
    let mut a = Mat::identity(6);
    a[(0, 1)] = 1.0;
    assert!(matches!(h_canonical_pair(&a, &h2, 1e-9), Err(CanonicalError::NotSelfAdjoint { .. })));
}

#[test]
fn segre_labels_of_examples() {
    assert_eq!(sample_form().segre().label(), "[22 11̄]");
}

#[test]
fn defective_pair_with_rounded_discriminant() {
    // The Schur form of this conjugate of R₂(3)⊕R₂(3)⊕C₂ has a 2×2 block
    // whose discriminant rounds to a tiny negative number.
    let q = Mat::from_vec(6, 6, vec![
        3.25, -1.0, 0.0, -0.5, -0.5, 0.5, -0.25, 4.0, -0.5, 0.75, 1.0, 0.25, 1.0, 0.0, 3.75, 0.0, 0.25, -0.25,
        1.0, 0.75, 0.75, 3.75, -0.25, -0.25, -0.25, -1.0, -1.0, 0.0, 4.0, -0.25, -0.75, 1.0, -0.75, -0.25, 1.0, 2.25,
    ]);
    let v = assemble_blocks(&sample_form()).unwrap();
    let d = real_jordan(&(&(&q * &v) * &inv(&q)), 1e-9).unwrap();
    assert_eq!(d.form.segre(), SegreType::new(vec![2, 2], vec![1]));
}
