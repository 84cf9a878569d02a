use medium_canonical::*;
use medium_exact::Mat;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Eigenvalues spaced at least 0.1 apart.
fn separated(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.random_range(-2.0..2.0)).collect();
        if v.iter().enumerate().all(|(i, a)| v[i + 1..].iter().all(|b| (a - b).abs() >= 0.1)) {
            return v;
        }
    }
}

fn random_form(rng: &mut ChaCha8Rng, segre: &SegreType) -> (JordanForm, Vec<i8>) {
    let nr = segre.real.len();
    let nc = segre.complex.len();
    let values = separated(rng, nr + nc);
    let mut real: Vec<(RealBlock, i8)> = segre
        .real
        .iter()
        .zip(&values)
        .map(|(&size, &eigenvalue)| (RealBlock { eigenvalue, size }, if rng.random_bool(0.5) { 1 } else { -1 }))
        .collect();
    real.sort_by(|(x, sx), (y, sy)| y.size.cmp(&x.size).then(sx.cmp(sy)).then(x.eigenvalue.total_cmp(&y.eigenvalue)));
    let mut complex: Vec<ComplexBlock> = segre
        .complex
        .iter()
        .zip(&values[nr..])
        .map(|(&half_size, &sigma)| ComplexBlock { sigma, tau: rng.random_range(0.2..2.0), half_size })
        .collect();
    complex.sort_by(|x, y| y.half_size.cmp(&x.half_size).then(x.sigma.total_cmp(&y.sigma)));
    let signs = real.iter().map(|(_, s)| *s).collect();
    (JordanForm { real_blocks: real.into_iter().map(|(b, _)| b).collect(), complex_blocks: complex }, signs)
}

fn random_transform(rng: &mut ChaCha8Rng) -> Mat<f64> {
    loop {
        let l = Mat::from_fn(6, 6, |i, j| if i == j { 2.0 } else { 0.0 } + rng.random_range(-1.0..1.0));
        let sv = l.to_nalgebra().singular_values();
        if sv.max() / sv.min() <= 20.0 {
            return l;
        }
    }
}

fn inv(m: &Mat<f64>) -> Mat<f64> {
    Mat::from_nalgebra(&m.to_nalgebra().try_inverse().unwrap())
}

#[test]
fn pairs_pushed_through_random_transforms_are_recovered() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let types = SegreType::all();
    let mut worst = (0.0f64, 0.0f64);
    for n in 0..200 {
        let segre = &types[n % types.len()];
        let (form, signs) = random_form(&mut rng, segre);
        let v = assemble_blocks(&form).unwrap();
        let w = companion_matrix(&form, &signs).unwrap();
        let l = random_transform(&mut rng);
        let li = inv(&l);
        let a = &(&l * &v) * &li;
        let b = &(&li.transpose() * &w) * &li;
        let b = Mat::from_fn(6, 6, |i, j| 0.5 * (b[(i, j)] + b[(j, i)]));
        let p = h_canonical_pair(&a, &b, 1e-9).unwrap_or_else(|e| panic!("case {n} {segre}: {e}"));
        assert_eq!(p.form.segre(), *segre, "case {n}");
        assert_eq!(p.signs, signs, "case {n} {segre}");
        for (x, y) in p.form.real_blocks.iter().zip(&form.real_blocks) {
            assert!((x.eigenvalue - y.eigenvalue).abs() < 1e-5, "case {n}: {} vs {}", x.eigenvalue, y.eigenvalue);
        }
        assert!(p.similarity_residual < 1e-8, "case {n} {segre}: similarity {}", p.similarity_residual);
        assert!(p.congruence_residual < 1e-8, "case {n} {segre}: congruence {}", p.congruence_residual);
        worst = (worst.0.max(p.similarity_residual), worst.1.max(p.congruence_residual));

        let j = real_jordan(&a, 1e-9).unwrap();
        assert_eq!(j.form.segre(), *segre);
        assert!(j.residual < 1e-8, "case {n}: jordan residual {}", j.residual);
    }
    eprintln!("worst residuals: similarity {:e}, congruence {:e}", worst.0, worst.1);
}

#[test]
fn sign_characteristic_is_congruence_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for segre in SegreType::all() {
        let (form, signs) = random_form(&mut rng, &segre);
        let v = assemble_blocks(&form).unwrap();
        let w = companion_matrix(&form, &signs).unwrap();
        let m = random_transform(&mut rng);
        let a = &(&inv(&m) * &v) * &m;
        let b = &(&m.transpose() * &w) * &m;
        let b = Mat::from_fn(6, 6, |i, j| 0.5 * (b[(i, j)] + b[(j, i)]));
        let p = h_canonical_pair(&a, &b, 1e-9).unwrap();
        assert_eq!(p.signs, signs);
        // Sylvester: negative count of W equals that of B.
        let neg_w = signs.iter().zip(&form.real_blocks).map(|(&s, b)| if s < 0 { b.size.div_ceil(2) } else { b.size / 2 }).sum::<usize>()
            + form.complex_blocks.iter().map(|b| b.half_size).sum::<usize>();
        let neg_b = nalgebra::SymmetricEigen::new(b.to_nalgebra()).eigenvalues.iter().filter(|&&x| x < 0.0).count();
        assert_eq!(neg_w, neg_b);
    }
}
