//! Acceptance criteria, one PASS/FAIL line each. Runs as a plain binary.

use std::time::Instant;

use medium_canonical::{assemble_blocks, companion_matrix, h_canonical_pair, ComplexBlock, JordanForm, RealBlock, SegreType};
use medium_classify::*;
use medium_exact::linalg::{det, inertia, rank};
use medium_exact::{ratio, Mat, OrderedField, QSqrt2, Rational};
use medium_exterior::{
    conjugate_by_coordinates, decompose, factor_frame, hodge_basis, hodge_star_matrix, levi_civita, mix_metrics,
    Branch, PseudoMetric4, TwoForm,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-9;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn orientation(j: &Mat<Rational>) -> i8 {
    det(j).signum_i() as i8
}

fn rational(a: &Mat<QSqrt2>) -> Option<Mat<Rational>> {
    a.as_slice().iter().all(|x| x.is_rational()).then(|| a.map(|x| x.a.clone()))
}

fn relative_error(got: &MetaclassParams, want: &MetaclassParams) -> f64 {
    got.alphas
        .iter()
        .zip(&want.alphas)
        .chain(got.betas.iter().zip(&want.betas))
        .map(|(x, y)| (x - y).abs() / y.abs().max(1.0))
        .fold(0.0, f64::max)
}

fn round_trip() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut inputs = Vec::new();
    let mut expected = Vec::new();
    for id in MetaclassId::all() {
        for k in 0..100 {
            let p = random_params(id, &mut rng, DEFAULT_SEPARATION);
            let j = random_jacobian(&mut rng, 10.0);
            let a = realize(id, &p, 1 + (k % 3) as u8, Some(&j), DEFAULT_SEPARATION).map_err(|e| e.to_string())?;
            inputs.push(a.to_f64());
            expected.push((id, canonical_params(id, &p, orientation(&j)).map_err(|e| e.to_string())?));
        }
    }
    let results = classify_batch(&inputs, TOL);
    let mut worst = 0.0f64;
    for (r, (id, want)) in results.iter().zip(&expected) {
        let r = r.as_ref().map_err(|e| format!("{id}: {e}"))?;
        check(r.metaclass == *id, || format!("{id} classified as {}", r.metaclass))?;
        check(r.params.epsilons == want.epsilons, || format!("{id}: signs {:?} vs {:?}", r.params.epsilons, want.epsilons))?;
        let pattern = sign_pattern(*id, &want.epsilons).map_err(|e| e.to_string())?;
        let slot_signs: Vec<i8> = pattern
            .slots
            .iter()
            .filter_map(|s| match s {
                golden::Slot::Real { sign, .. } => Some(*sign),
                golden::Slot::Complex { .. } => None,
            })
            .collect();
        check(r.signs == slot_signs, || format!("{id}: sign characteristic {:?}", r.signs))?;
        worst = worst.max(relative_error(&r.params, &want.to_f64()));
    }
    let secs = start.elapsed().as_secs_f64();
    check(worst < 1e-6, || format!("parameter error {worst:e}"))?;
    check(secs < 60.0, || format!("took {secs:.1}s"))?;
    Ok(format!("2300/2300 recovered, max relative parameter error {worst:.1e}, {secs:.1}s"))
}

fn golden_cases() -> Outcome {
    let r = |x: i64| ratio(x, 1);
    let id = classify_exact(&Mat::identity(6), TOL).map_err(|e| e.to_string())?;
    check(id.metaclass.name() == "VII" && id.exact_params == Some(ExactParams {
        alphas: [1, 1, 1, 0, 0, 0].map(r).to_vec(),
        betas: vec![],
        epsilons: vec![],
    }), || "identity".into())?;
    let h2 = classify_exact(&hodge_basis::<Rational>(2), TOL).map_err(|e| e.to_string())?;
    check(h2.metaclass.name() == "VII" && h2.exact_params.as_ref().unwrap().alphas == [0, 0, 0, 1, 1, 1].map(r), || "H2".into())?;
    let g = PseudoMetric4::diagonal([-1.0, 1.0, 1.0, 1.0]).map_err(|e| e.to_string())?;
    let star = hodge_star_matrix(&g).map(|x| r(*x as i64));
    let l = classify_exact(&star, TOL).map_err(|e| e.to_string())?;
    let p = l.exact_params.clone().unwrap();
    check(l.metaclass.name() == "I" && p.alphas == vec![r(0); 3] && p.betas == vec![r(1); 3], || "Lorentz class".into())?;
    check(l.variant == 1, || "Lorentz variant".into())?;
    let j = l.coordinate.exact_jacobian.clone().ok_or("no exact Jacobian")?;
    let v = metaclass_template_exact(l.metaclass, &p).map_err(|e| e.to_string())?;
    let moved = conjugate_by_coordinates(&star.map(|x| QSqrt2::rational(x.clone())), &j.map(|x| QSqrt2::rational(x.clone())));
    check(moved.ok() == Some(v), || "Lorentz witness".into())?;
    check([&id, &h2, &l].iter().all(|x| x.path == ArithmeticPath::Exact), || "path".into())?;
    Ok(format!("Id -> VII, H2 -> VII, Lorentz Hodge -> I with J = {:?}", j.to_f64().as_slice().iter().step_by(5).collect::<Vec<_>>()))
}

fn sign_patterns() -> Outcome {
    let mut total = 0;
    for s in SegreType::all() {
        let patterns = admissible_sign_patterns(&s);
        check(!patterns.is_empty(), || format!("{} empty", s.label()))?;
        for p in &patterns {
            check(inertia(&sign_pattern_form(&s, p)) == (3, 0, 3), || format!("{} {:?}", s.label(), p))?;
        }
        total += patterns.len();
    }
    Ok(format!("23 Segre types, {total} patterns, all of signature (3,0,3)"))
}

fn decomposition_ranks() -> Outcome {
    let basis: Vec<Mat<Rational>> =
        (0..36).map(|k| Mat::from_fn(6, 6, |i, j| ratio((i * 6 + j == k) as i64, 1))).collect();
    let image_rank = |f: &dyn Fn(&Mat<Rational>) -> Mat<Rational>| {
        rank(&Mat::from_columns(&basis.iter().map(|e| f(e).as_slice().to_vec()).collect::<Vec<_>>()))
    };
    let ranks = [
        image_rank(&|a| decompose(a).principal),
        image_rank(&|a| decompose(a).skewon),
        image_rank(&|a| Mat::identity(6).scale(&decompose(a).axion_coefficient)),
    ];
    check(ranks == [20, 15, 1], || format!("ranks {ranks:?}"))?;
    check(basis.iter().all(|e| decompose(e).reconstruct() == *e), || "reconstruction".into())?;
    Ok("ranks 20/15/1, exact reconstruction of all 36 basis tensors".into())
}

fn random_metric(rng: &mut ChaCha8Rng, diagonal: bool) -> PseudoMetric4 {
    loop {
        let m = if diagonal {
            Mat::diag(&std::array::from_fn::<f64, 4, _>(|_| {
                let x: f64 = rng.random_range(0.25..4.0);
                if rng.random_bool(0.5) { -x } else { x }
            }))
        } else {
            let a = Mat::from_fn(4, 4, |_, _| rng.random_range(-2.0..2.0));
            &a + &a.transpose()
        };
        let eig = nalgebra::SymmetricEigen::new(m.to_nalgebra()).eigenvalues;
        if eig.iter().all(|x| (0.25..=4.0).contains(&x.abs())) {
            return PseudoMetric4::new(&m).unwrap();
        }
    }
}

fn hodge_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for n in 0..200 {
        let g = random_metric(&mut rng, n < 100);
        let star = hodge_star_matrix(&g);
        worst = worst.max((&star * &star).max_diff(&Mat::identity(6).scale(&g.det().signum())));
        let lambda = rng.random_range(0.1..10.0) * if rng.random_bool(0.5) { -1.0 } else { 1.0 };
        let scaled = PseudoMetric4::new(&g.matrix().scale(&lambda)).map_err(|e| e.to_string())?;
        worst = worst.max(hodge_star_matrix(&scaled).max_diff(&star));
    }
    let mut mixing = 0.0f64;
    for n in 0..50 {
        let g = random_metric(&mut rng, n % 2 == 0);
        let h = random_metric(&mut rng, n % 2 == 0);
        let k = mix_metrics(&g, &h).map_err(|e| e.to_string())?;
        let sg = hodge_star_matrix(&g);
        let sg_inv = Mat::from_nalgebra(&sg.to_nalgebra().try_inverse().ok_or("singular star")?);
        let rhs = (&(&sg_inv * &hodge_star_matrix(&h)) * &sg).scale(&(g.det() / h.det()).signum());
        mixing = mixing.max(hodge_star_matrix(&k).max_diff(&rhs));
    }
    check(worst < 1e-10 && mixing < 1e-10, || format!("star {worst:e}, mixing {mixing:e}"))?;
    Ok(format!("200 metrics: residual {worst:.1e}; 50 mixing pairs: residual {mixing:.1e}"))
}

fn pair_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let types = SegreType::all();
    let mut worst = 0.0f64;
    for n in 0..200 {
        let s = &types[n % types.len()];
        // Distinct eigenvalues on a grid of quarters, each at least 0.25 apart.
        let mut pool: Vec<i64> = (-12..=12).collect();
        let mut draw = || pool.swap_remove(rng.random_range(0..pool.len())) as f64 / 4.0;
        let mut real: Vec<RealBlock> = s.real.iter().map(|&size| RealBlock { eigenvalue: draw(), size }).collect();
        let complex: Vec<ComplexBlock> =
            s.complex.iter().map(|&half_size| ComplexBlock { sigma: draw(), tau: draw().abs() + 0.5, half_size }).collect();
        let mut signs: Vec<i8> = real.iter().map(|_| if rng.random_bool(0.5) { 1 } else { -1 }).collect();
        let mut order: Vec<usize> = (0..real.len()).collect();
        order.sort_by(|&a, &b| real[b].size.cmp(&real[a].size).then(signs[a].cmp(&signs[b])).then(real[a].eigenvalue.total_cmp(&real[b].eigenvalue)));
        real = order.iter().map(|&i| real[i].clone()).collect();
        signs = order.iter().map(|&i| signs[i]).collect();
        let form = JordanForm { real_blocks: real, complex_blocks: complex };
        let v = assemble_blocks(&form).map_err(|e| e.to_string())?;
        let w = companion_matrix(&form, &signs).map_err(|e| e.to_string())?;
        let l = loop {
            let l = Mat::from_fn(6, 6, |i, j| rng.random_range(-1.0..1.0) + if i == j { 2.0 } else { 0.0 });
            if medium_classify::condition_number(&l) < 50.0 {
                break l;
            }
        };
        let l_inv = Mat::from_nalgebra(&l.to_nalgebra().try_inverse().ok_or("singular L")?);
        let a = &(&l * &v) * &l_inv;
        let b = &(&l_inv.transpose() * &w) * &l_inv;
        let b = (&b + &b.transpose()).scale(&0.5);
        let pair = h_canonical_pair(&a, &b, TOL).map_err(|e| format!("{}: {e}", s.label()))?;
        check(pair.form.segre() == *s, || format!("{}: got {}", s.label(), pair.form.segre().label()))?;
        check(pair.signs == signs, || format!("{}: signs {:?} vs {:?}", s.label(), pair.signs, signs))?;
        worst = worst.max(pair.similarity_residual).max(pair.congruence_residual);
    }
    check(worst < 1e-8, || format!("residual {worst:e}"))?;
    Ok(format!("200 pairs: sizes and signs exact, max residual {worst:.1e}"))
}

fn frames() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut branches = [0usize; 3];
    let mut worst = 0.0f64;
    let mut min_det = f64::INFINITY;
    let mut converted = 0.0f64;
    for n in 0..100 {
        let id = MetaclassId::new(1 + (n % 23) as u8).unwrap();
        let p = random_params(id, &mut rng, DEFAULT_SEPARATION);
        let j = random_jacobian(&mut rng, 10.0);
        let a = realize(id, &p, 1 + (n / 23 % 3) as u8, Some(&j), DEFAULT_SEPARATION).map_err(|e| e.to_string())?.to_f64();
        let r = classify(&a, TOL).map_err(|e| e.to_string())?;
        let m_inv = Mat::from_nalgebra(&r.witness_m.to_nalgebra().try_inverse().ok_or("singular M")?);
        let t: [TwoForm; 6] = std::array::from_fn(|c| std::array::from_fn(|i| m_inv[(i, c)]));
        let f = factor_frame(&t, TOL).map_err(|e| format!("{id}: {e}"))?;
        worst = worst.max(f.residual);
        min_det = min_det.min(f.det.abs());
        branches[match f.branch {
            Branch::ZeroD { .. } => 0,
            Branch::Generic { .. } => 1,
            Branch::ZeroZeta { .. } => 2,
        }] += 1;
        // The frame's Jacobian turns the congruence witness into a coordinate one.
        let moved = conjugate_by_coordinates(&a, &f.jacobian()).map_err(|e| e.to_string())?;
        let target = if f.alpha <= 1 {
            r.template.clone()
        } else {
            let h = hodge_basis::<f64>(f.alpha);
            &(&h * &r.template) * &h
        };
        converted = converted.max(moved.max_diff(&target));
    }
    // Diagonal frames under H₂ and H₃ force the D ≠ 0, ζ = 0 branch.
    for alpha in [2u8, 3] {
        let x = Mat::diag(&[1.5, 0.75, 1.25, 2.0]);
        let t_mat = &hodge_basis::<f64>(alpha) * &medium_exterior::compound2(&x);
        let t: [TwoForm; 6] = std::array::from_fn(|c| std::array::from_fn(|i| t_mat[(i, c)]));
        let f = factor_frame(&t, TOL).map_err(|e| e.to_string())?;
        check(matches!(f.branch, Branch::ZeroZeta { .. }) && f.alpha == alpha && f.residual < 1e-8, || "zero-zeta generator".into())?;
        branches[2] += 1;
    }
    check(worst < 1e-8 && converted < 1e-8, || format!("residual {worst:e}, conversion {converted:e}"))?;
    check(min_det > 1e-3, || format!("frame determinant {min_det:e}"))?;
    check(branches.iter().all(|&b| b > 0), || format!("branches {branches:?}"))?;
    Ok(format!(
        "100 witnesses: residual {worst:.1e}, min |det| {min_det:.2}, conversion {converted:.1e}; branch counts (D = 0, generic, ζ = 0) = {branches:?}"
    ))
}

fn reduction() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut count = 0;
    for n in 0..140 {
        let id = MetaclassId::new(1 + (n % 7) as u8).unwrap();
        let p = random_params(id, &mut rng, DEFAULT_SEPARATION);
        let j = random_jacobian(&mut rng, 10.0);
        let a = realize(id, &p, 1 + (n / 7 % 3) as u8, Some(&j), DEFAULT_SEPARATION).map_err(|e| e.to_string())?;
        let aq = rational(&a).ok_or("template with irrational entries")?;
        let r = classify_exact(&aq, TOL).map_err(|e| format!("{id}: {e}"))?;
        check(r.metaclass == id && r.variant == 1, || format!("{id}: variant {}", r.variant))?;
        let jq = r.coordinate.exact_jacobian.clone().ok_or_else(|| format!("{id}: no exact Jacobian"))?;
        let v = metaclass_template_exact(id, r.exact_params.as_ref().unwrap()).map_err(|e| e.to_string())?;
        let moved = conjugate_by_coordinates(&a, &jq.map(|x| QSqrt2::rational(x.clone()))).map_err(|e| e.to_string())?;
        check(moved == v, || format!("{id}: transformed input differs from the template"))?;
        count += 1;
    }
    Ok(format!("{count} rational realizations of I-VII: variant 1, template reproduced exactly"))
}

fn epsilon_contraction() -> Outcome {
    let mut checked = 0;
    for k in 0..4 {
        for l in 0..4 {
            for r in 0..4 {
                for s in 0..4 {
                    let lhs: i32 = (0..16).map(|ij| levi_civita(ij / 4, ij % 4, k, l) * levi_civita(ij / 4, ij % 4, r, s)).sum();
                    let d = |a: usize, b: usize| (a == b) as i32;
                    check(lhs == 2 * (d(k, r) * d(l, s) - d(k, s) * d(l, r)), || format!("({k},{l},{r},{s})"))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} index combinations"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("23-class round-trip", round_trip),
        ("exact golden cases", golden_cases),
        ("sign pattern sets nonempty", sign_patterns),
        ("decomposition ranks", decomposition_ranks),
        ("Hodge identities", hodge_identities),
        ("H-selfadjoint pair oracle", pair_oracle),
        ("frame factorization end-to-end", frames),
        ("I-VII coordinate reduction", reduction),
        ("epsilon contraction", epsilon_contraction),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", n + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
