use medium_exact::linalg::det;
use medium_exact::{Field, Mat, QSqrt2, Rational};
use medium_exterior::{conjugate_by_coordinates, hodge_basis};
use rand::seq::IndexedRandom;
use rand::Rng;

use crate::fit::{eigenvalue_separation, template_blocks};
use crate::golden::class_data;
use crate::template::metaclass_template_exact;
use crate::{ClassifyError, ExactParams, MetaclassId};

/// Minimum eigenvalue separation demanded of synthesized media.
pub const DEFAULT_SEPARATION: f64 = 0.1;

/// The tensor whose coordinates after the change `J` are `V` (variant 1),
/// `H₍₂₎VH₍₂₎` (variant 2) or `H₍₃₎VH₍₃₎` (variant 3), i.e. the input that
/// classification maps back to `(id, p)`.
///
/// Parameters whose slot eigenvalues come closer than `delta` are rejected
/// as lying on a class boundary.
pub fn realize(
    id: MetaclassId,
    p: &ExactParams,
    variant: u8,
    j: Option<&Mat<Rational>>,
    delta: f64,
) -> Result<Mat<QSqrt2>, ClassifyError> {
    let v = metaclass_template_exact(id, p)?;
    let separation = eigenvalue_separation(&template_blocks(id, p)?, |r| r.to_f64());
    if separation < delta {
        return Err(ClassifyError::Boundary { separation, delta });
    }
    let v = match variant {
        1 => v,
        2 | 3 => {
            let h = hodge_basis::<QSqrt2>(variant);
            &(&h * &v) * &h
        }
        _ => return Err(ClassifyError::Inconsistent { stage: "variant must be 1, 2 or 3", residual: variant as f64 }),
    };
    match j {
        None => Ok(v),
        Some(j) => {
            // A tensor with components A in x equals V in x̃ = J·x, so A is V
            // pulled back by the inverse change.
            let j_inv = medium_exact::linalg::inverse(j)
                .ok_or(ClassifyError::Exterior(medium_exterior::ExteriorError::SingularJacobian { det: 0.0 }))?;
            let jq = j_inv.map(|r| QSqrt2::rational(r.clone()));
            Ok(conjugate_by_coordinates(&v, &jq)?)
        }
    }
}

/// Random rational parameters of class `id` with slot eigenvalues at least
/// `delta` apart: α in [−2, 2] and β in (0, 2] on a grid of quarters, signs
/// drawn from the admissible patterns.
pub fn random_params<R: Rng + ?Sized>(id: MetaclassId, rng: &mut R, delta: f64) -> ExactParams {
    let data = class_data(id);
    let quarter = |k: i64| Rational::new(k.into(), 4.into());
    loop {
        let p = ExactParams {
            alphas: (0..data.alphas).map(|_| quarter(rng.random_range(-8..=8))).collect(),
            betas: (0..data.betas).map(|_| quarter(rng.random_range(1..=8))).collect(),
            epsilons: data.patterns.choose(rng).expect("every class has a pattern").epsilons.clone(),
        };
        let blocks = template_blocks(id, &p).expect("pattern drawn from the class");
        if eigenvalue_separation(&blocks, |r| r.to_f64()) >= delta {
            return p;
        }
    }
}

/// 2-norm condition number of a 4×4 matrix.
pub fn condition_number(j: &Mat<f64>) -> f64 {
    let sv = j.to_nalgebra().singular_values();
    let (lo, hi) = sv.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), &s| (lo.min(s), hi.max(s)));
    hi / lo
}

/// Random rational Jacobian with condition number at most `max_cond` and
/// either orientation: a diagonal part in ±{1, 3/2, 2} plus off-diagonal
/// entries in {0, ±1/2, ±1}.
pub fn random_jacobian<R: Rng + ?Sized>(rng: &mut R, max_cond: f64) -> Mat<Rational> {
    let half = |k: i64| Rational::new(k.into(), 2.into());
    loop {
        let j = Mat::from_fn(4, 4, |r, c| {
            if r == c {
                let m = half(*[2, 3, 4].choose(rng).unwrap());
                if rng.random_bool(0.5) { -m } else { m }
            } else {
                half(rng.random_range(-2..=2))
            }
        });
        if !det(&j).vanishes() && condition_number(&j.to_f64()) <= max_cond {
            return j;
        }
    }
}
