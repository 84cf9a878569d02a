use itertools::Itertools;
use medium_canonical::{companion_matrix, ComplexBlock, JordanForm, RealBlock, SegreType};
use medium_exact::linalg::inertia;
use medium_exact::{Field, Mat, OrderedField, QSqrt2, Rational};
use medium_exterior::pairing_matrix;
use nalgebra::{DMatrix, SymmetricEigen};

use crate::golden::{class_data, SignPattern, Template};
use crate::{ClassifyError, ExactParams, MetaclassId, MetaclassParams};

fn check_arity(id: MetaclassId, alphas: usize, betas: usize, epsilons: usize) -> Result<(), ClassifyError> {
    let data = class_data(id);
    for (what, expected, got) in [("alphas", data.alphas, alphas), ("betas", data.betas, betas), ("epsilons", data.epsilons, epsilons)] {
        if expected != got {
            return Err(ClassifyError::Arity { class: id, what, expected, got });
        }
    }
    Ok(())
}

/// The stored pattern for the given signs, or a sign-order error.
pub fn sign_pattern(id: MetaclassId, epsilons: &[i8]) -> Result<&'static SignPattern, ClassifyError> {
    class_data(id)
        .patterns
        .iter()
        .find(|p| p.epsilons == epsilons)
        .ok_or_else(|| ClassifyError::SignOrder { class: id, epsilons: epsilons.to_vec() })
}

fn evaluate<T: Field>(t: &Template, alphas: &[T], betas: &[T], lift: impl Fn(&QSqrt2) -> T) -> Mat<T> {
    let mut m = Mat::<T>::zeros(6, 6);
    for (r, c, v) in &t.constant {
        m[(*r, *c)] = m[(*r, *c)].clone() + lift(v);
    }
    for (terms, x) in t.alpha.iter().zip(alphas).chain(t.beta.iter().zip(betas)) {
        for (r, c, v) in terms {
            m[(*r, *c)] = m[(*r, *c)].clone() + lift(v) * x.clone();
        }
    }
    m
}

/// The normal-form matrix `V` of a metaclass at the given parameters.
pub fn metaclass_template(id: MetaclassId, p: &MetaclassParams) -> Result<Mat<f64>, ClassifyError> {
    check_arity(id, p.alphas.len(), p.betas.len(), p.epsilons.len())?;
    if let Some((index, &value)) = p.betas.iter().enumerate().find(|(_, b)| !(**b > 0.0)) {
        return Err(ClassifyError::NonPositiveBeta { index: index + 1, value });
    }
    if p.alphas.iter().chain(&p.betas).any(|x| !x.is_finite()) {
        return Err(ClassifyError::NonFinite);
    }
    let pattern = sign_pattern(id, &p.epsilons)?;
    Ok(evaluate(&pattern.template, &p.alphas, &p.betas, |q| q.to_f64()))
}

/// Exact version of [`metaclass_template`].
pub fn metaclass_template_exact(id: MetaclassId, p: &ExactParams) -> Result<Mat<QSqrt2>, ClassifyError> {
    check_arity(id, p.alphas.len(), p.betas.len(), p.epsilons.len())?;
    if let Some((index, value)) = p.betas.iter().enumerate().find(|(_, b)| b.signum_i() <= 0) {
        return Err(ClassifyError::NonPositiveBeta { index: index + 1, value: value.to_f64() });
    }
    let pattern = sign_pattern(id, &p.epsilons)?;
    let lift = |v: &[Rational]| v.iter().map(|r| QSqrt2::rational(r.clone())).collect::<Vec<_>>();
    Ok(evaluate(&pattern.template, &lift(&p.alphas), &lift(&p.betas), |q| q.clone()))
}

/// `⊕ ε_j F_{m_j} ⊕ F_{2k_j}` for a Segre type and one sign per real block.
pub fn sign_pattern_form(segre: &SegreType, signs: &[i8]) -> Mat<Rational> {
    let form = JordanForm {
        real_blocks: segre.real.iter().map(|&size| RealBlock { eigenvalue: Rational::zero(), size }).collect(),
        complex_blocks: segre
            .complex
            .iter()
            .map(|&half_size| ComplexBlock { sigma: Rational::zero(), tau: Rational::one(), half_size })
            .collect(),
    };
    companion_matrix(&form, signs).expect("Segre type has dimension 6")
}

/// The set 𝒲_s: sign characteristics that are nondecreasing along runs of
/// equal-size real blocks and give the pairing its signature (3, 0, 3).
pub fn admissible_sign_patterns(segre: &SegreType) -> Vec<Vec<i8>> {
    let r = segre.real.len();
    std::iter::repeat_n([-1i8, 1], r)
        .multi_cartesian_product()
        .filter(|signs| (1..r).all(|i| segre.real[i] != segre.real[i - 1] || signs[i - 1] <= signs[i]))
        .filter(|signs| inertia(&sign_pattern_form(segre, signs)) == (3, 0, 3))
        .collect()
}

fn symmetric_eigen(m: &Mat<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let eig = SymmetricEigen::new(m.to_nalgebra());
    let order: Vec<usize> = (0..6).sorted_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j])).collect();
    let mut vecs = DMatrix::zeros(6, 6);
    for (k, &i) in order.iter().enumerate() {
        let mut v = eig.eigenvectors.column(i).into_owned();
        let pivot = v.iter().copied().max_by(|a, b| a.abs().total_cmp(&b.abs())).unwrap_or(1.0);
        if pivot < 0.0 {
            v = -v;
        }
        vecs.set_column(k, &v);
    }
    (order.iter().map(|&i| eig.eigenvalues[i]).collect(), vecs)
}

/// Some `S` with `SᵀBS = W` for a symmetric `W` of signature (3, 0, 3).
///
/// Both forms are diagonalized orthogonally with eigenvalues ascending and
/// each eigenvector's largest component made positive; `W = B` gives `Id`.
pub fn solve_congruence(w: &Mat<f64>, tol: f64) -> Result<Mat<f64>, ClassifyError> {
    if w.nrows() != 6 || w.ncols() != 6 {
        return Err(ClassifyError::Shape { rows: w.nrows(), cols: w.ncols() });
    }
    if w.as_slice().iter().any(|x| !x.is_finite()) {
        return Err(ClassifyError::NonFinite);
    }
    let scale = w.max_abs().max(f64::MIN_POSITIVE);
    let asymmetry = w.max_diff(&w.transpose());
    if asymmetry > tol * scale {
        return Err(ClassifyError::Asymmetric { asymmetry });
    }
    let b: Mat<f64> = pairing_matrix();
    if w.max_diff(&b) <= tol {
        return Ok(Mat::identity(6));
    }
    let (d, q) = symmetric_eigen(w);
    let neg = d.iter().filter(|x| **x < -tol * scale).count();
    let pos = d.iter().filter(|x| **x > tol * scale).count();
    if (neg, pos) != (3, 3) {
        return Err(ClassifyError::Signature { neg, zero: 6 - neg - pos, pos });
    }
    let (_, r) = symmetric_eigen(&b);
    let root = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(6, d.iter().map(|x| x.abs().sqrt())));
    Ok(Mat::from_nalgebra(&(r * root * q.transpose())))
}
