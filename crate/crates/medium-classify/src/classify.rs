use medium_canonical::{exact_structure, h_canonical_pair, HCanonicalPair, SegreType};
use medium_exact::linalg::inverse;
use medium_exact::{convergents, Field, Mat, QSqrt2, Rational};
use medium_exterior::{
    conjugate_by_coordinates, decompose, factor_frame, hodge_basis, pairing_matrix, FactorFrame, TwoForm,
};
use serde::Serialize;

use crate::fit::{fit_params, fit_params_exact, sort_blocks, BlockData};
use crate::template::{metaclass_template, metaclass_template_exact};
use crate::{ClassifyError, ExactParams, MetaclassId, MetaclassParams};

/// Which arithmetic produced the reported class and parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ArithmeticPath {
    Exact,
    Floating,
}

/// Max-entry errors of every identity the result claims.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Residuals {
    /// Skewon part of the input.
    pub skewon: f64,
    /// `L⁻¹AL − V_J`, relative to `‖A‖`.
    pub similarity: f64,
    /// `LᵀBL − W`.
    pub congruence: f64,
    /// `S·V_J·S⁻¹ − V`.
    pub template: f64,
    /// `A − M⁻¹·V·M`.
    pub witness_a: f64,
    /// `B − Mᵀ·B·M`.
    pub witness_b: f64,
    /// Reconstruction of the columns of `M⁻¹` by the covector frame.
    pub frame: f64,
    /// Transformed input minus its target in [`CoordinateWitness`].
    pub coordinate: f64,
}

/// A Jacobian `J` such that the input in the new coordinates equals `V`
/// (variant 1), `H₍₂₎VH₍₂₎` (variant 2) or `H₍₃₎VH₍₃₎` (variant 3).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoordinateWitness {
    pub variant: u8,
    pub jacobian: Mat<f64>,
    /// A rational Jacobian verified in exact arithmetic, when one was found.
    #[serde(serialize_with = "crate::params::ser_rational_matrix")]
    pub exact_jacobian: Option<Mat<Rational>>,
    /// The input in the new coordinates.
    pub matrix: Mat<f64>,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationResult {
    pub metaclass: MetaclassId,
    pub segre: SegreType,
    pub label: String,
    pub params: MetaclassParams,
    pub exact_params: Option<ExactParams>,
    /// Sign characteristic of the real blocks, in canonical order.
    pub signs: Vec<i8>,
    /// The normal form `V = metaclass_template(metaclass, params)`.
    pub template: Mat<f64>,
    /// Real Jordan form `V_J` of the input.
    pub jordan: Mat<f64>,
    /// `L` with `L⁻¹AL = V_J` and `LᵀBL = W`.
    pub transform: Mat<f64>,
    pub witness_s: Mat<f64>,
    /// `M = S·L⁻¹`: `M·A·M⁻¹ = V` and `MᵀBM = B`.
    pub witness_m: Mat<f64>,
    pub frame: FactorFrame,
    pub variant: u8,
    pub coordinate: CoordinateWitness,
    pub residuals: Residuals,
    /// Smallest decision margin of the canonical-form stage.
    pub margin: f64,
    pub path: ArithmeticPath,
}

fn check_input(a: &Mat<f64>) -> Result<(), ClassifyError> {
    if a.nrows() != 6 || a.ncols() != 6 {
        return Err(ClassifyError::Shape { rows: a.nrows(), cols: a.ncols() });
    }
    if a.as_slice().iter().any(|x| !x.is_finite()) {
        return Err(ClassifyError::NonFinite);
    }
    Ok(())
}

/// Max entry of the skewon part, and the threshold `tol·max(1, ‖A‖)` it is
/// compared against.
pub fn skewon_gate(a: &Mat<f64>, tol: f64) -> (f64, f64) {
    let residual = decompose(a).skewon.max_abs();
    (residual, tol * a.max_abs().max(1.0))
}

fn reduction_jacobian(rows: [[i64; 4]; 4]) -> Mat<f64> {
    Mat::from_fn(4, 4, |i, j| rows[i][j] as f64)
}

const J1: [[i64; 4]; 4] = [[-1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]];
const J2: [[i64; 4]; 4] = [[0, 0, 0, 1], [0, 1, 0, 0], [0, 0, 1, 0], [1, 0, 0, 0]];
const J3: [[i64; 4]; 4] = [[0, 0, 0, -1], [0, 1, 0, 0], [0, 0, 1, 0], [-1, 0, 0, 0]];
const ID: [[i64; 4]; 4] = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]];

/// Coordinate change taking `H₍α₎VH₍α₎` back to `V` for classes I to VII:
/// one of the three listed Jacobians followed by a class-specific relabeling
/// of the axes.
fn reduction(id: MetaclassId, alpha: u8) -> Mat<f64> {
    let first = match (id.number(), alpha) {
        (3, 2) => J3,
        (2 | 3 | 5, _) => J2,
        (1 | 4 | 6, _) => J1,
        _ => ID,
    };
    let relabel = match id.number() {
        4 => [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]],
        5 => [[1, 0, 0, 0], [0, 0, 1, 0], [0, -1, 0, 0], [0, 0, 0, -1]],
        6 => [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]],
        _ => ID,
    };
    &reduction_jacobian(relabel) * &reduction_jacobian(first)
}

fn variant_of(alpha: u8) -> u8 {
    match alpha {
        0 | 1 => 1,
        a => a,
    }
}

fn hodge_sandwich<T: Field>(v: &Mat<T>, variant: u8) -> Mat<T> {
    if variant == 1 {
        return v.clone();
    }
    let h = hodge_basis::<T>(variant);
    &(&h * v) * &h
}

/// Classifies a skewon-free tensor in floating point.
pub fn classify(a: &Mat<f64>, tol: f64) -> Result<ClassificationResult, ClassifyError> {
    check_input(a)?;
    let (skewon, threshold) = skewon_gate(a, tol);
    if skewon > threshold {
        return Err(ClassifyError::Skewon { residual: skewon, threshold });
    }
    let b: Mat<f64> = pairing_matrix();
    let pair = h_canonical_pair(a, &b, tol)?;
    let segre = pair.form.segre();
    let id = MetaclassId::from_segre(&segre)
        .ok_or(ClassifyError::Inconsistent { stage: "Segre type outside the 23 classes", residual: 0.0 })?;
    let blocks = BlockData::from_form(&pair.form, &pair.signs);
    let params = fit_params(id, &blocks)?;
    if let Some((index, &value)) = params.betas.iter().enumerate().find(|(_, b)| **b <= 0.0) {
        return Err(ClassifyError::NonPositiveBeta { index: index + 1, value });
    }
    let template = metaclass_template(id, &params)?;
    finish(a, id, segre, params, None, template, pair, skewon, tol)
}

#[allow(clippy::too_many_arguments)]
fn finish(
    a: &Mat<f64>,
    id: MetaclassId,
    segre: SegreType,
    params: MetaclassParams,
    exact_params: Option<ExactParams>,
    template: Mat<f64>,
    pair: HCanonicalPair,
    skewon: f64,
    tol: f64,
) -> Result<ClassificationResult, ClassifyError> {
    let pattern = crate::template::sign_pattern(id, &params.epsilons)?;
    let s = pattern.s.to_f64();
    let s_inv = inverse(&pattern.s).ok_or(ClassifyError::SingularWitness)?.to_f64();
    let jordan = pair.jordan_matrix();
    let template_res = (&(&s * &jordan) * &s_inv).max_diff(&template);

    let l_inv = inverse_f64(&pair.transform)?;
    let m = &s * &l_inv;
    let report = sim_witness_check(a, &template, &m)?;

    let m_inv = inverse_f64(&m)?;
    let columns: [TwoForm; 6] = std::array::from_fn(|j| std::array::from_fn(|i| m_inv[(i, j)]));
    let frame = factor_frame(&columns, tol)?;
    let mut variant = variant_of(frame.alpha);
    let mut jacobian = frame.jacobian();
    if id.is_reducible() && variant != 1 {
        jacobian = &reduction(id, frame.alpha) * &jacobian;
        variant = 1;
    }
    let matrix = conjugate_by_coordinates(a, &jacobian)?;
    let target = hodge_sandwich(&template, variant);
    let coordinate_res = matrix.max_diff(&target);
    let scale = template.max_abs().max(1.0);
    if coordinate_res > 1e-6 * scale {
        return Err(ClassifyError::Inconsistent { stage: "coordinate witness", residual: coordinate_res });
    }

    Ok(ClassificationResult {
        metaclass: id,
        label: segre.label(),
        segre,
        params,
        exact_params,
        signs: pair.signs.clone(),
        template,
        jordan,
        transform: pair.transform.clone(),
        witness_s: s,
        witness_m: m,
        variant,
        coordinate: CoordinateWitness { variant, jacobian, exact_jacobian: None, matrix, residual: coordinate_res },
        residuals: Residuals {
            skewon,
            similarity: pair.similarity_residual,
            congruence: pair.congruence_residual,
            template: template_res,
            witness_a: report.a_residual,
            witness_b: report.b_residual,
            frame: frame.residual,
            coordinate: coordinate_res,
        },
        frame,
        margin: pair.margin,
        path: ArithmeticPath::Floating,
    })
}

/// Classifies a rational tensor, deciding class, signs and parameters in
/// exact arithmetic.
///
/// The witnesses `L`, `M` and the covector frame come from the floating
/// pipeline, which must agree with the exact structure. The coordinate
/// Jacobian is then rationalized and checked exactly; when no rational
/// Jacobian is confirmed the floating one is kept and `exact_jacobian` is
/// `None`.
pub fn classify_exact(a: &Mat<Rational>, tol: f64) -> Result<ClassificationResult, ClassifyError> {
    if a.nrows() != 6 || a.ncols() != 6 {
        return Err(ClassifyError::Shape { rows: a.nrows(), cols: a.ncols() });
    }
    let parts = decompose(a);
    if !parts.skewon.is_zero() {
        return Err(ClassifyError::Skewon { residual: parts.skewon.max_abs(), threshold: 0.0 });
    }
    let b: Mat<Rational> = pairing_matrix();
    let st = exact_structure(a, &b).ok_or(ClassifyError::Irrational("eigenvalues are not rational"))?;
    let segre = st.form.segre();
    let id = MetaclassId::from_segre(&segre)
        .ok_or(ClassifyError::Inconsistent { stage: "Segre type outside the 23 classes", residual: 0.0 })?;
    let mut blocks = BlockData::from_form(&st.form, &st.signs);
    sort_blocks(&mut blocks, |x, y| x.cmp(y));
    let exact = fit_params_exact(id, &blocks)?;
    let v = metaclass_template_exact(id, &exact)?;
    let params = exact.to_f64();

    let af = a.to_f64();
    let b_f: Mat<f64> = pairing_matrix();
    let pair = h_canonical_pair(&af, &b_f, tol)?;
    if pair.form.segre() != segre || pair.signs != st.signs {
        return Err(ClassifyError::Inconsistent { stage: "floating witness disagrees with exact structure", residual: pair.margin });
    }
    let mut result = finish(&af, id, segre, params, Some(exact), v.to_f64(), pair, 0.0, tol)?;
    result.path = ArithmeticPath::Exact;

    let aq = a.map(|r| QSqrt2::rational(r.clone()));
    if let Some((variant, j)) = exact_jacobian(&aq, &v, &result.coordinate) {
        let jq = j.map(|r| QSqrt2::rational(r.clone()));
        let matrix = conjugate_by_coordinates(&aq, &jq)?;
        result.variant = variant;
        result.coordinate = CoordinateWitness {
            variant,
            jacobian: j.to_f64(),
            exact_jacobian: Some(j),
            matrix: matrix.to_f64(),
            residual: 0.0,
        };
        result.residuals.coordinate = 0.0;
    }
    Ok(result)
}

fn rational_matrix(rows: [[i64; 4]; 4]) -> Mat<Rational> {
    Mat::from_fn(4, 4, |i, j| Rational::from_integer(rows[i][j].into()))
}

fn rationalize(x: f64) -> Option<Rational> {
    convergents(x, 1_000_000).into_iter().find(|r| (r.to_f64() - x).abs() <= 1e-9 * x.abs().max(1.0))
}

fn exact_jacobian(a: &Mat<QSqrt2>, v: &Mat<QSqrt2>, float: &CoordinateWitness) -> Option<(u8, Mat<Rational>)> {
    let holds = |j: &Mat<Rational>, variant: u8| {
        let jq = j.map(|r| QSqrt2::rational(r.clone()));
        conjugate_by_coordinates(a, &jq).is_ok_and(|m| m == hodge_sandwich(v, variant))
    };
    for c in [ID, J1, J2, J3] {
        let j = rational_matrix(c);
        if holds(&j, 1) {
            return Some((1, j));
        }
    }
    let jf = &float.jacobian;
    let pivot = jf.as_slice().iter().copied().max_by(|x, y| x.abs().total_cmp(&y.abs()))?;
    let entries: Option<Vec<Rational>> = jf.as_slice().iter().map(|x| rationalize(x / pivot)).collect();
    let j = Mat::from_vec(4, 4, entries?);
    holds(&j, float.variant).then_some((float.variant, j))
}

/// Residuals of `A = M⁻¹·V·M` and `B = Mᵀ·B·M`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WitnessReport {
    pub a_residual: f64,
    pub b_residual: f64,
}

impl WitnessReport {
    pub fn accepts(&self, tol: f64) -> bool {
        self.a_residual <= tol && self.b_residual <= tol
    }
}

pub fn sim_witness_check(a: &Mat<f64>, v: &Mat<f64>, m: &Mat<f64>) -> Result<WitnessReport, ClassifyError> {
    for x in [a, v, m] {
        check_input(x)?;
    }
    let m_inv = inverse_f64(m)?;
    let b: Mat<f64> = pairing_matrix();
    Ok(WitnessReport {
        a_residual: (&(&m_inv * v) * m).max_diff(a),
        b_residual: (&(&m.transpose() * &b) * m).max_diff(&b),
    })
}

pub(crate) fn inverse_f64(m: &Mat<f64>) -> Result<Mat<f64>, ClassifyError> {
    m.to_nalgebra().try_inverse().map(|x| Mat::from_nalgebra(&x)).ok_or(ClassifyError::SingularWitness)
}
