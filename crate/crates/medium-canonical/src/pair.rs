use medium_exact::Mat;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::blocks::{assemble_blocks, companion_matrix, JordanForm};
use crate::error::CanonicalError;
use crate::numeric::{
    check_square6, form_and_transform, realify, shifted, similarity_residual, sizes_from_dims, sort_blocks, spectrum,
    svd_ascending, Chain, OrderedBlock, Scalar, Space,
};

/// `L⁻¹AL = J` and `LᵀBL = ⊕ε_j F_{m_j} ⊕ F_{2k_j}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HCanonicalPair {
    pub transform: Mat<f64>,
    pub form: JordanForm,
    /// One sign per real block, in block order.
    pub signs: Vec<i8>,
    /// `‖L⁻¹AL − J‖_max / ‖A‖_max`.
    pub similarity_residual: f64,
    /// `‖LᵀBL − W‖_max`.
    pub congruence_residual: f64,
    /// Smallest rejected relative singular value among the rank decisions.
    pub margin: f64,
}

impl HCanonicalPair {
    pub fn jordan_matrix(&self) -> Mat<f64> {
        assemble_blocks(&self.form).expect("validated on construction")
    }

    pub fn companion(&self) -> Mat<f64> {
        companion_matrix(&self.form, &self.signs).expect("validated on construction")
    }
}

fn bilinear<T: Scalar>(b: &DMatrix<T>, x: &DVector<T>, y: &DVector<T>) -> T {
    (x.transpose() * b * y)[(0, 0)]
}

/// Picks `x` in the span of `u` with `|⟨x, N^{m−1}x⟩|` large relative to
/// `|x|²`, trying basis vectors and their pairwise sums.
fn pick_top<T: Scalar>(g: &DMatrix<T>) -> DVector<T> {
    let r = g.nrows();
    let mut best = (f64::NEG_INFINITY, DVector::<T>::zeros(r));
    let one = T::from_c(Complex64::new(1.0, 0.0));
    let imag = T::from_c(Complex64::new(0.0, 1.0));
    for i in 0..r {
        for j in i..r {
            let coefs: &[T] = if i == j { &[one] } else { &[one, imag] };
            for &c in coefs {
                let mut v = DVector::<T>::zeros(r);
                v[i] = one;
                if i != j {
                    v[j] += c;
                }
                let val = (v.transpose() * g * &v)[(0, 0)].modulus() / v.norm_squared();
                if val > best.0 {
                    best = (val, v);
                }
            }
        }
    }
    best.1
}

fn power_apply<T: Scalar>(n: &DMatrix<T>, x: &DVector<T>, k: usize) -> DVector<T> {
    (0..k).fold(x.clone(), |v, _| n * v)
}

/// Chains normalized so that the Gram matrix of each real chain is `±F_m`
/// and of each complex chain is `2i·F_k` (so its realification gives
/// `F_{2k}`). Returns chains with their signs (0 for complex).
fn normalized_chains<T: Scalar>(
    shift: &DMatrix<T>,
    b: &DMatrix<T>,
    basis: &DMatrix<T>,
    dims: &[usize],
    complex: bool,
    tol: f64,
) -> Result<Vec<(Chain<T>, i8)>, CanonicalError> {
    let sizes = sizes_from_dims(dims);
    let mut u = basis.clone();
    let mut out = Vec::new();
    let form_scale = b.norm().max(f64::MIN_POSITIVE);
    for &m in &sizes {
        let nm1u = DMatrix::from_columns(&u.column_iter().map(|c| power_apply(shift, &c.into_owned(), m - 1)).collect::<Vec<_>>());
        let mut g = u.transpose() * b * &nm1u;
        g = (&g + g.transpose()) * T::from_c(Complex64::new(0.5, 0.0));
        let coeffs = pick_top(&g);
        let mut x = &u * coeffs;
        let top = bilinear(b, &x, &power_apply(shift, &x, m - 1));
        let size_ref = x.norm_squared() * form_scale * shift.norm().max(1.0).powi(m as i32 - 1);
        if top.modulus() <= tol * size_ref {
            return Err(CanonicalError::Ambiguous { stage: "chain normalization", margin: top.modulus() / size_ref });
        }
        let (target, sign) = if complex {
            (Complex64::new(0.0, 2.0), 0i8)
        } else {
            let s = if top.to_c().re < 0.0 { -1.0 } else { 1.0 };
            (Complex64::new(s, 0.0), s as i8)
        };
        let factor = T::from_c((target / top.to_c()).sqrt());
        x *= factor;
        let target_t = T::from_c(target);
        for j in 1..m {
            let c = bilinear(b, &x, &power_apply(shift, &x, m - 1 - j));
            let coef = -c / (target_t + target_t);
            x = &x + power_apply(shift, &x, j) * coef;
        }
        let vectors: Vec<DVector<T>> = (0..m).map(|j| power_apply(shift, &x, m - 1 - j)).collect();
        // Deflate: keep the part of span(u) that is B-orthogonal to the chain.
        let lmat = DMatrix::from_columns(&vectors);
        let c = lmat.transpose() * b * &u;
        let (_, v) = svd_ascending(&c);
        let keep = u.ncols() - m;
        u = &u * v.columns(0, keep);
        out.push((Chain { vectors }, sign));
    }
    Ok(out)
}

/// Simultaneous canonical form of `(A, B)` for symmetric nondegenerate `B`
/// and `BA = AᵀB`.
///
/// Blocks are ordered as in [`crate::real_jordan`], except that within real
/// blocks of equal size the signs come first in nondecreasing order.
pub fn h_canonical_pair(a: &Mat<f64>, b: &Mat<f64>, tol: f64) -> Result<HCanonicalPair, CanonicalError> {
    check_square6(a)?;
    check_square6(b)?;
    let bscale = b.max_abs();
    let asym = b.max_diff(&b.transpose());
    if asym > tol * bscale.max(f64::MIN_POSITIVE) {
        return Err(CanonicalError::AsymmetricForm { asymmetry: asym });
    }
    let bn = b.to_nalgebra();
    let sv = bn.singular_values();
    if sv.min() <= tol * sv.max() {
        return Err(CanonicalError::SingularForm);
    }
    let ba = b * a;
    let sa = ba.max_diff(&ba.transpose());
    if sa > tol * a.max_abs().max(1.0) * bscale {
        return Err(CanonicalError::NotSelfAdjoint { residual: sa });
    }

    let spec = spectrum(a, tol)?;
    let mut blocks = Vec::new();
    for space in &spec.spaces {
        match space {
            Space::Real { mu, basis, nested } => {
                let shift = shifted::<f64>(a, Complex64::new(*mu, 0.0));
                for (ch, sign) in normalized_chains(&shift, &bn, basis, &nested.dims(), false, tol)? {
                    blocks.push(OrderedBlock::Real { lambda: *mu, sign, cols: ch.vectors });
                }
            }
            Space::Complex { mu, basis, nested } => {
                let shift = shifted::<Complex64>(a, *mu);
                let bc = bn.map(|x| Complex64::new(x, 0.0));
                for (ch, _) in normalized_chains(&shift, &bc, basis, &nested.dims(), true, tol)? {
                    blocks.push(OrderedBlock::Complex { sigma: mu.re, tau: mu.im, cols: realify(&ch) });
                }
            }
        }
    }
    sort_blocks(&mut blocks);
    let signs: Vec<i8> = blocks
        .iter()
        .filter_map(|blk| if let OrderedBlock::Real { sign, .. } = blk { Some(*sign) } else { None })
        .collect();
    let (mut form, mut transform) = form_and_transform(&blocks);
    let w = companion_matrix(&form, &signs)?;
    polish(a, b, &w, &mut form, &mut transform);
    let j = assemble_blocks(&form)?;
    let similarity_residual = similarity_residual(a, &transform, &j);
    let congruence_residual = (&(&transform.transpose() * b) * &transform).max_diff(&w);
    Ok(HCanonicalPair { transform, form, signs, similarity_residual, congruence_residual, margin: spec.margin })
}

fn pair_residual(a: &DMatrix<f64>, b: &DMatrix<f64>, w: &DMatrix<f64>, v: &DMatrix<f64>, l: &DMatrix<f64>) -> DVector<f64> {
    let sim = a * l - l * v;
    let con = l.transpose() * b * l - w;
    let upper = (0..6).flat_map(|i| (i..6).map(move |j| (i, j)));
    DVector::from_iterator(57, sim.iter().copied().chain(upper.map(|(i, j)| con[(i, j)])))
}

fn with_eigenvalues(form: &JordanForm, theta: &[f64], groups: &[usize]) -> JordanForm {
    let mut f = form.clone();
    let nr = f.real_blocks.len();
    for (k, blk) in f.real_blocks.iter_mut().enumerate() {
        blk.eigenvalue = theta[groups[k]];
    }
    for (k, blk) in f.complex_blocks.iter_mut().enumerate() {
        blk.sigma = theta[groups[nr + k]];
        blk.tau = theta[groups[nr + k] + 1];
    }
    f
}

/// Gauss-Newton refinement of `L` and the eigenvalues on `AL = LV` and
/// `LᵀBL = W`, keeping blocks of one eigenvalue tied together. Steps that do
/// not lower the residual are discarded.
fn polish(a: &Mat<f64>, b: &Mat<f64>, w: &Mat<f64>, form: &mut JordanForm, l: &mut Mat<f64>) {
    let mut theta = Vec::new();
    let mut groups = Vec::new();
    let mut seen: Vec<((bool, f64, f64), usize)> = Vec::new();
    let keys = form
        .real_blocks
        .iter()
        .map(|blk| (false, blk.eigenvalue, 0.0))
        .chain(form.complex_blocks.iter().map(|blk| (true, blk.sigma, blk.tau)));
    for key in keys {
        let slot = match seen.iter().find(|(k, _)| *k == key) {
            Some((_, s)) => *s,
            None => {
                let s = theta.len();
                theta.push(key.1);
                if key.0 {
                    theta.push(key.2);
                }
                seen.push((key, s));
                s
            }
        };
        groups.push(slot);
    }
    let (an, bn, wn) = (a.to_nalgebra(), b.to_nalgebra(), w.to_nalgebra());
    let v_of = |t: &[f64]| assemble_blocks(&with_eigenvalues(form, t, &groups)).map(|m| m.to_nalgebra());
    let Ok(mut v) = v_of(&theta) else { return };
    let mut ln = l.to_nalgebra();
    let mut r = pair_residual(&an, &bn, &wn, &v, &ln);
    let n = 36 + theta.len();
    for _ in 0..4 {
        let mut jac = DMatrix::zeros(57, n);
        for c in 0..36 {
            let mut e = DMatrix::zeros(6, 6);
            e[(c % 6, c / 6)] = 1.0;
            let sim = &an * &e - &e * &v;
            let con = e.transpose() * &bn * &ln + ln.transpose() * &bn * &e;
            let upper = (0..6).flat_map(|i| (i..6).map(move |j| (i, j)));
            for (row, x) in sim.iter().copied().chain(upper.map(|(i, j)| con[(i, j)])).enumerate() {
                jac[(row, c)] = x;
            }
        }
        for k in 0..theta.len() {
            let mut t = theta.clone();
            t[k] += 1.0;
            let Ok(vk) = v_of(&t) else { return };
            let d = -(&ln * (vk - &v));
            for (row, x) in d.iter().enumerate() {
                jac[(row, 36 + k)] = *x;
            }
        }
        let Some(svd) = nalgebra::SVD::try_new(jac, true, true, f64::EPSILON, 10_000) else { return };
        let Ok(step) = svd.solve(&(-&r), 1e-12) else { return };
        let ln_new = &ln + DMatrix::from_column_slice(6, 6, &step.as_slice()[..36]);
        let theta_new: Vec<f64> = theta.iter().zip(&step.as_slice()[36..]).map(|(x, d)| x + d).collect();
        let Ok(v_new) = v_of(&theta_new) else { return };
        let r_new = pair_residual(&an, &bn, &wn, &v_new, &ln_new);
        if !(r_new.amax() < r.amax()) {
            break;
        }
        let done = r_new.amax() > 0.5 * r.amax();
        (ln, theta, v, r) = (ln_new, theta_new, v_new, r_new);
        if done {
            break;
        }
    }
    *form = with_eigenvalues(form, &theta, &groups);
    *l = Mat::from_nalgebra(&ln);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h2() -> Mat<f64> {
        Mat::from_fn(6, 6, |i, j| if i + 3 == j || j + 3 == i { 1.0 } else { 0.0 })
    }

    #[test]
    fn identity_against_h2() {
        let p = h_canonical_pair(&Mat::identity(6), &h2(), 1e-9).unwrap();
        assert_eq!(p.signs, vec![-1, -1, -1, 1, 1, 1]);
        assert!(p.congruence_residual < 1e-12);
    }

    #[test]
    fn h2_against_itself() {
        let p = h_canonical_pair(&h2(), &h2(), 1e-9).unwrap();
        let eig: Vec<f64> = p.form.real_blocks.iter().map(|b| b.eigenvalue).collect();
        assert!(eig.iter().all(|e| (e.abs() - 1.0).abs() < 1e-12));
        let neg = p.signs.iter().filter(|&&s| s < 0).count();
        assert_eq!(neg, 3);
        assert!(p.similarity_residual < 1e-12 && p.congruence_residual < 1e-12);
    }
}
