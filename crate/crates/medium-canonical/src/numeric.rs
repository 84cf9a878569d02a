//! Floating-point spectral analysis: eigenvalue clustering, generalized
//! eigenspaces and Jordan chains.
//!
//! Clusters are found top-down: a candidate group of computed eigenvalues
//! is accepted when its mean `μ` has a generalized eigenspace of the right
//! dimension, measured by the nested kernels
//! `K_j = ker((I − Π_{K_{j−1}})(A − μ))`; otherwise the group is split at its
//! longest minimum-spanning-tree edge. No matrix powers are formed, so rank
//! decisions stay at the scale of `‖A‖`.

use medium_exact::Mat;
use nalgebra::{ComplexField, DMatrix};
use num_complex::Complex64;

use crate::blocks::{assemble_blocks, ComplexBlock, JordanForm, RealBlock};
use crate::error::CanonicalError;

pub const DEFAULT_TOL: f64 = 1e-9;

/// Singular values between `tol` and `GRAY·tol` (relative) make a rank
/// decision ambiguous.
pub(crate) const GRAY: f64 = 100.0;

pub(crate) trait Scalar: ComplexField<RealField = f64> + Copy {
    fn from_c(z: Complex64) -> Self;
    fn to_c(self) -> Complex64;
}

impl Scalar for f64 {
    fn from_c(z: Complex64) -> Self {
        z.re
    }
    fn to_c(self) -> Complex64 {
        Complex64::new(self, 0.0)
    }
}

impl Scalar for Complex64 {
    fn from_c(z: Complex64) -> Self {
        z
    }
    fn to_c(self) -> Complex64 {
        self
    }
}

pub(crate) fn check_square6(a: &Mat<f64>) -> Result<(), CanonicalError> {
    if a.nrows() != 6 || a.ncols() != 6 {
        return Err(CanonicalError::Shape { rows: a.nrows(), cols: a.ncols() });
    }
    if a.as_slice().iter().any(|x| !x.is_finite()) {
        return Err(CanonicalError::NonFinite);
    }
    Ok(())
}

/// `SVD::new` iterates without a cap; bound it and relax the threshold if
/// a finite input still fails to converge.
pub(crate) fn svd<T: Scalar>(m: &DMatrix<T>, u: bool, v: bool) -> nalgebra::SVD<T, nalgebra::Dyn, nalgebra::Dyn> {
    [1.0, 16.0, 256.0]
        .iter()
        .find_map(|k| nalgebra::SVD::try_new(m.clone(), u, v, f64::EPSILON * k, 10_000))
        .expect("SVD of a finite 6×6 matrix converges")
}

/// Eigenvalues from the real Schur form. `complex_eigenvalues` returns NaN
/// for a 2×2 block whose discriminant rounds to a tiny negative number.
pub(crate) fn eigenvalues(a: &DMatrix<f64>) -> Result<Vec<Complex64>, CanonicalError> {
    let diverged = CanonicalError::Ambiguous { stage: "eigenvalue iteration did not converge", margin: 0.0 };
    let t = nalgebra::Schur::try_new(a.clone(), f64::EPSILON, 10_000).ok_or(diverged)?.unpack().1;
    let n = t.nrows();
    let mut out = Vec::with_capacity(n);
    let mut i = 0;
    while i < n {
        if i + 1 < n && t[(i + 1, i)] != 0.0 {
            let (p, q, r, s) = (t[(i, i)], t[(i, i + 1)], t[(i + 1, i)], t[(i + 1, i + 1)]);
            let mid = 0.5 * (p + s);
            let disc = 0.25 * (p - s) * (p - s) + q * r;
            let root = disc.abs().sqrt();
            if disc >= 0.0 {
                out.extend([Complex64::new(mid - root, 0.0), Complex64::new(mid + root, 0.0)]);
            } else {
                out.extend([Complex64::new(mid, root), Complex64::new(mid, -root)]);
            }
            i += 2;
        } else {
            out.push(Complex64::new(t[(i, i)], 0.0));
            i += 1;
        }
    }
    if out.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(CanonicalError::NonFinite);
    }
    Ok(out)
}

/// Right singular vectors ordered by increasing singular value. Wide
/// matrices are padded with zero rows.
pub(crate) fn svd_ascending<T: Scalar>(m: &DMatrix<T>) -> (Vec<f64>, DMatrix<T>) {
    let n = m.ncols();
    let mut sq = DMatrix::<T>::zeros(m.nrows().max(n), n);
    sq.view_mut((0, 0), (m.nrows(), n)).copy_from(m);
    let svd = svd(&sq, false, true);
    let v = svd.v_t.expect("requested").adjoint();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| svd.singular_values[a].total_cmp(&svd.singular_values[b]));
    let values = order.iter().map(|&i| svd.singular_values[i]).collect();
    let vecs = DMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    (values, vecs)
}

/// Orthonormal basis of the column span of `m` (rank decided at `thr`).
pub(crate) fn orthonormal_span<T: Scalar>(m: &DMatrix<T>, thr: f64) -> DMatrix<T> {
    if m.ncols() == 0 {
        return m.clone();
    }
    let svd = svd(m, true, false);
    let u = svd.u.expect("requested");
    let cols: Vec<usize> = (0..svd.singular_values.len()).filter(|&i| svd.singular_values[i] > thr).collect();
    DMatrix::from_fn(m.nrows(), cols.len(), |r, c| u[(r, cols[c])])
}

/// Nested kernels of `m` with decision margins.
pub(crate) struct Nested<T: Scalar> {
    /// Orthonormal bases of `K_1 ⊂ K_2 ⊂ …` until the dimension stalls.
    pub bases: Vec<DMatrix<T>>,
    /// Largest accepted relative singular value.
    pub accepted: f64,
    /// Smallest rejected relative singular value.
    pub rejected: f64,
}

impl<T: Scalar> Nested<T> {
    pub fn dims(&self) -> Vec<usize> {
        self.bases.iter().map(|b| b.ncols()).collect()
    }

    pub fn total(&self) -> usize {
        self.bases.last().map_or(0, |b| b.ncols())
    }
}

pub(crate) fn nested_kernels<T: Scalar>(m: &DMatrix<T>, scale: f64, tol: f64) -> Nested<T> {
    let n = m.nrows();
    let mut k = DMatrix::<T>::zeros(n, 0);
    let mut out = Nested { bases: Vec::new(), accepted: 0.0, rejected: f64::INFINITY };
    loop {
        let proj = DMatrix::<T>::identity(n, n) - &k * k.adjoint();
        let (s, v) = svd_ascending(&(proj * m));
        let cnt = s.iter().take_while(|&&x| x <= tol * scale).count();
        if cnt > 0 {
            out.accepted = out.accepted.max(s[cnt - 1] / scale);
        }
        if cnt < n {
            out.rejected = out.rejected.min(s[cnt] / scale);
        }
        if cnt <= k.ncols() {
            break;
        }
        k = v.columns(0, cnt).into_owned();
        out.bases.push(k.clone());
        if cnt == n {
            break;
        }
    }
    out
}

/// Number of blocks of each size from the Weyr dimensions, as a list of
/// sizes in nonincreasing order.
pub(crate) fn sizes_from_dims(dims: &[usize]) -> Vec<usize> {
    let mut at_least: Vec<usize> = Vec::with_capacity(dims.len());
    let mut prev = 0;
    for &d in dims {
        at_least.push(d - prev);
        prev = d;
    }
    let mut sizes = Vec::new();
    for j in (0..at_least.len()).rev() {
        let next = at_least.get(j + 1).copied().unwrap_or(0);
        for _ in 0..at_least[j].saturating_sub(next) {
            sizes.push(j + 1);
        }
    }
    sizes
}

/// A generalized eigenspace for one eigenvalue (real) or one member of a
/// conjugate pair (`Im μ > 0`).
pub(crate) enum Space {
    Real { mu: f64, basis: DMatrix<f64>, nested: Nested<f64> },
    Complex { mu: Complex64, basis: DMatrix<Complex64>, nested: Nested<Complex64> },
}

pub(crate) struct Spectrum {
    pub spaces: Vec<Space>,
    /// Smallest rejected relative singular value over accepted clusters.
    pub margin: f64,
}

fn mst_split(points: &[Complex64], idx: &[usize]) -> (Vec<usize>, Vec<usize>) {
    // Prim's algorithm, then cut the longest edge.
    let n = idx.len();
    let mut in_tree = vec![false; n];
    let mut best = vec![f64::INFINITY; n];
    let mut parent = vec![usize::MAX; n];
    best[0] = 0.0;
    let mut edges = Vec::new();
    for _ in 0..n {
        let u = (0..n).filter(|&i| !in_tree[i]).min_by(|&a, &b| best[a].total_cmp(&best[b])).unwrap();
        in_tree[u] = true;
        if parent[u] != usize::MAX {
            edges.push((best[u], parent[u], u));
        }
        for v in 0..n {
            let d = (points[idx[u]] - points[idx[v]]).norm();
            if !in_tree[v] && d < best[v] {
                best[v] = d;
                parent[v] = u;
            }
        }
    }
    let cut = edges.iter().enumerate().max_by(|a, b| a.1 .0.total_cmp(&b.1 .0)).map(|(i, _)| i).unwrap();
    // Edges are in insertion order, so a parent is labelled before its children.
    let mut label = vec![0usize; n];
    for (i, &(_, p, c)) in edges.iter().enumerate() {
        label[c] = if i == cut { 1 } else { label[p] };
    }
    let a = (0..n).filter(|&i| label[i] == 0).map(|i| idx[i]).collect();
    let b = (0..n).filter(|&i| label[i] == 1).map(|i| idx[i]).collect();
    (a, b)
}

pub(crate) fn shifted<T: Scalar>(a: &Mat<f64>, mu: Complex64) -> DMatrix<T> {
    DMatrix::from_fn(6, 6, |i, j| {
        let v = Complex64::new(a[(i, j)], 0.0) - if i == j { mu } else { Complex64::new(0.0, 0.0) };
        T::from_c(v)
    })
}

/// Partitions the spectrum of `a` into generalized eigenspaces.
pub(crate) fn spectrum(a: &Mat<f64>, tol: f64) -> Result<Spectrum, CanonicalError> {
    check_square6(a)?;
    let na = a.to_nalgebra();
    let scale = {
        let s = na.norm();
        if s > 0.0 { s } else { 1.0 }
    };
    let eig = eigenvalues(&na)?;
    let mut stack: Vec<Vec<usize>> = vec![(0..6).collect()];
    let mut spaces = Vec::new();
    let mut margin = f64::INFINITY;
    let mut total = 0;
    while let Some(group) = stack.pop() {
        let n = group.len();
        let mu = group.iter().map(|&i| eig[i]).sum::<Complex64>() / n as f64;
        let spread = group.iter().map(|&i| (eig[i] - mu).norm()).fold(0.0, f64::max);
        let real = mu.im.abs() <= spread.max(1e-12 * scale);
        if !real && mu.im < 0.0 {
            // Mirror of a cluster kept on the upper half plane.
            let nested = nested_kernels::<Complex64>(&shifted(a, mu), scale, tol);
            if nested.total() == n {
                total += n;
                continue;
            }
        } else if real {
            let nested = nested_kernels::<f64>(&shifted(a, Complex64::new(mu.re, 0.0)), scale, tol);
            if nested.total() == n {
                margin = margin.min(nested.rejected);
                total += n;
                let basis = nested.bases.last().unwrap().clone();
                spaces.push(Space::Real { mu: mu.re, basis, nested });
                continue;
            }
        } else {
            let nested = nested_kernels::<Complex64>(&shifted(a, mu), scale, tol);
            if nested.total() == n {
                margin = margin.min(nested.rejected);
                total += n;
                let basis = nested.bases.last().unwrap().clone();
                spaces.push(Space::Complex { mu, basis, nested });
                continue;
            }
        }
        if n == 1 {
            return Err(CanonicalError::Ambiguous { stage: "isolated eigenvalue has no eigenvector", margin: 0.0 });
        }
        let (p, q) = mst_split(&eig, &group);
        stack.push(p);
        stack.push(q);
    }
    if total != 6 {
        return Err(CanonicalError::Ambiguous { stage: "generalized eigenspaces do not span", margin });
    }
    let upper: usize = spaces.iter().map(|s| if let Space::Complex { basis, .. } = s { basis.ncols() } else { 0 }).sum();
    let real: usize = spaces.iter().map(|s| if let Space::Real { basis, .. } = s { basis.ncols() } else { 0 }).sum();
    if real + 2 * upper != 6 {
        return Err(CanonicalError::Ambiguous { stage: "conjugate eigenvalues unpaired", margin });
    }
    if margin < GRAY * tol {
        return Err(CanonicalError::Ambiguous { stage: "rank decision", margin });
    }
    Ok(Spectrum { spaces, margin })
}

/// A chain `l_1, …, l_m` with `(A − μ) l_1 = 0`, `(A − μ) l_j = l_{j−1}`, in
/// ambient coordinates.
pub(crate) struct Chain<T: Scalar> {
    pub vectors: Vec<nalgebra::DVector<T>>,
}

/// Jordan chains of the nilpotent restriction of `A − μ` to `space`,
/// without normalization against any form.
fn plain_chains<T: Scalar>(shift: &DMatrix<T>, nested: &Nested<T>, tol: f64) -> Vec<Chain<T>> {
    let dims = nested.dims();
    let sizes = sizes_from_dims(&dims);
    let max = sizes.first().copied().unwrap_or(0);
    let mut chains: Vec<Chain<T>> = Vec::new();
    for j in (1..=max).rev() {
        let count = sizes.iter().filter(|&&s| s == j).count();
        if count == 0 {
            continue;
        }
        let qj = &nested.bases[j - 1];
        let mut avoid: Vec<nalgebra::DVector<T>> = Vec::new();
        if j >= 2 {
            avoid.extend(nested.bases[j - 2].column_iter().map(|c| c.into_owned()));
        }
        for ch in &chains {
            // The vector of that chain at depth j.
            avoid.push(ch.vectors[j - 1].clone());
        }
        let z = if avoid.is_empty() {
            DMatrix::<T>::zeros(6, 0)
        } else {
            orthonormal_span(&DMatrix::from_columns(&avoid), tol * 1e-3)
        };
        let proj = DMatrix::<T>::identity(6, 6) - &z * z.adjoint();
        let (_, v) = svd_ascending(&(proj * qj));
        let d = qj.ncols();
        for c in 0..count {
            let x = qj * v.column(d - 1 - c);
            let mut vecs = vec![x];
            for _ in 1..j {
                let next = shift * vecs.last().unwrap();
                vecs.push(next);
            }
            vecs.reverse();
            chains.push(Chain { vectors: vecs });
        }
    }
    chains.sort_by_key(|c| std::cmp::Reverse(c.vectors.len()));
    chains
}

/// `L` and the ordered form with `L⁻¹AL = assemble_blocks(form)`.
#[derive(Debug, Clone, PartialEq)]
pub struct JordanDecomposition {
    pub transform: Mat<f64>,
    pub form: JordanForm,
    /// `‖L⁻¹AL − J‖ / ‖A‖` in the max-entry norm.
    pub residual: f64,
    /// Smallest rejected relative singular value among the rank decisions.
    pub margin: f64,
}

pub(crate) enum OrderedBlock {
    Real { lambda: f64, sign: i8, cols: Vec<nalgebra::DVector<f64>> },
    Complex { sigma: f64, tau: f64, cols: Vec<nalgebra::DVector<f64>> },
}

impl OrderedBlock {
    fn key(&self) -> (u8, std::cmp::Reverse<usize>, i8, f64, f64) {
        match self {
            OrderedBlock::Real { lambda, sign, cols } => (0, std::cmp::Reverse(cols.len()), *sign, *lambda, 0.0),
            OrderedBlock::Complex { sigma, tau, cols } => (1, std::cmp::Reverse(cols.len()), 0, *sigma, *tau),
        }
    }
}

/// Real vectors `u_1, v_1, …` from a complex chain `l_j = u_j + i v_j`.
pub(crate) fn realify(chain: &Chain<Complex64>) -> Vec<nalgebra::DVector<f64>> {
    chain.vectors.iter().flat_map(|l| [l.map(|z| z.re), l.map(|z| z.im)]).collect()
}

/// Treats values within rounding of each other as tied, so that the next
/// key decides instead of noise.
fn loose_cmp(a: f64, b: f64) -> std::cmp::Ordering {
    if (a - b).abs() <= 1e-6 * a.abs().max(b.abs()).max(1.0) {
        std::cmp::Ordering::Equal
    } else {
        a.total_cmp(&b)
    }
}

pub(crate) fn sort_blocks(blocks: &mut [OrderedBlock]) {
    blocks.sort_by(|a, b| {
        let (ka, kb) = (a.key(), b.key());
        ka.0.cmp(&kb.0)
            .then(ka.1.cmp(&kb.1))
            .then(ka.2.cmp(&kb.2))
            .then(loose_cmp(ka.3, kb.3))
            .then(loose_cmp(ka.4, kb.4))
    });
}

pub(crate) fn form_and_transform(blocks: &[OrderedBlock]) -> (JordanForm, Mat<f64>) {
    let mut form = JordanForm { real_blocks: vec![], complex_blocks: vec![] };
    let mut cols = Vec::new();
    for b in blocks {
        match b {
            OrderedBlock::Real { lambda, cols: c, .. } => {
                form.real_blocks.push(RealBlock { eigenvalue: *lambda, size: c.len() });
                cols.extend(c.iter().cloned());
            }
            OrderedBlock::Complex { sigma, tau, cols: c } => {
                form.complex_blocks.push(ComplexBlock { sigma: *sigma, tau: *tau, half_size: c.len() / 2 });
                cols.extend(c.iter().cloned());
            }
        }
    }
    let l = Mat::from_fn(6, 6, |i, j| cols[j][i]);
    (form, l)
}

/// `‖L⁻¹AL − J‖_max / ‖A‖_max`, or infinity when `L` is singular.
pub(crate) fn similarity_residual(a: &Mat<f64>, l: &Mat<f64>, j: &Mat<f64>) -> f64 {
    match l.to_nalgebra().try_inverse() {
        Some(inv) => {
            let lhs = Mat::from_nalgebra(&(inv * a.to_nalgebra() * l.to_nalgebra()));
            lhs.max_diff(j) / a.max_abs().max(f64::MIN_POSITIVE)
        }
        None => f64::INFINITY,
    }
}

/// Real Jordan form with the eigenvalue-ordered block list: real blocks by
/// size descending then eigenvalue ascending, then complex blocks by
/// half-size descending then `(σ, τ)`.
pub fn real_jordan(a: &Mat<f64>, tol: f64) -> Result<JordanDecomposition, CanonicalError> {
    let spec = spectrum(a, tol)?;
    let mut blocks = Vec::new();
    for space in &spec.spaces {
        match space {
            Space::Real { mu, nested, .. } => {
                let shift = shifted::<f64>(a, Complex64::new(*mu, 0.0));
                for ch in plain_chains(&shift, nested, tol) {
                    blocks.push(OrderedBlock::Real { lambda: *mu, sign: 0, cols: ch.vectors });
                }
            }
            Space::Complex { mu, nested, .. } => {
                let shift = shifted::<Complex64>(a, *mu);
                for ch in plain_chains(&shift, nested, tol) {
                    blocks.push(OrderedBlock::Complex { sigma: mu.re, tau: mu.im, cols: realify(&ch) });
                }
            }
        }
    }
    sort_blocks(&mut blocks);
    let (form, transform) = form_and_transform(&blocks);
    let j = assemble_blocks(&form)?;
    let residual = similarity_residual(a, &transform, &j);
    Ok(JordanDecomposition { transform, form, residual, margin: spec.margin })
}



#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weyr_to_sizes() {
        assert_eq!(sizes_from_dims(&[2, 3, 4]), vec![3, 1]);
        assert_eq!(sizes_from_dims(&[1, 2, 3, 4, 5, 6]), vec![6]);
        assert_eq!(sizes_from_dims(&[3, 6]), vec![2, 2, 2]);
        assert_eq!(sizes_from_dims(&[6]), vec![1; 6]);
    }

    #[test]
    fn diagonal_input() {
        let a = Mat::diag(&[6.0, 5.0, 4.0, 3.0, 2.0, 1.0]);
        let d = real_jordan(&a, DEFAULT_TOL).unwrap();
        let eig: Vec<f64> = d.form.real_blocks.iter().map(|b| b.eigenvalue).collect();
        for (e, x) in eig.iter().zip([1.0, 2.0, 3.0, 4.0, 5.0, 6.0]) {
            assert!((e - x).abs() < 1e-12);
        }
        assert!(d.residual < 1e-12);
    }

    #[test]
    fn single_nilpotent_block() {
        let a = Mat::from_fn(6, 6, |i, j| if j == i + 1 { 1.0 } else { 0.0 });
        let d = real_jordan(&a, DEFAULT_TOL).unwrap();
        assert_eq!(d.form.real_blocks.len(), 1);
        assert_eq!(d.form.real_blocks[0].size, 6);
        assert!(d.residual < 1e-12);
    }
}
