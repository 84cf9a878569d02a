//! Covector-frame factorization of a system of six 2-forms whose wedge
//! products reproduce the pairing `ε^{IJ}` up to a volume form.

use medium_exact::Mat;
use serde::{Deserialize, Serialize};

use crate::error::ExteriorError;
use crate::index::PAIRS;
use crate::tensor::hodge_basis;

/// Coefficients of a 2-form in the basis `{dx^I : I ∈ O}`.
pub type TwoForm = [f64; 6];
/// Coefficients of a covector in `{dx^0, …, dx^3}`.
pub type Covector = [f64; 4];

pub fn wedge(a: &Covector, b: &Covector) -> TwoForm {
    std::array::from_fn(|k| {
        let (i, j) = PAIRS[k];
        a[i] * b[j] - a[j] * b[i]
    })
}

/// Coefficient of `dx^0123` in `p∧q`.
pub fn wedge_forms(p: &TwoForm, q: &TwoForm) -> f64 {
    p[0] * q[3] + p[1] * q[4] + p[2] * q[5] + p[3] * q[0] + p[4] * q[1] + p[5] * q[2]
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn comb(terms: &[(f64, &Covector)]) -> Covector {
    std::array::from_fn(|k| terms.iter().map(|(s, v)| s * v[k]).sum())
}

fn dot4(a: &Covector, b: &Covector) -> f64 {
    (0..4).map(|k| a[k] * b[k]).sum()
}

/// Splits a decomposable 2-form as `a∧b`, pivoting on its largest
/// coefficient `q_ij`: `a = Q·e_j / q_ij`, `b = −Q·e_i` where `Q` is the
/// antisymmetric coefficient matrix.
pub fn plucker_factor(q: &TwoForm, tol: f64) -> Result<(Covector, Covector), ExteriorError> {
    let n = max_abs(q);
    if n == 0.0 {
        return Err(ExteriorError::ZeroForm);
    }
    let ws = 2.0 * (q[0] * q[3] + q[1] * q[4] + q[2] * q[5]);
    if ws.abs() > tol * norm(q).powi(2) {
        return Err(ExteriorError::NotDecomposable { wedge_square: ws });
    }
    let mut big = [[0.0; 4]; 4];
    for (k, &(i, j)) in PAIRS.iter().enumerate() {
        big[i][j] = q[k];
        big[j][i] = -q[k];
    }
    let k = (0..6).max_by(|&x, &y| q[x].abs().total_cmp(&q[y].abs())).unwrap();
    let (i, j) = PAIRS[k];
    let a: Covector = std::array::from_fn(|r| big[r][j] / q[k]);
    let b: Covector = std::array::from_fn(|r| -big[r][i]);
    Ok((a, b))
}

/// Pairing matrix `(T^I ∧ T^J)` of six 2-forms and its best volume factor.
#[derive(Debug, Clone, PartialEq)]
pub struct WedgeGram {
    pub matrix: Mat<f64>,
    pub omega: f64,
    /// Max-entry distance between `matrix` and `omega·B`.
    pub residual: f64,
}

impl WedgeGram {
    pub fn holds(&self, tol: f64) -> bool {
        self.omega != 0.0 && self.residual <= tol * self.omega.abs()
    }
}

pub fn wedge_gram(t: &[TwoForm; 6]) -> WedgeGram {
    let matrix = Mat::from_fn(6, 6, |i, j| wedge_forms(&t[i], &t[j]));
    let omega = (0..6).map(|i| matrix[(i, (i + 3) % 6)]).sum::<f64>() / 6.0;
    let target = crate::tensor::pairing_matrix::<f64>().scale(&omega);
    let residual = matrix.max_diff(&target);
    WedgeGram { matrix, omega, residual }
}

/// Which case of the constructive proof produced the frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    /// `D = 0`, `ζ ≠ 0`; carries τ.
    ZeroD { tau: i8 },
    /// `D ≠ 0`, `ζ ≠ 0`; carries σ.
    Generic { sigma: i8 },
    /// `D ≠ 0`, `ζ = 0`; carries σ.
    ZeroZeta { sigma: i8 },
}

/// Covectors `ξ^0..ξ^3` and α with `T^J = Σ_I H_(α)[I,J] ξ^{I₁}∧ξ^{I₂}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorFrame {
    pub covectors: [Covector; 4],
    pub alpha: u8,
    pub branch: Branch,
    /// Relative size of the `D·ξ¹∧ξ²` part of `T^03`.
    pub d_margin: f64,
    /// Relative size of the `ξ⁰∧ζ` part of `T^03`.
    pub zeta_margin: f64,
    /// Max-entry reconstruction error.
    pub residual: f64,
    /// `det(ξ⁰, ξ¹, ξ², ξ³)`, equal to ω for a successful factorization.
    pub det: f64,
}

impl FactorFrame {
    /// The frame as a Jacobian: row `i` is `ξ^i`.
    pub fn jacobian(&self) -> Mat<f64> {
        Mat::from_fn(4, 4, |i, j| self.covectors[i][j])
    }

    pub fn reconstruct(&self) -> [TwoForm; 6] {
        reconstruct(&self.covectors, self.alpha)
    }
}

fn reconstruct(xi: &[Covector; 4], alpha: u8) -> [TwoForm; 6] {
    let h = hodge_basis::<f64>(alpha);
    let basis: [TwoForm; 6] = std::array::from_fn(|k| {
        let (i, j) = PAIRS[k];
        wedge(&xi[i], &xi[j])
    });
    std::array::from_fn(|jj| std::array::from_fn(|c| (0..6).map(|ii| h[(ii, jj)] * basis[ii][c]).sum()))
}

/// Coordinates of `q` in the basis `{ξ^{I₁}∧ξ^{I₂}}`.
fn coords(xi: &[Covector; 4], q: &TwoForm) -> Result<[f64; 6], ExteriorError> {
    let cols: Vec<TwoForm> = PAIRS.iter().map(|&(i, j)| wedge(&xi[i], &xi[j])).collect();
    let m = nalgebra::Matrix6::from_fn(|r, c| cols[c][r]);
    let rhs = nalgebra::Vector6::from_column_slice(q);
    let sol = m.lu().solve(&rhs).ok_or(ExteriorError::Degenerate { stage: "frame coordinates", margin: 0.0 })?;
    Ok(std::array::from_fn(|k| sol[k]))
}

/// Extends linearly independent covectors to a basis by Gram–Schmidt
/// against the Euclidean product, adding the standard covector with the
/// largest residual each time.
fn complete(given: &[Covector]) -> Vec<Covector> {
    let mut ortho: Vec<Covector> = Vec::new();
    let push = |ortho: &mut Vec<Covector>, v: &Covector| -> f64 {
        let mut r = *v;
        for u in ortho.iter() {
            let d = dot4(&r, u);
            r = comb(&[(1.0, &r), (-d, u)]);
        }
        let n = dot4(&r, &r).sqrt();
        if n > 0.0 {
            ortho.push(std::array::from_fn(|k| r[k] / n));
        }
        n
    };
    for v in given {
        push(&mut ortho, v);
    }
    let mut added = Vec::new();
    while ortho.len() < 4 {
        let best = (0..4)
            .map(|k| {
                let e: Covector = std::array::from_fn(|c| if c == k { 1.0 } else { 0.0 });
                let mut r = e;
                for u in &ortho {
                    let d = dot4(&r, u);
                    r = comb(&[(1.0, &r), (-d, u)]);
                }
                (dot4(&r, &r), e)
            })
            .max_by(|a, b| a.0.total_cmp(&b.0))
            .unwrap()
            .1;
        let before = ortho.len();
        push(&mut ortho, &best);
        if ortho.len() > before {
            added.push(*ortho.last().unwrap());
        }
    }
    added
}

fn sign(x: f64) -> f64 {
    if x < 0.0 {
        -1.0
    } else {
        1.0
    }
}

/// Factors six 2-forms `T^J` (indexed by `J ∈ O`) with
/// `T^I∧T^J = ε^{IJ} ω` into a covector frame and an `H_(α)` pattern.
///
/// `tol` is relative. A part counts as zero when its relative size is below
/// `10³·tol`; the margins of the `D`/`ζ` decision are always reported.
pub fn factor_frame(t: &[TwoForm; 6], tol: f64) -> Result<FactorFrame, ExteriorError> {
    let zt = tol.max(f64::EPSILON) * 1e3;
    let tmax = t.iter().map(|v| max_abs(v)).fold(0.0, f64::max);
    if tmax == 0.0 {
        return Err(ExteriorError::ZeroForm);
    }
    let wg = wedge_gram(t);
    if wg.omega.abs() <= tol * tmax * tmax || !wg.holds(zt) {
        return Err(ExteriorError::WedgeGram { residual: wg.residual, omega: wg.omega });
    }

    // T^01 = ξ0∧ξ1, then bring T^02 to ξ0∧ξ2 by resolving the dependence
    // of ζ⁰ and ζ¹.
    let (a, b) = plucker_factor(&t[0], zt)?;
    let ext = complete(&[a, b]);
    let xi = [a, b, ext[0], ext[1]];
    let c = coords(&xi, &t[1])?;
    let big_a = c[0];
    let z0 = comb(&[(c[1], &xi[2]), (c[2], &xi[3])]);
    let z1 = comb(&[(c[5], &xi[2]), (-c[4], &xi[3])]);
    let (n0, n1) = (c[1].hypot(c[2]), c[5].hypot(c[4]));
    if n0.max(n1) <= zt * max_abs(&c) {
        return Err(ExteriorError::Degenerate { stage: "second form", margin: n0.max(n1) });
    }
    let (x0, x1, x2) = if n1 >= n0 {
        let k = (c[1] * c[5] - c[2] * c[4]) / (n1 * n1);
        (comb(&[(1.0, &xi[1]), (k, &xi[0])]), comb(&[(-1.0, &xi[0])]), comb(&[(1.0, &z1), (-big_a, &xi[0])]))
    } else {
        let l = (c[1] * c[5] - c[2] * c[4]) / (n0 * n0);
        (comb(&[(1.0, &xi[0]), (l, &xi[1])]), xi[1], comb(&[(1.0, &z0), (big_a, &xi[1])]))
    };

    // T^03 = ξ0∧ζ + D ξ1∧ξ2.
    let ext = complete(&[x0, x1, x2]);
    let xi = [x0, x1, x2, ext[0]];
    let c = coords(&xi, &t[2])?;
    let zeta = comb(&[(c[0], &xi[1]), (c[1], &xi[2]), (c[2], &xi[3])]);
    let d = c[5];
    let t03 = norm(&t[2]);
    let d_margin = norm(&wedge(&xi[1], &xi[2])) * d.abs() / t03;
    let zeta_margin = norm(&wedge(&xi[0], &zeta)) / t03;
    let d_zero = d_margin <= zt;
    let zeta_zero = zeta_margin <= zt;
    if d_zero == zeta_zero && d_zero {
        return Err(ExteriorError::BranchAmbiguity { d_margin, zeta_margin });
    }

    let (covectors, alpha, branch) = if d_zero {
        zero_d_branch(t, [xi[0], xi[1], xi[2], zeta], zt)?
    } else if !zeta_zero {
        generic_branch(t, &xi, c[0], c[1], d, zt)?
    } else {
        zero_zeta_branch(t, &xi, d, zt)?
    };

    let rec = reconstruct(&covectors, alpha);
    let residual = (0..6).flat_map(|j| (0..6).map(move |k| (j, k))).map(|(j, k)| (rec[j][k] - t[j][k]).abs()).fold(0.0, f64::max);
    if residual > zt * tmax {
        return Err(ExteriorError::Reconstruction { residual });
    }
    let det = Mat::from_fn(4, 4, |i, j| covectors[i][j]).to_nalgebra().determinant();
    Ok(FactorFrame { covectors, alpha, branch, d_margin, zeta_margin, residual, det })
}

fn nonzero(x: f64, scale: f64, zt: f64, stage: &'static str) -> Result<(), ExteriorError> {
    if x.abs() <= zt * scale {
        Err(ExteriorError::Degenerate { stage, margin: x.abs() / scale })
    } else {
        Ok(())
    }
}

fn zero_d_branch(t: &[TwoForm; 6], xi: [Covector; 4], zt: f64) -> Result<([Covector; 4], u8, Branch), ExteriorError> {
    let c = coords(&xi, &t[5])?;
    let (a, b, e) = (c[0], c[1], c[5]);
    nonzero(e, max_abs(&c), zt, "zero-D coefficient E")?;
    let tau = sign(e);
    let s = e.abs().sqrt();
    let mut xi = [
        comb(&[(1.0 / s, &xi[0])]),
        comb(&[(s, &xi[1]), (tau * b / s, &xi[0])]),
        comb(&[(s, &xi[2]), (-tau * a / s, &xi[0])]),
        comb(&[(s, &xi[3])]),
    ];
    let c = coords(&xi, &t[3])?;
    xi[3] = comb(&[(1.0, &xi[3]), (-tau * c[1], &xi[0])]);
    xi[0] = comb(&[(tau, &xi[0])]);
    let alpha = if tau < 0.0 { 0 } else { 1 };
    Ok((xi, alpha, Branch::ZeroD { tau: tau as i8 }))
}

fn generic_branch(
    t: &[TwoForm; 6],
    xi: &[Covector; 4],
    a: f64,
    b: f64,
    d: f64,
    zt: f64,
) -> Result<([Covector; 4], u8, Branch), ExteriorError> {
    let sigma = sign(d);
    let s = d.abs().sqrt();
    let n1 = comb(&[(s, &xi[2]), (-sigma * a / s, &xi[0])]);
    let n2 = comb(&[(-s, &xi[1]), (-sigma * b / s, &xi[0])]);
    let n3 = comb(&[(1.0 / s, &xi[0])]);
    let tmp = complete(&[n1, n2, n3])[0];
    let c = coords(&[tmp, n1, n2, n3], &t[5])?;
    let zeta = comb(&[(-c[2], &tmp), (c[4], &n1), (-c[3], &n2)]);
    let x0 = comb(&[(-sigma, &zeta)]);
    nonzero(norm(&x0), 1.0, zt * 1e-3, "generic-branch covector")?;
    let c = coords(&[x0, n1, n2, n3], &t[3])?;
    let x0 = comb(&[(1.0, &x0), (c[4], &n3)]);
    let alpha = if sigma > 0.0 { 2 } else { 3 };
    Ok(([x0, n1, n2, n3], alpha, Branch::Generic { sigma: sigma as i8 }))
}

fn zero_zeta_branch(t: &[TwoForm; 6], xi: &[Covector; 4], d: f64, zt: f64) -> Result<([Covector; 4], u8, Branch), ExteriorError> {
    let c = coords(xi, &t[5])?;
    let eta = comb(&[(c[0], &xi[1]), (c[1], &xi[2]), (c[2], &xi[3])]);
    nonzero(norm(&eta), 1.0, zt * 1e-3, "zero-zeta covector")?;
    let sigma = sign(d);
    let s = d.abs().sqrt();
    let mut fr = [comb(&[(1.0 / s, &xi[0])]), comb(&[(s, &xi[1])]), comb(&[(s, &xi[2])]), comb(&[(s, &eta)])];
    let c = coords(&fr, &t[3])?;
    fr[3] = comb(&[(1.0, &fr[3]), (-sigma * c[1], &fr[0])]);
    let out = if sigma > 0.0 {
        [fr[3], comb(&[(-1.0, &fr[2])]), fr[1], comb(&[(-1.0, &fr[0])])]
    } else {
        [fr[3], fr[2], comb(&[(-1.0, &fr[1])]), fr[0]]
    };
    let alpha = if sigma > 0.0 { 2 } else { 3 };
    Ok((out, alpha, Branch::ZeroZeta { sigma: sigma as i8 }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn std_forms(sign: f64) -> [TwoForm; 6] {
        std::array::from_fn(|j| std::array::from_fn(|i| if i == j { sign } else { 0.0 }))
    }

    #[test]
    fn standard_basis_is_alpha_one() {
        let f = factor_frame(&std_forms(1.0), 1e-9).unwrap();
        assert_eq!(f.alpha, 1);
        assert!(matches!(f.branch, Branch::ZeroD { tau: 1 }));
        assert!(f.residual < 1e-12);
    }

    #[test]
    fn negated_basis_is_alpha_zero() {
        let f = factor_frame(&std_forms(-1.0), 1e-9).unwrap();
        assert_eq!(f.alpha, 0);
    }

    #[test]
    fn h2_pattern_has_no_zeta_part() {
        let h = hodge_basis::<f64>(2);
        let t: [TwoForm; 6] = std::array::from_fn(|j| std::array::from_fn(|i| h[(i, j)]));
        let f = factor_frame(&t, 1e-9).unwrap();
        assert_eq!(f.alpha, 2);
        assert!(matches!(f.branch, Branch::ZeroZeta { sigma: 1 }));
    }

    #[test]
    fn plucker_examples() {
        let (a, b) = plucker_factor(&[1.0, 0.0, 0.0, 0.0, 0.0, 0.0], 1e-12).unwrap();
        assert_eq!((a, b), ([1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0]));
        assert!(matches!(
            plucker_factor(&[1.0, 0.0, 0.0, 1.0, 0.0, 0.0], 1e-12),
            Err(ExteriorError::NotDecomposable { .. })
        ));
        let q = [1.0, 1.0, 0.0, 0.0, 0.0, 0.0];
        let (a, b) = plucker_factor(&q, 1e-12).unwrap();
        assert_eq!(wedge(&a, &b), q);
    }
}
