//! Exact Jordan structure and sign characteristic for rational input.

use medium_exact::linalg::{charpoly, inertia, kernel, rank};
use medium_exact::{exact_roots, rational_sqrt, ExactRoot, Field, Mat, Poly, Rational};

use crate::blocks::{ComplexBlock, JordanForm, RealBlock};

/// Block structure of a rational pair `(A, B)` in canonical order, with
/// eigenvalues as exact rationals.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactStructure {
    pub form: JordanForm<Rational>,
    pub signs: Vec<i8>,
}

fn power_dims(n: &Mat<Rational>) -> Vec<usize> {
    let dim = n.nrows();
    let mut dims = Vec::new();
    let mut p = Mat::identity(dim);
    loop {
        p = &p * n;
        let d = dim - rank(&p);
        if dims.last() == Some(&d) {
            break;
        }
        dims.push(d);
    }
    dims
}

/// Exact block sizes, eigenvalues and signs, or `None` when an eigenvalue
/// (or the imaginary part of a complex pair) is irrational. `B` must be
/// symmetric and nondegenerate with `BA = AᵀB`; this is not rechecked.
pub fn exact_structure(a: &Mat<Rational>, b: &Mat<Rational>) -> Option<ExactStructure> {
    let n = a.nrows();
    let roots = exact_roots(&Poly::new(charpoly(a)))?;
    let id = Mat::<Rational>::identity(n);
    let mut real: Vec<(RealBlock<Rational>, i8)> = Vec::new();
    let mut complex: Vec<ComplexBlock<Rational>> = Vec::new();
    for root in roots {
        match root {
            ExactRoot::Real { value, .. } => {
                let shift = a - &id.scale(&value);
                let dims = power_dims(&shift);
                let sizes = crate::numeric::sizes_from_dims(&dims);
                // Signs of the size-k blocks: inertia of x ↦ xᵀ B N^{k−1} x on ker N^k.
                let mut npow = Mat::identity(n);
                for k in 1..=dims.len() {
                    let count = sizes.iter().filter(|&&s| s == k).count();
                    let nk1 = npow.clone();
                    npow = &npow * &shift;
                    if count == 0 {
                        continue;
                    }
                    let ker = Mat::from_columns(&kernel(&npow));
                    let g = &(&(&ker.transpose() * b) * &nk1) * &ker;
                    let (neg, _, pos) = inertia(&g);
                    if neg + pos != count {
                        return None;
                    }
                    for s in std::iter::repeat_n(-1i8, neg).chain(std::iter::repeat_n(1i8, pos)) {
                        real.push((RealBlock { eigenvalue: value.clone(), size: k }, s));
                    }
                }
            }
            ExactRoot::Pair { p, q, .. } => {
                let two = Rational::from_i64(2);
                let sigma = -(p.clone() / two.clone());
                let tau = rational_sqrt(&(q.clone() - p.clone() * p.clone() / Rational::from_i64(4)))?;
                let quad = &(&(a * a) + &a.scale(&p)) + &id.scale(&q);
                let dims: Vec<usize> = power_dims(&quad).into_iter().map(|d| d / 2).collect();
                for k in crate::numeric::sizes_from_dims(&dims) {
                    complex.push(ComplexBlock { sigma: sigma.clone(), tau: tau.clone(), half_size: k });
                }
                let _ = two;
            }
        }
    }
    real.sort_by(|(x, sx), (y, sy)| y.size.cmp(&x.size).then(sx.cmp(sy)).then(x.eigenvalue.cmp(&y.eigenvalue)));
    complex.sort_by(|x, y| y.half_size.cmp(&x.half_size).then(x.sigma.cmp(&y.sigma)).then(x.tau.cmp(&y.tau)));
    let signs = real.iter().map(|(_, s)| *s).collect();
    Some(ExactStructure {
        form: JordanForm { real_blocks: real.into_iter().map(|(b, _)| b).collect(), complex_blocks: complex },
        signs,
    })
}
