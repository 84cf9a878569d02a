use medium_exact::{Field, Mat};
use serde::{Deserialize, Serialize};

use crate::error::CanonicalError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealBlock<T = f64> {
    pub eigenvalue: T,
    pub size: usize,
}

/// Block for the eigenvalue pair `σ ± iτ`, `τ > 0`, of total size `2·half_size`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexBlock<T = f64> {
    pub sigma: T,
    pub tau: T,
    pub half_size: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum JordanBlock<T = f64> {
    Real(RealBlock<T>),
    Complex(ComplexBlock<T>),
}

impl<T: Field> JordanBlock<T> {
    pub fn dim(&self) -> usize {
        match self {
            JordanBlock::Real(b) => b.size,
            JordanBlock::Complex(b) => 2 * b.half_size,
        }
    }

    pub fn matrix(&self) -> Mat<T> {
        match self {
            JordanBlock::Real(b) => Mat::from_fn(b.size, b.size, |i, j| {
                if i == j {
                    b.eigenvalue.clone()
                } else if j == i + 1 {
                    T::one()
                } else {
                    T::zero()
                }
            }),
            JordanBlock::Complex(b) => Mat::from_fn(2 * b.half_size, 2 * b.half_size, |i, j| {
                let (bi, bj) = (i / 2, j / 2);
                if bi == bj {
                    match (i % 2, j % 2) {
                        (0, 0) | (1, 1) => b.sigma.clone(),
                        (0, 1) => b.tau.clone(),
                        _ => -b.tau.clone(),
                    }
                } else if bj == bi + 1 && i % 2 == j % 2 {
                    T::one()
                } else {
                    T::zero()
                }
            }),
        }
    }
}

/// Ordered real blocks followed by ordered complex blocks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JordanForm<T = f64> {
    pub real_blocks: Vec<RealBlock<T>>,
    pub complex_blocks: Vec<ComplexBlock<T>>,
}

impl<T: Field> JordanForm<T> {
    pub fn dim(&self) -> usize {
        self.real_blocks.iter().map(|b| b.size).sum::<usize>()
            + self.complex_blocks.iter().map(|b| 2 * b.half_size).sum::<usize>()
    }

    /// Blocks in assembly order.
    pub fn blocks(&self) -> Vec<JordanBlock<T>> {
        self.real_blocks
            .iter()
            .cloned()
            .map(JordanBlock::Real)
            .chain(self.complex_blocks.iter().cloned().map(JordanBlock::Complex))
            .collect()
    }

    pub fn segre(&self) -> crate::SegreType {
        crate::SegreType::new(
            self.real_blocks.iter().map(|b| b.size).collect(),
            self.complex_blocks.iter().map(|b| b.half_size).collect(),
        )
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> JordanForm<U> {
        JordanForm {
            real_blocks: self.real_blocks.iter().map(|b| RealBlock { eigenvalue: f(&b.eigenvalue), size: b.size }).collect(),
            complex_blocks: self
                .complex_blocks
                .iter()
                .map(|b| ComplexBlock { sigma: f(&b.sigma), tau: f(&b.tau), half_size: b.half_size })
                .collect(),
        }
    }
}

/// The standard involutory permutation: ones on the antidiagonal.
pub fn f_matrix<T: Field>(m: usize) -> Mat<T> {
    Mat::from_fn(m, m, |i, j| if i + j + 1 == m { T::one() } else { T::zero() })
}

fn check_form<T: Field>(form: &JordanForm<T>, dim: usize) -> Result<(), CanonicalError> {
    if form.dim() != dim {
        return Err(CanonicalError::Dimension { expected: dim, found: form.dim() });
    }
    for b in &form.complex_blocks {
        if b.tau.to_f64() <= 0.0 {
            return Err(CanonicalError::NonPositiveTau { tau: b.tau.to_f64() });
        }
    }
    Ok(())
}

/// Block-diagonal assembly of a 6×6 form in listed order.
pub fn assemble_blocks<T: Field>(form: &JordanForm<T>) -> Result<Mat<T>, CanonicalError> {
    check_form(form, 6)?;
    Ok(Mat::direct_sum(&form.blocks().iter().map(|b| b.matrix()).collect::<Vec<_>>()))
}

/// `⊕ ε_j F_{m_j} ⊕ F_{2k_j}` with one sign per real block.
pub fn companion_matrix<T: Field>(form: &JordanForm<T>, signs: &[i8]) -> Result<Mat<T>, CanonicalError> {
    check_form(form, 6)?;
    if signs.len() != form.real_blocks.len() {
        return Err(CanonicalError::SignCount { expected: form.real_blocks.len(), found: signs.len() });
    }
    let mut parts: Vec<Mat<T>> = form
        .real_blocks
        .iter()
        .zip(signs)
        .map(|(b, &s)| f_matrix::<T>(b.size).scale(&T::from_i64(s as i64)))
        .collect();
    parts.extend(form.complex_blocks.iter().map(|b| f_matrix::<T>(2 * b.half_size)));
    Ok(Mat::direct_sum(&parts))
}

/// Orthogonal `P` with `P⁻¹(M₁ ⊕ … ⊕ M_k)P = M_{π(1)} ⊕ … ⊕ M_{π(k)}`.
pub fn permutation_for_blocks(sizes: &[usize], perm: &[usize]) -> Result<Mat<f64>, CanonicalError> {
    let k = sizes.len();
    let mut seen = vec![false; k];
    if perm.len() != k || perm.iter().any(|&p| p >= k || std::mem::replace(&mut seen[p], true)) {
        return Err(CanonicalError::BadPermutation { what: "index list", len: k });
    }
    let offsets: Vec<usize> = sizes.iter().scan(0, |acc, &s| Some(std::mem::replace(acc, *acc + s))).collect();
    let n: usize = sizes.iter().sum();
    let mut p = Mat::zeros(n, n);
    let mut col = 0;
    for &b in perm {
        for r in 0..sizes[b] {
            p[(offsets[b] + r, col)] = 1.0;
            col += 1;
        }
    }
    Ok(p)
}
