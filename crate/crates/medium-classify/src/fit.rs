//! Reading class parameters off canonical block data.

use std::cmp::Ordering;

use medium_canonical::JordanForm;
use medium_exact::linalg::inverse;
use medium_exact::{Mat, Rational};

use crate::golden::{class_data, SignPattern, Slot};
use crate::{ClassifyError, ExactParams, MetaclassId, MetaclassParams};

/// Spectral data of one canonical block.
#[derive(Debug, Clone, PartialEq)]
pub enum BlockData<T> {
    Real { size: usize, sign: i8, eigenvalue: T },
    Complex { half_size: usize, sigma: T, tau: T },
}

impl<T: Clone> BlockData<T> {
    pub fn from_form(form: &JordanForm<T>, signs: &[i8]) -> Vec<Self> {
        let real = form.real_blocks.iter().zip(signs).map(|(b, &sign)| BlockData::Real {
            size: b.size,
            sign,
            eigenvalue: b.eigenvalue.clone(),
        });
        let complex = form.complex_blocks.iter().map(|b| BlockData::Complex {
            half_size: b.half_size,
            sigma: b.sigma.clone(),
            tau: b.tau.clone(),
        });
        real.chain(complex).collect()
    }

    fn matches(&self, slot: &Slot) -> bool {
        match (self, slot) {
            (BlockData::Real { size, sign, .. }, Slot::Real { size: s, sign: g, .. }) => size == s && sign == g,
            (BlockData::Complex { half_size, .. }, Slot::Complex { half_size: h, .. }) => half_size == h,
            _ => false,
        }
    }
}

/// Canonical block order: real before complex, larger blocks first, then
/// sign, then eigenvalue (complex: `σ`, then `τ`).
pub fn sort_blocks<T>(blocks: &mut [BlockData<T>], cmp: impl Fn(&T, &T) -> Ordering) {
    blocks.sort_by(|x, y| match (x, y) {
        (BlockData::Real { size: a, sign: s, eigenvalue: l }, BlockData::Real { size: b, sign: t, eigenvalue: m }) => {
            b.cmp(a).then(s.cmp(t)).then(cmp(l, m))
        }
        (BlockData::Real { .. }, BlockData::Complex { .. }) => Ordering::Less,
        (BlockData::Complex { .. }, BlockData::Real { .. }) => Ordering::Greater,
        (
            BlockData::Complex { half_size: a, sigma: s, tau: t },
            BlockData::Complex { half_size: b, sigma: u, tau: v },
        ) => b.cmp(a).then(cmp(s, u)).then(cmp(t, v)),
    });
}

/// The stored pattern whose slots have the kinds, sizes and signs of `blocks`.
pub fn matching_pattern<T: Clone>(id: MetaclassId, blocks: &[BlockData<T>]) -> Option<&'static SignPattern> {
    class_data(id)
        .patterns
        .iter()
        .find(|p| p.slots.len() == blocks.len() && p.slots.iter().zip(blocks).all(|(s, b)| b.matches(s)))
}

/// Exact inverse of the slot equations `(α, β) ↦ slot eigenvalues`.
fn slot_system(id: MetaclassId, pattern: &SignPattern) -> Result<Mat<Rational>, ClassifyError> {
    let data = class_data(id);
    let (na, nb) = (data.alphas, data.betas);
    let mut rows = Vec::new();
    for slot in &pattern.slots {
        match slot {
            Slot::Real { eigenvalue, .. } => rows.push(eigenvalue.row(na, nb)),
            Slot::Complex { sigma, tau, .. } => {
                rows.push(sigma.row(na, nb));
                rows.push(tau.row(na, nb));
            }
        }
    }
    let n = na + nb;
    if rows.len() != n {
        return Err(ClassifyError::Inconsistent { stage: "slot equation count", residual: rows.len() as f64 });
    }
    let m = Mat::from_fn(n, n, |i, j| Rational::from_integer(rows[i][j].into()));
    inverse(&m).ok_or(ClassifyError::Inconsistent { stage: "slot equations singular", residual: 0.0 })
}

fn rhs<T: Clone>(pattern: &SignPattern, blocks: &[BlockData<T>], constant: impl Fn(i64) -> T, sub: impl Fn(&T, &T) -> T) -> Vec<T> {
    let mut out = Vec::new();
    for (slot, block) in pattern.slots.iter().zip(blocks) {
        match (slot, block) {
            (Slot::Real { eigenvalue: f, .. }, BlockData::Real { eigenvalue, .. }) => {
                out.push(sub(eigenvalue, &constant(f.constant)))
            }
            (Slot::Complex { sigma: fs, tau: ft, .. }, BlockData::Complex { sigma, tau, .. }) => {
                out.push(sub(sigma, &constant(fs.constant)));
                out.push(sub(tau, &constant(ft.constant)));
            }
            _ => unreachable!("pattern was matched against the blocks"),
        }
    }
    out
}

/// Parameters of class `id` whose template has the given canonically
/// ordered blocks.
pub fn fit_params(id: MetaclassId, blocks: &[BlockData<f64>]) -> Result<MetaclassParams, ClassifyError> {
    let pattern = matching_pattern(id, blocks)
        .ok_or_else(|| ClassifyError::SignOrder { class: id, epsilons: real_signs(blocks) })?;
    let inv = slot_system(id, pattern)?.to_f64();
    let b = rhs(pattern, blocks, |c| c as f64, |x, y| x - y);
    let x = inv.mul_vec(&b);
    let na = class_data(id).alphas;
    Ok(MetaclassParams { alphas: x[..na].to_vec(), betas: x[na..].to_vec(), epsilons: pattern.epsilons.clone() })
}

/// Exact version of [`fit_params`].
pub fn fit_params_exact(id: MetaclassId, blocks: &[BlockData<Rational>]) -> Result<ExactParams, ClassifyError> {
    let pattern = matching_pattern(id, blocks)
        .ok_or_else(|| ClassifyError::SignOrder { class: id, epsilons: real_signs(blocks) })?;
    let inv = slot_system(id, pattern)?;
    let b = rhs(pattern, blocks, |c| Rational::from_integer(c.into()), |x, y| x - y);
    let x = inv.mul_vec(&b);
    let na = class_data(id).alphas;
    Ok(ExactParams { alphas: x[..na].to_vec(), betas: x[na..].to_vec(), epsilons: pattern.epsilons.clone() })
}

fn real_signs<T>(blocks: &[BlockData<T>]) -> Vec<i8> {
    blocks
        .iter()
        .filter_map(|b| match b {
            BlockData::Real { sign, .. } => Some(*sign),
            _ => None,
        })
        .collect()
}

/// Block data of the template at exact parameters.
pub fn template_blocks(id: MetaclassId, p: &ExactParams) -> Result<Vec<BlockData<Rational>>, ClassifyError> {
    let pattern = crate::template::sign_pattern(id, &p.epsilons)?;
    Ok(pattern
        .slots
        .iter()
        .map(|s| match s {
            Slot::Real { size, sign, eigenvalue } => {
                BlockData::Real { size: *size, sign: *sign, eigenvalue: eigenvalue.eval_exact(&p.alphas, &p.betas) }
            }
            Slot::Complex { half_size, sigma, tau } => BlockData::Complex {
                half_size: *half_size,
                sigma: sigma.eval_exact(&p.alphas, &p.betas),
                tau: tau.eval_exact(&p.alphas, &p.betas),
            },
        })
        .collect())
}

/// The parameters classification reports for the template at `p` after a
/// coordinate change of orientation `orientation` (±1).
///
/// An orientation-reversing Jacobian scales the pairing by a negative
/// factor, which negates the sign characteristic; the blocks are then put
/// back in canonical order and the parameters refitted.
pub fn canonical_params(id: MetaclassId, p: &ExactParams, orientation: i8) -> Result<ExactParams, ClassifyError> {
    let mut blocks = template_blocks(id, p)?;
    if orientation < 0 {
        for b in &mut blocks {
            if let BlockData::Real { sign, .. } = b {
                *sign = -*sign;
            }
        }
    }
    sort_blocks(&mut blocks, |a, b| a.cmp(b));
    fit_params_exact(id, &blocks)
}

/// Smallest distance between distinct eigenvalues of the blocks, counting
/// each complex pair twice and the pair's own gap `2τ`.
pub fn eigenvalue_separation<T>(blocks: &[BlockData<T>], to_f64: impl Fn(&T) -> f64) -> f64 {
    let mut points = Vec::new();
    for b in blocks {
        match b {
            BlockData::Real { eigenvalue, .. } => points.push((to_f64(eigenvalue), 0.0)),
            BlockData::Complex { sigma, tau, .. } => {
                points.push((to_f64(sigma), to_f64(tau)));
                points.push((to_f64(sigma), -to_f64(tau)));
            }
        }
    }
    let mut best = f64::INFINITY;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            best = best.min(((points[i].0 - points[j].0).powi(2) + (points[i].1 - points[j].1).powi(2)).sqrt());
        }
    }
    best
}

