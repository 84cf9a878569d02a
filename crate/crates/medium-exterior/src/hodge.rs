use medium_exact::{linalg, Mat};
use serde::{Deserialize, Serialize};

use crate::error::ExteriorError;
use crate::index::{levi_civita, BivectorIndex, PAIRS};

/// A nondegenerate symmetric 4×4 metric at a point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PseudoMetric4 {
    entries: [[f64; 4]; 4],
    /// Number of negative and positive eigenvalues.
    pub signature: (usize, usize),
}

impl PseudoMetric4 {
    pub fn new(m: &Mat<f64>) -> Result<Self, ExteriorError> {
        if m.nrows() != 4 || m.ncols() != 4 {
            return Err(ExteriorError::Shape { expected: 4, rows: m.nrows(), cols: m.ncols() });
        }
        let scale = m.max_abs().max(f64::MIN_POSITIVE);
        let asym = m.max_diff(&m.transpose());
        if asym > 1e-12 * scale {
            return Err(ExteriorError::AsymmetricMetric { asymmetry: asym });
        }
        let sym = Mat::from_fn(4, 4, |i, j| 0.5 * (m[(i, j)] + m[(j, i)]));
        let d = linalg::det(&sym);
        if d == 0.0 || d.abs() <= 1e-14 * scale.powi(4) || !d.is_finite() {
            return Err(ExteriorError::SingularMetric { det: d.abs() });
        }
        let eig = nalgebra::SymmetricEigen::new(sym.to_nalgebra());
        let neg = eig.eigenvalues.iter().filter(|&&x| x < 0.0).count();
        Ok(Self {
            entries: std::array::from_fn(|i| std::array::from_fn(|j| sym[(i, j)])),
            signature: (neg, 4 - neg),
        })
    }

    pub fn diagonal(d: [f64; 4]) -> Result<Self, ExteriorError> {
        Self::new(&Mat::diag(&d))
    }

    pub fn matrix(&self) -> Mat<f64> {
        Mat::from_fn(4, 4, |i, j| self.entries[i][j])
    }

    pub fn det(&self) -> f64 {
        linalg::det(&self.matrix())
    }

    pub fn inverse(&self) -> Mat<f64> {
        let inv = self.matrix().to_nalgebra().try_inverse().expect("checked nondegenerate");
        let m = Mat::from_nalgebra(&inv);
        Mat::from_fn(4, 4, |i, j| 0.5 * (m[(i, j)] + m[(j, i)]))
    }
}

/// Matrix of `∗_g` on 2-forms: `κ^{ij}_{rs} = √|g| g^{ia} g^{jb} ε_{abrs}`.
pub fn hodge_star_matrix(g: &PseudoMetric4) -> Mat<f64> {
    let ginv = g.inverse();
    let root = g.det().abs().sqrt();
    Mat::from_fn(6, 6, |row, col| {
        let (r, s) = PAIRS[row];
        let (i, j) = PAIRS[col];
        let mut acc = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                let e = levi_civita(a, b, r, s);
                if e != 0 {
                    acc += ginv[(i, a)] * ginv[(j, b)] * e as f64;
                }
            }
        }
        root * acc
    })
}

/// `k_{ij} = g_{ia} h^{ab} g_{bj}`.
pub fn mix_metrics(g: &PseudoMetric4, h: &PseudoMetric4) -> Result<PseudoMetric4, ExteriorError> {
    let gm = g.matrix();
    let k = &(&gm * &h.inverse()) * &gm;
    let k = Mat::from_fn(4, 4, |i, j| 0.5 * (k[(i, j)] + k[(j, i)]));
    PseudoMetric4::new(&k)
}

/// `κ^{ij}_{kl}` read off the 6×6 matrix, with the antisymmetric completion.
pub fn kappa_component(a: &Mat<f64>, i: usize, j: usize, k: usize, l: usize) -> f64 {
    match (BivectorIndex::from_pair(i, j), BivectorIndex::from_pair(k, l)) {
        (Some((input, s1)), Some((output, s2))) => {
            (s1 * s2) as f64 * a[(output.position(), input.position())]
        }
        _ => 0.0,
    }
}

/// The area-metric matrix `(G_{I₁I₂J₁J₂})_{IJ}` of a tensor, together with
/// how far it is from symmetric.
#[derive(Debug, Clone, PartialEq)]
pub struct AreaMetricMatrix {
    pub matrix: Mat<f64>,
    /// Max-entry asymmetry `‖G − Gᵀ‖`.
    pub asymmetry: f64,
}

impl AreaMetricMatrix {
    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.asymmetry <= tol * self.matrix.max_abs().max(1.0)
    }
}

/// `G_{ijkl} = ½ |det g|^{1/2} κ^{rs}_{ij} ε_{rskl}`, evaluated component by
/// component.
pub fn area_metric_matrix(a: &Mat<f64>, g: &PseudoMetric4) -> AreaMetricMatrix {
    let root = g.det().abs().sqrt();
    let matrix = Mat::from_fn(6, 6, |row, col| {
        let (i, j) = PAIRS[row];
        let (k, l) = PAIRS[col];
        let mut acc = 0.0;
        for r in 0..4 {
            for s in 0..4 {
                let e = levi_civita(r, s, k, l);
                if e != 0 {
                    acc += kappa_component(a, r, s, i, j) * e as f64;
                }
            }
        }
        0.5 * root * acc
    });
    let asymmetry = matrix.max_diff(&matrix.transpose());
    AreaMetricMatrix { matrix, asymmetry }
}

/// Inverse of [`area_metric_matrix`] through the contraction
/// `ε^{klmn} ε_{klrs} = 2(δ^m_r δ^n_s − δ^m_s δ^n_r)`:
/// `κ^{mn}_{ij} = (2√|g|)⁻¹ G_{ijkl} ε^{klmn}`.
pub fn area_metric_inverse(area: &Mat<f64>, g: &PseudoMetric4) -> Mat<f64> {
    let root = g.det().abs().sqrt();
    let comp = |i: usize, j: usize, k: usize, l: usize| -> f64 {
        match (BivectorIndex::from_pair(i, j), BivectorIndex::from_pair(k, l)) {
            (Some((p, s1)), Some((q, s2))) => (s1 * s2) as f64 * area[(p.position(), q.position())],
            _ => 0.0,
        }
    };
    Mat::from_fn(6, 6, |row, col| {
        let (i, j) = PAIRS[row];
        let (m, n) = PAIRS[col];
        let mut acc = 0.0;
        for k in 0..4 {
            for l in 0..4 {
                let e = levi_civita(k, l, m, n);
                if e != 0 {
                    acc += comp(i, j, k, l) * e as f64;
                }
            }
        }
        acc / (2.0 * root)
    })
}
