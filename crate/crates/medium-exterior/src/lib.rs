//! Antisymmetric (2,2)-tensors on a 4-manifold, pointwise.
//!
//! A tensor κ is stored as the 6×6 matrix `A[b(I), b(J)] = κ^J_I` in the
//! ordered bivector basis `O = {01, 02, 03, 23, 31, 12}`: the row is the
//! output bivector and the column the input, so composition of tensors is
//! the matrix product.

pub mod error;
pub mod factor;
pub mod hodge;
pub mod index;
pub mod tensor;

pub use error::ExteriorError;
pub use factor::{factor_frame, plucker_factor, wedge, wedge_gram, Branch, FactorFrame, TwoForm, WedgeGram};
pub use hodge::{kappa_component, area_metric_inverse, area_metric_matrix, hodge_star_matrix, mix_metrics, AreaMetricMatrix, PseudoMetric4};
pub use index::{levi_civita, BivectorIndex, PAIRS};
pub use tensor::{
    compound2, conjugate_by_coordinates, decompose, hodge_basis, induced_bivector_transform,
    pairing_matrix, trace22, DecompositionParts,
};
