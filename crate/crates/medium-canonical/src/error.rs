use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CanonicalError {
    #[error("blocks have total dimension {found}, expected {expected}")]
    Dimension { expected: usize, found: usize },
    #[error("complex block with τ = {tau} (must be positive)")]
    NonPositiveTau { tau: f64 },
    #[error("sign list has {found} entries for {expected} real blocks")]
    SignCount { expected: usize, found: usize },
    #[error("{what} is not a permutation of {len} blocks")]
    BadPermutation { what: &'static str, len: usize },
    #[error("matrix must be 6x6, got {rows}x{cols}")]
    Shape { rows: usize, cols: usize },
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("bilinear form is not symmetric (asymmetry {asymmetry:e})")]
    AsymmetricForm { asymmetry: f64 },
    #[error("bilinear form is singular")]
    SingularForm,
    #[error("matrix is not selfadjoint for the form: |BA − AᵀB| = {residual:e}")]
    NotSelfAdjoint { residual: f64 },
    #[error("ambiguous Jordan structure at {stage}: decision margin {margin:e}")]
    Ambiguous { stage: &'static str, margin: f64 },
}
