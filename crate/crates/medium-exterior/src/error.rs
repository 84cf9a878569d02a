use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExteriorError {
    #[error("singular Jacobian (|det J| = {det:e})")]
    SingularJacobian { det: f64 },
    #[error("singular metric (|det g| = {det:e})")]
    SingularMetric { det: f64 },
    #[error("metric is not symmetric (asymmetry {asymmetry:e})")]
    AsymmetricMetric { asymmetry: f64 },
    #[error("expected a {expected}x{expected} matrix, got {rows}x{cols}")]
    Shape { expected: usize, rows: usize, cols: usize },
    #[error("two-form is not decomposable (q∧q = {wedge_square:e})")]
    NotDecomposable { wedge_square: f64 },
    #[error("two-form is zero")]
    ZeroForm,
    #[error("wedge-Gram matrix is not a multiple of the pairing (residual {residual:e}, omega {omega:e})")]
    WedgeGram { residual: f64, omega: f64 },
    #[error("branch decision is ambiguous (D margin {d_margin:e}, zeta margin {zeta_margin:e})")]
    BranchAmbiguity { d_margin: f64, zeta_margin: f64 },
    #[error("frame construction degenerated at {stage} (margin {margin:e})")]
    Degenerate { stage: &'static str, margin: f64 },
    #[error("factorization does not reproduce the input (residual {residual:e})")]
    Reconstruction { residual: f64 },
}
