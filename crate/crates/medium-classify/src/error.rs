use medium_canonical::CanonicalError;
use medium_exterior::ExteriorError;
use thiserror::Error;

use crate::MetaclassId;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClassifyError {
    #[error("metaclass {class} takes {expected} {what}, got {got}")]
    Arity { class: MetaclassId, what: &'static str, expected: usize, got: usize },
    #[error("β{index} = {value} must be positive")]
    NonPositiveBeta { index: usize, value: f64 },
    #[error("signs {epsilons:?} are not admissible for metaclass {class}")]
    SignOrder { class: MetaclassId, epsilons: Vec<i8> },
    #[error("nonzero skewon part (max entry {residual:e} exceeds {threshold:e})")]
    Skewon { residual: f64, threshold: f64 },
    #[error("expected a 6x6 matrix, got {rows}x{cols}")]
    Shape { rows: usize, cols: usize },
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("form is not symmetric (asymmetry {asymmetry:e})")]
    Asymmetric { asymmetry: f64 },
    #[error("form has inertia (neg {neg}, zero {zero}, pos {pos}); expected (3, 0, 3)")]
    Signature { neg: usize, zero: usize, pos: usize },
    #[error("parameters lie on a class boundary (eigenvalue separation {separation:e} < {delta})")]
    Boundary { separation: f64, delta: f64 },
    #[error("input is not rational: {0}")]
    NotRational(String),
    #[error("exact path unavailable: {0}")]
    Irrational(&'static str),
    #[error("witness matrix is singular")]
    SingularWitness,
    #[error("internal consistency check failed at {stage} (residual {residual:e})")]
    Inconsistent { stage: &'static str, residual: f64 },
    #[error(transparent)]
    Canonical(#[from] CanonicalError),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
}

impl ClassifyError {
    /// True for decisions that fell inside a tolerance gray zone, as opposed
    /// to inputs violating a precondition.
    pub fn is_ambiguity(&self) -> bool {
        matches!(
            self,
            ClassifyError::Canonical(CanonicalError::Ambiguous { .. })
                | ClassifyError::Exterior(ExteriorError::BranchAmbiguity { .. })
                | ClassifyError::Inconsistent { .. }
        )
    }
}
