use medium_exact::Mat;

use crate::{classify, ClassificationResult, ClassifyError};

/// Classifies many tensors, in parallel when the `parallel` feature is on.
pub fn classify_batch(inputs: &[Mat<f64>], tol: f64) -> Vec<Result<ClassificationResult, ClassifyError>> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        inputs.par_iter().map(|a| classify(a, tol)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    classify_batch_sequential(inputs, tol)
}

/// Single-threaded [`classify_batch`].
pub fn classify_batch_sequential(inputs: &[Mat<f64>], tol: f64) -> Vec<Result<ClassificationResult, ClassifyError>> {
    inputs.iter().map(|a| classify(a, tol)).collect()
}
