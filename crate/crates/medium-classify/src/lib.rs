//! The 23 metaclasses of skewon-free (2,2)-tensors on a 4-manifold.
//!
//! Each metaclass has a parametrized 6×6 normal form `V` in the bivector
//! basis `O = {01, 02, 03, 23, 31, 12}`. [`classify`] finds the class,
//! parameters and explicit witnesses for a given tensor; [`realize`] goes
//! the other way.

mod batch;
mod classify;
mod error;
mod fit;
pub mod golden;
mod id;
mod params;
mod realize;
mod template;

pub use batch::{classify_batch, classify_batch_sequential};
pub use classify::{
    classify, classify_exact, sim_witness_check, skewon_gate, ArithmeticPath, ClassificationResult,
    CoordinateWitness, Residuals, WitnessReport,
};
pub use error::ClassifyError;
pub use fit::{canonical_params, eigenvalue_separation, template_blocks, BlockData};
pub use id::{MetaclassId, UnknownMetaclass};
pub use params::{rational_entry, ExactParams, MetaclassParams};
pub use realize::{condition_number, random_jacobian, random_params, realize, DEFAULT_SEPARATION};
pub use template::{
    admissible_sign_patterns, metaclass_template, metaclass_template_exact, sign_pattern, sign_pattern_form,
    solve_congruence,
};

/// Default relative tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;
