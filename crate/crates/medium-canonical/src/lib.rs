//! Real Jordan normal forms, Segre types and the simultaneous canonical
//! form of a pair `(A, B)` with `B` symmetric nondegenerate and `BA = AᵀB`.
//!
//! Block conventions: `R_m(λ)` carries ones on the superdiagonal and
//! `C_{2k}(σ ± iτ)` has diagonal 2×2 blocks `[[σ, τ], [−τ, σ]]` with `I₂` on
//! the block superdiagonal. `F_m` is the antidiagonal matrix of ones.

mod blocks;
mod error;
mod exact;
mod numeric;
mod pair;
mod segre;

pub use blocks::{
    assemble_blocks, companion_matrix, f_matrix, permutation_for_blocks, ComplexBlock, JordanBlock, JordanForm, RealBlock,
};
pub use error::CanonicalError;
pub use exact::{exact_structure, ExactStructure};
pub use numeric::{real_jordan, JordanDecomposition, DEFAULT_TOL};
pub use pair::{h_canonical_pair, HCanonicalPair};
pub use segre::SegreType;
