//! `K_0` of the level algebras and of `E ⋊ ℤ` via the Wang sequence.

pub mod blocks;
pub mod modp;
pub mod snf;
pub mod wang;

use thiserror::Error;

use crate::crossed::CrossedError;
use crate::group::GroupError;
use crate::hecke::HeckeError;
use crate::laurent::LaurentError;

pub use blocks::{block_decompose, center, certify_semisimple, suggested_conductor, SemisimpleDecomposition, SemisimplicityCertificate};
pub use snf::{smith_normal_form, SmithForm, SnfCertificate};
pub use blocks::BlockSummary;
pub use wang::{
    aut_k0, colim_k0, colim_k0_with, induced_k0, unit_orbit_count, wang_assemble, wang_assemble_with, ColimK0, Decomposer, K0Matrix,
    NegativeK, WangResult,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KTheoryError {
    #[error("the trace form is degenerate; null vector {witness:?}")]
    NondegenerateTraceFailure { witness: Vec<String> },
    #[error("a simple component is not split over the coefficient field ({reason}); try conductor {suggested_conductor}")]
    NonSplitBlock { suggested_conductor: u64, reason: String },
    #[error("block decomposition needs a trivial coefficient action")]
    SemilinearAlgebra,
    #[error("conductor {0} has a non-cyclic unit group, so no inert prime exists")]
    UnsupportedConductor(u64),
    #[error("not an idempotent: {0}")]
    NotIdempotent(String),
    #[error("the automorphism does not permute the blocks (block {0})")]
    NotPermutation(usize),
    #[error("the map K_0 at level {from} -> level {to} is not split injective")]
    NotSplitInjective { from: usize, to: usize },
    #[error(transparent)]
    Crossed(#[from] CrossedError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error(transparent)]
    Hecke(#[from] HeckeError),
    #[error(transparent)]
    Group(#[from] GroupError),
}
