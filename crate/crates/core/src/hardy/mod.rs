//! Block Toeplitz, Hankel and self-commutator sections for rational matrix
//! symbols.

mod kernel;
mod sections;
mod symbol;

pub use kernel::{hankel_kernel_inner, invariance_residual, numerical_rank_and_kernel, section_rank, supported_kernel, RankKernel};
pub use sections::{hankel_section, self_commutator_section, toeplitz_section, OperatorSection, SectionKind};
pub use symbol::MatrixSymbol;
