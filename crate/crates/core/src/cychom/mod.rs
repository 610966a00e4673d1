//! Cyclic homology of group algebras of finite groups over Q.

mod bicomplex;
mod module;

pub use bicomplex::{class_block_complex, hc0_basis, hc_dims, reduced_hc_dims, Hc0Basis};
pub use module::{CyclicModule, GradedDims};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CycHomError {
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    LinAlg(#[from] crate::exactlin::LinAlgError),
}
