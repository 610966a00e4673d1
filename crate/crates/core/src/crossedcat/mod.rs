//! The symmetric and cyclic crossed simplicial categories ΔS and ΔC.
//!
//! Morphisms of ΔS are stored in tensor notation; ΔC^op is the sub-collection cut out by
//! [`DeltaSMorphism::is_cyclic`], reached from its generators through `ι`.

mod abelian;
mod cyclic;
mod deltas;
pub mod suites;

pub use abelian::{has_row_property, psi_tilde_sym, DecoratedHom, DecoratedObject};
pub use cyclic::{cyclic_closure, iota_word, psi_cyc_word, CycGen, GenKind};
pub use deltas::{binomial, hom_count, monotone_maps, next_permutation, DeltaSMorphism, SimplicialFactorization};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CrossedError {
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("cannot parse morphism: {0}")]
    Parse(String),
    #[error("arity mismatch: expected [{expected}], found [{found}]")]
    ArityMismatch { expected: usize, found: usize },
    #[error("generator {0} is out of range")]
    GeneratorOutOfRange(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Group(#[from] crate::groupkit::GroupError),
}
