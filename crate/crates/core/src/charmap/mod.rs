//! Degree-0 and chain-level character maps from cyclic to representation homology.

mod character;
mod cocyclic;
mod triangle;

pub use character::{
    char0_gln, char0_gm_finite, char0_gm_presentation, char_chain_map_gm, CharChainMap, CharacterValue, GlnCharacter,
    GmCharacter,
};
pub use cocyclic::{
    check_cocyclic_naturality, delta_trace, generator_census, pull_back, CocyclicTraceElement, NaturalityFailure,
    NaturalityReport,
};
pub use triangle::{check_triangle_degree0, hs0, hs0_at_levels, Hs0, TriangleReport};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CharError {
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Group(#[from] crate::groupkit::GroupError),
    #[error(transparent)]
    LinAlg(#[from] crate::exactlin::LinAlgError),
}
