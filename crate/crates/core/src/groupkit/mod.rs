//! Free groups, finite groups, presentations and free simplicial groups.

mod cyclic_bar;
mod finite;
mod presentation;
mod simplicial;
mod sset;
mod word;

pub use cyclic_bar::{evaluate_word, pullback_via_psi, CyclicBarLevel};
pub use finite::{ElementRef, FiniteAbelianization, FiniteGroup, FiniteGroupJson};
pub use presentation::{GroupPresentation, PresentationJson, RelatorJson};
pub use simplicial::{
    milnor_model, surjections, Cell, CellLetter, CellModel, ExplicitModelJson, IdentityFailure, SimplicialGroupModel,
    SimplicialModelJson,
};
pub use sset::{FaceRef, NondegSimplex, ReducedSimplicialSet, ReducedSimplicialSetJson};
pub use word::{FreeWord, GroupHom, Letter};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("invalid simplicial model: {0}")]
    InvalidModel(String),
    #[error("simplicial identity {relation} fails at level {level} on generator {generator}")]
    SimplicialIdentity { level: usize, relation: String, generator: String },
}
