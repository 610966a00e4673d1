//! Finite categories, functors on them, bar-complex Tor and the Grothendieck construction.

mod category;
mod functor;
mod grothendieck;
mod tor;

pub use category::{FinCategory, FinCategoryJson, Morphism, MorphismJson, INFINITE_KINDS};
pub use functor::{CatFunctor, ModuleFunctor, ModuleFunctorJson, Scalar, SetFunctorJson, SetValuedFunctor, Variance};
pub use grothendieck::{
    category_of_elements, random_shapiro_instance, shapiro_check, thomason_check, CatDiagram, CategoryOfElements,
    ShapiroReport, ThomasonReport,
};
pub use tor::{
    functor_tensor_product, nerve, nerve_homology, restrict_tor, tor_dims, BarComplex, Chain, NerveChains,
    RestrictionReport, TensorProduct, TensorTerm,
};

use crate::exactlin::LinAlgError;
use crate::groupkit::GroupError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FinCatError {
    #[error("invalid category: {0}")]
    InvalidCategory(String),
    #[error("invalid functor: {0}")]
    InvalidFunctor(String),
    #[error("{0} is an infinite category and cannot be enumerated")]
    Infinite(String),
    #[error("variance: {0}")]
    Variance(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error(transparent)]
    Group(#[from] GroupError),
}
