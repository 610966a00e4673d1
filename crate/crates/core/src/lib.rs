//! Exact computations for crossed simplicial group categories, their homology and
//! representation homology.

pub mod charmap;
pub mod crossedcat;
pub mod cychom;
pub mod exactlin;
pub mod fincat;
pub mod groupkit;
pub mod rephom;

// The guide's listings run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/exact-linear-algebra.md")]
    mod exact_linear_algebra {}
    #[doc = include_str!("../../../book/src/groups-and-models.md")]
    mod groups_and_models {}
    #[doc = include_str!("../../../book/src/crossed-categories.md")]
    mod crossed_categories {}
    #[doc = include_str!("../../../book/src/small-categories.md")]
    mod small_categories {}
    #[doc = include_str!("../../../book/src/cyclic-homology.md")]
    mod cyclic_homology {}
    #[doc = include_str!("../../../book/src/representation-homology.md")]
    mod representation_homology {}
    #[doc = include_str!("../../../book/src/characters.md")]
    mod characters {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
