//! Exact linear algebra over Q and Z.

mod complex;
mod dense;
mod integer;
pub mod rank;
mod sparse;

pub use complex::{is_zero_vector, ChainComplex, ChainMap, HomologyBasis};
pub use dense::{DenseRationalMatrix, Rref};
pub use integer::{AbelianGroup, Cokernel, IntegerChainComplex, IntegerMatrix, SmithForm};
pub use sparse::{format_rational, parse_rational, SparseRationalMatrix};

/// Exact rational numbers.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinAlgError {
    #[error("entry ({row}, {col}) lies outside a {rows}x{cols} matrix")]
    IndexOutOfRange { row: usize, col: usize, rows: usize, cols: usize },
    #[error("shape mismatch: {left:?} against {right:?}")]
    ShapeMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("rows have different lengths")]
    Ragged,
    #[error("malformed chain complex: {0}")]
    ComplexShape(String),
    #[error("d_{} d_{degree} is not zero", degree - 1)]
    NotAComplex { degree: usize },
    #[error("map does not commute with the differential in degree {degree}")]
    NotAChainMap { degree: usize },
    #[error("vector is not a cycle in degree {degree}")]
    NotACycle { degree: usize },
}

/// Shorthand for an integer-valued rational.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
