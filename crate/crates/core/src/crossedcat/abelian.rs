use num_bigint::BigInt;
use serde::Serialize;

use super::{CrossedError, DeltaSMorphism};
use crate::groupkit::GroupHom;

/// An object `(<n>; k_1, ..., k_n)` of the decorated free-group category.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecoratedObject {
    pub arity: usize,
    pub decoration: Vec<i64>,
}

impl DecoratedObject {
    pub fn new(arity: usize, decoration: Vec<i64>) -> Result<Self, CrossedError> {
        if decoration.len() != arity {
            return Err(CrossedError::InvalidMorphism(format!(
                "decoration has {} entries for arity {arity}",
                decoration.len()
            )));
        }
        Ok(Self { arity, decoration })
    }

    pub fn constant(arity: usize, m: i64) -> Self {
        Self { arity, decoration: vec![m; arity] }
    }
}

/// A homomorphism together with decorated source and target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoratedHom {
    pub hom: GroupHom,
    pub source: DecoratedObject,
    pub target: DecoratedObject,
}

impl DecoratedHom {
    /// The abelianized map carries the source decoration to the target decoration.
    pub fn respects_decorations(&self) -> bool {
        let a = self.hom.abelianize();
        let v: Vec<BigInt> = self.source.decoration.iter().map(|&x| BigInt::from(x)).collect();
        let w: Vec<BigInt> = self.target.decoration.iter().map(|&x| BigInt::from(x)).collect();
        a.apply(&v) == w
    }

    /// The projection forgetting decorations.
    pub fn forget(&self) -> &GroupHom {
        &self.hom
    }
}

/// The lift of `Ψ_sym(f)` with every generator decorated by `m`.
pub fn psi_tilde_sym(f: &DeltaSMorphism, m: i64) -> Result<DecoratedHom, CrossedError> {
    let d = DecoratedHom {
        hom: f.psi_sym(),
        source: DecoratedObject::constant(f.target() + 1, m),
        target: DecoratedObject::constant(f.source() + 1, m),
    };
    if d.respects_decorations() {
        Ok(d)
    } else {
        Err(CrossedError::Invariant(format!("decoration {m} is not preserved by {f}")))
    }
}

/// Whether every row of a matrix has exactly one non-zero entry and that entry is 1.
pub fn has_row_property(f: &DeltaSMorphism) -> bool {
    let a = f.abelianize_psi_sym();
    (0..a.rows()).all(|r| {
        let nonzero: Vec<&BigInt> = (0..a.cols()).map(|c| a.get(r, c)).filter(|x| **x != BigInt::from(0)).collect();
        nonzero.len() == 1 && *nonzero[0] == BigInt::from(1)
    })
}
