use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{FreeWord, GroupError};
use crate::exactlin::{AbelianGroup, Cokernel, IntegerMatrix};

/// A finite presentation `<x_0, ..., x_{r-1} | relators>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    rank: usize,
    relators: Vec<FreeWord>,
}

/// JSON form: `{"rank": 2, "relators": [[1, 2, -1, -2]]}`.
///
/// A relator is either a list of 1-based signed generator indices or a word string such as `"x0x1x0^-1x1^-1"`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PresentationJson {
    pub rank: usize,
    #[serde(default)]
    pub relators: Vec<RelatorJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RelatorJson {
    Signed(Vec<i64>),
    Word(String),
}

impl GroupPresentation {
    pub fn new(rank: usize, relators: Vec<FreeWord>) -> Result<Self, GroupError> {
        if let Some(w) = relators.iter().find(|w| w.min_rank() > rank) {
            return Err(GroupError::InvalidPresentation(format!("relator {w} uses a generator beyond rank {rank}")));
        }
        Ok(Self { rank, relators })
    }

    pub fn free(rank: usize) -> Self {
        Self { rank, relators: Vec::new() }
    }

    pub fn from_json(j: &PresentationJson) -> Result<Self, GroupError> {
        let relators = j
            .relators
            .iter()
            .enumerate()
            .map(|(i, r)| match r {
                RelatorJson::Signed(v) => FreeWord::from_signed(v),
                RelatorJson::Word(s) => FreeWord::parse(s),
            }
            .map_err(|e| GroupError::InvalidPresentation(format!("relators[{i}]: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(j.rank, relators)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relators(&self) -> &[FreeWord] {
        &self.relators
    }

    /// `rank x #relators` matrix of relator exponent sums.
    pub fn relator_matrix(&self) -> IntegerMatrix {
        let mut m = IntegerMatrix::zeros(self.rank, self.relators.len());
        for (j, r) in self.relators.iter().enumerate() {
            for (i, e) in r.exponent_sums(self.rank).into_iter().enumerate() {
                m.set(i, j, BigInt::from(e));
            }
        }
        m
    }

    /// `Γ_ab` with canonical coordinates.
    pub fn abelianization(&self) -> Cokernel {
        Cokernel::of(&self.relator_matrix())
    }

    pub fn abelian_group(&self) -> AbelianGroup {
        self.abelianization().group
    }

    /// Coordinates of the image of `w` in `Γ_ab`.
    pub fn weight(&self, w: &FreeWord) -> Result<Vec<BigInt>, GroupError> {
        if w.min_rank() > self.rank {
            return Err(GroupError::InvalidPresentation(format!("word {w} uses a generator beyond rank {}", self.rank)));
        }
        Ok(self.abelianization().coords_i64(&w.exponent_sums(self.rank)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelianizations_of_small_presentations() {
        let torus = GroupPresentation::new(2, vec![FreeWord::parse("x0x1x0^-1x1^-1").unwrap()]).unwrap();
        assert_eq!(torus.abelian_group().to_string(), "Z^2");
        let z3 = GroupPresentation::new(1, vec![FreeWord::parse("x0^3").unwrap()]).unwrap();
        assert_eq!(z3.abelian_group().to_string(), "Z/3");
        assert_eq!(GroupPresentation::free(3).abelian_group().to_string(), "Z^3");
    }

    #[test]
    fn weights_respect_relations() {
        let z3 = GroupPresentation::new(1, vec![FreeWord::parse("x0^3").unwrap()]).unwrap();
        let a = z3.weight(&FreeWord::parse("x0^4").unwrap()).unwrap();
        let b = z3.weight(&FreeWord::parse("x0").unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn json_accepts_both_relator_forms() {
        let j: PresentationJson =
            serde_json::from_str(r#"{"rank": 2, "relators": [[1, 2, -1, -2], "x0^2"]}"#).unwrap();
        let p = GroupPresentation::from_json(&j).unwrap();
        assert_eq!(p.relators().len(), 2);
        assert_eq!(p.abelian_group().to_string(), "Z + Z/2");
        let bad: PresentationJson = serde_json::from_str(r#"{"rank": 1, "relators": [[2]]}"#).unwrap();
        assert!(GroupPresentation::from_json(&bad).is_err());
    }
}
