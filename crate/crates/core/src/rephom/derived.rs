use num_bigint::BigInt;
use serde::Serialize;

use super::{check_window, HrError, LaurentRing};
use crate::exactlin::AbelianGroup;
use crate::groupkit::{GroupPresentation, SimplicialGroupModel};

/// Degree-0 representation homology for `G_m`: the group algebra `Q[Γ_ab]`.
#[derive(Clone, Debug, Serialize)]
pub struct HrDegree0 {
    pub h1: AbelianGroup,
    pub ring: LaurentRing,
}

pub fn hr_degree0(p: &GroupPresentation) -> HrDegree0 {
    let h1 = p.abelian_group();
    HrDegree0 { ring: LaurentRing::of(&h1), h1 }
}

/// Answer of the derived-abelianization algorithm.
///
/// `ranks[q - 1]` is the rank of `π_q ⊗ Q` for `q = 1..=max_degree`; `per_weight[q]` is the
/// dimension of `HR_q` in each weight, the same for every element of `h1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HrAnswer {
    pub max_degree: usize,
    pub h1: AbelianGroup,
    pub higher_homotopy: Vec<AbelianGroup>,
    pub ranks: Vec<usize>,
    pub per_weight: Vec<usize>,
}

/// One row of a weight table: `HR_degree` restricted to one weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightRow {
    pub degree: usize,
    pub weight: Vec<BigInt>,
    pub dim: usize,
}

impl HrAnswer {
    /// Rows for every weight whose free coordinates lie in `[-bound, bound]`.
    ///
    /// Weights are coordinates in `h1`: torsion coordinates first, reduced mod their order,
    /// then free coordinates.
    pub fn weight_table(&self, bound: i64) -> Vec<WeightRow> {
        let mut ranges: Vec<Vec<BigInt>> = self
            .h1
            .torsion
            .iter()
            .map(|t| num_iter(BigInt::from(0), t - 1))
            .collect();
        ranges.extend((0..self.h1.free_rank).map(|_| num_iter(BigInt::from(-bound), BigInt::from(bound))));
        let weights = cartesian(&ranges);
        let mut rows = Vec::new();
        for (degree, &dim) in self.per_weight.iter().enumerate() {
            for w in &weights {
                rows.push(WeightRow { degree, weight: w.clone(), dim });
            }
        }
        rows
    }
}

fn num_iter(lo: BigInt, hi: BigInt) -> Vec<BigInt> {
    let mut v = Vec::new();
    let mut x = lo;
    while x <= hi {
        v.push(x.clone());
        x += 1;
    }
    v
}

pub(crate) fn cartesian<T: Clone>(ranges: &[Vec<T>]) -> Vec<Vec<T>> {
    ranges.iter().fold(vec![Vec::new()], |acc, r| {
        acc.iter()
            .flat_map(|prefix| {
                r.iter().map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x.clone());
                    p
                })
            })
            .collect()
    })
}

/// Dimensions in degrees `0..=n` of the free graded-commutative algebra on `ranks[q - 1]`
/// generators in each degree `q >= 1`.
pub fn free_graded_commutative(ranks: &[usize], n: usize) -> Vec<usize> {
    let mut series = vec![0usize; n + 1];
    series[0] = 1;
    for (k, &r) in ranks.iter().enumerate() {
        let q = k + 1;
        if q > n {
            break;
        }
        for _ in 0..r {
            if q % 2 == 1 {
                for d in (q..=n).rev() {
                    series[d] += series[d - q];
                }
            } else {
                for d in q..=n {
                    series[d] += series[d - q];
                }
            }
        }
    }
    series
}

/// Representation homology for `G_m` from the homotopy of the abelianized model.
pub fn hr_derived_abelianization(m: &SimplicialGroupModel, n: usize) -> Result<HrAnswer, HrError> {
    check_window(m, n)?;
    if let Some(f) = m.first_identity_failure() {
        return Err(HrError::InvalidModel(format!("{f:?}")));
    }
    let pi = m.truncate(n + 1).abelian_moore_complex().homology();
    let h1 = pi[0].clone();
    let higher_homotopy: Vec<AbelianGroup> = pi[1..=n].to_vec();
    let ranks: Vec<usize> = higher_homotopy.iter().map(|g| g.free_rank).collect();
    let per_weight = free_graded_commutative(&ranks, n);
    Ok(HrAnswer { max_degree: n, h1, higher_homotopy, ranks, per_weight })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupkit::{milnor_model, CellModel, FreeWord, ReducedSimplicialSet};

    #[test]
    fn assembly_rule() {
        assert_eq!(free_graded_commutative(&[], 3), vec![1, 0, 0, 0]);
        assert_eq!(free_graded_commutative(&[1], 3), vec![1, 1, 0, 0]);
        assert_eq!(free_graded_commutative(&[0, 1], 6), vec![1, 0, 1, 0, 1, 0, 1]);
        assert_eq!(free_graded_commutative(&[2], 3), vec![1, 2, 1, 0]);
        assert_eq!(free_graded_commutative(&[1, 1], 4), vec![1, 1, 1, 1, 1]);
    }

    #[test]
    fn degree_zero_from_presentations() {
        let torus = GroupPresentation::new(2, vec![FreeWord::parse("x0x1x0^-1x1^-1").unwrap()]).unwrap();
        assert_eq!(hr_degree0(&torus).h1.to_string(), "Z^2");
        let c3 = GroupPresentation::new(1, vec![FreeWord::parse("x0^3").unwrap()]).unwrap();
        assert_eq!(hr_degree0(&c3).h1.to_string(), "Z/3");
        assert_eq!(hr_degree0(&GroupPresentation::free(3)).h1, AbelianGroup::free(3));
    }

    #[test]
    fn corpus_models() {
        let z = hr_derived_abelianization(&SimplicialGroupModel::constant_free(1, 5), 3).unwrap();
        assert_eq!(z.h1, AbelianGroup::free(1));
        assert_eq!(z.per_weight, vec![1, 0, 0, 0]);
        let s2 = hr_derived_abelianization(&milnor_model(&ReducedSimplicialSet::circle(), 5).unwrap(), 3).unwrap();
        assert!(s2.h1.is_trivial());
        assert_eq!(s2.ranks, vec![1, 0, 0]);
        assert_eq!(s2.per_weight, vec![1, 1, 0, 0]);
        let t2 = hr_derived_abelianization(&CellModel::torus().build(5).unwrap(), 3).unwrap();
        assert_eq!(t2.h1, AbelianGroup::free(2));
        assert_eq!(t2.per_weight, vec![1, 1, 0, 0]);
        assert_eq!(t2.weight_table(1).len(), 4 * 9);
    }

    #[test]
    fn window_is_enforced() {
        let m = SimplicialGroupModel::constant_free(1, 3);
        assert!(hr_derived_abelianization(&m, 1).is_ok());
        assert!(matches!(hr_derived_abelianization(&m, 2), Err(HrError::Window { .. })));
    }
}
