use serde::Serialize;

use super::character::char_chain_map_gm;
use super::CharError;
use crate::crossedcat::{has_row_property, DeltaSMorphism};
use crate::exactlin::{DenseRationalMatrix, Rational};
use crate::groupkit::{pullback_via_psi, CyclicBarLevel, FiniteGroup};
use num_traits::One;

/// `HS_0(Q[Γ])` as the quotient of `Q[Γ]` by the identifications made by ΔS morphisms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hs0 {
    pub max_level: usize,
    pub dim: usize,
    /// Element labels in each class.
    pub classes: Vec<Vec<String>>,
    /// Class index of each element.
    pub class_of: Vec<usize>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Coequalizer of all ΔS morphisms between levels `0..=max_level` acting on `B_sym Γ`.
///
/// Every tuple is joined to its image under every morphism; the classes containing a
/// level-0 tuple span the degree-0 colimit.
pub fn hs0_at_levels(g: &FiniteGroup, max_level: usize) -> Hs0 {
    let levels: Vec<CyclicBarLevel<'_>> = (0..=max_level).map(|q| CyclicBarLevel::new(g, q)).collect();
    let mut offset = vec![0];
    for l in &levels {
        offset.push(offset.last().expect("non-empty") + l.len());
    }
    let mut uf = UnionFind((0..*offset.last().expect("non-empty")).collect());
    for n in 0..=max_level {
        for m in 0..=max_level {
            for f in DeltaSMorphism::enumerate(n, m) {
                let psi = f.psi_sym();
                for x in 0..levels[n].len() {
                    let y = levels[m].index(&pullback_via_psi(g, &psi, &levels[n].tuple(x)));
                    uf.union(offset[n] + x, offset[m] + y);
                }
            }
        }
    }
    let mut roots: Vec<usize> = Vec::new();
    let mut class_of = Vec::with_capacity(g.order());
    for e in 0..g.order() {
        let r = uf.find(e);
        let c = roots.iter().position(|&x| x == r).unwrap_or_else(|| {
            roots.push(r);
            roots.len() - 1
        });
        class_of.push(c);
    }
    let mut classes = vec![Vec::new(); roots.len()];
    for (e, &c) in class_of.iter().enumerate() {
        classes[c].push(g.label(e).to_string());
    }
    Hs0 { max_level, dim: roots.len(), classes, class_of }
}

/// `HS_0` from levels `<= 2`; level 1 alone only identifies conjugates.
pub fn hs0(g: &FiniteGroup) -> Hs0 {
    hs0_at_levels(g, 2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangleReport {
    pub hc0_dim: usize,
    pub hs0_dim: usize,
    pub hr0_dim: usize,
    /// Conjugate elements land in one `HS_0` class.
    pub iota_well_defined: bool,
    /// Each `HS_0` class lies in one coset of the commutator subgroup.
    pub psi_well_defined: bool,
    /// Abelianized `Ψ_sym` of every morphism used has one entry 1 per row.
    pub row_property: bool,
    pub composite_equals_character: bool,
    pub character_rank: usize,
}

impl TriangleReport {
    pub fn holds(&self) -> bool {
        self.iota_well_defined && self.psi_well_defined && self.row_property && self.composite_equals_character
    }
}

/// Degree-0 factorization of the `G_m` character `HC_0 -> HS_0 -> HR_0`.
pub fn check_triangle_degree0(g: &FiniteGroup) -> Result<TriangleReport, CharError> {
    let classes = g.conjugacy_classes();
    let hs = hs0(g);
    let ab = g.abelianization();
    let iota: Vec<usize> = classes.iter().map(|c| hs.class_of[c[0]]).collect();
    let iota_well_defined = classes.iter().zip(&iota).all(|(c, &k)| c.iter().all(|&x| hs.class_of[x] == k));
    let mut psi = vec![usize::MAX; hs.dim];
    let mut psi_well_defined = true;
    for (e, &k) in hs.class_of.iter().enumerate() {
        let coset = ab.coset[e];
        if psi[k] == usize::MAX {
            psi[k] = coset;
        } else if psi[k] != coset {
            psi_well_defined = false;
        }
    }
    let row_property =
        (0..=2).all(|n| (0..=2).all(|m| DeltaSMorphism::enumerate(n, m).iter().all(has_row_property)));
    let mut composite = DenseRationalMatrix::zeros(ab.order(), classes.len());
    for (c, &k) in iota.iter().enumerate() {
        composite.set(psi[k], c, Rational::one());
    }
    let chi = char_chain_map_gm(g, 1)?;
    Ok(TriangleReport {
        hc0_dim: classes.len(),
        hs0_dim: hs.dim,
        hr0_dim: ab.order(),
        iota_well_defined,
        psi_well_defined,
        row_property,
        composite_equals_character: psi_well_defined && composite == chi.h0_matrix,
        character_rank: chi.h0_rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hs0_dimensions() {
        assert_eq!(hs0(&FiniteGroup::symmetric(3)).dim, 2);
        assert_eq!(hs0(&FiniteGroup::cyclic(4)).dim, 4);
        assert_eq!(hs0(&FiniteGroup::trivial()).dim, 1);
        assert_eq!(hs0(&FiniteGroup::quaternion()).dim, 4);
    }

    #[test]
    fn level_one_only_sees_conjugacy() {
        assert_eq!(hs0_at_levels(&FiniteGroup::symmetric(3), 1).dim, 3);
        assert_eq!(hs0_at_levels(&FiniteGroup::quaternion(), 1).dim, 5);
    }

    #[test]
    fn triangles() {
        for g in [FiniteGroup::trivial(), FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric(3)] {
            let r = check_triangle_degree0(&g).unwrap();
            assert!(r.holds(), "{r:?}");
            assert_eq!(r.hs0_dim, r.hr0_dim);
            assert_eq!(r.character_rank, r.hr0_dim);
        }
    }
}
