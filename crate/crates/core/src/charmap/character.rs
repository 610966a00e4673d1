use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::CharError;
use crate::cychom::CyclicModule;
use crate::exactlin::{ChainComplex, ChainMap, DenseRationalMatrix, Rational, SparseRationalMatrix};
use crate::groupkit::{FiniteGroup, FreeWord, GroupPresentation};
use crate::rephom::{GenericMatrices, LaurentRing, Poly};

/// The degree-0 `G_m` character of an element: the monomial `t^{[g]}` in `Q[Γ_ab]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GmCharacter {
    pub weight: Vec<BigInt>,
    pub ring: LaurentRing,
    pub monomial: String,
}

impl GmCharacter {
    fn new(weight: Vec<BigInt>, ring: LaurentRing) -> Self {
        let names = ring.names();
        let parts: Vec<String> = weight
            .iter()
            .zip(&names)
            .filter(|(e, _)| !e.is_zero())
            .map(|(e, v)| if e.is_one() { v.clone() } else { format!("{v}^{e}") })
            .collect();
        let monomial = if parts.is_empty() { "1".to_string() } else { parts.join("*") };
        Self { weight, ring, monomial }
    }
}

/// The degree-0 `GL_n` character: the trace of the word evaluated at generic matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GlnCharacter {
    pub n: usize,
    pub trace: String,
    #[serde(skip)]
    pub poly: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CharacterValue {
    Gm(GmCharacter),
    Gln(GlnCharacter),
}

pub fn char0_gm_presentation(p: &GroupPresentation, w: &FreeWord) -> Result<GmCharacter, CharError> {
    let weight = p.weight(w)?;
    Ok(GmCharacter::new(weight, LaurentRing::of(&p.abelian_group())))
}

pub fn char0_gm_finite(g: &FiniteGroup, element: usize) -> Result<GmCharacter, CharError> {
    if element >= g.order() {
        return Err(CharError::InvalidElement(format!("element {element} of a group of order {}", g.order())));
    }
    let ab = g.abelianization();
    Ok(GmCharacter::new(ab.coords[ab.coset[element]].clone(), LaurentRing::of(&ab.group)))
}

pub fn char0_gln(p: &GroupPresentation, w: &FreeWord, n: usize) -> Result<GlnCharacter, CharError> {
    if n == 0 {
        return Err(CharError::InvalidElement("matrix size must be positive".into()));
    }
    if w.min_rank() > p.rank() {
        return Err(CharError::InvalidElement(format!("word {w} uses a generator beyond rank {}", p.rank())));
    }
    let gm = GenericMatrices::new(p.rank(), n);
    let poly = gm.evaluate(w).trace();
    Ok(GlnCharacter { n, trace: gm.render(&poly), poly })
}

/// The chain-level `G_m` character on small models.
///
/// The source is the Hochschild complex `(Q[Γ^{q+1}], b)` of the cyclic module; the target is the
/// constant simplicial vector space `Q[Γ_ab]`, whose differential is the identity in even
/// degrees `>= 2` and zero otherwise. A tuple goes to the coset of `g_0 ... g_q`. Only the
/// degree-0 behaviour carries a claim about characters.
#[derive(Clone, Debug)]
pub struct CharChainMap {
    pub max_degree: usize,
    pub source: ChainComplex,
    pub target: ChainComplex,
    pub map: ChainMap,
    /// `|Γ_ab| x #classes` matrix of the induced map on `H_0` in the class and monomial bases.
    pub h0_matrix: DenseRationalMatrix,
    pub h0_rank: usize,
    /// Labels of the conjugacy classes indexing the columns.
    pub classes: Vec<String>,
    /// Monomials indexing the rows.
    pub monomials: Vec<String>,
}

pub fn char_chain_map_gm(g: &FiniteGroup, n: usize) -> Result<CharChainMap, CharError> {
    let module = CyclicModule::build(g, n + 1);
    let source = ChainComplex::new(module.dims.clone(), module.b.clone())?;
    let ab = g.abelianization();
    let a = ab.order();
    let mut tdiffs = vec![SparseRationalMatrix::zeros(0, a)];
    for q in 1..=n + 1 {
        tdiffs.push(if q % 2 == 0 { SparseRationalMatrix::identity(a) } else { SparseRationalMatrix::zeros(a, a) });
    }
    let target = ChainComplex::new(vec![a; n + 2], tdiffs)?;
    let components: Vec<SparseRationalMatrix> = (0..=n + 1)
        .map(|q| {
            let level = crate::groupkit::CyclicBarLevel::new(g, q);
            SparseRationalMatrix::from_triplets(
                a,
                level.len(),
                (0..level.len()).map(|x| (ab.coset[level.product(&level.tuple(x))], x, Rational::one())),
            )
        })
        .collect::<Result<_, _>>()?;
    let map = ChainMap::new(&source, &target, components)?;
    let classes = g.conjugacy_classes();
    let mut h0 = DenseRationalMatrix::zeros(a, classes.len());
    for (c, members) in classes.iter().enumerate() {
        let image = map.component(0).apply(&unit(g.order(), members[0]));
        for (r, v) in image.into_iter().enumerate() {
            h0.set(r, c, v);
        }
    }
    let induced = map.induced_on_homology(0, &source.homology_basis(0), &target.homology_basis(0))?;
    let h0_rank = h0.rank();
    if induced.rank() != h0_rank {
        return Err(CharError::Invariant(format!(
            "H_0 character has rank {} on a homology basis but {h0_rank} on classes",
            induced.rank()
        )));
    }
    let monomials = (0..a).map(|c| GmCharacter::new(ab.coords[c].clone(), LaurentRing::of(&ab.group)).monomial).collect();
    let classes = classes.iter().map(|c| g.label(c[0]).to_string()).collect();
    Ok(CharChainMap { max_degree: n, source, target, map, h0_matrix: h0, h0_rank, classes, monomials })
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::q;

    fn pres(rank: usize, rels: &[&str]) -> GroupPresentation {
        GroupPresentation::new(rank, rels.iter().map(|r| FreeWord::parse(r).unwrap()).collect()).unwrap()
    }

    #[test]
    fn gm_values() {
        let z = GroupPresentation::free(1);
        assert_eq!(char0_gm_presentation(&z, &FreeWord::parse("x0^3").unwrap()).unwrap().monomial, "t1^3");
        let c2 = FiniteGroup::cyclic(2);
        let nontrivial = (0..2).find(|&x| x != c2.identity()).unwrap();
        let v = char0_gm_finite(&c2, nontrivial).unwrap();
        assert_eq!(v.monomial, "u1");
        assert_eq!(v.ring.to_string(), "Q[u1]/(u1^2 - 1)");
        assert_eq!(char0_gm_finite(&c2, c2.identity()).unwrap().monomial, "1");
        assert!(char0_gm_finite(&c2, 7).is_err());
    }

    #[test]
    fn gm_is_a_class_function() {
        for g in [FiniteGroup::symmetric(3), FiniteGroup::quaternion(), FiniteGroup::dihedral(4)] {
            for class in g.conjugacy_classes() {
                let first = char0_gm_finite(&g, class[0]).unwrap();
                assert!(class.iter().all(|&x| char0_gm_finite(&g, x).unwrap() == first));
            }
            for a in 0..g.order() {
                for b in 0..g.order() {
                    assert_eq!(char0_gm_finite(&g, g.mul(a, b)).unwrap(), char0_gm_finite(&g, g.mul(b, a)).unwrap());
                }
            }
        }
    }

    #[test]
    fn gln_traces() {
        let f2 = GroupPresentation::free(2);
        assert_eq!(char0_gln(&f2, &FreeWord::generator(0), 2).unwrap().trace, "x0_11 + x0_22");
        let one = char0_gln(&f2, &FreeWord::identity(), 3).unwrap();
        assert_eq!(one.poly.as_constant(), Some(q(3)));
        let xy = char0_gln(&f2, &FreeWord::parse("x0x1").unwrap(), 2).unwrap();
        let yx = char0_gln(&f2, &FreeWord::parse("x1x0").unwrap(), 2).unwrap();
        assert_eq!(xy, yx);
        assert_eq!(xy.poly.terms().count(), 4);
        assert!(char0_gln(&pres(1, &[]), &FreeWord::generator(1), 2).is_err());
    }

    #[test]
    fn chain_maps() {
        let triv = char_chain_map_gm(&FiniteGroup::trivial(), 3).unwrap();
        assert_eq!(triv.h0_matrix, DenseRationalMatrix::identity(1));
        let c2 = char_chain_map_gm(&FiniteGroup::cyclic(2), 3).unwrap();
        assert_eq!(c2.h0_rank, 2);
        assert_eq!(c2.h0_matrix.rows(), 2);
        let s3 = char_chain_map_gm(&FiniteGroup::symmetric(3), 2).unwrap();
        assert_eq!((s3.h0_matrix.rows(), s3.h0_matrix.cols(), s3.h0_rank), (2, 3, 2));
    }
}
