use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{CatFunctor, FinCatError, FinCategory, ModuleFunctor, Variance};
use crate::exactlin::{format_rational, ChainComplex, ChainMap, DenseRationalMatrix, Rational, SparseRationalMatrix};

/// A string `c_0 -f_1-> c_1 -> ... -f_q-> c_q` of composable non-identity morphisms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain {
    pub start: usize,
    pub arrows: Vec<usize>,
}

impl Chain {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn last_object(&self, c: &FinCategory) -> usize {
        self.arrows.last().map_or(self.start, |&f| c.target(f))
    }

    /// The `i`-th face, or `None` when it is degenerate.
    pub fn face(&self, c: &FinCategory, i: usize) -> Option<Chain> {
        let q = self.arrows.len();
        assert!(q >= 1 && i <= q, "face {i} of a chain of length {q}");
        if i == 0 {
            Some(Chain { start: c.target(self.arrows[0]), arrows: self.arrows[1..].to_vec() })
        } else if i == q {
            Some(Chain { start: self.start, arrows: self.arrows[..q - 1].to_vec() })
        } else {
            let h = c.compose(self.arrows[i], self.arrows[i - 1]);
            if c.is_identity(h) {
                return None;
            }
            let mut arrows = self.arrows[..i - 1].to_vec();
            arrows.push(h);
            arrows.extend_from_slice(&self.arrows[i + 1..]);
            Some(Chain { start: self.start, arrows })
        }
    }

    /// Image under a functor, or `None` when some arrow goes to an identity.
    pub fn map(&self, f: &CatFunctor, target: &FinCategory) -> Option<Chain> {
        let arrows: Vec<usize> = self.arrows.iter().map(|&a| f.morphisms[a]).collect();
        if arrows.iter().any(|&a| target.is_identity(a)) {
            return None;
        }
        Some(Chain { start: f.objects[self.start], arrows })
    }
}

/// All non-degenerate chains of length `0..=top`, in a fixed order.
#[derive(Clone, Debug)]
pub struct NerveChains {
    levels: Vec<Vec<Chain>>,
    index: Vec<HashMap<Chain, usize>>,
}

impl NerveChains {
    pub fn new(c: &FinCategory, top: usize) -> Self {
        let mut levels: Vec<Vec<Chain>> = vec![(0..c.num_objects()).map(|o| Chain { start: o, arrows: vec![] }).collect()];
        for q in 1..=top {
            let next: Vec<Chain> = levels[q - 1]
                .iter()
                .flat_map(|ch| {
                    let end = ch.last_object(c);
                    c.non_identity_out(end).map(move |f| {
                        let mut arrows = ch.arrows.clone();
                        arrows.push(f);
                        Chain { start: ch.start, arrows }
                    })
                })
                .collect();
            levels.push(next);
        }
        let index = levels.iter().map(|l| l.iter().cloned().enumerate().map(|(i, ch)| (ch, i)).collect()).collect();
        Self { levels, index }
    }

    pub fn level(&self, q: usize) -> &[Chain] {
        &self.levels[q]
    }

    pub fn index_of(&self, q: usize, ch: &Chain) -> usize {
        self.index[q][ch]
    }

    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }
}

/// The normalized two-sided bar complex `B_q = ⊕ N(c_q) ⊗ M(c_0)` over non-degenerate chains.
#[derive(Clone, Debug)]
pub struct BarComplex {
    pub chains: NerveChains,
    /// `offsets[q][k]` is where the block of chain `k` starts in degree `q`.
    pub offsets: Vec<Vec<usize>>,
    pub complex: ChainComplex,
}

fn check_pair(c: &FinCategory, n: &ModuleFunctor, m: &ModuleFunctor) -> Result<(), FinCatError> {
    if n.variance != Variance::Contravariant || m.variance != Variance::Covariant {
        return Err(FinCatError::Variance("Tor needs a contravariant and a covariant functor".into()));
    }
    n.validate(c)?;
    m.validate(c)?;
    Ok(())
}

impl BarComplex {
    pub fn new(c: &FinCategory, n: &ModuleFunctor, m: &ModuleFunctor, top: usize) -> Result<Self, FinCatError> {
        check_pair(c, n, m)?;
        let chains = NerveChains::new(c, top);
        let block = |ch: &Chain| n.dims[ch.last_object(c)] * m.dims[ch.start];
        let offsets: Vec<Vec<usize>> = (0..=top)
            .map(|q| {
                let mut acc = 0;
                let mut v = Vec::with_capacity(chains.level(q).len());
                for ch in chains.level(q) {
                    v.push(acc);
                    acc += block(ch);
                }
                v.push(acc);
                v
            })
            .collect();
        let dims: Vec<usize> = offsets.iter().map(|o| *o.last().expect("non-empty")).collect();
        let mut diffs = vec![SparseRationalMatrix::zeros(0, dims[0])];
        for q in 1..=top {
            let triplets: Vec<Vec<(usize, usize, Rational)>> = chains
                .level(q)
                .par_iter()
                .enumerate()
                .map(|(k, ch)| {
                    let mut out = Vec::new();
                    let col0 = offsets[q][k];
                    let (c0, cq) = (ch.start, ch.last_object(c));
                    let (dn, dm) = (n.dims[cq], m.dims[c0]);
                    for i in 0..=q {
                        let Some(face) = ch.face(c, i) else { continue };
                        let row0 = offsets[q - 1][chains.index_of(q - 1, &face)];
                        let sign = if i % 2 == 0 { Rational::from_integer(1.into()) } else { Rational::from_integer((-1).into()) };
                        if i == 0 {
                            // n ⊗ M(f_1) m
                            let dm1 = m.dims[face.start];
                            for (r, cc, v) in m.map(ch.arrows[0]).iter() {
                                for a in 0..dn {
                                    out.push((row0 + a * dm1 + r, col0 + a * dm + cc, &sign * v));
                                }
                            }
                        } else if i == q {
                            // N(f_q) n ⊗ m
                            for (r, cc, v) in n.map(ch.arrows[q - 1]).iter() {
                                for b in 0..dm {
                                    out.push((row0 + r * dm + b, col0 + cc * dm + b, &sign * v));
                                }
                            }
                        } else {
                            for e in 0..dn * dm {
                                out.push((row0 + e, col0 + e, sign.clone()));
                            }
                        }
                    }
                    out
                })
                .collect();
            let d = SparseRationalMatrix::from_triplets(dims[q - 1], dims[q], triplets.into_iter().flatten())?;
            diffs.push(d);
        }
        let complex = ChainComplex::new(dims, diffs).map_err(|e| FinCatError::Invariant(format!("bar complex: {e}")))?;
        Ok(Self { chains, offsets, complex })
    }
}

/// `dim Tor_q` for `q = 0..=bound`.
pub fn tor_dims(c: &FinCategory, n: &ModuleFunctor, m: &ModuleFunctor, bound: usize) -> Result<Vec<usize>, FinCatError> {
    let bar = BarComplex::new(c, n, m, bound + 1)?;
    let mut h = bar.complex.homology_dims();
    h.truncate(bound + 1);
    Ok(h)
}

/// A basis element `Σ coeff · (n_i ⊗ m_j)` at object `c` of `⊕_c N(c) ⊗ M(c)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TensorTerm {
    pub object: String,
    pub n_index: usize,
    pub m_index: usize,
    pub coefficient: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TensorProduct {
    pub dim: usize,
    pub basis: Vec<Vec<TensorTerm>>,
}

/// `N ⊗_C M` as the cokernel of the relation map `N(φ)x ⊗ y - x ⊗ M(φ)y`.
pub fn functor_tensor_product(c: &FinCategory, n: &ModuleFunctor, m: &ModuleFunctor) -> Result<TensorProduct, FinCatError> {
    let bar = BarComplex::new(c, n, m, 1)?;
    let hb = bar.complex.homology_basis(0);
    let basis = hb
        .representatives
        .iter()
        .map(|v| {
            let mut terms = Vec::new();
            for (k, ch) in bar.chains.level(0).iter().enumerate() {
                let dm = m.dims[ch.start];
                for e in bar.offsets[0][k]..bar.offsets[0][k + 1] {
                    if !num_traits::Zero::is_zero(&v[e]) {
                        let local = e - bar.offsets[0][k];
                        terms.push(TensorTerm {
                            object: c.objects()[ch.start].clone(),
                            n_index: local / dm,
                            m_index: local % dm,
                            coefficient: format_rational(&v[e]),
                        });
                    }
                }
            }
            terms
        })
        .collect();
    Ok(TensorProduct { dim: hb.dim(), basis })
}

/// Normalized chains on the nerve, degrees `0..=top`.
pub fn nerve(c: &FinCategory, top: usize) -> ChainComplex {
    let k = ModuleFunctor::constant(c, Variance::Covariant);
    let kop = ModuleFunctor::constant(c, Variance::Contravariant);
    BarComplex::new(c, &kop, &k, top).expect("constant functors are valid").complex
}

/// Rational homology of the nerve in degrees `0..=bound`.
pub fn nerve_homology(c: &FinCategory, bound: usize) -> Vec<usize> {
    let mut h = nerve(c, bound + 1).homology_dims();
    h.truncate(bound + 1);
    h
}

#[derive(Clone, Debug)]
pub struct RestrictionReport {
    pub source_dims: Vec<usize>,
    pub target_dims: Vec<usize>,
    /// Matrices of `Tor^D_q(f^*N, f^*M) -> Tor^C_q(N, M)` in chosen homology bases.
    pub induced: Vec<DenseRationalMatrix>,
}

/// The chain map between bar complexes induced by `f: D -> C`, and its effect on Tor.
pub fn restrict_tor(
    d: &FinCategory,
    c: &FinCategory,
    f: &CatFunctor,
    n: &ModuleFunctor,
    m: &ModuleFunctor,
    bound: usize,
) -> Result<RestrictionReport, FinCatError> {
    f.validate(d, c)?;
    let (fn_, fm) = (n.pullback(f), m.pullback(f));
    let src = BarComplex::new(d, &fn_, &fm, bound + 1)?;
    let tgt = BarComplex::new(c, n, m, bound + 1)?;
    let components = (0..=bound + 1)
        .map(|q| {
            let mut mat = SparseRationalMatrix::zeros(tgt.complex.dims()[q], src.complex.dims()[q]);
            for (k, ch) in src.chains.level(q).iter().enumerate() {
                if let Some(image) = ch.map(f, c) {
                    let t = tgt.offsets[q][tgt.chains.index_of(q, &image)];
                    let s = src.offsets[q][k];
                    for e in 0..src.offsets[q][k + 1] - s {
                        mat.add_int_at(t + e, s + e, 1);
                    }
                }
            }
            mat
        })
        .collect();
    let map = ChainMap::new(&src.complex, &tgt.complex, components)
        .map_err(|e| FinCatError::Invariant(format!("restriction: {e}")))?;
    let induced = (0..=bound)
        .map(|q| {
            let sb = src.complex.homology_basis(q);
            let tb = tgt.complex.homology_basis(q);
            map.induced_on_homology(q, &sb, &tb).map_err(|e| FinCatError::Invariant(format!("restriction: {e}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut source_dims = src.complex.homology_dims();
    source_dims.truncate(bound + 1);
    let mut target_dims = tgt.complex.homology_dims();
    target_dims.truncate(bound + 1);
    Ok(RestrictionReport { source_dims, target_dims, induced })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::SetValuedFunctor;
    use crate::groupkit::FiniteGroup;

    fn consts(c: &FinCategory) -> (ModuleFunctor, ModuleFunctor) {
        (ModuleFunctor::constant(c, Variance::Contravariant), ModuleFunctor::constant(c, Variance::Covariant))
    }

    #[test]
    fn trivial_category() {
        let c = FinCategory::trivial();
        let (n, m) = consts(&c);
        assert_eq!(tor_dims(&c, &n, &m, 4).unwrap(), vec![1, 0, 0, 0, 0]);
        assert_eq!(functor_tensor_product(&c, &n, &m).unwrap().dim, 1);
        assert_eq!(nerve(&c, 3).dims(), &[1, 0, 0, 0]);
    }

    #[test]
    fn group_homology_of_z2_vanishes_rationally() {
        let c = FinCategory::one_object_group(&FiniteGroup::cyclic(2));
        let (n, m) = consts(&c);
        assert_eq!(tor_dims(&c, &n, &m, 4).unwrap(), vec![1, 0, 0, 0, 0]);
        assert_eq!(nerve(&c, 4).dims(), &[1, 1, 1, 1, 1]);
    }

    #[test]
    fn coinvariants_of_the_regular_representation() {
        let g = FiniteGroup::cyclic(2);
        let c = FinCategory::one_object_group(&g);
        let n = ModuleFunctor::constant(&c, Variance::Contravariant);
        let m = ModuleFunctor::linearize(&c, &SetValuedFunctor::regular(&g, &c));
        let t = functor_tensor_product(&c, &n, &m).unwrap();
        assert_eq!(t.dim, 1);
        assert_eq!(tor_dims(&c, &n, &m, 0).unwrap(), vec![1]);
        let z = ModuleFunctor::zero(&c, Variance::Covariant);
        assert_eq!(functor_tensor_product(&c, &n, &z).unwrap().dim, 0);
    }

    #[test]
    fn variance_is_checked() {
        let c = FinCategory::arrow();
        let m = ModuleFunctor::constant(&c, Variance::Covariant);
        assert!(matches!(tor_dims(&c, &m, &m, 1), Err(FinCatError::Variance(_))));
    }

    #[test]
    fn nerves_with_initial_objects_are_acyclic() {
        for c in [FinCategory::arrow(), FinCategory::poset(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap(), FinCategory::codiscrete(3)] {
            assert_eq!(nerve_homology(&c, 3), vec![1, 0, 0, 0]);
        }
        // Boundary of a square: a circle.
        let circle = FinCategory::poset(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert_eq!(nerve_homology(&circle, 2), vec![1, 1, 0]);
    }

    #[test]
    fn restriction_along_identity_and_collapse() {
        let c = FinCategory::poset(3, &[(0, 1), (0, 2)]).unwrap();
        let (n, m) = consts(&c);
        let r = restrict_tor(&c, &c, &CatFunctor::identity(&c), &n, &m, 2).unwrap();
        for (q, a) in r.induced.iter().enumerate() {
            assert_eq!(a, &DenseRationalMatrix::identity(r.source_dims[q]));
        }
        let t = FinCategory::trivial();
        let (nt, mt) = consts(&t);
        let r = restrict_tor(&c, &t, &CatFunctor::to_trivial(&c), &nt, &mt, 1).unwrap();
        assert_eq!(r.induced[0].rank(), 1);
    }

    #[test]
    fn restriction_to_a_full_subcategory_with_initial_object() {
        let c = FinCategory::poset(4, &[(0, 1), (1, 2), (0, 3)]).unwrap();
        let (sub, inc) = c.full_subcategory(&[0, 1]).unwrap();
        let (n, m) = consts(&c);
        let r = restrict_tor(&sub, &c, &inc, &n, &m, 1).unwrap();
        assert_eq!((r.source_dims[0], r.target_dims[0], r.induced[0].rank()), (1, 1, 1));
    }
}
