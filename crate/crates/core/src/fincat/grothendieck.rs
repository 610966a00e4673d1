use std::collections::HashMap;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::tor::{nerve_homology, tor_dims, Chain, NerveChains};
use super::{CatFunctor, FinCatError, FinCategory, ModuleFunctor, Morphism, SetValuedFunctor, Variance};
use crate::exactlin::{ChainComplex, Rational, SparseRationalMatrix};

/// The category of elements of a covariant set functor, with its projection to the base.
#[derive(Clone, Debug)]
pub struct CategoryOfElements {
    pub category: FinCategory,
    pub projection: CatFunctor,
    /// `(c, x)` for each object.
    pub labels: Vec<(usize, usize)>,
}

pub fn category_of_elements(c: &FinCategory, f: &SetValuedFunctor) -> Result<CategoryOfElements, FinCatError> {
    if f.variance != Variance::Covariant {
        return Err(FinCatError::Variance("the category of elements is built from a covariant functor".into()));
    }
    f.validate(c)?;
    let mut labels = Vec::new();
    let mut obj_index = HashMap::new();
    for o in 0..c.num_objects() {
        for x in 0..f.sets[o] {
            obj_index.insert((o, x), labels.len());
            labels.push((o, x));
        }
    }
    let mut morphisms = Vec::new();
    let mut mor_index = HashMap::new();
    let mut proj_mor = Vec::new();
    for phi in 0..c.num_morphisms() {
        let (a, b) = (c.source(phi), c.target(phi));
        for x in 0..f.sets[a] {
            mor_index.insert((phi, x), morphisms.len());
            morphisms.push(Morphism {
                name: format!("{}@{x}", c.morphism(phi).name),
                source: obj_index[&(a, x)],
                target: obj_index[&(b, f.maps[phi][x])],
            });
            proj_mor.push(phi);
        }
    }
    let identities = labels.iter().map(|&(o, x)| mor_index[&(c.identity(o), x)]).collect();
    let mut comps = Vec::new();
    for (g, h) in c.composable_pairs() {
        for x in 0..f.sets[c.source(h)] {
            let y = f.maps[h][x];
            comps.push((mor_index[&(g, y)], mor_index[&(h, x)], mor_index[&(c.compose(g, h), x)]));
        }
    }
    let objects = labels.iter().map(|&(o, x)| format!("({},{x})", c.objects()[o])).collect();
    let category = FinCategory::new(objects, morphisms, identities, &comps)?;
    let projection = CatFunctor::new(&category, c, labels.iter().map(|&(o, _)| o).collect(), proj_mor)?;
    Ok(CategoryOfElements { category, projection, labels })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShapiroReport {
    /// `Tor^{C_F}_*(p^*X, k)`.
    pub elements_side: Vec<usize>,
    /// `Tor^C_*(X, k[F])`.
    pub base_side: Vec<usize>,
    pub holds: bool,
}

/// Compares Tor over the category of elements with Tor over the base with coefficients in `k[F]`.
pub fn shapiro_check(c: &FinCategory, f: &SetValuedFunctor, x: &ModuleFunctor, bound: usize) -> Result<ShapiroReport, FinCatError> {
    if x.variance != Variance::Contravariant {
        return Err(FinCatError::Variance("the coefficient functor X must be contravariant".into()));
    }
    let el = category_of_elements(c, f)?;
    let px = x.pullback(&el.projection);
    let k = ModuleFunctor::constant(&el.category, Variance::Covariant);
    let elements_side = tor_dims(&el.category, &px, &k, bound)?;
    let base_side = tor_dims(c, x, &ModuleFunctor::linearize(c, f), bound)?;
    Ok(ShapiroReport { holds: elements_side == base_side, elements_side, base_side })
}

/// A seeded random instance: a poset with at most `max_objects` objects, a covariant `F` and a
/// linearized contravariant `X`, with sets of at most `max_set` elements.
pub fn random_shapiro_instance(
    rng: &mut impl Rng,
    max_objects: usize,
    max_set: usize,
) -> (FinCategory, SetValuedFunctor, ModuleFunctor) {
    let n = rng.gen_range(1..=max_objects);
    let mut rel = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(0.35) {
                rel.push((a, b));
            }
        }
    }
    let c = FinCategory::poset(n, &rel).expect("upper-triangular relations are acyclic");
    let f = SetValuedFunctor::random_on_poset(&c, rng, max_set);
    let x = SetValuedFunctor::random_on_poset(&c.opposite(), rng, max_set).as_contravariant();
    let x = ModuleFunctor::linearize(&c, &x);
    (c, f, x)
}

/// A strict functor from a finite category to finite categories.
#[derive(Clone, Debug)]
pub struct CatDiagram {
    pub base: FinCategory,
    pub fibres: Vec<FinCategory>,
    /// `functors[φ]: fibres[source φ] -> fibres[target φ]`.
    pub functors: Vec<CatFunctor>,
}

impl CatDiagram {
    pub fn new(base: FinCategory, fibres: Vec<FinCategory>, functors: Vec<CatFunctor>) -> Result<Self, FinCatError> {
        if fibres.len() != base.num_objects() || functors.len() != base.num_morphisms() {
            return Err(FinCatError::InvalidFunctor("diagram data does not match the base category".into()));
        }
        for (phi, fun) in functors.iter().enumerate() {
            fun.validate(&fibres[base.source(phi)], &fibres[base.target(phi)])?;
        }
        for o in 0..base.num_objects() {
            if functors[base.identity(o)] != CatFunctor::identity(&fibres[o]) {
                return Err(FinCatError::InvalidFunctor(format!("identity of {} is not sent to the identity functor", base.objects()[o])));
            }
        }
        for (g, f) in base.composable_pairs() {
            if functors[base.compose(g, f)] != functors[g].compose(&functors[f]) {
                return Err(FinCatError::InvalidFunctor(format!(
                    "composite {} ∘ {} is not preserved",
                    base.morphism(g).name,
                    base.morphism(f).name
                )));
            }
        }
        Ok(Self { base, fibres, functors })
    }

    /// The constant diagram.
    pub fn constant(base: FinCategory, fibre: FinCategory) -> Self {
        let fibres = vec![fibre.clone(); base.num_objects()];
        let functors = vec![CatFunctor::identity(&fibre); base.num_morphisms()];
        Self { base, fibres, functors }
    }

    /// A group acting on a codiscrete groupoid by permuting its objects.
    pub fn group_on_codiscrete(g: &crate::groupkit::FiniteGroup, action: &[Vec<usize>]) -> Result<Self, FinCatError> {
        let base = FinCategory::one_object_group(g);
        let n = action.first().map_or(0, Vec::len);
        let fibre = FinCategory::codiscrete(n);
        let e = g.identity();
        let others: Vec<usize> = (0..g.order()).filter(|&x| x != e).collect();
        let functors = (0..base.num_morphisms())
            .map(|phi| {
                let elem = if phi == 0 { e } else { others[phi - 1] };
                let p = &action[elem];
                let morphisms = (0..fibre.num_morphisms())
                    .map(|m| {
                        let (a, b) = (fibre.source(m), fibre.target(m));
                        fibre.hom(p[a], p[b])[0]
                    })
                    .collect();
                CatFunctor { objects: p.clone(), morphisms }
            })
            .collect();
        Self::new(base, vec![fibre; 1], functors)
    }

    /// The Grothendieck construction `C ∫ F`.
    ///
    /// Morphisms `(c, a) -> (c', a')` are pairs `(φ, f)` with `f: F(φ)a -> a'`, composed by
    /// `(φ, f) ∘ (φ', f') = (φφ', f ∘ F(φ)f')`.
    pub fn grothendieck(&self) -> FinCategory {
        let c = &self.base;
        let mut objects = Vec::new();
        let mut obj_index = HashMap::new();
        for o in 0..c.num_objects() {
            for a in 0..self.fibres[o].num_objects() {
                obj_index.insert((o, a), objects.len());
                objects.push(format!("({},{})", c.objects()[o], self.fibres[o].objects()[a]));
            }
        }
        let mut morphisms = Vec::new();
        let mut pairs = Vec::new();
        let mut mor_index = HashMap::new();
        for phi in 0..c.num_morphisms() {
            let (s, t) = (c.source(phi), c.target(phi));
            let fun = &self.functors[phi];
            for a in 0..self.fibres[s].num_objects() {
                for b in 0..self.fibres[t].num_objects() {
                    for &f in self.fibres[t].hom(fun.objects[a], b) {
                        mor_index.insert((phi, f), morphisms.len());
                        pairs.push((phi, f, a));
                        morphisms.push(Morphism {
                            name: format!("({},{})", c.morphism(phi).name, self.fibres[t].morphism(f).name),
                            source: obj_index[&(s, a)],
                            target: obj_index[&(t, b)],
                        });
                    }
                }
            }
        }
        let identities = (0..c.num_objects())
            .flat_map(|o| (0..self.fibres[o].num_objects()).map(move |a| (o, a)))
            .map(|(o, a)| mor_index[&(c.identity(o), self.fibres[o].identity(a))])
            .collect();
        let mut comps = Vec::new();
        for (i, &(phi1, f1, _)) in pairs.iter().enumerate() {
            for (j, &(phi2, f2, _)) in pairs.iter().enumerate() {
                if morphisms[j].target != morphisms[i].source {
                    continue;
                }
                let fibre = &self.fibres[c.target(phi1)];
                let pushed = self.functors[phi1].morphisms[f2];
                let h = (c.compose(phi1, phi2), fibre.compose(f1, pushed));
                comps.push((i, j, mor_index[&h]));
            }
        }
        FinCategory::new(objects, morphisms, identities, &comps).expect("Grothendieck construction is a category")
    }

    /// Total complex of the double complex `⊕_{c_0 -> .. -> c_p} C_q(N F(c_0))`, degrees `0..=top`,
    /// with `d = d_h + (-1)^p d_v`.
    pub fn total_complex(&self, top: usize) -> ChainComplex {
        let base_chains = NerveChains::new(&self.base, top);
        let fibre_chains: Vec<NerveChains> = self.fibres.iter().map(|f| NerveChains::new(f, top)).collect();
        // Basis of total degree n: (p, base chain index, fibre chain index).
        let mut basis: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); top + 1];
        for (n, b) in basis.iter_mut().enumerate() {
            for p in 0..=n {
                for (k, ch) in base_chains.level(p).iter().enumerate() {
                    for l in 0..fibre_chains[ch.start].level(n - p).len() {
                        b.push((p, k, l));
                    }
                }
            }
        }
        let index: Vec<HashMap<(usize, usize, usize), usize>> =
            basis.iter().map(|b| b.iter().copied().enumerate().map(|(i, x)| (x, i)).collect()).collect();
        let dims: Vec<usize> = basis.iter().map(Vec::len).collect();
        let mut diffs = vec![SparseRationalMatrix::zeros(0, dims[0])];
        for n in 1..=top {
            let trips: Vec<Vec<(usize, usize, i64)>> = basis[n]
                .par_iter()
                .enumerate()
                .map(|(col, &(p, k, l))| {
                    let mut out = Vec::new();
                    let ch = &base_chains.level(p)[k];
                    let q = n - p;
                    let c0 = ch.start;
                    let sigma = &fibre_chains[c0].level(q)[l];
                    let base_faces = if p == 0 { 0..0 } else { 0..p + 1 };
                    for i in base_faces {
                        let Some(face) = ch.face(&self.base, i) else { continue };
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        let new_sigma: Option<Chain> = if i == 0 {
                            sigma.map(&self.functors[ch.arrows[0]], &self.fibres[face.start])
                        } else {
                            Some(sigma.clone())
                        };
                        if let Some(s2) = new_sigma {
                            let kk = base_chains.index_of(p - 1, &face);
                            let ll = fibre_chains[face.start].index_of(q, &s2);
                            out.push((index[n - 1][&(p - 1, kk, ll)], col, sign));
                        }
                    }
                    if q >= 1 {
                        let outer = if p % 2 == 0 { 1 } else { -1 };
                        for j in 0..=q {
                            let Some(s2) = sigma.face(&self.fibres[c0], j) else { continue };
                            let sign = if j % 2 == 0 { outer } else { -outer };
                            let ll = fibre_chains[c0].index_of(q - 1, &s2);
                            out.push((index[n - 1][&(p, k, ll)], col, sign));
                        }
                    }
                    out
                })
                .collect();
            let d = SparseRationalMatrix::from_triplets(
                dims[n - 1],
                dims[n],
                trips.into_iter().flatten().map(|(r, c, v)| (r, c, Rational::from_integer(v.into()))),
            )
            .expect("indices in range");
            diffs.push(d);
        }
        ChainComplex::new(dims, diffs).expect("the total complex squares to zero")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThomasonReport {
    pub grothendieck_side: Vec<usize>,
    pub bicomplex_side: Vec<usize>,
    pub holds: bool,
}

/// Compares the homology of the nerve of `C ∫ F` with that of the double complex of nerves.
pub fn thomason_check(d: &CatDiagram, bound: usize) -> ThomasonReport {
    let grothendieck_side = nerve_homology(&d.grothendieck(), bound);
    let mut bicomplex_side = d.total_complex(bound + 1).homology_dims();
    bicomplex_side.truncate(bound + 1);
    ThomasonReport { holds: grothendieck_side == bicomplex_side, grothendieck_side, bicomplex_side }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupkit::FiniteGroup;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn elements_of_the_regular_z2_set() {
        let g = FiniteGroup::cyclic(2);
        let c = FinCategory::one_object_group(&g);
        let el = category_of_elements(&c, &SetValuedFunctor::regular(&g, &c)).unwrap();
        assert_eq!((el.category.num_objects(), el.category.num_morphisms()), (2, 4));
        assert_eq!(nerve_homology(&el.category, 4), vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn elements_of_point_and_empty_functors() {
        let c = FinCategory::poset(3, &[(0, 1), (1, 2)]).unwrap();
        let el = category_of_elements(&c, &SetValuedFunctor::point(&c, Variance::Covariant)).unwrap();
        assert_eq!((el.category.num_objects(), el.category.num_morphisms()), (3, 6));
        let el = category_of_elements(&c, &SetValuedFunctor::empty(&c, Variance::Covariant)).unwrap();
        assert_eq!(el.category.num_objects(), 0);
    }

    #[test]
    fn shapiro_regular_example() {
        let g = FiniteGroup::cyclic(2);
        let c = FinCategory::one_object_group(&g);
        let x = ModuleFunctor::constant(&c, Variance::Contravariant);
        let r = shapiro_check(&c, &SetValuedFunctor::regular(&g, &c), &x, 3).unwrap();
        assert!(r.holds);
        assert_eq!(r.base_side, vec![1, 0, 0, 0]);
    }

    #[test]
    fn shapiro_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let (c, f, x) = random_shapiro_instance(&mut rng, 6, 5);
            let r = shapiro_check(&c, &f, &x, 3).unwrap();
            assert!(r.holds, "{r:?}");
        }
    }

    #[test]
    fn grothendieck_composition_law() {
        let g = FiniteGroup::cyclic(2);
        let d = CatDiagram::group_on_codiscrete(&g, &[vec![0, 1], vec![1, 0]]).unwrap();
        let gr = d.grothendieck();
        assert_eq!(gr.num_objects(), 2);
        assert_eq!(gr.num_morphisms(), 8);
        // Independent recomputation from names.
        let parse = |name: &str| -> (String, String) {
            let inner = &name[1..name.len() - 1];
            let (a, b) = inner.split_once(',').unwrap();
            (a.to_string(), b.to_string())
        };
        let base = &d.base;
        let fibre = &d.fibres[0];
        for (x, y) in gr.composable_pairs() {
            let (p1, f1) = parse(&gr.morphism(x).name);
            let (p2, f2) = parse(&gr.morphism(y).name);
            let (phi1, phi2) = (base.morphism_index(&p1).unwrap(), base.morphism_index(&p2).unwrap());
            let (g1, g2) = (fibre.morphism_index(&f1).unwrap(), fibre.morphism_index(&f2).unwrap());
            let expect_phi = base.compose(phi1, phi2);
            let expect_f = fibre.compose(g1, d.functors[phi1].morphisms[g2]);
            let (p, f) = parse(&gr.morphism(gr.compose(x, y)).name);
            assert_eq!(p, base.morphism(expect_phi).name);
            assert_eq!(f, fibre.morphism(expect_f).name);
        }
    }

    #[test]
    fn thomason_examples() {
        let t = CatDiagram::constant(FinCategory::trivial(), FinCategory::codiscrete(2));
        assert!(thomason_check(&t, 3).holds);
        let arrow = CatDiagram::constant(FinCategory::arrow(), FinCategory::arrow());
        assert_eq!(thomason_check(&arrow, 3).bicomplex_side, vec![1, 0, 0, 0]);
        let g = FiniteGroup::cyclic(2);
        let d = CatDiagram::group_on_codiscrete(&g, &[vec![0, 1], vec![1, 0]]).unwrap();
        let r = thomason_check(&d, 3);
        assert!(r.holds, "{r:?}");
        assert_eq!(r.grothendieck_side, vec![1, 0, 0, 0]);
        let circle = CatDiagram::constant(FinCategory::poset(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap(), FinCategory::arrow());
        let r = thomason_check(&circle, 2);
        assert!(r.holds);
        assert_eq!(r.bicomplex_side, vec![1, 1, 0]);
    }
}
