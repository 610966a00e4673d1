use std::collections::BTreeMap;

use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{FinCatError, FinCategory};
use crate::exactlin::{parse_rational, Rational, SparseRationalMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variance {
    Covariant,
    Contravariant,
}

impl Variance {
    pub fn flip(self) -> Self {
        match self {
            Variance::Covariant => Variance::Contravariant,
            Variance::Contravariant => Variance::Covariant,
        }
    }
}

/// A functor between finite categories.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatFunctor {
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
}

impl CatFunctor {
    pub fn new(source: &FinCategory, target: &FinCategory, objects: Vec<usize>, morphisms: Vec<usize>) -> Result<Self, FinCatError> {
        let f = Self { objects, morphisms };
        f.validate(source, target)?;
        Ok(f)
    }

    pub fn identity(c: &FinCategory) -> Self {
        Self { objects: (0..c.num_objects()).collect(), morphisms: (0..c.num_morphisms()).collect() }
    }

    /// The functor to the trivial category.
    pub fn to_trivial(c: &FinCategory) -> Self {
        Self { objects: vec![0; c.num_objects()], morphisms: vec![0; c.num_morphisms()] }
    }

    pub fn validate(&self, source: &FinCategory, target: &FinCategory) -> Result<(), FinCatError> {
        let bad = |s: String| Err(FinCatError::InvalidFunctor(s));
        if self.objects.len() != source.num_objects() || self.morphisms.len() != source.num_morphisms() {
            return bad("functor data does not match the source category".into());
        }
        if self.objects.iter().any(|&o| o >= target.num_objects()) || self.morphisms.iter().any(|&f| f >= target.num_morphisms()) {
            return bad("functor data is out of range for the target category".into());
        }
        for f in 0..source.num_morphisms() {
            let g = self.morphisms[f];
            if target.source(g) != self.objects[source.source(f)] || target.target(g) != self.objects[source.target(f)] {
                return bad(format!("{} is sent to {} with the wrong endpoints", source.morphism(f).name, target.morphism(g).name));
            }
        }
        for c in 0..source.num_objects() {
            if self.morphisms[source.identity(c)] != target.identity(self.objects[c]) {
                return bad(format!("identity of {} is not preserved", source.objects()[c]));
            }
        }
        for (g, f) in source.composable_pairs() {
            if self.morphisms[source.compose(g, f)] != target.compose(self.morphisms[g], self.morphisms[f]) {
                return bad(format!(
                    "composite {} ∘ {} is not preserved",
                    source.morphism(g).name,
                    source.morphism(f).name
                ));
            }
        }
        Ok(())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &CatFunctor) -> CatFunctor {
        CatFunctor {
            objects: other.objects.iter().map(|&o| self.objects[o]).collect(),
            morphisms: other.morphisms.iter().map(|&f| self.morphisms[f]).collect(),
        }
    }
}

/// A functor to finite sets, each `F(c) = {0, .., n_c - 1}`.
///
/// For a contravariant functor `maps[φ]` goes from `F(target φ)` to `F(source φ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetValuedFunctor {
    pub variance: Variance,
    pub sets: Vec<usize>,
    pub maps: Vec<Vec<usize>>,
}

impl SetValuedFunctor {
    pub fn new(c: &FinCategory, variance: Variance, sets: Vec<usize>, maps: Vec<Vec<usize>>) -> Result<Self, FinCatError> {
        let f = Self { variance, sets, maps };
        f.validate(c)?;
        Ok(f)
    }

    /// Domain and codomain object of `φ` under this variance.
    fn ends(&self, c: &FinCategory, phi: usize) -> (usize, usize) {
        match self.variance {
            Variance::Covariant => (c.source(phi), c.target(phi)),
            Variance::Contravariant => (c.target(phi), c.source(phi)),
        }
    }

    pub fn validate(&self, c: &FinCategory) -> Result<(), FinCatError> {
        let bad = |s: String| Err(FinCatError::InvalidFunctor(s));
        if self.sets.len() != c.num_objects() || self.maps.len() != c.num_morphisms() {
            return bad("set functor data does not match the category".into());
        }
        for phi in 0..c.num_morphisms() {
            let (a, b) = self.ends(c, phi);
            if self.maps[phi].len() != self.sets[a] || self.maps[phi].iter().any(|&y| y >= self.sets[b]) {
                return bad(format!("map for {} does not go from F({}) to F({})", c.morphism(phi).name, c.objects()[a], c.objects()[b]));
            }
        }
        for o in 0..c.num_objects() {
            if self.maps[c.identity(o)].iter().enumerate().any(|(x, &y)| x != y) {
                return bad(format!("identity of {} is not sent to the identity", c.objects()[o]));
            }
        }
        for (g, f) in c.composable_pairs() {
            let gf = c.compose(g, f);
            for x in 0..self.maps[gf].len() {
                let via = match self.variance {
                    Variance::Covariant => self.maps[g][self.maps[f][x]],
                    Variance::Contravariant => self.maps[f][self.maps[g][x]],
                };
                if via != self.maps[gf][x] {
                    return bad(format!(
                        "composite {} ∘ {} is not preserved at element {x}",
                        c.morphism(g).name,
                        c.morphism(f).name
                    ));
                }
            }
        }
        Ok(())
    }

    /// The one-point functor.
    pub fn point(c: &FinCategory, variance: Variance) -> Self {
        Self { variance, sets: vec![1; c.num_objects()], maps: vec![vec![0]; c.num_morphisms()] }
    }

    pub fn empty(c: &FinCategory, variance: Variance) -> Self {
        Self { variance, sets: vec![0; c.num_objects()], maps: vec![Vec::new(); c.num_morphisms()] }
    }

    /// The regular action of a group on itself, on its one-object category.
    pub fn regular(g: &crate::groupkit::FiniteGroup, c: &FinCategory) -> Self {
        let e = g.identity();
        let others: Vec<usize> = (0..g.order()).filter(|&x| x != e).collect();
        let element = |phi: usize| if phi == 0 { e } else { others[phi - 1] };
        let maps = (0..c.num_morphisms()).map(|phi| (0..g.order()).map(|x| g.mul(element(phi), x)).collect()).collect();
        Self { variance: Variance::Covariant, sets: vec![g.order(); 1], maps }
    }

    /// Precomposition with `f: D -> C`.
    pub fn pullback(&self, f: &CatFunctor) -> Self {
        Self {
            variance: self.variance,
            sets: f.objects.iter().map(|&o| self.sets[o]).collect(),
            maps: f.morphisms.iter().map(|&m| self.maps[m].clone()).collect(),
        }
    }

    /// A random covariant functor on a poset; each set has at most `max_size` elements.
    ///
    /// Each object gets a few fresh generators; `F(d)` is the set of generators at or below `d`
    /// modulo an equivalence relation that only grows along the order.
    pub fn random_on_poset(c: &FinCategory, rng: &mut impl Rng, max_size: usize) -> Self {
        assert!(c.is_poset(), "random functors are only generated on posets");
        let n = c.num_objects();
        let below = |d: usize| -> Vec<usize> { (0..n).filter(|&a| !c.hom(a, d).is_empty()).collect() };
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&d| below(d).len());
        let fresh: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
        let mut offset = vec![0; n + 1];
        for d in 0..n {
            offset[d + 1] = offset[d] + fresh[d];
        }
        let total = offset[n];
        // class[d][generator] for generators living below d, usize::MAX elsewhere.
        let mut class = vec![vec![usize::MAX; total]; n];
        for &d in &order {
            let gens: Vec<usize> = below(d).iter().flat_map(|&a| offset[a]..offset[a + 1]).collect();
            let mut uf: Vec<usize> = (0..total).collect();
            fn find(uf: &mut [usize], x: usize) -> usize {
                let mut r = x;
                while uf[r] != r {
                    r = uf[r];
                }
                uf[x] = r;
                r
            }
            let union = |uf: &mut Vec<usize>, a: usize, b: usize| {
                let (ra, rb) = (find(uf, a), find(uf, b));
                if ra != rb {
                    uf[ra.max(rb)] = ra.min(rb);
                }
            };
            for a in below(d) {
                if a == d {
                    continue;
                }
                let ga: Vec<usize> = gens.iter().copied().filter(|&x| class[a][x] != usize::MAX).collect();
                for &x in &ga {
                    for &y in &ga {
                        if class[a][x] == class[a][y] {
                            union(&mut uf, x, y);
                        }
                    }
                }
            }
            if gens.len() >= 2 && rng.gen_bool(0.3) {
                let x = gens[rng.gen_range(0..gens.len())];
                let y = gens[rng.gen_range(0..gens.len())];
                union(&mut uf, x, y);
            }
            loop {
                let mut roots: Vec<usize> = gens.iter().map(|&x| find(&mut uf, x)).collect();
                roots.sort_unstable();
                roots.dedup();
                if roots.len() <= max_size {
                    let mut reps = roots;
                    reps.sort_unstable();
                    for &x in &gens {
                        let r = find(&mut uf, x);
                        class[d][x] = reps.iter().position(|&y| y == r).expect("root");
                    }
                    break;
                }
                union(&mut uf, roots[0], roots[1]);
            }
        }
        let sets: Vec<usize> = (0..n).map(|d| class[d].iter().filter(|&&k| k != usize::MAX).map(|&k| k + 1).max().unwrap_or(0)).collect();
        let maps = (0..c.num_morphisms())
            .map(|phi| {
                let (a, b) = (c.source(phi), c.target(phi));
                (0..sets[a])
                    .map(|k| {
                        let x = (0..total).find(|&x| class[a][x] == k).expect("every class has a generator");
                        class[b][x]
                    })
                    .collect()
            })
            .collect();
        Self::new(c, Variance::Covariant, sets, maps).expect("random construction is functorial")
    }

    /// Reinterpret a covariant functor on `C^op` as a contravariant one on `C`.
    pub fn as_contravariant(self) -> Self {
        Self { variance: self.variance.flip(), ..self }
    }
}

/// A functor to finite-dimensional Q-vector spaces.
///
/// For `φ: a -> b` the matrix is `dim(b) x dim(a)` if covariant and `dim(a) x dim(b)` if contravariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleFunctor {
    pub variance: Variance,
    pub dims: Vec<usize>,
    pub maps: Vec<SparseRationalMatrix>,
}

impl ModuleFunctor {
    pub fn new(c: &FinCategory, variance: Variance, dims: Vec<usize>, maps: Vec<SparseRationalMatrix>) -> Result<Self, FinCatError> {
        let f = Self { variance, dims, maps };
        f.validate(c)?;
        Ok(f)
    }

    pub fn validate(&self, c: &FinCategory) -> Result<(), FinCatError> {
        let bad = |s: String| Err(FinCatError::InvalidFunctor(s));
        if self.dims.len() != c.num_objects() || self.maps.len() != c.num_morphisms() {
            return bad("module functor data does not match the category".into());
        }
        for phi in 0..c.num_morphisms() {
            let (a, b) = (self.dims[c.source(phi)], self.dims[c.target(phi)]);
            let (r, k) = match self.variance {
                Variance::Covariant => (b, a),
                Variance::Contravariant => (a, b),
            };
            let m = &self.maps[phi];
            if m.rows() != r || m.cols() != k {
                return bad(format!("matrix for {} is {}x{}, expected {r}x{k}", c.morphism(phi).name, m.rows(), m.cols()));
            }
        }
        for o in 0..c.num_objects() {
            if self.maps[c.identity(o)] != SparseRationalMatrix::identity(self.dims[o]) {
                return bad(format!("identity of {} is not sent to the identity", c.objects()[o]));
            }
        }
        for (g, f) in c.composable_pairs() {
            let prod = match self.variance {
                Variance::Covariant => self.maps[g].mul(&self.maps[f])?,
                Variance::Contravariant => self.maps[f].mul(&self.maps[g])?,
            };
            if prod != self.maps[c.compose(g, f)] {
                return bad(format!("composite {} ∘ {} is not preserved", c.morphism(g).name, c.morphism(f).name));
            }
        }
        Ok(())
    }

    /// The constant functor `k`.
    pub fn constant(c: &FinCategory, variance: Variance) -> Self {
        Self { variance, dims: vec![1; c.num_objects()], maps: vec![SparseRationalMatrix::identity(1); c.num_morphisms()] }
    }

    pub fn zero(c: &FinCategory, variance: Variance) -> Self {
        let maps = (0..c.num_morphisms()).map(|_| SparseRationalMatrix::zeros(0, 0)).collect();
        Self { variance, dims: vec![0; c.num_objects()], maps }
    }

    /// `k[F]`, with permutation-like matrices.
    pub fn linearize(c: &FinCategory, f: &SetValuedFunctor) -> Self {
        let maps = (0..c.num_morphisms())
            .map(|phi| {
                let (a, b) = match f.variance {
                    Variance::Covariant => (c.source(phi), c.target(phi)),
                    Variance::Contravariant => (c.target(phi), c.source(phi)),
                };
                SparseRationalMatrix::from_int_triplets(f.sets[b], f.sets[a], f.maps[phi].iter().enumerate().map(|(x, &y)| (y, x, 1)))
                    .expect("in range")
            })
            .collect();
        Self { variance: f.variance, dims: f.sets.clone(), maps }
    }

    /// Precomposition with `f: D -> C`.
    pub fn pullback(&self, f: &CatFunctor) -> Self {
        Self {
            variance: self.variance,
            dims: f.objects.iter().map(|&o| self.dims[o]).collect(),
            maps: f.morphisms.iter().map(|&m| self.maps[m].clone()).collect(),
        }
    }

    /// The map attached to `φ`, from its domain space to its codomain space.
    pub fn map(&self, phi: usize) -> &SparseRationalMatrix {
        &self.maps[phi]
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

impl Scalar {
    fn value(&self) -> Result<Rational, FinCatError> {
        match self {
            Scalar::Int(v) => Ok(Rational::from_integer((*v).into())),
            Scalar::Text(s) => parse_rational(s).ok_or_else(|| FinCatError::Parse(format!("bad rational {s:?}"))),
        }
    }
}

/// `{"variance": "covariant", "sets": {"obj": 2}, "maps": {"f": [1, 0]}}`; identity maps may be omitted.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SetFunctorJson {
    #[serde(default = "covariant")]
    pub variance: Variance,
    pub sets: BTreeMap<String, usize>,
    #[serde(default)]
    pub maps: BTreeMap<String, Vec<usize>>,
}

/// `{"variance": "contravariant", "dims": {"obj": 1}, "maps": {"f": [[1]]}}` with matrix rows.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleFunctorJson {
    #[serde(default = "covariant")]
    pub variance: Variance,
    pub dims: BTreeMap<String, usize>,
    #[serde(default)]
    pub maps: BTreeMap<String, Vec<Vec<Scalar>>>,
}

fn covariant() -> Variance {
    Variance::Covariant
}

fn per_object<T: Clone>(c: &FinCategory, m: &BTreeMap<String, T>, what: &str) -> Result<Vec<T>, FinCatError> {
    for k in m.keys() {
        if c.object_index(k).is_none() {
            return Err(FinCatError::Parse(format!("{what}: unknown object {k:?}")));
        }
    }
    c.objects()
        .iter()
        .map(|o| m.get(o).cloned().ok_or_else(|| FinCatError::Parse(format!("{what}: missing object {o:?}"))))
        .collect()
}

fn check_morphism_keys<T>(c: &FinCategory, m: &BTreeMap<String, T>) -> Result<(), FinCatError> {
    match m.keys().find(|k| c.morphism_index(k).is_none()) {
        Some(k) => Err(FinCatError::Parse(format!("maps: unknown morphism {k:?}"))),
        None => Ok(()),
    }
}

impl SetValuedFunctor {
    pub fn from_json(c: &FinCategory, j: &SetFunctorJson) -> Result<Self, FinCatError> {
        let sets = per_object(c, &j.sets, "sets")?;
        check_morphism_keys(c, &j.maps)?;
        let maps = (0..c.num_morphisms())
            .map(|phi| match j.maps.get(&c.morphism(phi).name) {
                Some(v) => Ok(v.clone()),
                None if c.is_identity(phi) => Ok((0..sets[c.source(phi)]).collect()),
                None => Err(FinCatError::Parse(format!("maps: missing morphism {:?}", c.morphism(phi).name))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(c, j.variance, sets, maps)
    }
}

impl ModuleFunctor {
    pub fn from_json(c: &FinCategory, j: &ModuleFunctorJson) -> Result<Self, FinCatError> {
        let dims = per_object(c, &j.dims, "dims")?;
        check_morphism_keys(c, &j.maps)?;
        let maps = (0..c.num_morphisms())
            .map(|phi| {
                let (a, b) = (dims[c.source(phi)], dims[c.target(phi)]);
                let (r, k) = match j.variance {
                    Variance::Covariant => (b, a),
                    Variance::Contravariant => (a, b),
                };
                match j.maps.get(&c.morphism(phi).name) {
                    Some(rows) => {
                        if rows.len() != r || rows.iter().any(|row| row.len() != k) {
                            return Err(FinCatError::Parse(format!("maps: {:?} must be {r}x{k}", c.morphism(phi).name)));
                        }
                        let mut m = SparseRationalMatrix::zeros(r, k);
                        for (i, row) in rows.iter().enumerate() {
                            for (jj, x) in row.iter().enumerate() {
                                let v = x.value()?;
                                if !v.is_zero() {
                                    m.add_at(i, jj, v);
                                }
                            }
                        }
                        Ok(m)
                    }
                    None if c.is_identity(phi) => Ok(SparseRationalMatrix::identity(r)),
                    None => Err(FinCatError::Parse(format!("maps: missing morphism {:?}", c.morphism(phi).name))),
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(c, j.variance, dims, maps)
    }

    pub fn to_json(&self, c: &FinCategory) -> ModuleFunctorJson {
        let dims = c.objects().iter().cloned().zip(self.dims.iter().copied()).collect();
        let maps = (0..c.num_morphisms())
            .filter(|&phi| !c.is_identity(phi))
            .map(|phi| {
                let m = self.maps[phi].to_dense();
                let rows = (0..m.rows())
                    .map(|i| {
                        (0..m.cols())
                            .map(|j| {
                                let v = m.get(i, j);
                                if v.is_integer() {
                                    Scalar::Int(v.to_integer().try_into().unwrap_or(i64::MAX))
                                } else {
                                    Scalar::Text(v.to_string())
                                }
                            })
                            .collect()
                    })
                    .collect();
                (c.morphism(phi).name.clone(), rows)
            })
            .collect();
        ModuleFunctorJson { variance: self.variance, dims, maps }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupkit::FiniteGroup;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn regular_action_is_functorial() {
        let g = FiniteGroup::symmetric(3);
        let c = FinCategory::one_object_group(&g);
        let f = SetValuedFunctor::regular(&g, &c);
        f.validate(&c).unwrap();
        ModuleFunctor::linearize(&c, &f).validate(&c).unwrap();
    }

    #[test]
    fn random_functors_are_functorial() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let c = FinCategory::poset(5, &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)]).unwrap();
            let f = SetValuedFunctor::random_on_poset(&c, &mut rng, 5);
            assert!(f.sets.iter().all(|&s| s <= 5));
            let op = c.opposite();
            let x = SetValuedFunctor::random_on_poset(&op, &mut rng, 5).as_contravariant();
            x.validate(&c).unwrap();
            ModuleFunctor::linearize(&c, &x).validate(&c).unwrap();
        }
    }

    #[test]
    fn non_functorial_data_is_rejected() {
        let c = FinCategory::one_object_group(&FiniteGroup::cyclic(2));
        let bad = SetValuedFunctor { variance: Variance::Covariant, sets: vec![2], maps: vec![vec![0, 1], vec![0, 0]] };
        assert!(bad.validate(&c).is_err());
        let m = ModuleFunctor {
            variance: Variance::Covariant,
            dims: vec![1],
            maps: vec![SparseRationalMatrix::identity(1), SparseRationalMatrix::from_dense_rows(&[vec![2]])],
        };
        assert!(m.validate(&c).is_err());
    }

    #[test]
    fn json_forms() {
        let c = FinCategory::arrow();
        let j: SetFunctorJson = serde_json::from_str(r#"{"sets": {"0": 2, "1": 1}, "maps": {"0<=1": [0, 0]}}"#).unwrap();
        let f = SetValuedFunctor::from_json(&c, &j).unwrap();
        assert_eq!(f.sets, vec![2, 1]);
        let mj: ModuleFunctorJson =
            serde_json::from_str(r#"{"variance": "contravariant", "dims": {"0": 1, "1": 1}, "maps": {"0<=1": [["1/2"]]}}"#).unwrap();
        let m = ModuleFunctor::from_json(&c, &mj).unwrap();
        let back = ModuleFunctor::from_json(&c, &m.to_json(&c)).unwrap();
        assert_eq!(m, back);
        let missing: SetFunctorJson = serde_json::from_str(r#"{"sets": {"0": 2}}"#).unwrap();
        assert!(SetValuedFunctor::from_json(&c, &missing).is_err());
    }
}
