use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::FinCatError;
use crate::groupkit::{FiniteGroup, FiniteGroupJson};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Morphism {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite category with an explicit composition table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    /// `compose[g * m + f] = g ∘ f` when `target(f) = source(g)`.
    compose: Vec<Option<usize>>,
    hom: Vec<Vec<Vec<usize>>>,
}

impl FinCategory {
    /// Validates the identity and associativity laws.
    ///
    /// `compositions` lists `(g, f, g∘f)` for composable pairs not involving an identity.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        compositions: &[(usize, usize, usize)],
    ) -> Result<Self, FinCatError> {
        let n = objects.len();
        let m = morphisms.len();
        let bad = |s: String| Err(FinCatError::InvalidCategory(s));
        if identities.len() != n {
            return bad(format!("{} identities for {n} objects", identities.len()));
        }
        for f in &morphisms {
            if f.source >= n || f.target >= n {
                return bad(format!("morphism {} has an endpoint out of range", f.name));
            }
        }
        for (c, &id) in identities.iter().enumerate() {
            if id >= m || morphisms[id].source != c || morphisms[id].target != c {
                return bad(format!("identity of {} is not an endomorphism of it", objects[c]));
            }
        }
        if identities.iter().collect::<BTreeSet<_>>().len() != n {
            return bad("two objects share an identity".into());
        }
        let is_id: Vec<bool> = (0..m).map(|f| identities.contains(&f)).collect();
        let mut compose = vec![None; m * m];
        for f in 0..m {
            compose[identities[morphisms[f].target] * m + f] = Some(f);
            compose[f * m + identities[morphisms[f].source]] = Some(f);
        }
        for &(g, f, h) in compositions {
            if g >= m || f >= m || h >= m {
                return bad(format!("composition ({g}, {f}, {h}) is out of range"));
            }
            if morphisms[f].target != morphisms[g].source {
                return bad(format!("{} ∘ {} is not composable", morphisms[g].name, morphisms[f].name));
            }
            if morphisms[h].source != morphisms[f].source || morphisms[h].target != morphisms[g].target {
                return bad(format!(
                    "{} ∘ {} = {} has the wrong endpoints",
                    morphisms[g].name, morphisms[f].name, morphisms[h].name
                ));
            }
            match compose[g * m + f] {
                Some(old) if old != h => {
                    return bad(format!(
                        "{} ∘ {} is given as both {} and {}",
                        morphisms[g].name, morphisms[f].name, morphisms[old].name, morphisms[h].name
                    ))
                }
                _ => compose[g * m + f] = Some(h),
            }
        }
        for f in 0..m {
            for g in 0..m {
                if morphisms[f].target == morphisms[g].source && compose[g * m + f].is_none() {
                    debug_assert!(!is_id[f] && !is_id[g]);
                    return bad(format!("missing composite {} ∘ {}", morphisms[g].name, morphisms[f].name));
                }
            }
        }
        let mut hom = vec![vec![Vec::new(); n]; n];
        for (i, f) in morphisms.iter().enumerate() {
            hom[f.source][f.target].push(i);
        }
        let cat = Self { objects, morphisms, identities, compose, hom };
        if let Some((h, g, f)) = cat.associativity_failure() {
            return bad(format!(
                "associativity fails for ({}, {}, {})",
                cat.morphisms[h].name, cat.morphisms[g].name, cat.morphisms[f].name
            ));
        }
        Ok(cat)
    }

    /// First triple `(h, g, f)` with `(h∘g)∘f != h∘(g∘f)`.
    pub fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        for f in 0..self.morphisms.len() {
            for &g in self.out_of(self.morphisms[f].target) {
                let gf = self.compose(g, f);
                for &h in self.out_of(self.morphisms[g].target) {
                    if self.compose(self.compose(h, g), f) != self.compose(h, gf) {
                        return Some((h, g, f));
                    }
                }
            }
        }
        None
    }

    fn out_of(&self, c: usize) -> impl Iterator<Item = &usize> {
        self.hom[c].iter().flatten()
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism(&self, f: usize) -> &Morphism {
        &self.morphisms[f]
    }

    pub fn morphism_index(&self, name: &str) -> Option<usize> {
        self.morphisms.iter().position(|f| f.name == name)
    }

    pub fn source(&self, f: usize) -> usize {
        self.morphisms[f].source
    }

    pub fn target(&self, f: usize) -> usize {
        self.morphisms[f].target
    }

    pub fn identity(&self, c: usize) -> usize {
        self.identities[c]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.morphisms[f].source] == f
    }

    /// `g ∘ f`; panics if not composable.
    pub fn compose(&self, g: usize, f: usize) -> usize {
        self.compose[g * self.morphisms.len() + f]
            .unwrap_or_else(|| panic!("{} ∘ {} is not composable", self.morphisms[g].name, self.morphisms[f].name))
    }

    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        &self.hom[a][b]
    }

    /// Non-identity morphisms out of `c`.
    pub fn non_identity_out(&self, c: usize) -> impl Iterator<Item = usize> + '_ {
        self.out_of(c).copied().filter(move |&f| f != self.identities[c])
    }

    /// All composable `(g, f)` pairs, for exhaustive checks.
    pub fn composable_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.morphisms.len())
            .flat_map(|f| self.out_of(self.target(f)).map(move |&g| (g, f)))
            .collect()
    }

    /// Builds a category from an explicit table, with identities filled in.
    fn from_table(
        objects: Vec<String>,
        arrows: Vec<(String, usize, usize)>,
        table: impl Fn(usize, usize) -> Option<usize>,
    ) -> Result<Self, FinCatError> {
        let n = objects.len();
        let mut morphisms: Vec<Morphism> =
            objects.iter().enumerate().map(|(c, o)| Morphism { name: format!("id_{o}"), source: c, target: c }).collect();
        morphisms.extend(arrows.into_iter().map(|(name, source, target)| Morphism { name, source, target }));
        let mut comps = Vec::new();
        for f in n..morphisms.len() {
            for g in n..morphisms.len() {
                if morphisms[f].target == morphisms[g].source {
                    // `None` from the table means the composite is an identity.
                    let h = table(g - n, f - n).map(|h| h + n).unwrap_or(morphisms[f].source);
                    comps.push((g, f, h));
                }
            }
        }
        Self::new(objects, morphisms, (0..n).collect(), &comps)
    }

    pub fn trivial() -> Self {
        Self::discrete(1)
    }

    pub fn discrete(n: usize) -> Self {
        Self::from_table((0..n).map(|i| format!("o{i}")).collect(), vec![], |_, _| None).expect("discrete category")
    }

    /// The one-object category of a finite group.
    pub fn one_object_group(g: &FiniteGroup) -> Self {
        let e = g.identity();
        let others: Vec<usize> = (0..g.order()).filter(|&x| x != e).collect();
        let pos = |x: usize| others.iter().position(|&y| y == x);
        let arrows = others.iter().map(|&x| (g.label(x).to_string(), 0, 0)).collect();
        Self::from_table(vec!["*".into()], arrows, |a, b| pos(g.mul(others[a], others[b])))
            .expect("group tables give categories")
    }

    /// The poset generated by `relations` (pairs `a <= b`) on `n` points.
    pub fn poset(n: usize, relations: &[(usize, usize)]) -> Result<Self, FinCatError> {
        let mut le = vec![vec![false; n]; n];
        for (a, row) in le.iter_mut().enumerate() {
            row[a] = true;
        }
        for &(a, b) in relations {
            if a >= n || b >= n {
                return Err(FinCatError::InvalidCategory(format!("relation ({a}, {b}) is out of range")));
            }
            le[a][b] = true;
        }
        for k in 0..n {
            for a in 0..n {
                for b in 0..n {
                    if le[a][k] && le[k][b] {
                        le[a][b] = true;
                    }
                }
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                if le[a][b] && le[b][a] {
                    return Err(FinCatError::InvalidCategory(format!("relations contain a cycle through {a} and {b}")));
                }
            }
        }
        let objects: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| a != b && le[a][b]).collect();
        let arrows = pairs.iter().map(|&(a, b)| (format!("{a}<={b}"), a, b)).collect();
        let idx: BTreeMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        Self::from_table(objects, arrows, |g, f| idx.get(&(pairs[f].0, pairs[g].1)).copied())
    }

    /// `0 -> 1`.
    pub fn arrow() -> Self {
        Self::poset(2, &[(0, 1)]).expect("arrow")
    }

    /// `n` objects with exactly one morphism between any two.
    pub fn codiscrete(n: usize) -> Self {
        let objects: Vec<String> = (0..n).map(|i| format!("o{i}")).collect();
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| a != b).collect();
        let arrows = pairs.iter().map(|&(a, b)| (format!("o{a}->o{b}"), a, b)).collect();
        let idx: BTreeMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        Self::from_table(objects, arrows, |g, f| idx.get(&(pairs[f].0, pairs[g].1)).copied())
            .expect("codiscrete category")
    }

    pub fn opposite(&self) -> Self {
        let morphisms = self
            .morphisms
            .iter()
            .map(|f| Morphism { name: format!("{}^op", f.name), source: f.target, target: f.source })
            .collect();
        let m = self.morphisms.len();
        let mut comps = Vec::new();
        for (g, f) in self.composable_pairs() {
            // (g ∘ f)^op = f^op ∘ g^op
            comps.push((f, g, self.compose[g * m + f].expect("composable")));
        }
        Self::new(self.objects.clone(), morphisms, self.identities.clone(), &comps).expect("opposite of a category")
    }

    /// At most one morphism between two objects and no cycles.
    pub fn is_poset(&self) -> bool {
        let n = self.num_objects();
        (0..n).all(|a| (0..n).all(|b| self.hom[a][b].len() <= 1 && (a == b || self.hom[a][b].is_empty() || self.hom[b][a].is_empty())))
    }

    /// An object with exactly one morphism to every object.
    pub fn initial_object(&self) -> Option<usize> {
        (0..self.num_objects()).find(|&a| (0..self.num_objects()).all(|b| self.hom[a][b].len() == 1))
    }

    pub fn terminal_object(&self) -> Option<usize> {
        (0..self.num_objects()).find(|&b| (0..self.num_objects()).all(|a| self.hom[a][b].len() == 1))
    }

    /// The full subcategory on the given objects, with its inclusion.
    pub fn full_subcategory(&self, objs: &[usize]) -> Result<(Self, super::CatFunctor), FinCatError> {
        let pos = |c: usize| objs.iter().position(|&o| o == c);
        let keep: Vec<usize> =
            (0..self.morphisms.len()).filter(|&f| pos(self.source(f)).is_some() && pos(self.target(f)).is_some()).collect();
        let new_index = |f: usize| keep.iter().position(|&k| k == f).expect("kept");
        let morphisms = keep
            .iter()
            .map(|&f| Morphism {
                name: self.morphisms[f].name.clone(),
                source: pos(self.source(f)).unwrap(),
                target: pos(self.target(f)).unwrap(),
            })
            .collect();
        let identities = objs.iter().map(|&c| new_index(self.identities[c])).collect();
        let mut comps = Vec::new();
        for (gi, &g) in keep.iter().enumerate() {
            for (fi, &f) in keep.iter().enumerate() {
                if self.target(f) == self.source(g) {
                    comps.push((gi, fi, new_index(self.compose(g, f))));
                }
            }
        }
        let sub = Self::new(objs.iter().map(|&c| self.objects[c].clone()).collect(), morphisms, identities, &comps)?;
        let inc = super::CatFunctor::new(&sub, self, objs.to_vec(), keep)?;
        Ok((sub, inc))
    }

    pub fn to_json(&self) -> FinCategoryJson {
        let m = self.morphisms.len();
        let mut compositions = Vec::new();
        for (g, f) in self.composable_pairs() {
            if !self.is_identity(g) && !self.is_identity(f) {
                let h = self.compose[g * m + f].expect("composable");
                compositions.push([self.morphisms[g].name.clone(), self.morphisms[f].name.clone(), self.morphisms[h].name.clone()]);
            }
        }
        FinCategoryJson {
            kind: None,
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .enumerate()
                .filter(|(i, _)| !self.is_identity(*i))
                .map(|(_, f)| MorphismJson {
                    name: f.name.clone(),
                    source: self.objects[f.source].clone(),
                    target: self.objects[f.target].clone(),
                })
                .collect(),
            compositions,
            identities: self.identities.iter().map(|&i| self.morphisms[i].name.clone()).collect(),
            group: None,
            relations: Vec::new(),
            size: None,
        }
    }

    pub fn from_json(j: &FinCategoryJson) -> Result<Self, FinCatError> {
        let kind = j.kind.as_deref().unwrap_or("explicit");
        match kind {
            "explicit" => {}
            "trivial" => return Ok(Self::trivial()),
            "group" => {
                let g = j.group.as_ref().ok_or_else(|| FinCatError::Parse("kind \"group\" needs a \"group\" table".into()))?;
                return Ok(Self::one_object_group(&FiniteGroup::from_json(g)?));
            }
            "poset" => {
                let n = j.objects.len();
                let idx = |s: &str| {
                    j.objects.iter().position(|o| o == s).ok_or_else(|| FinCatError::Parse(format!("unknown object {s:?}")))
                };
                let rel = j.relations.iter().map(|[a, b]| Ok((idx(a)?, idx(b)?))).collect::<Result<Vec<_>, FinCatError>>()?;
                let p = Self::poset(n, &rel)?;
                return Ok(Self { objects: j.objects.clone(), ..p });
            }
            "codiscrete" => {
                let n = j.size.ok_or_else(|| FinCatError::Parse("kind \"codiscrete\" needs \"size\"".into()))?;
                return Ok(Self::codiscrete(n));
            }
            other if INFINITE_KINDS.contains(&other) => return Err(FinCatError::Infinite(other.to_string())),
            other => return Err(FinCatError::Parse(format!("unknown category kind {other:?}"))),
        }
        let obj = |s: &str| j.objects.iter().position(|o| o == s).ok_or_else(|| FinCatError::Parse(format!("unknown object {s:?}")));
        let n = j.objects.len();
        let mut morphisms: Vec<Morphism> = Vec::new();
        let mut identities = Vec::with_capacity(n);
        for (c, o) in j.objects.iter().enumerate() {
            let name = j.identities.get(c).cloned().unwrap_or_else(|| format!("id_{o}"));
            identities.push(morphisms.len());
            morphisms.push(Morphism { name, source: c, target: c });
        }
        for f in &j.morphisms {
            morphisms.push(Morphism { name: f.name.clone(), source: obj(&f.source)?, target: obj(&f.target)? });
        }
        let mut seen = BTreeSet::new();
        for f in &morphisms {
            if !seen.insert(&f.name) {
                return Err(FinCatError::Parse(format!("duplicate morphism name {:?}", f.name)));
            }
        }
        let mor = |s: &str| morphisms.iter().position(|f| f.name == s).ok_or_else(|| FinCatError::Parse(format!("unknown morphism {s:?}")));
        let comps = j
            .compositions
            .iter()
            .map(|[g, f, h]| Ok((mor(g)?, mor(f)?, mor(h)?)))
            .collect::<Result<Vec<_>, FinCatError>>()?;
        Self::new(j.objects.clone(), morphisms, identities, &comps)
    }
}

/// Category kinds that are infinite and therefore not representable here.
pub const INFINITE_KINDS: &[&str] = &["DeltaC", "DeltaS", "Delta", "FreeGroups", "BZ", "infinite"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismJson {
    pub name: String,
    pub source: String,
    pub target: String,
}

/// JSON form of a finite category.
///
/// `kind` is `explicit` (default), `trivial`, `group`, `poset` or `codiscrete`. Explicit
/// categories list non-identity morphisms and the composites `[g, f, g∘f]` of composable
/// non-identity pairs; identities are named `id_<object>` unless given.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct FinCategoryJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(default)]
    pub objects: Vec<String>,
    #[serde(default)]
    pub morphisms: Vec<MorphismJson>,
    #[serde(default)]
    pub compositions: Vec<[String; 3]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub identities: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<FiniteGroupJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_category() {
        let c = FinCategory::one_object_group(&FiniteGroup::symmetric(3));
        assert_eq!(c.num_objects(), 1);
        assert_eq!(c.num_morphisms(), 6);
        assert!(c.associativity_failure().is_none());
    }

    #[test]
    fn posets() {
        let p = FinCategory::poset(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(p.num_morphisms(), 6);
        assert!(p.is_poset());
        assert_eq!(p.initial_object(), Some(0));
        assert_eq!(p.terminal_object(), Some(2));
        assert!(FinCategory::poset(2, &[(0, 1), (1, 0)]).is_err());
        let op = p.opposite();
        assert_eq!(op.initial_object(), Some(2));
    }

    #[test]
    fn codiscrete_is_a_groupoid() {
        let c = FinCategory::codiscrete(3);
        assert_eq!(c.num_morphisms(), 9);
        assert_eq!(c.initial_object(), Some(0));
        let f = c.morphism_index("o0->o1").unwrap();
        let g = c.morphism_index("o1->o0").unwrap();
        assert!(c.is_identity(c.compose(g, f)));
    }

    #[test]
    fn json_round_trip_and_errors() {
        let c = FinCategory::one_object_group(&FiniteGroup::cyclic(3));
        let j = c.to_json();
        assert_eq!(FinCategory::from_json(&j).unwrap(), c);
        let mut broken = j.clone();
        broken.compositions.pop();
        assert!(matches!(FinCategory::from_json(&broken), Err(FinCatError::InvalidCategory(_))));
        let inf = FinCategoryJson { kind: Some("DeltaC".into()), ..Default::default() };
        assert!(matches!(FinCategory::from_json(&inf), Err(FinCatError::Infinite(_))));
    }

    #[test]
    fn broken_associativity_is_reported() {
        // Two non-identity endomorphisms a, b with a table that is not associative.
        let objects = vec!["*".to_string()];
        let morphisms = vec![
            Morphism { name: "id".into(), source: 0, target: 0 },
            Morphism { name: "a".into(), source: 0, target: 0 },
            Morphism { name: "b".into(), source: 0, target: 0 },
        ];
        // aa = b, ab = a, ba = b, bb = b: (aa)b = bb = b but a(ab) = aa = b; (ab)a = aa = b, a(ba) = ab = a.
        let comps = [(1, 1, 2), (1, 2, 1), (2, 1, 2), (2, 2, 2)];
        let err = FinCategory::new(objects, morphisms, vec![0], &comps).unwrap_err();
        assert!(err.to_string().contains("associativity"), "{err}");
    }
}
