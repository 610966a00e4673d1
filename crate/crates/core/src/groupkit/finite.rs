use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::GroupError;
use crate::exactlin::{AbelianGroup, Cokernel, IntegerMatrix};

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

/// JSON form: `{"elements": [...], "table": [[...]], "identity": "e"}`.
///
/// Table entries and the identity may be labels or indices.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FiniteGroupJson {
    pub elements: Vec<String>,
    pub table: Vec<Vec<ElementRef>>,
    pub identity: ElementRef,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementRef {
    Index(usize),
    Label(String),
}

impl FiniteGroup {
    /// Validates closure, identity, inverses and associativity.
    pub fn new(labels: Vec<String>, table: Vec<Vec<usize>>, identity: usize) -> Result<Self, GroupError> {
        let n = labels.len();
        if n == 0 {
            return Err(GroupError::InvalidGroup("a group has at least one element".into()));
        }
        let distinct: BTreeSet<&String> = labels.iter().collect();
        if distinct.len() != n {
            return Err(GroupError::InvalidGroup("element labels are not distinct".into()));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(GroupError::InvalidGroup(format!("table must be {n}x{n}")));
        }
        if let Some((a, b)) = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).find(|&(a, b)| table[a][b] >= n) {
            return Err(GroupError::InvalidGroup(format!("product {}*{} is out of range", labels[a], labels[b])));
        }
        if identity >= n {
            return Err(GroupError::InvalidGroup("identity is out of range".into()));
        }
        for a in 0..n {
            if table[identity][a] != a || table[a][identity] != a {
                return Err(GroupError::InvalidGroup(format!(
                    "{} is not a two-sided identity for {}",
                    labels[identity], labels[a]
                )));
            }
        }
        let mut inverses = vec![0; n];
        for a in 0..n {
            match (0..n).find(|&b| table[a][b] == identity && table[b][a] == identity) {
                Some(b) => inverses[a] = b,
                None => return Err(GroupError::InvalidGroup(format!("{} has no inverse", labels[a]))),
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupError::InvalidGroup(format!(
                            "associativity fails for ({}, {}, {})",
                            labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        Ok(Self { labels, table, identity, inverses })
    }

    pub fn from_json(j: &FiniteGroupJson) -> Result<Self, GroupError> {
        let resolve = |r: &ElementRef, what: &str| -> Result<usize, GroupError> {
            match r {
                ElementRef::Index(i) => Ok(*i),
                ElementRef::Label(s) => j
                    .elements
                    .iter()
                    .position(|l| l == s)
                    .ok_or_else(|| GroupError::InvalidGroup(format!("{what}: unknown element {s:?}"))),
            }
        };
        let table = j
            .table
            .iter()
            .enumerate()
            .map(|(r, row)| {
                row.iter()
                    .enumerate()
                    .map(|(c, e)| resolve(e, &format!("table[{r}][{c}]")))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let identity = resolve(&j.identity, "identity")?;
        Self::new(j.elements.clone(), table, identity)
    }

    pub fn to_json(&self) -> FiniteGroupJson {
        FiniteGroupJson {
            elements: self.labels.clone(),
            table: self
                .table
                .iter()
                .map(|r| r.iter().map(|&x| ElementRef::Label(self.labels[x].clone())).collect())
                .collect(),
            identity: ElementRef::Label(self.labels[self.identity].clone()),
        }
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `Z/n` with elements `0..n` written additively.
    pub fn cyclic(n: usize) -> Self {
        let labels = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::new(labels, table, 0).expect("cyclic group table is valid")
    }

    /// Symmetric group on `n` letters; elements are permutations in one-line notation,
    /// and `p * q` means apply `q` first.
    pub fn symmetric(n: usize) -> Self {
        let mut perms: Vec<Vec<usize>> = Vec::new();
        permutations(n, &mut Vec::new(), &mut vec![false; n], &mut perms);
        Self::from_permutations(perms)
    }

    /// Dihedral group of order `2n` as permutations of the vertices of an `n`-gon.
    pub fn dihedral(n: usize) -> Self {
        let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        Self::from_permutations(closure_of_permutations(&[rot, refl], n))
    }

    /// Quaternion group of order 8 as permutations of `{±1, ±i, ±j, ±k}`.
    pub fn quaternion() -> Self {
        // Encode 1,i,j,k,-1,-i,-j,-k as 0..8 and act by left multiplication.
        let mul = |a: usize, b: usize| -> usize {
            let (sa, ua) = (a / 4, a % 4);
            let (sb, ub) = (b / 4, b % 4);
            // unit products: table[u][v] = (sign, unit)
            const T: [[(usize, usize); 4]; 4] = [
                [(0, 0), (0, 1), (0, 2), (0, 3)],
                [(0, 1), (1, 0), (0, 3), (1, 2)],
                [(0, 2), (1, 3), (1, 0), (0, 1)],
                [(0, 3), (0, 2), (1, 1), (1, 0)],
            ];
            let (s, u) = T[ua][ub];
            ((sa + sb + s) % 2) * 4 + u
        };
        let names = ["1", "i", "j", "k", "-1", "-i", "-j", "-k"];
        let labels = names.iter().map(|s| s.to_string()).collect();
        let table = (0..8).map(|a| (0..8).map(|b| mul(a, b)).collect()).collect();
        Self::new(labels, table, 0).expect("quaternion table is valid")
    }

    fn from_permutations(mut perms: Vec<Vec<usize>>) -> Self {
        perms.sort();
        let n = perms.first().map_or(0, Vec::len);
        let index = |p: &Vec<usize>| perms.binary_search(p).expect("closed under composition");
        let table = perms
            .iter()
            .map(|p| perms.iter().map(|q| index(&(0..n).map(|i| p[q[i]]).collect())).collect())
            .collect();
        let id = index(&(0..n).collect());
        let labels = perms.iter().map(|p| p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("")).collect();
        Self::new(labels, table, id).expect("permutation group table is valid")
    }

    /// Direct product, elements labelled `(a,b)`.
    pub fn product(&self, other: &Self) -> Self {
        let n = other.order();
        let labels = self
            .labels
            .iter()
            .flat_map(|a| other.labels.iter().map(move |b| format!("({a},{b})")))
            .collect();
        let table = (0..self.order() * n)
            .map(|x| {
                (0..self.order() * n)
                    .map(|y| self.mul(x / n, y / n) * n + other.mul(x % n, y % n))
                    .collect()
            })
            .collect();
        Self::new(labels, table, self.identity * n + other.identity).expect("product of groups")
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn element(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Product `g_0 g_1 ... g_k`.
    pub fn product_of(&self, elems: &[usize]) -> usize {
        elems.iter().fold(self.identity, |acc, &g| self.mul(acc, g))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Conjugacy classes, each sorted, ordered by smallest element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for a in 0..n {
            if seen[a] {
                continue;
            }
            let class: BTreeSet<usize> = (0..n).map(|g| self.mul(self.mul(g, a), self.inv(g))).collect();
            for &x in &class {
                seen[x] = true;
            }
            classes.push(class.into_iter().collect());
        }
        classes
    }

    /// Index of the conjugacy class of every element.
    pub fn class_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.order()];
        for (c, class) in self.conjugacy_classes().iter().enumerate() {
            for &x in class {
                idx[x] = c;
            }
        }
        idx
    }

    /// The commutator subgroup, sorted.
    pub fn commutator_subgroup(&self) -> Vec<usize> {
        let n = self.order();
        let gens: Vec<usize> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b))))
            .collect();
        let mut sub: BTreeSet<usize> = BTreeSet::from([self.identity]);
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = self.mul(x, g);
                if sub.insert(y) {
                    frontier.push(y);
                }
            }
        }
        sub.into_iter().collect()
    }

    pub fn abelianization(&self) -> FiniteAbelianization {
        let n = self.order();
        let comm = self.commutator_subgroup();
        let mut coset = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for a in 0..n {
            if coset[a] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(a);
            for &k in &comm {
                coset[self.mul(a, k)] = c;
            }
        }
        let m = reps.len();
        // Presentation of the quotient: generators are cosets, relations e_a + e_b - e_ab.
        let mut rel = IntegerMatrix::zeros(m, m * m + 1);
        for a in 0..m {
            for b in 0..m {
                let ab = coset[self.mul(reps[a], reps[b])];
                let col = a * m + b;
                rel.add_at(a, col, 1);
                rel.add_at(b, col, 1);
                rel.add_at(ab, col, -1);
            }
        }
        rel.add_at(coset[self.identity], m * m, 1);
        let cokernel = Cokernel::of(&rel);
        let coords = (0..m)
            .map(|c| {
                let mut e = vec![BigInt::from(0); m];
                e[c] = BigInt::from(1);
                cokernel.coords(&e)
            })
            .collect();
        FiniteAbelianization { coset, representatives: reps, group: cokernel.group.clone(), coords }
    }
}

/// The abelianization `Γ -> Γ_ab` of a finite group.
#[derive(Clone, Debug)]
pub struct FiniteAbelianization {
    /// Coset index of each element.
    pub coset: Vec<usize>,
    /// Smallest element of each coset.
    pub representatives: Vec<usize>,
    pub group: AbelianGroup,
    /// Canonical coordinates of each coset in `group`.
    pub coords: Vec<Vec<BigInt>>,
}

impl FiniteAbelianization {
    pub fn order(&self) -> usize {
        self.representatives.len()
    }
}

fn permutations(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == n {
        out.push(cur.clone());
        return;
    }
    for i in 0..n {
        if !used[i] {
            used[i] = true;
            cur.push(i);
            permutations(n, cur, used, out);
            cur.pop();
            used[i] = false;
        }
    }
}

fn closure_of_permutations(gens: &[Vec<usize>], n: usize) -> Vec<Vec<usize>> {
    let id: Vec<usize> = (0..n).collect();
    let mut set = BTreeSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(p) = frontier.pop() {
        for g in gens {
            let q: Vec<usize> = (0..n).map(|i| g[p[i]]).collect();
            if set.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    set.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_groups_have_expected_orders() {
        assert_eq!(FiniteGroup::trivial().order(), 1);
        assert_eq!(FiniteGroup::cyclic(4).order(), 4);
        assert_eq!(FiniteGroup::symmetric(3).order(), 6);
        assert_eq!(FiniteGroup::dihedral(4).order(), 8);
        assert_eq!(FiniteGroup::quaternion().order(), 8);
        assert_eq!(FiniteGroup::cyclic(2).product(&FiniteGroup::cyclic(3)).order(), 6);
    }

    #[test]
    fn class_counts() {
        assert_eq!(FiniteGroup::trivial().conjugacy_classes().len(), 1);
        assert_eq!(FiniteGroup::cyclic(3).conjugacy_classes().len(), 3);
        assert_eq!(FiniteGroup::symmetric(3).conjugacy_classes().len(), 3);
        assert_eq!(FiniteGroup::quaternion().conjugacy_classes().len(), 5);
        assert_eq!(FiniteGroup::dihedral(4).conjugacy_classes().len(), 5);
        assert_eq!(FiniteGroup::symmetric(4).conjugacy_classes().len(), 5);
    }

    #[test]
    fn abelianizations() {
        let s3 = FiniteGroup::symmetric(3).abelianization();
        assert_eq!(s3.order(), 2);
        assert_eq!(s3.group.to_string(), "Z/2");
        let q8 = FiniteGroup::quaternion().abelianization();
        assert_eq!(q8.group.to_string(), "Z/2 + Z/2");
        let z6 = FiniteGroup::cyclic(2).product(&FiniteGroup::cyclic(3)).abelianization();
        assert_eq!(z6.group.to_string(), "Z/6");
        // Distinct cosets have distinct coordinates.
        let set: BTreeSet<_> = q8.coords.iter().collect();
        assert_eq!(set.len(), 4);
    }

    #[test]
    fn broken_associativity_is_reported() {
        // A Latin square with identity 0 that is not associative.
        let table = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let labels = (0..5).map(|i| format!("a{i}")).collect();
        let err = FiniteGroup::new(labels, table, 0).unwrap_err();
        assert!(err.to_string().contains("associativity fails"), "{err}");
    }

    #[test]
    fn json_round_trip() {
        let g = FiniteGroup::symmetric(3);
        let text = serde_json::to_string(&g.to_json()).unwrap();
        let back: FiniteGroupJson = serde_json::from_str(&text).unwrap();
        assert_eq!(FiniteGroup::from_json(&back).unwrap(), g);
    }
}
