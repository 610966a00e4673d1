use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{FreeWord, GroupError, GroupHom, Letter, ReducedSimplicialSet};
use crate::exactlin::{IntegerChainComplex, IntegerMatrix};

/// A simplicial group, free in each degree, truncated at level `N`.
///
/// `faces[q][i]` is `d_i: Γ_q -> Γ_{q-1}` for `1 <= q <= N` (`faces[0]` is empty) and
/// `degeneracies[q][j]` is `s_j: Γ_q -> Γ_{q+1}` for `q < N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialGroupModel {
    truncation: usize,
    ranks: Vec<usize>,
    faces: Vec<Vec<GroupHom>>,
    degeneracies: Vec<Vec<GroupHom>>,
    labels: Vec<Vec<String>>,
}

/// The first simplicial identity found to fail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityFailure {
    pub level: usize,
    pub relation: String,
    pub generator: usize,
}

impl SimplicialGroupModel {
    /// Checks shapes and all simplicial identities.
    pub fn new(
        ranks: Vec<usize>,
        faces: Vec<Vec<GroupHom>>,
        degeneracies: Vec<Vec<GroupHom>>,
        labels: Option<Vec<Vec<String>>>,
    ) -> Result<Self, GroupError> {
        let m = Self::new_unchecked(ranks, faces, degeneracies, labels)?;
        if let Some(f) = m.first_identity_failure() {
            return Err(GroupError::SimplicialIdentity {
                level: f.level,
                relation: f.relation,
                generator: m.labels[f.level].get(f.generator).cloned().unwrap_or_default(),
            });
        }
        Ok(m)
    }

    /// Checks shapes only.
    pub fn new_unchecked(
        ranks: Vec<usize>,
        faces: Vec<Vec<GroupHom>>,
        degeneracies: Vec<Vec<GroupHom>>,
        labels: Option<Vec<Vec<String>>>,
    ) -> Result<Self, GroupError> {
        if ranks.is_empty() {
            return Err(GroupError::InvalidModel("a model has at least level 0".into()));
        }
        let n = ranks.len() - 1;
        if faces.len() != n + 1 || degeneracies.len() != n {
            return Err(GroupError::InvalidModel(format!(
                "truncation {n} needs {} face levels and {n} degeneracy levels",
                n + 1
            )));
        }
        for q in 0..=n {
            let expect = if q == 0 { 0 } else { q + 1 };
            if faces[q].len() != expect {
                return Err(GroupError::InvalidModel(format!("level {q} has {} faces, expected {expect}", faces[q].len())));
            }
            for (i, d) in faces[q].iter().enumerate() {
                if d.source_rank() != ranks[q] || d.target_rank() != ranks[q - 1] {
                    return Err(GroupError::InvalidModel(format!(
                        "d_{i} at level {q} maps rank {} to rank {}, expected {} to {}",
                        d.source_rank(),
                        d.target_rank(),
                        ranks[q],
                        ranks[q - 1]
                    )));
                }
            }
        }
        for q in 0..n {
            if degeneracies[q].len() != q + 1 {
                return Err(GroupError::InvalidModel(format!(
                    "level {q} has {} degeneracies, expected {}",
                    degeneracies[q].len(),
                    q + 1
                )));
            }
            for (j, s) in degeneracies[q].iter().enumerate() {
                if s.source_rank() != ranks[q] || s.target_rank() != ranks[q + 1] {
                    return Err(GroupError::InvalidModel(format!(
                        "s_{j} at level {q} maps rank {} to rank {}, expected {} to {}",
                        s.source_rank(),
                        s.target_rank(),
                        ranks[q],
                        ranks[q + 1]
                    )));
                }
            }
        }
        let labels = match labels {
            Some(l) => {
                if l.len() != n + 1 || l.iter().zip(&ranks).any(|(l, &r)| l.len() != r) {
                    return Err(GroupError::InvalidModel("labels do not match ranks".into()));
                }
                l
            }
            None => ranks.iter().enumerate().map(|(q, &r)| (0..r).map(|g| format!("g{q}_{g}")).collect()).collect(),
        };
        Ok(Self { truncation: n, ranks, faces, degeneracies, labels })
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn face(&self, q: usize, i: usize) -> &GroupHom {
        &self.faces[q][i]
    }

    pub fn degeneracy(&self, q: usize, j: usize) -> &GroupHom {
        &self.degeneracies[q][j]
    }

    pub fn labels(&self, q: usize) -> &[String] {
        &self.labels[q]
    }

    /// Checks `d_i d_j = d_{j-1} d_i`, the mixed `d_i s_j` relations and `s_i s_j = s_{j+1} s_i`
    /// on every generator up to the truncation level.
    pub fn first_identity_failure(&self) -> Option<IdentityFailure> {
        let n = self.truncation;
        let differ = |a: &GroupHom, b: &GroupHom| (0..a.source_rank()).find(|&g| a.image(g) != b.image(g));
        let after = |second: &GroupHom, first: &GroupHom| second.compose(first).expect("ranks match");
        for q in 2..=n {
            for j in 1..=q {
                for i in 0..j {
                    let lhs = after(&self.faces[q - 1][i], &self.faces[q][j]);
                    let rhs = after(&self.faces[q - 1][j - 1], &self.faces[q][i]);
                    if let Some(g) = differ(&lhs, &rhs) {
                        return Some(IdentityFailure {
                            level: q,
                            relation: format!("d_{i} d_{j} = d_{} d_{i}", j - 1),
                            generator: g,
                        });
                    }
                }
            }
        }
        for q in 0..n {
            // d_i s_j on level q, landing in level q.
            for j in 0..=q {
                for i in 0..=q + 1 {
                    let lhs = after(&self.faces[q + 1][i], &self.degeneracies[q][j]);
                    let (rhs, name) = if i < j {
                        (after(&self.degeneracies[q - 1][j - 1], &self.faces[q][i]), format!("d_{i} s_{j} = s_{} d_{i}", j - 1))
                    } else if i == j || i == j + 1 {
                        (GroupHom::identity(self.ranks[q]), format!("d_{i} s_{j} = id"))
                    } else {
                        (after(&self.degeneracies[q - 1][j], &self.faces[q][i - 1]), format!("d_{i} s_{j} = s_{j} d_{}", i - 1))
                    };
                    if let Some(g) = differ(&lhs, &rhs) {
                        return Some(IdentityFailure { level: q, relation: name, generator: g });
                    }
                }
            }
            if q + 1 < n {
                for j in 0..=q {
                    for i in 0..=j {
                        let lhs = after(&self.degeneracies[q + 1][i], &self.degeneracies[q][j]);
                        let rhs = after(&self.degeneracies[q + 1][j + 1], &self.degeneracies[q][i]);
                        if let Some(g) = differ(&lhs, &rhs) {
                            return Some(IdentityFailure {
                                level: q,
                                relation: format!("s_{i} s_{j} = s_{} s_{i}", j + 1),
                                generator: g,
                            });
                        }
                    }
                }
            }
        }
        None
    }

    /// The model truncated at a lower level.
    pub fn truncate(&self, n: usize) -> Self {
        let n = n.min(self.truncation);
        Self {
            truncation: n,
            ranks: self.ranks[..=n].to_vec(),
            faces: self.faces[..=n].to_vec(),
            degeneracies: self.degeneracies[..n].to_vec(),
            labels: self.labels[..=n].to_vec(),
        }
    }

    /// Abelianized face `d_i` at level `q` as a dense `r_{q-1} x r_q` integer array.
    pub fn abelian_face(&self, q: usize, i: usize) -> Vec<Vec<i64>> {
        self.faces[q][i].abelianize_i64()
    }

    pub fn abelian_degeneracy(&self, q: usize, j: usize) -> Vec<Vec<i64>> {
        self.degeneracies[q][j].abelianize_i64()
    }

    /// The unnormalized chain complex `Z^{r_q}` with `∂ = Σ (-1)^i (d_i)_ab`, levels `0..=N`.
    pub fn abelian_moore_complex(&self) -> IntegerChainComplex {
        let mut diffs = vec![IntegerMatrix::zeros(0, self.ranks[0])];
        for q in 1..=self.truncation {
            let mut m = IntegerMatrix::zeros(self.ranks[q - 1], self.ranks[q]);
            for i in 0..=q {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                for (r, row) in self.abelian_face(q, i).iter().enumerate() {
                    for (c, &v) in row.iter().enumerate() {
                        if v != 0 {
                            m.add_at(r, c, sign * v);
                        }
                    }
                }
            }
            diffs.push(m);
        }
        IntegerChainComplex::new(self.ranks.clone(), diffs).expect("alternating face sums square to zero")
    }

    /// The constant simplicial group on a free group of rank `k`.
    pub fn constant_free(k: usize, n: usize) -> Self {
        let id = GroupHom::identity(k);
        let faces = (0..=n).map(|q| vec![id.clone(); if q == 0 { 0 } else { q + 1 }]).collect();
        let degeneracies = (0..n).map(|q| vec![id.clone(); q + 1]).collect();
        let labels = (0..=n).map(|_| (0..k).map(|g| format!("x{g}")).collect()).collect();
        Self::new(vec![k; n + 1], faces, degeneracies, Some(labels)).expect("constant model is simplicial")
    }
}

/// A letter of a cell's face word: `(η^* c)^{±1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellLetter {
    pub cell: String,
    /// Monotone surjection `[p-1] -> [dim c]` as its list of values; identity when omitted.
    #[serde(default)]
    pub eta: Option<Vec<usize>>,
    #[serde(default = "one")]
    pub exp: i64,
}

fn one() -> i64 {
    1
}

/// A generating cell of dimension `dim` with its face words `d_0 .. d_dim` (none for `dim = 0`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub name: String,
    pub dim: usize,
    #[serde(default)]
    pub faces: Vec<Vec<CellLetter>>,
}

/// The free simplicial group generated by cells.
///
/// Level `q` is free on the degenerate copies `η^* c` for cells `c` and monotone
/// surjections `η: [q] -> [dim c]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellModel {
    pub cells: Vec<Cell>,
}

/// All monotone surjections `[q] -> [p]`, lexicographically.
pub fn surjections(q: usize, p: usize) -> Vec<Vec<usize>> {
    if p > q {
        return Vec::new();
    }
    let mut out = Vec::new();
    // Choose which of the q steps increase the value.
    fn go(q: usize, p: usize, pos: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pos == q {
            if cur[q] == p {
                out.push(cur.clone());
            }
            return;
        }
        let last = cur[pos];
        for step in [0, 1] {
            if last + step > p || p - (last + step) > q - pos - 1 {
                continue;
            }
            cur.push(last + step);
            go(q, p, pos + 1, cur, out);
            cur.pop();
        }
    }
    let mut cur = vec![0];
    go(q, p, 0, &mut cur, &mut out);
    out
}

type Generator = (usize, Vec<usize>);

struct LevelIndex {
    gens: Vec<Generator>,
    index: HashMap<Generator, usize>,
}

impl CellModel {
    fn cell_index(&self, name: &str) -> Result<usize, GroupError> {
        self.cells
            .iter()
            .position(|c| c.name == name)
            .ok_or_else(|| GroupError::InvalidModel(format!("unknown cell {name:?}")))
    }

    fn level(&self, q: usize) -> LevelIndex {
        let mut gens = Vec::new();
        for (c, cell) in self.cells.iter().enumerate() {
            for eta in surjections(q, cell.dim) {
                gens.push((c, eta));
            }
        }
        let index = gens.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        LevelIndex { gens, index }
    }

    /// Face words resolved to `(cell, eta, exp)` letters.
    fn resolved_faces(&self) -> Result<Vec<Vec<Vec<(usize, Vec<usize>, i64)>>>, GroupError> {
        let mut names = std::collections::BTreeSet::new();
        for c in &self.cells {
            if !names.insert(&c.name) {
                return Err(GroupError::InvalidModel(format!("duplicate cell {:?}", c.name)));
            }
        }
        self.cells
            .iter()
            .map(|cell| {
                let expect = if cell.dim == 0 { 0 } else { cell.dim + 1 };
                if cell.faces.len() != expect {
                    return Err(GroupError::InvalidModel(format!(
                        "cell {:?} of dimension {} has {} faces, expected {expect}",
                        cell.name,
                        cell.dim,
                        cell.faces.len()
                    )));
                }
                cell.faces
                    .iter()
                    .map(|word| {
                        word.iter()
                            .map(|l| {
                                let c = self.cell_index(&l.cell)?;
                                let d = self.cells[c].dim;
                                let p = cell.dim - 1;
                                let eta = l.eta.clone().unwrap_or_else(|| (0..=p).collect());
                                let valid = eta.len() == p + 1
                                    && eta.first() == Some(&0)
                                    && eta.last() == Some(&d)
                                    && eta.windows(2).all(|w| w[1] == w[0] || w[1] == w[0] + 1);
                                if !valid {
                                    return Err(GroupError::InvalidModel(format!(
                                        "face of {:?}: {:?} is not a surjection [{p}] -> [{d}] onto cell {:?}",
                                        cell.name, eta, l.cell
                                    )));
                                }
                                Ok((c, eta, l.exp))
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }

    /// Builds and validates the model up to level `n`.
    pub fn build(&self, n: usize) -> Result<SimplicialGroupModel, GroupError> {
        let faces_of = self.resolved_faces()?;
        let levels: Vec<LevelIndex> = (0..=n + 1).map(|q| self.level(q)).collect();
        let word_at = |q: usize, letters: Vec<(usize, Vec<usize>, i64)>| -> FreeWord {
            FreeWord::reduce(letters.into_iter().flat_map(|(c, eta, e)| {
                let idx = levels[q].index[&(c, eta)];
                std::iter::repeat(Letter::new(idx, e < 0)).take(e.unsigned_abs() as usize)
            }))
        };
        let mut faces = vec![Vec::new()];
        for q in 1..=n {
            let mut level_faces = Vec::with_capacity(q + 1);
            for i in 0..=q {
                let images = levels[q]
                    .gens
                    .iter()
                    .map(|(c, eta)| {
                        // θ = η ∘ δ_i : [q-1] -> [p]
                        let theta: Vec<usize> = (0..q).map(|k| eta[if k < i { k } else { k + 1 }]).collect();
                        let p = self.cells[*c].dim;
                        match (0..=p).find(|v| !theta.contains(v)) {
                            None => word_at(q - 1, vec![(*c, theta, 1)]),
                            Some(k0) => {
                                let eta1: Vec<usize> = theta.iter().map(|&v| if v < k0 { v } else { v - 1 }).collect();
                                let letters = faces_of[*c][k0]
                                    .iter()
                                    .map(|(c2, eta2, e)| (*c2, eta1.iter().map(|&v| eta2[v]).collect(), *e))
                                    .collect();
                                word_at(q - 1, letters)
                            }
                        }
                    })
                    .collect();
                level_faces.push(GroupHom::new(levels[q].gens.len(), levels[q - 1].gens.len(), images)?);
            }
            faces.push(level_faces);
        }
        let mut degeneracies = Vec::new();
        for q in 0..n {
            let mut level = Vec::with_capacity(q + 1);
            for j in 0..=q {
                let images = levels[q]
                    .gens
                    .iter()
                    .map(|(c, eta)| {
                        let e2: Vec<usize> = (0..=q + 1).map(|k| eta[if k <= j { k } else { k - 1 }]).collect();
                        word_at(q + 1, vec![(*c, e2, 1)])
                    })
                    .collect();
                level.push(GroupHom::new(levels[q].gens.len(), levels[q + 1].gens.len(), images)?);
            }
            degeneracies.push(level);
        }
        let ranks = (0..=n).map(|q| levels[q].gens.len()).collect();
        let labels = (0..=n)
            .map(|q| {
                levels[q]
                    .gens
                    .iter()
                    .map(|(c, eta)| {
                        let name = &self.cells[*c].name;
                        if eta.len() == self.cells[*c].dim + 1 {
                            name.clone()
                        } else {
                            format!("{name}{eta:?}")
                        }
                    })
                    .collect()
            })
            .collect();
        SimplicialGroupModel::new(ranks, faces, degeneracies, Some(labels))
    }

    /// Two generators in degree 0 and one cell of degree 1 with `d_0 = [x, y]`, `d_1 = 1`.
    pub fn torus() -> Self {
        let l = |c: &str, exp: i64| CellLetter { cell: c.into(), eta: None, exp };
        Self {
            cells: vec![
                Cell { name: "x".into(), dim: 0, faces: vec![] },
                Cell { name: "y".into(), dim: 0, faces: vec![] },
                Cell {
                    name: "rho".into(),
                    dim: 1,
                    faces: vec![vec![l("x", 1), l("y", 1), l("x", -1), l("y", -1)], vec![]],
                },
            ],
        }
    }
}

/// Milnor's construction: level `q` is free on the non-basepoint `q`-simplices of a reduced
/// simplicial set, with faces and degeneracies induced and the basepoint sent to 1.
pub fn milnor_model(k: &ReducedSimplicialSet, n: usize) -> Result<SimplicialGroupModel, GroupError> {
    let cells = k
        .simplices()
        .iter()
        .map(|s| Cell {
            name: s.name.clone(),
            dim: s.dim,
            faces: s
                .faces
                .iter()
                .map(|f| match &f.simplex {
                    None => vec![],
                    Some(name) => vec![CellLetter { cell: name.clone(), eta: f.eta.clone(), exp: 1 }],
                })
                .collect(),
        })
        .collect();
    CellModel { cells }.build(n)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SimplicialModelJson {
    Explicit(ExplicitModelJson),
    Cells {
        #[serde(rename = "N")]
        truncation: usize,
        cells: Vec<Cell>,
    },
    Milnor {
        #[serde(rename = "N")]
        truncation: usize,
        reduced_simplicial_set: super::ReducedSimplicialSetJson,
    },
    Constant {
        #[serde(rename = "N")]
        truncation: usize,
        constant_free_rank: usize,
    },
}

/// `faces[q-1][i][g]` is the image of generator `g` under `d_i` at level `q`, and
/// `degeneracies[q][j][g]` the image under `s_j` at level `q`, as 1-based signed index lists.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExplicitModelJson {
    #[serde(rename = "N")]
    pub truncation: usize,
    pub ranks: Vec<usize>,
    pub faces: Vec<Vec<Vec<Vec<i64>>>>,
    pub degeneracies: Vec<Vec<Vec<Vec<i64>>>>,
}

impl SimplicialModelJson {
    pub fn build(&self) -> Result<SimplicialGroupModel, GroupError> {
        match self {
            SimplicialModelJson::Explicit(e) => e.build(),
            SimplicialModelJson::Cells { truncation, cells } => CellModel { cells: cells.clone() }.build(*truncation),
            SimplicialModelJson::Milnor { truncation, reduced_simplicial_set } => {
                milnor_model(&ReducedSimplicialSet::from_json(reduced_simplicial_set)?, *truncation)
            }
            SimplicialModelJson::Constant { truncation, constant_free_rank } => {
                Ok(SimplicialGroupModel::constant_free(*constant_free_rank, *truncation))
            }
        }
    }
}

impl ExplicitModelJson {
    pub fn build(&self) -> Result<SimplicialGroupModel, GroupError> {
        let n = self.truncation;
        if self.ranks.len() != n + 1 {
            return Err(GroupError::InvalidModel(format!("N = {n} needs {} ranks", n + 1)));
        }
        if self.faces.len() != n || self.degeneracies.len() != n {
            return Err(GroupError::InvalidModel(format!("N = {n} needs {n} face levels and {n} degeneracy levels")));
        }
        let hom = |imgs: &Vec<Vec<i64>>, src: usize, tgt: usize, what: String| -> Result<GroupHom, GroupError> {
            let words = imgs
                .iter()
                .map(|w| FreeWord::from_signed(w))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| GroupError::InvalidModel(format!("{what}: {e}")))?;
            GroupHom::new(src, tgt, words).map_err(|e| GroupError::InvalidModel(format!("{what}: {e}")))
        };
        let mut faces = vec![Vec::new()];
        for q in 1..=n {
            let level = self.faces[q - 1]
                .iter()
                .enumerate()
                .map(|(i, imgs)| hom(imgs, self.ranks[q], self.ranks[q - 1], format!("faces level {q}, d_{i}")))
                .collect::<Result<Vec<_>, _>>()?;
            faces.push(level);
        }
        let degeneracies = (0..n)
            .map(|q| {
                self.degeneracies[q]
                    .iter()
                    .enumerate()
                    .map(|(j, imgs)| hom(imgs, self.ranks[q], self.ranks[q + 1], format!("degeneracies level {q}, s_{j}")))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        SimplicialGroupModel::new(self.ranks.clone(), faces, degeneracies, None)
    }
}

impl SimplicialGroupModel {
    /// Explicit JSON form of this model.
    pub fn to_json(&self) -> ExplicitModelJson {
        let signed = |h: &GroupHom| -> Vec<Vec<i64>> {
            h.images()
                .iter()
                .map(|w| w.letters().iter().map(|l| (l.gen as i64 + 1) * l.sign()).collect())
                .collect()
        };
        ExplicitModelJson {
            truncation: self.truncation,
            ranks: self.ranks.clone(),
            faces: (1..=self.truncation).map(|q| self.faces[q].iter().map(signed).collect()).collect(),
            degeneracies: (0..self.truncation).map(|q| self.degeneracies[q].iter().map(signed).collect()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupkit::ReducedSimplicialSet;

    #[test]
    fn surjection_counts() {
        assert_eq!(surjections(3, 1).len(), 3);
        assert_eq!(surjections(4, 2).len(), 6);
        assert_eq!(surjections(2, 2), vec![vec![0, 1, 2]]);
        assert!(surjections(1, 2).is_empty());
        assert_eq!(surjections(2, 0), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn milnor_circle_ranks_and_identities() {
        let m = milnor_model(&ReducedSimplicialSet::circle(), 5).unwrap();
        assert_eq!(m.ranks(), &[0, 1, 2, 3, 4, 5]);
        assert!(m.first_identity_failure().is_none());
    }

    #[test]
    fn milnor_circle_moore_homology() {
        let m = milnor_model(&ReducedSimplicialSet::circle(), 5).unwrap();
        let h = m.abelian_moore_complex().homology();
        assert_eq!(h[1].to_string(), "Z");
        for q in [0, 2, 3, 4] {
            assert!(h[q].is_trivial(), "degree {q}: {}", h[q]);
        }
    }

    #[test]
    fn torus_model() {
        let m = CellModel::torus().build(4).unwrap();
        assert_eq!(m.ranks(), &[2, 3, 4, 5, 6]);
        let h = m.abelian_moore_complex().homology();
        assert_eq!(h[0].to_string(), "Z^2");
        assert_eq!(h[1].to_string(), "Z");
        assert!(h[2].is_trivial() && h[3].is_trivial());
    }

    #[test]
    fn constant_model() {
        let m = SimplicialGroupModel::constant_free(1, 4);
        assert_eq!(m.ranks(), &[1; 5]);
        let h = m.abelian_moore_complex().homology();
        assert_eq!(h[0].to_string(), "Z");
        assert!(h[1].is_trivial() && h[2].is_trivial() && h[3].is_trivial());
    }

    #[test]
    fn broken_face_is_reported() {
        let mut j = milnor_model(&ReducedSimplicialSet::circle(), 3).unwrap().to_json();
        // Send both level-2 generators to x1 under d_0.
        j.faces[1][0] = vec![vec![1], vec![1]];
        let err = j.build().unwrap_err();
        assert!(matches!(err, GroupError::SimplicialIdentity { .. }), "{err}");
    }

    #[test]
    fn json_round_trip() {
        let m = CellModel::torus().build(3).unwrap();
        let text = serde_json::to_string(&m.to_json()).unwrap();
        let back: SimplicialModelJson = serde_json::from_str(&text).unwrap();
        let rebuilt = back.build().unwrap();
        assert_eq!(rebuilt.ranks(), m.ranks());
        assert_eq!(rebuilt.face(2, 0), m.face(2, 0));
    }
}
