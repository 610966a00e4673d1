use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{CrossedError, DeltaSMorphism};
use crate::groupkit::{FreeWord, GroupHom};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GenKind {
    Face,
    Degeneracy,
    Cyclic,
}

/// A generator of ΔC^op with source `[n]`: `d^n_i: [n] -> [n-1]`, `s^n_j: [n] -> [n+1]`
/// or `t_n: [n] -> [n]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CycGen {
    pub kind: GenKind,
    pub n: usize,
    pub i: usize,
}

impl CycGen {
    pub fn face(n: usize, i: usize) -> Result<Self, CrossedError> {
        Self { kind: GenKind::Face, n, i }.validated()
    }

    pub fn degeneracy(n: usize, j: usize) -> Result<Self, CrossedError> {
        Self { kind: GenKind::Degeneracy, n, i: j }.validated()
    }

    pub fn cyclic(n: usize) -> Self {
        Self { kind: GenKind::Cyclic, n, i: 0 }
    }

    pub fn validated(self) -> Result<Self, CrossedError> {
        let ok = match self.kind {
            GenKind::Face => self.n >= 1 && self.i <= self.n,
            GenKind::Degeneracy => self.i <= self.n,
            GenKind::Cyclic => self.i == 0,
        };
        if ok {
            Ok(self)
        } else {
            Err(CrossedError::GeneratorOutOfRange(self.to_string()))
        }
    }

    pub fn source(&self) -> usize {
        self.n
    }

    pub fn target(&self) -> usize {
        match self.kind {
            GenKind::Face => self.n - 1,
            GenKind::Degeneracy => self.n + 1,
            GenKind::Cyclic => self.n,
        }
    }

    /// All generators with source `[n]`.
    pub fn all_with_source(n: usize) -> Vec<CycGen> {
        let mut out = Vec::new();
        if n >= 1 {
            out.extend((0..=n).map(|i| CycGen { kind: GenKind::Face, n, i }));
        }
        out.extend((0..=n).map(|j| CycGen { kind: GenKind::Degeneracy, n, i: j }));
        out.push(CycGen::cyclic(n));
        out
    }

    /// The image `ι(self)` in ΔS.
    pub fn iota(&self) -> DeltaSMorphism {
        let n = self.n;
        let monomials: Vec<Vec<usize>> = match self.kind {
            GenKind::Face if self.i < n => {
                let i = self.i;
                let mut v: Vec<Vec<usize>> = (0..i).map(|k| vec![k]).collect();
                v.push(vec![i, i + 1]);
                v.extend((i + 2..=n).map(|k| vec![k]));
                v
            }
            GenKind::Face => {
                let mut v = vec![vec![n, 0]];
                v.extend((1..n).map(|k| vec![k]));
                v
            }
            GenKind::Degeneracy => {
                let j = self.i;
                let mut v: Vec<Vec<usize>> = (0..=j).map(|k| vec![k]).collect();
                v.push(Vec::new());
                v.extend((j + 1..=n).map(|k| vec![k]));
                v
            }
            GenKind::Cyclic => {
                let mut v = vec![vec![n]];
                v.extend((0..n).map(|k| vec![k]));
                v
            }
        };
        DeltaSMorphism::new(n, monomials).expect("generator images are valid")
    }

    /// `Ψ_cyc` of the dual ΔC generator, a homomorphism `F<target+1> -> F<source+1>`.
    pub fn psi_cyc(&self) -> GroupHom {
        let n = self.n;
        let x = FreeWord::generator;
        let images: Vec<FreeWord> = match self.kind {
            // d^i_n: <n> -> <n+1>
            GenKind::Face if self.i < n => (0..n)
                .map(|k| match k.cmp(&self.i) {
                    std::cmp::Ordering::Less => x(k),
                    std::cmp::Ordering::Equal => FreeWord::monomial(&[k, k + 1]),
                    std::cmp::Ordering::Greater => x(k + 1),
                })
                .collect(),
            GenKind::Face => (0..n).map(|k| if k == 0 { FreeWord::monomial(&[n, 0]) } else { x(k) }).collect(),
            // s^j_n: <n+2> -> <n+1>
            GenKind::Degeneracy => (0..n + 2)
                .map(|k| {
                    if k <= self.i {
                        x(k)
                    } else if k == self.i + 1 {
                        FreeWord::identity()
                    } else {
                        x(k - 1)
                    }
                })
                .collect(),
            // τ_n: <n+1> -> <n+1>
            GenKind::Cyclic => (0..=n).map(|k| if k == 0 { x(n) } else { x(k - 1) }).collect(),
        };
        GroupHom::new(self.target() + 1, n + 1, images).expect("generator images are valid")
    }
}

impl fmt::Display for CycGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GenKind::Face => write!(f, "d^{}_{}", self.n, self.i),
            GenKind::Degeneracy => write!(f, "s^{}_{}", self.n, self.i),
            GenKind::Cyclic => write!(f, "t_{}", self.n),
        }
    }
}

fn check_word(word: &[CycGen]) -> Result<(), CrossedError> {
    for g in word {
        g.validated()?;
    }
    for w in word.windows(2) {
        if w[0].target() != w[1].source() {
            return Err(CrossedError::ArityMismatch { expected: w[1].source(), found: w[0].target() });
        }
    }
    if word.is_empty() {
        return Err(CrossedError::InvalidMorphism("empty generator word has no object".into()));
    }
    Ok(())
}

/// `ι` of a ΔC^op word `[g_1, ..., g_k]` (apply `g_1` first), i.e. `ι(g_k) ∘ ... ∘ ι(g_1)`.
pub fn iota_word(word: &[CycGen]) -> Result<DeltaSMorphism, CrossedError> {
    check_word(word)?;
    let mut acc = DeltaSMorphism::identity(word[0].source());
    for g in word {
        acc = g.iota().compose(&acc)?;
    }
    Ok(acc)
}

/// `Ψ_cyc^op` of a ΔC^op word, i.e. `Ψ_cyc(g_1) ∘ ... ∘ Ψ_cyc(g_k)` as homomorphisms.
pub fn psi_cyc_word(word: &[CycGen]) -> Result<GroupHom, CrossedError> {
    check_word(word)?;
    let mut acc = GroupHom::identity(word[0].source() + 1);
    for g in word {
        acc = acc.compose(&g.psi_cyc())?;
    }
    Ok(acc)
}

/// All ΔC^op morphisms between objects `[0]..=[bound]`, generated by closing the
/// generator images under composition.
pub fn cyclic_closure(bound: usize) -> BTreeSet<DeltaSMorphism> {
    let mut set: BTreeSet<DeltaSMorphism> = (0..=bound).map(DeltaSMorphism::identity).collect();
    let mut queue: VecDeque<DeltaSMorphism> = set.iter().cloned().collect();
    let gens: Vec<Vec<DeltaSMorphism>> = (0..=bound)
        .map(|n| CycGen::all_with_source(n).into_iter().filter(|g| g.target() <= bound).map(|g| g.iota()).collect())
        .collect();
    while let Some(f) = queue.pop_front() {
        for g in &gens[f.target()] {
            let h = g.compose(&f).expect("composable");
            if !set.contains(&h) {
                set.insert(h.clone());
                queue.push_back(h);
            }
        }
    }
    set
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_images_match_the_tensor_forms() {
        assert_eq!(CycGen::cyclic(2).iota().to_string(), "x2|x0|x1");
        assert_eq!(CycGen::face(3, 1).unwrap().iota().to_string(), "x0|x1x2|x3");
        assert_eq!(CycGen::face(3, 3).unwrap().iota().to_string(), "x3x0|x1|x2");
        assert_eq!(CycGen::degeneracy(2, 0).unwrap().iota().to_string(), "x0|1|x1|x2");
    }

    #[test]
    fn psi_cyc_of_generators() {
        let t2 = CycGen::cyclic(2).psi_cyc();
        assert_eq!(t2.to_string(), "(x2, x0, x1)");
        let d = CycGen::face(3, 3).unwrap().psi_cyc();
        assert_eq!(d.to_string(), "(x3x0, x1, x2)");
        let t3 = t2.compose(&t2).unwrap().compose(&t2).unwrap();
        assert_eq!(t3, GroupHom::identity(3));
    }

    #[test]
    fn out_of_range_generators_are_rejected() {
        assert!(CycGen::face(0, 0).is_err());
        assert!(CycGen::face(2, 3).is_err());
        assert!(CycGen::degeneracy(1, 2).is_err());
    }

    #[test]
    fn closure_matches_the_rotation_criterion() {
        let closure = cyclic_closure(3);
        for n in 0..=3 {
            for m in 0..=3 {
                let cyclic: BTreeSet<_> =
                    DeltaSMorphism::enumerate(n, m).into_iter().filter(|f| f.is_cyclic()).collect();
                let generated: BTreeSet<_> =
                    closure.iter().filter(|f| f.source() == n && f.target() == m).cloned().collect();
                assert_eq!(cyclic, generated, "[{n}] -> [{m}]");
            }
        }
        let f = DeltaSMorphism::parse("x0x2|x1").unwrap();
        assert!(!closure.contains(&f));
    }

    #[test]
    fn words_compose_in_order() {
        let w = [CycGen::cyclic(2), CycGen::face(2, 0).unwrap()];
        let f = iota_word(&w).unwrap();
        assert_eq!(f, CycGen::face(2, 0).unwrap().iota().compose(&CycGen::cyclic(2).iota()).unwrap());
        assert_eq!(f.psi_sym(), psi_cyc_word(&w).unwrap());
        assert!(iota_word(&[CycGen::cyclic(2), CycGen::cyclic(3)]).is_err());
    }
}
