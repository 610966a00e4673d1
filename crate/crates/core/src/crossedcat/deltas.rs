use std::fmt;

use super::CrossedError;
use crate::exactlin::IntegerMatrix;
use crate::groupkit::{FreeWord, GroupHom};

/// A morphism `[n] -> [m]` of ΔS written as `X_0 ⊗ ... ⊗ X_m`.
///
/// Each monomial `X_j` lists the indices of the fibre over `j` in order; together the
/// monomials use every index `0..=n` exactly once.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DeltaSMorphism {
    source: usize,
    monomials: Vec<Vec<usize>>,
}

/// `f = g ∘ σ` with `g` monotone and `σ` a permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialFactorization {
    /// Values `g(0) <= ... <= g(n)`.
    pub g: Vec<usize>,
    /// `sigma[i]` is the position of `i`.
    pub sigma: Vec<usize>,
}

impl DeltaSMorphism {
    /// `source` is `n` for the object `[n]`; there must be `m + 1 >= 1` monomials.
    pub fn new(source: usize, monomials: Vec<Vec<usize>>) -> Result<Self, CrossedError> {
        if monomials.is_empty() {
            return Err(CrossedError::InvalidMorphism("a morphism needs at least one monomial".into()));
        }
        let mut seen = vec![false; source + 1];
        for x in monomials.iter().flatten() {
            if *x > source {
                return Err(CrossedError::InvalidMorphism(format!("index {x} exceeds source [{source}]")));
            }
            if std::mem::replace(&mut seen[*x], true) {
                return Err(CrossedError::InvalidMorphism(format!("index {x} appears twice")));
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(CrossedError::InvalidMorphism(format!("index {missing} does not appear")));
        }
        Ok(Self { source, monomials })
    }

    pub fn identity(n: usize) -> Self {
        Self { source: n, monomials: (0..=n).map(|i| vec![i]).collect() }
    }

    /// Parses `x1x0|x3x4|1|x2`; `⊗` is accepted in place of `|`.
    pub fn parse(s: &str) -> Result<Self, CrossedError> {
        let normalized = s.replace('⊗', "|");
        let mut monomials = Vec::new();
        for (j, part) in normalized.split('|').enumerate() {
            let part: String = part.chars().filter(|c| !c.is_whitespace()).collect();
            if part == "1" {
                monomials.push(Vec::new());
                continue;
            }
            if part.is_empty() || !part.starts_with('x') {
                return Err(CrossedError::Parse(format!("monomial {j} ({part:?}) must be 1 or a product of x<i>")));
            }
            let mono = part[1..]
                .split('x')
                .map(|d| d.parse::<usize>().map_err(|_| CrossedError::Parse(format!("bad index {d:?} in monomial {j}"))))
                .collect::<Result<Vec<_>, _>>()?;
            monomials.push(mono);
        }
        let count: usize = monomials.iter().map(Vec::len).sum();
        if count == 0 {
            return Err(CrossedError::Parse("a morphism uses at least one variable".into()));
        }
        Self::new(count - 1, monomials)
    }

    /// `n` for the source `[n]`.
    pub fn source(&self) -> usize {
        self.source
    }

    /// `m` for the target `[m]`.
    pub fn target(&self) -> usize {
        self.monomials.len() - 1
    }

    pub fn monomials(&self) -> &[Vec<usize>] {
        &self.monomials
    }

    /// `X_0 X_1 ... X_m` as one sequence.
    pub fn concatenation(&self) -> Vec<usize> {
        self.monomials.iter().flatten().copied().collect()
    }

    /// The underlying map of sets `i -> j` with `i ∈ X_j`.
    pub fn underlying_map(&self) -> Vec<usize> {
        let mut f = vec![0; self.source + 1];
        for (j, mono) in self.monomials.iter().enumerate() {
            for &i in mono {
                f[i] = j;
            }
        }
        f
    }

    /// `self ∘ other` by substituting the monomials of `other` for the variables of `self`.
    pub fn compose(&self, other: &DeltaSMorphism) -> Result<DeltaSMorphism, CrossedError> {
        if other.target() != self.source {
            return Err(CrossedError::ArityMismatch { expected: self.source, found: other.target() });
        }
        let monomials = self
            .monomials
            .iter()
            .map(|mono| mono.iter().flat_map(|&j| other.monomials[j].iter().copied()).collect())
            .collect();
        Ok(DeltaSMorphism { source: other.source, monomials })
    }

    pub fn factorize(&self) -> SimplicialFactorization {
        let mut g = Vec::with_capacity(self.source + 1);
        let mut sigma = vec![0; self.source + 1];
        for (j, mono) in self.monomials.iter().enumerate() {
            for &i in mono {
                sigma[i] = g.len();
                g.push(j);
            }
        }
        SimplicialFactorization { g, sigma }
    }

    /// Inverse of [`factorize`](Self::factorize).
    pub fn recompose(fac: &SimplicialFactorization, target: usize) -> Result<Self, CrossedError> {
        let n = fac.sigma.len();
        if fac.g.len() != n || n == 0 {
            return Err(CrossedError::InvalidMorphism("g and sigma must have the same positive length".into()));
        }
        if fac.g.windows(2).any(|w| w[0] > w[1]) || fac.g.iter().any(|&x| x > target) {
            return Err(CrossedError::InvalidMorphism(format!("g is not a monotone map into [{target}]")));
        }
        let mut by_position = vec![usize::MAX; n];
        for (i, &p) in fac.sigma.iter().enumerate() {
            if p >= n || by_position[p] != usize::MAX {
                return Err(CrossedError::InvalidMorphism("sigma is not a permutation".into()));
            }
            by_position[p] = i;
        }
        let mut monomials = vec![Vec::new(); target + 1];
        for (p, &i) in by_position.iter().enumerate() {
            monomials[fac.g[p]].push(i);
        }
        Self::new(n - 1, monomials)
    }

    pub fn is_automorphism(&self) -> bool {
        self.source == self.target() && self.monomials.iter().all(|m| m.len() == 1)
    }

    /// Whether the morphism lies in the image of ΔC^op.
    ///
    /// The criterion is that the concatenation `X_0 ... X_m` is a cyclic rotation of
    /// `0 1 ... n`; the test suites compare it with the closure of the generator images.
    pub fn is_cyclic(&self) -> bool {
        let c = self.concatenation();
        let n = c.len();
        let start = c[0];
        c.iter().enumerate().all(|(p, &x)| x == (start + p) % n)
    }

    /// `Ψ_sym(f): F<X_0..X_m> -> F<x_0..x_n>`, `X_j ↦ X_j` read as a word.
    pub fn psi_sym(&self) -> GroupHom {
        GroupHom::new(self.target() + 1, self.source + 1, self.monomials.iter().map(|m| FreeWord::monomial(m)).collect())
            .expect("monomials use source variables")
    }

    /// `(n+1) x (m+1)` 0/1 matrix with a 1 at `(i, j)` iff `i ∈ X_j`.
    pub fn abelianize_psi_sym(&self) -> IntegerMatrix {
        let mut a = IntegerMatrix::zeros(self.source + 1, self.target() + 1);
        for (j, mono) in self.monomials.iter().enumerate() {
            for &i in mono {
                a.add_at(i, j, 1);
            }
        }
        a
    }

    /// Every morphism `[n] -> [m]`, in a fixed order.
    pub fn enumerate(n: usize, m: usize) -> Vec<DeltaSMorphism> {
        let mut out = Vec::new();
        let mut perm: Vec<usize> = (0..=n).collect();
        let monotone = monotone_maps(n + 1, m + 1);
        loop {
            for g in &monotone {
                let mut monomials = vec![Vec::new(); m + 1];
                for (p, &j) in g.iter().enumerate() {
                    monomials[j].push(perm[p]);
                }
                out.push(DeltaSMorphism { source: n, monomials });
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        out
    }

    /// `Aut([n])`, the `(n+1)!` permutations.
    pub fn automorphisms(n: usize) -> Vec<DeltaSMorphism> {
        Self::enumerate(n, n).into_iter().filter(Self::is_automorphism).collect()
    }
}

impl fmt::Display for DeltaSMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .monomials
            .iter()
            .map(|m| {
                if m.is_empty() {
                    "1".to_string()
                } else {
                    m.iter().map(|i| format!("x{i}")).collect()
                }
            })
            .collect();
        write!(f, "{}", parts.join("|"))
    }
}

/// Nondecreasing maps from `len` points to `0..k`.
pub fn monotone_maps(len: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(len: usize, k: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in lo..k {
            cur.push(v);
            go(len, k, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(len, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Lexicographic successor; returns `false` after the last permutation.
pub fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let Some(i) = (0..p.len() - 1).rev().find(|&i| p[i] < p[i + 1]) else { return false };
    let j = (i + 1..p.len()).rev().find(|&j| p[j] > p[i]).expect("successor exists");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// `|Hom_ΔS([n], [m])| = (n+1)! * C(n+m+1, m)`.
pub fn hom_count(n: usize, m: usize) -> u128 {
    let fact: u128 = (1..=n as u128 + 1).product();
    fact * binomial(n + m + 1, m)
}

pub fn binomial(a: usize, b: usize) -> u128 {
    if b > a {
        return 0;
    }
    (0..b).fold(1u128, |acc, i| acc * (a - i) as u128 / (i as u128 + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> DeltaSMorphism {
        DeltaSMorphism::parse(s).unwrap()
    }

    #[test]
    fn worked_composite() {
        let f1 = f("1|x0|1|x3x2x1");
        let f2 = f("x2x1|x4|1|x0x3");
        assert_eq!(f1.compose(&f2).unwrap().to_string(), "1|x2x1|1|x0x3x4");
    }

    #[test]
    fn worked_factorization() {
        let m = f("x1x0|x3x4|1|x2");
        let fac = m.factorize();
        assert_eq!(fac.g, vec![0, 0, 1, 1, 3]);
        assert_eq!(fac.sigma, vec![1, 0, 4, 2, 3]);
        assert_eq!(m.underlying_map(), vec![0, 0, 3, 1, 1]);
        assert_eq!(DeltaSMorphism::recompose(&fac, 3).unwrap(), m);
    }

    #[test]
    fn worked_abelianization() {
        let a = f("x1x0|x3x4|1|x2").abelianize_psi_sym();
        let expect = IntegerMatrix::from_rows(&[
            vec![1, 0, 0, 0],
            vec![1, 0, 0, 0],
            vec![0, 0, 0, 1],
            vec![0, 1, 0, 0],
            vec![0, 1, 0, 0],
        ]);
        assert_eq!(a, expect);
    }

    #[test]
    fn psi_sym_reads_monomials_as_words() {
        let h = f("x1x0|x3x4|1|x2").psi_sym();
        let imgs: Vec<String> = h.images().iter().map(ToString::to_string).collect();
        assert_eq!(imgs, ["x1x0", "x3x4", "1", "x2"]);
        assert_eq!(DeltaSMorphism::identity(3).psi_sym(), GroupHom::identity(4));
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(DeltaSMorphism::parse("x0|x0").is_err());
        assert!(DeltaSMorphism::parse("x0|x2").is_err());
        assert!(DeltaSMorphism::parse("x0|y1").is_err());
        assert!(DeltaSMorphism::parse("1|1").is_err());
        assert_eq!(f("x0 ⊗ 1 ⊗ x1").to_string(), "x0|1|x1");
    }

    #[test]
    fn compose_rejects_arity_mismatch() {
        let err = f("x0|x1").compose(&f("x0x1x2")).unwrap_err();
        assert!(matches!(err, CrossedError::ArityMismatch { .. }));
    }

    #[test]
    fn enumeration_counts() {
        for n in 0..4 {
            for m in 0..4 {
                let all = DeltaSMorphism::enumerate(n, m);
                assert_eq!(all.len() as u128, hom_count(n, m));
                let set: std::collections::BTreeSet<_> = all.iter().collect();
                assert_eq!(set.len(), all.len());
            }
        }
        assert_eq!(DeltaSMorphism::automorphisms(3).len(), 24);
    }

    #[test]
    fn swap_is_cyclic() {
        assert!(f("x1|x0").is_cyclic());
        assert!(f("x2|x0|x1").is_cyclic());
        assert!(!f("x0x2|x1").is_cyclic());
        assert!(!f("x0|x2|x1").is_cyclic());
    }
}
