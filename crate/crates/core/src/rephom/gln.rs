use serde::Serialize;

use super::poly::{Poly, PolyMatrix};
use crate::groupkit::{FreeWord, GroupPresentation};

/// Generic `n x n` matrices `X_g = (x_g_ij)` for the generators of a rank-`r` free group,
/// with one symbol `det(X_g)^-1` per generator.
///
/// Variable `g * (n^2 + 1) + i * n + j` is the entry `(i, j)` of `X_g`; variable
/// `g * (n^2 + 1) + n^2` is the inverse-determinant symbol. For `n = 1` the names are `x0`
/// and `x0^-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericMatrices {
    n: usize,
    rank: usize,
    names: Vec<String>,
}

impl GenericMatrices {
    pub fn new(rank: usize, n: usize) -> Self {
        assert!(n >= 1, "matrix size must be positive");
        let mut names = Vec::with_capacity(rank * (n * n + 1));
        for g in 0..rank {
            if n == 1 {
                names.push(format!("x{g}"));
                names.push(format!("x{g}^-1"));
            } else {
                for i in 1..=n {
                    for j in 1..=n {
                        names.push(format!("x{g}_{i}{j}"));
                    }
                }
                names.push(format!("det(x{g})^-1"));
            }
        }
        Self { n, rank, names }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    fn block(&self, g: usize) -> usize {
        g * (self.n * self.n + 1)
    }

    pub fn matrix(&self, g: usize) -> PolyMatrix {
        let nv = self.nvars();
        let b = self.block(g);
        PolyMatrix {
            entries: (0..self.n).map(|i| (0..self.n).map(|j| Poly::var(nv, b + i * self.n + j)).collect()).collect(),
        }
    }

    pub fn det_inverse(&self, g: usize) -> Poly {
        Poly::var(self.nvars(), self.block(g) + self.n * self.n)
    }

    /// `X_g^{-1} = adj(X_g) det(X_g)^-1`.
    pub fn inverse_matrix(&self, g: usize) -> PolyMatrix {
        self.matrix(g).adjugate().scale(&self.det_inverse(g))
    }

    /// The matrix of a word, letter by letter.
    pub fn evaluate(&self, w: &FreeWord) -> PolyMatrix {
        w.letters().iter().fold(PolyMatrix::identity(self.n, self.nvars()), |acc, l| {
            let m = if l.inverse { self.inverse_matrix(l.gen) } else { self.matrix(l.gen) };
            acc.mul(&m)
        })
    }

    pub fn render(&self, p: &Poly) -> String {
        p.render(&self.names)
    }
}

/// Degree-0 representation ring of `Γ` in `GL_n`: the coordinate ring of the variety of
/// `n`-dimensional representations, as generators and relations.
#[derive(Clone, Debug, Serialize)]
pub struct GlnRepRing {
    pub n: usize,
    pub variables: Vec<String>,
    pub inverse_symbols: Vec<String>,
    /// Entry equations, each rendered as a polynomial that must vanish.
    pub ideal: Vec<String>,
    #[serde(skip)]
    pub ideal_polys: Vec<Poly>,
}

/// Splits `w = a b` with `b` the longest suffix of inverse letters and returns `(a, b^{-1})`.
///
/// The relation `ϱ(w) = 1` becomes `ϱ(a) = ϱ(b^{-1})`, which keeps commutators free of
/// inverse symbols.
fn balance(w: &FreeWord) -> (FreeWord, FreeWord) {
    let letters = w.letters();
    let cut = letters.iter().rposition(|l| !l.inverse).map_or(0, |p| p + 1);
    let a = FreeWord::reduce(letters[..cut].iter().copied());
    let b = FreeWord::reduce(letters[cut..].iter().copied());
    (a, b.inverse())
}

pub fn rep_ring_gln_degree0(p: &GroupPresentation, n: usize) -> GlnRepRing {
    let gm = GenericMatrices::new(p.rank(), n);
    let inverse_symbols: Vec<String> = (0..p.rank()).map(|g| gm.names()[gm.block(g) + n * n].clone()).collect();
    let variables: Vec<String> = gm.names().iter().filter(|v| !inverse_symbols.contains(v)).cloned().collect();
    let mut ideal_polys = Vec::new();
    for r in p.relators() {
        let (a, b) = balance(r);
        let diff = gm.evaluate(&a).sub(&gm.evaluate(&b));
        ideal_polys.extend(diff.entries.into_iter().flatten().filter(|e| !e.is_zero()));
    }
    let ideal = ideal_polys.iter().map(|e| gm.render(e)).collect();
    GlnRepRing { n, variables, inverse_symbols, ideal, ideal_polys }
}
