use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};

use crate::exactlin::{format_rational, Rational};

/// A polynomial with rational coefficients in a fixed number of commuting variables.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self { nvars, terms: BTreeMap::from([(e, Rational::one())]) }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    /// The constant term, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&vec![0; self.nvars]).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        let entry = self.terms.entry(e).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// Renders the polynomial with the given variable names, highest terms first.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| if p == 1 { names[i].clone() } else { format!("{}^{p}", names[i]) })
                .collect();
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                s.push_str(&format_rational(&abs));
            } else {
                if !abs.is_one() {
                    let _ = write!(s, "{}*", format_rational(&abs));
                }
                s.push_str(&mono.join("*"));
            }
        }
        s
    }
}

/// Square matrices of polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    pub entries: Vec<Vec<Poly>>,
}

impl PolyMatrix {
    pub fn identity(n: usize, nvars: usize) -> Self {
        Self {
            entries: (0..n)
                .map(|i| (0..n).map(|j| if i == j { Poly::one(nvars) } else { Poly::zero(nvars) }).collect())
                .collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.size();
        let nvars = self.entries[0][0].nvars();
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(Poly::zero(nvars), |acc, k| acc.add(&self.entries[i][k].mul(&other.entries[k][j]))))
                    .collect()
            })
            .collect();
        Self { entries }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.sub(y)).collect())
            .collect();
        Self { entries }
    }

    pub fn scale(&self, p: &Poly) -> Self {
        Self { entries: self.entries.iter().map(|row| row.iter().map(|x| x.mul(p)).collect()).collect() }
    }

    pub fn trace(&self) -> Poly {
        let nvars = self.entries[0][0].nvars();
        (0..self.size()).fold(Poly::zero(nvars), |acc, i| acc.add(&self.entries[i][i]))
    }

    fn minor(&self, row: usize, col: usize) -> Self {
        let entries = (0..self.size())
            .filter(|&i| i != row)
            .map(|i| (0..self.size()).filter(|&j| j != col).map(|j| self.entries[i][j].clone()).collect())
            .collect();
        Self { entries }
    }

    /// Laplace expansion along the first row.
    pub fn det(&self) -> Poly {
        let n = self.size();
        if n == 1 {
            return self.entries[0][0].clone();
        }
        let nvars = self.entries[0][0].nvars();
        (0..n).fold(Poly::zero(nvars), |acc, j| {
            let term = self.entries[0][j].mul(&self.minor(0, j).det());
            if j % 2 == 0 {
                acc.add(&term)
            } else {
                acc.sub(&term)
            }
        })
    }

    /// The adjugate, so that `A adj(A) = det(A) I`.
    pub fn adjugate(&self) -> Self {
        let n = self.size();
        let nvars = self.entries[0][0].nvars();
        if n == 1 {
            return Self::identity(1, nvars);
        }
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let d = self.minor(j, i).det();
                        if (i + j) % 2 == 0 {
                            d
                        } else {
                            d.neg()
                        }
                    })
                    .collect()
            })
            .collect();
        Self { entries }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::q;

    #[test]
    fn arithmetic_and_rendering() {
        let names: Vec<String> = vec!["a".into(), "b".into()];
        let a = Poly::var(2, 0);
        let b = Poly::var(2, 1);
        let p = a.add(&b).mul(&a.sub(&b));
        assert_eq!(p, a.mul(&a).sub(&b.mul(&b)));
        assert_eq!(p.render(&names), "a^2 - b^2");
        assert_eq!(Poly::constant(2, q(-3)).render(&names), "-3");
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn adjugate_identity() {
        let nv = 9;
        let m = PolyMatrix {
            entries: (0..3).map(|i| (0..3).map(|j| Poly::var(nv, 3 * i + j)).collect()).collect(),
        };
        let prod = m.mul(&m.adjugate());
        let det = m.det();
        assert_eq!(prod, PolyMatrix::identity(3, nv).scale(&det));
        assert_eq!(det.terms().count(), 6);
    }
}
