use std::fmt;

use num_bigint::BigInt;

use super::GroupError;
use crate::exactlin::IntegerMatrix;

/// One letter `x_gen^{±1}` of a free-group word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Self { gen, inverse }
    }

    pub fn inv(self) -> Self {
        Self { gen: self.gen, inverse: !self.inverse }
    }

    /// `+1` or `-1`.
    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// A reduced word in a free group on generators `x_0, x_1, ...`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FreeWord {
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn generator(gen: usize) -> Self {
        Self { letters: vec![Letter::new(gen, false)] }
    }

    /// Reduces an arbitrary sequence of letters.
    pub fn reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Self { letters: out }
    }

    /// Builds a word from 1-based signed indices, `k` meaning `x_{k-1}` and `-k` its inverse.
    pub fn from_signed(indices: &[i64]) -> Result<Self, GroupError> {
        let letters = indices
            .iter()
            .map(|&k| {
                if k == 0 {
                    Err(GroupError::Parse("signed generator index 0 is not allowed".into()))
                } else {
                    Ok(Letter::new(k.unsigned_abs() as usize - 1, k < 0))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::reduce(letters))
    }

    /// Product of generators with the given indices, in order.
    pub fn monomial(gens: &[usize]) -> Self {
        Self::reduce(gens.iter().map(|&g| Letter::new(g, false)))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::reduce(self.letters.iter().chain(&other.letters).copied())
    }

    pub fn inverse(&self) -> Self {
        Self { letters: self.letters.iter().rev().map(|l| l.inv()).collect() }
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        (0..e.unsigned_abs()).fold(Self::identity(), |acc, _| acc.mul(&base))
    }

    /// Largest generator index used plus one.
    pub fn min_rank(&self) -> usize {
        self.letters.iter().map(|l| l.gen + 1).max().unwrap_or(0)
    }

    /// Exponent sum of each generator.
    pub fn exponent_sums(&self, rank: usize) -> Vec<i64> {
        let mut v = vec![0; rank];
        for l in &self.letters {
            v[l.gen] += l.sign();
        }
        v
    }

    /// Replaces each `x_i` by `images[i]`.
    pub fn substitute(&self, images: &[FreeWord]) -> Self {
        Self::reduce(self.letters.iter().flat_map(|l| {
            let w = &images[l.gen];
            let v: Vec<Letter> = if l.inverse { w.inverse().letters } else { w.letters.clone() };
            v
        }))
    }

    /// Evaluates the word in a group given by `mul`, `inv` and an assignment of generators.
    pub fn evaluate<T: Clone>(&self, assignment: &[T], one: T, mul: impl Fn(&T, &T) -> T, inv: impl Fn(&T) -> T) -> T {
        self.letters.iter().fold(one, |acc, l| {
            let g = &assignment[l.gen];
            if l.inverse {
                mul(&acc, &inv(g))
            } else {
                mul(&acc, g)
            }
        })
    }

    /// Parses `1`, `x0x1^-1`, `x2^3 x0` and similar.
    pub fn parse(s: &str) -> Result<Self, GroupError> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
        if compact.is_empty() || compact == "1" || compact == "e" {
            return Ok(Self::identity());
        }
        let bytes = compact.as_bytes();
        let mut pos = 0;
        let mut letters = Vec::new();
        let number = |pos: &mut usize, allow_sign: bool| -> Option<i64> {
            let start = *pos;
            if allow_sign && *pos < bytes.len() && bytes[*pos] == b'-' {
                *pos += 1;
            }
            while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                *pos += 1;
            }
            compact[start..*pos].parse().ok()
        };
        while pos < bytes.len() {
            if bytes[pos] != b'x' {
                return Err(GroupError::Parse(format!("unexpected '{}' at offset {pos} in word {s:?}", bytes[pos] as char)));
            }
            pos += 1;
            let gen = number(&mut pos, false)
                .ok_or_else(|| GroupError::Parse(format!("missing generator index at offset {pos} in word {s:?}")))?;
            let mut exp = 1;
            if pos < bytes.len() && bytes[pos] == b'^' {
                pos += 1;
                exp = number(&mut pos, true)
                    .ok_or_else(|| GroupError::Parse(format!("missing exponent at offset {pos} in word {s:?}")))?;
            }
            let l = Letter::new(gen as usize, exp < 0);
            letters.extend(std::iter::repeat(l).take(exp.unsigned_abs() as usize));
        }
        Ok(Self::reduce(letters))
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == l {
                run += 1;
            }
            let e = run as i64 * l.sign();
            if e == 1 {
                write!(f, "x{}", l.gen)?;
            } else {
                write!(f, "x{}^{}", l.gen, e)?;
            }
            i += run;
        }
        Ok(())
    }
}

/// A homomorphism `F<x_0..x_{n-1}> -> F<y_0..y_{m-1}>` given by the images of the generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupHom {
    source_rank: usize,
    target_rank: usize,
    images: Vec<FreeWord>,
}

impl GroupHom {
    pub fn new(source_rank: usize, target_rank: usize, images: Vec<FreeWord>) -> Result<Self, GroupError> {
        if images.len() != source_rank {
            return Err(GroupError::RankMismatch { expected: source_rank, found: images.len() });
        }
        if let Some(w) = images.iter().find(|w| w.min_rank() > target_rank) {
            return Err(GroupError::Parse(format!("image {w} uses a generator outside rank {target_rank}")));
        }
        Ok(Self { source_rank, target_rank, images })
    }

    pub fn identity(n: usize) -> Self {
        Self { source_rank: n, target_rank: n, images: (0..n).map(FreeWord::generator).collect() }
    }

    pub fn source_rank(&self) -> usize {
        self.source_rank
    }

    pub fn target_rank(&self) -> usize {
        self.target_rank
    }

    pub fn images(&self) -> &[FreeWord] {
        &self.images
    }

    pub fn image(&self, gen: usize) -> &FreeWord {
        &self.images[gen]
    }

    pub fn apply(&self, w: &FreeWord) -> FreeWord {
        w.substitute(&self.images)
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &GroupHom) -> Result<GroupHom, GroupError> {
        if other.target_rank != self.source_rank {
            return Err(GroupError::RankMismatch { expected: self.source_rank, found: other.target_rank });
        }
        Ok(GroupHom {
            source_rank: other.source_rank,
            target_rank: self.target_rank,
            images: other.images.iter().map(|w| self.apply(w)).collect(),
        })
    }

    /// `target_rank x source_rank` matrix whose column `j` is the exponent-sum vector of the image of `x_j`.
    pub fn abelianize(&self) -> IntegerMatrix {
        let mut m = IntegerMatrix::zeros(self.target_rank, self.source_rank);
        for (j, w) in self.images.iter().enumerate() {
            for (i, e) in w.exponent_sums(self.target_rank).into_iter().enumerate() {
                if e != 0 {
                    m.set(i, j, BigInt::from(e));
                }
            }
        }
        m
    }

    /// Exponent-sum matrix as plain integers, rows indexed by target generators.
    pub fn abelianize_i64(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; self.source_rank]; self.target_rank];
        for (j, w) in self.images.iter().enumerate() {
            for (i, e) in w.exponent_sums(self.target_rank).into_iter().enumerate() {
                m[i][j] = e;
            }
        }
        m
    }
}

impl fmt::Display for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}
