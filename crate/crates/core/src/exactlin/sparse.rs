use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rank::{rank_of_rows, IntRow};
use super::{DenseRationalMatrix, LinAlgError, Rational};

/// Sparse matrix over the rationals stored as `(row, col) -> value` triplets.
///
/// Zero values are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseRationalMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl SparseRationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries.insert((i, i), Rational::one());
        }
        m
    }

    /// Builds a matrix from triplets, summing repeated positions.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Result<Self, LinAlgError>
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut m = Self::zeros(rows, cols);
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(LinAlgError::IndexOutOfRange { row: r, col: c, rows, cols });
            }
            m.add_at(r, c, v);
        }
        Ok(m)
    }

    /// Integer-valued convenience constructor.
    pub fn from_int_triplets<I>(rows: usize, cols: usize, triplets: I) -> Result<Self, LinAlgError>
    where
        I: IntoIterator<Item = (usize, usize, i64)>,
    {
        Self::from_triplets(
            rows,
            cols,
            triplets.into_iter().map(|(r, c, v)| (r, c, Rational::from_integer(BigInt::from(v)))),
        )
    }

    pub fn from_dense_rows(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(nrows, ncols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged dense input");
            for (c, &v) in row.iter().enumerate() {
                m.add_at(r, c, Rational::from_integer(BigInt::from(v)));
            }
        }
        m
    }

    /// Adds `value` to the entry at `(row, col)`.
    ///
    /// Panics if the position is out of range.
    pub fn add_at(&mut self, row: usize, col: usize, value: Rational) {
        assert!(row < self.rows && col < self.cols, "entry ({row}, {col}) outside {}x{}", self.rows, self.cols);
        if value.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.entries.entry((row, col)) {
            Entry::Vacant(e) => {
                e.insert(value);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += value;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_int_at(&mut self, row: usize, col: usize, value: i64) {
        self.add_at(row, col, Rational::from_integer(BigInt::from(value)));
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, row: usize, col: usize) -> Rational {
        self.entries.get(&(row, col)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Non-zero entries in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn transpose(&self) -> Self {
        Self {
            rows: self.cols,
            cols: self.rows,
            entries: self.entries.iter().map(|(&(r, c), v)| ((c, r), v.clone())).collect(),
        }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|(&k, v)| (k, v * factor)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinAlgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinAlgError::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut out = self.clone();
        for (&(r, c), v) in &other.entries {
            out.add_at(r, c, v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinAlgError> {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Result<Self, LinAlgError> {
        if self.cols != other.rows {
            return Err(LinAlgError::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let other_rows = other.row_lists();
        let mut acc: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
        for (&(r, k), a) in &self.entries {
            for (c, b) in &other_rows[k] {
                let e = acc.entry((r, *c)).or_insert_with(Rational::zero);
                *e += a * *b;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(Self { rows: self.rows, cols: other.cols, entries: acc })
    }

    /// Applies the matrix to a dense column vector.
    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.cols);
        let mut y = vec![Rational::zero(); self.rows];
        for (&(r, c), v) in &self.entries {
            if !x[c].is_zero() {
                y[r] += v * &x[c];
            }
        }
        y
    }

    /// Per-row lists of `(col, &value)`.
    pub fn row_lists(&self) -> Vec<Vec<(usize, &Rational)>> {
        let mut rows = vec![Vec::new(); self.rows];
        for (&(r, c), v) in &self.entries {
            rows[r].push((c, v));
        }
        rows
    }

    pub fn to_dense(&self) -> DenseRationalMatrix {
        let mut d = DenseRationalMatrix::zeros(self.rows, self.cols);
        for (&(r, c), v) in &self.entries {
            d.set(r, c, v.clone());
        }
        d
    }

    /// Exact rank over Q.
    ///
    /// Rows are cleared of denominators and reduced by fraction-free elimination; the
    /// shorter side of the matrix is used as the row set.
    pub fn rank(&self) -> usize {
        if self.entries.is_empty() {
            return 0;
        }
        let transpose = self.rows > self.cols;
        let (nrows, ncols) = if transpose { (self.cols, self.rows) } else { (self.rows, self.cols) };
        let mut lists: Vec<Vec<(usize, &Rational)>> = vec![Vec::new(); nrows];
        for (&(r, c), v) in &self.entries {
            if transpose {
                lists[c].push((r, v));
            } else {
                lists[r].push((c, v));
            }
        }
        let rows: Vec<IntRow<BigInt>> = lists
            .into_iter()
            .filter(|l| !l.is_empty())
            .map(|mut l| {
                l.sort_by_key(|(c, _)| *c);
                clear_denominators(&l)
            })
            .collect();
        rank_of_rows(rows, ncols)
    }

    /// `cols - rank`.
    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }
}

fn clear_denominators(row: &[(usize, &Rational)]) -> IntRow<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    row.iter()
        .map(|(c, v)| (*c, v.numer() * (&lcm / v.denom())))
        .filter(|(_, v)| !v.is_zero())
        .collect()
}

/// Parses `"p"`, `"-p"` or `"p/q"` into a rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn zero_entries_are_not_stored() {
        let mut m = SparseRationalMatrix::zeros(2, 2);
        m.add_at(0, 0, q(3));
        m.add_at(0, 0, q(-3));
        assert!(m.is_zero());
        let m = SparseRationalMatrix::from_int_triplets(2, 2, [(0, 1, 0), (1, 1, 2)]).unwrap();
        assert_eq!(m.nnz(), 1);
    }

    #[test]
    fn out_of_range_triplet_is_rejected() {
        let err = SparseRationalMatrix::from_int_triplets(2, 2, [(2, 0, 1)]).unwrap_err();
        assert!(matches!(err, LinAlgError::IndexOutOfRange { .. }));
    }

    #[test]
    fn rank_of_small_matrices() {
        let m = SparseRationalMatrix::from_dense_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.nullity(), 1);
        assert_eq!(SparseRationalMatrix::identity(5).rank(), 5);
        assert_eq!(SparseRationalMatrix::zeros(3, 7).rank(), 0);
        let tall = m.transpose();
        assert_eq!(tall.rank(), 2);
    }

    #[test]
    fn rank_handles_fractions() {
        let m = SparseRationalMatrix::from_triplets(
            2,
            2,
            [
                (0, 0, Rational::new(1.into(), 2.into())),
                (0, 1, Rational::new(1.into(), 3.into())),
                (1, 0, q(3)),
                (1, 1, q(2)),
            ],
        )
        .unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn product_matches_dense() {
        let a = SparseRationalMatrix::from_dense_rows(&[vec![1, 2], vec![0, 1], vec![3, 0]]);
        let b = SparseRationalMatrix::from_dense_rows(&[vec![1, 0, 2], vec![-1, 1, 0]]);
        let c = a.mul(&b).unwrap();
        let expect = SparseRationalMatrix::from_dense_rows(&[vec![-1, 2, 2], vec![-1, 1, 0], vec![3, 0, 6]]);
        assert_eq!(c, expect);
    }

    #[test]
    fn rational_text_round_trip() {
        let r = parse_rational("-6/4").unwrap();
        assert_eq!(format_rational(&r), "-3/2");
        assert_eq!(parse_rational("7").unwrap(), q(7));
        assert!(parse_rational("1/0").is_none());
    }
}
