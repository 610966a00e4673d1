use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::LinAlgError;

/// Dense matrix over Z.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_big_rows(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect())
    }

    pub fn from_big_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            assert_eq!(r.len(), ncols, "ragged integer matrix");
            data.extend(r);
        }
        Self { rows: nrows, cols: ncols, data }
    }

    /// An empty matrix with the given shape, where one side may be zero.
    pub fn with_shape(rows: usize, cols: usize) -> Self {
        Self::zeros(rows, cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] += v;
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinAlgError> {
        if self.cols != other.rows {
            return Err(LinAlgError::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.data[r * other.cols + c] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| (0..self.cols).fold(BigInt::zero(), |acc, c| acc + self.get(r, c) * &v[c]))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// row[dst] += f * row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        for c in 0..self.cols {
            let v = self.get(src, c) * f;
            if !v.is_zero() {
                self.data[dst * self.cols + c] += v;
            }
        }
    }

    /// col[dst] += f * col[src]
    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        for r in 0..self.rows {
            let v = self.get(r, src) * f;
            if !v.is_zero() {
                self.data[r * self.cols + dst] += v;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let i = r * self.cols + c;
            self.data[i] = -&self.data[i];
        }
    }

    /// Smith normal form `U * A * V = D` with unimodular `U`, `V`.
    pub fn smith(&self) -> SmithForm {
        let mut d = self.clone();
        let mut u = IntegerMatrix::identity(self.rows);
        let mut v = IntegerMatrix::identity(self.cols);
        let n = self.rows.min(self.cols);
        let mut t = 0;
        while t < n {
            let Some((pr, pc)) = min_abs_position(&d, t..d.rows, t..d.cols) else { break };
            d.swap_rows(t, pr);
            u.swap_rows(t, pr);
            d.swap_cols(t, pc);
            v.swap_cols(t, pc);
            loop {
                let mut clean = true;
                for i in t + 1..d.rows {
                    if !d.get(i, t).is_zero() {
                        let q = -(d.get(i, t) / d.get(t, t));
                        d.add_row(i, t, &q);
                        u.add_row(i, t, &q);
                        clean &= d.get(i, t).is_zero();
                    }
                }
                for j in t + 1..d.cols {
                    if !d.get(t, j).is_zero() {
                        let q = -(d.get(t, j) / d.get(t, t));
                        d.add_col(j, t, &q);
                        v.add_col(j, t, &q);
                        clean &= d.get(t, j).is_zero();
                    }
                }
                if !clean {
                    // A smaller remainder sits in row t or column t; make it the pivot.
                    let col_best = min_abs_position(&d, t..d.rows, t..t + 1);
                    let row_best = min_abs_position(&d, t..t + 1, t..d.cols);
                    let pick = match (col_best, row_best) {
                        (Some(a), Some(b)) => {
                            if d.get(a.0, a.1).abs() <= d.get(b.0, b.1).abs() {
                                a
                            } else {
                                b
                            }
                        }
                        (Some(a), None) | (None, Some(a)) => a,
                        (None, None) => unreachable!("pivot row and column are non-empty"),
                    };
                    d.swap_rows(t, pick.0);
                    u.swap_rows(t, pick.0);
                    d.swap_cols(t, pick.1);
                    v.swap_cols(t, pick.1);
                    continue;
                }
                let p = d.get(t, t).clone();
                let bad = (t + 1..d.rows).find(|&i| (t + 1..d.cols).any(|j| !d.get(i, j).is_multiple_of(&p)));
                match bad {
                    Some(i) => {
                        d.add_row(t, i, &BigInt::one());
                        u.add_row(t, i, &BigInt::one());
                    }
                    None => break,
                }
            }
            if d.get(t, t).is_negative() {
                d.negate_row(t);
                u.negate_row(t);
            }
            t += 1;
        }
        let invariants = (0..t).map(|i| d.get(i, i).clone()).collect();
        SmithForm { u, v, d, invariants }
    }

    /// Rank over Q.
    pub fn rank(&self) -> usize {
        self.smith().invariants.len()
    }
}

fn min_abs_position(
    m: &IntegerMatrix,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for r in rows {
        for c in cols.clone() {
            let v = m.get(r, c);
            if v.is_zero() {
                continue;
            }
            let a = v.abs();
            if best.as_ref().map_or(true, |b| a < b.2) {
                let unit = a.is_one();
                best = Some((r, c, a));
                if unit {
                    return best.map(|b| (b.0, b.1));
                }
            }
        }
    }
    best.map(|b| (b.0, b.1))
}

/// Result of [`IntegerMatrix::smith`].
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
    pub d: IntegerMatrix,
    /// Non-zero diagonal entries, positive, each dividing the next.
    pub invariants: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }
}

/// A finitely generated abelian group `Z^r ⊕ Z/t_1 ⊕ ... ⊕ Z/t_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    /// Torsion coefficients, each `> 1` and dividing the next.
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        Self { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        Self { free_rank: rank, torsion: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of a finite group, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    /// Cokernel of an integer matrix `Z^cols -> Z^rows`.
    pub fn cokernel(m: &IntegerMatrix) -> Self {
        let s = m.smith();
        Self {
            free_rank: m.rows() - s.rank(),
            torsion: s.invariants.iter().filter(|x| !x.is_one()).cloned().collect(),
        }
    }
}

/// A cokernel `Z^rows / im(A)` together with canonical coordinates.
///
/// Coordinates of a vector `v` are read from `U v`, where `U A V` is the Smith form:
/// torsion coordinates are reduced into `0..d_i` and free coordinates are kept as is.
#[derive(Clone, Debug)]
pub struct Cokernel {
    pub group: AbelianGroup,
    /// Rows of `U` for the torsion part followed by the free part.
    projection: Vec<Vec<BigInt>>,
    moduli: Vec<Option<BigInt>>,
}

impl Cokernel {
    pub fn of(m: &IntegerMatrix) -> Self {
        let s = m.smith();
        let mut projection = Vec::new();
        let mut moduli = Vec::new();
        for (i, d) in s.invariants.iter().enumerate() {
            if !d.is_one() {
                projection.push((0..m.rows()).map(|c| s.u.get(i, c).clone()).collect());
                moduli.push(Some(d.clone()));
            }
        }
        for i in s.rank()..m.rows() {
            projection.push((0..m.rows()).map(|c| s.u.get(i, c).clone()).collect());
            moduli.push(None);
        }
        Self { group: AbelianGroup::cokernel(m), projection, moduli }
    }

    /// Number of coordinates (torsion first, then free).
    pub fn width(&self) -> usize {
        self.projection.len()
    }

    pub fn coords(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.projection
            .iter()
            .zip(&self.moduli)
            .map(|(row, modulus)| {
                let x: BigInt = row.iter().zip(v).map(|(a, b)| a * b).sum();
                match modulus {
                    Some(d) => x.mod_floor(d),
                    None => x,
                }
            })
            .collect()
    }

    pub fn coords_i64(&self, v: &[i64]) -> Vec<BigInt> {
        let big: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        self.coords(&big)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Chain complex of free abelian groups, `diffs[q]: Z^dims[q] -> Z^dims[q-1]`.
#[derive(Clone, Debug)]
pub struct IntegerChainComplex {
    dims: Vec<usize>,
    diffs: Vec<IntegerMatrix>,
}

impl IntegerChainComplex {
    /// `diffs[0]` must be `0 x dims[0]`; `d_{q-1} d_q = 0` is checked.
    pub fn new(dims: Vec<usize>, diffs: Vec<IntegerMatrix>) -> Result<Self, LinAlgError> {
        if diffs.len() != dims.len() {
            return Err(LinAlgError::ComplexShape(format!(
                "{} differentials for {} degrees",
                diffs.len(),
                dims.len()
            )));
        }
        for (q, d) in diffs.iter().enumerate() {
            let expect_rows = if q == 0 { 0 } else { dims[q - 1] };
            if d.rows() != expect_rows || d.cols() != dims[q] {
                return Err(LinAlgError::ComplexShape(format!(
                    "d_{q} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    expect_rows,
                    dims[q]
                )));
            }
            if q >= 1 && !diffs[q - 1].mul(d)?.is_zero() {
                return Err(LinAlgError::NotAComplex { degree: q });
            }
        }
        Ok(Self { dims, diffs })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn differential(&self, q: usize) -> &IntegerMatrix {
        &self.diffs[q]
    }

    /// Integral homology in every degree but the top one, which is only a cycle group
    /// bounded by nothing and is reported as the kernel.
    pub fn homology(&self) -> Vec<AbelianGroup> {
        let smiths: Vec<SmithForm> = self.diffs.iter().map(IntegerMatrix::smith).collect();
        (0..self.dims.len())
            .map(|q| {
                let rank_out = smiths[q].rank();
                let (rank_in, torsion) = match smiths.get(q + 1) {
                    Some(s) => (s.rank(), s.invariants.iter().filter(|x| !x.is_one()).cloned().collect()),
                    None => (0, Vec::new()),
                };
                AbelianGroup { free_rank: self.dims[q] - rank_out - rank_in, torsion }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check_smith(a: &IntegerMatrix) {
        let s = a.smith();
        let prod = s.u.mul(a).unwrap().mul(&s.v).unwrap();
        assert_eq!(prod, s.d);
        for r in 0..s.d.rows() {
            for c in 0..s.d.cols() {
                if r != c {
                    assert!(s.d.get(r, c).is_zero());
                }
            }
        }
        for w in s.invariants.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        assert!(s.invariants.iter().all(|x| x.is_positive()));
    }

    #[test]
    fn smith_of_known_matrix() {
        let a = IntegerMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = a.smith();
        let inv: Vec<i64> = s.invariants.iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(inv, vec![2, 6, 12]);
        check_smith(&a);
    }

    #[test]
    fn cokernel_display() {
        let a = IntegerMatrix::from_rows(&[vec![2, 0], vec![0, 0], vec![0, 3]]);
        let g = AbelianGroup::cokernel(&a);
        assert_eq!(g.to_string(), "Z + Z/6");
        assert_eq!(AbelianGroup::trivial().to_string(), "0");
        assert_eq!(AbelianGroup::free(2).to_string(), "Z^2");
    }

    #[test]
    fn cokernel_coordinates_are_canonical() {
        // Z^2 / <(2, 2)> = Z/2 + Z.
        let a = IntegerMatrix::from_rows(&[vec![2], vec![2]]);
        let c = Cokernel::of(&a);
        assert_eq!(c.group.to_string(), "Z + Z/2");
        assert_eq!(c.width(), 2);
        // (2, 2) is in the image, so it has zero coordinates.
        assert!(c.coords_i64(&[2, 2]).iter().all(|x| x.is_zero()));
        assert_eq!(c.coords_i64(&[1, 0]), c.coords_i64(&[3, 2]));
        assert_ne!(c.coords_i64(&[1, 0]), c.coords_i64(&[0, 1]));
    }

    #[test]
    fn homology_of_circle() {
        // One vertex, one edge with both ends at the vertex.
        let d0 = IntegerMatrix::with_shape(0, 1);
        let d1 = IntegerMatrix::from_rows(&[vec![0]]);
        let c = IntegerChainComplex::new(vec![1, 1], vec![d0, d1]).unwrap();
        assert_eq!(c.homology(), vec![AbelianGroup::free(1), AbelianGroup::free(1)]);
    }

    #[test]
    fn rp2_has_two_torsion() {
        // Cellular chains of RP^2: Z <-0- Z <-2- Z.
        let c = IntegerChainComplex::new(
            vec![1, 1, 1],
            vec![IntegerMatrix::with_shape(0, 1), IntegerMatrix::from_rows(&[vec![0]]), IntegerMatrix::from_rows(&[
                vec![2],
            ])],
        )
        .unwrap();
        let h = c.homology();
        assert_eq!(h[0].to_string(), "Z");
        assert_eq!(h[1].to_string(), "Z/2");
        assert_eq!(h[2].to_string(), "0");
    }

    #[test]
    fn non_complex_is_rejected() {
        let err = IntegerChainComplex::new(
            vec![1, 1, 1],
            vec![IntegerMatrix::with_shape(0, 1), IntegerMatrix::from_rows(&[vec![1]]), IntegerMatrix::from_rows(&[
                vec![1],
            ])],
        )
        .unwrap_err();
        assert!(matches!(err, LinAlgError::NotAComplex { degree: 2 }));
    }

    proptest! {
        #[test]
        fn smith_is_a_valid_decomposition(
            rows in 1usize..5,
            cols in 1usize..5,
            seed in proptest::collection::vec(-9i64..10, 25),
        ) {
            let data: Vec<Vec<i64>> = (0..rows).map(|r| (0..cols).map(|c| seed[r * 5 + c]).collect()).collect();
            let a = IntegerMatrix::from_rows(&data);
            check_smith(&a);
            let q = super::super::SparseRationalMatrix::from_dense_rows(&data);
            prop_assert_eq!(a.rank(), q.rank());
        }
    }
}
