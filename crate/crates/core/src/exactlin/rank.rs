//! Fraction-free sparse rank over Z (equivalently over Q).
//!
//! Rows are reduced against a table of pivot rows indexed by leading column.
//! Each new row is combined with the pivot sharing its leading column as
//! `(a/g) * row - (b/g) * pivot` and then divided by its content, so entries stay
//! small in practice. Arithmetic runs in `i64` with checked operations and the
//! whole elimination restarts over `BigInt` on the first overflow.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

/// A sparse row: strictly increasing column indices with non-zero values.
pub type IntRow<T> = Vec<(usize, T)>;

trait Ring: Clone + Sized {
    fn is_zero_(&self) -> bool;
    fn gcd_(&self, other: &Self) -> Self;
    fn div_exact_(&self, other: &Self) -> Self;
    fn mul_(&self, other: &Self) -> Option<Self>;
    fn sub_(&self, other: &Self) -> Option<Self>;
    fn is_unit_(&self) -> bool;
    fn neg_(&self) -> Option<Self>;
}

impl Ring for i64 {
    fn is_zero_(&self) -> bool {
        *self == 0
    }
    fn gcd_(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact_(&self, other: &Self) -> Self {
        self / other
    }
    fn mul_(&self, other: &Self) -> Option<Self> {
        // i64::MIN has no negation and breaks gcd, so treat it as overflow.
        self.checked_mul(*other).filter(|v| *v != i64::MIN)
    }
    fn sub_(&self, other: &Self) -> Option<Self> {
        self.checked_sub(*other).filter(|v| *v != i64::MIN)
    }
    fn is_unit_(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn neg_(&self) -> Option<Self> {
        self.checked_neg()
    }
}

impl Ring for BigInt {
    fn is_zero_(&self) -> bool {
        Zero::is_zero(self)
    }
    fn gcd_(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact_(&self, other: &Self) -> Self {
        self / other
    }
    fn mul_(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn sub_(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn is_unit_(&self) -> bool {
        self.abs() == BigInt::from(1)
    }
    fn neg_(&self) -> Option<Self> {
        Some(-self)
    }
}

/// Rank of the matrix whose rows are `rows`, each with columns `< ncols`.
pub fn rank_of_rows(rows: Vec<IntRow<BigInt>>, ncols: usize) -> usize {
    let small: Option<Vec<IntRow<i64>>> = rows
        .iter()
        .map(|r| r.iter().map(|(c, v)| v.to_i64().filter(|v| *v != i64::MIN).map(|v| (*c, v))).collect())
        .collect();
    if let Some(small) = small {
        if let Some(rank) = eliminate(small, ncols) {
            return rank;
        }
    }
    eliminate(rows, ncols).expect("bigint elimination cannot overflow")
}

/// Rank over `i64`, returning `None` if any intermediate overflows.
pub fn rank_i64(rows: Vec<IntRow<i64>>, ncols: usize) -> Option<usize> {
    eliminate(rows, ncols)
}

fn eliminate<T: Ring>(mut rows: Vec<IntRow<T>>, ncols: usize) -> Option<usize> {
    // Sparse rows first keeps fill-in down.
    rows.sort_by_key(|r| (r.len(), r.first().map_or(0, |e| e.0)));
    let mut pivots: Vec<Option<IntRow<T>>> = vec![None; ncols];
    let mut rank = 0;
    for row in rows {
        let mut row = row;
        loop {
            let Some(&(lead, _)) = row.first() else { break };
            match &pivots[lead] {
                None => {
                    normalize(&mut row);
                    pivots[lead] = Some(row);
                    rank += 1;
                    break;
                }
                Some(p) => {
                    row = combine(p, &row)?;
                }
            }
        }
    }
    Some(rank)
}

/// `(a/g) * row - (b/g) * pivot`, where `a`, `b` are the leading entries.
fn combine<T: Ring>(pivot: &IntRow<T>, row: &IntRow<T>) -> Option<IntRow<T>> {
    let a = &pivot[0].1;
    let b = &row[0].1;
    let g = a.gcd_(b);
    let fa = a.div_exact_(&g);
    let fb = b.div_exact_(&g);
    let mut out = Vec::with_capacity(pivot.len() + row.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        if ci < cj {
            out.push((ci, row[i].1.mul_(&fa)?));
            i += 1;
        } else if cj < ci {
            out.push((cj, pivot[j].1.mul_(&fb)?.neg_()?));
            j += 1;
        } else {
            let v = row[i].1.mul_(&fa)?.sub_(&pivot[j].1.mul_(&fb)?)?;
            if !v.is_zero_() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    normalize(&mut out);
    Some(out)
}

fn normalize<T: Ring>(row: &mut IntRow<T>) {
    let Some(first) = row.first() else { return };
    let mut g = first.1.clone();
    for (_, v) in row.iter().skip(1) {
        if g.is_unit_() {
            return;
        }
        g = g.gcd_(v);
    }
    if g.is_unit_() || g.is_zero_() {
        return;
    }
    for (_, v) in row.iter_mut() {
        *v = v.div_exact_(&g);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows_of(dense: &[Vec<i64>]) -> Vec<IntRow<i64>> {
        dense
            .iter()
            .map(|r| r.iter().enumerate().filter(|(_, v)| **v != 0).map(|(c, v)| (c, *v)).collect())
            .collect()
    }

    #[test]
    fn small_ranks() {
        assert_eq!(rank_i64(rows_of(&[vec![2, 4], vec![3, 6]]), 2), Some(1));
        assert_eq!(rank_i64(rows_of(&[vec![0, 1, 1], vec![1, 1, 0], vec![1, 0, -1]]), 3), Some(2));
        assert_eq!(rank_i64(rows_of(&[vec![1, 0], vec![0, 1]]), 2), Some(2));
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = i64::MAX / 3;
        let rows = vec![vec![(0, BigInt::from(big)), (1, BigInt::from(big - 1))], vec![
            (0, BigInt::from(big - 2)),
            (1, BigInt::from(big)),
        ]];
        assert_eq!(rank_of_rows(rows, 2), 2);
        let rows = vec![vec![(0, BigInt::from(big)), (1, BigInt::from(big))], vec![
            (0, BigInt::from(big - 2)),
            (1, BigInt::from(big - 2)),
        ]];
        assert_eq!(rank_of_rows(rows, 2), 1);
    }
}
