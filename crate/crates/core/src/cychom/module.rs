use serde::Serialize;

use crate::exactlin::{LinAlgError, SparseRationalMatrix};
use crate::groupkit::{CyclicBarLevel, FiniteGroup};

/// `(degree, dimension)` pairs in increasing degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedDims(pub Vec<(usize, usize)>);

impl GradedDims {
    pub fn from_vec(dims: &[usize]) -> Self {
        Self(dims.iter().copied().enumerate().collect())
    }

    pub fn dims(&self) -> Vec<usize> {
        self.0.iter().map(|&(_, d)| d).collect()
    }

    pub fn get(&self, degree: usize) -> Option<usize> {
        self.0.iter().find(|&&(q, _)| q == degree).map(|&(_, d)| d)
    }
}

/// The cyclic module `q -> Q[Γ^{q+1}]` of a finite group with its bicomplex operators.
///
/// `b[q]`, `b_prime[q]`: degree `q` to `q - 1` (empty for `q = 0`); `one_minus_t[q]`, `norm[q]`
/// act on degree `q`, with `τ = (-1)^q t`.
#[derive(Clone, Debug)]
pub struct CyclicModule {
    pub top: usize,
    pub dims: Vec<usize>,
    pub b: Vec<SparseRationalMatrix>,
    pub b_prime: Vec<SparseRationalMatrix>,
    pub one_minus_t: Vec<SparseRationalMatrix>,
    pub norm: Vec<SparseRationalMatrix>,
}

/// Signed cyclic operator `τ = (-1)^q t` on the tuple with index `x`.
pub(crate) fn tau(level: &CyclicBarLevel<'_>, x: usize) -> (usize, i64) {
    let q = level.degree();
    let y = level.index(&level.cyclic(&level.tuple(x)));
    (y, if q % 2 == 0 { 1 } else { -1 })
}

impl CyclicModule {
    pub fn build(group: &FiniteGroup, top: usize) -> Self {
        let levels: Vec<CyclicBarLevel<'_>> = (0..=top).map(|q| CyclicBarLevel::new(group, q)).collect();
        let dims: Vec<usize> = levels.iter().map(CyclicBarLevel::len).collect();
        let mut b = vec![SparseRationalMatrix::zeros(0, dims[0])];
        let mut b_prime = vec![SparseRationalMatrix::zeros(0, dims[0])];
        for q in 1..=top {
            let l = &levels[q];
            let mut mb = SparseRationalMatrix::zeros(dims[q - 1], dims[q]);
            let mut mbp = SparseRationalMatrix::zeros(dims[q - 1], dims[q]);
            for x in 0..dims[q] {
                let t = l.tuple(x);
                for i in 0..=q {
                    let y = levels[q - 1].index(&l.face(i, &t));
                    let s = if i % 2 == 0 { 1 } else { -1 };
                    mb.add_int_at(y, x, s);
                    if i < q {
                        mbp.add_int_at(y, x, s);
                    }
                }
            }
            b.push(mb);
            b_prime.push(mbp);
        }
        let mut one_minus_t = Vec::new();
        let mut norm = Vec::new();
        for (q, l) in levels.iter().enumerate() {
            let mut omt = SparseRationalMatrix::identity(dims[q]);
            let mut n = SparseRationalMatrix::zeros(dims[q], dims[q]);
            for x in 0..dims[q] {
                let (y, s) = tau(l, x);
                omt.add_int_at(y, x, -s);
                let (mut z, mut sign) = (x, 1);
                for _ in 0..=q {
                    n.add_int_at(z, x, sign);
                    let (z2, s2) = tau(l, z);
                    z = z2;
                    sign *= s2;
                }
            }
            one_minus_t.push(omt);
            norm.push(n);
        }
        Self { top, dims, b, b_prime, one_minus_t, norm }
    }

    /// Checks `b² = 0`, `b'² = 0`, `(1-t)N = N(1-t) = 0`, `b(1-t) = (1-t)b'` and `b'N = Nb`.
    pub fn check_identities(&self) -> Result<(), String> {
        let fail = |what: &str, q: usize| Err(format!("{what} fails in degree {q}"));
        let mul = |a: &SparseRationalMatrix, b: &SparseRationalMatrix| -> Result<SparseRationalMatrix, LinAlgError> { a.mul(b) };
        for q in 0..=self.top {
            let e = |r: Result<SparseRationalMatrix, LinAlgError>| r.map_err(|e| e.to_string());
            if !e(mul(&self.one_minus_t[q], &self.norm[q]))?.is_zero() {
                return fail("(1-t)N = 0", q);
            }
            if !e(mul(&self.norm[q], &self.one_minus_t[q]))?.is_zero() {
                return fail("N(1-t) = 0", q);
            }
            if q >= 2 {
                if !e(mul(&self.b[q - 1], &self.b[q]))?.is_zero() {
                    return fail("b² = 0", q);
                }
                if !e(mul(&self.b_prime[q - 1], &self.b_prime[q]))?.is_zero() {
                    return fail("b'² = 0", q);
                }
            }
            if q >= 1 {
                if e(mul(&self.b[q], &self.one_minus_t[q]))? != e(mul(&self.one_minus_t[q - 1], &self.b_prime[q]))? {
                    return fail("b(1-t) = (1-t)b'", q);
                }
                if e(mul(&self.b_prime[q], &self.norm[q]))? != e(mul(&self.norm[q - 1], &self.b[q]))? {
                    return fail("b'N = Nb", q);
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let m = CyclicModule::build(&FiniteGroup::trivial(), 4);
        assert_eq!(m.dims, vec![1; 5]);
        let m = CyclicModule::build(&FiniteGroup::cyclic(2), 4);
        assert_eq!(m.dims, vec![2, 4, 8, 16, 32]);
    }

    #[test]
    fn identities_hold() {
        for g in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric(3)] {
            CyclicModule::build(&g, 3).check_identities().unwrap();
        }
    }
}
