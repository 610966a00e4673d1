use num_traits::Zero;
use rayon::prelude::*;

use super::{DenseRationalMatrix, LinAlgError, Rational, SparseRationalMatrix};

/// Bounded chain complex of finite-dimensional Q-vector spaces in degrees `0..=top`.
///
/// `differential(q)` is `d_q: C_q -> C_{q-1}`; `d_0` is the `0 x dims[0]` matrix.
/// The complex is taken to be zero above `top`, so the top homology is the cycle space.
/// Callers that truncate an unbounded complex should build one degree past what they report.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    dims: Vec<usize>,
    diffs: Vec<SparseRationalMatrix>,
}

impl ChainComplex {
    /// Checks shapes and `d_{q-1} d_q = 0`.
    pub fn new(dims: Vec<usize>, diffs: Vec<SparseRationalMatrix>) -> Result<Self, LinAlgError> {
        let c = Self::new_unchecked(dims, diffs)?;
        c.check_square_zero()?;
        Ok(c)
    }

    /// Checks shapes only.
    pub fn new_unchecked(dims: Vec<usize>, diffs: Vec<SparseRationalMatrix>) -> Result<Self, LinAlgError> {
        if dims.len() != diffs.len() {
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
        }
        Ok(Self { dims, diffs })
    }

    pub fn check_square_zero(&self) -> Result<(), LinAlgError> {
        (2..self.diffs.len()).into_par_iter().try_for_each(|q| {
            if self.diffs[q - 1].mul(&self.diffs[q])?.is_zero() {
                Ok(())
            } else {
                Err(LinAlgError::NotAComplex { degree: q })
            }
        })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len().saturating_sub(1)
    }

    pub fn differential(&self, q: usize) -> &SparseRationalMatrix {
        &self.diffs[q]
    }

    /// Ranks of all differentials, computed in parallel.
    pub fn ranks(&self) -> Vec<usize> {
        self.diffs.par_iter().map(SparseRationalMatrix::rank).collect()
    }

    /// `dim H_q` for every degree.
    pub fn homology_dims(&self) -> Vec<usize> {
        let ranks = self.ranks();
        (0..self.dims.len())
            .map(|q| self.dims[q] - ranks[q] - ranks.get(q + 1).copied().unwrap_or(0))
            .collect()
    }

    /// Euler characteristic of the chain groups.
    pub fn euler_characteristic(&self) -> i64 {
        self.dims.iter().enumerate().map(|(q, &d)| if q % 2 == 0 { d as i64 } else { -(d as i64) }).sum()
    }

    /// Representative cycles for a basis of `H_q` and a way to read off coordinates.
    pub fn homology_basis(&self, q: usize) -> HomologyBasis {
        let n = self.dims[q];
        let boundaries: Vec<Vec<Rational>> = match self.diffs.get(q + 1) {
            Some(d) => d.to_dense().column_space(),
            None => Vec::new(),
        };
        let cycles = self.diffs[q].to_dense().nullspace();
        // Extend the boundary basis to a cycle basis greedily.
        let mut spanning = boundaries.clone();
        let mut reps = Vec::new();
        let mut current_rank = spanning.len();
        for z in cycles {
            spanning.push(z.clone());
            let r = DenseRationalMatrix::from_columns(n, &spanning).rank();
            if r > current_rank {
                current_rank = r;
                reps.push(z);
            } else {
                spanning.pop();
            }
        }
        let solver = DenseRationalMatrix::from_columns(n, &spanning);
        HomologyBasis { degree: q, boundary_rank: boundaries.len(), representatives: reps, solver }
    }
}

/// A chosen basis of `H_q` given by representative cycles.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    pub degree: usize,
    boundary_rank: usize,
    pub representatives: Vec<Vec<Rational>>,
    solver: DenseRationalMatrix,
}

impl HomologyBasis {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    /// Coordinates of the class of `cycle` in this basis.
    pub fn coordinates(&self, cycle: &[Rational]) -> Result<Vec<Rational>, LinAlgError> {
        let x = self.solver.solve(cycle).ok_or(LinAlgError::NotACycle { degree: self.degree })?;
        Ok(x[self.boundary_rank..].to_vec())
    }
}

/// Degreewise linear maps `f_q: C_q -> D_q` commuting with the differentials.
#[derive(Clone, Debug)]
pub struct ChainMap {
    components: Vec<SparseRationalMatrix>,
}

impl ChainMap {
    /// Validates shapes and `d f = f d` in all degrees where both sides are defined.
    pub fn new(
        source: &ChainComplex,
        target: &ChainComplex,
        components: Vec<SparseRationalMatrix>,
    ) -> Result<Self, LinAlgError> {
        for (q, f) in components.iter().enumerate() {
            let (Some(&sd), Some(&td)) = (source.dims.get(q), target.dims.get(q)) else {
                return Err(LinAlgError::ComplexShape(format!("chain map has a component in degree {q}")));
            };
            if f.rows() != td || f.cols() != sd {
                return Err(LinAlgError::ComplexShape(format!(
                    "f_{q} is {}x{}, expected {td}x{sd}",
                    f.rows(),
                    f.cols()
                )));
            }
            if q >= 1 {
                let lhs = target.diffs[q].mul(f)?;
                let rhs = components[q - 1].mul(&source.diffs[q])?;
                if lhs != rhs {
                    return Err(LinAlgError::NotAChainMap { degree: q });
                }
            }
        }
        Ok(Self { components })
    }

    pub fn component(&self, q: usize) -> &SparseRationalMatrix {
        &self.components[q]
    }

    /// Matrix of the induced map `H_q(C) -> H_q(D)` in the given bases.
    pub fn induced_on_homology(
        &self,
        q: usize,
        source: &HomologyBasis,
        target: &HomologyBasis,
    ) -> Result<DenseRationalMatrix, LinAlgError> {
        let mut cols = Vec::with_capacity(source.dim());
        for z in &source.representatives {
            let image = self.components[q].apply(z);
            cols.push(target.coordinates(&image)?);
        }
        Ok(DenseRationalMatrix::from_columns(target.dim(), &cols))
    }
}

/// Whether a vector is zero.
pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle() -> ChainComplex {
        // Two vertices, two edges a: v0 -> v1, b: v1 -> v0.
        let d0 = SparseRationalMatrix::zeros(0, 2);
        let d1 = SparseRationalMatrix::from_dense_rows(&[vec![-1, 1], vec![1, -1]]);
        ChainComplex::new(vec![2, 2], vec![d0, d1]).unwrap()
    }

    #[test]
    fn circle_homology() {
        let c = circle();
        assert_eq!(c.homology_dims(), vec![1, 1]);
        assert_eq!(c.euler_characteristic(), 0);
        let h1 = c.homology_basis(1);
        assert_eq!(h1.dim(), 1);
        let h0 = c.homology_basis(0);
        let q = |n: i64| Rational::from_integer(n.into());
        // Both vertices are homologous.
        assert_eq!(h0.coordinates(&[q(1), q(0)]).unwrap(), h0.coordinates(&[q(0), q(1)]).unwrap());
    }

    #[test]
    fn rejects_nonzero_square() {
        let d0 = SparseRationalMatrix::zeros(0, 1);
        let d1 = SparseRationalMatrix::from_dense_rows(&[vec![1]]);
        let d2 = SparseRationalMatrix::from_dense_rows(&[vec![1]]);
        let err = ChainComplex::new(vec![1, 1, 1], vec![d0, d1, d2]).unwrap_err();
        assert!(matches!(err, LinAlgError::NotAComplex { degree: 2 }));
    }

    #[test]
    fn swap_map_on_circle() {
        let c = circle();
        let swap = SparseRationalMatrix::from_dense_rows(&[vec![0, 1], vec![1, 0]]);
        let f = ChainMap::new(&c, &c, vec![swap.clone(), swap]).unwrap();
        let h1 = c.homology_basis(1);
        let m = f.induced_on_homology(1, &h1, &h1).unwrap();
        assert_eq!(m, DenseRationalMatrix::from_int_rows(&[vec![1]]));
        let h0 = c.homology_basis(0);
        let m0 = f.induced_on_homology(0, &h0, &h0).unwrap();
        assert_eq!(m0, DenseRationalMatrix::from_int_rows(&[vec![1]]));
    }

    #[test]
    fn rejects_non_chain_map() {
        let c = circle();
        let bad = SparseRationalMatrix::from_dense_rows(&[vec![1, 0], vec![0, 0]]);
        let err = ChainMap::new(&c, &c, vec![SparseRationalMatrix::identity(2), bad]).unwrap_err();
        assert!(matches!(err, LinAlgError::NotAChainMap { degree: 1 }));
    }
}
