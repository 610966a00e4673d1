use rayon::prelude::*;
use serde::Serialize;

use super::module::{tau, GradedDims};
use super::CycHomError;
use crate::exactlin::{ChainComplex, Rational, SparseRationalMatrix};
use crate::groupkit::{CyclicBarLevel, FiniteGroup};

/// The summand of the total cyclic complex whose tuples have product in one conjugacy class.
///
/// Degree `n` has basis `(p, x)` with `x` a tuple of length `n - p + 1`, for `0 <= p <= n`.
pub fn class_block_complex(group: &FiniteGroup, class: usize, top: usize) -> Result<ChainComplex, CycHomError> {
    let class_of = group.class_index();
    let levels: Vec<CyclicBarLevel<'_>> = (0..=top).map(|q| CyclicBarLevel::new(group, q)).collect();
    // Tuples of each level in this class, and their local indices.
    let members: Vec<Vec<usize>> = levels
        .iter()
        .map(|l| (0..l.len()).filter(|&x| class_of[l.product(&l.tuple(x))] == class).collect())
        .collect();
    let local: Vec<Vec<usize>> = levels
        .iter()
        .zip(&members)
        .map(|(l, m)| {
            let mut v = vec![usize::MAX; l.len()];
            for (i, &x) in m.iter().enumerate() {
                v[x] = i;
            }
            v
        })
        .collect();
    // offset[n][p]: start of column p inside total degree n.
    let offset: Vec<Vec<usize>> = (0..=top)
        .map(|n| {
            let mut acc = 0;
            let mut v = Vec::with_capacity(n + 2);
            for p in 0..=n {
                v.push(acc);
                acc += members[n - p].len();
            }
            v.push(acc);
            v
        })
        .collect();
    let dims: Vec<usize> = offset.iter().map(|o| *o.last().expect("non-empty")).collect();
    let mut diffs = vec![SparseRationalMatrix::zeros(0, dims[0])];
    for n in 1..=top {
        let cols: Vec<(usize, usize)> = (0..=n).flat_map(|p| (0..members[n - p].len()).map(move |i| (p, i))).collect();
        let trips: Vec<Vec<(usize, usize, i64)>> = cols
            .par_iter()
            .map(|&(p, i)| {
                let q = n - p;
                let l = &levels[q];
                let x = members[q][i];
                let col = offset[n][p] + i;
                let mut out = Vec::new();
                if q >= 1 {
                    let t = l.tuple(x);
                    let (last, sign) = if p % 2 == 0 { (q, 1) } else { (q - 1, -1) };
                    for f in 0..=last {
                        let y = levels[q - 1].index(&l.face(f, &t));
                        let s = if f % 2 == 0 { sign } else { -sign };
                        out.push((offset[n - 1][p] + local[q - 1][y], col, s));
                    }
                }
                if p >= 1 {
                    let base = offset[n - 1][p - 1];
                    if p % 2 == 1 {
                        let (y, s) = tau(l, x);
                        out.push((base + local[q][x], col, 1));
                        out.push((base + local[q][y], col, -s));
                    } else {
                        let (mut z, mut sign) = (x, 1);
                        for _ in 0..=q {
                            out.push((base + local[q][z], col, sign));
                            let (z2, s2) = tau(l, z);
                            z = z2;
                            sign *= s2;
                        }
                    }
                }
                out
            })
            .collect();
        let d = SparseRationalMatrix::from_triplets(
            dims[n - 1],
            dims[n],
            trips.into_iter().flatten().map(|(r, c, v)| (r, c, Rational::from_integer(v.into()))),
        )?;
        diffs.push(d);
    }
    ChainComplex::new(dims, diffs).map_err(|e| CycHomError::Invariant(format!("cyclic bicomplex of class {class}: {e}")))
}

/// `dim HC_q(Q[Γ])` for `q = 0..=max_degree`, summed over conjugacy-class blocks.
pub fn hc_dims(group: &FiniteGroup, max_degree: usize) -> Result<GradedDims, CycHomError> {
    let classes = group.conjugacy_classes().len();
    let per_class: Vec<Vec<usize>> = (0..classes)
        .into_par_iter()
        .map(|c| {
            let mut h = class_block_complex(group, c, max_degree + 1)?.homology_dims();
            h.truncate(max_degree + 1);
            Ok(h)
        })
        .collect::<Result<_, CycHomError>>()?;
    let total: Vec<usize> = (0..=max_degree).map(|q| per_class.iter().map(|h| h[q]).sum()).collect();
    Ok(GradedDims::from_vec(&total))
}

/// `HC(Q[Γ]) - HC(Q)` degreewise.
pub fn reduced_hc_dims(group: &FiniteGroup, max_degree: usize) -> Result<GradedDims, CycHomError> {
    let full = hc_dims(group, max_degree)?.dims();
    let base = hc_dims(&FiniteGroup::trivial(), max_degree)?.dims();
    Ok(GradedDims::from_vec(&full.iter().zip(&base).map(|(a, b)| a - b).collect::<Vec<_>>()))
}

/// The conjugacy-class basis of `HC_0`, with the map sending each degree-0 tuple `(g)` to its class.
#[derive(Clone, Debug, Serialize)]
pub struct Hc0Basis {
    pub classes: Vec<Vec<String>>,
    pub surjection: Vec<usize>,
}

pub fn hc0_basis(group: &FiniteGroup) -> Result<Hc0Basis, CycHomError> {
    let classes: Vec<Vec<String>> =
        group.conjugacy_classes().iter().map(|c| c.iter().map(|&g| group.label(g).to_string()).collect()).collect();
    let dim = hc_dims(group, 0)?.dims()[0];
    if dim != classes.len() {
        return Err(CycHomError::Invariant(format!("HC_0 has dimension {dim} but there are {} classes", classes.len())));
    }
    Ok(Hc0Basis { classes, surjection: group.class_index() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_groups() {
        assert_eq!(hc_dims(&FiniteGroup::trivial(), 4).unwrap().dims(), vec![1, 0, 1, 0, 1]);
        assert_eq!(hc_dims(&FiniteGroup::cyclic(2), 4).unwrap().dims(), vec![2, 0, 2, 0, 2]);
        assert_eq!(hc_dims(&FiniteGroup::cyclic(3), 2).unwrap().dims(), vec![3, 0, 3]);
    }

    #[test]
    fn reduced() {
        assert_eq!(reduced_hc_dims(&FiniteGroup::trivial(), 3).unwrap().dims(), vec![0; 4]);
        assert_eq!(reduced_hc_dims(&FiniteGroup::cyclic(2), 4).unwrap().dims(), vec![1, 0, 1, 0, 1]);
        assert_eq!(reduced_hc_dims(&FiniteGroup::cyclic(3), 0).unwrap().dims(), vec![2]);
    }

    #[test]
    fn degree_zero_basis() {
        let b = hc0_basis(&FiniteGroup::symmetric(3)).unwrap();
        assert_eq!(b.classes.len(), 3);
        assert_eq!(hc0_basis(&FiniteGroup::cyclic(4)).unwrap().classes.len(), 4);
        assert_eq!(hc0_basis(&FiniteGroup::trivial()).unwrap().classes.len(), 1);
    }
}

