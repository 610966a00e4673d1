use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use super::derived::{cartesian, HrAnswer};
use super::{check_window, HrError};
use crate::cychom::GradedDims;
use crate::exactlin::{ChainComplex, Cokernel, IntegerMatrix, Rational, SparseRationalMatrix};
use crate::groupkit::SimplicialGroupModel;

type Matrix = Vec<Vec<i64>>;

fn apply(a: &Matrix, v: &[i64]) -> Vec<i64> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

/// The normalized chain complex of `Q[Γ_ab]` cut down to exponents in a box.
///
/// Level `q` keeps the exponent vectors `v` with `|v|_∞ <= bound` whose faces are kept at
/// level `q - 1`, so the kept vectors form a face-closed subset; degenerate vectors are
/// divided out. A face `d_i` sends `t^v` to `t^{A v}` with `A` the abelianized face.
#[derive(Clone, Debug)]
pub struct MonomialComplex {
    pub bound: i64,
    /// Non-degenerate kept vectors per level, in enumeration order.
    pub basis: Vec<Vec<Vec<i64>>>,
    /// Weight of each basis vector: the class of its last vertex in `π_0`.
    pub weights: Vec<Vec<Vec<BigInt>>>,
    faces: Vec<Vec<Matrix>>,
}

impl MonomialComplex {
    /// Levels `0..=top`.
    pub fn new(m: &SimplicialGroupModel, top: usize, bound: i64) -> Self {
        let faces: Vec<Vec<Matrix>> = (0..=top).map(|q| (0..if q == 0 { 0 } else { q + 1 }).map(|i| m.abelian_face(q, i)).collect()).collect();
        let degens: Vec<Vec<Matrix>> = (0..top).map(|q| (0..=q).map(|j| m.abelian_degeneracy(q, j)).collect()).collect();
        let pi0 = Cokernel::of(&moore_boundary_one(m));
        let mut kept: Vec<BTreeSet<Vec<i64>>> = Vec::new();
        let mut basis = Vec::new();
        let mut weights = Vec::new();
        for q in 0..=top {
            let r = m.ranks()[q];
            let ranges: Vec<Vec<i64>> = (0..r).map(|_| (-bound..=bound).collect()).collect();
            let candidates = cartesian(&ranges);
            let level: Vec<Vec<i64>> = candidates
                .into_par_iter()
                .filter(|v| q == 0 || faces[q].iter().all(|a| kept[q - 1].contains(&apply(a, v))))
                .collect();
            let nondeg: Vec<Vec<i64>> = level
                .par_iter()
                .filter(|v| (0..q).all(|j| &apply(&degens[q - 1][j], &apply(&faces[q][j], v)) != *v))
                .cloned()
                .collect();
            let w: Vec<Vec<BigInt>> = nondeg
                .iter()
                .map(|v| {
                    let vertex = (1..=q).rev().fold(v.clone(), |x, k| apply(&faces[k][0], &x));
                    pi0.coords_i64(&vertex)
                })
                .collect();
            kept.push(level.into_iter().collect());
            basis.push(nondeg);
            weights.push(w);
        }
        Self { bound, basis, weights, faces }
    }

    pub fn top(&self) -> usize {
        self.basis.len() - 1
    }

    /// Every weight occurring at level 0.
    pub fn vertex_weights(&self) -> BTreeSet<Vec<BigInt>> {
        self.weights[0].iter().cloned().collect()
    }

    /// The summand of one weight as a rational chain complex.
    pub fn weight_complex(&self, weight: &[BigInt]) -> Result<ChainComplex, HrError> {
        let members: Vec<Vec<usize>> =
            self.weights.iter().map(|ws| (0..ws.len()).filter(|&k| ws[k] == weight).collect()).collect();
        let index: Vec<HashMap<&[i64], usize>> = members
            .iter()
            .enumerate()
            .map(|(q, ms)| ms.iter().enumerate().map(|(i, &k)| (self.basis[q][k].as_slice(), i)).collect())
            .collect();
        let dims: Vec<usize> = members.iter().map(Vec::len).collect();
        let mut diffs = vec![SparseRationalMatrix::zeros(0, dims[0])];
        for q in 1..=self.top() {
            let mut trips = Vec::new();
            for (col, &k) in members[q].iter().enumerate() {
                let v = &self.basis[q][k];
                for (i, a) in self.faces[q].iter().enumerate() {
                    // Degenerate faces are zero in the normalized complex.
                    if let Some(&row) = index[q - 1].get(apply(a, v).as_slice()) {
                        trips.push((row, col, Rational::from_integer(if i % 2 == 0 { 1 } else { -1 }.into())));
                    }
                }
            }
            diffs.push(SparseRationalMatrix::from_triplets(dims[q - 1], dims[q], trips)?);
        }
        ChainComplex::new(dims, diffs).map_err(|e| HrError::Invariant(format!("windowed complex, weight {weight:?}: {e}")))
    }

    /// Homology dims in degrees `0..top` for each level-0 weight.
    pub fn homology_by_weight(&self) -> Result<BTreeMap<Vec<BigInt>, Vec<usize>>, HrError> {
        let ws: Vec<Vec<BigInt>> = self.vertex_weights().into_iter().collect();
        let rows: Vec<(Vec<BigInt>, Vec<usize>)> = ws
            .into_par_iter()
            .map(|w| {
                let mut h = self.weight_complex(&w)?.homology_dims();
                h.truncate(self.top());
                Ok((w, h))
            })
            .collect::<Result<_, HrError>>()?;
        Ok(rows.into_iter().collect())
    }
}

fn moore_boundary_one(m: &SimplicialGroupModel) -> IntegerMatrix {
    let r0 = m.ranks()[0];
    if m.truncation() == 0 {
        return IntegerMatrix::zeros(r0, 0);
    }
    m.truncate(1).abelian_moore_complex().differential(1).clone()
}

/// Windowed homology at two box sizes and the degrees where they disagree.
#[derive(Clone, Debug, Serialize)]
pub struct WindowReport {
    pub max_degree: usize,
    pub bound: i64,
    /// Per weight, dims in degrees `0..=max_degree` at `bound`.
    pub at_bound: BTreeMap<String, Vec<usize>>,
    /// The same weights at `bound + 1`.
    pub at_next_bound: BTreeMap<String, Vec<usize>>,
    /// Degrees in which some weight changed between the two bounds.
    pub unstable_degrees: Vec<usize>,
    /// Totals over the weights of the smaller box, for the stable degrees only.
    pub trusted: GradedDims,
    #[serde(skip)]
    pub weights: Vec<Vec<BigInt>>,
}

impl WindowReport {
    pub fn is_stable(&self) -> bool {
        self.unstable_degrees.is_empty()
    }

    pub fn is_trusted(&self, q: usize) -> bool {
        q <= self.max_degree && !self.unstable_degrees.contains(&q)
    }

    /// Degrees and weights where the window disagrees with the derived answer, among trusted degrees.
    pub fn disagreements(&self, answer: &HrAnswer) -> Vec<(usize, String)> {
        let mut out = Vec::new();
        for (w, dims) in &self.at_bound {
            for (q, &d) in dims.iter().enumerate() {
                if self.is_trusted(q) && answer.per_weight.get(q) != Some(&d) {
                    out.push((q, w.clone()));
                }
            }
        }
        out
    }
}

pub fn weight_label(w: &[BigInt]) -> String {
    let parts: Vec<String> = w.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

/// Brute-force `HR_*(Γ, G_m)` in degrees `0..=n` from windowed monomial complexes at
/// `bound` and `bound + 1`.
pub fn hr_bruteforce_window(m: &SimplicialGroupModel, n: usize, bound: i64) -> Result<WindowReport, HrError> {
    check_window(m, n)?;
    if bound < 1 {
        return Err(HrError::Window { max_degree: n, truncation: m.truncation(), detail: "window bound must be at least 1".into() });
    }
    let small = MonomialComplex::new(m, n + 1, bound).homology_by_weight()?;
    let large = MonomialComplex::new(m, n + 1, bound + 1).homology_by_weight()?;
    let zero = vec![0; n + 1];
    let mut unstable = BTreeSet::new();
    let mut at_next_bound = BTreeMap::new();
    for (w, dims) in &small {
        let other = large.get(w).unwrap_or(&zero);
        unstable.extend((0..=n).filter(|&q| dims[q] != other[q]));
        at_next_bound.insert(weight_label(w), other.clone());
    }
    let totals: Vec<(usize, usize)> = (0..=n)
        .filter(|q| !unstable.contains(q))
        .map(|q| (q, small.values().map(|d| d[q]).sum()))
        .collect();
    Ok(WindowReport {
        max_degree: n,
        bound,
        at_bound: small.iter().map(|(w, d)| (weight_label(w), d.clone())).collect(),
        at_next_bound,
        unstable_degrees: unstable.into_iter().collect(),
        trusted: GradedDims(totals),
        weights: small.keys().cloned().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupkit::{milnor_model, Cell, CellLetter, CellModel, ReducedSimplicialSet};

    #[test]
    fn constant_model_is_discrete() {
        let m = SimplicialGroupModel::constant_free(1, 4);
        let r = hr_bruteforce_window(&m, 2, 2).unwrap();
        assert!(r.is_stable());
        assert_eq!(r.trusted.dims(), vec![5, 0, 0]);
        assert_eq!(r.at_bound.len(), 5);
    }

    #[test]
    fn window_complex_squares_to_zero() {
        let m = milnor_model(&ReducedSimplicialSet::circle(), 4).unwrap();
        let c = MonomialComplex::new(&m, 4, 2);
        assert!(c.weight_complex(&[]).unwrap().check_square_zero().is_ok());
        assert_eq!(c.basis[1].len(), 4);
    }

    #[test]
    fn sphere_model_matches_derived() {
        let m = milnor_model(&ReducedSimplicialSet::circle(), 5).unwrap();
        let r = hr_bruteforce_window(&m, 3, 3).unwrap();
        assert!(r.is_stable());
        assert_eq!(r.trusted.dims(), vec![1, 1, 0, 0]);
        let d = crate::rephom::hr_derived_abelianization(&m, 3).unwrap();
        assert!(r.disagreements(&d).is_empty());
    }

    #[test]
    fn two_models_of_the_same_space_agree() {
        let one = milnor_model(&ReducedSimplicialSet::circle(), 4).unwrap();
        let two = milnor_model(&ReducedSimplicialSet::two_edge_circle(), 4).unwrap();
        assert_ne!(one.ranks(), two.ranks());
        let (d1, d2) = (
            crate::rephom::hr_derived_abelianization(&one, 2).unwrap(),
            crate::rephom::hr_derived_abelianization(&two, 2).unwrap(),
        );
        assert_eq!(d1, d2);
        let (w1, w2) = (hr_bruteforce_window(&one, 2, 1).unwrap(), hr_bruteforce_window(&two, 2, 1).unwrap());
        assert!(w1.is_stable() && w2.is_stable());
        assert_eq!(w1.trusted, w2.trusted);
        assert!(w2.disagreements(&d2).is_empty());
    }

    #[test]
    fn torus_model_matches_derived() {
        let m = CellModel::torus().build(5).unwrap();
        let r = hr_bruteforce_window(&m, 3, 1).unwrap();
        assert!(r.is_stable());
        assert_eq!(r.at_bound.len(), 9);
        assert!(r.at_bound.values().all(|d| d == &vec![1, 1, 0, 0]));
        let d = crate::rephom::hr_derived_abelianization(&m, 3).unwrap();
        assert!(r.disagreements(&d).is_empty());
    }

    #[test]
    fn torsion_in_higher_homotopy_is_invisible() {
        let m = milnor_model(&ReducedSimplicialSet::projective_plane(), 4).unwrap();
        let d = crate::rephom::hr_derived_abelianization(&m, 2).unwrap();
        assert_eq!(d.higher_homotopy[0].to_string(), "Z/2");
        assert_eq!(d.per_weight, vec![1, 0, 0]);
        let r = hr_bruteforce_window(&m, 2, 1).unwrap();
        assert!(r.is_stable() && r.disagreements(&d).is_empty());
    }

    /// `<x, y | x^3 y, x^4 y>` presents the trivial group, but within `|v| <= 1` the
    /// relators only connect points of the same row.
    #[test]
    fn small_box_is_flagged() {
        let l = |c: &str, exp: i64| CellLetter { cell: c.into(), eta: None, exp };
        let rel = |name: &str, k: i64| Cell { name: name.into(), dim: 1, faces: vec![vec![l("x", k), l("y", 1)], vec![]] };
        let cells = CellModel {
            cells: vec![
                Cell { name: "x".into(), dim: 0, faces: vec![] },
                Cell { name: "y".into(), dim: 0, faces: vec![] },
                rel("r", 3),
                rel("s", 4),
            ],
        };
        let m = cells.build(3).unwrap();
        let r = hr_bruteforce_window(&m, 1, 1).unwrap();
        assert_eq!(r.at_bound["()"][0], 3);
        assert_eq!(r.at_next_bound["()"][0], 1);
        assert_eq!(r.unstable_degrees, vec![0]);
    }
}

