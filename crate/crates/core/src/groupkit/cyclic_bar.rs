use super::{FiniteGroup, FreeWord, GroupHom};

/// Level `q` of the cyclic bar construction of a finite group: tuples `(g_0, ..., g_q)`,
/// indexed with `g_0` most significant.
#[derive(Clone, Debug)]
pub struct CyclicBarLevel<'a> {
    group: &'a FiniteGroup,
    q: usize,
}

impl<'a> CyclicBarLevel<'a> {
    pub fn new(group: &'a FiniteGroup, q: usize) -> Self {
        Self { group, q }
    }

    pub fn degree(&self) -> usize {
        self.q
    }

    pub fn len(&self) -> usize {
        self.group.order().pow(self.q as u32 + 1)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn tuple(&self, mut index: usize) -> Vec<usize> {
        let n = self.group.order();
        let mut t = vec![0; self.q + 1];
        for k in (0..=self.q).rev() {
            t[k] = index % n;
            index /= n;
        }
        t
    }

    pub fn index(&self, tuple: &[usize]) -> usize {
        let n = self.group.order();
        tuple.iter().fold(0, |acc, &g| acc * n + g)
    }

    /// `d_i` merges `g_i g_{i+1}`; `d_q` gives `(g_q g_0, g_1, ..., g_{q-1})`.
    pub fn face(&self, i: usize, t: &[usize]) -> Vec<usize> {
        let q = self.q;
        assert!(q >= 1 && i <= q, "face d_{i} on level {q}");
        if i < q {
            let mut out = t[..i].to_vec();
            out.push(self.group.mul(t[i], t[i + 1]));
            out.extend_from_slice(&t[i + 2..]);
            out
        } else {
            let mut out = vec![self.group.mul(t[q], t[0])];
            out.extend_from_slice(&t[1..q]);
            out
        }
    }

    /// `s_j` inserts the identity after `g_j`.
    pub fn degeneracy(&self, j: usize, t: &[usize]) -> Vec<usize> {
        assert!(j <= self.q, "degeneracy s_{j} on level {}", self.q);
        let mut out = t[..=j].to_vec();
        out.push(self.group.identity());
        out.extend_from_slice(&t[j + 1..]);
        out
    }

    /// `t (g_0, ..., g_q) = (g_q, g_0, ..., g_{q-1})`.
    pub fn cyclic(&self, t: &[usize]) -> Vec<usize> {
        let mut out = vec![t[self.q]];
        out.extend_from_slice(&t[..self.q]);
        out
    }

    /// The product `g_0 g_1 ... g_q`.
    pub fn product(&self, t: &[usize]) -> usize {
        t.iter().fold(self.group.identity(), |acc, &g| self.group.mul(acc, g))
    }
}

/// Evaluate a word at a tuple of group elements.
pub fn evaluate_word(group: &FiniteGroup, w: &FreeWord, tuple: &[usize]) -> usize {
    w.evaluate(tuple, group.identity(), |a, b| group.mul(*a, *b), |a| group.inv(*a))
}

/// The set map `Hom(F<n+1>, Γ) -> Hom(F<m+1>, Γ)` given by precomposition with `psi`,
/// where `psi: F<m+1> -> F<n+1>`.
pub fn pullback_via_psi(group: &FiniteGroup, psi: &GroupHom, tuple: &[usize]) -> Vec<usize> {
    assert_eq!(psi.target_rank(), tuple.len(), "tuple length must match the target rank");
    psi.images().iter().map(|w| evaluate_word(group, w, tuple)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crossedcat::{psi_cyc_word, CycGen};

    #[test]
    fn index_round_trip() {
        let g = FiniteGroup::symmetric(3);
        let l = CyclicBarLevel::new(&g, 2);
        assert_eq!(l.len(), 216);
        for i in 0..l.len() {
            assert_eq!(l.index(&l.tuple(i)), i);
        }
    }

    #[test]
    fn structure_maps_are_the_pullback() {
        let g = FiniteGroup::symmetric(3);
        for q in 1..=3usize {
            let l = CyclicBarLevel::new(&g, q);
            for idx in (0..l.len()).step_by(7) {
                let t = l.tuple(idx);
                for gen in CycGen::all_with_source(q) {
                    let psi = psi_cyc_word(&[gen]).unwrap();
                    let expect = match gen.kind {
                        crate::crossedcat::GenKind::Face => l.face(gen.i, &t),
                        crate::crossedcat::GenKind::Degeneracy => l.degeneracy(gen.i, &t),
                        crate::crossedcat::GenKind::Cyclic => l.cyclic(&t),
                    };
                    assert_eq!(pullback_via_psi(&g, &psi, &t), expect, "{gen} at {t:?}");
                }
            }
        }
    }

    #[test]
    fn cyclic_operator_has_order_q_plus_one() {
        let g = FiniteGroup::quaternion();
        let l = CyclicBarLevel::new(&g, 3);
        let t = vec![1, 2, 3, 5];
        let mut u = t.clone();
        for _ in 0..4 {
            u = l.cyclic(&u);
        }
        assert_eq!(u, t);
        let ci = g.class_index();
        assert_eq!(ci[l.product(&t)], ci[l.product(&l.cyclic(&t))]);
    }
}
