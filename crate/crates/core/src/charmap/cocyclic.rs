use std::fmt;

use serde::Serialize;

use crate::crossedcat::{CycGen, GenKind};

/// A Laurent monomial `t_0^{e_0} ... t_m^{e_m}` in `O(G_m)^{⊗(m+1)}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocyclicTraceElement {
    pub level: usize,
    pub exponents: Vec<i64>,
}

impl fmt::Display for CocyclicTraceElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| if e == 1 { format!("t{i}") } else { format!("t{i}^{e}") })
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(""))
        }
    }
}

/// The level-`m` trace element for `P = t`: the product `t_0 t_1 ... t_m`.
pub fn delta_trace(m: usize) -> CocyclicTraceElement {
    CocyclicTraceElement { level: m, exponents: vec![1; m + 1] }
}

/// Action of a ΔC generator on monomials, from its target level to its source level.
///
/// A variable `t_j` of the target level is replaced by the monomial read off the `j`-th
/// word of `Ψ_cyc`, so the exponent vector transforms by the abelianized `Ψ_cyc`.
pub fn pull_back(gen: &CycGen, x: &CocyclicTraceElement) -> CocyclicTraceElement {
    assert_eq!(x.level, gen.target(), "element lives at the wrong level");
    let a = gen.psi_cyc().abelianize_i64();
    let exponents = a.iter().map(|row| row.iter().zip(&x.exponents).map(|(p, e)| p * e).sum()).collect();
    CocyclicTraceElement { level: gen.source(), exponents }
}

/// A generator that fails to carry the trace element at its target to the one at its source.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NaturalityFailure {
    pub generator: String,
    pub image: String,
    pub expected: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NaturalityReport {
    pub max_level: usize,
    pub generators_checked: usize,
    pub failures: Vec<NaturalityFailure>,
}

impl NaturalityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `Δ^{(source)} = gen^*(Δ^{(target)})` for every generator between levels `<= max_m`.
pub fn check_cocyclic_naturality(max_m: usize) -> NaturalityReport {
    let mut checked = 0;
    let mut failures = Vec::new();
    for n in 0..=max_m {
        for g in CycGen::all_with_source(n) {
            if g.target() > max_m {
                continue;
            }
            checked += 1;
            let image = pull_back(&g, &delta_trace(g.target()));
            let expected = delta_trace(n);
            if image != expected {
                failures.push(NaturalityFailure {
                    generator: g.to_string(),
                    image: image.to_string(),
                    expected: expected.to_string(),
                });
            }
        }
    }
    NaturalityReport { max_level: max_m, generators_checked: checked, failures }
}

/// Number of generators of each kind with source and target at most `max_m`.
pub fn generator_census(max_m: usize) -> [(GenKind, usize); 3] {
    let mut counts = [(GenKind::Face, 0), (GenKind::Degeneracy, 0), (GenKind::Cyclic, 0)];
    for n in 0..=max_m {
        for g in CycGen::all_with_source(n) {
            if g.target() <= max_m {
                let slot = counts.iter_mut().find(|(k, _)| *k == g.kind).expect("all kinds listed");
                slot.1 += 1;
            }
        }
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trace_elements() {
        assert_eq!(delta_trace(0).to_string(), "t0");
        assert_eq!(delta_trace(2).to_string(), "t0t1t2");
    }

    #[test]
    fn last_face_wraps_around() {
        let d = CycGen::face(2, 2).unwrap();
        let words: Vec<String> = d.psi_cyc().images().iter().map(ToString::to_string).collect();
        assert_eq!(words, vec!["x2x0", "x1"]);
        assert_eq!(pull_back(&d, &delta_trace(1)), delta_trace(2));
    }

    #[test]
    fn degeneracy_inserts_one() {
        let s = CycGen::degeneracy(1, 0).unwrap();
        let x = CocyclicTraceElement { level: 2, exponents: vec![1, 5, 1] };
        assert_eq!(pull_back(&s, &x).exponents, vec![1, 1]);
    }

    #[test]
    fn rotation_permutes_variables() {
        let t = CycGen::cyclic(2);
        let x = CocyclicTraceElement { level: 2, exponents: vec![1, 2, 3] };
        let y = pull_back(&t, &x);
        let mut sorted = y.exponents.clone();
        sorted.sort();
        assert_eq!(sorted, vec![1, 2, 3]);
        assert_ne!(y, x);
    }

    #[test]
    fn naturality_up_to_four() {
        let r = check_cocyclic_naturality(4);
        assert!(r.passed(), "{:?}", r.failures);
        let census = generator_census(4);
        assert_eq!(census[0].1, 2 + 3 + 4 + 5);
        assert_eq!(census[1].1, 1 + 2 + 3 + 4);
        assert_eq!(census[2].1, 5);
        assert_eq!(r.generators_checked, 14 + 10 + 5);
    }
}
