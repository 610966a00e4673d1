//! One-dimensional representation homology, and degree-0 representation rings.

mod derived;
mod gln;
mod poly;
mod window;

use serde::Serialize;

pub use derived::{free_graded_commutative, hr_degree0, hr_derived_abelianization, HrAnswer, HrDegree0, WeightRow};
pub use gln::{rep_ring_gln_degree0, GenericMatrices, GlnRepRing};
pub use poly::{Poly, PolyMatrix};
pub use window::{hr_bruteforce_window, weight_label, MonomialComplex, WindowReport};

use crate::exactlin::AbelianGroup;
use crate::groupkit::SimplicialGroupModel;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HrError {
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("degree {max_degree} is outside the window of a model truncated at {truncation}: {detail}")]
    Window { max_degree: usize, truncation: usize, detail: String },
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    LinAlg(#[from] crate::exactlin::LinAlgError),
}

/// Homology in degree `n` needs levels up to `n + 1` and one more for the validity margin.
fn check_window(m: &SimplicialGroupModel, n: usize) -> Result<(), HrError> {
    if n + 2 > m.truncation() {
        return Err(HrError::Window {
            max_degree: n,
            truncation: m.truncation(),
            detail: format!("need truncation at least {}", n + 2),
        });
    }
    Ok(())
}

/// `Q[A]` for a finitely generated abelian group `A = Z^r + Z/t_1 + ...`: Laurent variables
/// `t1..tr` and torsion variables `u1..uk` with `u_i^{t_i} = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LaurentRing {
    pub laurent_variables: Vec<String>,
    pub torsion_variables: Vec<(String, String)>,
}

impl LaurentRing {
    pub fn of(a: &AbelianGroup) -> Self {
        Self {
            laurent_variables: (1..=a.free_rank).map(|i| format!("t{i}")).collect(),
            torsion_variables: a.torsion.iter().enumerate().map(|(i, t)| (format!("u{}", i + 1), t.to_string())).collect(),
        }
    }

    /// Variable names in coordinate order: torsion first, then free.
    pub fn names(&self) -> Vec<String> {
        self.torsion_variables.iter().map(|(u, _)| u.clone()).chain(self.laurent_variables.iter().cloned()).collect()
    }
}

impl std::fmt::Display for LaurentRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut vars: Vec<String> = self.torsion_variables.iter().map(|(u, _)| u.clone()).collect();
        vars.extend(self.laurent_variables.iter().map(|t| format!("{t}^±1")));
        if vars.is_empty() {
            return write!(f, "Q");
        }
        write!(f, "Q[{}]", vars.join(", "))?;
        if !self.torsion_variables.is_empty() {
            let rels: Vec<String> = self.torsion_variables.iter().map(|(u, t)| format!("{u}^{t} - 1")).collect();
            write!(f, "/({})", rels.join(", "))?;
        }
        Ok(())
    }
}
