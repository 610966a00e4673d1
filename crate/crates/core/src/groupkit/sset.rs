use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::GroupError;

/// A face of a non-degenerate simplex: `η^* y` for a non-degenerate `y`, or the basepoint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceRef {
    /// `None` is the (degenerate) basepoint.
    #[serde(default)]
    pub simplex: Option<String>,
    /// Monotone surjection onto `[dim y]`, identity when omitted.
    #[serde(default)]
    pub eta: Option<Vec<usize>>,
}

impl FaceRef {
    pub fn base() -> Self {
        Self { simplex: None, eta: None }
    }

    pub fn to(name: &str) -> Self {
        Self { simplex: Some(name.into()), eta: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NondegSimplex {
    pub name: String,
    pub dim: usize,
    pub faces: Vec<FaceRef>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedSimplicialSetJson {
    pub simplices: Vec<NondegSimplex>,
}

/// A simplicial set with a single vertex, given by its non-degenerate simplices of positive
/// dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedSimplicialSet {
    simplices: Vec<NondegSimplex>,
}

/// Element of a level in normal form: basepoint or `η^* y`.
type Elem = Option<(usize, Vec<usize>)>;

impl ReducedSimplicialSet {
    pub fn new(simplices: Vec<NondegSimplex>) -> Result<Self, GroupError> {
        let s = Self { simplices };
        s.validate()?;
        Ok(s)
    }

    pub fn from_json(j: &ReducedSimplicialSetJson) -> Result<Self, GroupError> {
        Self::new(j.simplices.clone())
    }

    pub fn to_json(&self) -> ReducedSimplicialSetJson {
        ReducedSimplicialSetJson { simplices: self.simplices.clone() }
    }

    pub fn simplices(&self) -> &[NondegSimplex] {
        &self.simplices
    }

    /// One vertex and one edge.
    pub fn circle() -> Self {
        Self::new(vec![NondegSimplex { name: "s".into(), dim: 1, faces: vec![FaceRef::base(), FaceRef::base()] }])
            .expect("circle is valid")
    }

    /// Two loops `a`, `b` and a 2-simplex with faces `(a, b, *)`; homotopy equivalent to a circle.
    pub fn two_edge_circle() -> Self {
        let edge = |n: &str| NondegSimplex { name: n.into(), dim: 1, faces: vec![FaceRef::base(), FaceRef::base()] };
        Self::new(vec![
            edge("a"),
            edge("b"),
            NondegSimplex { name: "f".into(), dim: 2, faces: vec![FaceRef::to("a"), FaceRef::to("b"), FaceRef::base()] },
        ])
        .expect("two-edge circle is valid")
    }

    /// `RP^2`: one edge `a` and a triangle with faces `(a, *, a)`.
    pub fn projective_plane() -> Self {
        Self::new(vec![
            NondegSimplex { name: "a".into(), dim: 1, faces: vec![FaceRef::base(), FaceRef::base()] },
            NondegSimplex { name: "f".into(), dim: 2, faces: vec![FaceRef::to("a"), FaceRef::base(), FaceRef::to("a")] },
        ])
        .expect("projective plane is valid")
    }

    /// `S^n` as one vertex and one `n`-simplex with all faces at the basepoint.
    pub fn sphere(n: usize) -> Self {
        Self::new(vec![NondegSimplex { name: "s".into(), dim: n, faces: vec![FaceRef::base(); n + 1] }])
            .expect("sphere is valid")
    }

    fn resolved(&self) -> Result<Vec<Vec<Elem>>, GroupError> {
        let mut index = BTreeMap::new();
        for (k, s) in self.simplices.iter().enumerate() {
            if s.dim == 0 {
                return Err(GroupError::InvalidModel(format!("{:?}: a reduced simplicial set has one vertex", s.name)));
            }
            if index.insert(s.name.clone(), k).is_some() {
                return Err(GroupError::InvalidModel(format!("duplicate simplex {:?}", s.name)));
            }
        }
        self.simplices
            .iter()
            .map(|s| {
                if s.faces.len() != s.dim + 1 {
                    return Err(GroupError::InvalidModel(format!(
                        "{:?} of dimension {} has {} faces",
                        s.name,
                        s.dim,
                        s.faces.len()
                    )));
                }
                s.faces
                    .iter()
                    .map(|f| match &f.simplex {
                        None => Ok(None),
                        Some(name) => {
                            let k = *index
                                .get(name)
                                .ok_or_else(|| GroupError::InvalidModel(format!("unknown simplex {name:?}")))?;
                            let d = self.simplices[k].dim;
                            let p = s.dim - 1;
                            let eta = f.eta.clone().unwrap_or_else(|| (0..=p).collect());
                            let ok = eta.len() == p + 1
                                && eta.first() == Some(&0)
                                && eta.last() == Some(&d)
                                && eta.windows(2).all(|w| w[1] == w[0] || w[1] == w[0] + 1);
                            if !ok {
                                return Err(GroupError::InvalidModel(format!(
                                    "face {eta:?} of {:?} is not a surjection [{p}] -> [{d}]",
                                    s.name
                                )));
                            }
                            Ok(Some((k, eta)))
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// `d_i` of an element at level `q`.
    fn face_of(&self, faces: &[Vec<Elem>], x: &Elem, q: usize, i: usize) -> Elem {
        let (c, eta) = x.as_ref()?;
        let theta: Vec<usize> = (0..q).map(|k| eta[if k < i { k } else { k + 1 }]).collect();
        let p = self.simplices[*c].dim;
        match (0..=p).find(|v| !theta.contains(v)) {
            None => Some((*c, theta)),
            Some(k0) => {
                let eta1: Vec<usize> = theta.iter().map(|&v| if v < k0 { v } else { v - 1 }).collect();
                let (c2, eta2) = faces[*c][k0].as_ref()?;
                Some((*c2, eta1.iter().map(|&v| eta2[v]).collect()))
            }
        }
    }

    /// Checks `d_i d_j = d_{j-1} d_i` on every non-degenerate simplex.
    pub fn validate(&self) -> Result<(), GroupError> {
        let faces = self.resolved()?;
        for (c, s) in self.simplices.iter().enumerate() {
            let p = s.dim;
            if p < 2 {
                continue;
            }
            let x: Elem = Some((c, (0..=p).collect()));
            for j in 1..=p {
                for i in 0..j {
                    let a = self.face_of(&faces, &self.face_of(&faces, &x, p, j), p - 1, i);
                    let b = self.face_of(&faces, &self.face_of(&faces, &x, p, i), p - 1, j - 1);
                    if a != b {
                        return Err(GroupError::InvalidModel(format!(
                            "simplex {:?}: d_{i} d_{j} = d_{} d_{i} fails",
                            s.name,
                            j - 1
                        )));
                    }
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
    fn standard_examples_validate() {
        ReducedSimplicialSet::circle();
        ReducedSimplicialSet::two_edge_circle();
        ReducedSimplicialSet::sphere(3);
    }

    #[test]
    fn inconsistent_faces_are_rejected() {
        let edge = |n: &str| NondegSimplex { name: n.into(), dim: 1, faces: vec![FaceRef::base(), FaceRef::base()] };
        let bad = NondegSimplex {
            name: "t".into(),
            dim: 3,
            faces: vec![FaceRef::base(), FaceRef::base(), FaceRef::base(), FaceRef::base()],
        };
        assert!(ReducedSimplicialSet::new(vec![edge("a"), bad.clone()]).is_ok());
        let mut bad2 = bad;
        bad2.faces[0] = FaceRef { simplex: Some("a".into()), eta: Some(vec![0, 1, 1]) };
        assert!(ReducedSimplicialSet::new(vec![edge("a"), bad2]).is_err());
        assert!(ReducedSimplicialSet::new(vec![NondegSimplex { name: "v".into(), dim: 0, faces: vec![] }]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let k = ReducedSimplicialSet::two_edge_circle();
        let text = serde_json::to_string(&k.to_json()).unwrap();
        let back: ReducedSimplicialSetJson = serde_json::from_str(&text).unwrap();
        assert_eq!(ReducedSimplicialSet::from_json(&back).unwrap(), k);
    }
}
