//! Assigns points of the torus-reduced variety to strata from their support
//! patterns.
//!
//! A point (X, Y) is represented only by which root coordinates are nonzero
//! and whether its Cartan part is nonzero. The stabilizer subsystem and the
//! torus polystability test both depend on nothing else. The classifier
//! assumes the support comes from an actual point of the variety; it does not
//! check membership of explicit matrices.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::atlas::Atlas;
use crate::exact_linalg::zero_in_relative_interior;
use crate::root_system::RootSystem;
use crate::subsystem::{closure, Subsystem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("point not polystable; no stratum assigned")]
    NotPolystable,
    #[error("root index {index} out of range (system has {len} roots)")]
    InvalidRoot { index: usize, len: usize },
    #[error("{0:?} is not a root")]
    NotARoot(Vec<i64>),
    #[error("subsystem {0:?} is missing from the atlas")]
    UnknownSubsystem(Subsystem),
}

/// Which weights of a point are present.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PointSupport {
    /// Roots α with (X_α, Y_α) ≠ (0, 0).
    pub support: BTreeSet<usize>,
    /// Whether the Cartan components are nonzero (weight 0 present).
    pub has_zero_weight: bool,
}

impl PointSupport {
    pub fn new(support: impl IntoIterator<Item = usize>, has_zero_weight: bool) -> Self {
        Self {
            support: support.into_iter().collect(),
            has_zero_weight,
        }
    }

    /// Support given as root coordinates in the simple-root basis.
    pub fn from_coordinates(rs: &RootSystem, coords: &[Vec<i64>], has_zero_weight: bool) -> Result<Self, ClassifyError> {
        let support = coords
            .iter()
            .map(|c| rs.index_of(c).ok_or_else(|| ClassifyError::NotARoot(c.clone())))
            .collect::<Result<_, _>>()?;
        Ok(Self {
            support,
            has_zero_weight,
        })
    }

    pub fn validate(&self, rs: &RootSystem) -> Result<(), ClassifyError> {
        match self.support.iter().find(|&&i| i >= rs.len()) {
            Some(&index) => Err(ClassifyError::InvalidRoot { index, len: rs.len() }),
            None => Ok(()),
        }
    }

    pub fn negated(&self, rs: &RootSystem) -> Self {
        Self {
            support: self.support.iter().map(|&i| rs.neg(i)).collect(),
            has_zero_weight: self.has_zero_weight,
        }
    }
}

/// Φ(X, Y) = Φ ∩ Span_ℤ(support).
pub fn support_subsystem(rs: &RootSystem, p: &PointSupport) -> Result<Subsystem, ClassifyError> {
    p.validate(rs)?;
    Ok(closure(rs, p.support.iter().copied()))
}

/// A torus orbit is closed iff 0 is in the relative interior of the convex
/// hull of the weights. With no weights at all the hull is empty.
pub fn is_polystable(rs: &RootSystem, p: &PointSupport) -> Result<bool, ClassifyError> {
    p.validate(rs)?;
    let mut weights: Vec<Vec<i64>> = p.support.iter().map(|&i| rs.root(i).to_vec()).collect();
    if p.has_zero_weight {
        weights.push(vec![0; rs.rank()]);
    }
    if weights.is_empty() {
        return Ok(false);
    }
    Ok(zero_in_relative_interior(&weights).expect("weights are nonempty and share the ambient rank"))
}

/// Stratum of a polystable point, fine and coarse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumAssignment {
    pub subsystem: Subsystem,
    /// Position of the subsystem in the atlas list.
    pub subsystem_index: usize,
    pub class_id: usize,
}

pub fn stratum_of(atlas: &Atlas, p: &PointSupport) -> Result<StratumAssignment, ClassifyError> {
    let rs = &atlas.root_system;
    if !is_polystable(rs, p)? {
        return Err(ClassifyError::NotPolystable);
    }
    let psi = support_subsystem(rs, p)?;
    let idx = atlas
        .subsystem_index(&psi)
        .ok_or(ClassifyError::UnknownSubsystem(psi))?;
    Ok(StratumAssignment {
        subsystem: psi,
        subsystem_index: idx,
        class_id: atlas.class_of[idx],
    })
}

/// "long"/"short" when every root of Ψ has the same length in a system with
/// two root lengths.
pub fn length_note(rs: &RootSystem, psi: &Subsystem) -> Option<&'static str> {
    if rs.is_simply_laced() || psi.is_empty() {
        return None;
    }
    let max = (0..rs.len()).map(|i| rs.norm(i)).max()?;
    let mut norms = psi.iter().map(|i| rs.norm(i));
    let first = norms.next()?;
    if !norms.all(|n| n == first) {
        return None;
    }
    Some(if first == max { "long" } else { "short" })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::TypeSpec;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(&s.parse::<TypeSpec>().unwrap()).unwrap()
    }

    #[test]
    fn support_examples() {
        let g2 = rs("G2");
        assert!(support_subsystem(&g2, &PointSupport::default()).unwrap().is_empty());
        let long = (0..12).find(|&i| g2.norm(i) == 6).unwrap();
        let pair = PointSupport::new([long, g2.neg(long)], false);
        let psi = support_subsystem(&g2, &pair).unwrap();
        assert_eq!(psi, Subsystem::from_indices([long, g2.neg(long)]));
        assert_eq!(length_note(&g2, &psi), Some("long"));

        let b2 = rs("B2");
        let short: Vec<usize> = (0..b2.n_positive()).filter(|&i| b2.norm(i) == 1).collect();
        let full = support_subsystem(&b2, &PointSupport::new(short, false)).unwrap();
        assert_eq!(full, Subsystem::full(8));
    }

    #[test]
    fn polystability_examples() {
        let g2 = rs("G2");
        let sym = PointSupport::new([0, g2.neg(0), 3, g2.neg(3)], false);
        assert!(is_polystable(&g2, &sym).unwrap());
        assert!(!is_polystable(&g2, &PointSupport::new([2], false)).unwrap());
        assert!(is_polystable(&g2, &PointSupport::new([], true)).unwrap());
        assert!(!is_polystable(&g2, &PointSupport::new([], false)).unwrap());
        assert!(!is_polystable(&g2, &PointSupport::new([2], true)).unwrap());
    }

    #[test]
    fn invalid_indices() {
        let a1 = rs("A1");
        assert_eq!(
            is_polystable(&a1, &PointSupport::new([5], false)),
            Err(ClassifyError::InvalidRoot { index: 5, len: 2 })
        );
        assert!(matches!(
            PointSupport::from_coordinates(&a1, &[vec![2]], false),
            Err(ClassifyError::NotARoot(_))
        ));
        let p = PointSupport::from_coordinates(&a1, &[vec![1], vec![-1]], false).unwrap();
        assert_eq!(p.support.len(), 2);
    }
}
