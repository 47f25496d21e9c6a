use std::collections::HashSet;

use super::complex::{SimplexKey, SimplicialComplex};
use crate::{Error, Result};

/// An indexed family of subsets of the ground set `0..ground_size`.
#[derive(Clone, Debug)]
pub struct CoverData {
    ground_size: usize,
    sets: Vec<Vec<bool>>,
    labels: Vec<String>,
}

impl CoverData {
    pub fn new(ground_size: usize, sets: Vec<Vec<bool>>, labels: Vec<String>) -> Result<Self> {
        if sets.is_empty() {
            return Err(Error::EmptyCover);
        }
        if labels.len() != sets.len() {
            return Err(Error::Precondition(format!("{} labels for {} sets", labels.len(), sets.len())));
        }
        if let Some((set, mask)) = sets.iter().enumerate().find(|(_, m)| m.len() != ground_size) {
            return Err(Error::CoverMask { set, got: mask.len(), expected: ground_size });
        }
        Ok(Self { ground_size, sets, labels })
    }

    /// Builds the masks from a membership predicate.
    pub fn from_predicate(
        ground_size: usize,
        labels: Vec<String>,
        member: impl Fn(usize, usize) -> bool,
    ) -> Result<Self> {
        let sets = (0..labels.len()).map(|s| (0..ground_size).map(|e| member(s, e)).collect()).collect();
        Self::new(ground_size, sets, labels)
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn set_size(&self, s: usize) -> usize {
        self.sets[s].iter().filter(|&&b| b).count()
    }

    pub fn contains(&self, s: usize, e: usize) -> bool {
        self.sets[s][e]
    }

    /// Ground elements lying in no set.
    pub fn uncovered(&self) -> Vec<usize> {
        (0..self.ground_size).filter(|&e| self.sets.iter().all(|m| !m[e])).collect()
    }

    /// Indices of the sets containing `e`.
    pub fn signature(&self, e: usize) -> SimplexKey {
        SimplexKey::from_sorted((0..self.sets.len()).filter(|&s| self.sets[s][e]).collect())
    }
}

/// Nerve of the cover: the downward closure of the membership signatures of
/// the ground elements. Any nonempty intersection contains some element `e`,
/// whose signature then contains the face.
pub fn nerve(cover: &CoverData) -> Result<SimplicialComplex> {
    if cover.is_empty() {
        return Err(Error::EmptyCover);
    }
    let signatures: HashSet<SimplexKey> =
        (0..cover.ground_size()).map(|e| cover.signature(e)).filter(|s| !s.is_empty()).collect();
    let mut signatures: Vec<SimplexKey> = signatures.into_iter().collect();
    signatures.sort_unstable();
    SimplicialComplex::from_maximal_faces(cover.len(), &signatures)
}
