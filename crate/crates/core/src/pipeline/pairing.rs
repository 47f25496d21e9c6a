use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use super::basis::{standard_basis, standard_tuple};
use super::induced::{induced_scf_map, InducedScfMap, ValidationLevel};
use super::nerves::nerve_na;
use super::orientation::h_chain;
use super::{check_homology_envelope, ProfileNerve};
use crate::choice::{dictator_of, SocialChoiceFunction};
use crate::homology::{ChainVector, Integer, SimplexKey, SimplicialComplex};
use crate::{Error, Result};

/// `∂` of the full simplex on the `n` indices: a cycle of `N_A`.
pub fn fundamental_cycle_na(n: usize) -> ChainVector {
    ChainVector::simplex(SimplexKey::from_sorted((0..n).collect())).boundary()
}

/// The multiple of the fundamental cycle that `z` is. `N_A` has no faces
/// above degree `n - 2`, so every top-degree cycle is such a multiple.
pub fn pairing_with_dstar(na: &SimplicialComplex, z: &ChainVector) -> Result<Integer> {
    let n = na.vertex_count();
    if z.dimension() + 2 != n {
        return Err(Error::Precondition(format!("chain of dimension {} on N_A with n = {n}", z.dimension())));
    }
    if !z.is_supported_on(na) {
        return Err(Error::Precondition("chain is not supported on N_A".into()));
    }
    if !z.boundary().is_zero() {
        return Err(Error::NotACycle);
    }
    let za = fundamental_cycle_na(n);
    let m = z.coefficient(&SimplexKey::from_sorted((1..n).collect()));
    if za.scaled(&m) != *z {
        return Err(Error::Internal("top cycle of N_A is not a multiple of the fundamental cycle".into()));
    }
    Ok(m)
}

#[derive(Clone, Debug, Serialize)]
pub struct PairingAnalysis {
    /// Image index of every profile-nerve vertex.
    pub vertex_images: Vec<usize>,
    pub validation: ValidationLevel,
    /// Pairing of `f#(h(ĝ, ..., ĝ))` before normalisation; `±1`.
    pub unanimity_class: i64,
    /// Pairings of `f#(h_l)` before normalisation.
    pub raw_pairings: Vec<i64>,
    /// `unanimity_class * raw_pairings`.
    pub pairing_vector: Vec<i64>,
    pub dictator: usize,
    pub combinatorial_dictator: Option<usize>,
}

/// Everything the pairing needs for one instance.
pub struct PairingContext {
    nerve: ProfileNerve,
    na: SimplicialComplex,
    basis: Vec<ChainVector>,
    unanimity_cycle: ChainVector,
}

impl PairingContext {
    pub fn new(n: usize, voters: usize) -> Result<Self> {
        check_homology_envelope(n, voters)?;
        let nerve = ProfileNerve::new(n, voters)?;
        let na = nerve_na(n)?;
        let basis = standard_basis(&nerve)?;
        let hat = standard_tuple(n, voters, 0)?[0].clone();
        let unanimity_cycle = h_chain(nerve.layout(), &vec![hat; voters])?;
        for h in basis.iter().chain([&unanimity_cycle]) {
            if !h.is_supported_on(nerve.complex()) {
                return Err(Error::Internal("h leaves the profile nerve".into()));
            }
        }
        Ok(Self { nerve, na, basis, unanimity_cycle })
    }

    pub fn nerve(&self) -> &ProfileNerve {
        &self.nerve
    }

    pub fn na(&self) -> &SimplicialComplex {
        &self.na
    }

    pub fn induced(&self, f: &SocialChoiceFunction, validation: ValidationLevel) -> Result<InducedScfMap> {
        induced_scf_map(f, &self.nerve, &self.na, validation)
    }

    /// `(f#(h(ĝ, ..., ĝ)), d*)`; unanimity forces magnitude one.
    pub fn unanimity_class(&self, induced: &InducedScfMap) -> Result<i64> {
        let u = pairing_with_dstar(&self.na, &induced.map.apply(&self.unanimity_cycle))?;
        if !u.abs().is_one() {
            return Err(Error::Internal(format!("unanimity class pairs to {u}, expected ±1")));
        }
        Ok(u.to_i64().expect("unit"))
    }

    pub fn raw_pairings(&self, induced: &InducedScfMap) -> Result<Vec<i64>> {
        self.basis
            .iter()
            .map(|h| {
                let m = pairing_with_dstar(&self.na, &induced.map.apply(h))?;
                m.to_i64().ok_or_else(|| Error::Internal(format!("pairing {m} overflows")))
            })
            .collect()
    }

    /// Full pipeline: `f^s`, normalisation, pairing vector, and the
    /// cross-check against the combinatorial dictator.
    pub fn analyze(&self, f: &SocialChoiceFunction, validation: ValidationLevel) -> Result<PairingAnalysis> {
        let induced = self.induced(f, validation)?;
        for k in 0..=self.nerve.alternatives() - 1 {
            induced.map.check_chain_map(self.nerve.complex(), k)?;
        }
        let u = self.unanimity_class(&induced)?;
        let raw = self.raw_pairings(&induced)?;
        let vector: Vec<i64> = raw.iter().map(|r| r * u).collect();
        let ones: Vec<usize> = (0..vector.len()).filter(|&l| vector[l] == 1).collect();
        let unit = ones.len() == 1 && vector.iter().all(|&x| x == 0 || x == 1);
        if !unit {
            return Err(Error::Internal(format!("pairing vector {vector:?} is not a standard unit vector")));
        }
        let dictator = ones[0];
        let combinatorial = dictator_of(f)?;
        if combinatorial != Some(dictator) {
            return Err(Error::Internal(format!(
                "homology finds dictator {dictator}, direct check finds {combinatorial:?}"
            )));
        }
        Ok(PairingAnalysis {
            vertex_images: induced.images,
            validation: induced.validation,
            unanimity_class: u,
            raw_pairings: raw,
            pairing_vector: vector,
            dictator,
            combinatorial_dictator: combinatorial,
        })
    }
}

pub fn unanimity_class(f: &SocialChoiceFunction) -> Result<i64> {
    let cx = PairingContext::new(f.alternatives(), f.voters())?;
    let induced = cx.induced(f, ValidationLevel::ProbeOnly)?;
    cx.unanimity_class(&induced)
}

pub fn pairing_vector(f: &SocialChoiceFunction) -> Result<Vec<i64>> {
    Ok(PairingContext::new(f.alternatives(), f.voters())?.analyze(f, ValidationLevel::ProbeOnly)?.pairing_vector)
}

pub fn dictator_via_homology(f: &SocialChoiceFunction) -> Result<usize> {
    Ok(PairingContext::new(f.alternatives(), f.voters())?.analyze(f, ValidationLevel::ProbeOnly)?.dictator)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_of_multiples() {
        let na = nerve_na(4).unwrap();
        let za = fundamental_cycle_na(4);
        assert_eq!(pairing_with_dstar(&na, &za).unwrap(), Integer::from(1));
        assert_eq!(pairing_with_dstar(&na, &ChainVector::zero(2)).unwrap(), Integer::from(0));
        assert_eq!(pairing_with_dstar(&na, &za.scaled(&Integer::from(-3))).unwrap(), Integer::from(-3));
        let face = ChainVector::simplex(SimplexKey::new(vec![0, 1, 2]).unwrap());
        assert!(matches!(pairing_with_dstar(&na, &face), Err(Error::NotACycle)));
    }

    #[test]
    fn dictators_at_three_two() {
        let cx = PairingContext::new(3, 2).unwrap();
        for l in 0..2 {
            let f = SocialChoiceFunction::dictatorship(3, 2, l).unwrap();
            let a = cx.analyze(&f, ValidationLevel::Exhaustive).unwrap();
            let mut e = vec![0; 2];
            e[l] = 1;
            assert_eq!(a.pairing_vector, e);
            assert_eq!(a.dictator, l);
            assert_eq!(a.unanimity_class.abs(), 1);
        }
    }
}
