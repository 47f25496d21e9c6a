//! The covers of orders, profiles and alternatives, their nerves, the
//! simplicial map induced by a social choice function, and the homology
//! computations that recover a dictator from it.

pub mod arrangement;
pub mod basis;
pub mod enumerate;
pub mod induced;
pub mod layout;
pub mod nerves;
pub mod orientation;
pub mod pairing;

pub use arrangement::{arrangement_survey, coloring_dimension, ArrangementSurvey, Coloring, ColoringDimension};
pub use basis::{
    basis_check, diagonal_inclusion, homologous_tuple_check, permute_voters, projection_map, standard_basis,
    standard_tuple, BasisReport,
};
pub use enumerate::{enumerate_monotonic_unanimous, Enumeration, DEFAULT_NODE_BUDGET};
pub use induced::{induced_scf_map, probe_profile, InducedScfMap, ValidationLevel};
pub use layout::{PairIndex, ProfileNerveVertex, Sign, SignVector, VertexLayout};
pub use nerves::{cover_a, cover_p, cover_profiles, nerve_na, nerve_nm, nerve_np, nerve_nprofiles};
pub use orientation::{
    classify_orientation_cycle, delta_simplex, generator_test, h_chain, GeneratorReport, Orientation, OrientationClass,
};
pub use pairing::{
    dictator_via_homology, fundamental_cycle_na, pairing_vector, pairing_with_dstar, unanimity_class, PairingAnalysis,
    PairingContext,
};

use crate::choice::ProfileSpace;
use crate::homology::SimplicialComplex;
use crate::{Error, Result};

/// Largest profile space whose nerve is built.
pub const NERVE_PROFILE_LIMIT: usize = 20_000;

/// Largest profile space on which homology is computed.
pub const HOMOLOGY_PROFILE_LIMIT: usize = 600;

pub(crate) fn check_profiles(n: usize, voters: usize, limit: usize) -> Result<ProfileSpace> {
    let space = ProfileSpace::new(n, voters)?;
    if space.len() > limit {
        return Err(Error::Envelope {
            n,
            voters,
            reason: format!("{} profiles exceeds the limit of {limit}", space.len()),
        });
    }
    Ok(space)
}

/// The homology stages need `n >= 3` (a nontrivial degree `n - 2`) and at
/// most [`HOMOLOGY_PROFILE_LIMIT`] profiles.
pub fn check_homology_envelope(n: usize, voters: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::Envelope { n, voters, reason: "need n >= 3".into() });
    }
    check_profiles(n, voters, HOMOLOGY_PROFILE_LIMIT).map(|_| ())
}

/// The profile nerve together with its vertex numbering.
#[derive(Clone, Debug)]
pub struct ProfileNerve {
    layout: VertexLayout,
    complex: SimplicialComplex,
}

impl ProfileNerve {
    pub fn new(n: usize, voters: usize) -> Result<Self> {
        let layout = VertexLayout::new(n, voters)?;
        let complex = nerve_nprofiles(n, voters)?;
        Ok(Self { layout, complex })
    }

    pub fn layout(&self) -> &VertexLayout {
        &self.layout
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn alternatives(&self) -> usize {
        self.layout.alternatives()
    }

    pub fn voters(&self) -> usize {
        self.layout.voters()
    }
}
