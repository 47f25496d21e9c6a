use serde::{Deserialize, Serialize};

use super::nerves::signatures;
use super::ProfileNerve;
use crate::choice::{AxiomChecker, LinearOrder, SocialChoiceFunction};
use crate::homology::{SimplicialComplex, SimplicialMap};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ValidationLevel {
    #[default]
    ProbeOnly,
    Exhaustive,
}

impl ValidationLevel {
    /// Exhaustive for up to 216 profiles, probe-only beyond.
    pub fn default_for(profiles: usize) -> Self {
        if profiles <= 216 {
            ValidationLevel::Exhaustive
        } else {
            ValidationLevel::ProbeOnly
        }
    }
}

/// The vertex map `f^s` from the profile nerve to `N_A`, with the probe
/// outcomes it was read from.
#[derive(Clone, Debug)]
pub struct InducedScfMap {
    pub map: SimplicialMap,
    /// `images[v]`: the index `x` with `f(U_v) ⊆ A - {a_x}`.
    pub images: Vec<usize>,
    pub probe_outcomes: Vec<usize>,
    pub validation: ValidationLevel,
}

/// The canonical profile in `U_ij^σ`: each voter puts `a_i, a_j` on top in
/// the order `σ_l` asks for, then the rest ascending.
pub fn probe_profile(nerve: &ProfileNerve, v: usize) -> Vec<LinearOrder> {
    let layout = nerve.layout();
    let n = layout.alternatives();
    let (p, code) = layout.split(v);
    let pair = layout.pairs()[p];
    (0..layout.voters())
        .map(|l| {
            let top = if layout.sign_in_code(code, l).is_plus() { [pair.i, pair.j] } else { [pair.j, pair.i] };
            let ranking = top.into_iter().chain((0..n).filter(|&a| a != pair.i && a != pair.j)).collect();
            LinearOrder::new(ranking).expect("a permutation")
        })
        .collect()
}

/// Builds `f^s`. On `U_ij^σ` a monotonic, unanimous `f` only picks `a_i`
/// or `a_j`; the probe tells which one is never picked, and the vertex
/// maps to that alternative's index.
pub fn induced_scf_map(
    f: &SocialChoiceFunction,
    nerve: &ProfileNerve,
    na: &SimplicialComplex,
    validation: ValidationLevel,
) -> Result<InducedScfMap> {
    let layout = nerve.layout();
    if f.alternatives() != layout.alternatives() || f.voters() != layout.voters() {
        return Err(Error::Precondition("rule and nerve have different (n, N)".into()));
    }
    let checker = AxiomChecker::new(f)?;
    if !checker.monotonic().holds() || !checker.unanimous().holds() {
        return Err(Error::Precondition("the induced map needs a monotonic and unanimous rule".into()));
    }
    let space = checker.space();
    let table = checker.table();

    let mut images = Vec::with_capacity(layout.vertex_count());
    let mut probe_outcomes = Vec::with_capacity(layout.vertex_count());
    for v in 0..layout.vertex_count() {
        let pair = layout.pairs()[layout.split(v).0];
        let probe = crate::choice::Profile::new(probe_profile(nerve, v));
        let y = table[space.rank_of_profile(&probe)?];
        let image = if y == pair.i {
            pair.j
        } else if y == pair.j {
            pair.i
        } else {
            return Err(Error::Internal(format!(
                "probe for vertex {} chose a_{y}, outside its pair",
                layout.vertex(v)
            )));
        };
        images.push(image);
        probe_outcomes.push(y);
    }

    if validation == ValidationLevel::Exhaustive {
        for (rank, sig) in signatures(layout, space).into_iter().enumerate() {
            if let Some(&v) = sig.iter().find(|&&v| table[rank] == images[v]) {
                return Err(Error::Internal(format!(
                    "a_{} is chosen at profile {rank} inside the set of vertex {}",
                    images[v],
                    layout.vertex(v)
                )));
            }
        }
    }

    let map = SimplicialMap::new(images.clone(), nerve.complex(), na)?;
    Ok(InducedScfMap { map, images, probe_outcomes, validation })
}
