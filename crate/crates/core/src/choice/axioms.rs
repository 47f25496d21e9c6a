//! Exhaustive checkers for the axioms on social choice functions.
//!
//! Every checker scans profiles in rank order and returns the
//! lexicographically smallest counterexample (profile rank first, then voter,
//! then the rank of the second profile or misreport), so results are
//! reproducible.

use serde::Serialize;

use super::order::Alternative;
use super::profile::{Profile, ProfileSpace};
use super::scf::SocialChoiceFunction;
use crate::{Error, Result};

/// Largest profile space the exhaustive checkers accept.
pub const AXIOM_PROFILE_LIMIT: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "witness", rename_all = "snake_case")]
pub enum Check<W> {
    Holds,
    Fails(W),
}

impl<W> Check<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Check::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Check::Holds => None,
            Check::Fails(w) => Some(w),
        }
    }
}

/// `f(profile) = chosen`, every voter's order in `improved` is a
/// `chosen`-improvement of the matching order in `profile`, yet
/// `f(improved) != chosen`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonotonicityViolation {
    pub profile: Profile,
    pub improved: Profile,
    pub chosen: Alternative,
    pub chosen_after: Alternative,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnanimityViolation {
    pub profile: Profile,
    pub unanimous_top: Alternative,
    pub chosen: Alternative,
}

/// Voter `voter` strictly prefers (under their true order in `profile`)
/// the outcome obtained by reporting `misreport`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ManipulationWitness {
    pub profile: Profile,
    pub voter: usize,
    pub misreport: super::order::LinearOrder,
    pub truthful_outcome: Alternative,
    pub manipulated_outcome: Alternative,
}

impl ManipulationWitness {
    /// Re-evaluates `f` to confirm the manipulation.
    pub fn revalidate(&self, f: &SocialChoiceFunction) -> Result<bool> {
        let truthful = f.choose(&self.profile)?;
        let lie = f.choose(&self.profile.with_order(self.voter, self.misreport.clone()))?;
        Ok(truthful == self.truthful_outcome
            && lie == self.manipulated_outcome
            && lie != truthful
            && self.profile.orders[self.voter].prefers(lie, truthful)?)
    }
}

impl MonotonicityViolation {
    pub fn revalidate(&self, f: &SocialChoiceFunction) -> Result<bool> {
        let a = f.choose(&self.profile)?;
        let improved = self.profile.orders.iter().zip(&self.improved.orders).all(|(o, o2)| o.is_improvement_for(o2, a));
        Ok(a == self.chosen && improved && f.choose(&self.improved)? != a)
    }
}

/// Truth values of the four axioms entering the equivalence
/// "monotonic and unanimous iff surjective and strategy-proof".
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomSummary {
    pub monotonic: bool,
    pub unanimous: bool,
    pub surjective: bool,
    pub strategy_proof: bool,
}

impl AxiomSummary {
    pub fn equivalence_holds(&self) -> bool {
        (self.monotonic && self.unanimous) == (self.surjective && self.strategy_proof)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub monotonic: Check<MonotonicityViolation>,
    pub unanimous: Check<UnanimityViolation>,
    pub strategy_proof: Check<ManipulationWitness>,
    pub surjective: bool,
    pub unattained: Vec<Alternative>,
    pub dictator: Option<usize>,
}

impl AxiomReport {
    pub fn summary(&self) -> AxiomSummary {
        AxiomSummary {
            monotonic: self.monotonic.holds(),
            unanimous: self.unanimous.holds(),
            surjective: self.surjective,
            strategy_proof: self.strategy_proof.holds(),
        }
    }
}

/// A tabulated social choice function with the lookup tables the checkers
/// share.
pub struct AxiomChecker {
    space: ProfileSpace,
    table: Vec<usize>,
    /// `improvements[o][a]`: ranks of the orders that are `a`-improvements of
    /// order `o`, ascending.
    improvements: Vec<Vec<Vec<usize>>>,
}

impl AxiomChecker {
    pub fn new(f: &SocialChoiceFunction) -> Result<Self> {
        let space = f.space()?;
        if space.len() > AXIOM_PROFILE_LIMIT {
            return Err(Error::Envelope {
                n: space.alternatives(),
                voters: space.voters(),
                reason: format!("{} profiles exceeds the limit of {AXIOM_PROFILE_LIMIT}", space.len()),
            });
        }
        let table = f.tabulate(&space);
        let improvements = improvement_lists(&space);
        Ok(Self { space, table, improvements })
    }

    pub fn space(&self) -> &ProfileSpace {
        &self.space
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    fn profile(&self, rank: usize) -> Profile {
        self.space.profile_of_rank(rank).expect("rank in range")
    }

    pub fn monotonic(&self) -> Check<MonotonicityViolation> {
        let voters = self.space.voters();
        let places: Vec<usize> = (0..voters).map(|l| self.space.place_value(l)).collect();
        for rank in 0..self.space.len() {
            let a = self.table[rank];
            let digits = self.space.digits(rank).expect("rank in range");
            let lists: Vec<&[usize]> = digits.iter().map(|&d| self.improvements[d][a].as_slice()).collect();
            let mut cursor = vec![0usize; voters];
            loop {
                let other: usize = (0..voters).map(|l| lists[l][cursor[l]] * places[l]).sum();
                if self.table[other] != a {
                    return Check::Fails(MonotonicityViolation {
                        profile: self.profile(rank),
                        improved: self.profile(other),
                        chosen: Alternative(a),
                        chosen_after: Alternative(self.table[other]),
                    });
                }
                if !advance(&mut cursor, &lists) {
                    break;
                }
            }
        }
        Check::Holds
    }

    pub fn unanimous(&self) -> Check<UnanimityViolation> {
        let orders = self.space.orders();
        for rank in 0..self.space.len() {
            let digits = self.space.digits(rank).expect("rank in range");
            let top = orders[digits[0]].top();
            if digits.iter().all(|&d| orders[d].top() == top) && self.table[rank] != top.0 {
                return Check::Fails(UnanimityViolation {
                    profile: self.profile(rank),
                    unanimous_top: top,
                    chosen: Alternative(self.table[rank]),
                });
            }
        }
        Check::Holds
    }

    pub fn strategy_proof(&self) -> Check<ManipulationWitness> {
        let orders = self.space.orders();
        for rank in 0..self.space.len() {
            let digits = self.space.digits(rank).expect("rank in range");
            let truthful = self.table[rank];
            for (voter, &d) in digits.iter().enumerate() {
                let place = self.space.place_value(voter);
                let base = rank - d * place;
                let truth = &orders[d];
                for lie in 0..orders.len() {
                    let outcome = self.table[base + lie * place];
                    if truth.beats(outcome, truthful) {
                        return Check::Fails(ManipulationWitness {
                            profile: self.profile(rank),
                            voter,
                            misreport: orders[lie].clone(),
                            truthful_outcome: Alternative(truthful),
                            manipulated_outcome: Alternative(outcome),
                        });
                    }
                }
            }
        }
        Check::Holds
    }

    /// Alternatives never chosen, ascending.
    pub fn unattained(&self) -> Vec<Alternative> {
        let mut hit = vec![false; self.space.alternatives()];
        for &a in &self.table {
            hit[a] = true;
        }
        (0..hit.len()).filter(|&a| !hit[a]).map(Alternative).collect()
    }

    pub fn surjective(&self) -> bool {
        self.unattained().is_empty()
    }

    /// Smallest voter whose top is chosen at every profile.
    pub fn dictator(&self) -> Option<usize> {
        let orders = self.space.orders();
        (0..self.space.voters()).find(|&l| {
            (0..self.space.len()).all(|rank| {
                let d = self.space.digits(rank).expect("rank in range")[l];
                self.table[rank] == orders[d].top().0
            })
        })
    }

    pub fn report(&self) -> AxiomReport {
        AxiomReport {
            monotonic: self.monotonic(),
            unanimous: self.unanimous(),
            strategy_proof: self.strategy_proof(),
            surjective: self.surjective(),
            unattained: self.unattained(),
            dictator: self.dictator(),
        }
    }

    pub fn summary(&self) -> AxiomSummary {
        AxiomSummary {
            monotonic: self.monotonic().holds(),
            unanimous: self.unanimous().holds(),
            surjective: self.surjective(),
            strategy_proof: self.strategy_proof().holds(),
        }
    }
}

/// `result[o][a]` lists the ranks of the `a`-improvements of order `o`.
pub(crate) fn improvement_lists(space: &ProfileSpace) -> Vec<Vec<Vec<usize>>> {
    let orders = space.orders();
    let n = space.alternatives();
    orders
        .iter()
        .map(|o| {
            (0..n)
                .map(|a| (0..orders.len()).filter(|&r| o.is_improvement_for(&orders[r], Alternative(a))).collect())
                .collect()
        })
        .collect()
}

/// Odometer step over `lists`, last voter fastest. Returns false once
/// exhausted.
fn advance(cursor: &mut [usize], lists: &[&[usize]]) -> bool {
    for l in (0..cursor.len()).rev() {
        cursor[l] += 1;
        if cursor[l] < lists[l].len() {
            return true;
        }
        cursor[l] = 0;
    }
    false
}

pub fn check_monotonic(f: &SocialChoiceFunction) -> Result<Check<MonotonicityViolation>> {
    Ok(AxiomChecker::new(f)?.monotonic())
}

pub fn check_unanimous(f: &SocialChoiceFunction) -> Result<Check<UnanimityViolation>> {
    Ok(AxiomChecker::new(f)?.unanimous())
}

pub fn check_strategy_proof(f: &SocialChoiceFunction) -> Result<Check<ManipulationWitness>> {
    Ok(AxiomChecker::new(f)?.strategy_proof())
}

pub fn check_surjective(f: &SocialChoiceFunction) -> Result<bool> {
    Ok(AxiomChecker::new(f)?.surjective())
}

pub fn dictator_of(f: &SocialChoiceFunction) -> Result<Option<usize>> {
    Ok(AxiomChecker::new(f)?.dictator())
}

/// Evaluates all four predicates; the equivalence is
/// [`AxiomSummary::equivalence_holds`].
pub fn check_axiom_equivalence(f: &SocialChoiceFunction) -> Result<AxiomSummary> {
    Ok(AxiomChecker::new(f)?.summary())
}
