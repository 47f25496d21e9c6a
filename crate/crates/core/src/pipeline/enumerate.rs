use serde::Serialize;

use crate::choice::axioms::improvement_lists;
use crate::choice::{AxiomChecker, ProfileSpace, SocialChoiceFunction};
use crate::{Error, Result};

pub const DEFAULT_NODE_BUDGET: u64 = 5_000_000;

/// Profiles above this count are not searched.
pub const ENUMERATION_PROFILE_LIMIT: usize = 600;

#[derive(Clone, Debug, Serialize)]
pub struct Enumeration {
    pub n: usize,
    pub voters: usize,
    /// Completed tables in discovery order, indexed by profile rank.
    pub tables: Vec<Vec<usize>>,
    pub nodes: u64,
    /// Dictator of each table, from the direct check.
    pub dictators: Vec<Option<usize>>,
}

impl Enumeration {
    pub fn all_dictatorial(&self) -> bool {
        self.dictators.iter().all(Option::is_some)
    }
}

struct Search {
    /// `forced[p][a]`: profiles that must choose `a` once `p` chooses `a`.
    forced: Vec<Vec<Vec<usize>>>,
    /// `forcing[q][a]`: profiles `p` with `q` in `forced[p][a]`.
    forcing: Vec<Vec<Vec<usize>>>,
    n: usize,
    budget: u64,
    nodes: u64,
    solutions: Vec<Vec<usize>>,
}

/// All monotonic and unanimous tables, by backtracking in profile-rank
/// order with forward checking. Choosing `a` at `p` fixes `a` on every
/// `a`-improvement of `p` and removes `a` from every profile that `p`
/// is itself an `a`-improvement of.
pub fn enumerate_monotonic_unanimous(n: usize, voters: usize, budget: u64) -> Result<Enumeration> {
    let space = ProfileSpace::new(n, voters)?;
    if space.len() > ENUMERATION_PROFILE_LIMIT || n > 16 {
        return Err(Error::Envelope {
            n,
            voters,
            reason: format!("enumeration supports at most {ENUMERATION_PROFILE_LIMIT} profiles"),
        });
    }
    let improvements = improvement_lists(&space);
    let orders = space.orders();
    let mut forced = vec![vec![Vec::new(); n]; space.len()];
    let mut forcing = vec![vec![Vec::new(); n]; space.len()];
    for p in 0..space.len() {
        let digits = space.digits(p)?;
        for a in 0..n {
            let lists: Vec<&[usize]> = digits.iter().map(|&d| improvements[d][a].as_slice()).collect();
            for q in product_ranks(&space, &lists) {
                if q != p {
                    forced[p][a].push(q);
                    forcing[q][a].push(p);
                }
            }
        }
    }

    let full: u16 = (1u16 << n) - 1;
    let mut domains = vec![full; space.len()];
    let mut search = Search { forced, forcing, n, budget, nodes: 0, solutions: Vec::new() };
    let mut pending = Vec::new();
    for p in 0..space.len() {
        let digits = space.digits(p)?;
        let top = orders[digits[0]].top().0;
        if digits.iter().all(|&d| orders[d].top().0 == top) {
            domains[p] &= 1 << top;
            pending.push(p);
        }
    }
    if search.propagate(&mut domains, pending) {
        search.branch(domains)?;
    }

    let mut dictators = Vec::new();
    for table in &search.solutions {
        let f = SocialChoiceFunction::from_table(n, voters, table.clone())?;
        let checker = AxiomChecker::new(&f)?;
        if !checker.monotonic().holds() || !checker.unanimous().holds() {
            return Err(Error::Internal("search produced a table failing the axioms".into()));
        }
        dictators.push(checker.dictator());
    }
    Ok(Enumeration { n, voters, tables: search.solutions, nodes: search.nodes, dictators })
}

fn product_ranks(space: &ProfileSpace, lists: &[&[usize]]) -> Vec<usize> {
    let mut out = vec![0usize];
    for (l, list) in lists.iter().enumerate() {
        let place = space.place_value(l);
        out = out.iter().flat_map(|&acc| list.iter().map(move |&d| acc + d * place)).collect();
    }
    out
}

impl Search {
    /// Applies the consequences of every newly fixed profile in `queue`.
    /// Returns false on a wipe-out.
    fn propagate(&self, domains: &mut [u16], mut queue: Vec<usize>) -> bool {
        while let Some(p) = queue.pop() {
            let d = domains[p];
            if d == 0 {
                return false;
            }
            debug_assert!(d.is_power_of_two());
            let a = d.trailing_zeros() as usize;
            for &q in &self.forced[p][a] {
                let before = domains[q];
                let after = before & d;
                if after == 0 {
                    return false;
                }
                if after != before {
                    domains[q] = after;
                    queue.push(q);
                }
            }
            for b in (0..self.n).filter(|&b| b != a) {
                for &q in &self.forcing[p][b] {
                    let before = domains[q];
                    let after = before & !(1 << b);
                    if after == 0 {
                        return false;
                    }
                    if after != before {
                        domains[q] = after;
                        if after.is_power_of_two() {
                            queue.push(q);
                        }
                    }
                }
            }
        }
        true
    }

    fn branch(&mut self, domains: Vec<u16>) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded { budget: self.budget });
        }
        let Some(p) = domains.iter().position(|d| !d.is_power_of_two()) else {
            self.solutions.push(domains.iter().map(|d| d.trailing_zeros() as usize).collect());
            return Ok(());
        };
        for a in 0..self.n {
            if domains[p] & (1 << a) == 0 {
                continue;
            }
            let mut next = domains.clone();
            next[p] = 1 << a;
            if self.propagate(&mut next, vec![p]) {
                self.branch(next)?;
            }
        }
        Ok(())
    }
}
