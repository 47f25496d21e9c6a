use serde::{Deserialize, Serialize};

use super::order::{all_orders, factorial, LinearOrder};
use crate::{Error, Result};

/// One linear order per voter.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Profile {
    pub orders: Vec<LinearOrder>,
}

impl Profile {
    pub fn new(orders: Vec<LinearOrder>) -> Self {
        Self { orders }
    }

    pub fn voters(&self) -> usize {
        self.orders.len()
    }

    /// The profile with voter `voter`'s order replaced.
    pub fn with_order(&self, voter: usize, order: LinearOrder) -> Profile {
        let mut orders = self.orders.clone();
        orders[voter] = order;
        Profile { orders }
    }
}

/// The `(n!)^N` profiles of an instance with a canonical numbering: orders
/// by Lehmer rank, profiles as base-`n!` numbers with voter 0 most
/// significant.
#[derive(Clone, Debug)]
pub struct ProfileSpace {
    n: usize,
    voters: usize,
    orders: Vec<LinearOrder>,
    count: usize,
}

/// Upper bound on `n` for which all `n!` orders are materialised.
pub const MAX_ALTERNATIVES: usize = 8;

impl ProfileSpace {
    pub fn new(n: usize, voters: usize) -> Result<Self> {
        if n == 0 || voters == 0 {
            return Err(Error::Envelope { n, voters, reason: "need n >= 1 and N >= 1".into() });
        }
        if n > MAX_ALTERNATIVES {
            return Err(Error::Envelope { n, voters, reason: format!("at most {MAX_ALTERNATIVES} alternatives") });
        }
        let count = (0..voters)
            .try_fold(1usize, |acc, _| acc.checked_mul(factorial(n)))
            .ok_or_else(|| Error::Envelope { n, voters, reason: "profile count overflows".into() })?;
        Ok(Self { n, voters, orders: all_orders(n), count })
    }

    pub fn alternatives(&self) -> usize {
        self.n
    }

    pub fn voters(&self) -> usize {
        self.voters
    }

    /// Number of profiles, `(n!)^N`.
    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn order_count(&self) -> usize {
        self.orders.len()
    }

    /// All orders indexed by Lehmer rank.
    pub fn orders(&self) -> &[LinearOrder] {
        &self.orders
    }

    pub fn check(&self, p: &Profile) -> Result<()> {
        if p.voters() != self.voters {
            return Err(Error::ProfileLength { got: p.voters(), expected: self.voters });
        }
        if let Some(o) = p.orders.iter().find(|o| o.len() != self.n) {
            return Err(Error::InvalidOrder { ranking: o.ranking().to_vec(), n: self.n });
        }
        Ok(())
    }

    pub fn rank_of_profile(&self, p: &Profile) -> Result<usize> {
        self.check(p)?;
        let base = self.orders.len();
        Ok(p.orders.iter().fold(0, |acc, o| acc * base + o.lehmer_rank()))
    }

    pub fn profile_of_rank(&self, rank: usize) -> Result<Profile> {
        let digits = self.digits(rank)?;
        Ok(Profile { orders: digits.into_iter().map(|d| self.orders[d].clone()).collect() })
    }

    /// Order ranks of each voter for profile `rank`, voter 0 first.
    pub fn digits(&self, rank: usize) -> Result<Vec<usize>> {
        if rank >= self.count {
            return Err(Error::RankOutOfRange { rank, count: self.count, what: "profiles" });
        }
        let base = self.orders.len();
        let mut digits = vec![0; self.voters];
        let mut r = rank;
        for d in digits.iter_mut().rev() {
            *d = r % base;
            r /= base;
        }
        Ok(digits)
    }

    pub fn rank_of_digits(&self, digits: &[usize]) -> usize {
        let base = self.orders.len();
        digits.iter().fold(0, |acc, &d| acc * base + d)
    }

    /// Weight of voter `voter`'s digit in a profile rank.
    pub fn place_value(&self, voter: usize) -> usize {
        self.orders.len().pow((self.voters - 1 - voter) as u32)
    }

    pub fn profiles(&self) -> impl Iterator<Item = Profile> + '_ {
        (0..self.count).map(move |r| self.profile_of_rank(r).expect("rank in range"))
    }
}

pub fn rank_of_profile(p: &Profile, n: usize, voters: usize) -> Result<usize> {
    ProfileSpace::new(n, voters)?.rank_of_profile(p)
}

pub fn profile_of_rank(rank: usize, n: usize, voters: usize) -> Result<Profile> {
    ProfileSpace::new(n, voters)?.profile_of_rank(rank)
}
