use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// An alternative `a_index`, 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Alternative(pub usize);

impl Alternative {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Alternative {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a_{}", self.0)
    }
}

/// A strict ranking of `n` alternatives, stored best to worst together with
/// its inverse so that preference queries are O(1).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearOrder {
    ranking: Vec<usize>,
    position: Vec<usize>,
}

impl LinearOrder {
    pub fn new(ranking: Vec<usize>) -> Result<Self> {
        let n = ranking.len();
        let mut position = vec![usize::MAX; n];
        for (pos, &a) in ranking.iter().enumerate() {
            if a >= n || position[a] != usize::MAX {
                return Err(Error::InvalidOrder { ranking, n });
            }
            position[a] = pos;
        }
        Ok(Self { ranking, position })
    }

    /// The order `a_0 > a_1 > ... > a_{n-1}`.
    pub fn identity(n: usize) -> Self {
        Self { ranking: (0..n).collect(), position: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.ranking.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranking.is_empty()
    }

    pub fn ranking(&self) -> &[usize] {
        &self.ranking
    }

    /// 0 for the top alternative, `n - 1` for the bottom one.
    pub fn position(&self, a: Alternative) -> usize {
        self.position[a.0]
    }

    pub fn top(&self) -> Alternative {
        Alternative(self.ranking[0])
    }

    pub fn prefers(&self, a: Alternative, b: Alternative) -> Result<bool> {
        let n = self.len();
        for x in [a, b] {
            if x.0 >= n {
                return Err(Error::AlternativeOutOfRange { index: x.0, n });
            }
        }
        if a == b {
            return Err(Error::SameAlternative(a.0));
        }
        Ok(self.position[a.0] < self.position[b.0])
    }

    /// Unchecked variant of [`prefers`](Self::prefers) for hot loops; `a == b`
    /// yields `false`.
    #[inline]
    pub(crate) fn beats(&self, a: usize, b: usize) -> bool {
        self.position[a] < self.position[b]
    }

    /// True iff every alternative that `a` beats in `self` is still beaten
    /// by `a` in `other`.
    pub fn is_improvement_for(&self, other: &LinearOrder, a: Alternative) -> bool {
        debug_assert_eq!(self.len(), other.len());
        self.ranking[self.position[a.0] + 1..].iter().all(|&b| other.beats(a.0, b))
    }

    /// Moves `a` to the top, keeping the relative order of everything else.
    pub fn push_to_top(&self, a: Alternative) -> LinearOrder {
        let ranking: Vec<usize> =
            std::iter::once(a.0).chain(self.ranking.iter().copied().filter(|&x| x != a.0)).collect();
        LinearOrder::new(ranking).expect("push_to_top preserves permutations")
    }

    /// Rank of this permutation in lexicographic order (its Lehmer code read
    /// as a factorial-base number).
    pub fn lehmer_rank(&self) -> usize {
        let n = self.len();
        let mut rank = 0;
        for i in 0..n {
            let smaller_later = self.ranking[i + 1..].iter().filter(|&&x| x < self.ranking[i]).count();
            rank = rank * (n - i) + smaller_later;
        }
        rank
    }

    pub fn from_lehmer_rank(rank: usize, n: usize) -> Result<Self> {
        let count = factorial(n);
        if rank >= count {
            return Err(Error::RankOutOfRange { rank, count, what: "orders" });
        }
        let mut digits = vec![0; n];
        let mut r = rank;
        for i in (0..n).rev() {
            let base = n - i;
            digits[i] = r % base;
            r /= base;
        }
        let mut pool: Vec<usize> = (0..n).collect();
        let ranking = digits.into_iter().map(|d| pool.remove(d)).collect();
        LinearOrder::new(ranking)
    }
}

impl fmt::Debug for LinearOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.ranking)
    }
}

impl Serialize for LinearOrder {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.ranking.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LinearOrder {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let ranking = Vec::<usize>::deserialize(d)?;
        LinearOrder::new(ranking).map_err(serde::de::Error::custom)
    }
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// All `n!` orders, indexed by Lehmer rank.
pub fn all_orders(n: usize) -> Vec<LinearOrder> {
    (0..factorial(n)).map(|r| LinearOrder::from_lehmer_rank(r, n).expect("rank below n!")).collect()
}
