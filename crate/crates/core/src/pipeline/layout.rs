use std::fmt;

use serde::{Deserialize, Serialize};

use crate::choice::LinearOrder;
use crate::{Error, Result};

/// An unordered pair of alternatives, stored with `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PairIndex {
    pub i: usize,
    pub j: usize,
}

impl PairIndex {
    pub fn new(i: usize, j: usize, n: usize) -> Result<Self> {
        if j >= n {
            return Err(Error::AlternativeOutOfRange { index: j, n });
        }
        if i >= j {
            return Err(Error::Precondition(format!("pair ({i}, {j}) must have i < j")));
        }
        Ok(Self { i, j })
    }
}

impl fmt::Display for PairIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// `Plus` on a pair `(i, j)` means `a_i` is ranked above `a_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn from_bool(plus: bool) -> Self {
        if plus {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn is_plus(self) -> bool {
        self == Sign::Plus
    }

    pub fn flip(self) -> Self {
        Self::from_bool(!self.is_plus())
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.is_plus() { "+" } else { "-" })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SignVector(pub Vec<Sign>);

impl SignVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn uniform(sign: Sign, voters: usize) -> Self {
        Self(vec![sign; voters])
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|s| write!(f, "{s}"))
    }
}

/// A vertex `(i, j, σ)` of the profile nerve: the profiles in which voter
/// `l` ranks the pair according to `σ_l`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProfileNerveVertex {
    pub pair: PairIndex,
    pub sigma: SignVector,
}

impl fmt::Display for ProfileNerveVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.pair.i, self.pair.j, self.sigma)
    }
}

/// Canonical numbering of the `C(n,2) * 2^N` vertices: pairs in
/// lexicographic order, then sign vectors read as binary numbers with
/// voter 0 most significant and `Minus = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexLayout {
    n: usize,
    voters: usize,
    pairs: Vec<PairIndex>,
}

/// Instances with more voters than this have too many sign vectors to index.
pub const MAX_LAYOUT_VOTERS: usize = 16;

impl VertexLayout {
    pub fn new(n: usize, voters: usize) -> Result<Self> {
        if n < 2 || voters == 0 || voters > MAX_LAYOUT_VOTERS {
            return Err(Error::Envelope {
                n,
                voters,
                reason: format!("need n >= 2 and 1 <= N <= {MAX_LAYOUT_VOTERS}"),
            });
        }
        let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| PairIndex { i, j })).collect();
        Ok(Self { n, voters, pairs })
    }

    pub fn alternatives(&self) -> usize {
        self.n
    }

    pub fn voters(&self) -> usize {
        self.voters
    }

    pub fn pairs(&self) -> &[PairIndex] {
        &self.pairs
    }

    pub fn sign_vectors(&self) -> usize {
        1 << self.voters
    }

    pub fn vertex_count(&self) -> usize {
        self.pairs.len() << self.voters
    }

    /// Position of `(i, j)` with `i < j` in lexicographic order.
    pub fn pair_index(&self, pair: PairIndex) -> usize {
        let n = self.n;
        pair.i * (2 * n - pair.i - 1) / 2 + (pair.j - pair.i - 1)
    }

    pub fn sigma_code(&self, sigma: &SignVector) -> usize {
        sigma.0.iter().fold(0, |acc, s| (acc << 1) | usize::from(!s.is_plus()))
    }

    pub fn sigma_of_code(&self, code: usize) -> SignVector {
        SignVector((0..self.voters).map(|l| self.sign_in_code(code, l)).collect())
    }

    /// Sign of voter `l` in a sign-vector code.
    pub fn sign_in_code(&self, code: usize, l: usize) -> Sign {
        Sign::from_bool((code >> (self.voters - 1 - l)) & 1 == 0)
    }

    pub fn index_of(&self, pair_index: usize, sigma_code: usize) -> usize {
        (pair_index << self.voters) | sigma_code
    }

    pub fn index(&self, vertex: &ProfileNerveVertex) -> Result<usize> {
        if vertex.pair.j >= self.n || vertex.pair.i >= vertex.pair.j {
            return Err(Error::Precondition(format!("invalid pair {}", vertex.pair)));
        }
        if vertex.sigma.len() != self.voters {
            return Err(Error::Precondition(format!(
                "sign vector of length {} for N = {}",
                vertex.sigma.len(),
                self.voters
            )));
        }
        Ok(self.index_of(self.pair_index(vertex.pair), self.sigma_code(&vertex.sigma)))
    }

    /// Splits a vertex index into (pair position, sign-vector code).
    pub fn split(&self, v: usize) -> (usize, usize) {
        (v >> self.voters, v & ((1 << self.voters) - 1))
    }

    pub fn vertex(&self, v: usize) -> ProfileNerveVertex {
        let (p, code) = self.split(v);
        ProfileNerveVertex { pair: self.pairs[p], sigma: self.sigma_of_code(code) }
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.vertex_count()).map(|v| self.vertex(v).to_string()).collect()
    }

    /// The `C(n,2)` vertices whose sets contain the profile given by its
    /// per-voter orders, in increasing order.
    pub fn signature(&self, orders: &[&LinearOrder]) -> Vec<usize> {
        self.pairs
            .iter()
            .enumerate()
            .map(|(p, pair)| {
                let code = orders.iter().fold(0, |acc, o| (acc << 1) | usize::from(!o.beats(pair.i, pair.j)));
                self.index_of(p, code)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_positions_are_lexicographic() {
        let layout = VertexLayout::new(5, 1).unwrap();
        for (k, &pair) in layout.pairs().iter().enumerate() {
            assert_eq!(layout.pair_index(pair), k);
        }
        assert_eq!(layout.pairs().len(), 10);
    }

    #[test]
    fn vertex_round_trip() {
        let layout = VertexLayout::new(4, 3).unwrap();
        assert_eq!(layout.vertex_count(), 48);
        for v in 0..layout.vertex_count() {
            assert_eq!(layout.index(&layout.vertex(v)).unwrap(), v);
        }
        let v = ProfileNerveVertex {
            pair: PairIndex { i: 0, j: 1 },
            sigma: SignVector(vec![Sign::Plus, Sign::Minus, Sign::Minus]),
        };
        assert_eq!(layout.index(&v).unwrap(), 0b011);
        assert_eq!(v.to_string(), "(0,1,+--)");
    }

    #[test]
    fn signature_reads_each_voter() {
        let layout = VertexLayout::new(3, 2).unwrap();
        let a = LinearOrder::new(vec![0, 1, 2]).unwrap();
        let b = LinearOrder::new(vec![2, 1, 0]).unwrap();
        let sig = layout.signature(&[&a, &b]);
        let expected: Vec<usize> = (0..3).map(|p| layout.index_of(p, 0b01)).collect();
        assert_eq!(sig, expected);
    }

    #[test]
    fn rejects_bad_vertices() {
        let layout = VertexLayout::new(3, 2).unwrap();
        let bad = ProfileNerveVertex { pair: PairIndex { i: 1, j: 3 }, sigma: SignVector::uniform(Sign::Plus, 2) };
        assert!(layout.index(&bad).is_err());
        assert!(PairIndex::new(2, 1, 3).is_err());
        assert!(VertexLayout::new(1, 1).is_err());
    }
}
