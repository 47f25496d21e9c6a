use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::ser::SerializeSeq;
use serde::Serialize;

use super::complex::{SimplexKey, SimplicialComplex};
use super::matrix::{Integer, SparseVec};
use crate::{Error, Result};

/// A finite integer combination of `dimension`-simplices.
#[derive(Clone, PartialEq, Eq)]
pub struct ChainVector {
    dimension: usize,
    terms: BTreeMap<SimplexKey, Integer>,
}

impl ChainVector {
    pub fn zero(dimension: usize) -> Self {
        Self { dimension, terms: BTreeMap::new() }
    }

    pub fn from_terms(dimension: usize, terms: impl IntoIterator<Item = (SimplexKey, Integer)>) -> Result<Self> {
        let mut chain = Self::zero(dimension);
        for (key, c) in terms {
            chain.add_term(key, c)?;
        }
        Ok(chain)
    }

    /// The elementary chain `1 * simplex`.
    pub fn simplex(key: SimplexKey) -> Self {
        let mut chain = Self::zero(key.dimension());
        chain.terms.insert(key, Integer::from(1));
        chain
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn add_term(&mut self, key: SimplexKey, c: Integer) -> Result<()> {
        if key.len() != self.dimension + 1 {
            return Err(Error::Precondition(format!("simplex {key:?} in a chain of dimension {}", self.dimension)));
        }
        let slot = self.terms.entry(key).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
        Ok(())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SimplexKey, &Integer)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, key: &SimplexKey) -> Integer {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn scaled(&self, c: &Integer) -> ChainVector {
        if c.is_zero() {
            return Self::zero(self.dimension);
        }
        Self { dimension: self.dimension, terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    pub fn plus(&self, other: &ChainVector) -> Result<ChainVector> {
        if self.dimension != other.dimension {
            return Err(Error::Precondition(format!(
                "adding chains of dimensions {} and {}",
                self.dimension, other.dimension
            )));
        }
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone())?;
        }
        Ok(out)
    }

    /// Simplicial boundary, computed on the vertex sets alone. The boundary
    /// of a 0-chain is the empty 0-chain.
    pub fn boundary(&self) -> ChainVector {
        if self.dimension == 0 {
            return Self::zero(0);
        }
        let mut out = Self::zero(self.dimension - 1);
        for (key, c) in &self.terms {
            for i in 0..key.len() {
                let sign = if i % 2 == 0 { c.clone() } else { -c };
                out.add_term(key.omit(i), sign).expect("facet has the right size");
            }
        }
        out
    }

    /// Coordinates against the `dimension`-faces of `cx`.
    pub fn to_sparse(&self, cx: &SimplicialComplex) -> Result<SparseVec> {
        let pairs = self
            .terms
            .iter()
            .map(|(k, v)| cx.position(k).map(|i| (i, v.clone())).ok_or_else(|| Error::NotAFace(k.vertices().to_vec())))
            .collect::<Result<Vec<_>>>()?;
        Ok(SparseVec::from_pairs(pairs))
    }

    pub fn from_sparse(cx: &SimplicialComplex, dimension: usize, v: &SparseVec) -> ChainVector {
        let faces = cx.faces(dimension);
        Self { dimension, terms: v.entries().iter().map(|(i, c)| (faces[*i].clone(), c.clone())).collect() }
    }

    /// True iff every simplex in the support is a face of `cx`.
    pub fn is_supported_on(&self, cx: &SimplicialComplex) -> bool {
        self.terms.keys().all(|k| cx.contains(k))
    }
}

impl fmt::Debug for ChainVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}", self.dimension)?;
        f.debug_map().entries(self.terms.iter().map(|(k, v)| (k, v.to_string()))).finish()
    }
}

impl Serialize for ChainVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            simplex: &'a SimplexKey,
            coefficient: String,
        }
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (k, v) in &self.terms {
            seq.serialize_element(&Term { simplex: k, coefficient: v.to_string() })?;
        }
        seq.end()
    }
}
