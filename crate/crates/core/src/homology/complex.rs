use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use super::matrix::{IntegerMatrix, SparseVec};
use crate::{Error, Result};

/// A simplex as its strictly increasing vertex list.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct SimplexKey(Vec<usize>);

impl SimplexKey {
    /// Sorts the vertices; rejects repeats.
    pub fn new(mut vertices: Vec<usize>) -> Result<Self> {
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Precondition(format!("repeated vertex in simplex {vertices:?}")));
        }
        Ok(Self(vertices))
    }

    pub(crate) fn from_sorted(vertices: Vec<usize>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Self(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `len - 1`; panics on the empty simplex.
    pub fn dimension(&self) -> usize {
        self.0.len() - 1
    }

    /// The facet leaving out the vertex at position `i`.
    pub fn omit(&self, i: usize) -> SimplexKey {
        let mut v = self.0.clone();
        v.remove(i);
        SimplexKey(v)
    }

    /// All nonempty subsets.
    pub fn subsets(&self) -> impl Iterator<Item = SimplexKey> + '_ {
        let n = self.0.len();
        assert!(n < 32, "simplex too large to enumerate its faces");
        (1u32..(1 << n))
            .map(move |mask| SimplexKey((0..n).filter(|&b| mask & (1 << b) != 0).map(|b| self.0[b]).collect()))
    }

    pub fn is_subset_of(&self, other: &SimplexKey) -> bool {
        self.0.iter().all(|v| other.0.binary_search(v).is_ok())
    }
}

impl fmt::Debug for SimplexKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A finite abstract simplicial complex with faces listed by dimension in
/// lexicographic order. The empty face is not stored.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    vertex_count: usize,
    faces: Vec<Vec<SimplexKey>>,
    index: Vec<HashMap<SimplexKey, usize>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count && self.faces == other.faces
    }
}

impl Eq for SimplicialComplex {}

impl SimplicialComplex {
    /// Downward closure of `faces` over vertices `0..vertex_count`.
    pub fn from_maximal_faces(vertex_count: usize, faces: &[SimplexKey]) -> Result<Self> {
        for f in faces {
            if let Some(&v) = f.vertices().iter().find(|&&v| v >= vertex_count) {
                return Err(Error::VertexOutOfRange { vertex: v, count: vertex_count });
            }
        }
        let mut generators: Vec<&SimplexKey> = faces.iter().filter(|f| !f.is_empty()).collect();
        generators.sort_by_key(|f| std::cmp::Reverse(f.len()));
        let mut all: HashSet<SimplexKey> = HashSet::new();
        for f in generators {
            if all.contains(f) {
                continue;
            }
            all.extend(f.subsets());
        }
        Ok(Self::from_face_set(vertex_count, all))
    }

    /// Builds from a set already known to be downward closed.
    pub(crate) fn from_face_set(vertex_count: usize, all: HashSet<SimplexKey>) -> Self {
        let top = all.iter().map(SimplexKey::len).max().unwrap_or(0);
        let mut faces: Vec<Vec<SimplexKey>> = vec![Vec::new(); top];
        for f in all {
            faces[f.len() - 1].push(f);
        }
        for layer in &mut faces {
            layer.sort_unstable();
        }
        let index =
            faces.iter().map(|layer| layer.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect()).collect();
        Self { vertex_count, faces, index }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Top dimension, or -1 for the empty complex.
    pub fn dimension(&self) -> isize {
        self.faces.len() as isize - 1
    }

    pub fn faces(&self, k: usize) -> &[SimplexKey] {
        self.faces.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn face_count(&self, k: usize) -> usize {
        self.faces(k).len()
    }

    pub fn face_counts(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    pub fn total_faces(&self) -> usize {
        self.faces.iter().map(Vec::len).sum()
    }

    pub fn position(&self, face: &SimplexKey) -> Option<usize> {
        if face.is_empty() {
            return None;
        }
        self.index.get(face.len() - 1)?.get(face).copied()
    }

    pub fn contains(&self, face: &SimplexKey) -> bool {
        self.position(face).is_some()
    }

    pub fn contains_vertices(&self, vertices: &[usize]) -> bool {
        SimplexKey::new(vertices.to_vec()).is_ok_and(|k| self.contains(&k))
    }

    /// Faces not contained in any larger face, in dimension then
    /// lexicographic order.
    pub fn maximal_faces(&self) -> Vec<SimplexKey> {
        let mut out = Vec::new();
        for k in 0..self.faces.len() {
            let cofaces: HashSet<SimplexKey> =
                self.faces(k + 1).iter().flat_map(|f| (0..f.len()).map(move |i| f.omit(i))).collect();
            out.extend(self.faces[k].iter().filter(|f| !cofaces.contains(*f)).cloned());
        }
        out
    }

    /// Alternating sum of face counts.
    pub fn euler_characteristic(&self) -> i64 {
        self.faces
            .iter()
            .enumerate()
            .map(|(k, layer)| if k % 2 == 0 { layer.len() as i64 } else { -(layer.len() as i64) })
            .sum()
    }

    /// `∂_k`: rows are the `(k-1)`-faces, columns the `k`-faces; the facet
    /// omitting the vertex at position `i` gets sign `(-1)^i`.
    pub fn boundary_matrix(&self, k: usize) -> Result<IntegerMatrix> {
        if k == 0 || k as isize > self.dimension() {
            return Err(Error::DegreeOutOfRange { degree: k, dim: self.dimension() });
        }
        Ok(self.boundary_unchecked(k))
    }

    /// `∂_k` for any `k`, with the conventions `∂_0 = 0` (no rows) and
    /// `∂_{dim+1} = 0` (no columns).
    pub(crate) fn boundary_unchecked(&self, k: usize) -> IntegerMatrix {
        let rows = if k == 0 { 0 } else { self.face_count(k - 1) };
        if k == 0 {
            return IntegerMatrix::zeros(0, self.face_count(0));
        }
        let cols = self
            .faces(k)
            .iter()
            .map(|f| {
                SparseVec::from_pairs(
                    (0..f.len())
                        .map(|i| {
                            let row = self.position(&f.omit(i)).expect("complex is downward closed");
                            (row, BigInt::from(if i % 2 == 0 { 1 } else { -1 }))
                        })
                        .collect(),
                )
            })
            .collect();
        IntegerMatrix::from_columns(rows, cols).expect("indices within face counts")
    }

    /// Faces by dimension, for the debugging dump.
    pub fn dump(&self) -> ComplexDump {
        ComplexDump {
            vertex_count: self.vertex_count,
            faces_by_dimension: self
                .faces
                .iter()
                .map(|layer| layer.iter().map(|f| f.vertices().to_vec()).collect())
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexDump {
    pub vertex_count: usize,
    pub faces_by_dimension: Vec<Vec<Vec<usize>>>,
}

pub fn complex_from_maximal_faces(vertex_count: usize, faces: &[SimplexKey]) -> Result<SimplicialComplex> {
    SimplicialComplex::from_maximal_faces(vertex_count, faces)
}

/// The boundary of the full simplex on `m + 1` vertices.
pub fn simplex_boundary(m: usize) -> SimplicialComplex {
    let full = SimplexKey((0..=m).collect());
    let facets: Vec<SimplexKey> = (0..=m).map(|i| full.omit(i)).collect();
    SimplicialComplex::from_maximal_faces(m + 1, &facets).expect("vertices in range")
}

/// The full simplex on `m + 1` vertices.
pub fn full_simplex(m: usize) -> SimplicialComplex {
    SimplicialComplex::from_maximal_faces(m + 1, &[SimplexKey((0..=m).collect())]).expect("vertices in range")
}
