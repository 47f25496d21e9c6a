use std::fmt;

use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::layout::{PairIndex, Sign, VertexLayout};
use super::ProfileNerve;
use crate::homology::{ChainVector, HomologyBasis, Integer, SimplexKey};
use crate::{Error, Result};

/// A direction for each edge of the `n`-cycle on the alternatives. Edge
/// `e < n - 1` joins `a_e` and `a_{e+1}`; the last edge joins `a_0` and
/// `a_{n-1}`. `arrows[e]` is true when the lower-indexed endpoint is
/// preferred, i.e. the edge contributes the sign `+` on its pair.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Orientation {
    arrows: Vec<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrientationClass {
    Cyclic,
    Acyclic,
}

impl Orientation {
    pub fn new(arrows: Vec<bool>) -> Result<Self> {
        if arrows.len() < 3 {
            return Err(Error::Precondition(format!("an orientation needs n >= 3 edges, got {}", arrows.len())));
        }
        Ok(Self { arrows })
    }

    /// Bit `e` of `code` gives `arrows[e]`.
    pub fn from_code(n: usize, code: u64) -> Result<Self> {
        Self::new((0..n).map(|e| code >> e & 1 == 1).collect())
    }

    /// All `2^n` orientations, by code.
    pub fn all(n: usize) -> Result<Vec<Self>> {
        (0..1u64 << n).map(|c| Self::from_code(n, c)).collect()
    }

    /// The directed cycle `a_0 > a_1 > ... > a_{n-1} > a_0`: signs
    /// `+, ..., +, -`.
    pub fn hat(n: usize) -> Result<Self> {
        Self::new((0..n).map(|e| e + 1 < n).collect())
    }

    /// All signs `+`, which orders `a_0 > a_1 > ... > a_{n-1}`.
    pub fn acyclic_base(n: usize) -> Result<Self> {
        Self::new(vec![true; n])
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn arrows(&self) -> &[bool] {
        &self.arrows
    }

    pub fn sign(&self, edge: usize) -> Sign {
        Sign::from_bool(self.arrows[edge])
    }

    /// The orientation with one arrow reversed.
    pub fn flipped(&self, edge: usize) -> Self {
        let mut arrows = self.arrows.clone();
        arrows[edge] = !arrows[edge];
        Self { arrows }
    }

    /// The pair carried by each cycle edge.
    pub fn edges(n: usize) -> Vec<PairIndex> {
        (0..n - 1).map(|e| PairIndex { i: e, j: e + 1 }).chain([PairIndex { i: 0, j: n - 1 }]).collect()
    }

    pub fn classify(&self) -> OrientationClass {
        let n = self.arrows.len();
        let path = &self.arrows[..n - 1];
        let last = self.arrows[n - 1];
        let cyclic = (path.iter().all(|&a| a) && !last) || (path.iter().all(|&a| !a) && last);
        if cyclic {
            OrientationClass::Cyclic
        } else {
            OrientationClass::Acyclic
        }
    }

    pub fn is_cyclic(&self) -> bool {
        self.classify() == OrientationClass::Cyclic
    }
}

impl fmt::Debug for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &a in &self.arrows {
            f.write_str(if a { "+" } else { "-" })?;
        }
        Ok(())
    }
}

pub fn classify_orientation_cycle(g: &Orientation) -> OrientationClass {
    g.classify()
}

/// The simplex `δ(g_1, ..., g_N)`: one vertex per cycle edge, with sign
/// vector read from the orientations. It lives in the full simplex on the
/// nerve's vertices and need not be a face of the nerve.
pub fn delta_simplex(layout: &VertexLayout, gs: &[Orientation]) -> Result<SimplexKey> {
    let n = layout.alternatives();
    if gs.len() != layout.voters() {
        return Err(Error::Precondition(format!("{} orientations for N = {}", gs.len(), layout.voters())));
    }
    if let Some(g) = gs.iter().find(|g| g.len() != n) {
        return Err(Error::Precondition(format!("orientation of length {} for n = {n}", g.len())));
    }
    let vertices = Orientation::edges(n)
        .into_iter()
        .enumerate()
        .map(|(e, pair)| {
            let code = gs.iter().fold(0, |acc, g| (acc << 1) | usize::from(!g.arrows[e]));
            layout.index_of(layout.pair_index(pair), code)
        })
        .collect();
    SimplexKey::new(vertices)
}

/// `h(g_1, ..., g_N) = ∂δ(g_1, ..., g_N)`, a degree `n - 2` chain.
pub fn h_chain(layout: &VertexLayout, gs: &[Orientation]) -> Result<ChainVector> {
    Ok(ChainVector::simplex(delta_simplex(layout, gs)?).boundary())
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorEntry {
    pub orientation: Orientation,
    pub class: OrientationClass,
    pub coefficient: i64,
    pub delta_is_face: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorReport {
    pub n: usize,
    pub betti: usize,
    pub torsion_free: bool,
    pub cyclic_count: usize,
    pub entries: Vec<GeneratorEntry>,
    pub passed: bool,
}

/// Class of `h(g)` in `H_{n-2}` of the single-voter nerve, for every
/// orientation `g`. Passes iff the two cyclic orientations give `±1` and
/// every acyclic one gives `0`.
pub fn generator_test(n: usize) -> Result<GeneratorReport> {
    let np = ProfileNerve::new(n, 1)?;
    let basis = HomologyBasis::compute(np.complex(), n - 2)?;
    let torsion_free = basis.torsion().is_empty();
    let mut entries = Vec::new();
    for g in Orientation::all(n)? {
        let delta = delta_simplex(np.layout(), std::slice::from_ref(&g))?;
        let h = ChainVector::simplex(delta.clone()).boundary();
        if !h.is_supported_on(np.complex()) {
            return Err(Error::Internal(format!("h({g:?}) leaves the nerve")));
        }
        let coords = basis.coordinates(&h)?;
        let coefficient = match coords.free.as_slice() {
            [c] => c.to_i64().ok_or_else(|| Error::Internal("coefficient overflow".into()))?,
            _ => 0,
        };
        entries.push(GeneratorEntry {
            class: g.classify(),
            coefficient,
            delta_is_face: np.complex().contains(&delta),
            orientation: g,
        });
    }
    let cyclic_count = entries.iter().filter(|e| e.class == OrientationClass::Cyclic).count();
    let passed = basis.betti() == 1
        && torsion_free
        && cyclic_count == 2
        && entries.iter().all(|e| match e.class {
            OrientationClass::Cyclic => e.coefficient.abs() == 1,
            OrientationClass::Acyclic => e.coefficient == 0,
        });
    Ok(GeneratorReport { n, betti: basis.betti(), torsion_free, cyclic_count, entries, passed })
}

/// Coefficient of the class of `h` against the single generator `c`,
/// where `c_coord` is the coordinate of `c` itself (which must be a unit).
pub(crate) fn ratio_to_generator(h_coord: &Integer, c_coord: &Integer) -> Result<i64> {
    if !c_coord.abs().is_one() {
        return Err(Error::Internal(format!("reference generator has coordinate {c_coord}")));
    }
    (h_coord * c_coord).to_i64().ok_or_else(|| Error::Internal("coefficient overflow".into()))
}
