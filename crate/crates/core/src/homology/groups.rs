//! Integral homology with explicit cycle representatives.
//!
//! For degree `k`, the Smith form of `∂_k` yields a unimodular `V` whose
//! trailing columns are a basis `Z` of the cycles and whose inverse gives
//! coordinates in that basis. The boundaries `∂_{k+1}` are rewritten in
//! cycle coordinates as a matrix `B`, and the Smith form `U·B·W = D` then
//! splits `Z·U⁻¹` into torsion and free generators. The coordinates of a
//! cycle `z` are `U·(V⁻¹ z)` restricted to the cycle block.

use num_integer::Integer as _;
use num_traits::{One, Zero};
use serde::Serialize;

use super::chain::ChainVector;
use super::complex::SimplicialComplex;
use super::matrix::{Integer, IntegerMatrix, SparseVec};
use super::snf::smith_normal_form;
use crate::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct HomologyDescriptor {
    pub degree: usize,
    pub betti: usize,
    #[serde(serialize_with = "serialize_integers")]
    pub torsion: Vec<Integer>,
    pub basis_cycles: Vec<ChainVector>,
}

/// Betti number and torsion of one degree, without representatives.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupSummary {
    pub degree: usize,
    pub betti: usize,
    #[serde(serialize_with = "serialize_integers")]
    pub torsion: Vec<Integer>,
}

fn serialize_integers<S: serde::Serializer>(v: &[Integer], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

/// Class of a cycle: coefficients on the free basis, and residues on each
/// torsion generator (`torsion[i]` is taken modulo the `i`-th torsion
/// coefficient).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyCoordinates {
    pub free: Vec<Integer>,
    pub torsion: Vec<Integer>,
}

impl HomologyCoordinates {
    pub fn is_zero(&self) -> bool {
        self.free.iter().chain(&self.torsion).all(Zero::is_zero)
    }
}

/// Homology of one degree together with the data needed to express cycles
/// in the computed basis.
pub struct HomologyBasis<'a> {
    cx: &'a SimplicialComplex,
    degree: usize,
    boundary: IntegerMatrix,
    /// `V⁻¹` of the Smith form of `∂_k`, by columns.
    cycle_coords: IntegerMatrix,
    cycle_rank_offset: usize,
    /// `U` of the Smith form of `B`, by columns.
    class_coords: IntegerMatrix,
    boundary_rank: usize,
    invariants: Vec<Integer>,
    descriptor: HomologyDescriptor,
    torsion_generators: Vec<ChainVector>,
}

impl<'a> HomologyBasis<'a> {
    pub fn compute(cx: &'a SimplicialComplex, degree: usize) -> Result<Self> {
        if degree as isize > cx.dimension() {
            return Err(Error::DegreeOutOfRange { degree, dim: cx.dimension() });
        }
        let n_k = cx.face_count(degree);
        let boundary = cx.boundary_unchecked(degree);
        let cycles = smith_normal_form(&boundary)?;
        let offset = cycles.rank();
        let right = cycles.right().expect("tracked");
        let cycle_coords = cycles.v_inv().expect("tracked");

        let next = cx.boundary_unchecked(degree + 1);
        let in_cycle_basis = cycle_coords.mul(&next)?;
        if !in_cycle_basis.row_block(0..offset).is_zero() {
            return Err(Error::Internal(format!("boundaries of degree {degree} are not cycles")));
        }
        let b = in_cycle_basis.row_block(offset..n_k);
        let classes = smith_normal_form(&b)?;
        let boundary_rank = classes.rank();
        let left = classes.left().expect("tracked");
        let class_coords = classes.u().expect("tracked");
        let invariants = classes.invariants().to_vec();

        // generator t is Z * U⁻¹[:, t], Z = V[:, offset..]
        let kernel = &right.forward()[offset..];
        let generator = |t: usize| -> ChainVector {
            let mut v = SparseVec::new();
            for (s, c) in left.inverse()[t].entries() {
                v.axpy(c, &kernel[*s]);
            }
            ChainVector::from_sparse(cx, degree, &v)
        };
        let kernel_dim = n_k - offset;
        let basis_cycles: Vec<ChainVector> = (boundary_rank..kernel_dim).map(generator).collect();
        let torsion_idx: Vec<usize> = (0..boundary_rank).filter(|&t| !invariants[t].is_one()).collect();
        let torsion_generators = torsion_idx.iter().map(|&t| generator(t)).collect();
        let torsion = torsion_idx.iter().map(|&t| invariants[t].clone()).collect();

        let descriptor = HomologyDescriptor { degree, betti: basis_cycles.len(), torsion, basis_cycles };
        Ok(Self {
            cx,
            degree,
            boundary,
            cycle_coords,
            cycle_rank_offset: offset,
            class_coords,
            boundary_rank,
            invariants,
            descriptor,
            torsion_generators,
        })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        self.cx
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn descriptor(&self) -> &HomologyDescriptor {
        &self.descriptor
    }

    pub fn betti(&self) -> usize {
        self.descriptor.betti
    }

    pub fn torsion(&self) -> &[Integer] {
        &self.descriptor.torsion
    }

    pub fn basis_cycles(&self) -> &[ChainVector] {
        &self.descriptor.basis_cycles
    }

    pub fn torsion_generators(&self) -> &[ChainVector] {
        &self.torsion_generators
    }

    pub fn summary(&self) -> GroupSummary {
        GroupSummary { degree: self.degree, betti: self.betti(), torsion: self.torsion().to_vec() }
    }

    pub fn is_cycle(&self, z: &ChainVector) -> Result<bool> {
        Ok(self.boundary.mul_vec(&self.chain_vector(z)?)?.is_zero())
    }

    fn chain_vector(&self, z: &ChainVector) -> Result<SparseVec> {
        if z.dimension() != self.degree {
            return Err(Error::Precondition(format!("chain of dimension {} in degree {}", z.dimension(), self.degree)));
        }
        z.to_sparse(self.cx)
    }

    /// Expresses the cycle `z` in the computed basis: `z` minus the free
    /// combination (and the torsion residues) is a boundary.
    pub fn coordinates(&self, z: &ChainVector) -> Result<HomologyCoordinates> {
        let v = self.chain_vector(z)?;
        if !self.boundary.mul_vec(&v)?.is_zero() {
            return Err(Error::NotACycle);
        }
        let x = self.cycle_coords.mul_vec(&v)?;
        if x.indices().next().is_some_and(|i| i < self.cycle_rank_offset) {
            return Err(Error::Internal("cycle has no integer solution in the cycle basis".into()));
        }
        let x = x.slice(self.cycle_rank_offset..self.cx.face_count(self.degree));
        let y = self.class_coords.mul_vec(&x)?;
        let at = |t: usize| y.get(t).cloned().unwrap_or_default();
        let kernel_dim = self.cx.face_count(self.degree) - self.cycle_rank_offset;
        let free = (self.boundary_rank..kernel_dim).map(at).collect();
        let torsion = (0..self.boundary_rank)
            .filter(|&t| !self.invariants[t].is_one())
            .map(|t| at(t).mod_floor(&self.invariants[t]))
            .collect();
        Ok(HomologyCoordinates { free, torsion })
    }

    /// Free coordinates of `z`, failing if its torsion part is nonzero.
    pub fn free_coordinates(&self, z: &ChainVector) -> Result<Vec<Integer>> {
        let coords = self.coordinates(z)?;
        if coords.torsion.iter().any(|t| !t.is_zero()) {
            return Err(Error::Internal(format!("cycle has a torsion component in degree {}", self.degree)));
        }
        Ok(coords.free)
    }
}

/// Smith form with both transforms, re-verified by exact multiplication.
pub fn homology(cx: &SimplicialComplex, degree: usize) -> Result<HomologyDescriptor> {
    Ok(HomologyBasis::compute(cx, degree)?.descriptor)
}

pub fn coefficients_in_homology(cx: &SimplicialComplex, degree: usize, z: &ChainVector) -> Result<HomologyCoordinates> {
    HomologyBasis::compute(cx, degree)?.coordinates(z)
}

/// Betti numbers and torsion in every degree from ranks and invariant
/// factors of the boundary maps, each factorization re-verified.
pub fn homology_summary(cx: &SimplicialComplex) -> Result<Vec<GroupSummary>> {
    let top = cx.dimension();
    if top < 0 {
        return Ok(Vec::new());
    }
    let top = top as usize;
    let mut ranks = vec![0usize; top + 2];
    let mut torsion = vec![Vec::new(); top + 2];
    for k in 1..=top {
        let snf = smith_normal_form(&cx.boundary_unchecked(k))?;
        ranks[k] = snf.rank();
        torsion[k] = snf.torsion();
    }
    Ok((0..=top)
        .map(|k| GroupSummary {
            degree: k,
            betti: cx.face_count(k) - ranks[k] - ranks[k + 1],
            torsion: torsion[k + 1].clone(),
        })
        .collect())
}

/// Sum of `(-1)^k b_k`.
pub fn betti_euler_characteristic(summary: &[GroupSummary]) -> i64 {
    summary.iter().map(|g| if g.degree % 2 == 0 { g.betti as i64 } else { -(g.betti as i64) }).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::complex::{complex_from_maximal_faces, full_simplex, simplex_boundary, SimplexKey};

    fn key(v: &[usize]) -> SimplexKey {
        SimplexKey::new(v.to_vec()).unwrap()
    }

    fn int(v: i64) -> Integer {
        Integer::from(v)
    }

    #[test]
    fn circle() {
        let cx = simplex_boundary(2);
        let h0 = homology(&cx, 0).unwrap();
        let h1 = homology(&cx, 1).unwrap();
        assert_eq!((h0.betti, h1.betti), (1, 1));
        assert!(h0.torsion.is_empty() && h1.torsion.is_empty());
        assert!(homology(&full_simplex(2), 1).unwrap().betti == 0);
    }

    #[test]
    fn spheres() {
        for m in 2..=5 {
            let cx = simplex_boundary(m);
            let summary = homology_summary(&cx).unwrap();
            for g in &summary {
                let expected = usize::from(g.degree == 0 || g.degree == m - 1);
                assert_eq!(g.betti, expected, "S^{} degree {}", m - 1, g.degree);
                assert!(g.torsion.is_empty());
            }
            assert_eq!(betti_euler_characteristic(&summary), cx.euler_characteristic());
        }
        let h3 = homology(&simplex_boundary(4), 3).unwrap();
        assert_eq!(h3.betti, 1);
    }

    #[test]
    fn degree_out_of_range() {
        assert!(matches!(homology(&simplex_boundary(2), 2), Err(Error::DegreeOutOfRange { .. })));
    }

    /// Six-vertex triangulation of the real projective plane: H_1 = Z/2.
    fn projective_plane() -> SimplicialComplex {
        let tris = [
            [0, 1, 2],
            [0, 2, 3],
            [0, 3, 4],
            [0, 4, 5],
            [0, 1, 5],
            [1, 2, 4],
            [2, 3, 5],
            [1, 3, 4],
            [1, 3, 5],
            [2, 4, 5],
        ];
        complex_from_maximal_faces(6, &tris.iter().map(|t| key(t)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn projective_plane_has_two_torsion() {
        let cx = projective_plane();
        assert_eq!(cx.face_counts(), vec![6, 15, 10]);
        let basis = HomologyBasis::compute(&cx, 1).unwrap();
        assert_eq!(basis.betti(), 0);
        assert_eq!(basis.torsion(), &[int(2)]);
        let g = &basis.torsion_generators()[0];
        assert_eq!(basis.coordinates(g).unwrap().torsion, vec![int(1)]);
        assert_eq!(basis.coordinates(&g.scaled(&int(2))).unwrap().torsion, vec![int(0)]);
        let summary = homology_summary(&cx).unwrap();
        assert_eq!(summary[1].torsion, vec![int(2)]);
        assert_eq!(summary[2].betti, 0);
    }

    #[test]
    fn coordinates_of_basis_and_boundaries() {
        // two triangles' boundaries sharing an edge: wedge-like, H_1 = Z^2
        let cx = complex_from_maximal_faces(4, &[key(&[0, 1]), key(&[1, 2]), key(&[0, 2]), key(&[1, 3]), key(&[2, 3])])
            .unwrap();
        let basis = HomologyBasis::compute(&cx, 1).unwrap();
        assert_eq!(basis.betti(), 2);
        for (i, z) in basis.basis_cycles().iter().enumerate() {
            let mut e = vec![int(0); 2];
            e[i] = int(1);
            assert_eq!(basis.free_coordinates(z).unwrap(), e);
        }
        let combo = basis.basis_cycles()[1].scaled(&int(2)).plus(&basis.basis_cycles()[0].scaled(&int(-1))).unwrap();
        assert_eq!(basis.free_coordinates(&combo).unwrap(), vec![int(-1), int(2)]);

        let mut not_cycle = ChainVector::zero(1);
        not_cycle.add_term(key(&[0, 1]), int(1)).unwrap();
        assert!(matches!(basis.coordinates(&not_cycle), Err(Error::NotACycle)));
    }

    #[test]
    fn boundaries_have_zero_class() {
        let cx = complex_from_maximal_faces(4, &[key(&[0, 1, 2]), key(&[1, 2, 3]), key(&[0, 3])]).unwrap();
        let basis = HomologyBasis::compute(&cx, 1).unwrap();
        assert_eq!(basis.betti(), 1);
        let b = ChainVector::simplex(key(&[0, 1, 2]))
            .boundary()
            .plus(&ChainVector::simplex(key(&[1, 2, 3])).boundary())
            .unwrap();
        assert!(basis.coordinates(&b).unwrap().is_zero());
    }
}
