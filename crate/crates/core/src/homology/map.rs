use num_traits::Zero;

use super::chain::ChainVector;
use super::complex::{SimplexKey, SimplicialComplex};
use super::groups::HomologyBasis;
use super::matrix::{Integer, IntegerMatrix, SparseVec};
use crate::{Error, Result};

/// A vertex map `source -> target` that sends every face of the source
/// to a face of the target.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    vertex_map: Vec<usize>,
    target_vertices: usize,
}

impl SimplicialMap {
    /// Checks that the map is defined on every source vertex and that
    /// every maximal source face lands on a target face.
    pub fn new(vertex_map: Vec<usize>, source: &SimplicialComplex, target: &SimplicialComplex) -> Result<Self> {
        if vertex_map.len() != source.vertex_count() {
            return Err(Error::Shape(format!(
                "vertex map of length {} on {} source vertices",
                vertex_map.len(),
                source.vertex_count()
            )));
        }
        if let Some(&v) = vertex_map.iter().find(|&&v| v >= target.vertex_count()) {
            return Err(Error::VertexOutOfRange { vertex: v, count: target.vertex_count() });
        }
        let map = Self { vertex_map, target_vertices: target.vertex_count() };
        for face in source.maximal_faces() {
            let mut image: Vec<usize> = face.vertices().iter().map(|&v| map.vertex_map[v]).collect();
            image.sort_unstable();
            image.dedup();
            if !target.contains_vertices(&image) {
                return Err(Error::NotSimplicial { face: face.vertices().to_vec(), image });
            }
        }
        Ok(map)
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    pub fn apply_vertex(&self, v: usize) -> usize {
        self.vertex_map[v]
    }

    /// Image of an oriented simplex under the chain map: `None` when two
    /// vertices collide, otherwise the sorted image and the sign of the
    /// sorting permutation.
    pub fn image(&self, face: &SimplexKey) -> Option<(SimplexKey, bool)> {
        let image: Vec<usize> = face.vertices().iter().map(|&v| self.vertex_map[v]).collect();
        let mut inversions = 0usize;
        for i in 0..image.len() {
            for j in i + 1..image.len() {
                match image[i].cmp(&image[j]) {
                    std::cmp::Ordering::Equal => return None,
                    std::cmp::Ordering::Greater => inversions += 1,
                    std::cmp::Ordering::Less => {}
                }
            }
        }
        let mut sorted = image;
        sorted.sort_unstable();
        Some((SimplexKey::from_sorted(sorted), inversions.is_multiple_of(2)))
    }

    pub fn apply(&self, chain: &ChainVector) -> ChainVector {
        let mut out = ChainVector::zero(chain.dimension());
        for (face, c) in chain.terms() {
            if let Some((img, positive)) = self.image(face) {
                let c = if positive { c.clone() } else { -c };
                out.add_term(img, c).expect("image has the source dimension");
            }
        }
        out
    }

    /// `self` followed by `then`.
    pub fn then(&self, then: &SimplicialMap) -> Result<SimplicialMap> {
        if then.vertex_map.len() != self.target_vertices {
            return Err(Error::Shape("maps do not compose".into()));
        }
        Ok(SimplicialMap {
            vertex_map: self.vertex_map.iter().map(|&v| then.vertex_map[v]).collect(),
            target_vertices: then.target_vertices,
        })
    }

    /// Checks `∂ f# = f# ∂` on every `k`-face of `source`.
    pub fn check_chain_map(&self, source: &SimplicialComplex, k: usize) -> Result<()> {
        for face in source.faces(k) {
            let simplex = ChainVector::simplex(face.clone());
            if self.apply(&simplex).boundary() != self.apply(&simplex.boundary()) {
                return Err(Error::Internal(format!("chain map does not commute with the boundary at {face:?}")));
            }
        }
        Ok(())
    }

    /// Matrix of `H_k(f)` on free parts: column `j` holds the coordinates
    /// of the image of the `j`-th source basis cycle.
    pub fn induced_on(&self, source: &HomologyBasis<'_>, target: &HomologyBasis<'_>) -> Result<IntegerMatrix> {
        if source.degree() != target.degree() {
            return Err(Error::Precondition("bases of different degrees".into()));
        }
        let cols =
            source
                .basis_cycles()
                .iter()
                .map(|z| {
                    let image = self.apply(z);
                    let coords = target.free_coordinates(&image)?;
                    Ok(SparseVec::from_pairs(
                        coords.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect::<Vec<(usize, Integer)>>(),
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
        IntegerMatrix::from_columns(target.betti(), cols)
    }
}

/// `H_k(f)` between freshly computed bases, after confirming `f#` is a
/// chain map in degrees `k` and `k + 1`.
pub fn induced_homology_matrix(
    map: &SimplicialMap,
    k: usize,
    source: &SimplicialComplex,
    target: &SimplicialComplex,
) -> Result<IntegerMatrix> {
    map.check_chain_map(source, k)?;
    map.check_chain_map(source, k + 1)?;
    let src = HomologyBasis::compute(source, k)?;
    let dst = HomologyBasis::compute(target, k)?;
    map.induced_on(&src, &dst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::complex::{full_simplex, simplex_boundary};

    #[test]
    fn image_signs_and_collapse() {
        let cx = simplex_boundary(2);
        let swap = SimplicialMap::new(vec![1, 0, 2], &cx, &cx).unwrap();
        let (img, positive) = swap.image(&SimplexKey::new(vec![0, 1]).unwrap()).unwrap();
        assert_eq!(img.vertices(), &[0, 1]);
        assert!(!positive);
        let fold = SimplicialMap::new(vec![0, 0, 1], &cx, &full_simplex(1)).unwrap();
        assert!(fold.image(&SimplexKey::new(vec![0, 1]).unwrap()).is_none());
    }

    #[test]
    fn rejects_non_simplicial() {
        let tri = full_simplex(2);
        let circle = simplex_boundary(2);
        assert!(matches!(SimplicialMap::new(vec![0, 1, 2], &tri, &circle), Err(Error::NotSimplicial { .. })));
        assert!(SimplicialMap::new(vec![0, 1], &tri, &circle).is_err());
    }

    #[test]
    fn degree_of_circle_maps() {
        let c = simplex_boundary(2);
        let id = SimplicialMap::new(vec![0, 1, 2], &c, &c).unwrap();
        let reflection = SimplicialMap::new(vec![0, 2, 1], &c, &c).unwrap();
        let rotation = SimplicialMap::new(vec![1, 2, 0], &c, &c).unwrap();
        let one = Integer::from(1);
        assert_eq!(induced_homology_matrix(&id, 1, &c, &c).unwrap().get(0, 0), one);
        assert_eq!(induced_homology_matrix(&reflection, 1, &c, &c).unwrap().get(0, 0), -one.clone());
        assert_eq!(induced_homology_matrix(&rotation, 1, &c, &c).unwrap().get(0, 0), one);
        let composite = reflection.then(&reflection).unwrap();
        assert_eq!(composite.vertex_map(), &[0, 1, 2]);
    }

    #[test]
    fn constant_map_kills_top_class() {
        let s2 = simplex_boundary(3);
        let point = full_simplex(0);
        let f = SimplicialMap::new(vec![0; 4], &s2, &point).unwrap();
        f.check_chain_map(&s2, 1).unwrap();
        let h = HomologyBasis::compute(&s2, 2).unwrap();
        assert!(h.basis_cycles().iter().all(|z| f.apply(z).is_zero()));
    }
}
