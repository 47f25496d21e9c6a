use std::collections::HashSet;

use super::layout::VertexLayout;
use super::{check_profiles, NERVE_PROFILE_LIMIT};
use crate::choice::ProfileSpace;
use crate::homology::{nerve, CoverData, SimplexKey, SimplicialComplex};
use crate::{Error, Result};

/// The cover of the `n!` orders by the sets `U_ij^±`.
pub fn cover_p(n: usize) -> Result<CoverData> {
    cover_profiles(n, 1)
}

/// The cover of the profile space by the sets `U_ij^σ`, indexed by
/// [`VertexLayout`].
pub fn cover_profiles(n: usize, voters: usize) -> Result<CoverData> {
    let layout = VertexLayout::new(n, voters)?;
    let space = check_profiles(n, voters, NERVE_PROFILE_LIMIT)?;
    let mut sets = vec![vec![false; space.len()]; layout.vertex_count()];
    for (rank, sig) in signatures(&layout, &space).into_iter().enumerate() {
        for v in sig {
            sets[v][rank] = true;
        }
    }
    CoverData::new(space.len(), sets, layout.labels())
}

/// Vertex signature of every profile, by profile rank.
pub(crate) fn signatures(layout: &VertexLayout, space: &ProfileSpace) -> Vec<Vec<usize>> {
    let orders = space.orders();
    (0..space.len())
        .map(|rank| {
            let digits = space.digits(rank).expect("rank in range");
            let profile: Vec<_> = digits.iter().map(|&d| &orders[d]).collect();
            layout.signature(&profile)
        })
        .collect()
}

/// The cover of `A` by `U_i = A - {a_i}`.
pub fn cover_a(n: usize) -> Result<CoverData> {
    if n < 2 {
        return Err(Error::Envelope { n, voters: 0, reason: "need n >= 2".into() });
    }
    CoverData::from_predicate(n, (0..n).map(|i| format!("U{i}")).collect(), |s, e| s != e)
}

pub fn nerve_na(n: usize) -> Result<SimplicialComplex> {
    nerve(&cover_a(n)?)
}

/// Nerve of the profile cover, from the profile witnesses.
pub fn nerve_nprofiles(n: usize, voters: usize) -> Result<SimplicialComplex> {
    let layout = VertexLayout::new(n, voters)?;
    let space = check_profiles(n, voters, NERVE_PROFILE_LIMIT)?;
    let mut maximal: Vec<SimplexKey> = signatures(&layout, &space)
        .into_iter()
        .map(|s| SimplexKey::new(s).expect("one vertex per pair"))
        .collect::<HashSet<_>>()
        .into_iter()
        .collect();
    maximal.sort_unstable();
    SimplicialComplex::from_maximal_faces(layout.vertex_count(), &maximal)
}

/// The single-voter nerve on the `n!` orders.
pub fn nerve_np(n: usize) -> Result<SimplicialComplex> {
    nerve_nprofiles(n, 1)
}

/// Nerve of the open cones `K_ij^σ` in the product of per-voter utility
/// spaces. A family of cones meets iff, for every voter, the strict
/// inequalities it imposes on that voter's coordinates are acyclic.
pub fn nerve_nm(n: usize, voters: usize) -> Result<SimplicialComplex> {
    let layout = VertexLayout::new(n, voters)?;
    check_profiles(n, voters, NERVE_PROFILE_LIMIT)?;
    // arcs[v][l] = (from, to): x_from > x_to for voter l
    let arcs: Vec<Vec<(usize, usize)>> = (0..layout.vertex_count())
        .map(|v| {
            let (p, code) = layout.split(v);
            let pair = layout.pairs()[p];
            (0..voters)
                .map(|l| if layout.sign_in_code(code, l).is_plus() { (pair.i, pair.j) } else { (pair.j, pair.i) })
                .collect()
        })
        .collect();

    let mut faces = HashSet::new();
    let mut stack: Vec<(Vec<usize>, Vec<Vec<u16>>)> = vec![(Vec::new(), vec![vec![0u16; n]; voters])];
    while let Some((face, adj)) = stack.pop() {
        let start = face.last().map_or(0, |&v| v + 1);
        for v in start..layout.vertex_count() {
            let mut next = adj.clone();
            for (l, &(a, b)) in arcs[v].iter().enumerate() {
                next[l][a] |= 1 << b;
            }
            if next.iter().all(|g| is_acyclic(g)) {
                let mut grown = face.clone();
                grown.push(v);
                faces.insert(SimplexKey::new(grown.clone()).expect("increasing"));
                stack.push((grown, next));
            }
        }
    }
    Ok(SimplicialComplex::from_face_set(layout.vertex_count(), faces))
}

/// Kahn's algorithm on a digraph given by out-neighbour bitmasks.
fn is_acyclic(adj: &[u16]) -> bool {
    let n = adj.len();
    let mut alive: u16 = if n == 16 { u16::MAX } else { (1 << n) - 1 };
    loop {
        let sink = (0..n).find(|&v| alive & (1 << v) != 0 && adj[v] & alive == 0);
        match sink {
            Some(v) => alive &= !(1 << v),
            None => return alive == 0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::simplex_boundary;

    #[test]
    fn cover_p_sizes() {
        let cover = cover_p(3).unwrap();
        assert_eq!(cover.len(), 6);
        assert!((0..6).all(|s| cover.set_size(s) == 3));
        for p in 0..3 {
            for e in 0..6 {
                assert!(cover.contains(2 * p, e) != cover.contains(2 * p + 1, e));
            }
        }
    }

    #[test]
    fn cover_profiles_sizes() {
        let cover = cover_profiles(3, 2).unwrap();
        assert_eq!(cover.len(), 12);
        assert!((0..12).all(|s| cover.set_size(s) == 9));
        assert!((0..cover.ground_size()).all(|e| cover.signature(e).len() == 3));
        let cx = nerve(&cover).unwrap();
        assert!(cx.maximal_faces().iter().all(|f| f.len() == 3));
        assert_eq!(cx, nerve_nprofiles(3, 2).unwrap());
    }

    #[test]
    fn na_is_a_sphere() {
        let na = nerve_na(4).unwrap();
        assert_eq!(na.total_faces(), 14);
        assert_eq!(na, simplex_boundary(3));
        assert!(!na.contains_vertices(&[0, 1, 2, 3]));
    }

    #[test]
    fn cone_nerve_rejects_three_cycles() {
        let nm = nerve_nm(3, 1).unwrap();
        // vertices (0,1,+)=0, (0,2,-)=3, (1,2,+)=4
        assert!(!nm.contains_vertices(&[0, 3, 4]));
        for pair in [[0, 3], [0, 4], [3, 4]] {
            assert!(nm.contains_vertices(&pair));
        }
        assert!(!nm.contains_vertices(&[0, 1]));
    }

    #[test]
    fn acyclicity() {
        assert!(is_acyclic(&[0b010, 0b100, 0]));
        assert!(!is_acyclic(&[0b010, 0b100, 0b001]));
        assert!(!is_acyclic(&[0b010, 0b001]));
    }
}
