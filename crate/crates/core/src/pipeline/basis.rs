use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::orientation::{h_chain, ratio_to_generator, Orientation};
use super::{check_homology_envelope, ProfileNerve};
use crate::homology::{ChainVector, HomologyBasis, Integer, IntegerMatrix, SimplicialMap};
use crate::{Error, Result};

/// The tuple with `ĝ` in slot `l` and the base acyclic orientation
/// everywhere else.
pub fn standard_tuple(n: usize, voters: usize, l: usize) -> Result<Vec<Orientation>> {
    let hat = Orientation::hat(n)?;
    let base = Orientation::acyclic_base(n)?;
    Ok((0..voters).map(|k| if k == l { hat.clone() } else { base.clone() }).collect())
}

/// The cycles `h_l`, one per voter.
pub fn standard_basis(nerve: &ProfileNerve) -> Result<Vec<ChainVector>> {
    let (n, voters) = (nerve.alternatives(), nerve.voters());
    (0..voters).map(|l| h_chain(nerve.layout(), &standard_tuple(n, voters, l)?)).collect()
}

/// `p_l`: `(i, j, σ) ↦ (i, j, σ_l)` onto the single-voter nerve.
pub fn projection_map(l: usize, nerve: &ProfileNerve, np: &ProfileNerve) -> Result<SimplicialMap> {
    check_pair(nerve, np)?;
    if l >= nerve.voters() {
        return Err(Error::Precondition(format!("voter {l} out of range for N = {}", nerve.voters())));
    }
    let layout = nerve.layout();
    let vertex_map = (0..layout.vertex_count())
        .map(|v| {
            let (p, code) = layout.split(v);
            np.layout().index_of(p, usize::from(!layout.sign_in_code(code, l).is_plus()))
        })
        .collect();
    SimplicialMap::new(vertex_map, nerve.complex(), np.complex())
}

/// `(i, j, s) ↦ (i, j, (s, ..., s))` from the single-voter nerve.
pub fn diagonal_inclusion(np: &ProfileNerve, nerve: &ProfileNerve) -> Result<SimplicialMap> {
    check_pair(nerve, np)?;
    let all_minus = nerve.layout().sign_vectors() - 1;
    let vertex_map = (0..np.layout().vertex_count())
        .map(|v| {
            let (p, code) = np.layout().split(v);
            nerve.layout().index_of(p, if code == 0 { 0 } else { all_minus })
        })
        .collect();
    SimplicialMap::new(vertex_map, np.complex(), nerve.complex())
}

/// Relabels voters: the image vertex gives voter `l` the sign voter
/// `perm[l]` had.
pub fn permute_voters(nerve: &ProfileNerve, perm: &[usize]) -> Result<SimplicialMap> {
    let voters = nerve.voters();
    let mut seen = vec![false; voters];
    if perm.len() != voters || perm.iter().any(|&p| p >= voters || std::mem::replace(&mut seen[p], true)) {
        return Err(Error::Precondition(format!("{perm:?} is not a permutation of {voters} voters")));
    }
    let layout = nerve.layout();
    let vertex_map = (0..layout.vertex_count())
        .map(|v| {
            let (p, code) = layout.split(v);
            let permuted =
                (0..voters).fold(0, |acc, l| (acc << 1) | usize::from(!layout.sign_in_code(code, perm[l]).is_plus()));
            layout.index_of(p, permuted)
        })
        .collect();
    SimplicialMap::new(vertex_map, nerve.complex(), nerve.complex())
}

fn check_pair(nerve: &ProfileNerve, np: &ProfileNerve) -> Result<()> {
    if np.voters() != 1 || np.alternatives() != nerve.alternatives() {
        return Err(Error::Precondition("target must be the single-voter nerve on the same alternatives".into()));
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisReport {
    pub n: usize,
    pub voters: usize,
    pub betti: usize,
    pub torsion_free: bool,
    /// Row `l`: coordinates of `h_l` in the computed basis.
    pub coefficient_matrix: Vec<Vec<i64>>,
    pub determinant: Option<i64>,
    pub unimodular: bool,
    /// Entry `[k][l]`: class of `p_l(h_k)` against `c = h(ĝ)`.
    pub duality: Vec<Vec<i64>>,
    pub duality_is_identity: bool,
    /// Rank of the degree `n - 2` map induced by each projection.
    pub projection_ranks: Vec<usize>,
    pub functoriality: bool,
    pub acyclic_tuple_is_zero: bool,
    pub passed: bool,
}

/// Checks that `{h_l}` is a basis of `H_{n-2}` and that the projections
/// pair with it as the identity.
pub fn basis_check(n: usize, voters: usize) -> Result<BasisReport> {
    check_homology_envelope(n, voters)?;
    let nerve = ProfileNerve::new(n, voters)?;
    let np = ProfileNerve::new(n, 1)?;
    let k = n - 2;
    let basis = HomologyBasis::compute(nerve.complex(), k)?;
    let np_basis = HomologyBasis::compute(np.complex(), k)?;
    if !basis.torsion().is_empty() || !np_basis.torsion().is_empty() {
        return Err(Error::Internal(format!("torsion in degree {k}")));
    }

    let hs = standard_basis(&nerve)?;
    let coeffs = hs.iter().map(|h| basis.free_coordinates(h)).collect::<Result<Vec<_>>>()?;
    let determinant = if coeffs.len() == basis.betti() {
        let m = IntegerMatrix::from_columns(coeffs.len(), coeffs.iter().map(|c| dense_to_sparse(c)).collect())?;
        m.determinant()?.to_i64()
    } else {
        None
    };
    let unimodular = determinant.is_some_and(|d| d.abs() == 1);

    let c = h_chain(np.layout(), &[Orientation::hat(n)?])?;
    let c_coord = single(&np_basis.free_coordinates(&c)?)?;
    let projections = (0..voters).map(|l| projection_map(l, &nerve, &np)).collect::<Result<Vec<_>>>()?;
    let mut duality = vec![vec![0i64; voters]; voters];
    for (kk, h) in hs.iter().enumerate() {
        for (l, p) in projections.iter().enumerate() {
            let image = single(&np_basis.free_coordinates(&p.apply(h))?)?;
            duality[kk][l] = ratio_to_generator(&image, &c_coord)?;
        }
    }
    let duality_is_identity = (0..voters).all(|a| (0..voters).all(|b| duality[a][b] == i64::from(a == b)));

    let mut projection_ranks = Vec::new();
    for p in &projections {
        p.check_chain_map(nerve.complex(), k)?;
        let m = p.induced_on(&basis, &np_basis)?;
        projection_ranks.push(usize::from(!m.is_zero()));
    }

    let functoriality = check_functoriality(&nerve, &np, &projections)?;
    let base = vec![Orientation::acyclic_base(n)?; voters];
    let acyclic_tuple_is_zero = basis.coordinates(&h_chain(nerve.layout(), &base)?)?.is_zero();

    let passed = basis.betti() == voters
        && unimodular
        && duality_is_identity
        && projection_ranks.iter().all(|&r| r == 1)
        && functoriality
        && acyclic_tuple_is_zero;
    Ok(BasisReport {
        n,
        voters,
        betti: basis.betti(),
        torsion_free: true,
        coefficient_matrix: coeffs.iter().map(|row| to_i64s(row)).collect::<Result<_>>()?,
        determinant,
        unimodular,
        duality,
        duality_is_identity,
        projection_ranks,
        functoriality,
        acyclic_tuple_is_zero,
        passed,
    })
}

/// `p_l ∘ diag = id` for every `l`, and `p_0 ∘ swap(0, 1) = p_1`.
fn check_functoriality(nerve: &ProfileNerve, np: &ProfileNerve, projections: &[SimplicialMap]) -> Result<bool> {
    let diag = diagonal_inclusion(np, nerve)?;
    let identity: Vec<usize> = (0..np.layout().vertex_count()).collect();
    let mut ok = projections.iter().all(|p| diag.then(p).is_ok_and(|m| m.vertex_map() == identity));
    if nerve.voters() >= 2 {
        let mut perm: Vec<usize> = (0..nerve.voters()).collect();
        perm.swap(0, 1);
        let swapped = permute_voters(nerve, &perm)?.then(&projections[0])?;
        ok &= swapped.vertex_map() == projections[1].vertex_map();
    }
    Ok(ok)
}

/// Compares the classes of `h(gs)` and `h(gs2)`. Rejects the pair unless
/// some slot `k` agrees and every other slot is acyclic in both tuples.
pub fn homologous_tuple_check(
    basis: &HomologyBasis<'_>,
    nerve: &ProfileNerve,
    gs: &[Orientation],
    gs2: &[Orientation],
) -> Result<bool> {
    if gs.len() != nerve.voters() || gs2.len() != nerve.voters() {
        return Err(Error::Precondition("tuple length must equal N".into()));
    }
    let admissible = (0..gs.len()).any(|k| {
        gs[k] == gs2[k] && (0..gs.len()).filter(|&l| l != k).all(|l| !gs[l].is_cyclic() && !gs2[l].is_cyclic())
    });
    if !admissible {
        return Err(Error::Precondition("tuples must agree in some slot and be acyclic in every other slot".into()));
    }
    let a = basis.coordinates(&h_chain(nerve.layout(), gs)?)?;
    let b = basis.coordinates(&h_chain(nerve.layout(), gs2)?)?;
    Ok(a == b)
}

fn single(coords: &[Integer]) -> Result<Integer> {
    match coords {
        [c] => Ok(c.clone()),
        _ => Err(Error::Internal(format!("expected rank one, found {} generators", coords.len()))),
    }
}

fn dense_to_sparse(v: &[Integer]) -> crate::homology::SparseVec {
    crate::homology::SparseVec::from_pairs(
        v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect(),
    )
}

pub(crate) fn to_i64s(v: &[Integer]) -> Result<Vec<i64>> {
    v.iter().map(|c| c.to_i64().ok_or_else(|| Error::Internal(format!("{c} does not fit in i64")))).collect()
}
