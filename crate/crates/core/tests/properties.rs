use std::collections::BTreeSet;
use std::sync::OnceLock;

use gstopo::choice::{LinearOrder, ProfileSpace};
use gstopo::homology::{
    complex_from_maximal_faces, homology_summary, ChainVector, HomologyBasis, Integer, SimplexKey, SimplicialComplex,
    SimplicialMap,
};
use gstopo::pipeline::{coloring_dimension, h_chain, homologous_tuple_check, Coloring, Orientation, ProfileNerve};
use proptest::prelude::*;

const VERTICES: usize = 7;

fn complex(faces: &[BTreeSet<usize>]) -> SimplicialComplex {
    let keys: Vec<SimplexKey> = faces.iter().map(|f| SimplexKey::new(f.iter().copied().collect()).unwrap()).collect();
    complex_from_maximal_faces(VERTICES, &keys).unwrap()
}

fn random_faces() -> impl Strategy<Value = Vec<BTreeSet<usize>>> {
    proptest::collection::vec(proptest::collection::btree_set(0..VERTICES, 1..=4), 1..8)
}

/// Dense rank over the rationals by fraction-free elimination.
fn rank(rows: Vec<Vec<i128>>) -> usize {
    let mut a = rows;
    let mut r = 0;
    let cols = a.first().map_or(0, Vec::len);
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, p);
        for i in r + 1..a.len() {
            let (f, g) = (a[i][c], a[r][c]);
            if f != 0 {
                for j in c..cols {
                    a[i][j] = a[i][j] * g - a[r][j] * f;
                }
                let d = a[i].iter().fold(0i128, |acc, &x| gcd(acc, x));
                if d > 1 {
                    a[i].iter_mut().for_each(|x| *x /= d);
                }
            }
        }
        r += 1;
    }
    r
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn rational_betti(cx: &SimplicialComplex) -> Vec<usize> {
    let dim = cx.dimension().max(0) as usize;
    let ranks: Vec<usize> = (0..=dim + 1)
        .map(|k| {
            if k == 0 || k > dim {
                return 0;
            }
            let m = cx.boundary_matrix(k).unwrap();
            let dense = m
                .to_dense()
                .into_iter()
                .map(|row| row.into_iter().map(|x| i128::try_from(x).unwrap()).collect())
                .collect();
            rank(dense)
        })
        .collect();
    (0..=dim).map(|k| cx.face_count(k) - ranks[k] - ranks[k + 1]).collect()
}

fn nerve_three_two() -> &'static ProfileNerve {
    static NERVE: OnceLock<ProfileNerve> = OnceLock::new();
    NERVE.get_or_init(|| ProfileNerve::new(3, 2).unwrap())
}

fn acyclic_orientation() -> impl Strategy<Value = Orientation> {
    (0u64..8).prop_map(|c| Orientation::from_code(3, c).unwrap()).prop_filter("acyclic", |g| !g.is_cyclic())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn boundary_of_boundary_vanishes(faces in random_faces()) {
        let cx = complex(&faces);
        for k in 2..=cx.dimension().max(0) as usize {
            let dd = cx.boundary_matrix(k - 1).unwrap().mul(&cx.boundary_matrix(k).unwrap()).unwrap();
            prop_assert!(dd.is_zero());
        }
    }

    #[test]
    fn betti_numbers_match_rational_ranks(faces in random_faces()) {
        let cx = complex(&faces);
        let summary = homology_summary(&cx).unwrap();
        let betti: Vec<usize> = summary.iter().map(|g| g.betti).collect();
        prop_assert_eq!(&betti, &rational_betti(&cx));
        prop_assert_eq!(gstopo::homology::betti_euler_characteristic(&summary), cx.euler_characteristic());
    }

    #[test]
    fn coordinates_ignore_boundaries(faces in random_faces(), coeffs in proptest::collection::vec(-3i64..4, 16)) {
        let cx = complex(&faces);
        for k in 0..cx.dimension().max(0) as usize {
            let basis = HomologyBasis::compute(&cx, k).unwrap();
            let Some(z) = basis.basis_cycles().first() else { continue };
            let c = ChainVector::from_terms(
                k + 1,
                cx.faces(k + 1).iter().zip(&coeffs).map(|(f, &x)| (f.clone(), Integer::from(x))),
            ).unwrap();
            let shifted = z.plus(&c.boundary()).unwrap();
            prop_assert_eq!(basis.coordinates(&shifted).unwrap(), basis.coordinates(z).unwrap());
            let doubled = basis.free_coordinates(&z.scaled(&Integer::from(2))).unwrap();
            let once = basis.free_coordinates(z).unwrap();
            prop_assert_eq!(doubled, once.iter().map(|x| x * 2).collect::<Vec<_>>());
        }
    }

    #[test]
    fn induced_maps_compose(
        faces in random_faces(),
        f in proptest::collection::vec(0..VERTICES, VERTICES),
        g in proptest::collection::vec(0..VERTICES, VERTICES),
    ) {
        let k0 = complex(&faces);
        let image = |cx: &SimplicialComplex, m: &[usize]| -> Vec<BTreeSet<usize>> {
            cx.maximal_faces().iter().map(|s| s.vertices().iter().map(|&v| m[v]).collect()).collect()
        };
        let k1 = complex(&image(&k0, &f));
        let k2 = complex(&image(&k1, &g));
        let mf = SimplicialMap::new(f, &k0, &k1).unwrap();
        let mg = SimplicialMap::new(g, &k1, &k2).unwrap();
        let gf = mf.then(&mg).unwrap();
        for k in 0..=k0.dimension().max(0) as usize {
            mf.check_chain_map(&k0, k).unwrap();
            let bases: Vec<_> = [&k0, &k1, &k2].iter().map(|cx| HomologyBasis::compute(cx, k)).collect();
            let [Ok(b0), Ok(b1), Ok(b2)] = &bases[..] else { continue };
            let composed = mg.induced_on(b1, b2).unwrap().mul(&mf.induced_on(b0, b1).unwrap()).unwrap();
            prop_assert_eq!(composed, gf.induced_on(b0, b2).unwrap());
        }
    }

    #[test]
    fn lehmer_rank_round_trips(n in 1usize..8, seed in any::<u64>()) {
        let count: usize = (1..=n).product();
        let r = (seed % count as u64) as usize;
        let order = LinearOrder::from_lehmer_rank(r, n).unwrap();
        prop_assert_eq!(order.lehmer_rank(), r);
    }

    #[test]
    fn profile_rank_round_trips(n in 2usize..5, voters in 1usize..4, seed in any::<u64>()) {
        let space = ProfileSpace::new(n, voters).unwrap();
        let r = (seed % space.len() as u64) as usize;
        let p = space.profile_of_rank(r).unwrap();
        prop_assert_eq!(space.rank_of_profile(&p).unwrap(), r);
    }

    #[test]
    fn orientation_cycles_are_cycles(codes in proptest::collection::vec(0u64..8, 2)) {
        let nerve = nerve_three_two();
        let gs: Vec<Orientation> = codes.iter().map(|&c| Orientation::from_code(3, c).unwrap()).collect();
        let h = h_chain(nerve.layout(), &gs).unwrap();
        prop_assert!(h.is_supported_on(nerve.complex()));
        prop_assert!(h.boundary().is_zero());
    }

    #[test]
    fn class_depends_only_on_the_shared_slot(
        k in 0usize..2,
        shared in 0u64..8,
        a in acyclic_orientation(),
        b in acyclic_orientation(),
    ) {
        let nerve = nerve_three_two();
        let basis = HomologyBasis::compute(nerve.complex(), 1).unwrap();
        let g = Orientation::from_code(3, shared).unwrap();
        let mut gs = vec![a.clone(), a];
        let mut gs2 = vec![b.clone(), b];
        gs[k] = g.clone();
        gs2[k] = g.clone();
        prop_assert!(homologous_tuple_check(&basis, nerve, &gs, &gs2).unwrap());
        let zero = basis.coordinates(&h_chain(nerve.layout(), &gs).unwrap()).unwrap().is_zero();
        prop_assert_eq!(zero, !g.is_cyclic());
    }

    #[test]
    fn dimension_routes_agree(code in 0u64..1024) {
        let d = coloring_dimension(&Coloring::from_code(5, 2, code).unwrap()).unwrap();
        prop_assert!(d.agrees());
        prop_assert!(d.by_components <= 4);
    }
}
