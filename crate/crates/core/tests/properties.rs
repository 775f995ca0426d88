use std::collections::BTreeSet;

use num_bigint::BigInt;
use proptest::prelude::*;

use hopfmu_core::chains::{boundary, coboundary, cup, cup_ordered, homology, homology_dense, solve_coboundary};
use hopfmu_core::fibers::extract_fiber;
use hopfmu_core::generators::{boundary_4_simplex, gen_collapse5, gen_hopf, mu_table, relabel_source, tetrahedron_boundary};
use hopfmu_core::hopf::hopf_invariant;
use hopfmu_core::{parse_bundle, serialize_bundle, Bundle, Chain, Cochain, SimplicialComplex, SimplicialMap, VertexId};

/// Pure 2-complexes on at most 7 vertices.
fn complex2() -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec((0u32..7, 0u32..7, 0u32..7), 1..14).prop_filter_map("degenerate", |ts| {
        let facets: BTreeSet<Vec<u32>> = ts
            .into_iter()
            .filter(|(a, b, c)| a != b && b != c && a != c)
            .map(|(a, b, c)| {
                let mut v = vec![a, b, c];
                v.sort();
                v
            })
            .collect();
        if facets.is_empty() {
            return None;
        }
        SimplicialComplex::from_facets("random", &facets.into_iter().collect::<Vec<_>>()).ok()
    })
}

fn cochain(c: &SimplicialComplex, k: usize, values: &[i64]) -> Cochain {
    let mut x = Cochain::zero(k);
    for (s, v) in c.faces(k).iter().zip(values.iter().cycle()) {
        x.set(s.clone(), BigInt::from(*v));
    }
    x
}

fn chain(c: &SimplicialComplex, k: usize, values: &[i64]) -> Chain {
    let mut x = Chain::zero(k);
    for (s, v) in c.faces(k).iter().zip(values.iter().cycle()) {
        x.add(s.clone(), &BigInt::from(*v));
    }
    x
}

fn values() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..=4, 1..20)
}

/// Simplicial vertex maps from the 5-vertex 3-sphere onto the 4-vertex 2-sphere.
fn fold() -> impl Strategy<Value = SimplicialMap> {
    prop::collection::vec(0u32..4, 5).prop_filter_map("not simplicial", |a| {
        let f = SimplicialMap::new("fold", boundary_4_simplex(), tetrahedron_boundary(), a.into_iter().map(VertexId).collect()).ok()?;
        f.validate_simplicial().is_valid().then_some(f)
    })
}

proptest! {
    #[test]
    fn boundary_squares_to_zero(c in complex2(), v in values()) {
        let x = chain(&c, 2, &v);
        prop_assert!(boundary(&c, &boundary(&c, &x).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn coboundary_squares_to_zero(c in complex2(), v in values()) {
        let x = cochain(&c, 0, &v);
        prop_assert!(coboundary(&c, &coboundary(&c, &x)).is_zero());
    }

    #[test]
    fn coboundary_is_adjoint(c in complex2(), v in values(), w in values(), k in 0usize..2) {
        let x = cochain(&c, k, &v);
        let y = chain(&c, k + 1, &w);
        prop_assert_eq!(coboundary(&c, &x).pair(&y), x.pair(&boundary(&c, &y).unwrap()));
    }

    #[test]
    fn cup_satisfies_leibniz(c in complex2(), v in values(), w in values(), shuffle in Just((0..7).collect::<Vec<u32>>()).prop_shuffle()) {
        for p in 0..2usize {
            let a = cochain(&c, p, &v);
            let b = cochain(&c, 1 - p, &w);
            let key = |x: VertexId| shuffle[x.0 as usize];
            for ordered in [false, true] {
                let cupf = |x: &Cochain, y: &Cochain| if ordered { cup_ordered(&c, x, y, key) } else { cup(&c, x, y) };
                let second = cupf(&a, &coboundary(&c, &b));
                let second = if p == 0 { second } else { second.negated() };
                prop_assert_eq!(coboundary(&c, &cupf(&a, &b)), cupf(&coboundary(&c, &a), &b).add(&second));
            }
        }
    }

    #[test]
    fn solve_coboundary_is_exact(c in complex2(), v in values(), k in 0usize..2) {
        let target = coboundary(&c, &cochain(&c, k, &v));
        let psi = solve_coboundary(&c, &target).unwrap();
        prop_assert_eq!(coboundary(&c, &psi), target);
    }

    #[test]
    fn homology_matches_euler_characteristic(c in complex2()) {
        let h = homology(&c);
        let chi: i64 = h.iter().enumerate().map(|(k, g)| if k % 2 == 0 { g.rank as i64 } else { -(g.rank as i64) }).sum();
        prop_assert_eq!(chi, c.euler_characteristic());
        prop_assert_eq!(h, homology_dense(&c));
    }

    #[test]
    fn pullback_commutes_with_coboundary(f in fold(), v in values(), k in 0usize..2) {
        let x = cochain(f.target(), k, &v);
        prop_assert_eq!(coboundary(f.source(), &f.pullback(&x)), f.pullback(&coboundary(f.target(), &x)));
    }

    #[test]
    fn mu_counts_nondegenerate_facets(f in fold()) {
        let total: usize = f.mu_all().values().sum();
        let nondegenerate = f.source().facets().iter().filter(|t| f.image_simplex(t).map(|s| s.len() == 3).unwrap_or(false)).count();
        prop_assert_eq!(total, nondegenerate);
        for s in f.target().faces(2) {
            let d = extract_fiber(&f, s).unwrap();
            prop_assert_eq!(d.segment_count(), f.mu(s).unwrap());
        }
        prop_assert_eq!(hopf_invariant(&f).unwrap().value, 0);
    }

    #[test]
    fn relabeling_preserves_mu_and_hopf(seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for f in [gen_collapse5().unwrap().map, gen_hopf().unwrap().map] {
            let mut perm: Vec<u32> = (0..f.source().vertex_count() as u32).collect();
            perm.shuffle(&mut rng);
            let g = relabel_source(&f, &perm).unwrap();
            prop_assert_eq!(mu_table(&g), mu_table(&f));
            prop_assert_eq!(hopf_invariant(&g).unwrap().value.abs(), hopf_invariant(&f).unwrap().value.abs());
        }
    }

    #[test]
    fn bundle_roundtrip(f in fold()) {
        let text = serialize_bundle(&Bundle::from_map(&f));
        let back = parse_bundle(&text).unwrap();
        prop_assert_eq!(serialize_bundle(&back), text);
        prop_assert_eq!(back.maps[0].assignment(), f.assignment());
    }
}
