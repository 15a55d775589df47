mod common;

use braided_rover::complexes::{
    face_poset_complex, matching_complex, order_complex, SimplicialComplex, SimplicialMap,
};
use braided_rover::forest::Forest;
use proptest::prelude::*;

fn ranks(x: &SimplicialComplex) -> Vec<usize> {
    x.reduced_homology(x.dimension())
        .iter()
        .map(|h| h.rank)
        .collect()
}

fn facet_masks(x: &SimplicialComplex) -> Vec<u64> {
    common::closure(x.facets())
}

#[test]
fn matching_complex_faces_match_brute_force() {
    for (d, m) in [(2, 1), (2, 2), (2, 6), (2, 10), (3, 3), (3, 9), (4, 11)] {
        let x = matching_complex(d, m);
        assert_eq!(x.labels().len(), (m + 1).saturating_sub(d), "d={d} m={m}");
        assert_eq!(
            facet_masks(&x),
            common::matching_simplices(d, m),
            "d={d} m={m}"
        );
    }
}

#[test]
fn small_matching_complex_examples() {
    assert!(ranks(&matching_complex(2, 2)).iter().all(|&r| r == 0));
    let s0 = matching_complex(2, 3);
    assert_eq!(ranks(&s0), vec![0, 1]);
    let figure = matching_complex(3, 9);
    assert!(figure.contains(&[0, 5]));
}

#[test]
fn homology_agrees_with_finite_field_ranks() {
    let mut complexes = vec![
        SimplicialComplex::simplex_boundary(3),
        SimplicialComplex::full_simplex(3),
        SimplicialComplex::two_points().join(&SimplicialComplex::two_points()),
        // the six-vertex real projective plane: integral H_1 = Z/2
        SimplicialComplex::from_facets(
            6,
            [
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
            ]
            .map(|f| f.to_vec()),
        )
        .unwrap(),
    ];
    for m in 1..=8 {
        complexes.push(matching_complex(2, m));
    }
    for x in &complexes {
        let h = x.reduced_homology(x.dimension());
        for p in [2, 3] {
            let oracle = common::betti_mod_p(&facet_masks(x), x.dimension(), p);
            assert_eq!(
                common::universal_coefficients(&h, p),
                oracle,
                "p={p} {:?}",
                x.facets()
            );
        }
    }
    let rp2 = &complexes[3];
    let h1 = &rp2.reduced_homology(2)[2];
    assert_eq!((h1.rank, h1.torsion.clone()), (0, vec![2.into()]));
}

#[test]
fn matchings_biject_with_elementary_forests() {
    for d in [2, 3] {
        for m in 1..=9 {
            let x = matching_complex(d, m);
            let simplices = common::matching_simplices(d, m);
            for mask in simplices {
                let paths: Vec<Vec<usize>> = (0..64)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| (i + 1..i + 1 + d).collect())
                    .collect();
                let f = Forest::from_matching(d, m, &paths).unwrap();
                assert!(f.is_elementary());
                assert_eq!(f.num_leaves(), m);
                assert_eq!(f.num_carets(), paths.len());
                assert_eq!(f.to_matching().unwrap(), paths);
                let ids: Vec<usize> = paths.iter().map(|p| p[0] - 1).collect();
                assert!(x.contains(&ids));
            }
        }
    }
}

#[test]
fn links_and_wcm() {
    let tetra = SimplicialComplex::simplex_boundary(3);
    assert_eq!(ranks(&tetra.link(&[2]).unwrap()), vec![0, 0, 1]);
    for n in 0..4 {
        assert!(SimplicialComplex::simplex_boundary(n + 1)
            .is_wcm_homological(n as isize)
            .holds());
    }
    for n in 1..4 {
        let r = SimplicialComplex::two_points().is_wcm_homological(n);
        assert!(!r.holds());
        assert!(r.to_string().contains("homological connectivity"));
    }
}

#[test]
fn complete_join_cases() {
    let x = SimplicialComplex::simplex_boundary(2);
    let id = SimplicialMap::new(x.clone(), x.clone(), vec![0, 1, 2]).unwrap();
    assert!(id.check_complete_join().is_complete_join());

    // S^0 * S^0 onto the edge {0,1}: each target vertex has a two-point fiber
    let s0 = SimplicialComplex::two_points();
    let square = s0.join(&s0);
    let edge = SimplicialComplex::full_simplex(1);
    let proj = SimplicialMap::new(square, edge.clone(), vec![0, 0, 1, 1]).unwrap();
    assert!(proj.check_complete_join().is_complete_join());

    let merge = SimplicialMap::new(edge, SimplicialComplex::full_simplex(0), vec![0, 0]).unwrap();
    let r = merge.check_complete_join();
    assert!(!r.simplexwise_injective);
    assert!(!r.is_complete_join());

    let not_simplicial = SimplicialMap::new(SimplicialComplex::full_simplex(1), s0, vec![0, 1]);
    assert!(not_simplicial.is_err());
}

#[test]
fn order_complex_examples() {
    let chain = order_complex(5, |a, b| a <= b);
    assert_eq!(chain.dimension(), 4);
    assert_eq!(order_complex(4, |a, b| a == b).facets().len(), 4);
    let s0 = SimplicialComplex::two_points();
    let sd = face_poset_complex(&s0.join(&s0));
    assert_eq!(ranks(&sd), vec![0, 0, 1]);
}

#[test]
fn file_format_round_trip() {
    let x = SimplicialComplex::parse("# a circle\nx y\ny z\nz x\n").unwrap();
    assert_eq!(ranks(&x), vec![0, 0, 1]);
    assert_eq!(x.labels(), &["x", "y", "z"]);
}

fn random_complex() -> impl Strategy<Value = SimplicialComplex> {
    (1usize..7).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec(0..n, 1..4), 1..7)
            .prop_map(move |f| SimplicialComplex::from_facets(n, f).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn euler_characteristic_is_alternating_betti_sum(x in random_complex()) {
        let h = x.reduced_homology(x.dimension());
        // reduced: chi = 1 + sum (-1)^k b_k over k >= -1 with b_{-1} included
        let alt: i64 = h.iter().map(|g| if g.dim.rem_euclid(2) == 0 { g.rank as i64 } else { -(g.rank as i64) }).sum();
        prop_assert_eq!(x.euler_characteristic() - 1, alt);
    }

    #[test]
    fn integral_and_mod_p_homology_agree(x in random_complex()) {
        let h = x.reduced_homology(x.dimension());
        for p in [2, 3] {
            prop_assert_eq!(common::universal_coefficients(&h, p), common::betti_mod_p(&facet_masks(&x), x.dimension(), p));
        }
    }

    #[test]
    fn links_of_faces_are_complexes(x in random_complex()) {
        for k in 0..=x.dimension() {
            for s in x.faces(k) {
                let l = x.link(&s).unwrap();
                prop_assert_eq!(l.dimension(), x.facets().iter().filter(|f| s.iter().all(|v| f.contains(v))).map(|f| f.len() as isize - 1).max().unwrap() - k - 1);
            }
        }
    }
}
