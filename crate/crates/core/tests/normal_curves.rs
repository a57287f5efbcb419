mod common;

use multicurve::normal::{
    admissible, cut_pieces, disjoint, enumerate_curves, is_peripheral, trace, Component,
    Multicurve, NormalError, Triangulation, WeightVector,
};
use multicurve::oracle::gluing_feasible;
use multicurve::surface::SurfaceSig;
use proptest::prelude::*;

fn model(g: u32, b: u32) -> Triangulation {
    Triangulation::generate(SurfaceSig::new(g, b)).unwrap()
}

fn one(c: &WeightVector) -> Multicurve {
    Multicurve::from_curves([c])
}

#[test]
fn punctured_torus_inventory_matches_slopes() {
    let t = model(1, 1);
    for w in 1..=6 {
        assert_eq!(enumerate_curves(&t, w), common::punctured_torus_slopes(w), "W = {w}");
    }
}

#[test]
fn four_punctured_sphere_inventory_matches_slopes() {
    let t = model(0, 4);
    for w in 1..=6 {
        assert_eq!(
            enumerate_curves(&t, w),
            common::four_punctured_sphere_slopes(&t, w),
            "W = {w}"
        );
    }
}

#[test]
fn farey_surfaces_have_no_disjoint_pairs() {
    for t in [model(1, 1), model(0, 4)] {
        let inv = enumerate_curves(&t, 4);
        for (i, a) in inv.iter().enumerate() {
            for (j, b) in inv.iter().enumerate() {
                assert_eq!(disjoint(&t, &one(a), &one(b)).unwrap(), i == j, "{a} {b}");
            }
        }
    }
}

#[test]
fn haken_sum_of_distinct_slopes_is_connected() {
    let t = model(1, 1);
    let m = trace(&t, &WeightVector(vec![2, 1, 1])).unwrap();
    assert_eq!(m.num_curves(), 1);
}

#[test]
fn disjoint_pairs_on_five_punctured_sphere() {
    let t = model(0, 5);
    let around = |e| common::edge_surrounding_curve(&t, e);
    // edges 0 and 2 join punctures {0,1} and {2,3}
    assert!(disjoint(&t, &one(&around(0)), &one(&around(2))).unwrap());
    assert!(!disjoint(&t, &one(&around(0)), &one(&around(1))).unwrap());
}

#[test]
fn separating_cut_on_five_punctured_sphere() {
    let t = model(0, 5);
    let c = common::edge_surrounding_curve(&t, 0);
    assert_eq!(trace(&t, &c).unwrap().num_curves(), 1);
    assert!(!is_peripheral(&t, &c));
    let cut = cut_pieces(&t, &one(&c)).unwrap();
    assert_eq!(
        cut.sorted_pieces(),
        vec![SurfaceSig::new(0, 3), SurfaceSig::new(0, 4)]
    );
    let d = common::edge_surrounding_curve(&t, 2);
    let piece = cut.locate(&t, &d).unwrap();
    assert_eq!(cut.pieces[piece], SurfaceSig::new(0, 4));
    assert_eq!(cut.locate(&t, &c), Err(NormalError::IsCutCurve));
    let crossing = common::edge_surrounding_curve(&t, 1);
    assert_eq!(cut.locate(&t, &crossing), Err(NormalError::NotDisjoint));
}

#[test]
fn non_separating_cut_on_closed_genus_two() {
    let t = model(2, 0);
    // dual to the first polygon side: crosses it and the first diagonal once
    let mut w = vec![0; t.num_edges()];
    w[0] = 1;
    w[4] = 1;
    let c = WeightVector(w);
    assert!(admissible(&t, &c).unwrap());
    assert_eq!(trace(&t, &c).unwrap().num_curves(), 1);
    let cut = cut_pieces(&t, &one(&c)).unwrap();
    assert_eq!(cut.pieces, vec![SurfaceSig::new(1, 2)]);
}

#[test]
fn vertex_link_of_closed_model_is_peripheral() {
    let t = model(2, 0);
    let link = &t.vertex_links()[0];
    assert!(is_peripheral(&t, link));
    let cut = cut_pieces(&t, &one(link)).unwrap();
    assert!(cut.pieces.contains(&SurfaceSig::new(0, 1)));
}

#[test]
fn inventories_contain_no_trivial_or_peripheral_curves() {
    for (g, b, w) in [(0, 5, 3), (1, 2, 3), (2, 0, 2), (2, 1, 2), (0, 6, 2)] {
        let t = model(g, b);
        for c in enumerate_curves(&t, w) {
            let cut = cut_pieces(&t, &one(&c)).unwrap();
            assert!(
                cut.pieces.iter().all(|p| p.is_essential_piece()),
                "{c} on {g},{b} cuts off {:?}",
                cut.pieces
            );
        }
    }
}

#[test]
fn cuts_along_disjoint_pairs_respect_euler_and_complexity() {
    for (g, b, w) in [(0, 5, 3), (1, 2, 3), (0, 6, 2), (2, 1, 2)] {
        let sig = SurfaceSig::new(g, b);
        let t = model(g, b);
        let inv = enumerate_curves(&t, w);
        let mut checked = 0;
        for (i, a) in inv.iter().enumerate() {
            for c in &inv[i + 1..] {
                let nu = Multicurve::from_curves([a, c]);
                if !disjoint(&t, &one(a), &one(c)).unwrap() {
                    continue;
                }
                let cut = cut_pieces(&t, &nu).unwrap();
                let chi: i64 = cut.pieces.iter().map(|p| p.euler()).sum();
                let xi: i64 = cut.pieces.iter().map(|p| p.complexity()).sum();
                assert_eq!(chi, sig.euler());
                assert_eq!(xi, sig.complexity() - 2, "{a} {c}: {:?}", cut.pieces);
                assert!(gluing_feasible(&cut.pieces, sig), "{:?}", cut.pieces);
                checked += 1;
            }
        }
        assert!(checked > 0, "{sig}");
    }
}

#[test]
fn inventory_is_monotone_in_weight() {
    let t = model(1, 2);
    let mut prev = Vec::new();
    for w in 1..=4 {
        let inv = enumerate_curves(&t, w);
        assert!(prev.iter().all(|c| inv.contains(c)));
        assert!(inv.windows(2).all(|p| p[0] < p[1]));
        prev = inv;
    }
}

#[test]
fn length_mismatch_is_an_error() {
    let t = model(1, 1);
    assert!(matches!(
        admissible(&t, &WeightVector(vec![1, 1])),
        Err(NormalError::LengthMismatch { expected: 3, got: 2 })
    ));
}

fn inventory_strategy() -> impl Strategy<Value = (Triangulation, Vec<WeightVector>)> {
    prop_oneof![
        Just((0u32, 5u32, 3u32)),
        Just((1, 2, 3)),
        Just((1, 1, 5)),
        Just((0, 4, 5)),
        Just((2, 1, 2))
    ]
    .prop_map(|(g, b, w)| {
        let t = model(g, b);
        let inv = enumerate_curves(&t, w);
        (t, inv)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn admissible_vectors_are_closed_under_addition(
        (t, inv) in inventory_strategy(),
        picks in prop::collection::vec((any::<prop::sample::Index>(), any::<prop::sample::Index>()), 16),
    ) {
        for (i, j) in picks {
            let s = &inv[i.index(inv.len())] + &inv[j.index(inv.len())];
            prop_assert!(admissible(&t, &s).unwrap());
        }
    }

    #[test]
    fn multiples_trace_to_parallel_copies(
        (t, inv) in inventory_strategy(),
        i in any::<prop::sample::Index>(),
        n in 1u32..=4,
    ) {
        let c = &inv[i.index(inv.len())];
        let m = trace(&t, &c.scaled(n)).unwrap();
        prop_assert_eq!(m.components, vec![Component { weights: c.clone(), mult: n }]);
    }

    #[test]
    fn disjointness_is_symmetric_and_hereditary(
        (t, inv) in inventory_strategy(),
        picks in prop::collection::vec(any::<prop::sample::Index>(), 1..4),
        q in any::<prop::sample::Index>(),
    ) {
        let beta = Multicurve::from_curves(picks.iter().map(|i| &inv[i.index(inv.len())]));
        let alpha = one(&inv[q.index(inv.len())]);
        let ab = disjoint(&t, &alpha, &beta).unwrap();
        prop_assert_eq!(ab, disjoint(&t, &beta, &alpha).unwrap());
        if ab {
            for c in beta.curves() {
                prop_assert!(disjoint(&t, &alpha, &one(c)).unwrap());
            }
        }
    }
}
