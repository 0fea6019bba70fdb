mod common;

use proptest::prelude::*;
use transdom_core::geometry::{
    all_scramblings, box_contains, box_cover, classify_scrambling_3d, coordinate_tournament,
    exists_point_in_box, extremal_pointset, verify_box_cover, BoxCoverOptions, ClassKind, PointSet,
    ScramblingClass,
};
use transdom_core::solvers::domination_number;
use transdom_core::{ScramblingMask, VertexSet};

/// Direct definition on the exact coordinates: every point outside `p` lies
/// in the closed box of two members.
fn cover_oracle(s: &PointSet, p: &VertexSet) -> bool {
    (0..s.len()).filter(|&x| !p.contains(x)).all(|x| {
        p.iter().any(|&a| {
            p.iter()
                .any(|&b| a != b && box_contains(s.point(a), s.point(b), s.point(x)).unwrap())
        })
    })
}

#[test]
fn classification_partitions_the_sixteen_masks() {
    let mut counts = [0usize; 3];
    for m in ScramblingMask::all(4) {
        match classify_scrambling_3d(m).unwrap().kind() {
            ClassKind::Dictatorship => counts[0] += 1,
            ClassKind::TwoMajority => counts[1] += 1,
            ClassKind::Parity => counts[2] += 1,
        }
    }
    assert_eq!(counts, [6, 8, 2]);
    assert!(classify_scrambling_3d(ScramblingMask::from_bits(16)).is_err());
}

#[test]
fn extremal_sets_have_empty_boxes() {
    for d in 1..=3 {
        let s = extremal_pointset(d).unwrap();
        assert_eq!(s.len(), 1 << (1 << (d - 1)));
        assert_eq!(exists_point_in_box(&s), None);
        let all: VertexSet = (0..s.len()).collect();
        let cert = box_cover(&s, &BoxCoverOptions::default()).unwrap();
        assert_eq!(cert.cover, all);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn betweenness_matches_boxes(seed: u64, n in 1usize..11, d in 1usize..=3, members in proptest::collection::vec(0usize..11, 0..7)) {
        let s = common::random_points(&mut common::rng(seed), n, d);
        let p: VertexSet = members.into_iter().filter(|&v| v < n).collect();
        let ct = coordinate_tournament(&s);
        let boxes = verify_box_cover(&s, &p);
        prop_assert_eq!(ct.is_enclosure(&p), boxes);
        prop_assert_eq!(boxes, cover_oracle(&s, &p));
    }

    #[test]
    fn coordinate_tournaments_are_transitively_colored(seed: u64, n in 1usize..14, d in 1usize..=4) {
        let s = common::random_points(&mut common::rng(seed), n, d);
        let ct = coordinate_tournament(&s);
        prop_assert_eq!(ct.k(), 1 << (d - 1));
        prop_assert!(ct.is_transitively_colored());
    }

    #[test]
    fn classes_follow_their_closed_forms(seed: u64, n in 2usize..16) {
        let s = common::random_points(&mut common::rng(seed), n, 3);
        for (mask, ct) in all_scramblings(&s).unwrap() {
            let class = classify_scrambling_3d(mask).unwrap();
            for u in 0..n {
                for v in (0..n).filter(|&v| v != u) {
                    prop_assert_eq!(ct.base().beats(u, v), class.wins(s.point(u), s.point(v)));
                }
            }
        }
    }

    #[test]
    fn scrambling_domination_by_class(seed: u64, n in 3usize..40) {
        let s = common::random_points(&mut common::rng(seed), n, 3);
        for (mask, ct) in all_scramblings(&s).unwrap() {
            let dom = domination_number(ct.base(), 100).unwrap();
            match classify_scrambling_3d(mask).unwrap() {
                ScramblingClass::Dictatorship { .. } => prop_assert_eq!(dom, 1),
                ScramblingClass::TwoMajority { .. } => prop_assert!(dom <= 3),
                ScramblingClass::Parity { .. } => prop_assert!(dom <= 17),
            }
        }
    }

    #[test]
    fn box_cover_certificates_verify(seed: u64, n in 1usize..60, d in 1usize..=3) {
        let s = common::random_points(&mut common::rng(seed), n, d);
        let cert = box_cover(&s, &BoxCoverOptions::default()).unwrap();
        prop_assert!(cert.verify(&s));
        prop_assert!(verify_box_cover(&s, &cert.cover));
        prop_assert!(cover_oracle(&s, &cert.cover));
        if d == 3 {
            let (_, parity_max) = cert.class_sizes(ClassKind::Parity);
            prop_assert!(cert.cover.len() <= 30 + 2 * parity_max);
            prop_assert_eq!(cert.class_sizes(ClassKind::Dictatorship), (6, 1));
        }
    }

    #[test]
    fn rank_relabeling_preserves_boxes(seed: u64, n in 1usize..12, d in 1usize..=3) {
        let s = common::random_points(&mut common::rng(seed), n, d);
        let relabeled = PointSet::rank_relabel(d, s.points().to_vec()).unwrap();
        prop_assert_eq!(coordinate_tournament(&relabeled), coordinate_tournament(&s));
    }
}
