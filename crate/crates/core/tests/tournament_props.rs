mod common;

use proptest::prelude::*;
use transdom_core::{ColoredTournament, ScramblingMask, Tournament, VertexSet};

/// Exhaustive oracle: does any 2-coloring of the edges make both classes
/// transitive?
fn has_transitive_two_coloring(t: &Tournament) -> bool {
    let edges: Vec<(usize, usize)> = t.edges().collect();
    (0u32..1 << edges.len()).any(|bits| {
        let colored: Vec<(usize, usize, usize)> = edges
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| (u, v, 1 + (bits >> i & 1) as usize))
            .collect();
        ColoredTournament::from_colored_edges(t.n(), 2, &colored)
            .unwrap()
            .is_transitively_colored()
    })
}

#[test]
fn two_colorable_iff_acyclic_up_to_five_vertices() {
    for n in 1..=5usize {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        for bits in 0u32..1 << pairs.len() {
            let t = Tournament::from_fn(n, |u, v| {
                let i = pairs.iter().position(|&p| p == (u, v)).unwrap();
                bits >> i & 1 == 1
            });
            assert_eq!(
                has_transitive_two_coloring(&t),
                t.is_acyclic(),
                "n={n} bits={bits:b}"
            );
        }
    }
}

fn arbitrary_coloring(seed: u64, n: usize, k: usize) -> ColoredTournament {
    use rand::Rng;
    let mut rng = common::rng(seed);
    let t = common::random_tournament(&mut rng, n);
    ColoredTournament::new(t, k, |_, _| rng.random_range(1..=k)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn scrambling_twice_is_the_identity(seed: u64, n in 1usize..12, k in 1usize..6, mask in 0u64..64) {
        let ct = arbitrary_coloring(seed, n, k);
        let m = ScramblingMask::from_bits(mask & ((1 << k) - 1));
        prop_assert_eq!(ct.scramble(&m).scramble(&m), ct);
    }

    #[test]
    fn scrambling_preserves_transitivity(seed: u64, n in 2usize..12) {
        let ct = common::random_transitive_coloring(&mut common::rng(seed), n);
        prop_assert!(ct.is_transitively_colored());
        for m in ScramblingMask::all(ct.k()) {
            prop_assert!(ct.scramble(&m).is_transitively_colored(), "mask {:?}", m);
        }
    }

    #[test]
    fn domination_matches_transversal(seed: u64, n in 1usize..14, members in proptest::collection::vec(0usize..14, 0..6)) {
        let t = common::random_tournament(&mut common::rng(seed), n);
        let s: VertexSet = members.into_iter().filter(|&v| v < n).collect();
        let h = t.domination_hypergraph();
        prop_assert_eq!(t.dominates(&s), h.is_transversal(&s));
        // direct definition: every vertex is in S or beaten by a member of S
        let direct = (0..n).all(|v| s.contains(v) || s.iter().any(|&u| t.beats(u, v)));
        prop_assert_eq!(t.dominates(&s), direct);
    }

    #[test]
    fn reversal_is_an_involution(seed: u64, n in 1usize..16) {
        let t = common::random_tournament(&mut common::rng(seed), n);
        prop_assert_eq!(t.reversed().reversed(), t.clone());
        prop_assert_eq!(t.is_acyclic(), t.find_cyclic_triangle().is_none());
    }
}
