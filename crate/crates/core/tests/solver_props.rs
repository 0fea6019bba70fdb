mod common;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;
use transdom_core::solvers::{
    enclosure_via_scramblings, fractional_transversal_approx, fractional_transversal_exact,
    greedy_dominating_set, min_dominating_set, min_enclosure_set, DominationMethod,
};
use transdom_core::{ScramblingMask, Tournament};

/// Smallest dominating set size by enumerating subsets in increasing size.
fn naive_domination_number(t: &Tournament) -> usize {
    let n = t.n();
    let dominated = |mask: u32| {
        (0..n).all(|v| mask >> v & 1 == 1 || (0..n).any(|u| mask >> u & 1 == 1 && t.beats(u, v)))
    };
    (0..=n)
        .find(|&size| (0u32..1 << n).any(|m| m.count_ones() as usize == size && dominated(m)))
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn exact_solver_matches_naive_oracle(seed: u64, n in 1usize..=12) {
        let t = common::random_tournament(&mut common::rng(seed), n);
        let cert = min_dominating_set(&t).unwrap();
        prop_assert!(cert.optimal);
        prop_assert!(t.dominates(&cert.set));
        prop_assert_eq!(cert.size, cert.set.len());
        prop_assert_eq!(cert.size, naive_domination_number(&t));
        let greedy = greedy_dominating_set(&t);
        prop_assert!(t.dominates(&greedy));
        prop_assert!(greedy.len() >= cert.size);
    }

    #[test]
    fn fractional_cover_is_below_two_and_dual(seed: u64, n in 1usize..=30) {
        let t = common::random_tournament(&mut common::rng(seed), n);
        let h = t.domination_hypergraph();
        let sol = fractional_transversal_exact(&h).unwrap();
        let two = BigRational::from_integer(2.into());
        prop_assert!(sol.value < two);
        prop_assert_eq!(&sol.value, &sol.matching_value);
        // independent feasibility checks of both optima
        for e in h.edges() {
            let cover: BigRational = e.ones().map(|v| sol.weights[v].clone()).sum();
            prop_assert!(cover >= BigRational::one());
        }
        for v in 0..n {
            let load: BigRational = h.edges().iter().zip(&sol.matching).filter(|(e, _)| e[v]).map(|(_, y)| y.clone()).sum();
            prop_assert!(load <= BigRational::one());
        }
        prop_assert!(sol.matching.iter().all(|y| *y >= BigRational::zero()));
        // weak duality against the trivial all-ones transversal
        prop_assert!(sol.matching_value <= BigRational::from_integer((n as i64).into()));
        let approx = fractional_transversal_approx(&h).unwrap();
        prop_assert!((approx.value - sol.value.to_f64().unwrap()).abs() < 1e-9);
    }

    #[test]
    fn domination_dominates_the_fractional_bound(seed: u64, n in 1usize..=20) {
        let t = common::random_tournament(&mut common::rng(seed), n);
        let tau_star = fractional_transversal_exact(&t.domination_hypergraph()).unwrap().value;
        let dom = min_dominating_set(&t).unwrap().size;
        prop_assert!(BigRational::from_integer((dom as i64).into()) >= tau_star);
    }

    #[test]
    fn scrambling_union_is_an_enclosure(seed: u64, n in 2usize..=12) {
        let ct = common::random_transitive_coloring(&mut common::rng(seed), n);
        let union = enclosure_via_scramblings(&ct, DominationMethod::Exact).unwrap();
        prop_assert!(ct.is_enclosure(&union.set));
        prop_assert!(union.set.len() <= union.part_sum());
        prop_assert!(union.part_sum() <= (1usize << ct.k()) * union.max_part());
        prop_assert_eq!(union.parts.len(), 1usize << ct.k());
        for (mask, part) in &union.parts {
            prop_assert!(ct.scramble(mask).base().dominates(part));
        }
        let best = min_enclosure_set(&ct).unwrap();
        prop_assert!(ct.is_enclosure(&best));
        prop_assert!(best.len() <= union.set.len());
        let greedy = enclosure_via_scramblings(&ct, DominationMethod::Greedy).unwrap();
        prop_assert!(ct.is_enclosure(&greedy.set));
    }

    #[test]
    fn empty_mask_part_dominates_the_base(seed: u64, n in 2usize..=10) {
        let ct = common::random_transitive_coloring(&mut common::rng(seed), n);
        let union = enclosure_via_scramblings(&ct, DominationMethod::Exact).unwrap();
        let (mask, part) = &union.parts[0];
        prop_assert_eq!(*mask, ScramblingMask::EMPTY);
        prop_assert!(ct.base().dominates(part));
    }
}
