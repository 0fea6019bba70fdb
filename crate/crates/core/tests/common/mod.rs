#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use transdom_core::colorsearch::{
    bipartite_example, permutation_tournament, substitute, Permutation,
};
use transdom_core::geometry::PointSet;
use transdom_core::{ColoredTournament, ScramblingMask, Tournament};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_tournament(rng: &mut impl Rng, n: usize) -> Tournament {
    Tournament::from_fn(n, |_, _| rng.random_bool(0.5))
}

pub fn random_permutation(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Points whose coordinates on every axis are a random permutation of `0..n`.
pub fn random_points(rng: &mut impl Rng, n: usize, d: usize) -> PointSet {
    let axes: Vec<Vec<usize>> = (0..d).map(|_| random_permutation(rng, n)).collect();
    let points: Vec<Vec<i64>> = (0..n)
        .map(|i| axes.iter().map(|a| a[i] as i64).collect())
        .collect();
    PointSet::from_integers(d, &points).expect("distinct coordinates per axis")
}

/// A transitively colored tournament with at most 3 colors and at most
/// `max_n` vertices, drawn from several constructions.
pub fn random_transitive_coloring(rng: &mut impl Rng, max_n: usize) -> ColoredTournament {
    let max_n = max_n.max(2);
    // the nested construction starts from a triangle
    let choices = if max_n >= 3 { 5 } else { 4 };
    match rng.random_range(0..choices) {
        0 => {
            let n = rng.random_range(1..=max_n);
            ColoredTournament::monochromatic(Tournament::transitive(n))
        }
        1 => {
            let n = rng.random_range(1..=max_n);
            permutation_tournament(
                &Permutation::new(random_permutation(rng, n).iter().map(|v| v + 1).collect())
                    .unwrap(),
            )
        }
        2 => {
            let a = rng.random_range(1..max_n);
            let b = rng.random_range(1..=max_n - a);
            let cross: Vec<(usize, usize)> = (0..a)
                .flat_map(|i| (0..b).map(move |j| (i, j)))
                .filter(|_| rng.random_bool(0.5))
                .collect();
            bipartite_example(a, b, &cross).unwrap()
        }
        3 => {
            let n = rng.random_range(2..=max_n);
            let s = random_points(rng, n, 2);
            let ct = transdom_core::geometry::coordinate_tournament(&s);
            ct.scramble(&ScramblingMask::from_bits(rng.random_range(0..4)))
        }
        _ => {
            // nest transitive colorings by substitution
            let mut ct = transdom_core::colorsearch::three_colored_triangle();
            while ct.n() < max_n {
                let v = rng.random_range(0..ct.n());
                let room = max_n - ct.n() + 1;
                let inner = random_transitive_coloring(rng, room.min(4));
                ct = substitute(&ct, v, &inner).unwrap();
                if rng.random_bool(0.3) {
                    break;
                }
            }
            ct
        }
    }
}
