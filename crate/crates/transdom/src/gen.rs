//! Seeded instance generators. All randomness flows through ChaCha8 so a
//! seed reproduces the same instance on every platform.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use transdom_core::colorsearch::{
    bipartite_example, permutation_tournament, substitute, three_colored_triangle, Permutation,
};
use transdom_core::geometry::{coordinate_tournament, PointSet};
use transdom_core::{ColoredTournament, ScramblingMask, Tournament};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_tournament(rng: &mut impl Rng, n: usize) -> Tournament {
    Tournament::from_fn(n, |_, _| rng.random_bool(0.5))
}

/// A uniformly random ordering of `0..n`.
pub fn random_order(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

pub fn random_permutation(rng: &mut impl Rng, n: usize) -> Permutation {
    Permutation::new(random_order(rng, n).into_iter().map(|v| v + 1).collect())
        .expect("a shuffled range is a permutation")
}

/// `n` points in `R^d` whose coordinates on each axis are a random
/// permutation of `0..n`, hence in general position.
pub fn random_points(rng: &mut impl Rng, n: usize, d: usize) -> PointSet {
    let axes: Vec<Vec<usize>> = (0..d).map(|_| random_order(rng, n)).collect();
    let points: Vec<Vec<i64>> = (0..n)
        .map(|i| axes.iter().map(|a| a[i] as i64).collect())
        .collect();
    PointSet::from_integers(d, &points).expect("distinct coordinates per axis")
}

/// A transitively colored tournament on at most `max_n` vertices with at
/// most 3 colors, drawn from monochromatic chains, permutation tournaments,
/// bipartite constructions, scrambled planar coordinate tournaments and
/// nested substitutions into the 3-colored triangle.
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
            permutation_tournament(&random_permutation(rng, n))
        }
        2 => {
            let a = rng.random_range(1..max_n);
            let b = rng.random_range(1..=max_n - a);
            let cross: Vec<(usize, usize)> = (0..a)
                .flat_map(|i| (0..b).map(move |j| (i, j)))
                .filter(|_| rng.random_bool(0.5))
                .collect();
            bipartite_example(a, b, &cross).expect("cross edges lie in range")
        }
        3 => {
            let n = rng.random_range(2..=max_n);
            let s = random_points(rng, n, 2);
            coordinate_tournament(&s).scramble(&ScramblingMask::from_bits(rng.random_range(0..4)))
        }
        _ => {
            let mut ct = three_colored_triangle();
            while ct.n() < max_n {
                let v = rng.random_range(0..ct.n());
                let room = max_n - ct.n() + 1;
                let inner = random_transitive_coloring(rng, room.min(4));
                ct = substitute(&ct, v, &inner).expect("substitution of a valid vertex");
                if rng.random_bool(0.3) {
                    break;
                }
            }
            ct
        }
    }
}
