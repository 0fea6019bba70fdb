//! VC dimension and shatter functions of hypergraphs, the exact arithmetic
//! behind the parity-tournament domination bound, and Monte-Carlo 1/2-net
//! sampling from fractional transversal weights.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::tournament::{Hypergraph, VertexSet};

/// Largest vertex count for exhaustive VC dimension.
pub const VC_CEILING: usize = 22;
/// Default cap on the number of subsets enumerated by the shatter functions.
pub const SHATTER_BUDGET: u64 = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShatterReport {
    pub vc: usize,
    /// A shattered set of size `vc`.
    pub witness: VertexSet,
    /// `(size, shatter function value)` for every size whose exhaustive
    /// enumeration fits the default budget, up to `vc + 1`.
    pub samples: Vec<(usize, u64)>,
    pub exact: bool,
}

/// Largest `h` such that some `h`-subset has all `2^h` traces.
pub fn vc_dimension(h: &Hypergraph) -> Result<ShatterReport> {
    let n = h.n();
    if n > VC_CEILING {
        return Err(Error::InstanceTooLarge {
            what: "exhaustive VC dimension",
            size: n,
            ceiling: VC_CEILING,
        });
    }
    let edges: Vec<u32> = h
        .edges()
        .iter()
        .map(|e| e.ones().fold(0u32, |acc, v| acc | 1 << v))
        .collect();
    let shattered = |s: u32| {
        let mut traces: Vec<u32> = edges.iter().map(|e| e & s).collect();
        traces.sort_unstable();
        traces.dedup();
        traces.len() == 1usize << s.count_ones()
    };
    // shattering is hereditary, so grow shattered sets one vertex at a time
    let mut level: Vec<u32> = if shattered(0) { vec![0] } else { Vec::new() };
    let mut vc = 0;
    let mut witness = 0u32;
    while !level.is_empty() {
        let mut next = Vec::new();
        for &s in &level {
            let start = 32 - s.leading_zeros() as usize;
            for v in start..n {
                let t = s | 1 << v;
                if shattered(t) {
                    next.push(t);
                }
            }
        }
        if let Some(&s) = next.first() {
            vc = s.count_ones() as usize;
            witness = s;
        }
        level = next;
    }
    let samples = (0..=(vc + 1).min(n))
        .map_while(|size| {
            shatter_function(
                h,
                size,
                ShatterMode::Exact {
                    budget: SHATTER_BUDGET,
                },
            )
            .ok()
            .map(|c| (size, c.value))
        })
        .collect();
    Ok(ShatterReport {
        vc,
        witness: (0..n).filter(|&v| witness & 1 << v != 0).collect(),
        samples,
        exact: true,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShatterMode {
    Exact {
        budget: u64,
    },
    /// Maximum over `trials` random subsets: a lower bound only.
    Sampled {
        seed: u64,
        trials: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShatterCount {
    pub value: u64,
    pub exact: bool,
}

/// `pi(size) = max_{|S| = size} |{S ∩ F : F ∈ H}|`.
pub fn shatter_function(h: &Hypergraph, size: usize, mode: ShatterMode) -> Result<ShatterCount> {
    trace_count(h, size, None, mode)
}

/// Like [`shatter_function`] but counting only traces of cardinality `k`.
pub fn shatter_function_k(
    h: &Hypergraph,
    size: usize,
    k: usize,
    mode: ShatterMode,
) -> Result<ShatterCount> {
    trace_count(h, size, Some(k), mode)
}

fn trace_count(
    h: &Hypergraph,
    size: usize,
    only: Option<usize>,
    mode: ShatterMode,
) -> Result<ShatterCount> {
    let n = h.n();
    if size > n {
        return Err(Error::InvalidArgument(alloc::format!(
            "subset size {size} exceeds {n} vertices"
        )));
    }
    if size > 64 {
        return Err(Error::InstanceTooLarge {
            what: "shatter subset size",
            size,
            ceiling: 64,
        });
    }
    let count = |subset: &[usize]| -> u64 {
        let mut traces: Vec<u64> = h
            .edges()
            .iter()
            .map(|e| {
                subset
                    .iter()
                    .enumerate()
                    .filter(|(_, &v)| e[v])
                    .fold(0u64, |acc, (i, _)| acc | 1 << i)
            })
            .filter(|t| only.is_none_or(|k| t.count_ones() as usize == k))
            .collect();
        traces.sort_unstable();
        traces.dedup();
        traces.len() as u64
    };
    match mode {
        ShatterMode::Exact { budget } => {
            let subsets = binomial_multiplicative(n as u64, size as u64);
            if subsets > BigUint::from(budget) {
                return Err(Error::InstanceTooLarge {
                    what: "shatter function enumeration",
                    size: subsets.to_usize().unwrap_or(usize::MAX),
                    ceiling: budget as usize,
                });
            }
            let mut idx: Vec<usize> = (0..size).collect();
            let mut best = 0;
            loop {
                best = best.max(count(&idx));
                let Some(i) = (0..size).rev().find(|&i| idx[i] < n - size + i) else {
                    break;
                };
                idx[i] += 1;
                for j in i + 1..size {
                    idx[j] = idx[j - 1] + 1;
                }
            }
            Ok(ShatterCount {
                value: best,
                exact: true,
            })
        }
        ShatterMode::Sampled { seed, trials } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let best = (0..trials)
                .map(|_| {
                    let mut s = sample(&mut rng, n, size).into_vec();
                    s.sort_unstable();
                    count(&s)
                })
                .max()
                .unwrap_or(0);
            Ok(ShatterCount {
                value: best,
                exact: false,
            })
        }
    }
}

/// `C(n, k)` from a single Pascal row built by additions only.
pub fn binomial_pascal(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k as usize;
    let mut row = vec![BigUint::zero(); k + 1];
    row[0] = BigUint::one();
    for i in 1..=n as usize {
        for j in (1..=k.min(i)).rev() {
            let prev = row[j - 1].clone();
            row[j] += prev;
        }
    }
    row[k].clone()
}

/// `C(n, k)` as `prod (n - i) / (i + 1)`, exact at every step.
pub fn binomial_multiplicative(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `((n+1)^3 - C(k+2, 3) - C(n-k+1, 3)) / 2`, rounded down.
pub fn pi_k_upper_bound(n: u64, k: u64) -> BigInt {
    pi_k_upper_bound_with(n, k, binomial_pascal)
}

fn pi_k_upper_bound_with(n: u64, k: u64, binom: fn(u64, u64) -> BigUint) -> BigInt {
    let cube = BigInt::from(n + 1).pow(3);
    let low = BigInt::from(binom(k + 2, 3));
    let high = BigInt::from(binom(n.saturating_sub(k) + 1, 3));
    (cube - low - high) / BigInt::from(2)
}

/// Which bound on the number of size-`b` traces feeds the comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// `2^b (n+1)^3 < C(n, b)`.
    Cube,
    /// `2^b ceil((n+1)^3 / 2) < C(n, b)`.
    Halved,
    /// `pi_k_upper_bound(n, b) < C(n, b) / 2^b`.
    Refined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinomialPath {
    Pascal,
    Multiplicative,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityReport {
    pub a: u64,
    pub b: u64,
    pub variant: Variant,
    pub lhs: BigRational,
    pub rhs: BigRational,
    pub feasible: bool,
    /// When feasible, every parity tournament is dominated by `a` vertices.
    pub implied_bound: u64,
    /// Both binomial paths produced identical `lhs` and `rhs`.
    pub paths_agree: bool,
}

impl FeasibilityReport {
    /// `lhs / rhs`; feasibility is `ratio < 1`.
    pub fn ratio(&self) -> BigRational {
        &self.lhs / &self.rhs
    }
}

/// Evaluates the net-size inequality for a candidate net of `a` points and a
/// tail of `b` points, with `n = a + b` and trace size `b`.
pub fn appendix_feasibility(a: u64, b: u64, variant: Variant) -> FeasibilityReport {
    let (lhs, rhs) = feasibility_sides(a, b, variant, BinomialPath::Pascal);
    let (lhs2, rhs2) = feasibility_sides(a, b, variant, BinomialPath::Multiplicative);
    FeasibilityReport {
        a,
        b,
        variant,
        feasible: lhs < rhs,
        implied_bound: a,
        paths_agree: lhs == lhs2 && rhs == rhs2,
        lhs,
        rhs,
    }
}

/// `(lhs, rhs)` of the inequality computed along one binomial path.
pub fn feasibility_sides(
    a: u64,
    b: u64,
    variant: Variant,
    path: BinomialPath,
) -> (BigRational, BigRational) {
    let binom = match path {
        BinomialPath::Pascal => binomial_pascal,
        BinomialPath::Multiplicative => binomial_multiplicative,
    };
    let n = a + b;
    let pow2 = BigInt::one() << b;
    let choose = BigInt::from(binom(n, b));
    let cube = BigInt::from(n + 1).pow(3);
    let int = BigRational::from_integer;
    match variant {
        Variant::Cube => (int(&pow2 * cube), int(choose)),
        Variant::Halved => {
            let half = (cube + BigInt::one()) / BigInt::from(2);
            (int(&pow2 * half), int(choose))
        }
        Variant::Refined => (
            int(pi_k_upper_bound_with(n, b, binom)),
            BigRational::new(choose, pow2),
        ),
    }
}

/// Every `(a, b)` with `1 <= a <= max_a`, `1 <= b <= max_b`.
pub fn appendix_scan(max_a: u64, max_b: u64, variant: Variant) -> Vec<FeasibilityReport> {
    (1..=max_a)
        .flat_map(|a| (1..=max_b).map(move |b| appendix_feasibility(a, b, variant)))
        .collect()
}

/// Smallest feasible `a` in the scan range, with its `b`.
pub fn best_implied_bound(max_a: u64, max_b: u64, variant: Variant) -> Option<(u64, u64)> {
    (1..=max_a).find_map(|a| {
        (1..=max_b)
            .find(|&b| appendix_feasibility(a, b, variant).feasible)
            .map(|b| (a, b))
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct EpsNetReport {
    pub trials: u64,
    pub successes: u64,
    pub rate: f64,
    /// Hyperedges whose normalized weight is at least 1/2.
    pub heavy_edges: usize,
}

/// Draws `a + b` vertices i.i.d. from the normalized `weights` per trial
/// (inverse CDF, ChaCha8 seeded with `seed + trial`) and counts how often the
/// first `a` hit every hyperedge of normalized weight at least 1/2.
pub fn epsnet_sample(
    h: &Hypergraph,
    weights: &[BigRational],
    a: usize,
    b: usize,
    trials: u64,
    seed: u64,
) -> Result<EpsNetReport> {
    if weights.len() != h.n() {
        return Err(Error::DimensionMismatch {
            expected: h.n(),
            found: weights.len(),
        });
    }
    if trials == 0 {
        return Err(Error::InvalidArgument(
            "at least one trial is required".into(),
        ));
    }
    let one = BigRational::one();
    let edge_weight = |e: &fixedbitset::FixedBitSet| -> BigRational {
        e.ones()
            .fold(BigRational::zero(), |acc, v| acc + &weights[v])
    };
    let feasible = weights.iter().all(|w| *w >= BigRational::zero())
        && h.edges().iter().all(|e| edge_weight(e) >= one);
    if !feasible {
        return Err(Error::InfeasibleWeights);
    }
    let total: BigRational = weights.iter().cloned().sum();
    let half_total = &total / BigRational::from_integer(BigInt::from(2));
    let heavy: Vec<&fixedbitset::FixedBitSet> = h
        .edges()
        .iter()
        .filter(|e| edge_weight(e) >= half_total)
        .collect();
    let total_f = total.to_f64().unwrap_or(f64::NAN);
    let mut cumulative = Vec::with_capacity(weights.len());
    let mut acc = BigRational::zero();
    for w in weights {
        acc += w;
        cumulative.push((&acc / &total).to_f64().unwrap_or(f64::NAN));
    }
    debug_assert!(total_f > 0.0);
    let last_positive = weights.iter().rposition(|w| !w.is_zero()).unwrap_or(0);
    let mut successes = 0;
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(trial));
        let draws: Vec<usize> = (0..a + b)
            .map(|_| {
                let u: f64 = rng.random();
                cumulative
                    .iter()
                    .position(|&c| u < c)
                    .unwrap_or(last_positive)
            })
            .collect();
        let net = &draws[..a];
        if heavy.iter().all(|e| net.iter().any(|&v| e[v])) {
            successes += 1;
        }
    }
    Ok(EpsNetReport {
        trials,
        successes,
        rate: successes as f64 / trials as f64,
        heavy_edges: heavy.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tournament::Tournament;

    #[test]
    fn vc_examples() {
        let chain = Tournament::transitive(6).domination_hypergraph();
        assert_eq!(vc_dimension(&chain).unwrap().vc, 1);
        let c3 = Tournament::cyclic_triangle().domination_hypergraph();
        let rep = vc_dimension(&c3).unwrap();
        assert_eq!(rep.vc, 1);
        assert_eq!(rep.witness.len(), 1);
        let big = Tournament::transitive(23).domination_hypergraph();
        assert!(vc_dimension(&big).is_err());
    }

    #[test]
    fn shatter_examples() {
        let exact = ShatterMode::Exact {
            budget: SHATTER_BUDGET,
        };
        let c3 = Tournament::cyclic_triangle().domination_hypergraph();
        assert_eq!(shatter_function(&c3, 0, exact).unwrap().value, 1);
        assert_eq!(shatter_function(&c3, 2, exact).unwrap().value, 3);
        assert!(shatter_function_k(&c3, 2, 0, exact).unwrap().value <= 1);
        let sampled = shatter_function(
            &c3,
            2,
            ShatterMode::Sampled {
                seed: 1,
                trials: 20,
            },
        )
        .unwrap();
        assert!(!sampled.exact);
        assert!(sampled.value <= 3);
    }

    #[test]
    fn binomials_agree() {
        for n in 0..40 {
            for k in 0..=n + 1 {
                assert_eq!(
                    binomial_pascal(n, k),
                    binomial_multiplicative(n, k),
                    "C({n},{k})"
                );
            }
        }
        assert_eq!(binomial_pascal(38, 19), BigUint::from(35_345_263_800u64));
    }

    #[test]
    fn pi_k_examples() {
        assert_eq!(pi_k_upper_bound(31, 14), BigInt::from(15696));
        // C(2, 3) vanishes at k = 0
        for n in 0..20u64 {
            let expected = (BigInt::from(n + 1).pow(3)
                - BigInt::from(binomial_multiplicative(n + 1, 3)))
                / BigInt::from(2);
            assert_eq!(pi_k_upper_bound(n, 0), expected);
        }
    }

    #[test]
    fn feasibility_examples() {
        let r = appendix_feasibility(17, 14, Variant::Refined);
        assert!(r.feasible && r.paths_agree);
        assert_eq!(r.lhs, BigRational::from_integer(15696.into()));
        let r = appendix_feasibility(19, 19, Variant::Cube);
        assert!(r.paths_agree);
        assert!(r.feasible);
        let r = appendix_feasibility(1, 1, Variant::Refined);
        assert!(r.paths_agree);
        assert!(!r.feasible);
    }

    #[test]
    fn epsnet_chain() {
        let h = Tournament::transitive(4).domination_hypergraph();
        let mut w = vec![BigRational::zero(); 4];
        w[0] = BigRational::one();
        let rep = epsnet_sample(&h, &w, 1, 1, 50, 3).unwrap();
        assert_eq!(rep.rate, 1.0);
        let bad = vec![BigRational::zero(); 4];
        assert_eq!(
            epsnet_sample(&h, &bad, 1, 1, 5, 3),
            Err(Error::InfeasibleWeights)
        );
    }
}
