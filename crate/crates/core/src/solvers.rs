//! Minimum dominating sets, fractional transversals and enclosure sets.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lp::{Constraint, LinearProgram, LpOutcome, Relation, Scalar};
use crate::tournament::{ColoredTournament, Hypergraph, ScramblingMask, Tournament, VertexSet};

/// Default vertex ceiling for the exact dominating-set search.
pub const DEFAULT_EXACT_CEILING: usize = 100;
/// Largest hypergraph (in vertices) handed to the rational simplex.
pub const EXACT_LP_CEILING: usize = 40;
/// Largest tournament searched exhaustively for a minimum enclosure set.
pub const ENCLOSURE_CEILING: usize = 25;
/// Largest palette for which all `2^k` scramblings are enumerated.
pub const SCRAMBLING_COLOR_CEILING: usize = 8;

/// Where the lower bound that closed the search came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LowerBound {
    /// Every nonempty tournament needs at least one vertex.
    Trivial,
    /// `ceil(tau*)` of the domination hypergraph.
    FractionalTransversal { tau_star: BigRational },
    /// Exhaustive search ruled out every smaller size.
    Exhaustive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominationCertificate {
    pub set: VertexSet,
    pub size: usize,
    pub optimal: bool,
    pub lower_bound_used: LowerBound,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DominationOutcome {
    Found(DominationCertificate),
    /// No dominating set of size `<= limit` exists; `lower_bound` is proven.
    NoSetWithinLimit {
        lower_bound: usize,
    },
}

/// Branch-and-bound over set cover on `H(T)`.
///
/// Branches on the uncovered vertex with the fewest remaining dominators and
/// prunes when even the best single vertex repeated `r` times cannot cover
/// what is left. The greedy solution seeds the upper bound and, for small
/// instances, `ceil(tau*)` seeds the lower one.
#[derive(Debug, Clone)]
pub struct DominationSolver {
    pub ceiling: usize,
    pub limit: Option<usize>,
    pub lp_bound: bool,
}

impl Default for DominationSolver {
    fn default() -> Self {
        Self {
            ceiling: DEFAULT_EXACT_CEILING,
            limit: None,
            lp_bound: true,
        }
    }
}

impl DominationSolver {
    pub fn with_ceiling(mut self, ceiling: usize) -> Self {
        self.ceiling = ceiling;
        self
    }

    pub fn with_limit(mut self, limit: usize) -> Self {
        self.limit = Some(limit);
        self
    }

    pub fn solve(&self, t: &Tournament) -> Result<DominationOutcome> {
        let n = t.n();
        if n > self.ceiling {
            return Err(Error::InstanceTooLarge {
                what: "exact dominating set",
                size: n,
                ceiling: self.ceiling,
            });
        }
        if n == 0 {
            return Ok(DominationOutcome::Found(DominationCertificate {
                set: VertexSet::default(),
                size: 0,
                optimal: true,
                lower_bound_used: LowerBound::Trivial,
            }));
        }
        let greedy = greedy_dominating_set(t);
        let (mut lower, mut source) = (1, LowerBound::Trivial);
        if self.lp_bound && n <= EXACT_LP_CEILING {
            let frac = fractional_transversal_exact(&t.domination_hypergraph())?;
            let ceil = frac.value.ceil().to_integer().to_usize().unwrap_or(1);
            if ceil > lower {
                lower = ceil;
                source = LowerBound::FractionalTransversal {
                    tau_star: frac.value,
                };
            }
        }
        let cap = self.limit.unwrap_or(usize::MAX);
        if lower > cap {
            return Ok(DominationOutcome::NoSetWithinLimit { lower_bound: lower });
        }
        let search = CoverSearch::new(t);
        let mut size = lower;
        while size < greedy.len() && size <= cap {
            if let Some(set) = search.find(size) {
                let lower_bound_used = if size == lower {
                    source
                } else {
                    LowerBound::Exhaustive
                };
                return Ok(DominationOutcome::Found(DominationCertificate {
                    size: set.len(),
                    set,
                    optimal: true,
                    lower_bound_used,
                }));
            }
            size += 1;
        }
        if greedy.len() > cap {
            return Ok(DominationOutcome::NoSetWithinLimit { lower_bound: size });
        }
        let lower_bound_used = if greedy.len() == lower {
            source
        } else {
            LowerBound::Exhaustive
        };
        Ok(DominationOutcome::Found(DominationCertificate {
            size: greedy.len(),
            set: greedy,
            optimal: true,
            lower_bound_used,
        }))
    }
}

/// Minimum dominating set with the default solver settings.
pub fn min_dominating_set(t: &Tournament) -> Result<DominationCertificate> {
    match DominationSolver::default().solve(t)? {
        DominationOutcome::Found(cert) => Ok(cert),
        DominationOutcome::NoSetWithinLimit { .. } => unreachable!("no limit was set"),
    }
}

/// `dom(T)` with an explicit vertex ceiling.
pub fn domination_number(t: &Tournament, ceiling: usize) -> Result<usize> {
    match DominationSolver::default().with_ceiling(ceiling).solve(t)? {
        DominationOutcome::Found(cert) => Ok(cert.size),
        DominationOutcome::NoSetWithinLimit { .. } => unreachable!("no limit was set"),
    }
}

struct CoverSearch {
    n: usize,
    // closed out-neighbourhood: what picking w covers
    covers: Vec<FixedBitSet>,
    // closed in-neighbourhood: who can cover v
    coverers: Vec<FixedBitSet>,
}

impl CoverSearch {
    fn new(t: &Tournament) -> Self {
        let n = t.n();
        let closed = |row: &FixedBitSet, v: usize| {
            let mut r = row.clone();
            r.insert(v);
            r
        };
        Self {
            n,
            covers: (0..n).map(|v| closed(t.out_neighbors(v), v)).collect(),
            coverers: (0..n).map(|v| closed(t.in_neighbors(v), v)).collect(),
        }
    }

    fn find(&self, size: usize) -> Option<VertexSet> {
        let mut uncovered = FixedBitSet::with_capacity(self.n);
        uncovered.insert_range(..);
        let excluded = FixedBitSet::with_capacity(self.n);
        let mut chosen = Vec::with_capacity(size);
        if self.dfs(&uncovered, excluded, &mut chosen, size) {
            Some(chosen.into_iter().collect())
        } else {
            None
        }
    }

    fn dfs(
        &self,
        uncovered: &FixedBitSet,
        mut excluded: FixedBitSet,
        chosen: &mut Vec<usize>,
        remaining: usize,
    ) -> bool {
        let left = uncovered.count_ones(..);
        if left == 0 {
            return true;
        }
        if remaining == 0 {
            return false;
        }
        let best_gain = (0..self.n)
            .filter(|&w| !excluded[w])
            .map(|w| self.covers[w].intersection_count(uncovered))
            .max()
            .unwrap_or(0);
        if best_gain * remaining < left {
            return false;
        }
        // uncovered vertex with the fewest available dominators
        let mut branch: Option<(usize, usize)> = None;
        for v in uncovered.ones() {
            let avail = self.coverers[v].difference_count(&excluded);
            if avail == 0 {
                return false;
            }
            if branch.is_none_or(|(_, a)| avail < a) {
                branch = Some((v, avail));
            }
        }
        let (v, _) = branch.expect("uncovered is nonempty");
        let mut candidates: Vec<(usize, usize)> = self.coverers[v]
            .difference(&excluded)
            .map(|w| (w, self.covers[w].intersection_count(uncovered)))
            .collect();
        candidates.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        for (w, _) in candidates {
            let mut next = uncovered.clone();
            next.difference_with(&self.covers[w]);
            chosen.push(w);
            if self.dfs(&next, excluded.clone(), chosen, remaining - 1) {
                return true;
            }
            chosen.pop();
            excluded.insert(w);
        }
        false
    }
}

/// Repeatedly takes the vertex covering the most undominated vertices,
/// lowest index on ties.
pub fn greedy_dominating_set(t: &Tournament) -> VertexSet {
    let n = t.n();
    let mut uncovered = FixedBitSet::with_capacity(n);
    uncovered.insert_range(..);
    let mut chosen = Vec::new();
    while uncovered.count_ones(..) > 0 {
        let mut best = (0usize, 0usize);
        for w in 0..n {
            let gain =
                t.out_neighbors(w).intersection_count(&uncovered) + usize::from(uncovered[w]);
            if gain > best.1 {
                best = (w, gain);
            }
        }
        let w = best.0;
        chosen.push(w);
        uncovered.set(w, false);
        uncovered.difference_with(t.out_neighbors(w));
    }
    chosen.into_iter().collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpMode {
    Exact,
    Approximate,
}

/// An optimal fractional transversal together with an optimal fractional
/// matching of equal value (the LP dual), each found by its own simplex run.
#[derive(Debug, Clone, PartialEq)]
pub struct FractionalSolution<T> {
    /// Per-vertex weights `x_v`.
    pub weights: Vec<T>,
    /// `tau*`, the sum of the weights.
    pub value: T,
    /// Per-hyperedge weights `y_e` of the fractional matching.
    pub matching: Vec<T>,
    /// `nu*`.
    pub matching_value: T,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Fractional {
    Exact(FractionalSolution<BigRational>),
    Approximate(FractionalSolution<f64>),
}

impl Fractional {
    pub fn value_f64(&self) -> f64 {
        match self {
            Fractional::Exact(s) => s.value.to_f64().unwrap_or(f64::NAN),
            Fractional::Approximate(s) => s.value,
        }
    }
}

pub fn fractional_transversal(h: &Hypergraph, mode: LpMode) -> Result<Fractional> {
    match mode {
        LpMode::Exact => fractional_transversal_exact(h).map(Fractional::Exact),
        LpMode::Approximate => fractional_transversal_approx(h).map(Fractional::Approximate),
    }
}

fn covering_lp<T: Scalar>(h: &Hypergraph) -> LinearProgram<T> {
    let n = h.n();
    LinearProgram {
        objective: vec![-T::one(); n],
        constraints: h
            .edges()
            .iter()
            .map(|e| Constraint {
                coeffs: (0..n)
                    .map(|v| if e[v] { T::one() } else { T::zero() })
                    .collect(),
                relation: Relation::Ge,
                rhs: T::one(),
            })
            .collect(),
    }
}

fn packing_lp<T: Scalar>(h: &Hypergraph) -> LinearProgram<T> {
    LinearProgram {
        objective: vec![T::one(); h.num_edges()],
        constraints: (0..h.n())
            .map(|v| Constraint {
                coeffs: h
                    .edges()
                    .iter()
                    .map(|e| if e[v] { T::one() } else { T::zero() })
                    .collect(),
                relation: Relation::Le,
                rhs: T::one(),
            })
            .collect(),
    }
}

fn solve_pair<T: Scalar>(h: &Hypergraph) -> Result<FractionalSolution<T>> {
    let (weights, neg_value) = match covering_lp::<T>(h).solve() {
        LpOutcome::Optimal { x, value } => (x, value),
        other => {
            return Err(Error::Invariant(format!(
                "covering LP of a nonempty-edge hypergraph reported {}",
                outcome_name(&other)
            )))
        }
    };
    let (matching, matching_value) = match packing_lp::<T>(h).solve() {
        LpOutcome::Optimal { x, value } => (x, value),
        other => {
            return Err(Error::Invariant(format!(
                "packing LP reported {}",
                outcome_name(&other)
            )))
        }
    };
    Ok(FractionalSolution {
        weights,
        value: -neg_value,
        matching,
        matching_value,
    })
}

fn outcome_name<T>(o: &LpOutcome<T>) -> &'static str {
    match o {
        LpOutcome::Optimal { .. } => "optimal",
        LpOutcome::Infeasible => "infeasible",
        LpOutcome::Unbounded => "unbounded",
    }
}

/// Exact `tau*(H)` over the rationals, with `nu*(H) = tau*(H)` checked.
pub fn fractional_transversal_exact(h: &Hypergraph) -> Result<FractionalSolution<BigRational>> {
    if h.n() > EXACT_LP_CEILING {
        return Err(Error::InstanceTooLarge {
            what: "exact fractional transversal",
            size: h.n(),
            ceiling: EXACT_LP_CEILING,
        });
    }
    let sol = solve_pair::<BigRational>(h)?;
    let zero = <BigRational as Zero>::zero();
    let feasible = sol.weights.iter().all(|w| *w >= zero)
        && transversal_slack(h, &sol.weights)
            .iter()
            .all(|s| *s >= zero)
        && packing_slack(h, &sol.matching).iter().all(|s| *s >= zero);
    if !feasible {
        return Err(Error::Invariant(
            "simplex returned an infeasible point".into(),
        ));
    }
    let sum: BigRational = sol.weights.iter().cloned().sum();
    if sum != sol.value || sol.value != sol.matching_value {
        return Err(Error::Invariant(format!(
            "LP duality failed: tau* = {}, nu* = {}",
            sol.value, sol.matching_value
        )));
    }
    Ok(sol)
}

/// Floating-point `tau*(H)`, certified by a primal/dual gap of at most `1e-9`.
pub fn fractional_transversal_approx(h: &Hypergraph) -> Result<FractionalSolution<f64>> {
    const TOL: f64 = 1e-9;
    let sol = solve_pair::<f64>(h)?;
    let worst_primal = transversal_slack(h, &sol.weights)
        .into_iter()
        .chain(sol.weights.iter().copied())
        .fold(0.0f64, |acc, s| acc.min(s));
    let worst_dual = packing_slack(h, &sol.matching)
        .into_iter()
        .fold(0.0f64, |acc, s| acc.min(s));
    let gap = (sol.value - sol.matching_value).abs();
    if gap > TOL || worst_primal < -TOL || worst_dual < -TOL {
        return Err(Error::NonConvergence {
            gap: gap.max(-worst_primal).max(-worst_dual),
        });
    }
    Ok(sol)
}

/// `sum_{v in e} x_v - 1` for every hyperedge.
fn transversal_slack<T: Scalar>(h: &Hypergraph, x: &[T]) -> Vec<T> {
    h.edges()
        .iter()
        .map(|e| e.ones().fold(T::zero(), |acc, v| acc + x[v].clone()) - T::one())
        .collect()
}

/// `1 - sum_{e ∋ v} y_e` for every vertex.
fn packing_slack<T: Scalar>(h: &Hypergraph, y: &[T]) -> Vec<T> {
    (0..h.n())
        .map(|v| {
            h.edges()
                .iter()
                .zip(y)
                .filter(|(e, _)| e[v])
                .fold(T::one(), |acc, (_, w)| acc - w.clone())
        })
        .collect()
}

/// Minimum enclosure set by cardinality-increasing exhaustive search.
pub fn min_enclosure_set(ct: &ColoredTournament) -> Result<VertexSet> {
    let n = ct.n();
    if n > ENCLOSURE_CEILING {
        return Err(Error::InstanceTooLarge {
            what: "minimum enclosure set",
            size: n,
            ceiling: ENCLOSURE_CEILING,
        });
    }
    if n == 0 {
        return Ok(VertexSet::default());
    }
    let k = ct.k();
    // masks[b][c] = (sources a with a -> b colored c, sinks with b -> a colored c)
    let mut masks = vec![vec![(0u32, 0u32); k + 1]; n];
    for (a, b, c) in ct.colored_edges() {
        masks[b][c].0 |= 1 << a;
        masks[a][c].1 |= 1 << b;
    }
    let encloses = |s: u32| {
        (0..n).filter(|&b| s & (1 << b) == 0).all(|b| {
            masks[b][1..]
                .iter()
                .any(|&(from, to)| from & s != 0 && to & s != 0)
        })
    };
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    for size in 1..=n {
        let mut s: u32 = (1 << size) - 1;
        loop {
            if encloses(s) {
                return Ok((0..n).filter(|&v| s & (1 << v) != 0).collect());
            }
            // Gosper's hack: next subset of the same cardinality
            let c = s & s.wrapping_neg();
            let r = s + c;
            if r > full || r == 0 {
                break;
            }
            s = (((r ^ s) >> 2) / c) | r;
            if s > full {
                break;
            }
        }
    }
    Ok((0..n).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DominationMethod {
    Exact,
    Greedy,
}

/// The union of one dominating set per scrambling, with the parts kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScramblingUnion {
    pub set: VertexSet,
    pub parts: Vec<(ScramblingMask, VertexSet)>,
}

impl ScramblingUnion {
    /// `sum_I |S_I|`.
    pub fn part_sum(&self) -> usize {
        self.parts.iter().map(|(_, s)| s.len()).sum()
    }

    pub fn max_part(&self) -> usize {
        self.parts.iter().map(|(_, s)| s.len()).max().unwrap_or(0)
    }
}

/// Builds an enclosure set of `ct` as the union of dominating sets of all
/// `2^k` scramblings. A vertex outside the union that sat between no pair of
/// members would be undominated in the scrambling that reverses exactly the
/// colors in which nothing from the union reaches it.
pub fn enclosure_via_scramblings(
    ct: &ColoredTournament,
    method: DominationMethod,
) -> Result<ScramblingUnion> {
    let k = ct.k();
    if k > SCRAMBLING_COLOR_CEILING {
        return Err(Error::InstanceTooLarge {
            what: "scrambling enumeration (colors)",
            size: k,
            ceiling: SCRAMBLING_COLOR_CEILING,
        });
    }
    let mut parts = Vec::with_capacity(1 << k);
    for mask in ScramblingMask::all(k) {
        let scrambled = ct.scramble(&mask);
        let s = match method {
            DominationMethod::Exact => min_dominating_set(scrambled.base())?.set,
            DominationMethod::Greedy => greedy_dominating_set(scrambled.base()),
        };
        parts.push((mask, s));
    }
    let set = parts
        .iter()
        .fold(VertexSet::default(), |acc, (_, s)| acc.union(s));
    let result = ScramblingUnion { set, parts };
    if !ct.is_enclosure(&result.set) || result.set.len() > result.part_sum() {
        return Err(Error::Invariant(
            "union of scrambling dominating sets is not an enclosure set".into(),
        ));
    }
    Ok(result)
}
