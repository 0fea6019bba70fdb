//! Paley tournaments over prime fields and the degree/discrepancy checks used
//! to rule out transitive colorings of them.

use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::tournament::{ColoredTournament, Tournament, VertexSet};

/// Primality by trial division; fine for the moduli used here.
pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    if q.is_multiple_of(2) {
        return q == 2;
    }
    let mut d = 3;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// A prime `q ≡ 3 (mod 4)` and its nonzero quadratic residues.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaleyParams {
    q: u64,
    residues: Vec<bool>,
}

impl PaleyParams {
    pub fn new(q: u64) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::NotPrime { q });
        }
        if q % 4 != 3 {
            return Err(Error::WrongResidueClass { q });
        }
        let mut residues = vec![false; q as usize];
        for x in 1..=(q - 1) / 2 {
            residues[(x * x % q) as usize] = true;
        }
        Ok(Self { q, residues })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn is_residue(&self, x: u64) -> bool {
        self.residues[(x % self.q) as usize]
    }

    pub fn residues(&self) -> Vec<u64> {
        (1..self.q).filter(|&x| self.residues[x as usize]).collect()
    }

    pub fn tournament(&self) -> Tournament {
        let q = self.q as usize;
        Tournament::from_fn(q, |u, v| self.residues[(v + q - u) % q])
    }
}

/// `PT_q`: `x -> y` iff `y - x` is a nonzero square mod `q`.
pub fn paley_tournament(q: u64) -> Result<Tournament> {
    Ok(PaleyParams::new(q)?.tournament())
}

/// The transitive 3-coloring of `PT_7` listed class by class (labels shifted
/// from `1..=7` to `0..=6`).
pub fn pt7_example_coloring() -> ColoredTournament {
    const CLASSES: [[(usize, usize); 7]; 3] = [
        [(1, 2), (1, 5), (3, 4), (3, 5), (3, 7), (4, 5), (6, 7)],
        [(1, 3), (2, 3), (2, 4), (2, 6), (4, 6), (5, 6), (5, 7)],
        [(4, 1), (5, 2), (6, 3), (6, 1), (7, 1), (7, 2), (7, 4)],
    ];
    let edges: Vec<(usize, usize, usize)> = CLASSES
        .iter()
        .enumerate()
        .flat_map(|(c, class)| class.iter().map(move |&(u, v)| (u - 1, v - 1, c + 1)))
        .collect();
    ColoredTournament::from_colored_edges(7, 3, &edges).expect("the listed classes partition PT_7")
}

/// `e(A, B) - e(B, A)`, counting ordered pairs `(a, b)` with `a != b`.
pub fn discrepancy(t: &Tournament, a: &VertexSet, b: &VertexSet) -> i64 {
    let bits_b = b.to_bits(t.n());
    let bits_a = a.to_bits(t.n());
    a.iter()
        .map(|&u| t.out_neighbors(u).intersection_count(&bits_b) as i64)
        .sum::<i64>()
        - b.iter()
            .map(|&v| t.out_neighbors(v).intersection_count(&bits_a) as i64)
            .sum::<i64>()
}

/// `|disc|^2 <= |A| |B| q`, evaluated in integers.
pub fn within_discrepancy_bound(disc: i64, a: usize, b: usize, q: u64) -> bool {
    (disc as i128) * (disc as i128) <= (a as i128) * (b as i128) * (q as i128)
}

/// Colors in which a vertex has large in- and out-degree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexType {
    pub in_colors: Vec<usize>,
    pub out_colors: Vec<usize>,
}

impl VertexType {
    /// A color in both sets, if any.
    pub fn shared_color(&self) -> Option<usize> {
        self.in_colors
            .iter()
            .copied()
            .find(|c| self.out_colors.contains(c))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeReport {
    pub threshold: BigRational,
    /// `in_degrees[v][i - 1]` is the in-degree of `v` in color `i`.
    pub in_degrees: Vec<Vec<usize>>,
    pub out_degrees: Vec<Vec<usize>>,
    pub types: Vec<VertexType>,
    /// The most populous type class, ties broken by the smallest type.
    pub largest_class: VertexSet,
    /// `|A| >= q / 2^(2k)` for the largest class `A`.
    pub meets_pigeonhole_bound: bool,
}

/// Types of all vertices at threshold `nu`: color `i` is in `I(v)` iff the
/// in-degree of `v` in color `i` is at least `nu * n`, likewise for `O(v)`.
pub fn vertex_types(ct: &ColoredTournament, nu: &BigRational) -> TypeReport {
    let n = ct.n();
    let k = ct.k();
    let mut in_degrees = vec![vec![0usize; k]; n];
    let mut out_degrees = vec![vec![0usize; k]; n];
    for (u, v, c) in ct.colored_edges() {
        out_degrees[u][c - 1] += 1;
        in_degrees[v][c - 1] += 1;
    }
    let cut = nu * BigRational::from_integer(BigInt::from(n));
    let large = |d: usize| BigRational::from_integer(BigInt::from(d)) >= cut;
    let types: Vec<VertexType> = (0..n)
        .map(|v| VertexType {
            in_colors: (1..=k).filter(|&c| large(in_degrees[v][c - 1])).collect(),
            out_colors: (1..=k).filter(|&c| large(out_degrees[v][c - 1])).collect(),
        })
        .collect();
    let mut classes: alloc::collections::BTreeMap<&VertexType, Vec<usize>> = Default::default();
    for (v, ty) in types.iter().enumerate() {
        classes.entry(ty).or_default().push(v);
    }
    let largest: Vec<usize> = classes
        .values()
        .fold(None::<&Vec<usize>>, |best, c| match best {
            Some(b) if b.len() >= c.len() => Some(b),
            _ => Some(c),
        })
        .cloned()
        .unwrap_or_default();
    // |A| * 2^(2k) >= n
    let meets = BigInt::from(largest.len()) * (BigInt::one() << (2 * k)) >= BigInt::from(n);
    TypeReport {
        threshold: nu.clone(),
        in_degrees,
        out_degrees,
        types,
        largest_class: largest.into_iter().collect(),
        meets_pigeonhole_bound: meets,
    }
}

/// `1 / 2^(2k+2)`.
pub fn default_type_threshold(k: usize) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << (2 * k + 2))
}

/// `(2^(2k+1))^2`: above this order no transitive `k`-coloring of `PT_q` exists.
pub fn theorem_threshold(k: usize) -> BigInt {
    BigInt::one() << (4 * k + 2)
}

/// Which stage of the degree/discrepancy argument closed, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RefutationStep {
    /// The coloring itself fails transitivity: `a -> b -> c` in `color`
    /// without `a -> c` in `color`.
    NotTransitive {
        color: usize,
        a: usize,
        b: usize,
        c: usize,
    },
    /// No vertex has a color with both large in- and out-degree.
    NoSharedType,
    /// Some `a ∈ A`, `b ∈ B` is not joined `a -> b` in the shared color.
    TransitivityForcing { a: usize, b: usize },
    /// `|A| |B| > q` while all `A -> B` edges exist, breaking the
    /// discrepancy bound.
    DiscrepancyContradiction,
    /// Every step passed; legal below the theorem's threshold.
    NoContradiction,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefutationReport {
    pub q: u64,
    pub k: usize,
    pub threshold: BigRational,
    /// `q > (2^(2k+1))^2`, where a contradiction is guaranteed.
    pub above_theorem_threshold: bool,
    pub step: RefutationStep,
    /// `w` with `I(w) ∩ O(w) != ∅` and the shared color.
    pub witness: Option<(usize, usize)>,
    pub in_set: VertexSet,
    pub out_set: VertexSet,
    pub discrepancy: Option<i64>,
}

impl RefutationReport {
    pub fn contradiction(&self) -> bool {
        !matches!(
            self.step,
            RefutationStep::NoSharedType | RefutationStep::NoContradiction
        )
    }
}

/// Runs the degree-type and discrepancy argument against a coloring of a
/// Paley tournament: find `w` whose type shares a color `i`, take
/// `A = N_i^-(w)`, `B = N_i^+(w)`, check that transitivity forces all
/// `A -> B` edges into color `i`, and test `|A| |B| <= q`.
pub fn refute_transitive_coloring(ct: &ColoredTournament) -> Result<RefutationReport> {
    let q = ct.n() as u64;
    let params = PaleyParams::new(q).map_err(|_| Error::NotPaleyBase)?;
    if params.tournament() != *ct.base() {
        return Err(Error::NotPaleyBase);
    }
    let k = ct.k();
    let threshold = default_type_threshold(k);
    let mut report = RefutationReport {
        q,
        k,
        threshold: threshold.clone(),
        above_theorem_threshold: BigInt::from(q) > theorem_threshold(k),
        step: RefutationStep::NoContradiction,
        witness: None,
        in_set: VertexSet::default(),
        out_set: VertexSet::default(),
        discrepancy: None,
    };
    if let Some((color, a, b, c)) = ct.transitivity_violation() {
        report.step = RefutationStep::NotTransitive { color, a, b, c };
        return Ok(report);
    }
    let types = vertex_types(ct, &threshold);
    let Some((w, color)) = types
        .types
        .iter()
        .enumerate()
        .find_map(|(v, ty)| ty.shared_color().map(|c| (v, c)))
    else {
        report.step = RefutationStep::NoSharedType;
        return Ok(report);
    };
    report.witness = Some((w, color));
    let n = ct.n();
    let in_set: VertexSet = (0..n).filter(|&a| ct.color(a, w) == Some(color)).collect();
    let out_set: VertexSet = (0..n).filter(|&b| ct.color(w, b) == Some(color)).collect();
    let forced = in_set.iter().find_map(|&a| {
        out_set
            .iter()
            .find(|&&b| ct.color(a, b) != Some(color))
            .map(|&b| (a, b))
    });
    let disc = discrepancy(ct.base(), &in_set, &out_set);
    report.discrepancy = Some(disc);
    report.step = if let Some((a, b)) = forced {
        RefutationStep::TransitivityForcing { a, b }
    } else if (in_set.len() as u128) * (out_set.len() as u128) > q as u128 {
        RefutationStep::DiscrepancyContradiction
    } else {
        RefutationStep::NoContradiction
    };
    report.in_set = in_set;
    report.out_set = out_set;
    Ok(report)
}

/// Default cap on the number of `k`-subsets enumerated.
pub const PARADOX_BUDGET: u64 = 50_000_000;

/// `true` iff no `k` vertices dominate `t`.
pub fn is_k_paradoxical(t: &Tournament, k: usize, budget: u64) -> Result<bool> {
    let n = t.n();
    if k >= n {
        return Ok(false);
    }
    let subsets = binomial_u128(n as u64, k as u64);
    if subsets > budget as u128 {
        return Err(Error::InstanceTooLarge {
            what: "k-subset enumeration",
            size: usize::try_from(subsets).unwrap_or(usize::MAX),
            ceiling: budget as usize,
        });
    }
    let closed: Vec<FixedBitSet> = (0..n)
        .map(|v| {
            let mut r = t.out_neighbors(v).clone();
            r.insert(v);
            r
        })
        .collect();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let mut cover = FixedBitSet::with_capacity(n);
        for &v in &idx {
            cover.union_with(&closed[v]);
        }
        if cover.count_ones(..) == n {
            return Ok(false);
        }
        // next k-combination in lexicographic order
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return Ok(true);
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn binomial_u128(n: u64, k: u64) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

impl TypeReport {
    /// Whether any vertex type has `I ∩ O` nonempty.
    pub fn has_shared_type(&self) -> bool {
        self.types.iter().any(|t| t.shared_color().is_some())
    }
}
