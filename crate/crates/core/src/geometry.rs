//! Point sets in general position, axis-parallel boxes and the colored
//! tournaments they induce.
//!
//! For points `p, q` with `p_1 < q_1` the edge is `p -> q`, colored by the
//! sign pattern of coordinates `2..=d` of `q` relative to `p`. Color `1` is
//! the all-`+` pattern; in general the color is `1 + sum_t neg_t * 2^(d-2-t)`
//! where `neg_t` flags a `-` at coordinate `t + 2`, so for `d = 3` the colors
//! are `(+,+) = 1`, `(+,-) = 2`, `(-,+) = 3`, `(-,-) = 4`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::solvers::{
    domination_number, greedy_dominating_set, DominationMethod, DominationOutcome, DominationSolver,
};
use crate::tournament::{ColoredTournament, ScramblingMask, Tournament, VertexSet};

/// Largest dimension for which all scramblings are enumerated.
pub const SCRAMBLING_DIMENSION_CEILING: usize = 4;

/// A finite point set in `R^d` with pairwise distinct values on every axis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    d: usize,
    coords: Vec<Vec<BigRational>>,
    // ranks[i][axis]: number of points below point i on that axis
    ranks: Vec<Vec<u32>>,
}

impl PointSet {
    pub fn new(d: usize, coords: Vec<Vec<BigRational>>) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidArgument(
                "dimension must be at least 1".into(),
            ));
        }
        if coords.is_empty() {
            return Err(Error::InvalidArgument(
                "a point set needs at least one point".into(),
            ));
        }
        for p in &coords {
            if p.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: p.len(),
                });
            }
        }
        let n = coords.len();
        let mut ranks = vec![vec![0u32; d]; n];
        for axis in 0..d {
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&a, &b| coords[a][axis].cmp(&coords[b][axis]).then(a.cmp(&b)));
            for w in order.windows(2) {
                if coords[w[0]][axis] == coords[w[1]][axis] {
                    return Err(Error::GeneralPositionViolation {
                        axis: axis + 1,
                        first: w[0].min(w[1]),
                        second: w[0].max(w[1]),
                    });
                }
            }
            for (r, &i) in order.iter().enumerate() {
                ranks[i][axis] = r as u32;
            }
        }
        Ok(Self { d, coords, ranks })
    }

    pub fn from_integers(d: usize, points: &[Vec<i64>]) -> Result<Self> {
        Self::new(
            d,
            points
                .iter()
                .map(|p| {
                    p.iter()
                        .map(|&v| BigRational::from_integer(BigInt::from(v)))
                        .collect()
                })
                .collect(),
        )
    }

    /// Replaces every coordinate by its rank on its axis, ties broken by
    /// point index. The result is always in general position.
    pub fn rank_relabel(d: usize, coords: Vec<Vec<BigRational>>) -> Result<Self> {
        for p in &coords {
            if p.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: p.len(),
                });
            }
        }
        let n = coords.len();
        let mut relabeled = vec![vec![BigRational::from_integer(BigInt::from(0)); d]; n];
        for axis in 0..d {
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&a, &b| coords[a][axis].cmp(&coords[b][axis]).then(a.cmp(&b)));
            for (r, &i) in order.iter().enumerate() {
                relabeled[i][axis] = BigRational::from_integer(BigInt::from(r));
            }
        }
        Self::new(d, relabeled)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[BigRational] {
        &self.coords[i]
    }

    pub fn points(&self) -> &[Vec<BigRational>] {
        &self.coords
    }

    /// Rank vector of point `i`.
    pub fn ranks(&self, i: usize) -> &[u32] {
        &self.ranks[i]
    }

    fn rank_in_box(&self, p: usize, q: usize, x: usize) -> bool {
        let (rp, rq, rx) = (&self.ranks[p], &self.ranks[q], &self.ranks[x]);
        (0..self.d).all(|a| rp[a].min(rq[a]) <= rx[a] && rx[a] <= rp[a].max(rq[a]))
    }
}

/// Closed axis-parallel box spanned by `p` and `q`.
pub fn box_contains<T: Ord>(p: &[T], q: &[T], x: &[T]) -> Result<bool> {
    if q.len() != p.len() || x.len() != p.len() {
        let found = if q.len() != p.len() { q.len() } else { x.len() };
        return Err(Error::DimensionMismatch {
            expected: p.len(),
            found,
        });
    }
    Ok(p.iter().zip(q).zip(x).all(|((a, b), v)| {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        lo <= v && v <= hi
    }))
}

/// Signs of coordinates `2..=d` of the later point relative to the earlier
/// one; `true` means `-`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignPattern(pub Vec<bool>);

impl SignPattern {
    pub fn color(&self) -> usize {
        1 + self
            .0
            .iter()
            .fold(0usize, |acc, &neg| (acc << 1) | usize::from(neg))
    }

    pub fn from_color(d: usize, color: usize) -> Self {
        let bits = color - 1;
        Self((0..d - 1).map(|t| bits >> (d - 2 - t) & 1 == 1).collect())
    }
}

/// The unscrambled coordinate tournament: `2^(d-1)` colors, every class
/// transitive.
pub fn coordinate_tournament(s: &PointSet) -> ColoredTournament {
    let n = s.len();
    let base = Tournament::from_fn(n, |u, v| s.ranks[u][0] < s.ranks[v][0]);
    let k = 1usize << (s.d - 1);
    ColoredTournament::new(base, k, |u, v| {
        let (ru, rv) = (&s.ranks[u], &s.ranks[v]);
        SignPattern((1..s.d).map(|a| rv[a] < ru[a]).collect()).color()
    })
    .expect("sign-pattern colors lie in 1..=2^(d-1)")
}

/// All `2^(2^(d-1))` scramblings of the coordinate tournament.
pub fn all_scramblings(s: &PointSet) -> Result<Vec<(ScramblingMask, ColoredTournament)>> {
    if s.d > SCRAMBLING_DIMENSION_CEILING {
        return Err(Error::InstanceTooLarge {
            what: "scrambling enumeration (dimension)",
            size: s.d,
            ceiling: SCRAMBLING_DIMENSION_CEILING,
        });
    }
    let ct = coordinate_tournament(s);
    Ok(ScramblingMask::all(ct.k())
        .map(|m| (m, ct.scramble(&m)))
        .collect())
}

/// The three kinds of 3-coordinate tournaments, each with a closed-form
/// orientation rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScramblingClass {
    /// `u -> v` iff `u` precedes `v` on `axis` (1-based), ascending or not.
    Dictatorship { axis: usize, ascending: bool },
    /// `u -> v` iff `u` precedes `v` on at least two axes, where an axis
    /// with `flips[j]` set is read in descending order.
    TwoMajority { flips: [bool; 3] },
    /// `u -> v` iff the number of axes on which `u` is bigger is even
    /// (`even == true`) or odd.
    Parity { even: bool },
}

impl ScramblingClass {
    pub fn wins<T: Ord>(&self, u: &[T], v: &[T]) -> bool {
        match *self {
            ScramblingClass::Dictatorship { axis, ascending } => {
                (u[axis - 1] < v[axis - 1]) == ascending
            }
            ScramblingClass::TwoMajority { flips } => {
                (0..3).filter(|&j| (u[j] < v[j]) != flips[j]).count() >= 2
            }
            ScramblingClass::Parity { even } => {
                let bigger = (0..3).filter(|&j| u[j] > v[j]).count();
                (bigger % 2 == 0) == even
            }
        }
    }

    pub fn kind(&self) -> ClassKind {
        match self {
            ScramblingClass::Dictatorship { .. } => ClassKind::Dictatorship,
            ScramblingClass::TwoMajority { .. } => ClassKind::TwoMajority,
            ScramblingClass::Parity { .. } => ClassKind::Parity,
        }
    }

    fn candidates() -> Vec<Self> {
        let mut out = Vec::with_capacity(16);
        for axis in 1..=3 {
            for ascending in [true, false] {
                out.push(ScramblingClass::Dictatorship { axis, ascending });
            }
        }
        for bits in 0..8u8 {
            out.push(ScramblingClass::TwoMajority {
                flips: [bits & 1 != 0, bits & 2 != 0, bits & 4 != 0],
            });
        }
        out.push(ScramblingClass::Parity { even: true });
        out.push(ScramblingClass::Parity { even: false });
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassKind {
    Dictatorship,
    TwoMajority,
    Parity,
}

/// Identifies which of the 16 scramblings of a 3-coordinate tournament `mask`
/// selects by matching its orientation on the four sign patterns.
pub fn classify_scrambling_3d(mask: ScramblingMask) -> Result<ScramblingClass> {
    if mask.bits() >= 16 {
        return Err(Error::InvalidArgument(
            "3-coordinate masks range over colors 1..=4".into(),
        ));
    }
    let truth = |rule: &ScramblingClass| {
        (1..=4).all(|color| {
            let pat = SignPattern::from_color(3, color);
            let earlier = [0i8, 0, 0];
            let later = [
                1i8,
                if pat.0[0] { -1 } else { 1 },
                if pat.0[1] { -1 } else { 1 },
            ];
            rule.wins(&earlier, &later) != mask.contains(color)
        })
    };
    ScramblingClass::candidates()
        .into_iter()
        .find(truth)
        .ok_or_else(|| Error::Invariant("no 3-coordinate class matches the mask".into()))
}

/// Dominating set found for one scrambling during [`box_cover`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScramblingPart {
    pub mask: ScramblingMask,
    /// Only reported for `d = 3`.
    pub class: Option<ScramblingClass>,
    pub set: VertexSet,
    /// `true` when `set` is a minimum dominating set.
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxCoverCertificate {
    pub cover: VertexSet,
    /// `(s, p, q)` with `s` outside the cover and inside `box(p, q)`.
    pub witnesses: Vec<(usize, usize, usize)>,
    pub parts: Vec<ScramblingPart>,
}

impl BoxCoverCertificate {
    /// Checks every witness against the point set.
    pub fn verify(&self, s: &PointSet) -> bool {
        let covered: usize = self.witnesses.len() + self.cover.len();
        covered == s.len()
            && self.witnesses.iter().all(|&(x, p, q)| {
                !self.cover.contains(x)
                    && self.cover.contains(p)
                    && self.cover.contains(q)
                    && s.rank_in_box(p, q, x)
            })
    }

    /// Sum and maximum of the part sizes per class (`d = 3` only).
    pub fn class_sizes(&self, kind: ClassKind) -> (usize, usize) {
        self.parts
            .iter()
            .filter(|p| p.class.map(|c| c.kind()) == Some(kind))
            .fold((0, 0), |(sum, max), p| {
                (sum + p.set.len(), max.max(p.set.len()))
            })
    }
}

#[derive(Debug, Clone)]
pub struct BoxCoverOptions {
    pub method: DominationMethod,
    /// Above this many points the exact solver falls back to greedy.
    pub exact_ceiling: usize,
}

impl Default for BoxCoverOptions {
    fn default() -> Self {
        Self {
            method: DominationMethod::Exact,
            exact_ceiling: 512,
        }
    }
}

/// Selects a box cover as the union of dominating sets of every scrambled
/// coordinate tournament. For `d = 3` the six dictatorships are dominated by
/// their extreme point without a search.
pub fn box_cover(s: &PointSet, opts: &BoxCoverOptions) -> Result<BoxCoverCertificate> {
    let scramblings = all_scramblings(s)?;
    let n = s.len();
    let mut parts = Vec::with_capacity(scramblings.len());
    for (mask, ct) in scramblings {
        let class = if s.d == 3 {
            Some(classify_scrambling_3d(mask)?)
        } else {
            None
        };
        let (set, exact) = match class {
            Some(ScramblingClass::Dictatorship { axis, ascending }) => {
                let extreme = (0..n)
                    .find(|&i| {
                        let r = s.ranks[i][axis - 1] as usize;
                        if ascending {
                            r == 0
                        } else {
                            r == n - 1
                        }
                    })
                    .expect("every axis has a minimum and a maximum");
                (VertexSet::from_iter([extreme]), true)
            }
            _ => dominate(ct.base(), opts)?,
        };
        parts.push(ScramblingPart {
            mask,
            class,
            set,
            exact,
        });
    }
    let cover = parts
        .iter()
        .fold(VertexSet::default(), |acc, p| acc.union(&p.set));
    let mut witnesses = Vec::with_capacity(n - cover.len());
    for x in (0..n).filter(|&x| !cover.contains(x)) {
        let w = cover.iter().enumerate().find_map(|(i, &p)| {
            cover.as_slice()[i + 1..]
                .iter()
                .find(|&&q| s.rank_in_box(p, q, x))
                .map(|&q| (x, p, q))
        });
        match w {
            Some(w) => witnesses.push(w),
            None => {
                return Err(Error::Invariant(alloc::format!(
                    "point {x} is in no box spanned by the cover"
                )))
            }
        }
    }
    Ok(BoxCoverCertificate {
        cover,
        witnesses,
        parts,
    })
}

fn dominate(t: &Tournament, opts: &BoxCoverOptions) -> Result<(VertexSet, bool)> {
    if opts.method == DominationMethod::Greedy || t.n() > opts.exact_ceiling {
        return Ok((greedy_dominating_set(t), false));
    }
    match DominationSolver::default()
        .with_ceiling(opts.exact_ceiling)
        .solve(t)?
    {
        DominationOutcome::Found(cert) => Ok((cert.set, true)),
        DominationOutcome::NoSetWithinLimit { .. } => unreachable!("no limit was set"),
    }
}

/// `dom` of every scrambling of a 3-dimensional point set, grouped by class.
pub fn scrambling_domination_3d(
    s: &PointSet,
    ceiling: usize,
) -> Result<Vec<(ScramblingClass, usize)>> {
    if s.d != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: s.d,
        });
    }
    all_scramblings(s)?
        .into_iter()
        .map(|(mask, ct)| {
            Ok((
                classify_scrambling_3d(mask)?,
                domination_number(ct.base(), ceiling)?,
            ))
        })
        .collect()
}

/// `true` iff every point outside `cover` lies in a box spanned by two of its
/// members.
pub fn verify_box_cover(s: &PointSet, cover: &VertexSet) -> bool {
    (0..s.len()).filter(|&x| !cover.contains(x)).all(|x| {
        cover.iter().enumerate().any(|(i, &p)| {
            cover.as_slice()[i + 1..]
                .iter()
                .any(|&q| s.rank_in_box(p, q, x))
        })
    })
}

/// Some `(p, q, x)` with `x ∉ {p, q}` inside `box(p, q)`, by exhaustive search.
pub fn exists_point_in_box(s: &PointSet) -> Option<(usize, usize, usize)> {
    let n = s.len();
    for p in 0..n {
        for q in p + 1..n {
            for x in (0..n).filter(|&x| x != p && x != q) {
                if s.rank_in_box(p, q, x) {
                    return Some((p, q, x));
                }
            }
        }
    }
    None
}

// (i, 4x + 3 - y, 4 pi(x) + pi(y)) for i = 4x + y and pi = 2143: a lexicographic
// product of the planar extremal pattern with itself.
const EXTREMAL_3D: [[i64; 3]; 16] = [
    [0, 3, 5],
    [1, 2, 4],
    [2, 1, 7],
    [3, 0, 6],
    [4, 7, 1],
    [5, 6, 0],
    [6, 5, 3],
    [7, 4, 2],
    [8, 11, 13],
    [9, 10, 12],
    [10, 9, 15],
    [11, 8, 14],
    [12, 15, 9],
    [13, 14, 8],
    [14, 13, 11],
    [15, 12, 10],
];

/// `2^(2^(d-1))` points of which none lies in the box of two others.
pub fn extremal_pointset(d: usize) -> Result<PointSet> {
    let points: Vec<Vec<i64>> = match d {
        1 => vec![vec![0], vec![1]],
        2 => vec![vec![1, 2], vec![2, 1], vec![3, 4], vec![4, 3]],
        3 => EXTREMAL_3D.iter().map(|p| p.to_vec()).collect(),
        _ => {
            return Err(Error::InstanceTooLarge {
                what: "extremal point set (dimension)",
                size: d,
                ceiling: 3,
            })
        }
    };
    PointSet::from_integers(d, &points)
}

/// Seeded backtracking for `size` points in `R^d` with no point inside the
/// box of two others. Points are placed in increasing first coordinate; each
/// new point picks its rank slot on the remaining axes.
pub fn search_box_free(d: usize, size: usize, seed: u64, budget: u64) -> Result<PointSet> {
    if d == 0 {
        return Err(Error::InvalidArgument(
            "dimension must be at least 1".into(),
        ));
    }
    let mut search = BoxFreeSearch {
        d,
        size,
        // orders[axis] lists placed points by increasing coordinate, axes 2..=d
        orders: vec![Vec::with_capacity(size); d - 1],
        nodes: 0,
        budget,
        rng: ChaCha8Rng::seed_from_u64(seed),
    };
    if !search.extend(0)? {
        return Err(Error::SearchFailed { budget });
    }
    let mut points = vec![vec![0i64; d]; size];
    for (i, p) in points.iter_mut().enumerate() {
        p[0] = i as i64;
    }
    for (axis, order) in search.orders.iter().enumerate() {
        for (r, &i) in order.iter().enumerate() {
            points[i][axis + 1] = r as i64;
        }
    }
    PointSet::from_integers(d, &points)
}

struct BoxFreeSearch {
    d: usize,
    size: usize,
    orders: Vec<Vec<usize>>,
    nodes: u64,
    budget: u64,
    rng: ChaCha8Rng,
}

impl BoxFreeSearch {
    fn extend(&mut self, placed: usize) -> Result<bool> {
        if placed == self.size {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::SearchFailed {
                budget: self.budget,
            });
        }
        let axes = self.d - 1;
        let slots = (placed + 1).pow(axes as u32);
        let mut choices: Vec<usize> = (0..slots).collect();
        choices.shuffle(&mut self.rng);
        for choice in choices {
            let mut c = choice;
            for order in self.orders.iter_mut() {
                order.insert(c % (placed + 1), placed);
                c /= placed + 1;
            }
            if self.box_free_with_last(placed) && self.extend(placed + 1)? {
                return Ok(true);
            }
            for order in self.orders.iter_mut() {
                let at = order
                    .iter()
                    .position(|&v| v == placed)
                    .expect("just inserted");
                order.remove(at);
            }
        }
        Ok(false)
    }

    // The newest point is last on axis 1, so it can only be a box corner.
    fn box_free_with_last(&self, last: usize) -> bool {
        let pos: Vec<Vec<usize>> = self
            .orders
            .iter()
            .map(|order| {
                let mut p = vec![0; last + 1];
                for (r, &v) in order.iter().enumerate() {
                    p[v] = r;
                }
                p
            })
            .collect();
        for i in 0..last {
            for j in i + 1..last {
                let inside = pos.iter().all(|p| {
                    let (lo, hi) = (p[i].min(p[last]), p[i].max(p[last]));
                    lo < p[j] && p[j] < hi
                });
                if inside {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(d: usize, pts: &[&[i64]]) -> PointSet {
        PointSet::from_integers(d, &pts.iter().map(|p| p.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn box_containment() {
        assert!(box_contains(&[0, 0], &[2, 2], &[1, 1]).unwrap());
        assert!(!box_contains(&[0, 0], &[2, 2], &[1, 3]).unwrap());
        assert!(box_contains(&[0, 0], &[2, 2], &[0, 0]).unwrap());
        assert_eq!(
            box_contains(&[0, 0], &[2, 2], &[1]),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn general_position_is_enforced() {
        let err = PointSet::from_integers(2, &[vec![0, 1], vec![1, 1]]).unwrap_err();
        assert_eq!(
            err,
            Error::GeneralPositionViolation {
                axis: 2,
                first: 0,
                second: 1
            }
        );
        let q = |v: i64| BigRational::from_integer(v.into());
        let s = PointSet::rank_relabel(2, vec![vec![q(0), q(1)], vec![q(1), q(1)]]).unwrap();
        assert_eq!(s.ranks(0), [0, 0]);
        assert_eq!(s.ranks(1), [1, 1]);
    }

    #[test]
    fn one_dimensional_coordinate_tournament() {
        let s = ints(1, &[&[5], &[-2], &[7]]);
        let ct = coordinate_tournament(&s);
        assert_eq!(ct.k(), 1);
        assert!(ct.base().beats(1, 0) && ct.base().beats(0, 2));
        assert!(ct.is_transitively_colored());
    }

    #[test]
    fn permutation_2143_coordinate_tournament() {
        let s = extremal_pointset(2).unwrap();
        let ct = coordinate_tournament(&s);
        assert_eq!(ct.k(), 2);
        let mut plus = ct.class(1);
        plus.sort();
        assert_eq!(plus, [(0, 2), (0, 3), (1, 2), (1, 3)]);
        let mut minus = ct.class(2);
        minus.sort();
        assert_eq!(minus, [(0, 1), (2, 3)]);
    }

    #[test]
    fn scrambling_counts() {
        assert_eq!(all_scramblings(&ints(1, &[&[0], &[1]])).unwrap().len(), 2);
        assert_eq!(
            all_scramblings(&extremal_pointset(2).unwrap())
                .unwrap()
                .len(),
            4
        );
        assert_eq!(
            all_scramblings(&extremal_pointset(3).unwrap())
                .unwrap()
                .len(),
            16
        );
        let s = ints(5, &[&[0, 0, 0, 0, 0]]);
        assert!(matches!(
            all_scramblings(&s),
            Err(Error::InstanceTooLarge { .. })
        ));
    }

    #[test]
    fn classification_examples() {
        let m = |c: &[usize]| ScramblingMask::from_colors(4, c).unwrap();
        assert_eq!(
            classify_scrambling_3d(m(&[])).unwrap(),
            ScramblingClass::Dictatorship {
                axis: 1,
                ascending: true
            }
        );
        assert_eq!(
            classify_scrambling_3d(m(&[1, 2, 3, 4])).unwrap(),
            ScramblingClass::Dictatorship {
                axis: 1,
                ascending: false
            }
        );
        assert_eq!(
            classify_scrambling_3d(m(&[2, 3])).unwrap(),
            ScramblingClass::Parity { even: true }
        );
        assert_eq!(
            classify_scrambling_3d(m(&[1, 4])).unwrap(),
            ScramblingClass::Parity { even: false }
        );
        assert_eq!(
            classify_scrambling_3d(m(&[4])).unwrap(),
            ScramblingClass::TwoMajority { flips: [false; 3] }
        );
        assert_eq!(
            classify_scrambling_3d(m(&[1, 2])).unwrap(),
            ScramblingClass::Dictatorship {
                axis: 2,
                ascending: false
            }
        );
        assert_eq!(
            classify_scrambling_3d(m(&[2, 4])).unwrap(),
            ScramblingClass::Dictatorship {
                axis: 3,
                ascending: true
            }
        );
    }

    #[test]
    fn classification_follows_mask_size() {
        let mut counts = [0; 3];
        for mask in ScramblingMask::all(4) {
            let class = classify_scrambling_3d(mask).unwrap();
            let expected = match mask.len() {
                1 | 3 => ClassKind::TwoMajority,
                0 | 4 => ClassKind::Dictatorship,
                _ if mask.bits() == 0b0110 || mask.bits() == 0b1001 => ClassKind::Parity,
                _ => ClassKind::Dictatorship,
            };
            assert_eq!(class.kind(), expected, "{mask:?}");
            counts[class.kind() as usize] += 1;
        }
        assert_eq!(counts, [6, 8, 2]);
    }

    #[test]
    fn extremal_sets_are_box_free() {
        for d in 1..=3 {
            let s = extremal_pointset(d).unwrap();
            assert_eq!(s.len(), 1 << (1 << (d - 1)));
            assert_eq!(exists_point_in_box(&s), None);
        }
        assert!(extremal_pointset(4).is_err());
    }

    #[test]
    fn box_free_search() {
        let s = search_box_free(2, 4, 7, 10_000).unwrap();
        assert_eq!(exists_point_in_box(&s), None);
        let s = search_box_free(3, 8, 7, 100_000).unwrap();
        assert_eq!(exists_point_in_box(&s), None);
        // five points in the plane always contain one inside a box
        assert_eq!(
            search_box_free(2, 5, 7, 1_000_000),
            Err(Error::SearchFailed { budget: 1_000_000 })
        );
        assert_eq!(
            search_box_free(3, 12, 1, 10),
            Err(Error::SearchFailed { budget: 10 })
        );
    }

    #[test]
    fn point_in_box_examples() {
        let s = ints(1, &[&[0], &[1], &[2]]);
        assert_eq!(exists_point_in_box(&s), Some((0, 2, 1)));
    }

    #[test]
    fn verify_cover_examples() {
        let line = ints(1, &[&[3], &[1], &[2], &[0]]);
        assert!(verify_box_cover(&line, &VertexSet::from_iter([0, 3])));
        let s = extremal_pointset(2).unwrap();
        assert!(verify_box_cover(&s, &VertexSet::from_iter(0..4)));
        for skip in 0..4 {
            let p: VertexSet = (0..4).filter(|&i| i != skip).collect();
            assert!(!verify_box_cover(&s, &p));
        }
    }

    #[test]
    fn box_cover_examples() {
        let line = ints(1, &[&[3], &[1], &[2], &[0], &[9]]);
        let cert = box_cover(&line, &BoxCoverOptions::default()).unwrap();
        assert_eq!(cert.cover.as_slice(), [3, 4]);
        assert!(cert.verify(&line));
        let s = extremal_pointset(2).unwrap();
        let cert = box_cover(&s, &BoxCoverOptions::default()).unwrap();
        assert_eq!(cert.cover.len(), 4);
        let s = extremal_pointset(3).unwrap();
        let cert = box_cover(&s, &BoxCoverOptions::default()).unwrap();
        assert_eq!(cert.cover.len(), 16);
        assert!(cert.verify(&s));
    }

    #[test]
    fn sign_pattern_colors_roundtrip() {
        for d in 1..=4 {
            for c in 1..=(1 << (d - 1)) {
                assert_eq!(SignPattern::from_color(d, c).color(), c);
            }
        }
    }
}
