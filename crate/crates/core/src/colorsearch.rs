//! Deciding `k`-transitivity, recovering permutations from transitive
//! 2-colorings, and the standard families of transitively colored
//! tournaments (substitutions, bipartite and majority constructions).

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::tournament::{ColoredTournament, Tournament};

/// Largest tournament handed to [`find_transitive_coloring`].
pub const COLOR_SEARCH_CEILING: usize = 20;
/// Default node budget for [`find_transitive_coloring`].
pub const DEFAULT_COLOR_BUDGET: u64 = 20_000_000;

/// Searches for a transitive coloring of `t` with at most `k` colors.
///
/// `Ok(None)` is a proof that none exists; running out of `budget` nodes is
/// reported as [`Error::BudgetExhausted`] instead.
///
/// Every triangle constrains its three edges: in a cyclic triangle all three
/// colors differ, and in a transitive triangle `s -> m -> t` with `s -> t`,
/// equal colors on `sm` and `mt` force the same color on `st`. The search
/// assigns the edge with the fewest remaining colors first and only ever
/// opens one fresh color at a time.
pub fn find_transitive_coloring(
    t: &Tournament,
    k: usize,
    budget: u64,
) -> Result<Option<ColoredTournament>> {
    let n = t.n();
    if n > COLOR_SEARCH_CEILING {
        return Err(Error::InstanceTooLarge {
            what: "transitive coloring search",
            size: n,
            ceiling: COLOR_SEARCH_CEILING,
        });
    }
    if k > 32 {
        return Err(Error::InstanceTooLarge {
            what: "transitive coloring palette",
            size: k,
            ceiling: 32,
        });
    }
    if n < 2 {
        return Ok(Some(
            ColoredTournament::new(t.clone(), k.max(1), |_, _| 1).expect("no edges to color"),
        ));
    }
    if k == 0 {
        return Ok(None);
    }
    let mut search = ColorSearch::new(t, k, budget);
    let mut domains = vec![search.full; search.edges.len()];
    // a one-color palette fixes every edge before any branching
    if k == 1 && !(0..domains.len()).all(|e| search.propagate(&mut domains, e)) {
        return Ok(None);
    }
    match search.dfs(domains, 0)? {
        Some(colors) => {
            let ct = ColoredTournament::new(t.clone(), k, |u, v| {
                colors[search.edge_index(u, v)].trailing_zeros() as usize + 1
            })?;
            debug_assert!(ct.is_transitively_colored());
            Ok(Some(ct))
        }
        None => Ok(None),
    }
}

struct ColorSearch<'a> {
    t: &'a Tournament,
    n: usize,
    full: u32,
    // edges[e] = (min, max) endpoints
    edges: Vec<(usize, usize)>,
    nodes: u64,
    budget: u64,
}

impl<'a> ColorSearch<'a> {
    fn new(t: &'a Tournament, k: usize, budget: u64) -> Self {
        let n = t.n();
        let mut edges: Vec<(usize, usize)> =
            (0..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
        // edges sharing a high endpoint close triangles early
        edges.sort_by_key(|&(u, v)| (v, u));
        Self {
            t,
            n,
            full: if k == 32 { u32::MAX } else { (1u32 << k) - 1 },
            edges,
            nodes: 0,
            budget,
        }
    }

    fn edge_index(&self, u: usize, v: usize) -> usize {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        b * (b - 1) / 2 + a
    }

    fn dfs(&mut self, domains: Vec<u32>, used: u32) -> Result<Option<Vec<u32>>> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExhausted {
                budget: self.budget,
            });
        }
        let pick = domains
            .iter()
            .enumerate()
            .filter(|(_, d)| d.count_ones() > 1)
            .min_by_key(|(_, d)| d.count_ones())
            .map(|(e, _)| e);
        let Some(e) = pick else {
            // every domain is a singleton; forward checking kept them consistent
            return Ok(Some(domains));
        };
        let fresh = (!used & self.full).trailing_zeros();
        let mut choices = domains[e] & (used | if fresh < 32 { 1 << fresh } else { 0 });
        while choices != 0 {
            let bit = choices & choices.wrapping_neg();
            choices &= !bit;
            let mut next = domains.clone();
            next[e] = bit;
            if self.propagate(&mut next, e) {
                let used_next = used
                    | next
                        .iter()
                        .filter(|d| d.count_ones() == 1)
                        .fold(0, |a, d| a | d);
                if let Some(sol) = self.dfs(next, used_next)? {
                    return Ok(Some(sol));
                }
            }
        }
        Ok(None)
    }

    /// Prunes domains of triangles touching newly fixed edges until a fixed
    /// point; returns `false` on a wipe-out.
    fn propagate(&self, domains: &mut [u32], start: usize) -> bool {
        let mut queue = vec![start];
        while let Some(e) = queue.pop() {
            let (x, y) = self.edges[e];
            for z in (0..self.n).filter(|&z| z != x && z != y) {
                let ids = [e, self.edge_index(x, z), self.edge_index(y, z)];
                let before = ids.map(|i| domains[i]);
                if !self.prune_triangle(domains, x, y, z) {
                    return false;
                }
                for (slot, &i) in ids.iter().enumerate() {
                    if domains[i] != before[slot] && domains[i].count_ones() == 1 {
                        queue.push(i);
                    }
                }
            }
        }
        true
    }

    fn prune_triangle(&self, domains: &mut [u32], x: usize, y: usize, z: usize) -> bool {
        let t = self.t;
        let (exy, exz, eyz) = (
            self.edge_index(x, y),
            self.edge_index(x, z),
            self.edge_index(y, z),
        );
        let single = |d: u32| d.count_ones() == 1;
        // orient: find source s (beats both), sink; if none, the triangle is cyclic
        let verts = [x, y, z];
        let source = verts
            .iter()
            .copied()
            .find(|&a| verts.iter().all(|&b| b == a || t.beats(a, b)));
        match source {
            None => {
                for (a, b, c) in [(exy, exz, eyz), (exz, exy, eyz), (eyz, exy, exz)] {
                    if single(domains[b]) {
                        domains[a] &= !domains[b];
                    }
                    if single(domains[c]) {
                        domains[a] &= !domains[c];
                    }
                }
            }
            Some(s) => {
                let sink = verts
                    .iter()
                    .copied()
                    .find(|&a| verts.iter().all(|&b| b == a || t.beats(b, a)))
                    .expect("a transitive triangle has a sink");
                let m = verts
                    .iter()
                    .copied()
                    .find(|&a| a != s && a != sink)
                    .expect("three vertices");
                let (sm, mt, st) = (
                    self.edge_index(s, m),
                    self.edge_index(m, sink),
                    self.edge_index(s, sink),
                );
                let (dsm, dmt, dst) = (domains[sm], domains[mt], domains[st]);
                if single(dsm) && single(dmt) && dsm == dmt {
                    domains[st] &= dsm;
                }
                if single(dsm) && single(dst) && dsm != dst {
                    domains[mt] &= !dsm;
                }
                if single(dmt) && single(dst) && dmt != dst {
                    domains[sm] &= !dmt;
                }
            }
        }
        domains[exy] != 0 && domains[exz] != 0 && domains[eyz] != 0
    }
}

/// A permutation `x_1 .. x_n` of `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidArgument(alloc::format!(
                    "{values:?} is not a permutation of 1..={n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Self(values))
    }

    pub fn identity(n: usize) -> Self {
        Self((1..=n).collect())
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `T(pi)`: position `i` beats position `j > i`; color 1 if `x_i < x_j`,
/// color 2 otherwise.
pub fn permutation_tournament(pi: &Permutation) -> ColoredTournament {
    let x = pi.values();
    ColoredTournament::new(Tournament::transitive(x.len()), 2, |i, j| {
        if x[i] < x[j] {
            1
        } else {
            2
        }
    })
    .expect("colors 1 and 2 fit the palette")
}

/// A permutation read back from a transitive 2-coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecoveredPermutation {
    /// `order[i]` is the vertex at position `i` of the underlying order.
    pub order: Vec<usize>,
    pub permutation: Permutation,
}

/// Orders the vertices by the (necessarily transitive) base tournament and
/// reads values off the colors: color 1 from an earlier to a later position
/// means a smaller value. Returns `Ok(None)` if that value relation is
/// cyclic, which would contradict the known structure theorem.
pub fn recover_permutation(ct: &ColoredTournament) -> Result<Option<RecoveredPermutation>> {
    if ct.k() != 2 {
        return Err(Error::NotTwoColored { k: ct.k() });
    }
    if !ct.is_transitively_colored() {
        return Err(Error::NotTransitivelyColored);
    }
    let base = ct.base();
    if !base.is_acyclic() {
        return Ok(None);
    }
    let order = base.score_order();
    let n = order.len();
    // smaller.beats(i, j): position i carries the smaller value
    let smaller = Tournament::from_fn(n, |i, j| ct.color(order[i], order[j]) == Some(1));
    if !smaller.is_acyclic() {
        return Ok(None);
    }
    let values = (0..n)
        .map(|i| smaller.in_neighbors(i).count_ones(..) + 1)
        .collect();
    Ok(Some(RecoveredPermutation {
        order,
        permutation: Permutation::new(values)?,
    }))
}

/// Replaces vertex `v` of `t` by a copy of `h`. Edges between the copy and
/// any other vertex `u` inherit the color and orientation of `vu`.
///
/// Labels: vertices `< v` keep theirs, the copy occupies `v..v + |h|`, and
/// the vertices after `v` shift up by `|h| - 1`.
pub fn substitute(
    t: &ColoredTournament,
    v: usize,
    h: &ColoredTournament,
) -> Result<ColoredTournament> {
    let n = t.n();
    if v >= n {
        return Err(Error::VertexNotFound { v, n });
    }
    let m = h.n();
    if m == 0 {
        return Err(Error::InvalidArgument(
            "cannot substitute an empty tournament".into(),
        ));
    }
    let total = n + m - 1;
    // (outer vertex in t, inner vertex in h when inside the copy)
    let origin = |x: usize| -> (usize, Option<usize>) {
        if x < v {
            (x, None)
        } else if x < v + m {
            (v, Some(x - v))
        } else {
            (x - m + 1, None)
        }
    };
    let base = Tournament::from_fn(total, |x, y| match (origin(x), origin(y)) {
        ((_, Some(a)), (_, Some(b))) => h.base().beats(a, b),
        ((ox, _), (oy, _)) => t.base().beats(ox, oy),
    });
    ColoredTournament::new(base, t.k().max(h.k()), |x, y| {
        match (origin(x), origin(y)) {
            ((_, Some(a)), (_, Some(b))) => h.pair_color(a, b),
            ((ox, _), (oy, _)) => t.pair_color(ox, oy),
        }
    })
}

/// The cyclic triangle with one color per edge: `0 -> 1` color 1,
/// `1 -> 2` color 2, `2 -> 0` color 3.
pub fn three_colored_triangle() -> ColoredTournament {
    ColoredTournament::from_colored_edges(3, 3, &[(0, 1, 1), (1, 2, 2), (2, 0, 3)])
        .expect("valid triangle")
}

/// The 9-vertex tournament obtained by substituting the 3-colored cyclic
/// triangle into each of its own vertices; block `x` holds `3x..3x + 3`.
pub fn blowup_c3() -> ColoredTournament {
    let c3 = three_colored_triangle();
    let mut t = c3.clone();
    for v in (0..3).rev() {
        t = substitute(&t, v, &c3).expect("vertex exists");
    }
    t
}

/// Vertices `0..a` form `A`, `a..a + b` form `B`. `cross` lists pairs
/// `(i, j)` (local indices) oriented `A -> B` in color 1; all other cross pairs
/// go `B -> A` in color 2; each side is ordered by index in color 3.
pub fn bipartite_example(
    a: usize,
    b: usize,
    cross: &[(usize, usize)],
) -> Result<ColoredTournament> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidArgument(
            "both sides need at least one vertex".into(),
        ));
    }
    let mut forward = vec![false; a * b];
    for &(i, j) in cross {
        if i >= a || j >= b {
            return Err(Error::InvalidArgument(alloc::format!(
                "cross edge ({i}, {j}) is outside {a} x {b}"
            )));
        }
        forward[i * b + j] = true;
    }
    let base = Tournament::from_fn(a + b, |u, v| {
        // u < v, so u in B implies v in B
        if v < a || u >= a {
            true
        } else {
            forward[u * b + (v - a)]
        }
    });
    ColoredTournament::new(base, 3, |u, v| {
        let (ua, va) = (u < a, v < a);
        match (ua, va) {
            (true, false) => 1,
            (false, true) => 2,
            _ => 3,
        }
    })
}

/// A majority tournament with its index-set coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MajorityTournament {
    pub tournament: Tournament,
    pub colored: ColoredTournament,
    /// `color_sets[c - 1]` is the bitmask of orders in which the winner of a
    /// color-`c` edge precedes the loser.
    pub color_sets: Vec<u32>,
}

/// Orients `x -> y` when `x` precedes `y` in a majority of the `2k - 1`
/// `orders`, and colors the edge by the set of orders in which `x` precedes
/// `y`. The palette is every index set of size at least `k`.
pub fn majority_tournament(orders: &[Vec<usize>]) -> Result<MajorityTournament> {
    let count = orders.len();
    if count.is_multiple_of(2) {
        return Err(Error::EvenOrderCount { count });
    }
    if count > 15 {
        return Err(Error::InstanceTooLarge {
            what: "majority profile (orders)",
            size: count,
            ceiling: 15,
        });
    }
    let n = orders[0].len();
    let mut pos = vec![vec![0usize; n]; count];
    for (i, order) in orders.iter().enumerate() {
        let mut seen = vec![false; n];
        if order.len() != n {
            return Err(Error::MismatchedDomains { index: i, n });
        }
        for (p, &x) in order.iter().enumerate() {
            if x >= n || seen[x] {
                return Err(Error::MismatchedDomains { index: i, n });
            }
            seen[x] = true;
            pos[i][x] = p;
        }
    }
    let k = count.div_ceil(2);
    let color_sets: Vec<u32> = (0..1u32 << count)
        .filter(|s| s.count_ones() as usize >= k)
        .collect();
    let ahead = |x: usize, y: usize| -> u32 {
        (0..count)
            .filter(|&i| pos[i][x] < pos[i][y])
            .fold(0, |acc, i| acc | 1 << i)
    };
    let tournament = Tournament::from_fn(n, |x, y| ahead(x, y).count_ones() as usize >= k);
    let colored = ColoredTournament::new(tournament.clone(), color_sets.len(), |x, y| {
        let set = ahead(x, y);
        color_sets
            .binary_search(&set)
            .expect("winner leads in a majority")
            + 1
    })?;
    Ok(MajorityTournament {
        tournament,
        colored,
        color_sets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paley::paley_tournament;
    use crate::solvers::min_dominating_set;

    #[test]
    fn small_colorings() {
        let c3 = Tournament::cyclic_triangle();
        assert_eq!(find_transitive_coloring(&c3, 2, 1000).unwrap(), None);
        assert_eq!(find_transitive_coloring(&c3, 1, 1000).unwrap(), None);
        let found = find_transitive_coloring(&c3, 3, 1000).unwrap().unwrap();
        assert!(found.is_transitively_colored());
        let chain = Tournament::transitive(6);
        let ct = find_transitive_coloring(&chain, 1, 1000).unwrap().unwrap();
        assert!(ct.colored_edges().all(|(_, _, c)| c == 1));
        let pt7 = paley_tournament(7).unwrap();
        let ct = find_transitive_coloring(&pt7, 3, DEFAULT_COLOR_BUDGET)
            .unwrap()
            .unwrap();
        assert!(ct.is_transitively_colored());
        assert_eq!(
            find_transitive_coloring(&pt7, 2, DEFAULT_COLOR_BUDGET).unwrap(),
            None
        );
    }

    #[test]
    fn budget_is_reported() {
        let pt11 = paley_tournament(11).unwrap();
        assert_eq!(
            find_transitive_coloring(&pt11, 4, 3),
            Err(Error::BudgetExhausted { budget: 3 })
        );
    }

    #[test]
    fn permutation_tournament_examples() {
        let id = permutation_tournament(&Permutation::identity(5));
        assert!(id.colored_edges().all(|(_, _, c)| c == 1));
        let rev = permutation_tournament(&Permutation::new(vec![4, 3, 2, 1]).unwrap());
        assert!(rev.colored_edges().all(|(_, _, c)| c == 2));
        let ct = permutation_tournament(&Permutation::new(vec![2, 1, 4, 3]).unwrap());
        assert_eq!(ct.class(1), [(0, 2), (0, 3), (1, 2), (1, 3)]);
        assert_eq!(ct.class(2), [(0, 1), (2, 3)]);
        assert!(ct.is_transitively_colored());
    }

    #[test]
    fn recovery_examples() {
        let pi = Permutation::new(vec![2, 1, 4, 3]).unwrap();
        let rec = recover_permutation(&permutation_tournament(&pi))
            .unwrap()
            .unwrap();
        assert_eq!(rec.permutation, pi);
        let mono = ColoredTournament::monochromatic(Tournament::transitive(4)).with_palette(2);
        let rec = recover_permutation(&mono).unwrap().unwrap();
        assert_eq!(rec.permutation, Permutation::identity(4));
        assert_eq!(
            recover_permutation(&three_colored_triangle()),
            Err(Error::NotTwoColored { k: 3 })
        );
    }

    #[test]
    fn substitution_examples() {
        let one = ColoredTournament::monochromatic(Tournament::transitive(1));
        assert_eq!(substitute(&one, 0, &one).unwrap(), one);
        let c3 = three_colored_triangle();
        let s = substitute(&c3, 1, &c3).unwrap();
        assert_eq!(s.n(), 5);
        // copy occupies 1..4; old vertex 2 is now 4
        for w in 1..4 {
            assert_eq!(s.color(0, w), Some(1));
            assert_eq!(s.color(w, 4), Some(2));
        }
        assert_eq!(s.color(4, 0), Some(3));
        assert_eq!(s.color(1, 2), Some(1));
        assert!(s.is_transitively_colored());
        assert!(matches!(
            substitute(&c3, 3, &c3),
            Err(Error::VertexNotFound { v: 3, n: 3 })
        ));
    }

    #[test]
    fn blowup_is_the_lexicographic_square() {
        let c3 = three_colored_triangle();
        let b = blowup_c3();
        assert_eq!(b.n(), 9);
        for x in 0..9 {
            for y in 0..9 {
                if x == y {
                    continue;
                }
                let (bx, by) = (x / 3, y / 3);
                let expected = if bx == by {
                    c3.color(x % 3, y % 3)
                } else {
                    c3.color(bx, by)
                };
                assert_eq!(b.color(x, y), expected, "({x}, {y})");
            }
        }
        assert!(b.is_transitively_colored());
        assert!(min_dominating_set(b.base()).unwrap().size >= 3);
    }

    #[test]
    fn bipartite_examples() {
        let ct = bipartite_example(1, 1, &[(0, 0)]).unwrap();
        assert_eq!(ct.n(), 2);
        assert_eq!(ct.color(0, 1), Some(1));
        let ct = bipartite_example(3, 4, &[(0, 1), (2, 3), (1, 0)]).unwrap();
        assert!(ct.is_transitively_colored());
        // B occupies 3..7: A0 -> B1 is a cross edge, B0 -> A0 is not
        assert_eq!(ct.color(0, 4), Some(1));
        assert_eq!(ct.color(3, 0), Some(2));
        assert!(min_dominating_set(ct.base()).unwrap().size <= 2);
        assert!(bipartite_example(0, 2, &[]).is_err());
    }

    #[test]
    fn majority_examples() {
        let same = majority_tournament(&[vec![0, 1, 2], vec![0, 1, 2], vec![0, 1, 2]]).unwrap();
        assert!(same.tournament.is_acyclic());
        let used: alloc::collections::BTreeSet<usize> =
            same.colored.colored_edges().map(|(_, _, c)| c).collect();
        assert_eq!(used.len(), 1);
        // a, b, c = 0, 1, 2 with orders abc, bca, cab
        let condorcet =
            majority_tournament(&[vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]).unwrap();
        assert_eq!(condorcet.tournament, Tournament::cyclic_triangle());
        assert!(condorcet.colored.is_transitively_colored());
        assert_eq!(condorcet.color_sets.len(), 4);
        assert_eq!(
            majority_tournament(&[vec![0, 1], vec![1, 0]]),
            Err(Error::EvenOrderCount { count: 2 })
        );
        assert_eq!(
            majority_tournament(&[vec![0, 1], vec![1, 1], vec![0, 1]]),
            Err(Error::MismatchedDomains { index: 1, n: 2 })
        );
    }
}
