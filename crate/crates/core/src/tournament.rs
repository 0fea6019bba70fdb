//! Tournaments, transitive edge colorings, scramblings and the domination
//! hypergraph.
//!
//! A [`Tournament`] is stored as a dense orientation bit-matrix: row `u`
//! holds the out-neighbourhood of `u`, and a mirrored in-neighbourhood matrix
//! is kept alongside so that both directions are O(1) to query.

use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// A complete antisymmetric orientation on the vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tournament {
    n: usize,
    out: Vec<FixedBitSet>,
    inn: Vec<FixedBitSet>,
}

impl Tournament {
    /// Validates an explicit edge list. Every unordered pair must be listed
    /// exactly once, in either direction.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut t = Self::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::OutOfRange { u, v, n });
            }
            if u == v {
                return Err(Error::SelfLoop { v: u });
            }
            if t.out[u][v] || t.out[v][u] {
                return Err(Error::DuplicatePair { u, v });
            }
            t.set_edge(u, v);
        }
        for u in 0..n {
            for v in u + 1..n {
                if !t.out[u][v] && !t.out[v][u] {
                    return Err(Error::MissingPair { u, v });
                }
            }
        }
        Ok(t)
    }

    /// Builds a tournament from a rule deciding each pair `u < v`:
    /// `wins(u, v) == true` orients the edge `u -> v`, otherwise `v -> u`.
    pub fn from_fn(n: usize, mut wins: impl FnMut(usize, usize) -> bool) -> Self {
        let mut t = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if wins(u, v) {
                    t.set_edge(u, v);
                } else {
                    t.set_edge(v, u);
                }
            }
        }
        t
    }

    /// The transitive tournament `i -> j` for all `i < j`.
    pub fn transitive(n: usize) -> Self {
        Self::from_fn(n, |_, _| true)
    }

    /// The cyclic triangle `0 -> 1 -> 2 -> 0`.
    pub fn cyclic_triangle() -> Self {
        Self::from_fn(3, |u, v| !(u == 0 && v == 2))
    }

    fn empty(n: usize) -> Self {
        Self {
            n,
            out: vec![FixedBitSet::with_capacity(n); n],
            inn: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    fn set_edge(&mut self, u: usize, v: usize) {
        self.out[u].insert(v);
        self.inn[v].insert(u);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `true` iff `u -> v` is an edge.
    #[inline]
    pub fn beats(&self, u: usize, v: usize) -> bool {
        self.out[u].contains(v)
    }

    pub fn out_neighbors(&self, u: usize) -> &FixedBitSet {
        &self.out[u]
    }

    pub fn in_neighbors(&self, u: usize) -> &FixedBitSet {
        &self.inn[u]
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out[u].count_ones(..)
    }

    /// All directed edges `(winner, loser)`, pairs visited in lexicographic
    /// order of `(min, max)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            (u + 1..self.n).map(move |v| if self.beats(u, v) { (u, v) } else { (v, u) })
        })
    }

    /// The tournament with every edge reversed.
    pub fn reversed(&self) -> Self {
        Self {
            n: self.n,
            out: self.inn.clone(),
            inn: self.out.clone(),
        }
    }

    /// A tournament is acyclic iff its score sequence is `0, 1, ..., n-1`.
    pub fn is_acyclic(&self) -> bool {
        let mut seen = vec![false; self.n];
        for u in 0..self.n {
            let d = self.out_degree(u);
            if seen[d] {
                return false;
            }
            seen[d] = true;
        }
        true
    }

    /// Vertices sorted by decreasing out-degree; for an acyclic tournament
    /// this is its unique topological order.
    pub fn score_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&u| (core::cmp::Reverse(self.out_degree(u)), u));
        order
    }

    /// Returns a cyclic triangle `(a, b, c)` with `a -> b -> c -> a`, if any.
    pub fn find_cyclic_triangle(&self) -> Option<(usize, usize, usize)> {
        for a in 0..self.n {
            for b in self.out[a].ones() {
                let mut closing = self.out[b].clone();
                closing.intersect_with(&self.inn[a]);
                if let Some(c) = closing.ones().next() {
                    return Some((a, b, c));
                }
            }
        }
        None
    }

    /// `true` iff every vertex outside `s` has an in-edge from some member.
    pub fn dominates(&self, s: &VertexSet) -> bool {
        let covered = self.closed_cover(s);
        covered.count_ones(..) == self.n
    }

    /// Vertices dominated by `s`, including `s` itself.
    pub fn closed_cover(&self, s: &VertexSet) -> FixedBitSet {
        let mut covered = FixedBitSet::with_capacity(self.n);
        for &w in s.iter() {
            covered.insert(w);
            covered.union_with(&self.out[w]);
        }
        covered
    }

    /// The hypergraph `H(T)` whose hyperedge `e(v)` is `v` together with all
    /// in-neighbours of `v`. Its transversals are exactly the dominating sets.
    pub fn domination_hypergraph(&self) -> Hypergraph {
        let edges = (0..self.n)
            .map(|v| {
                let mut e = self.inn[v].clone();
                e.insert(v);
                e
            })
            .collect();
        Hypergraph { n: self.n, edges }
    }
}

/// Closure check for an arbitrary edge subset of `t`: for all `ab`, `bc` in the
/// subset, `ac` must be in the subset too.
pub fn is_transitive_digraph(t: &Tournament, edges: &[(usize, usize)]) -> bool {
    let n = t.n();
    let mut out = vec![FixedBitSet::with_capacity(n); n];
    for &(a, b) in edges {
        debug_assert!(t.beats(a, b), "({a}, {b}) is not an edge of the tournament");
        out[a].insert(b);
    }
    closed_under_composition(&out)
}

fn closed_under_composition(out: &[FixedBitSet]) -> bool {
    out.iter()
        .all(|row| row.ones().all(|b| out[b].is_subset(row)))
}

/// A tournament with every edge colored by one of `1..=k`.
///
/// Color classes may be empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredTournament {
    base: Tournament,
    k: usize,
    // colors[u * n + v] is the color of u -> v, or 0 when v -> u
    colors: Vec<u16>,
}

impl ColoredTournament {
    /// Colors `base` with `color(u, v)` for every edge `u -> v`.
    pub fn new(
        base: Tournament,
        k: usize,
        mut color: impl FnMut(usize, usize) -> usize,
    ) -> Result<Self> {
        let n = base.n();
        let mut colors = vec![0u16; n * n];
        for (u, v) in base.edges() {
            let c = color(u, v);
            if c == 0 || c > k || c > u16::MAX as usize {
                return Err(Error::InvalidColor { u, v, color: c, k });
            }
            colors[u * n + v] = c as u16;
        }
        Ok(Self { base, k, colors })
    }

    /// A single color class: every edge gets color 1.
    pub fn monochromatic(base: Tournament) -> Self {
        Self::new(base, 1, |_, _| 1).expect("color 1 is always valid")
    }

    /// Validates `(u, v, color)` triples with the same rules as
    /// [`Tournament::from_edges`].
    pub fn from_colored_edges(n: usize, k: usize, edges: &[(usize, usize, usize)]) -> Result<Self> {
        let pairs: Vec<(usize, usize)> = edges.iter().map(|&(u, v, _)| (u, v)).collect();
        let base = Tournament::from_edges(n, &pairs)?;
        let mut colors = vec![0u16; n * n];
        for &(u, v, c) in edges {
            if c == 0 || c > k || c > u16::MAX as usize {
                return Err(Error::InvalidColor { u, v, color: c, k });
            }
            colors[u * n + v] = c as u16;
        }
        Ok(Self { base, k, colors })
    }

    pub fn base(&self) -> &Tournament {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Color of the edge `u -> v`, or `None` if the edge points the other way.
    #[inline]
    pub fn color(&self, u: usize, v: usize) -> Option<usize> {
        match self.colors[u * self.n() + v] {
            0 => None,
            c => Some(c as usize),
        }
    }

    /// Color of the pair `{u, v}` regardless of orientation.
    pub fn pair_color(&self, u: usize, v: usize) -> usize {
        self.color(u, v)
            .or_else(|| self.color(v, u))
            .expect("every pair of distinct vertices carries a color")
    }

    /// `(winner, loser, color)` for every edge.
    pub fn colored_edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.base
            .edges()
            .map(move |(u, v)| (u, v, self.colors[u * self.n() + v] as usize))
    }

    /// Edges of the digraph `T(color)`.
    pub fn class(&self, color: usize) -> Vec<(usize, usize)> {
        self.colored_edges()
            .filter(|&(_, _, c)| c == color)
            .map(|(u, v, _)| (u, v))
            .collect()
    }

    /// Out-neighbourhoods restricted to one color class.
    pub fn class_out(&self, color: usize) -> Vec<FixedBitSet> {
        let n = self.n();
        let mut out = vec![FixedBitSet::with_capacity(n); n];
        for (u, v, c) in self.colored_edges() {
            if c == color {
                out[u].insert(v);
            }
        }
        out
    }

    /// Finds `(color, a, b, c)` with `a -> b -> c` in one color class but
    /// `a -> c` missing from that class.
    pub fn transitivity_violation(&self) -> Option<(usize, usize, usize, usize)> {
        for color in 1..=self.k {
            let out = self.class_out(color);
            for (a, row) in out.iter().enumerate() {
                for b in row.ones() {
                    if let Some(c) = out[b].difference(row).next() {
                        return Some((color, a, b, c));
                    }
                }
            }
        }
        None
    }

    /// `true` iff every color class is a transitive digraph.
    pub fn is_transitively_colored(&self) -> bool {
        (1..=self.k).all(|color| closed_under_composition(&self.class_out(color)))
    }

    /// Reverses every edge whose color lies in `mask`; colors are kept.
    pub fn scramble(&self, mask: &ScramblingMask) -> Self {
        let n = self.n();
        let flip = |u: usize, v: usize| {
            let c = self.pair_color(u, v);
            mask.contains(c)
        };
        let base = Tournament::from_fn(n, |u, v| self.base.beats(u, v) != flip(u, v));
        let mut colors = vec![0u16; n * n];
        for (u, v) in base.edges() {
            colors[u * n + v] = self.pair_color(u, v) as u16;
        }
        Self {
            base,
            k: self.k,
            colors,
        }
    }

    /// `true` iff every vertex `b` outside `s` lies between some `a, c ∈ s`,
    /// i.e. `a -> b` and `b -> c` carry the same color.
    pub fn is_enclosure(&self, s: &VertexSet) -> bool {
        let n = self.n();
        let mut inside = FixedBitSet::with_capacity(n);
        for &v in s.iter() {
            inside.insert(v);
        }
        let mut from_s = vec![false; self.k + 1];
        let mut to_s = vec![false; self.k + 1];
        (0..n).filter(|&b| !inside[b]).all(|b| {
            from_s.iter_mut().for_each(|x| *x = false);
            to_s.iter_mut().for_each(|x| *x = false);
            for a in inside.ones() {
                match self.color(a, b) {
                    Some(c) => from_s[c] = true,
                    None => to_s[self.pair_color(a, b)] = true,
                }
            }
            (1..=self.k).any(|c| from_s[c] && to_s[c])
        })
    }

    /// Recolors with a larger palette; used when combining tournaments.
    pub fn with_palette(mut self, k: usize) -> Self {
        assert!(k >= self.k, "palette may only grow");
        self.k = k;
        self
    }
}

/// A subset `I` of the colors `1..=64`; scrambling reverses every class in `I`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ScramblingMask(u64);

impl ScramblingMask {
    pub const EMPTY: Self = Self(0);

    /// Mask from its bit representation: bit `i - 1` stands for color `i`.
    pub fn from_bits(bits: u64) -> Self {
        Self(bits)
    }

    pub fn from_colors(k: usize, colors: &[usize]) -> Result<Self> {
        if k > 64 {
            return Err(Error::InstanceTooLarge {
                what: "scrambling palette",
                size: k,
                ceiling: 64,
            });
        }
        let mut bits = 0u64;
        for &c in colors {
            if c == 0 || c > k {
                return Err(Error::InvalidArgument(alloc::format!(
                    "color {c} is outside 1..={k}"
                )));
            }
            bits |= 1 << (c - 1);
        }
        Ok(Self(bits))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, color: usize) -> bool {
        (1..=64).contains(&color) && self.0 & (1 << (color - 1)) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn colors(self) -> impl Iterator<Item = usize> {
        (1..=64).filter(move |&c| self.contains(c))
    }

    /// All `2^k` masks over `k` colors, in increasing bit order.
    pub fn all(k: usize) -> impl Iterator<Item = Self> {
        assert!(k < 64, "cannot enumerate 2^{k} masks");
        (0..1u64 << k).map(Self)
    }
}

/// A set of vertices, kept sorted and free of duplicates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    /// Checks that every member lies in `0..n`.
    pub fn within(n: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set: Self = members.into_iter().collect();
        match set.0.last() {
            Some(&v) if v >= n => Err(Error::VertexOutOfRange { v, n }),
            _ => Ok(set),
        }
    }

    pub fn from_bits(bits: &FixedBitSet) -> Self {
        Self(bits.ones().collect())
    }

    pub fn to_bits(&self, n: usize) -> FixedBitSet {
        let mut b = FixedBitSet::with_capacity(n);
        for &v in &self.0 {
            b.insert(v);
        }
        b
    }

    pub fn iter(&self) -> core::slice::Iter<'_, usize> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn union(&self, other: &Self) -> Self {
        self.0.iter().chain(other.0.iter()).copied().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self(v)
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = &'a usize;
    type IntoIter = core::slice::Iter<'a, usize>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// A hypergraph on `0..n` with nonempty hyperedges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<FixedBitSet>,
}

impl Hypergraph {
    pub fn new(n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let edges = edges
            .into_iter()
            .enumerate()
            .map(|(i, e)| {
                if e.is_empty() {
                    return Err(Error::InvalidArgument(alloc::format!(
                        "hyperedge {i} is empty"
                    )));
                }
                let mut bits = FixedBitSet::with_capacity(n);
                for v in e {
                    if v >= n {
                        return Err(Error::VertexOutOfRange { v, n });
                    }
                    bits.insert(v);
                }
                Ok(bits)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { n, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[FixedBitSet] {
        &self.edges
    }

    pub fn edge_members(&self, i: usize) -> Vec<usize> {
        self.edges[i].ones().collect()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// `true` iff `s` meets every hyperedge.
    pub fn is_transversal(&self, s: &VertexSet) -> bool {
        let bits = s.to_bits(self.n);
        self.edges.iter().all(|e| !e.is_disjoint(&bits))
    }
}
