//! Dense two-phase tableau simplex. Exact arithmetic pivots on the largest
//! reduced cost and switches to Bland's rule during runs of degenerate
//! pivots; floating point uses Bland's rule throughout.
//!
//! Rational programs run on a fraction-free integer tableau: every entry is
//! an integer and the true tableau is the entries over one shared positive
//! denominator, so no gcd is ever taken. Floating programs run on the usual
//! normalized tableau with a fixed tolerance.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arithmetic required by the solver.
pub trait Scalar:
    Clone
    + core::fmt::Debug
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Whether arithmetic is exact; inexact scalars pivot by Bland's rule
    /// throughout, which keeps pivot elements away from rounding noise.
    const EXACT: bool;
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(v: i64) -> Self;
    fn is_pos(&self) -> bool;
    fn is_neg(&self) -> bool;
    fn is_zero_value(&self) -> bool {
        !self.is_pos() && !self.is_neg()
    }
    /// `self -= f * p`.
    fn sub_mul_assign(&mut self, f: &Self, p: &Self) {
        *self = self.clone() - f.clone() * p.clone();
    }
    fn div_assign_by(&mut self, p: &Self) {
        *self = self.clone() / p.clone();
    }
    /// Replaces values indistinguishable from zero by exact zero.
    fn snap(&mut self) {}
    /// The solver used by [`LinearProgram::solve`].
    fn solve_lp(lp: &LinearProgram<Self>) -> LpOutcome<Self> {
        solve_normalized(lp)
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_pos(&self) -> bool {
        self.is_positive()
    }
    fn is_neg(&self) -> bool {
        self.is_negative()
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
    fn sub_mul_assign(&mut self, f: &Self, p: &Self) {
        *self -= f * p;
    }
    fn div_assign_by(&mut self, p: &Self) {
        *self /= p;
    }
    fn solve_lp(lp: &LinearProgram<Self>) -> LpOutcome<Self> {
        solve_fraction_free(lp)
    }
}

/// Values within this distance of zero count as zero in floating mode.
pub const FLOAT_EPS: f64 = 1e-11;

impl Scalar for f64 {
    const EXACT: bool = false;
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_int(v: i64) -> Self {
        v as f64
    }
    fn is_pos(&self) -> bool {
        *self > FLOAT_EPS
    }
    fn is_neg(&self) -> bool {
        *self < -FLOAT_EPS
    }
    fn snap(&mut self) {
        if self.abs() <= FLOAT_EPS {
            *self = 0.0;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Constraint<T> {
    pub coeffs: Vec<T>,
    pub relation: Relation,
    pub rhs: T,
}

/// `maximize objective · x` subject to `constraints`, `x >= 0`.
#[derive(Debug, Clone)]
pub struct LinearProgram<T> {
    pub objective: Vec<T>,
    pub constraints: Vec<Constraint<T>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome<T> {
    Optimal { x: Vec<T>, value: T },
    Infeasible,
    Unbounded,
}

impl<T: Scalar> LinearProgram<T> {
    pub fn solve(&self) -> LpOutcome<T> {
        T::solve_lp(self)
    }
}

/// Consecutive degenerate pivots after which entering columns are chosen
/// by Bland's rule until the objective moves again.
const DEGENERATE_STREAK: usize = 8;

/// Rows `[coefficients..., rhs]` with slack and artificial columns appended
/// and right-hand sides made nonnegative.
struct StandardForm<T> {
    rows: Vec<Vec<T>>,
    basis: Vec<usize>,
    nvars: usize,
    cols: usize,
    art_start: usize,
}

impl<T: Scalar> StandardForm<T> {
    fn new(lp: &LinearProgram<T>) -> Self {
        let nvars = lp.objective.len();
        let normalized: Vec<(Vec<T>, Relation, T)> = lp
            .constraints
            .iter()
            .map(|c| {
                debug_assert_eq!(c.coeffs.len(), nvars);
                if c.rhs.is_neg() {
                    let rel = match c.relation {
                        Relation::Le => Relation::Ge,
                        Relation::Ge => Relation::Le,
                        Relation::Eq => Relation::Eq,
                    };
                    (
                        c.coeffs.iter().map(|v| -v.clone()).collect(),
                        rel,
                        -c.rhs.clone(),
                    )
                } else {
                    (c.coeffs.clone(), c.relation, c.rhs.clone())
                }
            })
            .collect();
        let slack_count = normalized
            .iter()
            .filter(|(_, r, _)| *r != Relation::Eq)
            .count();
        let art_count = normalized
            .iter()
            .filter(|(_, r, _)| *r != Relation::Le)
            .count();
        let cols = nvars + slack_count + art_count;
        let art_start = nvars + slack_count;
        let mut rows = Vec::with_capacity(normalized.len());
        let mut basis = Vec::with_capacity(normalized.len());
        let (mut next_slack, mut next_art) = (nvars, art_start);
        for (coeffs, rel, rhs) in normalized {
            let mut row = vec![T::zero(); cols + 1];
            for (dst, src) in row.iter_mut().zip(coeffs) {
                *dst = src;
            }
            match rel {
                Relation::Le => {
                    row[next_slack] = T::one();
                    basis.push(next_slack);
                    next_slack += 1;
                }
                Relation::Ge => {
                    row[next_slack] = -T::one();
                    next_slack += 1;
                    row[next_art] = T::one();
                    basis.push(next_art);
                    next_art += 1;
                }
                Relation::Eq => {
                    row[next_art] = T::one();
                    basis.push(next_art);
                    next_art += 1;
                }
            }
            row[cols] = rhs;
            rows.push(row);
        }
        Self {
            rows,
            basis,
            nvars,
            cols,
            art_start,
        }
    }

    fn has_artificials(&self) -> bool {
        self.art_start < self.cols
    }

    /// Phase-one objective: maximize minus the sum of artificials.
    fn phase_one_cost(&self) -> Vec<T> {
        (0..self.cols)
            .map(|j| {
                if j >= self.art_start {
                    -T::one()
                } else {
                    T::zero()
                }
            })
            .collect()
    }

    fn phase_two_cost(&self, objective: &[T]) -> Vec<T> {
        (0..self.cols)
            .map(|j| objective.get(j).cloned().unwrap_or_else(T::zero))
            .collect()
    }
}

/// Operations shared by both tableau representations; the pivoting rules
/// live in [`run_simplex`].
trait Pivoting {
    fn cols(&self) -> usize;
    fn rows(&self) -> usize;
    fn basis(&self) -> &[usize];
    fn set_basis(&mut self, r: usize, c: usize);
    /// Sign of the reduced cost of column `j`.
    fn reduced_sign(&self, j: usize) -> Ordering;
    /// Compares reduced costs of two columns.
    fn cmp_reduced(&self, a: usize, b: usize) -> Ordering;
    /// Sign of entry `(i, j)`.
    fn entry_sign(&self, i: usize, j: usize) -> Ordering;
    /// Compares `rhs_a / entry(a, j)` with `rhs_b / entry(b, j)` for
    /// positive entries.
    fn cmp_ratio(&self, a: usize, b: usize, j: usize) -> Ordering;
    fn rhs_is_zero(&self, i: usize) -> bool;
    fn pivot(&mut self, r: usize, c: usize);
    /// Column `j < limit` with the largest nonzero `|entry(r, j)|`.
    fn largest_in_row(&self, r: usize, limit: usize) -> Option<usize>;
    /// Hook run after every pivot with the running pivot count.
    fn after_pivot(&mut self, _count: usize) {}
    /// Degenerate pivots tolerated before Bland's rule takes over.
    fn degenerate_streak(&self) -> usize {
        DEGENERATE_STREAK
    }
}

/// Maximizes the installed objective over columns in `allowed`; returns
/// false if unbounded.
fn run_simplex<P: Pivoting>(tab: &mut P, allowed: &[bool]) -> bool {
    let mut degenerate = 0;
    let mut count = 0;
    loop {
        let candidates =
            (0..tab.cols()).filter(|&j| allowed[j] && tab.reduced_sign(j) == Ordering::Greater);
        let enter = if degenerate >= tab.degenerate_streak() {
            candidates.min()
        } else {
            candidates.fold(None, |best: Option<usize>, j| match best {
                Some(b) if tab.cmp_reduced(b, j) != Ordering::Less => Some(b),
                _ => Some(j),
            })
        };
        let Some(enter) = enter else {
            return true;
        };
        let mut leave: Option<usize> = None;
        for i in 0..tab.rows() {
            if tab.entry_sign(i, enter) != Ordering::Greater {
                continue;
            }
            let better = match leave {
                None => true,
                Some(l) => match tab.cmp_ratio(i, l, enter) {
                    Ordering::Less => true,
                    Ordering::Equal => tab.basis()[i] < tab.basis()[l],
                    Ordering::Greater => false,
                },
            };
            if better {
                leave = Some(i);
            }
        }
        let Some(r) = leave else {
            return false;
        };
        if tab.rhs_is_zero(r) {
            degenerate += 1;
        } else {
            degenerate = 0;
        }
        tab.pivot(r, enter);
        count += 1;
        tab.after_pivot(count);
    }
}

/// Both phases on a prepared tableau. `install` sets the objective row for
/// a cost vector and `value_is_neg` reports whether the phase-one optimum
/// is negative.
fn two_phase<P: Pivoting, T: Scalar>(
    tab: &mut P,
    form: &StandardForm<T>,
    objective: &[T],
    install: impl Fn(&mut P, &[T]),
    phase_one_value_neg: impl Fn(&P) -> bool,
) -> Option<bool> {
    let art_start = form.art_start;
    if form.has_artificials() {
        install(tab, &form.phase_one_cost());
        run_simplex(tab, &vec![true; form.cols]);
        if phase_one_value_neg(tab) {
            return None;
        }
        // drive zero-level artificials out of the basis where possible
        for r in 0..tab.rows() {
            if tab.basis()[r] >= art_start {
                if let Some(c) = tab.largest_in_row(r, art_start) {
                    tab.pivot(r, c);
                }
            }
        }
    }
    install(tab, &form.phase_two_cost(objective));
    let allowed: Vec<bool> = (0..form.cols).map(|j| j < art_start).collect();
    Some(run_simplex(tab, &allowed))
}

/// Pivots between rebuilds of an inexact tableau from the original rows.
const REFACTOR_INTERVAL: usize = 16;

struct Normalized<T> {
    original: Vec<Vec<T>>,
    cost: Vec<T>,
    rows: Vec<Vec<T>>,
    // reduced costs; obj[cols] = -value
    obj: Vec<T>,
    basis: Vec<usize>,
    cols: usize,
}

impl<T: Scalar> Normalized<T> {
    /// Recomputes the tableau of the current basis from the original rows by
    /// Gauss-Jordan elimination with partial pivoting. Keeps the old tableau
    /// if the basis looks singular.
    fn refactor(&mut self) {
        let abs = |v: &T| if v.is_neg() { -v.clone() } else { v.clone() };
        let mut m = self.original.clone();
        let rows = m.len();
        for i in 0..rows {
            let c = self.basis[i];
            let Some(best) = (i..rows).fold(None, |best: Option<usize>, r| match best {
                Some(b) if abs(&m[b][c]) >= abs(&m[r][c]) => Some(b),
                _ => Some(r),
            }) else {
                return;
            };
            if m[best][c].is_zero_value() {
                return;
            }
            m.swap(i, best);
            let p = m[i][c].clone();
            for v in m[i].iter_mut() {
                v.div_assign_by(&p);
            }
            let pivot_row = core::mem::take(&mut m[i]);
            for (r, row) in m.iter_mut().enumerate() {
                if r == i || row[c].is_zero_value() {
                    continue;
                }
                let f = row[c].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    v.sub_mul_assign(&f, pv);
                }
                row[c] = T::zero();
            }
            m[i] = pivot_row;
        }
        for row in m.iter_mut() {
            for v in row.iter_mut() {
                v.snap();
            }
        }
        self.rows = m;
        let cost = core::mem::take(&mut self.cost);
        self.install(&cost);
    }

    fn install(&mut self, cost: &[T]) {
        self.cost = cost.to_vec();
        let mut red = cost.to_vec();
        red.push(T::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &cost[b];
            if cb.is_zero_value() {
                continue;
            }
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero_value() {
                    red[j].sub_mul_assign(cb, v);
                }
            }
        }
        self.obj = red;
    }
}

fn sign_of<T: Scalar>(v: &T) -> Ordering {
    if v.is_pos() {
        Ordering::Greater
    } else if v.is_neg() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

impl<T: Scalar> Pivoting for Normalized<T> {
    fn after_pivot(&mut self, count: usize) {
        if !T::EXACT && count.is_multiple_of(REFACTOR_INTERVAL) {
            self.refactor();
        }
    }
    fn degenerate_streak(&self) -> usize {
        if T::EXACT {
            DEGENERATE_STREAK
        } else {
            0
        }
    }
    fn cols(&self) -> usize {
        self.cols
    }
    fn rows(&self) -> usize {
        self.rows.len()
    }
    fn basis(&self) -> &[usize] {
        &self.basis
    }
    fn set_basis(&mut self, r: usize, c: usize) {
        self.basis[r] = c;
    }
    fn reduced_sign(&self, j: usize) -> Ordering {
        sign_of(&self.obj[j])
    }
    fn cmp_reduced(&self, a: usize, b: usize) -> Ordering {
        sign_of(&(self.obj[a].clone() - self.obj[b].clone()))
    }
    fn entry_sign(&self, i: usize, j: usize) -> Ordering {
        sign_of(&self.rows[i][j])
    }
    fn cmp_ratio(&self, a: usize, b: usize, j: usize) -> Ordering {
        let rhs = self.cols;
        let ra = self.rows[a][rhs].clone() / self.rows[a][j].clone();
        let rb = self.rows[b][rhs].clone() / self.rows[b][j].clone();
        sign_of(&(ra - rb))
    }
    fn rhs_is_zero(&self, i: usize) -> bool {
        self.rows[i][self.cols].is_zero_value()
    }
    fn largest_in_row(&self, r: usize, limit: usize) -> Option<usize> {
        let abs = |v: &T| if v.is_neg() { -v.clone() } else { v.clone() };
        (0..limit)
            .filter(|&j| !self.rows[r][j].is_zero_value())
            .fold(None, |best: Option<usize>, j| match best {
                Some(b) if abs(&self.rows[r][b]) >= abs(&self.rows[r][j]) => Some(b),
                _ => Some(j),
            })
    }
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            v.div_assign_by(&p);
            v.snap();
        }
        let pivot_row = core::mem::take(&mut self.rows[r]);
        let nonzero: Vec<usize> = (0..=self.cols)
            .filter(|&j| !pivot_row[j].is_zero_value())
            .collect();
        for row in self.rows.iter_mut().chain(core::iter::once(&mut self.obj)) {
            if row.is_empty() || row[c].is_zero_value() {
                continue;
            }
            let f = row[c].clone();
            for &j in &nonzero {
                row[j].sub_mul_assign(&f, &pivot_row[j]);
                row[j].snap();
            }
            // keep exact zero in the pivot column for the float path
            row[c] = T::zero();
        }
        self.rows[r] = pivot_row;
        self.set_basis(r, c);
    }
}

/// Solves on the normalized tableau in `T`'s own arithmetic.
pub fn solve_normalized<T: Scalar>(lp: &LinearProgram<T>) -> LpOutcome<T> {
    let form = StandardForm::new(lp);
    let mut tab = Normalized {
        original: form.rows.clone(),
        cost: Vec::new(),
        rows: form.rows.clone(),
        obj: Vec::new(),
        basis: form.basis.clone(),
        cols: form.cols,
    };
    let cols = form.cols;
    let outcome = two_phase(
        &mut tab,
        &form,
        &lp.objective,
        |t, cost| t.install(cost),
        |t| (-t.obj[cols].clone()).is_neg(),
    );
    match outcome {
        None => LpOutcome::Infeasible,
        Some(false) => LpOutcome::Unbounded,
        Some(true) => {
            if !T::EXACT {
                tab.refactor();
            }
            let mut x = vec![T::zero(); form.nvars];
            for (row, &b) in tab.rows.iter().zip(&tab.basis) {
                if b < form.nvars {
                    x[b] = row[cols].clone();
                }
            }
            LpOutcome::Optimal {
                x,
                value: -tab.obj[cols].clone(),
            }
        }
    }
}

/// Integer tableau over a shared denominator `den > 0`. A pivot on `p`
/// replaces every other entry `a` by `(p a - a_c a_r) / den`, an exact
/// division, and sets `den = p`.
struct FractionFree {
    rows: Vec<Vec<BigInt>>,
    obj: Vec<BigInt>,
    basis: Vec<usize>,
    cols: usize,
    den: BigInt,
}

impl FractionFree {
    /// `cost` is scaled to integers by the caller.
    fn install(&mut self, cost: &[BigInt]) {
        let mut red: Vec<BigInt> = cost.iter().map(|c| c * &self.den).collect();
        red.push(BigInt::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    red[j] -= cb * v;
                }
            }
        }
        self.obj = red;
    }
}

impl Pivoting for FractionFree {
    fn cols(&self) -> usize {
        self.cols
    }
    fn rows(&self) -> usize {
        self.rows.len()
    }
    fn basis(&self) -> &[usize] {
        &self.basis
    }
    fn set_basis(&mut self, r: usize, c: usize) {
        self.basis[r] = c;
    }
    fn reduced_sign(&self, j: usize) -> Ordering {
        self.obj[j].sign_cmp()
    }
    fn cmp_reduced(&self, a: usize, b: usize) -> Ordering {
        self.obj[a].cmp(&self.obj[b])
    }
    fn entry_sign(&self, i: usize, j: usize) -> Ordering {
        self.rows[i][j].sign_cmp()
    }
    fn cmp_ratio(&self, a: usize, b: usize, j: usize) -> Ordering {
        let rhs = self.cols;
        (&self.rows[a][rhs] * &self.rows[b][j]).cmp(&(&self.rows[b][rhs] * &self.rows[a][j]))
    }
    fn rhs_is_zero(&self, i: usize) -> bool {
        self.rows[i][self.cols].is_zero()
    }
    fn largest_in_row(&self, r: usize, limit: usize) -> Option<usize> {
        (0..limit)
            .filter(|&j| !self.rows[r][j].is_zero())
            .fold(None, |best: Option<usize>, j| match best {
                Some(b) if self.rows[r][b].abs() >= self.rows[r][j].abs() => Some(b),
                _ => Some(j),
            })
    }
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        let pivot_row = core::mem::take(&mut self.rows[r]);
        let den = core::mem::replace(&mut self.den, BigInt::one());
        for row in self.rows.iter_mut().chain(core::iter::once(&mut self.obj)) {
            if row.is_empty() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                let mut t = &p * &*v;
                if !f.is_zero() && !pv.is_zero() {
                    t -= &f * pv;
                }
                debug_assert!(t.is_multiple_of(&den));
                *v = t / &den;
            }
        }
        self.rows[r] = pivot_row;
        if p.is_negative() {
            for row in self.rows.iter_mut().chain(core::iter::once(&mut self.obj)) {
                for v in row.iter_mut() {
                    *v = -core::mem::take(v);
                }
            }
            self.den = -p;
        } else {
            self.den = p;
        }
        self.set_basis(r, c);
    }
}

trait SignCmp {
    fn sign_cmp(&self) -> Ordering;
}

impl SignCmp for BigInt {
    fn sign_cmp(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

/// Multiplies a rational vector by the lcm of its denominators.
fn scale_to_integers(values: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let lcm = values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints = values
        .iter()
        .map(|v| v.numer() * (&lcm / v.denom()))
        .collect();
    (ints, lcm)
}

/// Solves a rational program on the fraction-free integer tableau.
pub fn solve_fraction_free(lp: &LinearProgram<BigRational>) -> LpOutcome<BigRational> {
    let form = StandardForm::new(lp);
    let cols = form.cols;
    let mut tab = FractionFree {
        rows: form.rows.iter().map(|r| scale_to_integers(r).0).collect(),
        obj: Vec::new(),
        basis: form.basis.clone(),
        cols,
        den: BigInt::one(),
    };
    let (objective, cost_scale) = scale_to_integers(&lp.objective);
    let install = |t: &mut FractionFree, cost: &[BigRational]| {
        let ints: Vec<BigInt> = cost.iter().map(|c| c.to_integer()).collect();
        t.install(&ints);
    };
    let objective_q: Vec<BigRational> = objective
        .iter()
        .cloned()
        .map(BigRational::from_integer)
        .collect();
    let outcome = two_phase(
        &mut tab,
        &form,
        &objective_q,
        install,
        // value = -obj[cols] / den with den > 0
        |t| t.obj[cols].is_positive(),
    );
    match outcome {
        None => LpOutcome::Infeasible,
        Some(false) => LpOutcome::Unbounded,
        Some(true) => {
            let mut x = vec![<BigRational as Zero>::zero(); form.nvars];
            for (row, &b) in tab.rows.iter().zip(&tab.basis) {
                if b < form.nvars {
                    x[b] = BigRational::new(row[cols].clone(), tab.den.clone());
                }
            }
            let value = BigRational::new(-tab.obj[cols].clone(), &tab.den * &cost_scale);
            LpOutcome::Optimal { x, value }
        }
    }
}
