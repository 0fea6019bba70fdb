use alloc::string::String;

/// Errors raised by the tournament, solver, geometry and search routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("pair {{{u}, {v}}} has no directed edge")]
    MissingPair { u: usize, v: usize },
    #[error("pair {{{u}, {v}}} is listed more than once")]
    DuplicatePair { u: usize, v: usize },
    #[error("self loop on vertex {v}")]
    SelfLoop { v: usize },
    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    OutOfRange { u: usize, v: usize, n: usize },
    #[error("color {color} on edge ({u}, {v}) is outside 1..={k}")]
    InvalidColor {
        u: usize,
        v: usize,
        color: usize,
        k: usize,
    },
    #[error("vertex {v} is outside 0..{n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("{what}: size {size} exceeds the ceiling {ceiling}")]
    InstanceTooLarge {
        what: &'static str,
        size: usize,
        ceiling: usize,
    },
    #[error("search budget of {budget} nodes exhausted")]
    BudgetExhausted { budget: u64 },
    #[error("simplex did not certify optimality (primal/dual gap {gap:e})")]
    NonConvergence { gap: f64 },
    #[error("axis {axis}: points {first} and {second} share a coordinate")]
    GeneralPositionViolation {
        axis: usize,
        first: usize,
        second: usize,
    },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("no configuration found within a budget of {budget} nodes")]
    SearchFailed { budget: u64 },
    #[error("{q} is not prime")]
    NotPrime { q: u64 },
    #[error("{q} is not congruent to 3 mod 4")]
    WrongResidueClass { q: u64 },
    #[error("the base tournament is not a Paley tournament")]
    NotPaleyBase,
    #[error("expected a 2-colored tournament, found {k} colors")]
    NotTwoColored { k: usize },
    #[error("coloring is not transitive")]
    NotTransitivelyColored,
    #[error("vertex {v} not found in a tournament on {n} vertices")]
    VertexNotFound { v: usize, n: usize },
    #[error("majority needs an odd number of orders, got {count}")]
    EvenOrderCount { count: usize },
    #[error("order {index} is not a permutation of 0..{n}")]
    MismatchedDomains { index: usize, n: usize },
    #[error("weights are not a feasible fractional transversal")]
    InfeasibleWeights,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = core::result::Result<T, Error>;
