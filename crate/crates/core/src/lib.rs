//! Tournaments, transitive edge colorings and their domination numbers.
//!
//! The crate is `no_std` and needs only `alloc`. Everything that touches
//! files, the clock or the terminal lives in the `transdom` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod colorsearch;
pub mod error;
pub mod geometry;
pub mod lp;
pub mod paley;
pub mod solvers;
pub mod tournament;
pub mod vcnets;

pub use error::{Error, Result};
pub use tournament::{ColoredTournament, Hypergraph, ScramblingMask, Tournament, VertexSet};
