//! Largest all-ones square submatrix of a binary square matrix.
//!
//! Four solvers of very different cost (exhaustive enumeration, plain
//! recursion, memoized recursion and bottom-up dynamic programming) share a
//! single result type carrying deterministic operation counters. The
//! [`bench`] module sweeps instance sizes, times each solver and fits
//! log-log growth orders to the counters.

pub mod bench;
pub mod cli;
pub mod combinatorics;
pub mod matrix;
pub mod solvers;

pub use matrix::{generate, parse_matrix, serialize_matrix, BinaryMatrix, GeneratorKind, GeneratorSpec};
pub use solvers::{solve, MaxSquareResult, OpCounters, SolverKind};
