//! Solvers for the largest all-ones square submatrix.
//!
//! Every solver returns the same side length; they differ in how much work
//! they do, which is recorded in [`OpCounters`]. The naive, recursive and
//! memoized solvers anchor a witness at its top-left corner. The DP solver
//! finds the bottom-right corner and converts it.

mod dp;
mod naive;
mod recursive;
mod verify;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::matrix::BinaryMatrix;

pub use dp::{dp_table, solve_dp, DpTable};
pub use naive::solve_naive;
pub use recursive::{solve_memoized, solve_recursive, DEFAULT_RECURSION_CAP};
pub use verify::{check_witness, largest_square_exhaustive, verify_witness, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("instance too large for the recursive solver: n={n} exceeds cap {cap}")]
    InstanceTooLarge { n: usize, cap: usize },
    #[error("anchor ({row},{col}) with side {side} lies outside the {n}x{n} matrix")]
    AnchorOutOfBounds { row: usize, col: usize, side: usize, n: usize },
    #[error("malformed result record: {0}")]
    BadRecord(String),
    #[error("unknown solver {0:?}")]
    UnknownSolver(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, clap::ValueEnum)]
pub enum SolverKind {
    Naive,
    Recursive,
    Memoized,
    Dp,
}

impl SolverKind {
    pub const ALL: [SolverKind; 4] =
        [SolverKind::Naive, SolverKind::Recursive, SolverKind::Memoized, SolverKind::Dp];

    pub fn as_str(self) -> &'static str {
        match self {
            SolverKind::Naive => "naive",
            SolverKind::Recursive => "recursive",
            SolverKind::Memoized => "memoized",
            SolverKind::Dp => "dp",
        }
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SolverKind {
    type Err = SolveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SolverKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| SolveError::UnknownSolver(s.to_string()))
    }
}

/// Deterministic work counters. A field is `None` when the solver has no
/// such operation.
///
/// For the recursive solvers `recursive_calls` counts every invocation of
/// the square-size function, including invocations on out-of-range
/// positions that return 0 immediately. The memoized solver splits this
/// total into `cache_hits` and `cache_misses`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct OpCounters {
    pub cells_inspected: Option<u64>,
    pub submatrices_enumerated: Option<u64>,
    pub recursive_calls: Option<u64>,
    pub table_updates: Option<u64>,
    pub cache_hits: Option<u64>,
    pub cache_misses: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MaxSquareResult {
    pub side: usize,
    /// Top-left corner of one witness square; `None` iff `side == 0`.
    pub anchor: Option<(usize, usize)>,
    pub counters: OpCounters,
}

impl MaxSquareResult {
    pub fn claim(side: usize, anchor: Option<(usize, usize)>) -> Self {
        Self { side, anchor, counters: OpCounters::default() }
    }

    pub fn area(&self) -> u128 {
        (self.side as u128) * (self.side as u128)
    }
}

/// `side=<m> anchor=<r>,<c> cells=<k> calls=<k> subs=<k> updates=<k>`,
/// with `hits=`/`misses=` appended for the memoized solver and absent
/// fields omitted.
impl fmt::Display for MaxSquareResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "side={}", self.side)?;
        if let Some((r, c)) = self.anchor {
            write!(f, " anchor={r},{c}")?;
        }
        let c = &self.counters;
        let fields = [
            ("cells", c.cells_inspected),
            ("calls", c.recursive_calls),
            ("subs", c.submatrices_enumerated),
            ("updates", c.table_updates),
            ("hits", c.cache_hits),
            ("misses", c.cache_misses),
        ];
        for (key, value) in fields {
            if let Some(v) = value {
                write!(f, " {key}={v}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for MaxSquareResult {
    type Err = SolveError;

    /// Parses a result record. An `area=` field, as printed by the CLI, is
    /// checked against `side` and otherwise ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |msg: String| SolveError::BadRecord(msg);
        let mut side = None;
        let mut area = None;
        let mut result = MaxSquareResult::claim(0, None);
        for token in s.split_whitespace() {
            let (key, value) = token
                .split_once('=')
                .ok_or_else(|| bad(format!("field {token:?} has no '='")))?;
            let num = |v: &str| v.parse::<u64>().map_err(|_| bad(format!("bad number in {token:?}")));
            match key {
                "side" => side = Some(num(value)? as usize),
                "anchor" => {
                    let (r, c) = value
                        .split_once(',')
                        .ok_or_else(|| bad(format!("anchor {value:?} is not <row>,<col>")))?;
                    result.anchor = Some((num(r)? as usize, num(c)? as usize));
                }
                "area" => area = Some(value.parse::<u128>().map_err(|_| bad(format!("bad number in {token:?}")))?),
                "cells" => result.counters.cells_inspected = Some(num(value)?),
                "calls" => result.counters.recursive_calls = Some(num(value)?),
                "subs" => result.counters.submatrices_enumerated = Some(num(value)?),
                "updates" => result.counters.table_updates = Some(num(value)?),
                "hits" => result.counters.cache_hits = Some(num(value)?),
                "misses" => result.counters.cache_misses = Some(num(value)?),
                other => return Err(bad(format!("unknown field {other:?}"))),
            }
        }
        result.side = side.ok_or_else(|| bad("missing side".to_string()))?;
        if let Some(a) = area {
            if a != result.area() {
                return Err(bad(format!("area {a} does not match side {}", result.side)));
            }
        }
        Ok(result)
    }
}

/// Runs the selected solver. `cap` bounds `n` for the plain recursive solver
/// only; pass `None` to lift it.
pub fn solve(
    kind: SolverKind,
    m: &BinaryMatrix,
    cap: Option<usize>,
) -> Result<MaxSquareResult, SolveError> {
    match kind {
        SolverKind::Naive => Ok(solve_naive(m)),
        SolverKind::Recursive => solve_recursive(m, cap),
        SolverKind::Memoized => Ok(solve_memoized(m)),
        SolverKind::Dp => Ok(solve_dp(m)),
    }
}
