//! Comparative benchmark harness.
//!
//! A sweep solves one seeded instance per size with every selected solver,
//! timing each solve and recording its operation counters. Growth orders
//! are estimated by least-squares fits in log-log space. Counters are the
//! reproducible signal; wall times are reported alongside for corroboration.

use std::fmt;
use std::hint::black_box;
use std::io::{Read, Write};
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use thiserror::Error;

use crate::matrix::{generate, BinaryMatrix, GeneratorSpec, MatrixError};
use crate::solvers::{solve, OpCounters, SolveError, SolverKind};

/// Exact CSV header written by [`emit_csv`].
pub const CSV_HEADER: [&str; 11] = [
    "solver",
    "n",
    "density",
    "seed",
    "reps",
    "time_median_ns",
    "time_min_ns",
    "cells_inspected",
    "submatrices_enumerated",
    "recursive_calls",
    "table_updates",
];

/// Coarsest clock resolution at which timings are still reported as reliable.
pub const MAX_RELIABLE_CLOCK_NS: u64 = 1_000;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("empty sweep: {0}")]
    EmptySweep(&'static str),
    #[error("sizes must be strictly increasing")]
    SizesNotIncreasing,
    #[error("repetition count must be at least 1")]
    InvalidReps,
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("solvers disagree at n={n}: {detail}")]
    Disagreement { n: usize, detail: String },
    #[error("{solver} produced different counters across repetitions at n={n}")]
    NondeterministicCounters { solver: SolverKind, n: usize },
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("metric {metric} is zero at n={n}; log undefined")]
    ZeroMetric { metric: Metric, n: usize },
    #[error("metric {metric} is not recorded for solver {solver}")]
    MissingMetric { metric: Metric, solver: SolverKind },
    #[error("records from several solvers passed to one fit")]
    MixedSolvers,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("csv: {0}")]
    Csv(String),
    #[error("write failure: {0}")]
    Write(#[from] std::io::Error),
}

impl From<csv::Error> for BenchError {
    fn from(e: csv::Error) -> Self {
        if e.is_io_error() {
            match e.into_kind() {
                csv::ErrorKind::Io(io) => BenchError::Write(io),
                other => BenchError::Csv(format!("{other:?}")),
            }
        } else {
            BenchError::Csv(e.to_string())
        }
    }
}

/// One (solver, n) observation. Only the four CSV counters are kept; cache
/// hit/miss splits are not part of the bench schema.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub solver: SolverKind,
    pub n: usize,
    pub density: f64,
    pub seed: u64,
    pub reps: u32,
    pub time_median_ns: u64,
    pub time_min_ns: u64,
    pub counters: OpCounters,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    CellsInspected,
    SubmatricesEnumerated,
    RecursiveCalls,
    TableUpdates,
    TimeMedianNs,
    TimeMinNs,
}

impl Metric {
    pub const ALL: [Metric; 6] = [
        Metric::CellsInspected,
        Metric::SubmatricesEnumerated,
        Metric::RecursiveCalls,
        Metric::TableUpdates,
        Metric::TimeMedianNs,
        Metric::TimeMinNs,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Metric::CellsInspected => "cells_inspected",
            Metric::SubmatricesEnumerated => "submatrices_enumerated",
            Metric::RecursiveCalls => "recursive_calls",
            Metric::TableUpdates => "table_updates",
            Metric::TimeMedianNs => "time_median_ns",
            Metric::TimeMinNs => "time_min_ns",
        }
    }

    pub fn value(self, record: &BenchRecord) -> Option<u64> {
        let c = &record.counters;
        match self {
            Metric::CellsInspected => c.cells_inspected,
            Metric::SubmatricesEnumerated => c.submatrices_enumerated,
            Metric::RecursiveCalls => c.recursive_calls,
            Metric::TableUpdates => c.table_updates,
            Metric::TimeMedianNs => Some(record.time_median_ns),
            Metric::TimeMinNs => Some(record.time_min_ns),
        }
    }

    /// The counters a solver populates, in CSV column order.
    pub fn counters_for(solver: SolverKind) -> &'static [Metric] {
        match solver {
            SolverKind::Naive => &[Metric::CellsInspected, Metric::SubmatricesEnumerated],
            SolverKind::Recursive | SolverKind::Memoized => {
                &[Metric::CellsInspected, Metric::RecursiveCalls]
            }
            SolverKind::Dp => &[Metric::CellsInspected, Metric::TableUpdates],
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Metric {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Metric::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| BenchError::Csv(format!("unknown metric {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SlopeEstimate {
    pub solver: SolverKind,
    pub metric: Metric,
    pub slope: f64,
    pub r_squared: f64,
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub solvers: Vec<SolverKind>,
    pub sizes: Vec<usize>,
    /// Instance recipe; its `n` is replaced by each size in turn.
    pub template: GeneratorSpec,
    pub reps: u32,
    /// Limit on `n` for the plain recursive solver; `None` lifts it.
    pub recursion_cap: Option<usize>,
}

impl SweepConfig {
    fn validate(&self) -> Result<(), BenchError> {
        if self.solvers.is_empty() {
            return Err(BenchError::EmptySweep("no solvers selected"));
        }
        if self.sizes.is_empty() {
            return Err(BenchError::EmptySweep("no sizes given"));
        }
        if self.sizes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(BenchError::SizesNotIncreasing);
        }
        if self.reps == 0 {
            return Err(BenchError::InvalidReps);
        }
        if let (true, Some(cap)) = (self.solvers.contains(&SolverKind::Recursive), self.recursion_cap) {
            if let Some(&n) = self.sizes.iter().find(|&&n| n > cap) {
                return Err(SolveError::InstanceTooLarge { n, cap }.into());
            }
        }
        let largest = self.sizes[self.sizes.len() - 1];
        self.template.with_n(largest).validate()?;
        Ok(())
    }
}

fn bench_counters(c: OpCounters) -> OpCounters {
    OpCounters { cache_hits: None, cache_misses: None, ..c }
}

fn median_ns(sorted: &[u64]) -> u64 {
    let mid = sorted.len() / 2;
    if sorted.len() % 2 == 1 {
        sorted[mid]
    } else {
        // mean of the two middle samples, without overflow
        sorted[mid - 1] / 2 + sorted[mid] / 2 + (sorted[mid - 1] % 2 + sorted[mid] % 2) / 2
    }
}

fn time_solver(
    kind: SolverKind,
    m: &BinaryMatrix,
    cfg: &SweepConfig,
) -> Result<(usize, OpCounters, Vec<u64>), BenchError> {
    // untimed warm-up run; its counters are the reference for every rep
    let warm = solve(kind, m, cfg.recursion_cap)?;
    let mut samples = Vec::with_capacity(cfg.reps as usize);
    for _ in 0..cfg.reps {
        let start = Instant::now();
        let r = black_box(solve(kind, black_box(m), cfg.recursion_cap));
        let elapsed = start.elapsed();
        let r = r?;
        if r.counters != warm.counters || r.side != warm.side {
            return Err(BenchError::NondeterministicCounters { solver: kind, n: m.n() });
        }
        samples.push(u64::try_from(elapsed.as_nanos()).unwrap_or(u64::MAX));
    }
    samples.sort_unstable();
    Ok((warm.side, warm.counters, samples))
}

/// Runs every selected solver on the same generated instance at each size.
///
/// Measurements run sequentially on the calling thread. The returned
/// records are ordered by solver, then by `n`.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<BenchRecord>, BenchError> {
    cfg.validate()?;
    let mut solvers = cfg.solvers.clone();
    solvers.sort();
    solvers.dedup();

    let mut records = Vec::with_capacity(solvers.len() * cfg.sizes.len());
    for &n in &cfg.sizes {
        let spec = cfg.template.with_n(n);
        let instance = generate(&spec)?;
        let mut sides: Vec<(SolverKind, usize)> = Vec::with_capacity(solvers.len());
        for &kind in &solvers {
            let (side, counters, samples) = time_solver(kind, &instance, cfg)?;
            sides.push((kind, side));
            records.push(BenchRecord {
                solver: kind,
                n,
                density: spec.nominal_density(),
                seed: spec.seed,
                reps: cfg.reps,
                time_median_ns: median_ns(&samples),
                time_min_ns: samples[0],
                counters: bench_counters(counters),
            });
        }
        if sides.windows(2).any(|w| w[0].1 != w[1].1) {
            let detail = sides
                .iter()
                .map(|(k, s)| format!("{k}={s}"))
                .collect::<Vec<_>>()
                .join(" ");
            return Err(BenchError::Disagreement { n, detail });
        }
    }
    records.sort_by(|a, b| (a.solver, a.n).cmp(&(b.solver, b.n)));
    Ok(records)
}

/// Ordinary least squares of ln(metric) on ln(n) over records from a single
/// solver. Needs at least four distinct sizes with positive metric values.
pub fn fit_growth(records: &[BenchRecord], metric: Metric) -> Result<SlopeEstimate, BenchError> {
    let solver = records
        .first()
        .map(|r| r.solver)
        .ok_or_else(|| BenchError::InsufficientData("no records".into()))?;
    if records.iter().any(|r| r.solver != solver) {
        return Err(BenchError::MixedSolvers);
    }
    let mut points = Vec::with_capacity(records.len());
    for r in records {
        let v = metric.value(r).ok_or(BenchError::MissingMetric { metric, solver })?;
        if v == 0 || r.n == 0 {
            return Err(BenchError::ZeroMetric { metric, n: r.n });
        }
        points.push((r.n, v));
    }
    let mut ns: Vec<usize> = points.iter().map(|p| p.0).collect();
    ns.sort_unstable();
    ns.dedup();
    if ns.len() != points.len() {
        return Err(BenchError::InsufficientData("sizes are not distinct".into()));
    }
    if points.len() < 4 {
        return Err(BenchError::InsufficientData(format!(
            "{} sizes for {solver}/{metric}, need at least 4",
            points.len()
        )));
    }

    let xs: Vec<f64> = points.iter().map(|&(n, _)| (n as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|&(_, v)| (v as f64).ln()).collect();
    let k = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / k;
    let mean_y = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mean_x).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mean_x) * (y - mean_y)).sum();
    let syy: f64 = ys.iter().map(|y| (y - mean_y).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - (intercept + slope * x)).powi(2))
        .sum();
    let r_squared = if syy == 0.0 { 1.0 } else { (1.0 - ss_res / syy).clamp(0.0, 1.0) };
    Ok(SlopeEstimate { solver, metric, slope, r_squared })
}

/// Fits every counter the solver populates, plus median time, for each
/// solver in `records` that has at least four sizes. Zero-valued series
/// (e.g. a time below clock resolution) are skipped.
pub fn fit_all(records: &[BenchRecord]) -> Vec<SlopeEstimate> {
    let mut out = Vec::new();
    for kind in SolverKind::ALL {
        let rows: Vec<BenchRecord> = records.iter().filter(|r| r.solver == kind).cloned().collect();
        if rows.len() < 4 {
            continue;
        }
        for &metric in Metric::counters_for(kind).iter().chain(&[Metric::TimeMedianNs]) {
            if let Ok(est) = fit_growth(&rows, metric) {
                out.push(est);
            }
        }
    }
    out
}

/// Number of square submatrices of an n×n grid, Σₖ (n − k + 1)².
pub fn square_count(n: u64) -> Result<u128, BenchError> {
    if n < 1 {
        return Err(BenchError::Domain(format!("n must be at least 1, got {n}")));
    }
    let n = u128::from(n);
    // n(n+1)(2n+1) overflows u128 only for n beyond ~5.5e12
    n.checked_mul(n + 1)
        .and_then(|v| v.checked_mul(2 * n + 1))
        .map(|v| v / 6)
        .ok_or_else(|| BenchError::Domain("square count overflows 128 bits".into()))
}

/// Exact number of invocations the plain recursive solver makes on `m`.
///
/// C(i, j) = 1 for an out-of-range position or a 0 cell, otherwise
/// 1 + C(i+1, j) + C(i, j+1) + C(i+1, j+1); the top-level scan contributes
/// the sum of C over every in-range position. The table is filled bottom-up
/// in O(n²) big-integer additions.
pub fn call_count_oracle(m: &BinaryMatrix) -> BigUint {
    let n = m.n();
    let w = n + 1;
    let one = BigUint::from(1u32);
    let mut table: Vec<BigUint> = vec![one.clone(); w * w];
    let mut total = BigUint::from(0u32);
    for i in (0..n).rev() {
        for j in (0..n).rev() {
            if m.is_one(i, j) {
                let v = &one + &table[(i + 1) * w + j] + &table[i * w + j + 1] + &table[(i + 1) * w + j + 1];
                table[i * w + j] = v;
            }
            total += &table[i * w + j];
        }
    }
    total
}

/// Smallest non-zero step observed between consecutive monotonic clock
/// reads.
pub fn clock_resolution() -> Duration {
    let mut best = Duration::MAX;
    for _ in 0..64 {
        let start = Instant::now();
        let mut now = Instant::now();
        while now == start {
            now = Instant::now();
        }
        best = best.min(now - start);
    }
    best
}

fn opt_field(v: Option<u64>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

/// Writes the header and one row per record, ordered by solver then `n`.
pub fn emit_csv<W: Write>(records: &[BenchRecord], destination: W) -> Result<(), BenchError> {
    let mut sorted: Vec<&BenchRecord> = records.iter().collect();
    sorted.sort_by(|a, b| (a.solver, a.n).cmp(&(b.solver, b.n)));
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(destination);
    w.write_record(CSV_HEADER)?;
    for r in sorted {
        let c = &r.counters;
        w.write_record([
            r.solver.as_str().to_string(),
            r.n.to_string(),
            r.density.to_string(),
            r.seed.to_string(),
            r.reps.to_string(),
            r.time_median_ns.to_string(),
            r.time_min_ns.to_string(),
            opt_field(c.cells_inspected),
            opt_field(c.submatrices_enumerated),
            opt_field(c.recursive_calls),
            opt_field(c.table_updates),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Appends `#slope,<solver>,<metric>,<slope>,<r2>` comment rows.
pub fn emit_slopes<W: Write>(slopes: &[SlopeEstimate], mut destination: W) -> Result<(), BenchError> {
    for s in slopes {
        writeln!(destination, "#slope,{},{},{},{}", s.solver, s.metric, s.slope, s.r_squared)?;
    }
    Ok(())
}

/// Reads back rows written by [`emit_csv`]; `#` comment rows are skipped.
pub fn parse_csv<R: Read>(source: R) -> Result<Vec<BenchRecord>, BenchError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .comment(Some(b'#'))
        .from_reader(source);
    let header = rdr.headers()?.clone();
    if header.iter().ne(CSV_HEADER.iter().copied()) {
        return Err(BenchError::Csv(format!("unexpected header {header:?}")));
    }
    let bad = |row: &csv::StringRecord, col: usize| {
        BenchError::Csv(format!("bad {} value {:?}", CSV_HEADER[col], row.get(col).unwrap_or("")))
    };
    let mut out = Vec::new();
    for row in rdr.records() {
        let row = row?;
        let field = |col: usize| row.get(col).unwrap_or("");
        let int = |col: usize| field(col).parse::<u64>().map_err(|_| bad(&row, col));
        let opt = |col: usize| -> Result<Option<u64>, BenchError> {
            match field(col) {
                "" => Ok(None),
                s => s.parse().map(Some).map_err(|_| bad(&row, col)),
            }
        };
        out.push(BenchRecord {
            solver: field(0).parse().map_err(|_| bad(&row, 0))?,
            n: int(1)? as usize,
            density: field(2).parse().map_err(|_| bad(&row, 2))?,
            seed: int(3)?,
            reps: u32::try_from(int(4)?).map_err(|_| bad(&row, 4))?,
            time_median_ns: int(5)?,
            time_min_ns: int(6)?,
            counters: OpCounters {
                cells_inspected: opt(7)?,
                submatrices_enumerated: opt(8)?,
                recursive_calls: opt(9)?,
                table_updates: opt(10)?,
                cache_hits: None,
                cache_misses: None,
            },
        });
    }
    Ok(out)
}
