//! Python bindings for the `maxstretch` crate.

use std::collections::BTreeMap;

use pyo3::create_exception;
use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;

use maxstretch::bench::{self, BenchError, Metric, SweepConfig};
use maxstretch::combinatorics::{self, CountError};
use maxstretch::matrix::{self, GeneratorKind, GeneratorSpec, MatrixError};
use maxstretch::solvers::{self, SolveError, SolverKind, DEFAULT_RECURSION_CAP};

create_exception!(pymaxstretch, InstanceTooLargeError, PyValueError);

fn matrix_err(e: MatrixError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn solve_err(e: SolveError) -> PyErr {
    match e {
        SolveError::InstanceTooLarge { .. } => InstanceTooLargeError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn count_err(e: CountError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn bench_err(e: BenchError) -> PyErr {
    match e {
        BenchError::Solve(inner) => solve_err(inner),
        BenchError::Write(io) => PyIOError::new_err(io.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn parse_kind(kind: &str) -> PyResult<GeneratorKind> {
    kind.parse().map_err(matrix_err)
}

fn parse_solver(name: &str) -> PyResult<SolverKind> {
    name.parse().map_err(solve_err)
}

/// Immutable n×n matrix of 0/1 entries.
#[pyclass(name = "BinaryMatrix", module = "pymaxstretch", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyBinaryMatrix {
    inner: matrix::BinaryMatrix,
}

#[pymethods]
impl PyBinaryMatrix {
    /// Build from rows such as `["1101", "1111"]`. Single spaces between digits are allowed.
    #[new]
    fn new(rows: Vec<String>) -> PyResult<Self> {
        matrix::BinaryMatrix::from_rows(&rows).map(|inner| Self { inner }).map_err(matrix_err)
    }

    /// Parse the `.bmat` text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        matrix::parse_matrix(text).map(|inner| Self { inner }).map_err(matrix_err)
    }

    /// Generate an instance. `kind` is one of all-ones, all-zeros, identity, bernoulli, planted.
    #[staticmethod]
    #[pyo3(signature = (kind, n, density=0.5, planted_side=0, seed=0))]
    fn generate(kind: &str, n: usize, density: f64, planted_side: usize, seed: u64) -> PyResult<Self> {
        let spec = GeneratorSpec { kind: parse_kind(kind)?, n, density, planted_side, seed };
        matrix::generate(&spec).map(|inner| Self { inner }).map_err(matrix_err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn get(&self, row: usize, col: usize) -> PyResult<u8> {
        let n = self.inner.n();
        if row >= n || col >= n {
            return Err(PyValueError::new_err(format!("({row},{col}) outside {n}x{n} matrix")));
        }
        Ok(self.inner.get(row, col))
    }

    /// Rows as lists of ints (a plain `Vec<u8>` would surface as `bytes`).
    fn rows(&self) -> Vec<Vec<u32>> {
        self.inner.rows().map(|r| r.iter().map(|&c| u32::from(c)).collect()).collect()
    }

    fn count_ones(&self) -> usize {
        self.inner.count_ones()
    }

    fn to_text(&self) -> String {
        matrix::serialize_matrix(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.inner)
    }
}

/// Solver output: side length, witness anchor and operation counters.
#[pyclass(name = "MaxSquareResult", module = "pymaxstretch", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyMaxSquareResult {
    inner: solvers::MaxSquareResult,
}

#[pymethods]
impl PyMaxSquareResult {
    /// A bare claim for use with `verify_witness`.
    #[new]
    #[pyo3(signature = (side, anchor=None))]
    fn new(side: usize, anchor: Option<(usize, usize)>) -> Self {
        Self { inner: solvers::MaxSquareResult::claim(side, anchor) }
    }

    /// Parse a record such as `side=3 anchor=1,1 cells=16 updates=16`.
    #[staticmethod]
    fn parse(record: &str) -> PyResult<Self> {
        record.parse().map(|inner| Self { inner }).map_err(solve_err)
    }

    #[getter]
    fn side(&self) -> usize {
        self.inner.side
    }

    #[getter]
    fn area(&self) -> u128 {
        self.inner.area()
    }

    #[getter]
    fn anchor(&self) -> Option<(usize, usize)> {
        self.inner.anchor
    }

    /// Populated counters only, keyed by name.
    #[getter]
    fn counters(&self) -> BTreeMap<&'static str, u64> {
        let c = &self.inner.counters;
        [
            ("cells_inspected", c.cells_inspected),
            ("submatrices_enumerated", c.submatrices_enumerated),
            ("recursive_calls", c.recursive_calls),
            ("table_updates", c.table_updates),
            ("cache_hits", c.cache_hits),
            ("cache_misses", c.cache_misses),
        ]
        .into_iter()
        .filter_map(|(k, v)| v.map(|v| (k, v)))
        .collect()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("MaxSquareResult({})", self.inner)
    }
}

/// Solve with one of `naive`, `recursive`, `memoized`, `dp`. `cap` limits n for
/// the plain recursive solver unless `force` is set.
#[pyfunction]
#[pyo3(signature = (matrix, solver="dp", cap=DEFAULT_RECURSION_CAP, force=false))]
fn solve(
    py: Python<'_>,
    matrix: &PyBinaryMatrix,
    solver: &str,
    cap: usize,
    force: bool,
) -> PyResult<PyMaxSquareResult> {
    let kind = parse_solver(solver)?;
    let m = &matrix.inner;
    let cap = (!force).then_some(cap);
    py.detach(|| solvers::solve(kind, m, cap))
        .map(|inner| PyMaxSquareResult { inner })
        .map_err(solve_err)
}

#[pyfunction]
fn verify_witness(matrix: &PyBinaryMatrix, result: &PyMaxSquareResult) -> PyResult<bool> {
    solvers::verify_witness(&matrix.inner, &result.inner).map_err(solve_err)
}

/// The DP lookup table without its zero padding: entry [i][j] is the side of
/// the largest all-ones square ending at (i, j).
#[pyfunction]
fn dp_table(matrix: &PyBinaryMatrix) -> Vec<Vec<u32>> {
    let t = solvers::dp_table(&matrix.inner);
    let n = t.n();
    (0..n).map(|i| (0..n).map(|j| t.entry(i, j)).collect()).collect()
}

#[pyfunction]
fn phi_base(lambda_: u64) -> PyResult<u128> {
    combinatorics::phi_base(lambda_).map_err(count_err)
}

#[pyfunction]
fn phi_recursive(m: u64, n: u64) -> PyResult<u128> {
    combinatorics::phi_recursive(m, n).map_err(count_err)
}

#[pyfunction]
fn phi_closed(m: u64, n: u64) -> PyResult<u128> {
    combinatorics::phi_closed(m, n).map_err(count_err)
}

#[pyfunction]
fn count_by_enumeration(m: u64, n: u64) -> PyResult<u128> {
    combinatorics::count_by_enumeration(m, n).map_err(count_err)
}

#[pyfunction]
fn square_count(n: u64) -> PyResult<u128> {
    bench::square_count(n).map_err(bench_err)
}

/// Exact number of calls the plain recursive solver makes on `matrix`.
#[pyfunction]
fn call_count_oracle(matrix: &PyBinaryMatrix) -> num_bigint::BigUint {
    bench::call_count_oracle(&matrix.inner)
}

#[pyclass(name = "BenchRecord", module = "pymaxstretch", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyBenchRecord {
    inner: bench::BenchRecord,
}

#[pymethods]
impl PyBenchRecord {
    #[getter]
    fn solver(&self) -> &'static str {
        self.inner.solver.as_str()
    }
    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }
    #[getter]
    fn density(&self) -> f64 {
        self.inner.density
    }
    #[getter]
    fn seed(&self) -> u64 {
        self.inner.seed
    }
    #[getter]
    fn reps(&self) -> u32 {
        self.inner.reps
    }
    #[getter]
    fn time_median_ns(&self) -> u64 {
        self.inner.time_median_ns
    }
    #[getter]
    fn time_min_ns(&self) -> u64 {
        self.inner.time_min_ns
    }
    /// Value of a CSV column such as `table_updates`; None when not applicable.
    fn metric(&self, name: &str) -> PyResult<Option<u64>> {
        let metric: Metric = name.parse().map_err(bench_err)?;
        Ok(metric.value(&self.inner))
    }

    fn __repr__(&self) -> String {
        format!(
            "BenchRecord(solver={}, n={}, time_median_ns={})",
            self.inner.solver, self.inner.n, self.inner.time_median_ns
        )
    }
}

/// Time each solver on one seeded instance per size. Records are ordered by
/// solver, then n.
#[pyfunction]
#[pyo3(signature = (solvers, sizes, kind="bernoulli", density=0.5, seed=1, planted_side=0, reps=11, cap=Some(DEFAULT_RECURSION_CAP)))]
#[allow(clippy::too_many_arguments)]
fn run_sweep(
    py: Python<'_>,
    solvers: Vec<String>,
    sizes: Vec<usize>,
    kind: &str,
    density: f64,
    seed: u64,
    planted_side: usize,
    reps: u32,
    cap: Option<usize>,
) -> PyResult<Vec<PyBenchRecord>> {
    let cfg = SweepConfig {
        solvers: solvers.iter().map(|s| parse_solver(s)).collect::<PyResult<_>>()?,
        sizes,
        template: GeneratorSpec { kind: parse_kind(kind)?, n: 0, density, planted_side, seed },
        reps,
        recursion_cap: cap,
    };
    let records = py.detach(|| bench::run_sweep(&cfg)).map_err(bench_err)?;
    Ok(records.into_iter().map(|inner| PyBenchRecord { inner }).collect())
}

/// Least-squares slope and r² of ln(metric) against ln(n) for one solver.
#[pyfunction]
fn fit_growth(records: Vec<PyBenchRecord>, metric: &str) -> PyResult<(f64, f64)> {
    let metric: Metric = metric.parse().map_err(bench_err)?;
    let rows: Vec<bench::BenchRecord> = records.into_iter().map(|r| r.inner).collect();
    let est = bench::fit_growth(&rows, metric).map_err(bench_err)?;
    Ok((est.slope, est.r_squared))
}

#[pyfunction]
fn emit_csv(records: Vec<PyBenchRecord>) -> PyResult<String> {
    let rows: Vec<bench::BenchRecord> = records.into_iter().map(|r| r.inner).collect();
    let mut buf = Vec::new();
    bench::emit_csv(&rows, &mut buf).map_err(bench_err)?;
    String::from_utf8(buf).map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pyfunction]
fn parse_csv(text: &str) -> PyResult<Vec<PyBenchRecord>> {
    let rows = bench::parse_csv(text.as_bytes()).map_err(bench_err)?;
    Ok(rows.into_iter().map(|inner| PyBenchRecord { inner }).collect())
}

#[pymodule]
pub fn pymaxstretch(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBinaryMatrix>()?;
    m.add_class::<PyMaxSquareResult>()?;
    m.add_class::<PyBenchRecord>()?;
    m.add("InstanceTooLargeError", m.py().get_type::<InstanceTooLargeError>())?;
    m.add("DEFAULT_RECURSION_CAP", DEFAULT_RECURSION_CAP)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(verify_witness, m)?)?;
    m.add_function(wrap_pyfunction!(dp_table, m)?)?;
    m.add_function(wrap_pyfunction!(phi_base, m)?)?;
    m.add_function(wrap_pyfunction!(phi_recursive, m)?)?;
    m.add_function(wrap_pyfunction!(phi_closed, m)?)?;
    m.add_function(wrap_pyfunction!(count_by_enumeration, m)?)?;
    m.add_function(wrap_pyfunction!(square_count, m)?)?;
    m.add_function(wrap_pyfunction!(call_count_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(run_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(fit_growth, m)?)?;
    m.add_function(wrap_pyfunction!(emit_csv, m)?)?;
    m.add_function(wrap_pyfunction!(parse_csv, m)?)?;
    Ok(())
}
