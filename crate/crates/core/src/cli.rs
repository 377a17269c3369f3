//! `maxstretch` command-line interface.
//!
//! Machine-readable output goes to stdout, diagnostics to stderr. Exit
//! codes: 0 ok, 1 I/O failure, 2 usage or invalid input, 3 recursion cap
//! exceeded, 4 internal mismatch between methods, 5 refuted claim.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand};

use crate::bench::{self, BenchError, SweepConfig, MAX_RELIABLE_CLOCK_NS};
use crate::combinatorics::{self, CountError, CountMethod};
use crate::matrix::{generate, parse_matrix, serialize_matrix, GeneratorKind, GeneratorSpec};
use crate::solvers::{
    check_witness, solve, solve_dp, MaxSquareResult, SolveError, SolverKind, Verdict,
    DEFAULT_RECURSION_CAP,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;
pub const EXIT_REFUTED: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "maxstretch", version, about = "Largest all-ones square submatrix: solvers, counting and benchmarks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a matrix in .bmat format
    Gen(GenArgs),
    /// Solve a .bmat matrix and print the result record
    Solve(SolveArgs),
    /// Count the submatrices of an m×n grid three ways
    Count(CountArgs),
    /// Check a claimed maximal square against a matrix
    Verify(VerifyArgs),
    /// Time solvers over a size sweep and write CSV
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct GeneratorArgs {
    #[arg(long, value_enum, default_value = "bernoulli")]
    pub kind: GeneratorKind,
    /// Probability of a 1 for bernoulli and planted instances
    #[arg(long, default_value_t = 0.5)]
    pub density: f64,
    /// Side of the all-ones block in planted instances
    #[arg(long, default_value_t = 0)]
    pub planted_side: usize,
    #[arg(long, env = "MAXSTRETCH_SEED", default_value_t = 1)]
    pub seed: u64,
}

impl GeneratorArgs {
    fn spec(&self, n: usize) -> GeneratorSpec {
        GeneratorSpec {
            kind: self.kind,
            n,
            density: self.density,
            planted_side: self.planted_side,
            seed: self.seed,
        }
    }
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub generator: GeneratorArgs,
    /// Output path, `-` for stdout
    #[arg(short, long, default_value = "-")]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct RecursionCapArgs {
    /// Largest n accepted by the plain recursive solver
    #[arg(long, default_value_t = DEFAULT_RECURSION_CAP)]
    pub cap: usize,
    /// Ignore the recursion cap. The call count grows roughly 5.6x per unit of n on dense input.
    #[arg(long)]
    pub force: bool,
}

impl RecursionCapArgs {
    fn cap(&self) -> Option<usize> {
        (!self.force).then_some(self.cap)
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Input .bmat path, `-` for stdin
    #[arg(short, long, default_value = "-")]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "dp")]
    pub solver: SolverKind,
    #[command(flatten)]
    pub cap: RecursionCapArgs,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[arg(long)]
    pub m: u64,
    #[arg(long)]
    pub n: u64,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("claim_source").required(true).args(["claim", "claim_file"])))]
pub struct VerifyArgs {
    /// Input .bmat path, `-` for stdin
    #[arg(short, long, default_value = "-")]
    pub input: PathBuf,
    /// Result record, e.g. "side=2 anchor=0,0"
    #[arg(long)]
    pub claim: Option<String>,
    /// File holding a result record as printed by `solve`, `-` for stdin
    #[arg(long)]
    pub claim_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum, value_delimiter = ',', default_value = "naive,recursive,dp")]
    pub solvers: Vec<SolverKind>,
    /// Strictly increasing side lengths
    #[arg(long, value_delimiter = ',', default_value = "8,10,12")]
    pub sizes: Vec<usize>,
    #[command(flatten)]
    pub generator: GeneratorArgs,
    #[arg(long, default_value_t = 11)]
    pub reps: u32,
    #[command(flatten)]
    pub cap: RecursionCapArgs,
    /// Output path, `-` for stdout
    #[arg(short, long, default_value = "-")]
    pub output: PathBuf,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::new(EXIT_IO, format!("I/O error: {e}"))
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        let code = match e {
            SolveError::InstanceTooLarge { .. } => EXIT_CAP,
            _ => EXIT_USAGE,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<BenchError> for Failure {
    fn from(e: BenchError) -> Self {
        match e {
            BenchError::Solve(inner) => inner.into(),
            BenchError::Write(io) => io.into(),
            BenchError::Disagreement { .. } | BenchError::NondeterministicCounters { .. } => {
                Failure::new(EXIT_MISMATCH, e.to_string())
            }
            other => Failure::new(EXIT_USAGE, other.to_string()),
        }
    }
}

/// Standard streams handed to a command; tests substitute buffers.
pub struct Io<'a> {
    pub stdin: &'a mut dyn Read,
    pub stdout: &'a mut dyn Write,
    pub stderr: &'a mut dyn Write,
}

impl Io<'_> {
    fn read_source(&mut self, path: &PathBuf) -> Result<String, Failure> {
        if path.as_os_str() == "-" {
            let mut s = String::new();
            self.stdin.read_to_string(&mut s)?;
            Ok(s)
        } else {
            fs::read_to_string(path)
                .map_err(|e| Failure::new(EXIT_IO, format!("cannot read {}: {e}", path.display())))
        }
    }

    fn write_sink(&mut self, path: &PathBuf, bytes: &[u8]) -> Result<(), Failure> {
        if path.as_os_str() == "-" {
            self.stdout.write_all(bytes)?;
            self.stdout.flush()?;
            Ok(())
        } else {
            fs::write(path, bytes)
                .map_err(|e| Failure::new(EXIT_IO, format!("cannot write {}: {e}", path.display())))
        }
    }
}

fn cmd_gen(args: &GenArgs, io: &mut Io<'_>) -> Result<(), Failure> {
    let m = generate(&args.generator.spec(args.n)).map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
    io.write_sink(&args.output, serialize_matrix(&m).as_bytes())
}

fn cmd_solve(args: &SolveArgs, io: &mut Io<'_>) -> Result<(), Failure> {
    let text = io.read_source(&args.input)?;
    let m = parse_matrix(&text).map_err(|e| Failure::new(EXIT_USAGE, format!("invalid matrix: {e}")))?;
    let result = solve(args.solver, &m, args.cap.cap())?;
    writeln!(io.stdout, "{}", solve_line(&result))?;
    Ok(())
}

/// The result record with `area=<m²>` inserted after `side`.
fn solve_line(result: &MaxSquareResult) -> String {
    let record = result.to_string();
    let rest = record.split_once(' ').map(|(_, rest)| format!(" {rest}")).unwrap_or_default();
    format!("side={} area={}{rest}", result.side, result.area())
}

fn cmd_count(args: &CountArgs, io: &mut Io<'_>) -> Result<(), Failure> {
    let results = combinatorics::count_all(args.m, args.n)
        .map_err(|e: CountError| Failure::new(EXIT_USAGE, format!("m={} n={}: {e}", args.m, args.n)))?;
    for r in &results {
        writeln!(io.stdout, "{}={}", r.method, r.value)?;
    }
    if !results.iter().any(|r| r.method == CountMethod::Enumeration) {
        writeln!(io.stdout, "enumeration=skipped")?;
        writeln!(
            io.stderr,
            "enumeration skipped: {}x{} exceeds {} cells",
            args.m,
            args.n,
            combinatorics::ENUMERATION_LIMIT
        )?;
    }
    let first = results[0].value;
    if results.iter().any(|r| r.value != first) {
        writeln!(io.stdout, "status=mismatch")?;
        return Err(Failure::new(EXIT_MISMATCH, "counting methods disagree"));
    }
    writeln!(io.stdout, "status=agree")?;
    Ok(())
}

fn cmd_verify(args: &VerifyArgs, io: &mut Io<'_>) -> Result<(), Failure> {
    if args.input.as_os_str() == "-" && args.claim_file.as_ref().is_some_and(|p| p.as_os_str() == "-") {
        return Err(Failure::new(EXIT_USAGE, "matrix and claim cannot both come from stdin"));
    }
    let text = io.read_source(&args.input)?;
    let m = parse_matrix(&text).map_err(|e| Failure::new(EXIT_USAGE, format!("invalid matrix: {e}")))?;
    let claim_text = match (&args.claim, &args.claim_file) {
        (Some(c), _) => c.clone(),
        (None, Some(path)) => io.read_source(path)?,
        (None, None) => unreachable!("clap requires one claim source"),
    };
    let claim_line = claim_text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
    let claim: MaxSquareResult =
        claim_line.parse().map_err(|e: SolveError| Failure::new(EXIT_USAGE, e.to_string()))?;

    let verdict = match check_witness(&m, &claim) {
        Ok(v) => v,
        Err(e @ SolveError::AnchorOutOfBounds { .. }) => {
            writeln!(io.stdout, "refuted reason=anchor-out-of-bounds")?;
            return Err(Failure::new(EXIT_REFUTED, e.to_string()));
        }
        Err(e) => return Err(e.into()),
    };
    let dp_side = solve_dp(&m).side;
    if verdict.is_confirmed() != (dp_side == claim.side) {
        return Err(Failure::new(
            EXIT_MISMATCH,
            format!("exhaustive check ({verdict:?}) disagrees with DP side {dp_side}"),
        ));
    }
    match verdict {
        Verdict::Confirmed => {
            writeln!(io.stdout, "confirmed side={}", claim.side)?;
            Ok(())
        }
        Verdict::ZeroInBlock { row, col } => {
            writeln!(io.stdout, "refuted reason=zero-in-block counterexample={row},{col}")?;
            Err(Failure::new(EXIT_REFUTED, format!("claimed block has a 0 at ({row},{col})")))
        }
        Verdict::LargerSquare { row, col, side } => {
            writeln!(io.stdout, "refuted reason=larger-square counterexample={row},{col} side={side}")?;
            Err(Failure::new(
                EXIT_REFUTED,
                format!("an all-ones square of side {side} exists at ({row},{col})"),
            ))
        }
        Verdict::MissingAnchor => {
            writeln!(io.stdout, "refuted reason=missing-anchor")?;
            Err(Failure::new(EXIT_REFUTED, "positive side claimed without an anchor"))
        }
    }
}

fn cmd_bench(args: &BenchArgs, io: &mut Io<'_>) -> Result<(), Failure> {
    let resolution = bench::clock_resolution();
    let resolution_ns = u64::try_from(resolution.as_nanos()).unwrap_or(u64::MAX);
    let reliable = resolution_ns <= MAX_RELIABLE_CLOCK_NS;
    if !reliable {
        writeln!(io.stderr, "warning: clock resolution {resolution_ns} ns; timings are unreliable")?;
    }

    let cfg = SweepConfig {
        solvers: args.solvers.clone(),
        sizes: args.sizes.clone(),
        template: args.generator.spec(0),
        reps: args.reps,
        recursion_cap: args.cap.cap(),
    };
    let records = bench::run_sweep(&cfg)?;
    let slopes = bench::fit_all(&records);

    let mut out = Vec::new();
    bench::emit_csv(&records, &mut out)?;
    bench::emit_slopes(&slopes, &mut out)?;
    writeln!(
        out,
        "#clock,{resolution_ns},{}",
        if reliable { "reliable" } else { "unreliable" }
    )?;
    io.write_sink(&args.output, &out)?;
    for s in &slopes {
        writeln!(io.stderr, "{} {}: slope {:.4} (r² {:.4})", s.solver, s.metric, s.slope, s.r_squared)?;
    }
    Ok(())
}

/// Parses `args` (including the program name) and runs one subcommand.
pub fn run<I, T>(args: I, io: &mut Io<'_>) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(io.stderr, "{rendered}")
            } else {
                write!(io.stdout, "{rendered}")
            };
            return code;
        }
    };
    let outcome = match &cli.command {
        Command::Gen(a) => cmd_gen(a, io),
        Command::Solve(a) => cmd_solve(a, io),
        Command::Count(a) => cmd_count(a, io),
        Command::Verify(a) => cmd_verify(a, io),
        Command::Bench(a) => cmd_bench(a, io),
    };
    match outcome {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(io.stderr, "error: {}", f.message);
            f.code
        }
    }
}

pub fn main() -> i32 {
    let stdin = io::stdin();
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut io = Io {
        stdin: &mut stdin.lock(),
        stdout: &mut stdout.lock(),
        stderr: &mut stderr.lock(),
    };
    run(std::env::args_os(), &mut io)
}
