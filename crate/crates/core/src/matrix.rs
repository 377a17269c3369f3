//! Binary square matrices: construction, the `.bmat` text format, and
//! seeded instance generation.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("empty input")]
    EmptyInput,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("illegal character {found:?} at line {line}")]
    IllegalCharacter { line: usize, found: char },
    #[error("missing trailing newline")]
    MissingTrailingNewline,
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
}

/// An immutable n×n grid of 0/1 entries stored row-major, one byte per cell.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    n: usize,
    cells: Vec<u8>,
}

impl BinaryMatrix {
    pub fn empty() -> Self {
        Self { n: 0, cells: Vec::new() }
    }

    /// Builds a matrix from row-major cells. Fails unless `cells.len() == n²`
    /// and every entry is 0 or 1.
    pub fn from_cells(n: usize, cells: Vec<u8>) -> Result<Self, MatrixError> {
        if cells.len() != n * n {
            return Err(MatrixError::DimensionMismatch(format!(
                "expected {} cells for n={n}, got {}",
                n * n,
                cells.len()
            )));
        }
        if let Some(pos) = cells.iter().position(|&c| c > 1) {
            return Err(MatrixError::IllegalCharacter {
                line: pos / n + 2,
                found: char::from_digit(u32::from(cells[pos]) % 10, 10).unwrap_or('?'),
            });
        }
        Ok(Self { n, cells })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut cells = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                cells.push(u8::from(f(r, c)));
            }
        }
        Self { n, cells }
    }

    /// Parses rows written as strings of `0`/`1`, e.g. `["1101", "1111"]`.
    pub fn from_rows<S: AsRef<str>>(rows: &[S]) -> Result<Self, MatrixError> {
        let mut text = format!("{}\n", rows.len());
        for row in rows {
            text.push_str(row.as_ref());
            text.push('\n');
        }
        parse_matrix(&text)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.cells[row * self.n + col]
    }

    #[inline]
    pub fn is_one(&self, row: usize, col: usize) -> bool {
        self.get(row, col) == 1
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    pub fn count_ones(&self) -> usize {
        self.cells.iter().filter(|&&c| c == 1).count()
    }

    /// Returns a copy with cell (row, col) set to `value`.
    pub fn with_cell(&self, row: usize, col: usize, value: bool) -> Self {
        let mut cells = self.cells.clone();
        cells[row * self.n + col] = u8::from(value);
        Self { n: self.n, cells }
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u8]> {
        // chunks(0) panics, so the empty matrix yields no rows explicitly.
        self.cells.chunks(self.n.max(1)).take(self.n)
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryMatrix(n={}", self.n)?;
        for row in self.rows() {
            f.write_str(", ")?;
            for &c in row {
                write!(f, "{c}")?;
            }
        }
        f.write_str(")")
    }
}

impl fmt::Display for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_matrix(self))
    }
}

impl FromStr for BinaryMatrix {
    type Err = MatrixError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_matrix(s)
    }
}

/// Parses the `.bmat` text format: a decimal side length `n` on the first
/// line followed by `n` rows of `n` binary digits. Single spaces between
/// digits are accepted. Every line, including the last, must end in `\n`.
pub fn parse_matrix(text: &str) -> Result<BinaryMatrix, MatrixError> {
    if text.is_empty() {
        return Err(MatrixError::EmptyInput);
    }
    if !text.ends_with('\n') {
        return Err(MatrixError::MissingTrailingNewline);
    }
    let mut lines = text[..text.len() - 1].split('\n');
    let header = lines.next().ok_or(MatrixError::EmptyInput)?;
    if header.is_empty() {
        return Err(MatrixError::EmptyInput);
    }
    if let Some(bad) = header.chars().find(|c| !c.is_ascii_digit()) {
        return Err(MatrixError::IllegalCharacter { line: 1, found: bad });
    }
    let n: usize = header
        .parse()
        .map_err(|_| MatrixError::DimensionMismatch(format!("side length {header} is too large")))?;

    let rows: Vec<&str> = lines.collect();
    if n == 0 {
        if rows.is_empty() {
            return Ok(BinaryMatrix::empty());
        }
        return Err(MatrixError::DimensionMismatch(format!(
            "declared n=0 but found {} row(s)",
            rows.len()
        )));
    }
    if rows.len() != n {
        return Err(MatrixError::DimensionMismatch(format!(
            "declared n={n} but found {} row(s)",
            rows.len()
        )));
    }

    let mut cells = Vec::with_capacity(n * n);
    for (idx, row) in rows.iter().enumerate() {
        let line = idx + 2;
        let start = cells.len();
        parse_row(row, line, &mut cells)?;
        let width = cells.len() - start;
        if width != n {
            return Err(MatrixError::DimensionMismatch(format!(
                "line {line} has {width} entries, expected {n}"
            )));
        }
    }
    Ok(BinaryMatrix { n, cells })
}

fn parse_row(row: &str, line: usize, out: &mut Vec<u8>) -> Result<(), MatrixError> {
    let bytes = row.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'0' | b'1' => out.push(b - b'0'),
            // a space is only legal as a single separator between two digits
            b' ' if i > 0
                && i + 1 < bytes.len()
                && bytes[i - 1] != b' '
                && bytes[i + 1] != b' ' => {}
            _ => {
                let found = row[i..].chars().next().unwrap_or(' ');
                return Err(MatrixError::IllegalCharacter { line, found });
            }
        }
    }
    Ok(())
}

/// Writes the canonical `.bmat` form (no separators).
pub fn serialize_matrix(m: &BinaryMatrix) -> String {
    let mut out = String::with_capacity(m.n * (m.n + 1) + 8);
    out.push_str(&m.n.to_string());
    out.push('\n');
    for row in m.rows() {
        out.extend(row.iter().map(|&c| if c == 1 { '1' } else { '0' }));
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum GeneratorKind {
    AllOnes,
    AllZeros,
    Identity,
    Bernoulli,
    Planted,
}

impl GeneratorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GeneratorKind::AllOnes => "all-ones",
            GeneratorKind::AllZeros => "all-zeros",
            GeneratorKind::Identity => "identity",
            GeneratorKind::Bernoulli => "bernoulli",
            GeneratorKind::Planted => "planted",
        }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GeneratorKind {
    type Err = MatrixError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all-ones" => Ok(GeneratorKind::AllOnes),
            "all-zeros" => Ok(GeneratorKind::AllZeros),
            "identity" => Ok(GeneratorKind::Identity),
            "bernoulli" => Ok(GeneratorKind::Bernoulli),
            "planted" => Ok(GeneratorKind::Planted),
            other => Err(MatrixError::InvalidSpec(format!("unknown generator kind {other:?}"))),
        }
    }
}

/// Recipe for a test or benchmark instance. `density` is read by the
/// bernoulli and planted kinds, `planted_side` by planted only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub n: usize,
    pub density: f64,
    pub planted_side: usize,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind, n: usize) -> Self {
        Self { kind, n, density: 0.5, planted_side: 0, seed: 0 }
    }

    pub fn bernoulli(n: usize, density: f64, seed: u64) -> Self {
        Self { kind: GeneratorKind::Bernoulli, n, density, planted_side: 0, seed }
    }

    pub fn planted(n: usize, density: f64, planted_side: usize, seed: u64) -> Self {
        Self { kind: GeneratorKind::Planted, n, density, planted_side, seed }
    }

    pub fn with_n(self, n: usize) -> Self {
        Self { n, ..self }
    }

    pub fn validate(&self) -> Result<(), MatrixError> {
        if !(0.0..=1.0).contains(&self.density) {
            return Err(MatrixError::InvalidSpec(format!(
                "density {} is outside [0, 1]",
                self.density
            )));
        }
        if self.planted_side > self.n {
            return Err(MatrixError::InvalidSpec(format!(
                "planted side {} exceeds n={}",
                self.planted_side, self.n
            )));
        }
        Ok(())
    }

    /// Expected fraction of ones for the kind: the density for random kinds,
    /// 1 for all-ones, 0 for all-zeros and 1/n for identity.
    pub fn nominal_density(&self) -> f64 {
        match self.kind {
            GeneratorKind::AllOnes => 1.0,
            GeneratorKind::AllZeros => 0.0,
            GeneratorKind::Identity if self.n == 0 => 0.0,
            GeneratorKind::Identity => 1.0 / self.n as f64,
            GeneratorKind::Bernoulli | GeneratorKind::Planted => self.density,
        }
    }
}

/// Builds the matrix described by `spec`. Random kinds draw from ChaCha8
/// seeded with `spec.seed`, so output is identical across platforms.
pub fn generate(spec: &GeneratorSpec) -> Result<BinaryMatrix, MatrixError> {
    spec.validate()?;
    let n = spec.n;
    let m = match spec.kind {
        GeneratorKind::AllOnes => BinaryMatrix::from_fn(n, |_, _| true),
        GeneratorKind::AllZeros => BinaryMatrix::from_fn(n, |_, _| false),
        GeneratorKind::Identity => BinaryMatrix::from_fn(n, |r, c| r == c),
        GeneratorKind::Bernoulli => {
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            bernoulli_fill(n, spec.density, &mut rng)
        }
        GeneratorKind::Planted => {
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            let mut m = bernoulli_fill(n, spec.density, &mut rng);
            let side = spec.planted_side;
            if side > 0 {
                let top = rng.random_range(0..=n - side);
                let left = rng.random_range(0..=n - side);
                for r in top..top + side {
                    for c in left..left + side {
                        m.cells[r * n + c] = 1;
                    }
                }
            }
            m
        }
    };
    Ok(m)
}

fn bernoulli_fill(n: usize, density: f64, rng: &mut ChaCha8Rng) -> BinaryMatrix {
    BinaryMatrix::from_fn(n, |_, _| rng.random::<f64>() < density)
}
