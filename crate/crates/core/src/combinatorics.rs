//! Counting contiguous rectangular submatrices of an m×n grid.
//!
//! The count φ(m, n) is evaluated three ways: through its first-order
//! recurrence in `n`, through the product closed form, and by direct
//! enumeration. All arithmetic is exact `u128` with overflow detection.

use std::fmt;

use thiserror::Error;

/// Upper bound on `m * n` for [`count_by_enumeration`].
pub const ENUMERATION_LIMIT: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("count overflows 128 bits")]
    Overflow,
    #[error("instance too large to enumerate: {m}x{n} exceeds {limit} cells")]
    TooLarge { m: u64, n: u64, limit: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CountMethod {
    Recursive,
    ClosedForm,
    Enumeration,
}

impl fmt::Display for CountMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CountMethod::Recursive => "recursive",
            CountMethod::ClosedForm => "closed-form",
            CountMethod::Enumeration => "enumeration",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountResult {
    pub value: u128,
    pub method: CountMethod,
}

fn triangular(k: u64) -> u128 {
    let k = u128::from(k);
    // k * (k + 1) < 2^128 for every u64 k
    k * (k + 1) / 2
}

fn positive(name: &str, v: u64) -> Result<(), CountError> {
    if v < 1 {
        return Err(CountError::Domain(format!("{name} must be at least 1, got {v}")));
    }
    Ok(())
}

/// φ(1, λ) = φ(λ, 1) = 1 + 2 + … + λ.
pub fn phi_base(lambda: u64) -> Result<u128, CountError> {
    positive("lambda", lambda)?;
    Ok(triangular(lambda))
}

/// Evaluates φ(m, n) = φ(m, n − 1) + n·(1 + … + m), bottoming out at
/// φ(m, 1) = 1 + … + m.
///
/// The recurrence is unrolled from the base upward so large `n` does not
/// grow the call stack.
pub fn phi_recursive(m: u64, n: u64) -> Result<u128, CountError> {
    positive("m", m)?;
    positive("n", n)?;
    let row_sum = phi_base(m)?;
    let mut acc = row_sum;
    for k in 2..=n {
        let step = u128::from(k).checked_mul(row_sum).ok_or(CountError::Overflow)?;
        acc = acc.checked_add(step).ok_or(CountError::Overflow)?;
    }
    Ok(acc)
}

/// φ(m, n) = (1 + … + n)(1 + … + m).
pub fn phi_closed(m: u64, n: u64) -> Result<u128, CountError> {
    positive("m", m)?;
    positive("n", n)?;
    triangular(n)
        .checked_mul(triangular(m))
        .ok_or(CountError::Overflow)
}

/// Counts submatrices of an m×n grid by visiting every
/// (top, left, height, width) with the block inside the grid.
pub fn count_by_enumeration(m: u64, n: u64) -> Result<u128, CountError> {
    positive("m", m)?;
    positive("n", n)?;
    if m.saturating_mul(n) > ENUMERATION_LIMIT {
        return Err(CountError::TooLarge { m, n, limit: ENUMERATION_LIMIT });
    }
    let mut count: u128 = 0;
    for top in 0..m {
        for left in 0..n {
            for _height in 1..=m - top {
                for _width in 1..=n - left {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

/// Runs every method that applies to (m, n). Enumeration is skipped when
/// the grid exceeds [`ENUMERATION_LIMIT`].
pub fn count_all(m: u64, n: u64) -> Result<Vec<CountResult>, CountError> {
    let mut out = vec![
        CountResult { value: phi_recursive(m, n)?, method: CountMethod::Recursive },
        CountResult { value: phi_closed(m, n)?, method: CountMethod::ClosedForm },
    ];
    match count_by_enumeration(m, n) {
        Ok(value) => out.push(CountResult { value, method: CountMethod::Enumeration }),
        Err(CountError::TooLarge { .. }) => {}
        Err(e) => return Err(e),
    }
    Ok(out)
}
