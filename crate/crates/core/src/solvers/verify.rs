use super::{MaxSquareResult, SolveError};
use crate::matrix::BinaryMatrix;

/// Outcome of checking a claimed maximal square.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Confirmed,
    /// The claimed block contains a 0 at this cell.
    ZeroInBlock { row: usize, col: usize },
    /// An all-ones square of side `side` (one more than claimed) exists
    /// with this top-left corner.
    LargerSquare { row: usize, col: usize, side: usize },
    /// A positive side was claimed without an anchor.
    MissingAnchor,
}

impl Verdict {
    pub fn is_confirmed(&self) -> bool {
        matches!(self, Verdict::Confirmed)
    }

    /// The cell that refutes the claim, if any.
    pub fn counterexample(&self) -> Option<(usize, usize)> {
        match *self {
            Verdict::ZeroInBlock { row, col } | Verdict::LargerSquare { row, col, .. } => {
                Some((row, col))
            }
            Verdict::Confirmed | Verdict::MissingAnchor => None,
        }
    }
}

/// Top-left corner of the first all-ones `side`×`side` block in row-major
/// order, found by testing every placement.
pub fn largest_square_exhaustive(m: &BinaryMatrix, side: usize) -> Option<(usize, usize)> {
    let n = m.n();
    if side == 0 || side > n {
        return None;
    }
    for top in 0..=n - side {
        for left in 0..=n - side {
            if (top..top + side).all(|r| (left..left + side).all(|c| m.is_one(r, c))) {
                return Some((top, left));
            }
        }
    }
    None
}

/// Checks that the claimed block is all ones and that no all-ones square
/// one larger exists anywhere in `m`.
pub fn check_witness(m: &BinaryMatrix, result: &MaxSquareResult) -> Result<Verdict, SolveError> {
    let n = m.n();
    let side = result.side;
    if side > 0 {
        let Some((row, col)) = result.anchor else {
            return Ok(Verdict::MissingAnchor);
        };
        if row + side > n || col + side > n {
            return Err(SolveError::AnchorOutOfBounds { row, col, side, n });
        }
        for r in row..row + side {
            for c in col..col + side {
                if !m.is_one(r, c) {
                    return Ok(Verdict::ZeroInBlock { row: r, col: c });
                }
            }
        }
    } else if let Some((row, col)) = result.anchor {
        if row >= n || col >= n {
            return Err(SolveError::AnchorOutOfBounds { row, col, side, n });
        }
    }
    match largest_square_exhaustive(m, side + 1) {
        Some((row, col)) => Ok(Verdict::LargerSquare { row, col, side: side + 1 }),
        None => Ok(Verdict::Confirmed),
    }
}

/// True iff `result` names a genuine all-ones square that no larger square
/// beats.
pub fn verify_witness(m: &BinaryMatrix, result: &MaxSquareResult) -> Result<bool, SolveError> {
    check_witness(m, result).map(|v| v.is_confirmed())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{generate, GeneratorKind, GeneratorSpec};
    use crate::solvers::solve_dp;

    fn identity3() -> BinaryMatrix {
        generate(&GeneratorSpec::new(GeneratorKind::Identity, 3)).unwrap()
    }

    #[test]
    fn identity_claims() {
        let m = identity3();
        assert!(verify_witness(&m, &MaxSquareResult::claim(1, Some((0, 0)))).unwrap());
        assert!(!verify_witness(&m, &MaxSquareResult::claim(2, Some((0, 0)))).unwrap());
        assert_eq!(
            check_witness(&m, &MaxSquareResult::claim(2, Some((0, 0)))).unwrap(),
            Verdict::ZeroInBlock { row: 0, col: 1 }
        );
    }

    #[test]
    fn understated_claims_are_refuted() {
        let m = identity3();
        assert_eq!(
            check_witness(&m, &MaxSquareResult::claim(0, None)).unwrap(),
            Verdict::LargerSquare { row: 0, col: 0, side: 1 }
        );
        let ones = generate(&GeneratorSpec::new(GeneratorKind::AllOnes, 3)).unwrap();
        assert_eq!(
            check_witness(&ones, &MaxSquareResult::claim(2, Some((1, 1)))).unwrap(),
            Verdict::LargerSquare { row: 0, col: 0, side: 3 }
        );
    }

    #[test]
    fn zero_claim_on_zero_matrix() {
        let m = generate(&GeneratorSpec::new(GeneratorKind::AllZeros, 4)).unwrap();
        assert!(verify_witness(&m, &MaxSquareResult::claim(0, None)).unwrap());
        assert!(verify_witness(&BinaryMatrix::empty(), &MaxSquareResult::claim(0, None)).unwrap());
    }

    #[test]
    fn out_of_bounds_anchor() {
        let m = identity3();
        assert!(matches!(
            check_witness(&m, &MaxSquareResult::claim(2, Some((2, 0)))),
            Err(SolveError::AnchorOutOfBounds { .. })
        ));
        assert!(matches!(
            check_witness(&m, &MaxSquareResult::claim(4, Some((0, 0)))),
            Err(SolveError::AnchorOutOfBounds { .. })
        ));
        assert_eq!(
            check_witness(&m, &MaxSquareResult::claim(1, None)).unwrap(),
            Verdict::MissingAnchor
        );
    }

    #[test]
    fn planted_dp_output_verifies() {
        let m = generate(&GeneratorSpec::planted(16, 0.3, 5, 42)).unwrap();
        let r = solve_dp(&m);
        assert!(r.side >= 5);
        assert!(verify_witness(&m, &r).unwrap());
    }
}
