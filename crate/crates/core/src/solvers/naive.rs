use super::{MaxSquareResult, OpCounters};
use crate::matrix::BinaryMatrix;

/// Enumerates every square submatrix by (top, left, side) and checks it cell
/// by cell in row-major order, abandoning a candidate at its first 0.
///
/// Every candidate is counted in `submatrices_enumerated`, so on an all-ones
/// matrix the count is Σₖ (n − k + 1)². The first maximal square in
/// row-major (top, left) order is the witness.
pub fn solve_naive(m: &BinaryMatrix) -> MaxSquareResult {
    let n = m.n();
    let mut cells: u64 = 0;
    let mut subs: u64 = 0;
    let mut best = 0;
    let mut anchor = None;

    for top in 0..n {
        for left in 0..n {
            for side in 1..=n - top.max(left) {
                subs += 1;
                if all_ones(m, top, left, side, &mut cells) && side > best {
                    best = side;
                    anchor = Some((top, left));
                }
            }
        }
    }

    MaxSquareResult {
        side: best,
        anchor,
        counters: OpCounters {
            cells_inspected: Some(cells),
            submatrices_enumerated: Some(subs),
            ..Default::default()
        },
    }
}

fn all_ones(m: &BinaryMatrix, top: usize, left: usize, side: usize, cells: &mut u64) -> bool {
    for r in top..top + side {
        for c in left..left + side {
            *cells += 1;
            if !m.is_one(r, c) {
                return false;
            }
        }
    }
    true
}
