use super::{MaxSquareResult, OpCounters};
use crate::matrix::BinaryMatrix;

/// Bottom-up lookup table of size (n+1)×(n+1), zero-initialised. Matrix
/// cell (i, j) lives at padded position (i+1, j+1), so the first padded row
/// and column stay 0 and the update never reads outside the table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpTable {
    width: usize,
    entries: Vec<u32>,
}

impl DpTable {
    fn zeroed(n: usize) -> Self {
        let width = n + 1;
        Self { width, entries: vec![0; width * width] }
    }

    /// Side of the largest all-ones square whose bottom-right corner is
    /// matrix cell (row, col).
    pub fn entry(&self, row: usize, col: usize) -> u32 {
        self.padded(row + 1, col + 1)
    }

    /// Raw access in padded coordinates, `0..=n` on both axes.
    pub fn padded(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.width + j]
    }

    pub fn n(&self) -> usize {
        self.width - 1
    }
}

struct Filled {
    table: DpTable,
    counters: OpCounters,
    best: u32,
    best_end: Option<(usize, usize)>,
}

fn fill(m: &BinaryMatrix) -> Filled {
    let n = m.n();
    let mut table = DpTable::zeroed(n);
    let w = table.width;
    let mut cells: u64 = 0;
    let mut updates: u64 = 0;
    let mut best = 0u32;
    let mut best_end = None;

    for i in 1..=n {
        for j in 1..=n {
            cells += 1;
            let value = if m.is_one(i - 1, j - 1) {
                let t = &table.entries;
                t[(i - 1) * w + j].min(t[i * w + j - 1]).min(t[(i - 1) * w + j - 1]) + 1
            } else {
                0
            };
            table.entries[i * w + j] = value;
            updates += 1;
            if value > best {
                best = value;
                best_end = Some((i - 1, j - 1));
            }
        }
    }

    let counters = OpCounters {
        cells_inspected: Some(cells),
        table_updates: Some(updates),
        ..Default::default()
    };
    Filled { table, counters, best, best_end }
}

pub fn dp_table(m: &BinaryMatrix) -> DpTable {
    fill(m).table
}

/// Row-major dynamic programme over the padded table. Each entry is
/// `min(up, left, up-left) + 1` on a 1 cell and 0 otherwise; the answer is
/// the largest entry. `table_updates` is exactly n².
pub fn solve_dp(m: &BinaryMatrix) -> MaxSquareResult {
    let Filled { counters, best, best_end, .. } = fill(m);
    let side = best as usize;
    // bottom-right corner -> top-left corner
    let anchor = best_end.map(|(r, c)| (r + 1 - side, c + 1 - side));
    MaxSquareResult { side, anchor, counters }
}
