use super::{MaxSquareResult, OpCounters, SolveError};
use crate::matrix::BinaryMatrix;

/// Largest `n` the plain recursive solver accepts unless the cap is lifted.
/// All-ones at n = 14 already costs about 3.3·10¹⁰ calls.
pub const DEFAULT_RECURSION_CAP: usize = 14;

/// Plain recursion on the top-left square size
///
/// ```text
/// psi(i, j) = 0                                                  if out of range or cell is 0
/// psi(i, j) = 1 + min(psi(i+1, j), psi(i, j+1), psi(i+1, j+1))  otherwise
/// ```
///
/// evaluated from scratch at every position with no caching. All three
/// children are always evaluated. Out-of-range invocations count as calls.
pub fn solve_recursive(m: &BinaryMatrix, cap: Option<usize>) -> Result<MaxSquareResult, SolveError> {
    if let Some(cap) = cap {
        if m.n() > cap {
            return Err(SolveError::InstanceTooLarge { n: m.n(), cap });
        }
    }
    let mut eval = Plain { m, n: m.n(), calls: 0, cells: 0 };
    let (side, anchor) = best_over_positions(m.n(), |i, j| eval.psi(i, j));
    Ok(MaxSquareResult {
        side,
        anchor,
        counters: OpCounters {
            cells_inspected: Some(eval.cells),
            recursive_calls: Some(eval.calls),
            ..Default::default()
        },
    })
}

/// Same recurrence with every position's value cached on first computation.
/// `recursive_calls` is the total number of invocations; each one is either
/// a cache hit or a cache miss. Out-of-range positions are cached too, so
/// misses never exceed (n+1)².
pub fn solve_memoized(m: &BinaryMatrix) -> MaxSquareResult {
    let n = m.n();
    let mut eval = Memo {
        m,
        n,
        memo: vec![None; (n + 1) * (n + 1)],
        stack: Vec::new(),
        hits: 0,
        misses: 0,
        cells: 0,
    };
    let (side, anchor) = best_over_positions(n, |i, j| eval.psi(i, j));
    MaxSquareResult {
        side,
        anchor,
        counters: OpCounters {
            cells_inspected: Some(eval.cells),
            recursive_calls: Some(eval.hits + eval.misses),
            cache_hits: Some(eval.hits),
            cache_misses: Some(eval.misses),
            ..Default::default()
        },
    }
}

/// Row-major scan keeping the first position that attains the maximum.
fn best_over_positions(
    n: usize,
    mut psi: impl FnMut(usize, usize) -> u32,
) -> (usize, Option<(usize, usize)>) {
    let mut best = 0;
    let mut anchor = None;
    for i in 0..n {
        for j in 0..n {
            let v = psi(i, j) as usize;
            if v > best {
                best = v;
                anchor = Some((i, j));
            }
        }
    }
    (best, anchor)
}

struct Plain<'a> {
    m: &'a BinaryMatrix,
    n: usize,
    calls: u64,
    cells: u64,
}

impl Plain<'_> {
    fn psi(&mut self, i: usize, j: usize) -> u32 {
        self.calls += 1;
        if i >= self.n || j >= self.n {
            return 0;
        }
        self.cells += 1;
        if !self.m.is_one(i, j) {
            return 0;
        }
        let down = self.psi(i + 1, j);
        let right = self.psi(i, j + 1);
        let diag = self.psi(i + 1, j + 1);
        1 + down.min(right).min(diag)
    }
}

struct Frame {
    i: usize,
    j: usize,
    next_child: u8,
    min: u32,
}

/// The memoized evaluator drives the recursion with an explicit stack so
/// that large `n` cannot exhaust the thread stack. Invocation order and
/// counting are the same as a direct recursive implementation.
struct Memo<'a> {
    m: &'a BinaryMatrix,
    n: usize,
    memo: Vec<Option<u32>>,
    stack: Vec<Frame>,
    hits: u64,
    misses: u64,
    cells: u64,
}

impl Memo<'_> {
    /// Registers one invocation of psi(i, j). Returns the value when it is
    /// known without recursing, or `None` when the children must be
    /// evaluated first.
    fn enter(&mut self, i: usize, j: usize) -> Option<u32> {
        let slot = i * (self.n + 1) + j;
        if let Some(v) = self.memo[slot] {
            self.hits += 1;
            return Some(v);
        }
        self.misses += 1;
        if i >= self.n || j >= self.n {
            self.memo[slot] = Some(0);
            return Some(0);
        }
        self.cells += 1;
        if !self.m.is_one(i, j) {
            self.memo[slot] = Some(0);
            return Some(0);
        }
        None
    }

    fn psi(&mut self, i: usize, j: usize) -> u32 {
        if let Some(v) = self.enter(i, j) {
            return v;
        }
        self.stack.push(Frame { i, j, next_child: 0, min: u32::MAX });
        let mut returned: Option<u32> = None;
        loop {
            let top = self.stack.last_mut().expect("frame stack is non-empty");
            if let Some(v) = returned.take() {
                top.min = top.min.min(v);
            }
            let (ci, cj) = match top.next_child {
                0 => (top.i + 1, top.j),
                1 => (top.i, top.j + 1),
                2 => (top.i + 1, top.j + 1),
                _ => {
                    let value = top.min + 1;
                    let slot = top.i * (self.n + 1) + top.j;
                    self.memo[slot] = Some(value);
                    self.stack.pop();
                    if self.stack.is_empty() {
                        return value;
                    }
                    returned = Some(value);
                    continue;
                }
            };
            top.next_child += 1;
            match self.enter(ci, cj) {
                Some(v) => returned = Some(v),
                None => self.stack.push(Frame { i: ci, j: cj, next_child: 0, min: u32::MAX }),
            }
        }
    }
}
