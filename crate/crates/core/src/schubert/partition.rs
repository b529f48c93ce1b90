use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Integer partition: a weakly decreasing list of positive parts.
///
/// Partitions are ordered first by size, then lexicographically *decreasing*
/// on their zero-padded part lists, so `(2) < (1,1)` and
/// `(3) < (2,1) < (1,1,1)`. Every serialisation uses this order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Trailing zero parts are dropped; anything else that is not weakly
    /// decreasing is rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::Argument(format!("{parts:?} is not a partition")));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn fits_box(&self, rows: usize, cols: u32) -> bool {
        self.len() <= rows && self.part(0) <= cols
    }

    /// Complement inside a `rows x cols` box (rotated by 180 degrees).
    pub fn complement(&self, rows: usize, cols: u32) -> Option<Partition> {
        if !self.fits_box(rows, cols) {
            return None;
        }
        let parts = (0..rows).rev().map(|i| cols - self.part(i)).collect();
        Some(Partition::new(parts).expect("complement is a partition"))
    }

    /// Multiplicities `[m_1, ..., m_max]` of parts `1..=max`.
    pub fn multiplicities(&self, max: u32) -> Vec<u32> {
        let mut m = vec![0; max as usize];
        for &p in &self.0 {
            m[p as usize - 1] += 1;
        }
        m
    }

    /// Inverse of [`Partition::multiplicities`].
    pub fn from_multiplicities(mult: &[u32]) -> Partition {
        let mut parts = Vec::new();
        for (i, &m) in mult.iter().enumerate().rev() {
            parts.extend(std::iter::repeat_n(i as u32 + 1, m as usize));
        }
        Partition(parts)
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size().cmp(&other.size()).then_with(|| {
            let n = self.len().max(other.len());
            (0..n)
                .map(|i| other.part(i).cmp(&self.part(i)))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Partitions of `n` with at most `rows` parts, each at most `cols`, in
/// canonical order.
pub fn partitions_in_box(n: u32, rows: usize, cols: u32) -> Vec<Partition> {
    fn rec(left: u32, max: u32, rows_left: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if left == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if rows_left == 0 {
            return;
        }
        for p in (1..=max.min(left)).rev() {
            cur.push(p);
            rec(left - p, p, rows_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, cols, rows, &mut Vec::new(), &mut out);
    out
}

/// Number of partitions of each `j <= bound` with all parts at most `max_part`.
pub fn count_bounded_partitions(max_part: u32, bound: usize) -> Vec<u64> {
    let mut dp = vec![0u64; bound + 1];
    dp[0] = 1;
    for part in 1..=max_part as usize {
        for j in part..=bound {
            dp[j] += dp[j - part];
        }
    }
    dp
}
