use std::fmt;

use serde::{Deserialize, Serialize};

use super::partition::Partition;
use crate::error::{Error, Result};

/// Standard weight `omega`, the per-mode occupation of a GT basis vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StandardWeight {
    pub omega: Vec<i64>,
}

/// Dynkin weight `z_i = omega_i - omega_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DynkinWeight {
    pub labels: Vec<i64>,
}

impl StandardWeight {
    pub fn dynkin(&self) -> DynkinWeight {
        DynkinWeight {
            labels: self.omega.windows(2).map(|w| w[0] - w[1]).collect(),
        }
    }
}

/// Gelfand-Tsetlin pattern stored top row first.
///
/// `rows()[0]` is the irrep label (length `d`); the last stored row has a
/// single entry. [`GtPattern::row`] uses the conventional numbering in
/// which row `r` has `r` entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GtPattern {
    rows: Vec<Vec<usize>>,
}

/// First interlacing inequality that fails, `upper_left >= value >= upper_right`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GtViolation {
    /// Row number (row `r` has `r` entries).
    pub row: usize,
    /// 1-based position within the row.
    pub col: usize,
    pub value: usize,
    pub upper_left: usize,
    pub upper_right: usize,
}

impl fmt::Display for GtViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "x[{},{}]={} violates {} >= x >= {}",
            self.row, self.col, self.value, self.upper_left, self.upper_right
        )
    }
}

fn check_shape(rows: &[Vec<usize>]) -> Result<()> {
    if rows.is_empty() {
        return Err(Error::GtShape("no rows".into()));
    }
    let d = rows.len();
    for (k, row) in rows.iter().enumerate() {
        if row.len() != d - k {
            return Err(Error::GtShape(format!(
                "stored row {k} has {} entries, expected {}",
                row.len(),
                d - k
            )));
        }
    }
    Ok(())
}

/// Checks the interlacing constraints. A malformed triangle is an error;
/// a well-formed triangle that fails interlacing returns the first violation
/// (scanning from the top row down, left to right).
pub fn validate_gt(rows: &[Vec<usize>]) -> Result<Option<GtViolation>> {
    check_shape(rows)?;
    let d = rows.len();
    for k in 1..d {
        let r = d - k;
        for (j, &x) in rows[k].iter().enumerate() {
            let (hi, lo) = (rows[k - 1][j], rows[k - 1][j + 1]);
            if x > hi || x < lo {
                return Ok(Some(GtViolation {
                    row: r,
                    col: j + 1,
                    value: x,
                    upper_left: hi,
                    upper_right: lo,
                }));
            }
        }
    }
    Ok(None)
}

impl GtPattern {
    /// Builds a pattern, checking both the triangular shape and interlacing.
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        if let Some(v) = validate_gt(&rows)? {
            return Err(Error::GtShape(format!("interlacing fails: {v}")));
        }
        if rows[0].windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::GtShape("top row is not a partition".into()));
        }
        Ok(GtPattern { rows })
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<Vec<usize>>) -> Self {
        GtPattern { rows }
    }

    /// The pattern whose every row is the truncation of `lambda`.
    pub fn highest_weight(lambda: &Partition) -> Self {
        let p = lambda.parts();
        let d = p.len();
        GtPattern {
            rows: (0..d).map(|k| p[..d - k].to_vec()).collect(),
        }
    }

    pub fn d(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// Row `r` (1-based), which has `r` entries.
    pub fn row(&self, r: usize) -> &[usize] {
        &self.rows[self.rows.len() - r]
    }

    pub fn top(&self) -> Partition {
        Partition::new(self.rows[0].clone()).expect("top row validated on construction")
    }

    pub fn row_sum(&self, r: usize) -> usize {
        if r == 0 {
            0
        } else {
            self.row(r).iter().sum()
        }
    }

    pub fn weight(&self) -> StandardWeight {
        let d = self.d();
        StandardWeight {
            omega: (1..=d)
                .map(|r| self.row_sum(r) as i64 - self.row_sum(r - 1) as i64)
                .collect(),
        }
    }

    /// Compact label listing rows `d-1` down to 1: `(3,0;2)` for `d = 3`.
    pub fn short(&self) -> String {
        let inner: Vec<String> = self.rows[1..]
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        format!("({})", inner.join(";"))
    }
}

impl fmt::Display for GtPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .rows
            .iter()
            .map(|r| format!("({})", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "{}", parts.join("/"))
    }
}

/// Standard and Dynkin weight of a validated pattern.
pub fn gt_weight(pattern: &GtPattern) -> Result<(StandardWeight, DynkinWeight)> {
    if let Some(v) = validate_gt(pattern.rows())? {
        return Err(Error::GtShape(format!("interlacing fails: {v}")));
    }
    let w = pattern.weight();
    let z = w.dynkin();
    Ok((w, z))
}

/// Every GT pattern with top row `lambda`, by brute force over the
/// interlacing ranges. Order is lexicographic in the stored rows.
pub fn enumerate_gt_patterns(lambda: &Partition) -> Vec<GtPattern> {
    enumerate_with(lambda, None)
}

/// Patterns of `lambda` whose weight (mode occupations) is `omega`.
pub fn enumerate_gt_patterns_with_weight(lambda: &Partition, omega: &[usize]) -> Vec<GtPattern> {
    if omega.len() != lambda.len() || omega.iter().sum::<usize>() != lambda.size() {
        return Vec::new();
    }
    let mut prefix = vec![0usize; omega.len() + 1];
    for (i, &w) in omega.iter().enumerate() {
        prefix[i + 1] = prefix[i] + w;
    }
    enumerate_with(lambda, Some(&prefix))
}

/// Depth-first over rows with an explicit stack; output is lexicographic in
/// the rows from the top down.
fn enumerate_with(lambda: &Partition, prefix: Option<&[usize]>) -> Vec<GtPattern> {
    let mut out = Vec::new();
    if lambda.parts().is_empty() {
        return out;
    }
    let mut stack = vec![vec![lambda.parts().to_vec()]];
    while let Some(rows) = stack.pop() {
        let last = rows.last().unwrap();
        if last.len() == 1 {
            out.push(GtPattern { rows });
            continue;
        }
        let target = prefix.map(|p| p[last.len() - 1]);
        let mut children = interlacing_rows(last, target);
        let Some(first) = children.first().cloned() else {
            continue;
        };
        for row in children.drain(1..).rev() {
            let mut next = rows.clone();
            next.push(row);
            stack.push(next);
        }
        let mut rows = rows;
        rows.push(first);
        stack.push(rows);
    }
    out
}

/// Rows one shorter than `upper` that interlace it, optionally with a fixed
/// sum, in lexicographic order.
fn interlacing_rows(upper: &[usize], target: Option<usize>) -> Vec<Vec<usize>> {
    let r = upper.len() - 1;
    // Largest and smallest sums still reachable from position j onward.
    let mut hi_rest = vec![0usize; r + 1];
    let mut lo_rest = vec![0usize; r + 1];
    for j in (0..r).rev() {
        hi_rest[j] = hi_rest[j + 1] + upper[j];
        lo_rest[j] = lo_rest[j + 1] + upper[j + 1];
    }
    let mut out = Vec::new();
    let mut row = vec![0usize; r];
    let mut sums = vec![0usize; r + 1];
    let mut j = 0usize;
    let mut fresh = true;
    loop {
        if j == r {
            if target.is_none_or(|t| sums[r] == t) {
                out.push(row.clone());
            }
            if r == 0 {
                break;
            }
            j -= 1;
            fresh = false;
            continue;
        }
        let lo = upper[j + 1];
        let hi = upper[j];
        let start = if fresh { lo } else { row[j] + 1 };
        let mut chosen = None;
        for x in start..=hi {
            let s = sums[j] + x;
            if let Some(t) = target {
                if s + lo_rest[j + 1] > t {
                    break;
                }
                if s + hi_rest[j + 1] < t {
                    continue;
                }
            }
            chosen = Some(x);
            break;
        }
        match chosen {
            Some(x) => {
                row[j] = x;
                sums[j + 1] = sums[j] + x;
                j += 1;
                fresh = true;
            }
            None => {
                if j == 0 {
                    break;
                }
                j -= 1;
                fresh = false;
            }
        }
    }
    out
}
