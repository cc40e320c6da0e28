use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Young diagram given by its row lengths.
///
/// Rows are nonincreasing. Trailing zero rows are kept as given, so a
/// partition used as a `U(d)` label is normally stored with length `d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition {
                parts,
                reason: "rows must be nonincreasing".into(),
            });
        }
        Ok(Partition { parts })
    }

    /// Builds the partition zero-padded (or zero-trimmed) to exactly `d` rows.
    pub fn padded(parts: &[usize], d: usize) -> Result<Self> {
        let p = Partition::new(parts.to_vec())?;
        p.pad(d)
    }

    pub fn pad(&self, d: usize) -> Result<Self> {
        if self.num_rows() > d {
            return Err(Error::InvalidPartition {
                parts: self.parts.clone(),
                reason: format!("more than {d} nonzero rows"),
            });
        }
        let mut parts: Vec<usize> = self.parts.iter().copied().filter(|&x| x > 0).collect();
        parts.resize(d, 0);
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.size() == 0
    }

    /// Number of boxes.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of nonzero rows.
    pub fn num_rows(&self) -> usize {
        self.parts.iter().filter(|&&x| x > 0).count()
    }

    pub fn first_row(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Adds a box to `row` (1-based). Returns `None` if the result is not a
    /// partition or the row is out of range.
    pub fn add_box(&self, row: usize) -> Option<Partition> {
        if row == 0 || row > self.parts.len() {
            return None;
        }
        let i = row - 1;
        if i > 0 && self.parts[i - 1] == self.parts[i] {
            return None;
        }
        let mut parts = self.parts.clone();
        parts[i] += 1;
        Some(Partition { parts })
    }

    /// Removes a box from `row` (1-based) if the result is a partition.
    pub fn remove_box(&self, row: usize) -> Option<Partition> {
        if row == 0 || row > self.parts.len() {
            return None;
        }
        let i = row - 1;
        let next = self.parts.get(i + 1).copied().unwrap_or(0);
        if self.parts[i] == 0 || self.parts[i] - 1 < next {
            return None;
        }
        let mut parts = self.parts.clone();
        parts[i] -= 1;
        Some(Partition { parts })
    }

    pub fn conjugate(&self) -> Vec<usize> {
        let width = self.first_row();
        (0..width)
            .map(|c| self.parts.iter().filter(|&&r| r > c).count())
            .collect()
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Dynkin label of a highest weight, `zeta_i = lambda_i - lambda_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HighestWeightDynkin {
    pub labels: Vec<usize>,
}

pub fn partition_from_dynkin(zeta: &HighestWeightDynkin) -> Partition {
    let d = zeta.labels.len() + 1;
    let mut parts = vec![0usize; d];
    for i in (0..d - 1).rev() {
        parts[i] = zeta.labels[i] + parts[i + 1];
    }
    Partition { parts }
}

pub fn dynkin_from_partition(lambda: &Partition) -> HighestWeightDynkin {
    let p = lambda.parts();
    HighestWeightDynkin {
        labels: p.windows(2).map(|w| w[0] - w[1]).collect(),
    }
}

/// Number of partitions of `n` with at most `d` parts.
///
/// Counts partitions into parts of size at most `d`, which is the same
/// number by conjugation.
pub fn count_partitions(n: usize, d: usize) -> BigUint {
    let mut ways = vec![BigUint::zero(); n + 1];
    ways[0] = BigUint::one();
    for part in 1..=d.min(n) {
        for s in part..=n {
            let add = ways[s - part].clone();
            ways[s] += add;
        }
    }
    ways[n].clone()
}

/// All partitions of `n` with at most `d` rows, zero-padded to length `d`,
/// in decreasing lexicographic order (`(n,0,..)` first).
pub fn enumerate_partitions(n: usize, d: usize) -> Vec<Partition> {
    fn rec(n: usize, rows_left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        if rows_left == 0 {
            return;
        }
        for first in (1..=n.min(max)).rev() {
            cur.push(first);
            rec(n - first, rows_left - 1, first, cur, out);
            cur.pop();
        }
    }
    let mut raw = Vec::new();
    rec(n, d, n, &mut Vec::new(), &mut raw);
    raw.into_iter()
        .map(|mut p| {
            p.resize(d, 0);
            Partition { parts: p }
        })
        .collect()
}

/// Dimension of the `U(d)` irrep `lambda` by the Weyl formula.
///
/// Returns zero when `lambda` has more than `d` nonzero rows.
pub fn weyl_dimension(lambda: &Partition, d: usize) -> BigUint {
    let Ok(l) = lambda.pad(d) else {
        return BigUint::zero();
    };
    let l = l.parts();
    // Exact: the product of all factors is an integer, so one final
    // division suffices. Small factors are batched in machine words.
    let mut num = Product::default();
    let mut den = Product::default();
    for i in 0..lambda.num_rows() {
        for j in i + 1..d {
            if l[i] == l[j] {
                continue;
            }
            num.mul((l[i] - l[j] + j - i) as u64);
            den.mul((j - i) as u64);
        }
    }
    let (num, den) = (num.finish(), den.finish());
    debug_assert!((&num % &den).is_zero());
    num / den
}

/// Running product that flushes into a big integer before overflowing.
#[derive(Default)]
struct Product {
    big: Option<BigUint>,
    word: u64,
}

impl Product {
    fn mul(&mut self, x: u64) {
        let w = self.word.max(1);
        match w.checked_mul(x) {
            Some(v) if v < 1 << 32 => self.word = v,
            _ => {
                let big = self.big.take().unwrap_or_else(BigUint::one);
                self.big = Some(big * BigUint::from(w));
                self.word = x;
            }
        }
    }

    fn finish(self) -> BigUint {
        self.big.unwrap_or_else(BigUint::one) * BigUint::from(self.word.max(1))
    }
}

/// Dimension of the symmetric-group irrep `lambda` by the hook-length formula.
pub fn sym_group_dimension(lambda: &Partition) -> BigUint {
    let rows: Vec<usize> = lambda.parts().iter().copied().filter(|&x| x > 0).collect();
    let cols = lambda.conjugate();
    let n = lambda.size();
    let mut num = BigUint::one();
    for k in 2..=n {
        num *= BigUint::from(k);
    }
    let mut den = BigUint::one();
    for (i, &r) in rows.iter().enumerate() {
        for (j, &c) in cols.iter().enumerate().take(r) {
            den *= BigUint::from((r - j - 1) + (c - i - 1) + 1);
        }
    }
    num / den
}

/// The almost-rectangular diagram: `r` rows of `q+1`, `d-r` rows of `q`.
pub fn balanced_shape(n: usize, d: usize) -> Partition {
    assert!(d >= 1, "balanced_shape needs d >= 1");
    let (q, r) = (n / d, n % d);
    let parts = (0..d).map(|i| if i < r { q + 1 } else { q }).collect();
    Partition { parts }
}

/// `ceil(log2(x))` for a big integer, with `clog2(0) = clog2(1) = 0`.
pub fn clog2_big(x: &BigUint) -> u64 {
    if *x <= BigUint::one() {
        0
    } else {
        (x - 1u32).bits()
    }
}

/// `ceil(log2(x))`, with `clog2(0) = clog2(1) = 0`.
pub fn clog2(x: u64) -> u64 {
    if x <= 1 {
        0
    } else {
        64 - u64::from((x - 1).leading_zeros())
    }
}

/// All add-a-box paths ending at `lambda`, in lexicographic order.
///
/// A path lists the rows (1-based) receiving boxes 2..N; the first box
/// always sits in row 1. Paths are in bijection with standard tableaux.
pub fn add_a_box_paths(lambda: &Partition) -> Vec<Vec<usize>> {
    let n = lambda.size();
    let d = lambda.len().max(1);
    let target = lambda.parts();
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut start = vec![0usize; d];
    start[0] = 1;
    fn rec(cur: &mut Vec<usize>, target: &[usize], path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.iter().zip(target).all(|(a, b)| a == b) {
            out.push(path.clone());
            return;
        }
        for i in 0..cur.len() {
            let ok_shape = i == 0 || cur[i - 1] > cur[i];
            if ok_shape && cur[i] < target[i] {
                cur[i] += 1;
                path.push(i + 1);
                rec(cur, target, path, out);
                path.pop();
                cur[i] -= 1;
            }
        }
    }
    if target.first().copied().unwrap_or(0) == 0 {
        return out;
    }
    rec(&mut start, target, &mut Vec::new(), &mut out);
    out
}

/// Contents `col - row` of boxes 1..N along an add-a-box path.
pub fn path_contents(path: &[usize], d: usize) -> Vec<i64> {
    let mut rows = vec![0i64; d.max(1)];
    rows[0] = 1;
    let mut out = vec![0i64];
    for &r in path {
        let c = rows[r - 1] - (r as i64 - 1);
        rows[r - 1] += 1;
        out.push(c);
    }
    out
}

/// Checks that `path` is a valid add-a-box path terminating at `lambda`.
pub fn validate_path(lambda: &Partition, path: &[usize]) -> Result<()> {
    let bad = || Error::InvalidPath {
        lambda: lambda.parts().to_vec(),
        path: path.to_vec(),
    };
    let d = lambda.len();
    if d == 0 || path.len() + 1 != lambda.size() {
        return Err(bad());
    }
    let mut cur = Partition {
        parts: {
            let mut v = vec![0; d];
            v[0] = 1;
            v
        },
    };
    for &r in path {
        cur = cur.add_box(r).ok_or_else(bad)?;
    }
    if cur.parts() != lambda.parts() {
        return Err(bad());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn counts() {
        assert_eq!(count_partitions(0, 5), BigUint::from(1u32));
        assert_eq!(count_partitions(3, 3), BigUint::from(3u32));
        assert_eq!(count_partitions(4, 2), BigUint::from(3u32));
        assert_eq!(count_partitions(2, 0), BigUint::zero());
        assert_eq!(count_partitions(100, 100).to_string(), "190569292");
    }

    #[test]
    fn enumerates_in_decreasing_order() {
        let e = enumerate_partitions(3, 3);
        assert_eq!(e, vec![p(&[3, 0, 0]), p(&[2, 1, 0]), p(&[1, 1, 1])]);
        assert_eq!(enumerate_partitions(0, 4), vec![p(&[0, 0, 0, 0])]);
        assert_eq!(enumerate_partitions(1, 4), vec![p(&[1, 0, 0, 0])]);
    }

    #[test]
    fn dimensions() {
        assert_eq!(weyl_dimension(&p(&[3, 0, 0]), 3), BigUint::from(10u32));
        assert_eq!(weyl_dimension(&p(&[2, 1, 0]), 3), BigUint::from(8u32));
        assert_eq!(weyl_dimension(&p(&[1, 1, 1]), 3), BigUint::from(1u32));
        assert_eq!(weyl_dimension(&p(&[1, 0]), 2), BigUint::from(2u32));
        assert_eq!(weyl_dimension(&p(&[1, 1, 1]), 2), BigUint::zero());
        assert_eq!(sym_group_dimension(&p(&[3, 0, 0])), BigUint::from(1u32));
        assert_eq!(sym_group_dimension(&p(&[2, 1, 0])), BigUint::from(2u32));
        assert_eq!(sym_group_dimension(&p(&[1, 1, 1])), BigUint::from(1u32));
        assert_eq!(sym_group_dimension(&p(&[3, 2])), BigUint::from(5u32));
    }

    #[test]
    fn balanced() {
        assert_eq!(balanced_shape(7, 3), p(&[3, 2, 2]));
        assert_eq!(balanced_shape(6, 3), p(&[2, 2, 2]));
        let b = balanced_shape(3, 3);
        assert_eq!(b, p(&[1, 1, 1]));
        assert_eq!(weyl_dimension(&b, 3), BigUint::from(1u32));
    }

    #[test]
    fn dynkin_round_trip() {
        let z = |v: &[usize]| HighestWeightDynkin { labels: v.to_vec() };
        assert_eq!(partition_from_dynkin(&z(&[1, 1])), p(&[2, 1, 0]));
        assert_eq!(partition_from_dynkin(&z(&[0, 0])), p(&[0, 0, 0]));
        assert_eq!(partition_from_dynkin(&z(&[3, 0])), p(&[3, 0, 0]));
        assert_eq!(dynkin_from_partition(&p(&[2, 1, 0])).labels, vec![1, 1]);
        assert_eq!(dynkin_from_partition(&p(&[4, 0, 0, 0])).labels, vec![4, 0, 0]);
        assert_eq!(dynkin_from_partition(&p(&[1, 1, 1])).labels, vec![0, 0]);
    }

    #[test]
    fn rejects_increasing_rows() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::padded(&[1, 1, 1], 2).is_err());
    }

    #[test]
    fn paths() {
        assert_eq!(add_a_box_paths(&p(&[2, 1, 0])), vec![vec![1, 2], vec![2, 1]]);
        assert_eq!(add_a_box_paths(&p(&[1, 1, 1])), vec![vec![2, 3]]);
        assert_eq!(add_a_box_paths(&p(&[3, 2])).len(), 5);
        assert_eq!(path_contents(&[1, 2], 3), vec![0, 1, -1]);
        assert!(validate_path(&p(&[2, 1, 0]), &[2, 1]).is_ok());
        assert!(validate_path(&p(&[2, 1, 0]), &[2, 2]).is_err());
    }

    #[test]
    fn log_widths() {
        assert_eq!(clog2(1), 0);
        assert_eq!(clog2(2), 1);
        assert_eq!(clog2(3), 2);
        assert_eq!(clog2(8), 3);
        assert_eq!(clog2(9), 4);
        assert_eq!(clog2_big(&BigUint::from(10u32)), 4);
        assert_eq!(clog2_big(&BigUint::from(1u32)), 0);
    }
}
