use num_complex::Complex64;

use super::state::{checked_dim, index_digits, DenseState};
use crate::error::{Error, Result};

/// `Lambda_{i,j} = sum_k Q^{(k)}_{i,j}` acting on all `N` qudits.
///
/// Off-diagonal `(i,j)` is `E_{i,j}` on each site. Diagonal `(i,i)` is the
/// Cartan generator `H_i = E_{i,i} - E_{i+1,i+1}`. Indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TotalOperator {
    pub i: usize,
    pub j: usize,
    pub d: usize,
    pub n: usize,
}

pub fn total_operator(i: usize, j: usize, d: usize, n: usize) -> Result<TotalOperator> {
    if i == 0 || j == 0 || i > d || j > d {
        return Err(Error::IndexOutOfRange(format!("({i},{j}) outside 1..={d}")));
    }
    if i == j && i == d {
        return Err(Error::IndexOutOfRange(format!("Cartan index {i} must be at most d-1={}", d - 1)));
    }
    Ok(TotalOperator { i, j, d, n })
}

impl TotalOperator {
    pub fn is_cartan(&self) -> bool {
        self.i == self.j
    }

    pub fn adjoint(&self) -> TotalOperator {
        TotalOperator {
            i: self.j,
            j: self.i,
            ..*self
        }
    }

    /// Nonzero entries `(row, col, value)` sorted by `(row, col)`.
    pub fn triplets(&self, cap: u128) -> Result<Vec<(usize, usize, f64)>> {
        let dim = checked_dim(self.d, self.n, cap)?;
        let mut out = Vec::new();
        for col in 0..dim {
            for (row, v) in self.column(col) {
                out.push((row, col, v));
            }
        }
        out.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        Ok(out)
    }

    /// Image of basis vector `col` as `(row, value)` pairs.
    pub fn column(&self, col: usize) -> Vec<(usize, f64)> {
        let digits = index_digits(col, self.d, self.n);
        let (a, b) = (self.i - 1, self.j - 1);
        if self.is_cartan() {
            let v: i64 = digits
                .iter()
                .map(|&x| i64::from(x == a) - i64::from(x == a + 1))
                .sum();
            return if v != 0 { vec![(col, v as f64)] } else { vec![] };
        }
        let mut out = Vec::new();
        let mut place = 1usize;
        for k in (0..self.n).rev() {
            if digits[k] == b {
                let row = col + a * place - b * place;
                out.push((row, 1.0));
            }
            place *= self.d;
        }
        out
    }

    pub fn apply(&self, state: &DenseState) -> Result<DenseState> {
        if state.d() != self.d || state.n() != self.n {
            return Err(Error::Validation("operator and state dimensions differ".into()));
        }
        let mut out = DenseState::zeros(self.d, self.n, u128::MAX)?;
        let src = state.amplitudes();
        let dst = out.amplitudes_mut();
        for (col, a) in src.iter().enumerate() {
            if a.norm() == 0.0 {
                continue;
            }
            for (row, v) in self.column(col) {
                dst[row] += a * Complex64::new(v, 0.0);
            }
        }
        Ok(out)
    }
}

/// Swaps the tensor factors at positions `p` and `q` (1-based, left to right).
pub fn apply_transposition(state: &DenseState, p: usize, q: usize) -> DenseState {
    let (d, n) = (state.d(), state.n());
    let mut out = state.clone();
    let src = state.amplitudes();
    let dst = out.amplitudes_mut();
    let wp = d.pow((n - p) as u32);
    let wq = d.pow((n - q) as u32);
    for (idx, a) in src.iter().enumerate() {
        let dp = (idx / wp) % d;
        let dq = (idx / wq) % d;
        let j = idx - dp * wp - dq * wq + dq * wp + dp * wq;
        dst[j] = *a;
    }
    out
}
