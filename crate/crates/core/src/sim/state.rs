use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Default cap on `d^N` for dense vectors.
pub const DEFAULT_CAP: u128 = 1 << 20;

/// Amplitudes below this magnitude are treated as zero in exports and in
/// the phase convention.
pub const ZERO_TOL: f64 = 1e-12;

/// `d^N`, or a cap error when it exceeds `cap`.
pub fn checked_dim(d: usize, n: usize, cap: u128) -> Result<usize> {
    let mut dim: u128 = 1;
    for _ in 0..n {
        dim = dim.saturating_mul(d as u128);
        if dim > cap {
            return Err(Error::DimensionCap { dim, cap });
        }
    }
    Ok(dim as usize)
}

/// Dense vector over `(C^d)^{(x)N}`. Index `i_1 ... i_N` is read as a
/// base-`d` number with `i_1` the most significant digit.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseState {
    d: usize,
    n: usize,
    amps: Vec<Complex64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AmplitudeEntry {
    pub index: String,
    pub re: f64,
    pub im: f64,
}

impl DenseState {
    pub fn zeros(d: usize, n: usize, cap: u128) -> Result<Self> {
        let dim = checked_dim(d, n, cap)?;
        Ok(DenseState {
            d,
            n,
            amps: vec![Complex64::new(0.0, 0.0); dim],
        })
    }

    pub fn from_amplitudes(d: usize, n: usize, amps: Vec<Complex64>) -> Result<Self> {
        let dim = checked_dim(d, n, u128::MAX)?;
        if amps.len() != dim {
            return Err(Error::Validation(format!("expected {dim} amplitudes, got {}", amps.len())));
        }
        Ok(DenseState { d, n, amps })
    }

    pub fn from_real(d: usize, n: usize, amps: &[f64]) -> Result<Self> {
        Self::from_amplitudes(d, n, amps.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &DenseState) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn scale(&mut self, c: Complex64) {
        for a in &mut self.amps {
            *a *= c;
        }
    }

    pub fn add_scaled(&mut self, c: Complex64, other: &DenseState) {
        for (a, b) in self.amps.iter_mut().zip(&other.amps) {
            *a += c * b;
        }
    }

    /// Rotates the global phase so the first amplitude above [`ZERO_TOL`]
    /// is real and positive.
    pub fn fix_phase(&mut self) {
        if let Some(a) = self.amps.iter().find(|a| a.norm() > ZERO_TOL) {
            let ph = a.conj() / a.norm();
            self.scale(ph);
        }
    }

    /// `min_phi max_k |self_k - e^{i phi} other_k|`, with `phi` taken from
    /// the overlap. Infinite if the dimensions differ.
    pub fn phase_distance(&self, other: &DenseState) -> f64 {
        if self.amps.len() != other.amps.len() {
            return f64::INFINITY;
        }
        let ov = other.inner(self);
        let ph = if ov.norm() > ZERO_TOL {
            ov / ov.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - ph * b).norm())
            .fold(0.0, f64::max)
    }

    pub fn digits(&self, index: usize) -> Vec<usize> {
        index_digits(index, self.d, self.n)
    }

    pub fn index_string(&self, index: usize) -> String {
        digits_string(&self.digits(index))
    }

    /// Amplitudes above `tol` in index order.
    pub fn nonzero(&self, tol: f64) -> Vec<AmplitudeEntry> {
        self.amps
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() > tol)
            .map(|(i, a)| AmplitudeEntry {
                index: self.index_string(i),
                re: a.re,
                im: a.im,
            })
            .collect()
    }
}

pub fn index_digits(mut index: usize, d: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for k in (0..n).rev() {
        out[k] = index % d;
        index /= d;
    }
    out
}

pub fn digits_index(digits: &[usize], d: usize) -> usize {
    digits.iter().fold(0, |acc, &x| acc * d + x)
}

fn digits_string(digits: &[usize]) -> String {
    if digits.iter().all(|&x| x < 10) {
        digits.iter().map(|x| char::from(b'0' + *x as u8)).collect()
    } else {
        digits.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(".")
    }
}

/// Parses an index string such as `"012"` (or `"0.11.3"` when `d > 10`).
pub fn parse_index(s: &str, d: usize) -> Result<usize> {
    let digits: Vec<usize> = if s.contains('.') {
        s.split('.')
            .map(|t| t.parse::<usize>().map_err(|e| Error::Validation(format!("index {s:?}: {e}"))))
            .collect::<Result<_>>()?
    } else {
        s.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|x| x as usize)
                    .ok_or_else(|| Error::Validation(format!("index {s:?} has a non-digit")))
            })
            .collect::<Result<_>>()?
    };
    if digits.iter().any(|&x| x >= d) {
        return Err(Error::Validation(format!("index {s:?} has a digit >= d={d}")));
    }
    Ok(digits_index(&digits, d))
}
