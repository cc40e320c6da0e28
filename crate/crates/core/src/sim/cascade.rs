//! Schur basis vectors from the Clebsch-Gordan cascade.
//!
//! `|lambda, M, sigma>` on `t` qudits is built from the states on `t-1`
//! qudits by coupling one more defining box. The new qudit becomes the
//! leftmost tensor factor, so particle 1 is the rightmost one.

use std::collections::HashMap;

use super::state::{checked_dim, DenseState, DEFAULT_CAP};
use super::wigner::reduced_wigner;
use crate::error::{Error, Result};
use crate::fock::SchurLabel;
use crate::repr::{enumerate_gt_patterns, validate_path, GtPattern, Partition};

/// GT row at level `s` (which has `s` entries).
fn level(m: &GtPattern, s: usize) -> &[usize] {
    m.row(s)
}

/// Pattern of a single particle in mode `i` (1-based): rows `s >= i` are
/// `(1,0,...)`, lower rows are zero.
fn single_particle(i: usize, d: usize) -> GtPattern {
    let rows = (1..=d)
        .rev()
        .map(|s| {
            let mut r = vec![0; s];
            if s >= i {
                r[0] = 1;
            }
            r
        })
        .collect();
    GtPattern::from_rows(rows).expect("single-particle pattern is valid")
}

/// Position of the single unit difference between two rows, if that is
/// the only difference.
fn added_box(old: &[usize], new: &[usize]) -> Option<usize> {
    let mut at = None;
    for (k, (&a, &b)) in old.iter().zip(new).enumerate() {
        match b as i64 - a as i64 {
            0 => {}
            1 if at.is_none() => at = Some(k + 1),
            _ => return None,
        }
    }
    at
}

/// Coefficient of `|i> (x) |M_old>` in `|M_new>`.
pub(crate) fn cg_coefficient(old: &GtPattern, i: usize, new: &GtPattern) -> Result<f64> {
    let d = old.d();
    for s in 1..i {
        if level(old, s) != level(new, s) {
            return Ok(0.0);
        }
    }
    if i == 1 && level(new, 1)[0] != level(old, 1)[0] + 1 {
        return Ok(0.0);
    }
    let mut c = 1.0;
    for s in (i.max(2)..=d).rev() {
        let Some(j) = added_box(level(old, s), level(new, s)) else {
            return Ok(0.0);
        };
        let jp = if s > i {
            match added_box(level(old, s - 1), level(new, s - 1)) {
                Some(x) => x,
                None => return Ok(0.0),
            }
        } else {
            if level(old, s - 1) != level(new, s - 1) {
                return Ok(0.0);
            }
            0
        };
        c *= reduced_wigner(s, level(old, s), j, level(old, s - 1), jp)?;
        if c == 0.0 {
            return Ok(0.0);
        }
    }
    Ok(c)
}

struct Cascade {
    d: usize,
    patterns: Vec<Vec<GtPattern>>,
    memo: HashMap<(usize, GtPattern), DenseState>,
}

impl Cascade {
    /// State of the first `t` particles with pattern `m`.
    fn state(&mut self, t: usize, m: &GtPattern) -> Result<DenseState> {
        if let Some(s) = self.memo.get(&(t, m.clone())) {
            return Ok(s.clone());
        }
        let d = self.d;
        let out = if t == 1 {
            let mut s = DenseState::zeros(d, 1, u128::MAX)?;
            let i = (1..=d)
                .find(|&i| single_particle(i, d) == *m)
                .ok_or_else(|| Error::Internal(format!("{m} is not a one-box pattern")))?;
            s.amplitudes_mut()[i - 1].re = 1.0;
            s
        } else {
            let mut s = DenseState::zeros(d, t, u128::MAX)?;
            let width = d.pow((t - 1) as u32);
            let olds = self.patterns[t - 2].clone();
            for old in &olds {
                for i in 1..=d {
                    let c = cg_coefficient(old, i, m)?;
                    if c == 0.0 {
                        continue;
                    }
                    let prev = self.state(t - 1, old)?;
                    let amps = s.amplitudes_mut();
                    for (idx, a) in prev.amplitudes().iter().enumerate() {
                        amps[(i - 1) * width + idx] += a * c;
                    }
                }
            }
            s
        };
        self.memo.insert((t, m.clone()), out.clone());
        Ok(out)
    }
}

/// `|lambda, mu, sigma>` in the computational basis, built by the cascade.
/// The phase is normalized so the first nonzero amplitude is positive.
pub fn cg_cascade_state(label: &SchurLabel, d: usize) -> Result<DenseState> {
    cg_cascade_state_capped(label, d, DEFAULT_CAP)
}

pub fn cg_cascade_state_capped(label: &SchurLabel, d: usize, cap: u128) -> Result<DenseState> {
    let n = label.lambda.size();
    if n == 0 {
        return Err(Error::Validation("lambda has no boxes".into()));
    }
    if label.lambda.num_rows() > d {
        return Err(Error::EmptySector { n, d });
    }
    let lambda = label.lambda.pad(d)?;
    validate_path(&lambda, &label.sigma)?;
    if label.mu.d() != d || label.mu.rows()[0] != lambda.parts() {
        return Err(Error::Validation(format!(
            "GT pattern {} does not have top row {lambda}",
            label.mu
        )));
    }
    checked_dim(d, n, cap)?;

    let mut shapes = Vec::with_capacity(n);
    let mut cur = vec![0usize; d];
    cur[0] = 1;
    shapes.push(Partition::new(cur.clone())?);
    for &r in &label.sigma {
        cur[r - 1] += 1;
        shapes.push(Partition::new(cur.clone())?);
    }
    let patterns = shapes.iter().map(enumerate_gt_patterns).collect();
    let mut c = Cascade {
        d,
        patterns,
        memo: HashMap::new(),
    };
    let mut s = c.state(n, &label.mu)?;
    let norm = s.norm();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::Internal(format!("cascade state for {label} has norm {norm}")));
    }
    s.fix_phase();
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn label(lam: &[usize], rows: Vec<Vec<usize>>, sigma: &[usize]) -> SchurLabel {
        SchurLabel {
            lambda: Partition::new(lam.to_vec()).unwrap(),
            mu: GtPattern::from_rows(rows).unwrap(),
            sigma: sigma.to_vec(),
        }
    }

    #[test]
    fn singlet_and_triplet() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let s = cg_cascade_state(&label(&[1, 1], vec![vec![1, 1], vec![1]], &[2]), 2).unwrap();
        let a: Vec<f64> = s.amplitudes().iter().map(|c| c.re).collect();
        assert!((a[1] - h).abs() < 1e-14 && (a[2] + h).abs() < 1e-14);
        let s = cg_cascade_state(&label(&[2, 0], vec![vec![2, 0], vec![1]], &[1]), 2).unwrap();
        let a: Vec<f64> = s.amplitudes().iter().map(|c| c.re).collect();
        assert!((a[1] - h).abs() < 1e-14 && (a[2] - h).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_path() {
        let l = label(&[2, 1, 0], vec![vec![2, 1, 0], vec![2, 1], vec![2]], &[2, 2]);
        assert!(matches!(cg_cascade_state(&l, 3), Err(Error::InvalidPath { .. })));
    }
}
