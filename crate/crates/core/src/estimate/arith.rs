use serde::{Deserialize, Serialize};

use super::params::CostParams;
use crate::error::{Error, Result};
use crate::repr::clog2;

/// Toffoli counts of the reversible arithmetic primitives at word size `w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArithmeticCosts {
    pub w: u64,
    /// Ripple-carry add/subtract.
    pub add: u128,
    /// Schoolbook multiplication.
    pub mul: u128,
    pub i_rec: u128,
    pub c_recip: u128,
    pub i_sqrt: u128,
    pub c_sqrt: u128,
}

pub fn arithmetic_costs(w: u64) -> Result<ArithmeticCosts> {
    if w < 1 {
        return Err(Error::Validation("word size must be at least 1".into()));
    }
    let wu = w as u128;
    let add = 2 * wu - 1;
    let mul = 2 * wu * wu + wu;
    let i_rec = clog2(w) as u128 + 2;
    let c_recip = i_rec * (2 * mul + 3 * add);
    let i_sqrt = i_rec;
    let c_sqrt = i_sqrt * (c_recip + mul + 2 * add);
    Ok(ArithmeticCosts {
        w,
        add,
        mul,
        i_rec,
        c_recip,
        i_sqrt,
        c_sqrt,
    })
}

/// Vectoring-mode CORDIC with `f` iterations.
pub fn cordic_cost(w: u64, f: u64) -> Result<u128> {
    if f < 1 {
        return Err(Error::Validation("CORDIC needs at least one iteration".into()));
    }
    Ok(3 * f as u128 * arithmetic_costs(w)?.add)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RotationSynthesis {
    pub delta: f64,
    pub t_dir: f64,
    /// Controlled rotation: two direct syntheses at `delta / 2`.
    pub t_cr: f64,
}

pub fn rotation_synthesis(delta: f64, params: &CostParams) -> Result<RotationSynthesis> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Validation(format!("rotation precision must lie in (0, 1), got {delta}")));
    }
    let (a, b) = (params.alpha_dir, params.beta_dir);
    Ok(RotationSynthesis {
        delta,
        t_dir: a * (1.0 / delta).log2() + b,
        t_cr: 2.0 * (a * (2.0 / delta).log2() + b),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorBudget {
    pub epsilon: f64,
    pub eps_rot: f64,
    pub eps_arith: f64,
    /// Number of controlled rotations in the whole transform.
    pub k_rot: u64,
    pub delta_rot: f64,
    pub eps_theta: f64,
    /// Fractional angle bits.
    pub f: u64,
}

fn binom2(s: u64) -> u64 {
    s * (s - 1) / 2
}

pub fn error_budget(epsilon: f64, d: usize, n: usize) -> Result<ErrorBudget> {
    if !(epsilon > 0.0 && epsilon < 0.5) {
        return Err(Error::Validation(format!("epsilon must lie in (0, 1/2), got {epsilon}")));
    }
    if d < 2 || n < 2 {
        return Err(Error::Validation(format!("need d >= 2 and N >= 2, got d={d}, N={n}")));
    }
    let per_cg: u64 = (2..=d as u64).map(|s| binom2(s) * (2 * clog2(s) - 1)).sum();
    let k_rot = (n as u64 - 1) * per_cg;
    let eps_rot = epsilon / 2.0;
    let eps_arith = epsilon / 2.0;
    let eps_theta = eps_arith / k_rot as f64;
    Ok(ErrorBudget {
        epsilon,
        eps_rot,
        eps_arith,
        k_rot,
        delta_rot: eps_rot / k_rot as f64,
        eps_theta,
        f: (std::f64::consts::PI / eps_theta).log2().ceil() as u64,
    })
}

/// Signed working word: integer range, fractional bits and guard bits.
pub fn word_size(s: usize, n: usize, f: u64) -> Result<u64> {
    if s < 2 {
        return Err(Error::Validation(format!("rank must be at least 2, got {s}")));
    }
    let (s, n) = (s as u64, n as u64);
    let int_bits = clog2(2 * n + 2 * s + 1) + 2;
    let guard = clog2(s) + 3;
    Ok(int_bits + f + guard)
}
