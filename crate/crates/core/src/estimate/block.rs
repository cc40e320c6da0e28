use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::params::CostParams;
use crate::error::{Error, Result};
use crate::repr::clog2;

/// 2-adic valuation; `v2(0) = 0`.
pub fn v2(l: u64) -> u32 {
    if l == 0 {
        0
    } else {
        l.trailing_zeros()
    }
}

fn ceil_div(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}

/// Power-of-two QROAM blocking factor `2^round(log2(size / 2m) / 2)`,
/// clamped to `[1, floor(size / 2)]`.
pub fn optimal_k(size: u64, m: u64) -> Result<u64> {
    if size < 1 || m < 1 {
        return Err(Error::Validation(format!("optimal_k needs size, m >= 1, got ({size}, {m})")));
    }
    // round(x / 2) >= r  <=>  size >= m * 4^r, with halves rounded up.
    let mut r = 0u32;
    while r < 31 && (m as u128) << (2 * (r + 1)) <= size as u128 {
        r += 1;
    }
    let cap = (size / 2).max(1);
    let mut k = 1u64 << r;
    while k > cap {
        k >>= 1;
    }
    Ok(k)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrepCost {
    #[serde(rename = "L")]
    pub l: u64,
    /// Alt-index bits.
    pub beta: u64,
    /// Keep-probability bits.
    pub r: u64,
    /// QROAM output word.
    pub m: u64,
    pub k1: u64,
    pub k2: u64,
    pub te: u64,
    pub ancilla: u64,
}

pub fn prep_cost(l: u64, params: &CostParams) -> Result<PrepCost> {
    if l < 2 {
        return Err(Error::DegenerateLcu(l));
    }
    params.validate()?;
    let beta = clog2(l);
    let r = (1.0 / params.epsilon_prep()).log2().ceil().max(0.0) as u64;
    let m = beta + r + params.s_sign;
    let k1 = match params.k1 {
        Some(k) => k,
        None => optimal_k(l, m)?,
    };
    let k2 = match params.k2 {
        Some(k) => k,
        None => optimal_k(l, m)?,
    };
    let p1 = ceil_div(l, 2 * k1);
    let p2 = ceil_div(l, 2 * k2);
    let boost = 3 * (beta as i128 + 1) - 3 * v2(l) as i128 + 2 * params.b_r as i128 - 9;
    let te = 2 * p1 as i128 + (m * (k1 - 1)) as i128 + p2 as i128 + k2 as i128 + 2 * boost + 2 * r as i128
        + 2 * beta as i128;
    let te = u64::try_from(te).map_err(|_| Error::Internal(format!("negative PREP cost {te} at L={l}")))?;
    let ancilla = 6 + 2 * (beta + r) + params.b_r + (m * (k1 - 1) + clog2(p1)).max(k2 + clog2(p2));
    Ok(PrepCost {
        l,
        beta,
        r,
        m,
        k1,
        k2,
        te,
        ancilla,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelCost {
    pub n_mu: u64,
    pub k1: u64,
    pub k2: u64,
    pub te: u64,
    pub ancilla: u64,
}

/// Mask lookup over the `n_mu` GT-label qubits; defaults `k1' = 1`,
/// `k2' = optimal_k(2 n_mu, 1)`.
pub fn sel_cost(n_mu: u64, k1: Option<u64>, k2: Option<u64>) -> Result<SelCost> {
    if n_mu < 1 {
        return Err(Error::Validation("SEL needs n_mu >= 1".into()));
    }
    let k1 = k1.unwrap_or(1);
    let k2 = match k2 {
        Some(k) => k,
        None => optimal_k(2 * n_mu, 1)?,
    };
    if k1 < 1 || k2 < 1 {
        return Err(Error::Validation("SEL blocking factors must be at least 1".into()));
    }
    let (q1, q2) = (ceil_div(n_mu, k1), ceil_div(n_mu, k2));
    let te = q1 + ceil_div(n_mu * (k1 - 1), 2) + q2 + k2;
    let ancilla = (n_mu * (k1 - 1) + clog2(q1)).max(k2 + clog2(q2));
    Ok(SelCost {
        n_mu,
        k1,
        k2,
        te,
        ancilla,
    })
}

/// LCU one-norm, with its square kept exact where possible.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct L1Norm {
    pub value: f64,
    pub squared: f64,
}

impl L1Norm {
    /// Equal-weight superposition of `L` unitaries: `l1 = sqrt(L)`.
    pub fn cauchy_schwarz(l: u64) -> Self {
        L1Norm {
            value: (l as f64).sqrt(),
            squared: l as f64,
        }
    }

    pub fn new(value: f64) -> Self {
        L1Norm {
            value,
            squared: value * value,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Rus,
    #[default]
    Oaa,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Rus => "rus",
            Mode::Oaa => "oaa",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rus" => Ok(Mode::Rus),
            "oaa" => Ok(Mode::Oaa),
            _ => Err(Error::Validation(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockEncodingCost {
    pub mode: Mode,
    #[serde(rename = "L")]
    pub l: u64,
    pub l1: f64,
    /// LCU index width `ceil(log2 L)`.
    pub b: u64,
    pub prep: PrepCost,
    pub sel: SelCost,
    /// PREP + SEL: one application of the block encoding.
    pub te_per_attempt: u64,
    /// Expected attempts (RUS) or `2 r* + 1` applications (OAA).
    pub multiplicity: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_star: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    /// `sin((2 r* + 1) theta) = 1` to 1e-12.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_amplification: Option<bool>,
    pub reflection_te: u128,
    pub te_total: u128,
    pub ancilla: u64,
}

fn components(l: u64, n_mu: u64, params: &CostParams) -> Result<(PrepCost, SelCost)> {
    let prep = prep_cost(l, params)?;
    let sel = sel_cost(n_mu, params.k1_sel, params.k2_sel)?;
    Ok((prep, sel))
}

/// Repeat-until-success: `l1^2` expected attempts, no extra ancillas.
pub fn rus_cost(l: u64, l1: L1Norm, n_mu: u64, params: &CostParams) -> Result<BlockEncodingCost> {
    if !(l1.value >= 1.0) {
        return Err(Error::Validation(format!("l1 must be at least 1, got {}", l1.value)));
    }
    let (prep, sel) = components(l, n_mu, params)?;
    let te_u = prep.te + sel.te;
    let sq = l1.squared;
    let te_total = if sq.fract() == 0.0 && sq < 9.0e15 {
        sq as u128 * te_u as u128
    } else {
        (sq * te_u as f64).ceil() as u128
    };
    Ok(BlockEncodingCost {
        mode: Mode::Rus,
        l,
        l1: l1.value,
        b: clog2(l),
        ancilla: prep.ancilla.max(sel.ancilla),
        prep,
        sel,
        te_per_attempt: te_u,
        multiplicity: sq,
        r_star: None,
        theta: None,
        exact_amplification: None,
        reflection_te: 0,
        te_total,
    })
}

/// Grover iterations for success amplitude `1 / l1`.
pub fn oaa_rounds(l1: f64) -> Result<(u64, f64)> {
    if !(l1 > 1.0) {
        return Err(Error::NoAmplification(l1));
    }
    let theta = (1.0 / l1).asin();
    let x = (FRAC_PI_2 - theta) / (2.0 * theta);
    let near = x.round();
    let r = if (x - near).abs() < 1e-9 { near } else { x.ceil() };
    Ok((r.max(0.0) as u64, theta))
}

/// Oblivious amplitude amplification: `(2 r* + 1)` applications plus `2 r*`
/// reflections on the `b`-qubit index register.
pub fn oaa_cost(l: u64, l1: L1Norm, n_mu: u64, params: &CostParams) -> Result<BlockEncodingCost> {
    let (r, theta) = oaa_rounds(l1.value)?;
    let (prep, sel) = components(l, n_mu, params)?;
    let te_u = prep.te + sel.te;
    let b = clog2(l);
    let reflection_te = 2 * r as u128 * (2 * b).saturating_sub(3) as u128;
    let apps = 2 * r + 1;
    Ok(BlockEncodingCost {
        mode: Mode::Oaa,
        l,
        l1: l1.value,
        b,
        ancilla: prep.ancilla.max(sel.ancilla).max(b.saturating_sub(2)),
        prep,
        sel,
        te_per_attempt: te_u,
        multiplicity: apps as f64,
        r_star: Some(r),
        theta: Some(theta),
        exact_amplification: Some(((apps as f64 * theta).sin() - 1.0).abs() < 1e-12),
        reflection_te,
        te_total: apps as u128 * te_u as u128 + reflection_te,
    })
}

pub fn block_encoding_cost(mode: Mode, l: u64, l1: L1Norm, n_mu: u64, params: &CostParams) -> Result<BlockEncodingCost> {
    match mode {
        Mode::Rus => rus_cost(l, l1, n_mu, params),
        Mode::Oaa => oaa_cost(l, l1, n_mu, params),
    }
}
