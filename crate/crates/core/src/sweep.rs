//! Parameter grids over `(d, N, epsilon, L)` and crossover search.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimate::{CostParams, L1Norm, Mode, SchurStage};
use crate::repr::Encoding;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepMode {
    Rus,
    Oaa,
    #[default]
    Both,
}

impl SweepMode {
    pub fn modes(self) -> &'static [Mode] {
        match self {
            SweepMode::Rus => &[Mode::Rus],
            SweepMode::Oaa => &[Mode::Oaa],
            SweepMode::Both => &[Mode::Rus, Mode::Oaa],
        }
    }
}

impl std::str::FromStr for SweepMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rus" => Ok(SweepMode::Rus),
            "oaa" => Ok(SweepMode::Oaa),
            "both" => Ok(SweepMode::Both),
            _ => Err(Error::Validation(format!("unknown sweep mode {s:?}"))),
        }
    }
}

/// Grid axes; each must be nonempty and strictly increasing.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub d: Vec<usize>,
    #[serde(rename = "N")]
    pub n: Vec<usize>,
    #[serde(rename = "L")]
    pub l: Vec<u64>,
    pub epsilon: Vec<f64>,
    #[serde(default)]
    pub mode: SweepMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub encoding: Option<Encoding>,
}

fn check_axis<T: PartialOrd + std::fmt::Debug>(name: &str, v: &[T]) -> Result<()> {
    if v.is_empty() {
        return Err(Error::Validation(format!("sweep axis {name} is empty")));
    }
    if let Some(w) = v.windows(2).find(|w| !(w[0] < w[1])) {
        return Err(Error::Validation(format!(
            "sweep axis {name} must be strictly increasing ({:?} then {:?})",
            w[0], w[1]
        )));
    }
    Ok(())
}

impl SweepSpec {
    pub fn from_json(s: &str) -> Result<Self> {
        let spec: SweepSpec = serde_json::from_str(s).map_err(|e| Error::Validation(format!("sweep spec: {e}")))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        check_axis("d", &self.d)?;
        check_axis("N", &self.n)?;
        check_axis("L", &self.l)?;
        check_axis("epsilon", &self.epsilon)
    }

    pub fn len(&self) -> usize {
        self.d.len() * self.n.len() * self.epsilon.len() * self.l.len() * self.mode.modes().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// One CSV row: a single `(d, N, epsilon, L, mode)` grid point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub d: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub epsilon: f64,
    #[serde(rename = "L")]
    pub l: u64,
    pub mode: Mode,
    pub encoding: Encoding,
    pub l1: f64,
    pub n_lambda: u64,
    pub n_mu: u64,
    pub n_sigma: u64,
    pub k_rot: u64,
    pub f: u64,
    pub delta_rot: f64,
    pub t_cr: f64,
    pub prep_te: u64,
    pub sel_te: u64,
    pub te_per_attempt: u64,
    pub multiplicity: f64,
    pub r_star: Option<u64>,
    pub reflection_te: u128,
    pub te_block: u128,
    pub te_schur: u128,
    pub te_total: u128,
    pub q_sys: u64,
    pub q_block: u64,
    pub q_schur: u64,
    pub q_peak: u64,
}

pub const CSV_HEADER: &str = "d,N,epsilon,L,mode,encoding,l1,n_lambda,n_mu,n_sigma,k_rot,f,delta_rot,t_cr,\
prep_te,sel_te,te_per_attempt,multiplicity,r_star,reflection_te,te_block,te_schur,te_total,\
q_sys,q_block,q_schur,q_peak";

/// Fixed 12-significant-digit rendering.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.11e}")
}

impl SweepRow {
    pub fn csv_line(&self) -> String {
        let r_star = self.r_star.map(|r| r.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.d,
            self.n,
            fmt_float(self.epsilon),
            self.l,
            self.mode,
            self.encoding,
            fmt_float(self.l1),
            self.n_lambda,
            self.n_mu,
            self.n_sigma,
            self.k_rot,
            self.f,
            fmt_float(self.delta_rot),
            fmt_float(self.t_cr),
            self.prep_te,
            self.sel_te,
            self.te_per_attempt,
            fmt_float(self.multiplicity),
            r_star,
            self.reflection_te,
            self.te_block,
            self.te_schur,
            self.te_total,
            self.q_sys,
            self.q_block,
            self.q_schur,
            self.q_peak,
        )
    }
}

pub fn rows_to_csv(rows: &[SweepRow]) -> String {
    let mut s = String::with_capacity(64 * (rows.len() + 1));
    s.push_str(CSV_HEADER);
    s.push('\n');
    for r in rows {
        let _ = writeln!(s, "{}", r.csv_line());
    }
    s
}

#[cfg(feature = "parallel")]
fn par_map<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> Result<U> + Sync + Send) -> Result<Vec<U>> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn par_map<T, U>(items: &[T], f: impl Fn(&T) -> Result<U>) -> Result<Vec<U>> {
    items.iter().map(f).collect()
}

fn row(stage: &SchurStage, eps: f64, l: u64, mode: Mode, params: &CostParams) -> Result<SweepRow> {
    let rep = stage.report(l, L1Norm::cauchy_schwarz(l), mode, params)?;
    let b = &rep.block;
    Ok(SweepRow {
        d: rep.d,
        n: rep.n,
        epsilon: eps,
        l,
        mode,
        encoding: rep.registers.encoding,
        l1: b.l1,
        n_lambda: rep.registers.n_lambda,
        n_mu: rep.registers.n_mu,
        n_sigma: rep.registers.n_sigma,
        k_rot: rep.schur.budget.k_rot,
        f: rep.schur.budget.f,
        delta_rot: rep.schur.budget.delta_rot,
        t_cr: rep.schur.t_cr,
        prep_te: b.prep.te,
        sel_te: b.sel.te,
        te_per_attempt: b.te_per_attempt,
        multiplicity: b.multiplicity,
        r_star: b.r_star,
        reflection_te: b.reflection_te,
        te_block: rep.te_block,
        te_schur: rep.te_schur,
        te_total: rep.te_total,
        q_sys: rep.q_sys,
        q_block: rep.q_block,
        q_schur: rep.q_schur,
        q_peak: rep.q_peak,
    })
}

/// Evaluates the grid. Rows come out in axis order (`d`, `N`, `epsilon`,
/// `L`, mode) whatever the evaluation order.
pub fn run_sweep(spec: &SweepSpec, params: &CostParams) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let mut base = params.clone();
    if let Some(e) = spec.encoding {
        base.encoding = e;
    }
    let mut triples = Vec::new();
    for &d in &spec.d {
        for &n in &spec.n {
            for &eps in &spec.epsilon {
                triples.push((d, n, eps));
            }
        }
    }
    let stages = par_map(&triples, |&(d, n, eps)| {
        let p = base.clone().with_epsilon(eps);
        SchurStage::new(d, n, &p).map(|s| (s, p))
    })?;
    let mut points = Vec::with_capacity(spec.len());
    for (i, _) in triples.iter().enumerate() {
        for &l in &spec.l {
            for &m in spec.mode.modes() {
                points.push((i, l, m));
            }
        }
    }
    par_map(&points, |&(i, l, m)| {
        let (stage, p) = &stages[i];
        row(stage, triples[i].2, l, m, p)
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Crossover {
    pub mode: Mode,
    /// First `L` found with block-encoding TE above the inverse-Schur TE.
    #[serde(rename = "L_star")]
    pub l_star: u64,
    pub te_schur: u128,
    pub te_block_at: u128,
    pub te_block_before: u128,
}

const MAX_SEARCH_L: u64 = 1 << 62;

/// Doubles `L` from 2 until the block encoding costs more than the inverse
/// Schur transform, then bisects inside that bracket.
pub fn find_crossover(d: usize, n: usize, mode: Mode, params: &CostParams) -> Result<Crossover> {
    let stage = SchurStage::new(d, n, params)?;
    let te_schur = stage.cost.te;
    let block = |l: u64| -> Result<u128> { Ok(stage.block(l, L1Norm::cauchy_schwarz(l), mode, params)?.te_total) };
    let (mut lo, mut hi) = (2u64, 2u64);
    while block(hi)? <= te_schur {
        if hi >= MAX_SEARCH_L {
            return Err(Error::Validation(format!("no crossover below L = {MAX_SEARCH_L}")));
        }
        lo = hi;
        hi *= 2;
    }
    if hi == 2 {
        return Err(Error::Validation(format!(
            "block encoding already exceeds the Schur transform at L = 2 ({} > {te_schur})",
            block(2)?
        )));
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if block(mid)? > te_schur {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Crossover {
        mode,
        l_star: hi,
        te_schur,
        te_block_at: block(hi)?,
        te_block_before: block(hi - 1)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> SweepSpec {
        SweepSpec {
            d: vec![3],
            n: vec![3],
            l: vec![2, 50],
            epsilon: vec![1e-4],
            mode: SweepMode::Both,
            encoding: None,
        }
    }

    #[test]
    fn axes_validated() {
        let mut s = spec();
        s.l = vec![50, 50];
        assert!(s.validate().is_err());
        s.l = vec![];
        assert!(s.validate().is_err());
    }

    #[test]
    fn row_order_and_count() {
        let rows = run_sweep(&spec(), &CostParams::default()).unwrap();
        assert_eq!(rows.len(), 4);
        let keys: Vec<(u64, Mode)> = rows.iter().map(|r| (r.l, r.mode)).collect();
        assert_eq!(keys, vec![(2, Mode::Rus), (2, Mode::Oaa), (50, Mode::Rus), (50, Mode::Oaa)]);
        let csv = rows_to_csv(&rows);
        assert_eq!(csv.lines().count(), 5);
        assert_eq!(csv.lines().next().unwrap().split(',').count(), rows[0].csv_line().split(',').count());
    }

    #[test]
    fn float_format() {
        assert_eq!(fmt_float(1e-4), "1.00000000000e-4");
    }
}
