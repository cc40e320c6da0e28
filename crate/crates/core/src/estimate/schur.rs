use serde::{Deserialize, Serialize};

use super::arith::{arithmetic_costs, error_budget, rotation_synthesis, word_size, ErrorBudget};
use super::params::CostParams;
use crate::error::{Error, Result};
use crate::repr::{clog2, register_widths_with, RegisterWidths};

/// Online evaluation of the rank-`s` rotation angles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalCost {
    /// Shifted GT differences.
    pub diff: u128,
    /// Coefficient entries: products, reciprocal and square root.
    pub entries: u128,
    /// Angle extraction.
    pub angles: u128,
    pub total: u128,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankCost {
    pub s: usize,
    /// Two-level rotations per isometry.
    pub m_s: u64,
    /// Controlled rotations per two-level rotation.
    pub e_s: u64,
    pub k_tot: u64,
    /// Toffolis per multi-controlled flag.
    pub c_tof: u64,
    pub w: u64,
    pub compile_toffoli: u128,
    pub compile_t: f64,
    pub eval: EvalCost,
    /// `compile_toffoli + eval.total + compile_t / 7`.
    pub te: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchurCostBreakdown {
    pub d: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub registers: RegisterWidths,
    pub budget: ErrorBudget,
    pub t_cr: f64,
    pub ranks: Vec<RankCost>,
    pub per_cg_toffoli: u128,
    pub per_cg_t: f64,
    pub per_cg_te: f64,
    pub toffoli: u128,
    pub t_count: f64,
    /// `toffoli + ceil(t_count / 7)`.
    pub te: u128,
    /// Unrounded `toffoli + t_count / 7`.
    pub te_exact: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchurQubits {
    pub q_sys: u64,
    /// `(s, Q_anc(s))`.
    pub anc_per_rank: Vec<(usize, u64)>,
    pub q_anc: u64,
    pub q_total: u64,
}

fn check_dn(d: usize, n: usize) -> Result<()> {
    if d < 2 || n < 2 {
        return Err(Error::Validation(format!("need d >= 2 and N >= 2, got d={d}, N={n}")));
    }
    Ok(())
}

struct Context {
    regs: RegisterWidths,
    budget: ErrorBudget,
    t_cr: f64,
}

impl Context {
    fn new(d: usize, n: usize, params: &CostParams) -> Result<Self> {
        params.validate()?;
        check_dn(d, n)?;
        let budget = error_budget(params.epsilon, d, n)?;
        let t_cr = rotation_synthesis(budget.delta_rot, params)?.t_cr;
        Ok(Context {
            regs: register_widths_with(d, n, params.encoding, params.exhaustive_threshold),
            budget,
            t_cr,
        })
    }

    fn k_lm(&self) -> u64 {
        self.regs.n_lambda + self.regs.n_mu
    }

    fn rank(&self, s: usize, n: usize) -> Result<RankCost> {
        let su = s as u64;
        let ns = clog2(su);
        let m_s = su * (su - 1) / 2;
        let e_s = 2 * ns - 1;
        let k_tot = self.k_lm() + ns - 1;
        let c_tof = (2 * k_tot).saturating_sub(3).max(1);
        let f = self.budget.f;
        let w = word_size(s, n, f)?;
        let a = arithmetic_costs(w)?;
        let pairs = (su * (su - 1)) as u128;
        let diff = 2 * pairs * a.add;
        let entries = pairs * (8 * a.mul + a.c_recip + a.c_sqrt + 5 * a.add);
        let angles = 3 * pairs / 2 * f as u128 * a.add;
        let eval = EvalCost {
            diff,
            entries,
            angles,
            total: diff + entries + angles,
        };
        let rotations = (m_s * e_s) as u128;
        let compile_toffoli = rotations * 2 * c_tof as u128;
        let compile_t = rotations as f64 * self.t_cr;
        Ok(RankCost {
            s,
            m_s,
            e_s,
            k_tot,
            c_tof,
            w,
            compile_toffoli,
            compile_t,
            eval,
            te: (compile_toffoli + eval.total) as f64 + compile_t / 7.0,
        })
    }
}

/// Cost of the rank-`s` isometry inside one Clebsch-Gordan step.
pub fn rank_level_cost(s: usize, d: usize, n: usize, params: &CostParams) -> Result<RankCost> {
    if s < 2 || s > d {
        return Err(Error::Validation(format!("rank s={s} outside 2..={d}")));
    }
    Context::new(d, n, params)?.rank(s, n)
}

/// Full (inverse) Schur transform: `N - 1` Clebsch-Gordan steps, each
/// summing ranks `2..=d`.
pub fn schur_transform_te(d: usize, n: usize, params: &CostParams) -> Result<SchurCostBreakdown> {
    let ctx = Context::new(d, n, params)?;
    let ranks = (2..=d).map(|s| ctx.rank(s, n)).collect::<Result<Vec<_>>>()?;
    let per_cg_toffoli: u128 = ranks.iter().map(|r| r.compile_toffoli + r.eval.total).sum();
    let per_cg_t: f64 = ranks.iter().map(|r| r.compile_t).sum();
    let steps = (n - 1) as u128;
    let toffoli = steps * per_cg_toffoli;
    let t_count = steps as f64 * per_cg_t;
    Ok(SchurCostBreakdown {
        d,
        n,
        per_cg_te: per_cg_toffoli as f64 + per_cg_t / 7.0,
        registers: ctx.regs,
        budget: ctx.budget,
        t_cr: ctx.t_cr,
        ranks,
        per_cg_toffoli,
        per_cg_t,
        toffoli,
        t_count,
        te: toffoli + (t_count / 7.0).ceil() as u128,
        te_exact: toffoli as f64 + t_count / 7.0,
    })
}

pub fn schur_qubits(d: usize, n: usize, params: &CostParams) -> Result<SchurQubits> {
    let ctx = Context::new(d, n, params)?;
    let r = &ctx.regs;
    let q_sys = r.n_system + r.n_lambda + r.n_mu + r.n_sigma;
    let anc_per_rank = (2..=d)
        .map(|s| {
            let ns = clog2(s as u64);
            let mcx = (ctx.k_lm() + ns).saturating_sub(3);
            Ok((s, ns + params.a_mcx_prov.max(mcx) + 12 * word_size(s, n, ctx.budget.f)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let q_anc = anc_per_rank.iter().map(|&(_, q)| q).max().unwrap_or(0);
    Ok(SchurQubits {
        q_sys,
        anc_per_rank,
        q_anc,
        q_total: q_sys + q_anc,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repr::Encoding;

    #[test]
    fn smallest_transform_has_one_rank() {
        let p = CostParams::default().with_epsilon(0.1).with_encoding(Encoding::Naive);
        let b = schur_transform_te(2, 2, &p).unwrap();
        assert_eq!(b.ranks.len(), 1);
        assert_eq!((b.ranks[0].m_s, b.ranks[0].e_s), (1, 1));
    }

    #[test]
    fn naive_system_footprint() {
        let p = CostParams::default().with_encoding(Encoding::Naive);
        assert_eq!(schur_qubits(3, 3, &p).unwrap().q_sys, 22);
    }
}
