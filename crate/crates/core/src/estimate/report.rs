use serde::{Deserialize, Serialize};

use super::block::{block_encoding_cost, BlockEncodingCost, L1Norm, Mode};
use super::params::CostParams;
use super::schur::{schur_qubits, schur_transform_te, SchurCostBreakdown, SchurQubits};
use crate::error::Result;
use crate::repr::RegisterWidths;

/// End-to-end cost: LCU block encoding followed by the inverse Schur transform.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResourceReport {
    pub d: usize,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "L")]
    pub l: u64,
    pub mode: Mode,
    pub params: CostParams,
    pub registers: RegisterWidths,
    pub block: BlockEncodingCost,
    pub schur: SchurCostBreakdown,
    pub schur_qubits: SchurQubits,
    pub te_block: u128,
    pub te_schur: u128,
    pub te_total: u128,
    pub q_sys: u64,
    pub q_block: u64,
    pub q_schur: u64,
    pub q_peak: u64,
}

/// Inverse-Schur stage, shared by every `L` and mode at fixed `(d, N, params)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SchurStage {
    pub cost: SchurCostBreakdown,
    pub qubits: SchurQubits,
}

impl SchurStage {
    pub fn new(d: usize, n: usize, params: &CostParams) -> Result<Self> {
        Ok(SchurStage {
            cost: schur_transform_te(d, n, params)?,
            qubits: schur_qubits(d, n, params)?,
        })
    }

    pub fn block(&self, l: u64, l1: L1Norm, mode: Mode, params: &CostParams) -> Result<BlockEncodingCost> {
        block_encoding_cost(mode, l, l1, self.cost.registers.n_mu.max(1), params)
    }

    pub fn report(&self, l: u64, l1: L1Norm, mode: Mode, params: &CostParams) -> Result<ResourceReport> {
        let block = self.block(l, l1, mode, params)?;
        let r = self.cost.registers.clone();
        let q_block = r.n_lambda + r.n_mu + r.n_sigma + block.b + block.ancilla;
        let q_schur = self.qubits.q_total;
        Ok(ResourceReport {
            d: self.cost.d,
            n: self.cost.n,
            l,
            mode,
            params: params.clone(),
            te_block: block.te_total,
            te_schur: self.cost.te,
            te_total: block.te_total + self.cost.te,
            q_sys: self.qubits.q_sys,
            q_block,
            q_schur,
            q_peak: q_block.max(q_schur),
            registers: r,
            block,
            schur: self.cost.clone(),
            schur_qubits: self.qubits.clone(),
        })
    }
}

/// Single-point report for an equal-weight superposition of `L` terms.
pub fn end_to_end(d: usize, n: usize, l: u64, mode: Mode, params: &CostParams) -> Result<ResourceReport> {
    end_to_end_with_l1(d, n, l, L1Norm::cauchy_schwarz(l), mode, params)
}

pub fn end_to_end_with_l1(
    d: usize,
    n: usize,
    l: u64,
    l1: L1Norm,
    mode: Mode,
    params: &CostParams,
) -> Result<ResourceReport> {
    SchurStage::new(d, n, params)?.report(l, l1, mode, params)
}
