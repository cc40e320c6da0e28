//! Closed-form fault-tolerant cost model in Toffoli-equivalents (TE).

mod arith;
mod block;
mod params;
mod report;
mod schur;

pub use arith::{
    arithmetic_costs, cordic_cost, error_budget, rotation_synthesis, word_size, ArithmeticCosts, ErrorBudget,
    RotationSynthesis,
};
pub use block::{
    block_encoding_cost, oaa_cost, oaa_rounds, optimal_k, prep_cost, rus_cost, sel_cost, v2, BlockEncodingCost,
    L1Norm, Mode, PrepCost, SelCost,
};
pub use params::CostParams;
pub use report::{end_to_end, end_to_end_with_l1, ResourceReport, SchurStage};
pub use schur::{rank_level_cost, schur_qubits, schur_transform_te, EvalCost, RankCost, SchurCostBreakdown, SchurQubits};
