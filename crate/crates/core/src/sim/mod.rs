//! Dense simulation of Schur basis states in the computational basis.

mod cascade;
mod golden;
mod operator;
mod prepare;
mod spectral;
mod state;
mod wigner;

pub use cascade::{cg_cascade_state, cg_cascade_state_capped};
pub use golden::{
    golden_rows, parse_short_gt, verify_golden, verify_golden_u3, GoldenEntry, GoldenReport, GoldenRow, MATCH_TOL,
    T1_PATH, T2_PATH,
};
pub use operator::{apply_transposition, total_operator, TotalOperator};
pub use prepare::{
    prepare_first_quantized, prepare_task, schur_state, state_csv, state_json, Method, PreparedState,
};
pub use spectral::{
    casimir_value, gt_chain_basis, spectral_state, weight_block, SchurBasisSet, SpectralOptions, WeightBlock,
};
pub use state::{
    checked_dim, digits_index, index_digits, parse_index, AmplitudeEntry, DenseState, DEFAULT_CAP, ZERO_TOL,
};
pub use wigner::reduced_wigner;
