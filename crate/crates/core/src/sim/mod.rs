//! Finite-blocklength code evaluation under arbitrarily varying jammers.
//!
//! Words over `A^n`, jammer sequences over `theta^n` and source sequences
//! over `X^n`, `Y^n` are all enumerated lexicographically in declared
//! alphabet order. Error is the average over uniformly chosen messages;
//! leakage is the unnormalised Holevo quantity of the wiretapper's
//! per-message states, in bits.

mod code;
mod compose;
mod eval;
mod experiments;

pub use code::{basis_decoders, load_code, load_corr_code, Code, CodeDoc, CorrCode, CorrCodeDoc, POVM_TOL};
pub use compose::{
    compose_prefix, compose_prefix_with, composed_error_check, composed_leakage_check, prefix_holevo,
    CompositionReport, CompositionRow,
};
pub use eval::{
    error_prob, error_prob_family, leakage, leakage_family, worst_case, worst_case_with, JammerSweep, SweepMode,
    WorstCase,
};
pub use experiments::{
    corr_code_eval, corr_code_eval_with, derandomize_experiment, expected_error_under_tau, CorrEval,
    DerandomizeReport, DerandomizeRow, MIXTURE_TOL,
};
