//! Exact code simulation: classical binary adder codes with zero-error
//! checking, the dense-coding corner code, the GHZ phase-bit lifting, and
//! the shared-randomness wrapper that turns average error into maximal
//! error.

mod classical;
mod quantum;

pub use classical::{
    classical_adder_output, classical_code_performance, inverse_decoder, wrap_shared_randomness,
    zero_error_check, AdderCode, CodePerformance, Decoder, SharedRandomnessCode, SumWord, Word,
    ZeroErrorReport,
};
pub use quantum::{
    dense_coding_code, error_probability, ghz_lift, phase_subspace_projectors, AssistedCode,
    DecodeLabel,
};
