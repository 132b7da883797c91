//! Numerical laboratory for the quantum binary adder channel.
//!
//! The channel takes L qubits and averages over all permutations of them,
//! generalizing the classical channel that outputs the sum of L input bits.
//! This crate builds the channel and its entanglement-assisted variants,
//! computes Holevo-information rate regions by numerical optimization over
//! input ensembles, simulates explicit coding schemes exactly with density
//! matrices, and evaluates the many-sender rate-sum formula against a
//! brute-force entropy oracle.
//!
//! Modules:
//! - [`linalg`]: complex matrices, eigendecomposition, partial trace,
//!   entropies, seeded random states (dimensions up to 256).
//! - [`channels`]: permutation operators, the adder channel, Bell/GHZ
//!   resources, Pauli encodings, the assisted-channel output map.
//! - [`info`]: Holevo and conditional Holevo information, the rank-two
//!   mixture entropy, the entropy sandwich, the measurement-entropy bound.
//! - [`capacity`]: rate regions, pentagons, convex hulls, the unassisted
//!   upper-bound expression, and the multistart rate-sum optimizer.
//! - [`codes`]: classical adder codes, zero-error checking, dense coding,
//!   the GHZ phase-bit lift, and the shared-randomness wrapper.
//! - [`schur`]: many-sender multiplicities, the rate-sum formula in exact
//!   and log-space arithmetic, and the small-L brute-force oracle.

// Indexed loops mirror the matrix arithmetic and keep the kernels auditable.
#![allow(clippy::needless_range_loop)]

pub mod capacity;
pub mod channels;
pub mod codes;
mod error;
pub mod info;
pub mod linalg;
pub mod schur;

pub use error::{Error, Result};

pub use capacity::{
    convex_hull_union, named_region, optimize_rate_sum, pentagon, time_sharing_region,
    unassisted_upper_expr, EncodingLabel, EncodingMode, NamedRegion, OptimizeOutcome, RateRegion,
    Scenario, ScenarioKind, TimeSharingParams,
};
pub use channels::{
    adder_channel, apply_channel, assisted_output, bell_states, ghz_state, max_entangled_resource,
    partial_entangled_resource, pauli_channels, permutation_operator, PermutationOperator,
    QuantumChannel, SharedResource,
};
pub use codes::{
    classical_adder_output, classical_code_performance, dense_coding_code, error_probability,
    ghz_lift, inverse_decoder, wrap_shared_randomness, zero_error_check, AdderCode, AssistedCode,
    CodePerformance, DecodeLabel, SharedRandomnessCode, ZeroErrorReport,
};
pub use info::{
    conditional_holevo_1, conditional_holevo_2, entropy_sandwich, holevo,
    measurement_decomposition, pair_mixture_entropy, Ensemble, ProductEnsemble,
};
pub use linalg::{
    binary_entropy, hermitian_eigensystem, kron, partial_trace, psd_sqrt, random_density,
    random_unitary, shannon_entropy, von_neumann_entropy, ComplexMatrix, DensityMatrix, PureState,
};
pub use schur::{
    classical_rate_sum, log_space_weights, quantum_rate_sum, rate_sum_table, tau_entropy_oracle,
    tau_state, RateSumRow, RateSumTable, SchurSpectrum,
};
