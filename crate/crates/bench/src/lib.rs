//! Shared fixtures for the kernel benchmarks.

use qadder::capacity::{EncodingLabel, EncodingMode, Scenario, ScenarioKind};
use qadder::info::ProductEnsemble;
use qadder::linalg::{random_density, DensityMatrix};

pub fn mixed_state(dim: usize) -> DensityMatrix {
    random_density(dim, 0xbead).expect("valid dims")
}

/// The uniform Pauli ensemble on the two-ebit scenario, the main Holevo
/// workload of the optimizer.
pub fn pauli_ensemble() -> ProductEnsemble {
    let scenario = Scenario::new(ScenarioKind::TwoEbit, EncodingMode::Pauli).expect("valid");
    let side: Vec<(f64, EncodingLabel)> = (0..4).map(|i| (0.25, EncodingLabel::Pauli(i))).collect();
    qadder::capacity::scenario_ensemble(&scenario, &side, &side).expect("valid ensemble")
}
