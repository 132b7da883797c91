//! Double-precision complex linear algebra for registers of up to eight
//! qubits: Kronecker products, Hermitian eigendecomposition, partial trace,
//! PSD square roots, entropies, and seeded random states.

mod eigen;
mod entropy;
mod matrix;
mod random;
mod state;

pub use eigen::{hermitian_eigensystem, psd_sqrt, reconstruct, Eigensystem, HERMITICITY_TOL};
pub use entropy::{binary_entropy, shannon_entropy, von_neumann_entropy};
pub use matrix::{kron, ComplexMatrix, MAX_KRON_ENTRIES};
pub use random::{random_density, random_pure, random_unitary};
pub use state::{partial_trace, DensityMatrix, PureState, EIGENVALUE_FLOOR, STATE_TOL};
