//! Pure states and density matrices.
//!
//! Qubit registers are ordered sender 1, sender 2, …, then receiver factors,
//! with big-endian basis indexing: the first factor is the most significant
//! digit of the computational-basis index.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::eigen::hermitian_eigensystem;
use crate::linalg::matrix::ComplexMatrix;

/// Acceptance window for the trace and Hermiticity of a density matrix.
pub const STATE_TOL: f64 = 1e-10;
/// Eigenvalues above this (negative) floor count as zero.
pub const EIGENVALUE_FLOOR: f64 = -1e-10;
/// Norm tolerance for pure states.
pub const PURE_NORM_TOL: f64 = 1e-12;

/// A normalized state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Build from amplitudes, requiring unit norm within 1e−12.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm_sq: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sq.sqrt() - 1.0).abs() > PURE_NORM_TOL {
            return Err(Error::InvalidState(format!(
                "pure state norm {} is not 1",
                norm_sq.sqrt()
            )));
        }
        Ok(Self { amplitudes })
    }

    /// Build by normalizing a nonzero amplitude vector.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-14 {
            return Err(Error::InvalidState(
                "cannot normalize the zero vector".into(),
            ));
        }
        Ok(Self {
            amplitudes: amplitudes.into_iter().map(|z| z / norm).collect(),
        })
    }

    /// Computational basis vector |index⟩ in the given dimension.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut amplitudes = vec![Complex64::ZERO; dim];
        amplitudes[index] = Complex64::ONE;
        Self { amplitudes }
    }

    /// Bloch-sphere qubit cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩.
    pub fn bloch(theta: f64, phi: f64) -> Self {
        let half = theta / 2.0;
        Self {
            amplitudes: vec![
                Complex64::new(half.cos(), 0.0),
                Complex64::from_polar(half.sin(), phi),
            ],
        }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(format!(
                "inner product of dims {} and {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// |self⟩ ⊗ |other⟩.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut amplitudes = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                amplitudes.push(a * b);
            }
        }
        Self { amplitudes }
    }

    /// Projector |self⟩⟨self|.
    pub fn projector(&self) -> ComplexMatrix {
        let n = self.dim();
        let mut out = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, self.amplitudes[i] * self.amplitudes[j].conj());
            }
        }
        out
    }

    /// Apply a matrix to the state; the result is renormalized only if the
    /// matrix is unitary to begin with (no normalization is forced here).
    pub fn apply(&self, m: &ComplexMatrix) -> Result<Self> {
        if m.cols() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "applying {}x{} to dim-{} vector",
                m.rows(),
                m.cols(),
                self.dim()
            )));
        }
        let mut amplitudes = vec![Complex64::ZERO; m.rows()];
        for i in 0..m.rows() {
            let mut acc = Complex64::ZERO;
            for j in 0..m.cols() {
                acc += m.get(i, j) * self.amplitudes[j];
            }
            amplitudes[i] = acc;
        }
        Ok(Self { amplitudes })
    }
}

/// A Hermitian, trace-one, positive-semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validating constructor: Hermitian and unit trace within 1e−10, minimum
    /// eigenvalue ≥ −1e−10.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if matrix.rows() != matrix.cols() {
            return Err(Error::DimensionMismatch(format!(
                "density matrix must be square, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let dev = matrix.hermiticity_deviation();
        if dev > STATE_TOL {
            return Err(Error::NotHermitian {
                deviation: dev,
                tolerance: STATE_TOL,
            });
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(Error::InvalidState(format!("trace {} is not 1", tr)));
        }
        let eig = hermitian_eigensystem(&matrix)?;
        if let Some(&min) = eig.values.first() {
            if min < EIGENVALUE_FLOOR {
                return Err(Error::InvalidState(format!(
                    "minimum eigenvalue {min:.3e} below {EIGENVALUE_FLOOR:.1e}"
                )));
            }
        }
        Ok(Self {
            dim: matrix.rows(),
            matrix,
        })
    }

    /// Internal constructor for matrices that are valid by construction
    /// (channel outputs, mixtures of states, partial traces). Skips the
    /// eigenvalue check; debug builds still verify Hermiticity and trace.
    pub(crate) fn trusted(matrix: ComplexMatrix) -> Self {
        debug_assert!(matrix.hermiticity_deviation() <= 1e-9);
        debug_assert!((matrix.trace().re - 1.0).abs() <= 1e-9);
        Self {
            dim: matrix.rows(),
            matrix,
        }
    }

    pub fn from_pure(state: &PureState) -> Self {
        Self {
            dim: state.dim(),
            matrix: state.projector(),
        }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            dim,
            matrix: ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64),
        }
    }

    /// Convex mixture Σ w_i ρ_i. Weights must be nonnegative and sum to one
    /// within 1e−9.
    pub fn mixture(parts: &[(f64, &DensityMatrix)]) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidParameter("empty mixture".into()));
        }
        let dim = parts[0].1.dim;
        let total: f64 = parts.iter().map(|(w, _)| w).sum();
        if (total - 1.0).abs() > 1e-9 || parts.iter().any(|(w, _)| *w < -1e-12) {
            return Err(Error::InvalidDistribution(format!(
                "mixture weights sum to {total}"
            )));
        }
        let mut acc = ComplexMatrix::zeros(dim, dim);
        for (w, rho) in parts {
            if rho.dim != dim {
                return Err(Error::DimensionMismatch(
                    "mixture of states with different dimensions".into(),
                ));
            }
            acc = acc.add(&rho.matrix.scale_real(*w))?;
        }
        Ok(Self::trusted(acc))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Tr(ρ σ), real because both operands are Hermitian.
    pub fn overlap(&self, other: &DensityMatrix) -> Result<f64> {
        Ok(self.matrix.trace_product(&other.matrix)?.re)
    }

    /// Conjugate by a unitary: UρU†.
    pub fn conjugated(&self, u: &ComplexMatrix) -> Result<Self> {
        Ok(Self::trusted(u.conjugate_with(&self.matrix)?))
    }
}

/// Partial trace over the complement of `keep`.
///
/// `factor_dims` lists the tensor factor dimensions in register order (their
/// product must equal the state dimension); `keep` is a strictly increasing
/// set of factor indices. Keeping every factor returns the state unchanged;
/// keeping none yields the 1×1 state with entry 1.
pub fn partial_trace(
    rho: &DensityMatrix,
    factor_dims: &[usize],
    keep: &[usize],
) -> Result<DensityMatrix> {
    let total: usize = factor_dims.iter().product();
    if total != rho.dim() {
        return Err(Error::DimensionMismatch(format!(
            "factor dims {:?} multiply to {}, state has dim {}",
            factor_dims,
            total,
            rho.dim()
        )));
    }
    if keep.windows(2).any(|w| w[0] >= w[1]) || keep.iter().any(|&k| k >= factor_dims.len()) {
        return Err(Error::InvalidParameter(format!(
            "keep set {:?} must be strictly increasing indices into {} factors",
            keep,
            factor_dims.len()
        )));
    }

    let kept_dims: Vec<usize> = keep.iter().map(|&k| factor_dims[k]).collect();
    let traced: Vec<usize> = (0..factor_dims.len())
        .filter(|i| !keep.contains(i))
        .collect();
    let traced_dims: Vec<usize> = traced.iter().map(|&k| factor_dims[k]).collect();
    let out_dim: usize = kept_dims.iter().product::<usize>().max(1);
    let traced_total: usize = traced_dims.iter().product::<usize>().max(1);

    // Strides of each factor in the big-endian flat index.
    let mut strides = vec![1usize; factor_dims.len()];
    for i in (0..factor_dims.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * factor_dims[i + 1];
    }

    let flat_index = |kept_idx: usize, traced_idx: usize| -> usize {
        let mut idx = 0;
        let mut rem = kept_idx;
        for &k in keep.iter().rev() {
            let d = factor_dims[k];
            idx += (rem % d) * strides[k];
            rem /= d;
        }
        let mut rem = traced_idx;
        for &k in traced.iter().rev() {
            let d = factor_dims[k];
            idx += (rem % d) * strides[k];
            rem /= d;
        }
        idx
    };

    let mut out = ComplexMatrix::zeros(out_dim, out_dim);
    for a in 0..out_dim {
        for b in 0..out_dim {
            let mut acc = Complex64::ZERO;
            for t in 0..traced_total {
                acc += rho.matrix().get(flat_index(a, t), flat_index(b, t));
            }
            out.set(a, b, acc);
        }
    }
    Ok(DensityMatrix::trusted(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::kron;

    #[test]
    fn bloch_state_is_normalized() {
        let s = PureState::bloch(1.1, 2.3);
        let n: f64 = s.amplitudes().iter().map(|z| z.norm_sqr()).sum();
        assert!((n - 1.0).abs() < 1e-14);
    }

    #[test]
    fn density_matrix_rejects_bad_trace() {
        let m = ComplexMatrix::diag(&[0.7, 0.7]);
        assert!(DensityMatrix::new(m).is_err());
    }

    #[test]
    fn density_matrix_rejects_negative_eigenvalue() {
        let m = ComplexMatrix::diag(&[1.5, -0.5]);
        assert!(matches!(DensityMatrix::new(m), Err(Error::InvalidState(_))));
    }

    #[test]
    fn partial_trace_of_product_state() {
        let rho1 = DensityMatrix::new(ComplexMatrix::diag(&[0.25, 0.75])).unwrap();
        let rho2 = DensityMatrix::from_pure(&PureState::bloch(0.9, 0.3));
        let joint = DensityMatrix::trusted(kron(rho1.matrix(), rho2.matrix()).unwrap());
        let back = partial_trace(&joint, &[2, 2], &[0]).unwrap();
        assert!(back.matrix().max_abs_diff(rho1.matrix()) < 1e-12);
        let back2 = partial_trace(&joint, &[2, 2], &[1]).unwrap();
        assert!(back2.matrix().max_abs_diff(rho2.matrix()) < 1e-12);
    }

    #[test]
    fn partial_trace_of_bell_state_is_maximally_mixed() {
        let inv = std::f64::consts::FRAC_1_SQRT_2;
        let phi_plus = PureState::new(vec![
            Complex64::new(inv, 0.0),
            Complex64::ZERO,
            Complex64::ZERO,
            Complex64::new(inv, 0.0),
        ])
        .unwrap();
        let rho = DensityMatrix::from_pure(&phi_plus);
        let marginal = partial_trace(&rho, &[2, 2], &[0]).unwrap();
        assert!(
            marginal
                .matrix()
                .max_abs_diff(DensityMatrix::maximally_mixed(2).matrix())
                < 1e-12
        );
    }

    #[test]
    fn tracing_everything_yields_scalar_one() {
        let rho = DensityMatrix::maximally_mixed(4);
        let scalar = partial_trace(&rho, &[2, 2], &[]).unwrap();
        assert_eq!(scalar.dim(), 1);
        assert!((scalar.matrix().get(0, 0).re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn partial_trace_rejects_dim_mismatch() {
        let rho = DensityMatrix::maximally_mixed(4);
        assert!(partial_trace(&rho, &[2, 3], &[0]).is_err());
    }
}
