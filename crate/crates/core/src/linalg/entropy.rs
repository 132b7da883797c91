//! Shannon and von Neumann entropies, in bits.

use crate::error::{Error, Result};
use crate::linalg::eigen::hermitian_eigensystem;
use crate::linalg::state::DensityMatrix;

/// Below this an eigenvalue disqualifies the input as a state.
const REJECT_FLOOR: f64 = -1e-8;

#[inline]
fn plogp(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        p * p.log2()
    }
}

/// Shannon entropy −Σ p log₂ p of a probability vector.
///
/// Entries may dip to −1e−12 (clamped to zero); the sum must be 1 within
/// 1e−9.
pub fn shannon_entropy(probabilities: &[f64]) -> Result<f64> {
    let mut sum = 0.0;
    for &p in probabilities {
        if p < -1e-12 {
            return Err(Error::InvalidDistribution(format!(
                "negative entry {p:.3e}"
            )));
        }
        sum += p;
    }
    if (sum - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidDistribution(format!(
            "entries sum to {sum}, deviation {:.3e}",
            (sum - 1.0).abs()
        )));
    }
    let h: f64 = probabilities.iter().map(|&p| -plogp(p.max(0.0))).sum();
    Ok(h.max(0.0))
}

/// Binary entropy H(p, 1−p) in bits.
pub fn binary_entropy(p: f64) -> f64 {
    (-plogp(p) - plogp(1.0 - p)).max(0.0)
}

/// Von Neumann entropy −Σ λ log₂ λ over the eigenvalues of ρ.
///
/// Eigenvalues in [−1e−10, 0] are clamped to zero; anything below −1e−8 is
/// rejected as not a state.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let eig = hermitian_eigensystem(rho.matrix())?;
    let mut h = 0.0;
    for &lambda in &eig.values {
        if lambda < REJECT_FLOOR {
            return Err(Error::InvalidState(format!(
                "eigenvalue {lambda:.3e} below {REJECT_FLOOR:.1e}"
            )));
        }
        // everything surviving the rejection check but at or below zero is
        // rounding noise around an exact zero
        h -= plogp(lambda.max(0.0));
    }
    Ok(h.max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::ComplexMatrix;
    use crate::linalg::state::PureState;

    #[test]
    fn shannon_entropy_known_values() {
        assert_eq!(shannon_entropy(&[1.0, 0.0]).unwrap(), 0.0);
        assert!((shannon_entropy(&[0.5, 0.5]).unwrap() - 1.0).abs() < 1e-14);
        // closed form: 2·(1/4·2) + 1/2·1 = 1.5
        assert!((shannon_entropy(&[0.25, 0.5, 0.25]).unwrap() - 1.5).abs() < 1e-14);
    }

    #[test]
    fn shannon_entropy_rejects_bad_sum() {
        assert!(shannon_entropy(&[0.5, 0.6]).is_err());
        assert!(shannon_entropy(&[1.1, -0.1]).is_err());
    }

    #[test]
    fn pure_state_has_zero_entropy() {
        let rho = DensityMatrix::from_pure(&PureState::bloch(0.7, 1.9));
        assert!(von_neumann_entropy(&rho).unwrap() < 1e-12);
    }

    #[test]
    fn maximally_mixed_qubit_has_one_bit() {
        let rho = DensityMatrix::maximally_mixed(2);
        assert!((von_neumann_entropy(&rho).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn quarter_three_quarter_entropy() {
        // H(1/4, 3/4) = 2 − (3/4)·log₂3 ≈ 0.811278
        let rho = DensityMatrix::new(ComplexMatrix::diag(&[0.25, 0.75])).unwrap();
        let h = von_neumann_entropy(&rho).unwrap();
        assert!((h - 0.811_278_124_459_133).abs() < 1e-12);
    }

    #[test]
    fn binary_entropy_endpoints() {
        assert_eq!(binary_entropy(0.0), 0.0);
        assert_eq!(binary_entropy(1.0), 0.0);
        assert!((binary_entropy(0.5) - 1.0).abs() < 1e-15);
    }
}
