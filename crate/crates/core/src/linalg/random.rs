//! Seeded random unitaries and density matrices.
//!
//! Sampling is deterministic given the seed; unitaries are Haar-distributed
//! via Gram-Schmidt orthonormalization of a Ginibre matrix (independent
//! standard complex Gaussian entries), which makes the triangular factor's
//! diagonal positive and the orthogonal factor Haar.

use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::error::Result;
use crate::linalg::matrix::ComplexMatrix;
use crate::linalg::state::DensityMatrix;

/// Standard complex Gaussian via Box-Muller, variance 1/2 per component.
fn complex_gaussian(rng: &mut ChaCha12Rng) -> Complex64 {
    let u1: f64 = 1.0 - rng.random::<f64>(); // (0, 1]
    let u2: f64 = rng.random();
    let r = (-2.0 * u1.ln()).sqrt();
    let angle = std::f64::consts::TAU * u2;
    Complex64::new(r * angle.cos(), r * angle.sin()) * std::f64::consts::FRAC_1_SQRT_2
}

fn ginibre(dim: usize, rng: &mut ChaCha12Rng) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            m.set(i, j, complex_gaussian(rng));
        }
    }
    m
}

/// Haar-random unitary of the given dimension, deterministic in the seed.
pub fn random_unitary(dim: usize, seed: u64) -> ComplexMatrix {
    assert!(dim >= 1, "random_unitary needs dim >= 1");
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let g = ginibre(dim, &mut rng);
    // Modified Gram-Schmidt on columns.
    let mut cols: Vec<Vec<Complex64>> = (0..dim)
        .map(|j| (0..dim).map(|i| g.get(i, j)).collect())
        .collect();
    for j in 0..dim {
        for k in 0..j {
            let proj: Complex64 = cols[k]
                .iter()
                .zip(&cols[j])
                .map(|(a, b)| a.conj() * b)
                .sum();
            for i in 0..dim {
                let correction = proj * cols[k][i];
                cols[j][i] -= correction;
            }
        }
        let norm: f64 = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in &mut cols[j] {
            *z /= norm;
        }
    }
    let mut u = ComplexMatrix::zeros(dim, dim);
    for j in 0..dim {
        for i in 0..dim {
            u.set(i, j, cols[j][i]);
        }
    }
    u
}

/// Full-rank random density matrix GG†/Tr(GG†), deterministic in the seed.
pub fn random_density(dim: usize, seed: u64) -> Result<DensityMatrix> {
    assert!(dim >= 1, "random_density needs dim >= 1");
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let g = ginibre(dim, &mut rng);
    let gram = g.mul(&g.adjoint())?;
    let trace = gram.trace().re;
    Ok(DensityMatrix::trusted(
        gram.scale_real(1.0 / trace).hermitized(),
    ))
}

/// Random pure state: first column of a Haar unitary.
pub fn random_pure(dim: usize, seed: u64) -> crate::linalg::state::PureState {
    let u = random_unitary(dim, seed);
    let amplitudes: Vec<Complex64> = (0..dim).map(|i| u.get(i, 0)).collect();
    crate::linalg::state::PureState::new(amplitudes).expect("Haar column is normalized")
}
