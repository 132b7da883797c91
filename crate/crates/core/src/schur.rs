//! Many-sender rate sums: the spin-block multiplicities and weights of the
//! permutation average on L qubit pairs, the closed-form rate-sum formula,
//! the brute-force entropy oracle for small L, and the classical binomial
//! baseline.
//!
//! Two arithmetic modes: exact integer binomials up to L = 64, and
//! log-space factorials (with compensated summation) beyond.

use num_complex::Complex64;

use crate::channels::all_permutations;
use crate::error::{Error, Result};
use crate::linalg::{shannon_entropy, von_neumann_entropy, ComplexMatrix, DensityMatrix};

/// Spin-block data for L senders: block k (k = 0 is the top block, with
/// multiplicity 1) has permutation multiplicity d_k = C(L,k) − C(L,k−1),
/// spin dimension L − 2k + 1, and weight p_k = d_k (L−2k+1) 2^{−L}.
#[derive(Debug, Clone)]
pub struct SchurSpectrum {
    senders: usize,
    multiplicities: Vec<u128>,
    spin_dims: Vec<usize>,
    weights: Vec<f64>,
}

impl SchurSpectrum {
    /// Exact integer mode, for 1 ≤ L ≤ 64.
    pub fn new(senders: usize) -> Result<Self> {
        if senders == 0 {
            return Err(Error::InvalidParameter("need at least one sender".into()));
        }
        if senders > 64 {
            return Err(Error::ExactModeOverflow { senders });
        }
        let blocks = senders / 2 + 1;
        let mut multiplicities = Vec::with_capacity(blocks);
        let mut spin_dims = Vec::with_capacity(blocks);
        let mut weights = Vec::with_capacity(blocks);
        let total = 1u128 << senders;
        for k in 0..blocks {
            let d = binomial(senders, k) - if k == 0 { 0 } else { binomial(senders, k - 1) };
            let spin = senders - 2 * k + 1;
            multiplicities.push(d);
            spin_dims.push(spin);
            weights.push((d * spin as u128) as f64 / total as f64);
        }
        Ok(Self {
            senders,
            multiplicities,
            spin_dims,
            weights,
        })
    }

    pub fn senders(&self) -> usize {
        self.senders
    }

    pub fn multiplicities(&self) -> &[u128] {
        &self.multiplicities
    }

    pub fn spin_dims(&self) -> &[usize] {
        &self.spin_dims
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Σ_k d_k (L−2k+1), which must equal 2^L.
    pub fn dimension_count(&self) -> u128 {
        self.multiplicities
            .iter()
            .zip(&self.spin_dims)
            .map(|(&d, &s)| d * s as u128)
            .sum()
    }
}

/// Exact binomial coefficient in u128 (valid through n = 64 and beyond).
fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 0..k {
        c = c * (n - i) as u128 / (i as u128 + 1);
    }
    c
}

/// Kahan-compensated sum.
fn compensated_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut carry = 0.0;
    for v in values {
        let y = v - carry;
        let t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    sum
}

/// ln k! for k = 0..=n by direct compensated summation of logarithms.
fn ln_factorials(n: usize) -> Vec<f64> {
    let mut table = Vec::with_capacity(n + 1);
    let mut sum = 0.0;
    let mut carry = 0.0;
    table.push(0.0);
    for k in 1..=n {
        let y = (k as f64).ln() - carry;
        let t = sum + y;
        carry = (t - sum) - y;
        sum = t;
        table.push(sum);
    }
    table
}

/// Block weights p_k computed in log space; usable for any L ≥ 1.
pub fn log_space_weights(senders: usize) -> Vec<f64> {
    assert!(senders >= 1, "need at least one sender");
    let lnfac = ln_factorials(senders);
    let ln2 = std::f64::consts::LN_2;
    (0..=senders / 2)
        .map(|k| {
            let ln_choose = lnfac[senders] - lnfac[k] - lnfac[senders - k];
            let spin = (senders - 2 * k + 1) as f64;
            // d_k = C(L,k)·(L−2k+1)/(L−k+1), an exact identity that avoids
            // subtracting nearly equal binomials.
            let ln_d = ln_choose + spin.ln() - ((senders - k + 1) as f64).ln();
            (ln_d + spin.ln() - senders as f64 * ln2).exp()
        })
        .collect()
}

/// The assisted rate sum ΣR = 2L − H(p) − Σ_k p_k log₂(d_k²), evaluated
/// exactly for L ≤ 64 and in log space beyond.
pub fn quantum_rate_sum(senders: usize) -> f64 {
    assert!(senders >= 1, "need at least one sender");
    if senders <= 64 {
        let spectrum = SchurSpectrum::new(senders).expect("within exact range");
        let h = shannon_entropy(spectrum.weights()).expect("weights are a distribution");
        let penalty = compensated_sum(
            spectrum
                .weights()
                .iter()
                .zip(spectrum.multiplicities())
                .map(|(&p, &d)| p * 2.0 * (d as f64).log2()),
        );
        return 2.0 * senders as f64 - h - penalty;
    }

    let lnfac = ln_factorials(senders);
    let ln2 = std::f64::consts::LN_2;
    let log2e = std::f64::consts::LOG2_E;
    let terms: Vec<(f64, f64)> = (0..=senders / 2)
        .map(|k| {
            let ln_choose = lnfac[senders] - lnfac[k] - lnfac[senders - k];
            let spin = (senders - 2 * k + 1) as f64;
            let ln_d = ln_choose + spin.ln() - ((senders - k + 1) as f64).ln();
            let ln_p = ln_d + spin.ln() - senders as f64 * ln2;
            (ln_p.exp(), ln_d * log2e)
        })
        .collect();
    let entropy = compensated_sum(
        terms
            .iter()
            .map(|&(p, _)| if p > 0.0 { -p * p.log2() } else { 0.0 }),
    );
    let penalty = compensated_sum(terms.iter().map(|&(p, log2_d)| 2.0 * p * log2_d));
    2.0 * senders as f64 - entropy - penalty
}

/// The permutation-averaged maximally entangled state on L sender qubits
/// and L receiver qubits; the brute-force oracle behind the rate-sum
/// formula, limited to L ≤ 4 (dimension 256).
pub fn tau_state(senders: usize) -> Result<DensityMatrix> {
    if senders == 0 {
        return Err(Error::InvalidParameter("need at least one sender".into()));
    }
    if senders > 4 {
        return Err(Error::TooLarge(format!(
            "tau state for {senders} senders needs dimension {}",
            1u64 << (2 * senders)
        )));
    }
    let half = 1usize << senders;
    let dim = half * half;
    let amp = 1.0 / (half as f64).sqrt();

    let perms = all_permutations(senders);
    let weight = 1.0 / perms.len() as f64;
    let mut tau = ComplexMatrix::zeros(dim, dim);
    for perm in &perms {
        // (F_π ⊗ 1)|Φ⟩ has amplitude 2^{−L/2} at |π·x⟩⊗|x⟩ for every x.
        let permute = |x: usize| -> usize {
            let mut y = 0usize;
            for l in 0..senders {
                y = (y << 1) | ((x >> (senders - 1 - perm[l])) & 1);
            }
            y
        };
        let support: Vec<usize> = (0..half).map(|x| permute(x) * half + x).collect();
        for &row in &support {
            for &col in &support {
                let value = tau.get(row, col) + Complex64::new(weight * amp * amp, 0.0);
                tau.set(row, col, value);
            }
        }
    }
    Ok(DensityMatrix::trusted(tau))
}

/// Ground truth for the rate-sum formula: 2L − entropy(τ) must reproduce
/// `quantum_rate_sum` for L ≤ 4.
pub fn tau_entropy_oracle(senders: usize) -> Result<f64> {
    von_neumann_entropy(&tau_state(senders)?)
}

/// The unassisted baseline: the entropy of Binomial(L, ½) in bits.
pub fn classical_rate_sum(senders: usize) -> f64 {
    assert!(senders >= 1, "need at least one sender");
    if senders <= 64 {
        let total = (1u128 << senders) as f64;
        let probs: Vec<f64> = (0..=senders)
            .map(|j| binomial(senders, j) as f64 / total)
            .collect();
        return shannon_entropy(&probs).expect("binomial weights are a distribution");
    }
    let lnfac = ln_factorials(senders);
    let ln2 = std::f64::consts::LN_2;
    compensated_sum((0..=senders).map(|j| {
        let ln_p = lnfac[senders] - lnfac[j] - lnfac[senders - j] - senders as f64 * ln2;
        let p = ln_p.exp();
        if p > 0.0 {
            -p * p.log2()
        } else {
            0.0
        }
    }))
}

/// One row of the achievable-rate-sum table.
#[derive(Debug, Clone, PartialEq)]
pub struct RateSumRow {
    pub senders: usize,
    pub quantum_sum: f64,
    pub classical_sum: f64,
    /// The large-L slope line (3/2)·log₂ L for plotting.
    pub asymptote: f64,
    /// Brute-force check 2L − H(τ), available for L ≤ 4.
    pub oracle: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RateSumTable {
    pub rows: Vec<RateSumRow>,
}

/// Tabulate assisted and unassisted rate sums for the given sender counts.
pub fn rate_sum_table(sender_counts: &[usize]) -> Result<RateSumTable> {
    if sender_counts.is_empty() {
        return Err(Error::InvalidParameter("empty sender list".into()));
    }
    let mut rows = Vec::with_capacity(sender_counts.len());
    for &l in sender_counts {
        if l == 0 {
            return Err(Error::InvalidParameter("sender counts start at 1".into()));
        }
        let quantum_sum = quantum_rate_sum(l);
        let classical_sum = classical_rate_sum(l);
        let oracle = if l <= 4 {
            Some(2.0 * l as f64 - tau_entropy_oracle(l)?)
        } else {
            None
        };
        debug_assert!(quantum_sum >= classical_sum);
        rows.push(RateSumRow {
            senders: l,
            quantum_sum,
            classical_sum,
            asymptote: 1.5 * (l as f64).log2(),
            oracle,
        });
    }
    Ok(RateSumTable { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{apply_channel, pauli_matrix, permutation_operator, QuantumChannel};
    use crate::linalg::kron;

    #[test]
    fn spectrum_small_cases() {
        let s2 = SchurSpectrum::new(2).unwrap();
        assert_eq!(s2.multiplicities(), &[1, 1]);
        assert_eq!(s2.spin_dims(), &[3, 1]);
        assert!((s2.weights()[0] - 0.75).abs() < 1e-15);
        assert!((s2.weights()[1] - 0.25).abs() < 1e-15);

        let s3 = SchurSpectrum::new(3).unwrap();
        assert_eq!(s3.multiplicities(), &[1, 2]);
        assert!((s3.weights()[0] - 0.5).abs() < 1e-15);
        assert!((s3.weights()[1] - 0.5).abs() < 1e-15);

        let s4 = SchurSpectrum::new(4).unwrap();
        assert_eq!(s4.multiplicities(), &[1, 3, 2]);
        assert_eq!(s4.dimension_count(), 16);
    }

    #[test]
    fn dimension_identity_exact_up_to_64() {
        for l in 1..=64 {
            let s = SchurSpectrum::new(l).unwrap();
            assert_eq!(s.dimension_count(), 1u128 << l, "L = {l}");
            let total: f64 = s.weights().iter().sum();
            assert!((total - 1.0).abs() < 1e-12, "L = {l}: weights sum {total}");
            assert!(s.weights().iter().all(|&p| p > 0.0));
        }
    }

    #[test]
    fn exact_mode_overflow_redirects() {
        assert!(matches!(
            SchurSpectrum::new(65),
            Err(Error::ExactModeOverflow { senders: 65 })
        ));
    }

    #[test]
    fn log_space_weights_match_exact_mode() {
        for l in [8usize, 33, 64] {
            let exact = SchurSpectrum::new(l).unwrap();
            let logs = log_space_weights(l);
            for (a, b) in exact.weights().iter().zip(&logs) {
                assert!((a - b).abs() < 1e-12);
            }
        }
        let big: f64 = log_space_weights(3000).iter().sum();
        assert!((big - 1.0).abs() < 1e-9);
    }

    #[test]
    fn rate_sum_known_values() {
        assert!((quantum_rate_sum(1) - 2.0).abs() < 1e-12);
        assert!((quantum_rate_sum(2) - 3.188_721_875_540_867).abs() < 1e-12);
        assert!((quantum_rate_sum(3) - 4.0).abs() < 1e-12);
        // arbitrated by the brute-force oracle below
        assert!((quantum_rate_sum(4) - 4.600_602_529_652_3).abs() < 1e-9);
    }

    #[test]
    fn tau_oracle_matches_formula() {
        for l in 1..=4 {
            let oracle = 2.0 * l as f64 - tau_entropy_oracle(l).unwrap();
            assert!(
                (oracle - quantum_rate_sum(l)).abs() < 1e-9,
                "L = {l}: oracle {oracle} vs formula {}",
                quantum_rate_sum(l)
            );
        }
    }

    #[test]
    fn tau_small_cases() {
        // L = 1: no averaging, τ is the maximally entangled pure state
        let tau1 = tau_state(1).unwrap();
        assert!(von_neumann_entropy(&tau1).unwrap() < 1e-10);

        // L = 2: spectrum {3/4 once, 1/4 once} plus zeros
        let tau2 = tau_state(2).unwrap();
        let h = von_neumann_entropy(&tau2).unwrap();
        assert!((h - 0.811_278_124_459_133).abs() < 1e-10);
        let eig = crate::linalg::hermitian_eigensystem(tau2.matrix()).unwrap();
        let top: Vec<f64> = eig.values.iter().rev().take(3).copied().collect();
        assert!((top[0] - 0.75).abs() < 1e-12);
        assert!((top[1] - 0.25).abs() < 1e-12);
        assert!(top[2].abs() < 1e-12);
        assert!((tau2.matrix().trace().re - 1.0).abs() < 1e-12);
        assert!(tau2.matrix().hermiticity_deviation() < 1e-12);

        assert!(tau_state(5).is_err());
    }

    #[test]
    fn tau_matches_operator_construction() {
        // cross-check the index-based builder against explicit F_π ⊗ 1
        let senders = 2;
        let half = 1usize << senders;
        let dim = half * half;
        let amp = 1.0 / (half as f64).sqrt();
        let mut phi = vec![Complex64::ZERO; dim];
        for x in 0..half {
            phi[x * half + x] = Complex64::new(amp, 0.0);
        }
        let phi = crate::linalg::PureState::new(phi).unwrap();
        let id = ComplexMatrix::identity(half);
        let mut acc = ComplexMatrix::zeros(dim, dim);
        for perm in all_permutations(senders) {
            let f = permutation_operator(&perm, senders).unwrap();
            let lifted = kron(f.matrix(), &id).unwrap();
            let v = phi.apply(&lifted).unwrap();
            acc = acc.add(&v.projector()).unwrap();
        }
        let tau_ref = acc.scale_real(0.5);
        let tau = tau_state(senders).unwrap();
        assert!(tau.matrix().max_abs_diff(&tau_ref) < 1e-14);
    }

    #[test]
    fn classical_rate_sum_values() {
        assert!((classical_rate_sum(1) - 1.0).abs() < 1e-12);
        assert!((classical_rate_sum(2) - 1.5).abs() < 1e-12);
        // Gaussian-entropy sanity band at L = 20
        let approx = 0.5 * (std::f64::consts::PI * std::f64::consts::E * 10.0).log2();
        let value = classical_rate_sum(20);
        assert!(
            (value - approx).abs() < 0.05,
            "value {value} vs approx {approx}"
        );
    }

    #[test]
    fn rate_sum_slope_doubles_as_expected() {
        let q = quantum_rate_sum(1024) - quantum_rate_sum(512);
        assert!((q - 1.5).abs() < 0.1, "quantum slope {q}");
        let c = classical_rate_sum(1024) - classical_rate_sum(512);
        assert!((c - 0.5).abs() < 0.05, "classical slope {c}");
    }

    #[test]
    fn rate_sum_monotone_in_senders() {
        let mut previous = quantum_rate_sum(1);
        for l in 2..=4096 {
            let value = quantum_rate_sum(l);
            assert!(value > previous, "L = {l}: {value} <= {previous}");
            previous = value;
        }
    }

    #[test]
    fn table_rows_and_columns() {
        let table = rate_sum_table(&[1, 2, 3, 4]).unwrap();
        let quantum: Vec<f64> = table.rows.iter().map(|r| r.quantum_sum).collect();
        assert!((quantum[0] - 2.0).abs() < 1e-12);
        assert!((quantum[1] - 3.188_721_875_540_867).abs() < 1e-12);
        assert!((quantum[2] - 4.0).abs() < 1e-12);
        assert!((quantum[3] - 4.600_602_529_652_3).abs() < 1e-9);
        for row in &table.rows {
            assert!(row.quantum_sum >= row.classical_sum);
            let oracle = row.oracle.expect("oracle available for L <= 4");
            assert!((oracle - row.quantum_sum).abs() < 1e-9);
        }
        assert!(rate_sum_table(&[]).is_err());
    }

    #[test]
    fn pauli_modulated_signals_average_to_maximally_mixed() {
        // exhaustive for L <= 2
        for senders in [1usize, 2] {
            let half = 1usize << senders;
            let dim = half * half;
            let amp = 1.0 / (half as f64).sqrt();
            let mut phi = vec![Complex64::ZERO; dim];
            for x in 0..half {
                phi[x * half + x] = Complex64::new(amp, 0.0);
            }
            let phi = crate::linalg::PureState::new(phi).unwrap();
            let id_r = ComplexMatrix::identity(half);
            let perms = all_permutations(senders);

            let mut average = ComplexMatrix::zeros(dim, dim);
            let words = 4usize.pow(senders as u32);
            for word in 0..words {
                let mut pauli = ComplexMatrix::identity(1);
                let mut w = word;
                for _ in 0..senders {
                    pauli = kron(&pauli, &pauli_matrix(w % 4)).unwrap();
                    w /= 4;
                }
                let modulated = phi.apply(&kron(&pauli, &id_r).unwrap()).unwrap();
                let mut signal = ComplexMatrix::zeros(dim, dim);
                for perm in &perms {
                    let f = permutation_operator(perm, senders).unwrap();
                    let lifted = kron(f.matrix(), &id_r).unwrap();
                    let v = modulated.apply(&lifted).unwrap();
                    signal = signal.add(&v.projector()).unwrap();
                }
                average = average
                    .add(&signal.scale_real(1.0 / perms.len() as f64))
                    .unwrap();
            }
            average = average.scale_real(1.0 / words as f64);
            let mixed = DensityMatrix::maximally_mixed(dim);
            assert!(
                average.max_abs_diff(mixed.matrix()) < 1e-10,
                "L = {senders}"
            );
        }

        // L = 3 via the single-qubit twirl: depolarizing every sender share
        // of τ must leave the maximally mixed state
        let senders = 3;
        let tau = tau_state(senders).unwrap();
        let mut state = tau;
        for qubit in 0..senders {
            let mut kraus = Vec::with_capacity(4);
            for p in 0..4 {
                let mut op = ComplexMatrix::identity(1);
                for slot in 0..2 * senders {
                    let factor = if slot == qubit {
                        pauli_matrix(p).scale_real(0.5)
                    } else {
                        ComplexMatrix::identity(2)
                    };
                    op = kron(&op, &factor).unwrap();
                }
                kraus.push(op);
            }
            let twirl = QuantumChannel::new(kraus).unwrap();
            state = apply_channel(&twirl, &state).unwrap();
        }
        let mixed = DensityMatrix::maximally_mixed(64);
        assert!(state.matrix().max_abs_diff(mixed.matrix()) < 1e-10);
    }
}
