//! Entanglement-assisted block codes simulated exactly with density
//! matrices: the dense-coding corner code, the GHZ phase-bit lifting of
//! classical adder codes, and the exact error-probability functional.
//!
//! Blocks are simulated symbol by symbol with an independent resource per
//! symbol, matching the memoryless product form of the channel.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::channels::{
    apply_channel, assisted_output, bell_states, ghz_state, pauli_matrix, QuantumChannel,
    SharedResource,
};
use crate::codes::classical::{inverse_decoder, AdderCode, CodePerformance, Decoder};
use crate::error::{Error, Result};
use crate::linalg::{kron, ComplexMatrix, PureState};

/// What a decoding outcome means: a decoded message pair, or a designated
/// failure bucket for outcomes the decoder does not claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum DecodeLabel {
    Message(usize, usize),
    Fail,
}

/// A block code over a shared resource: per-symbol encoding channels for
/// every message and a decoding POVM on the block output space.
#[derive(Debug, Clone)]
pub struct AssistedCode {
    n: usize,
    resource: SharedResource,
    encoders1: Vec<Vec<QuantumChannel>>,
    encoders2: Vec<Vec<QuantumChannel>>,
    decoder_povm: Vec<(DecodeLabel, ComplexMatrix)>,
    rates: (f64, f64),
}

impl AssistedCode {
    pub fn new(
        n: usize,
        resource: SharedResource,
        encoders1: Vec<Vec<QuantumChannel>>,
        encoders2: Vec<Vec<QuantumChannel>>,
        decoder_povm: Vec<(DecodeLabel, ComplexMatrix)>,
        rates: (f64, f64),
    ) -> Result<Self> {
        if n == 0 || encoders1.is_empty() || encoders2.is_empty() {
            return Err(Error::InvalidParameter(
                "assisted code needs a block length and nonempty message sets".into(),
            ));
        }
        for enc in encoders1.iter().chain(&encoders2) {
            if enc.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "encoder covers {} symbols, block length is {n}",
                    enc.len()
                )));
            }
            if enc.iter().any(|ch| ch.in_dim() != 2 || ch.out_dim() != 2) {
                return Err(Error::DimensionMismatch(
                    "encoders must be single-qubit channels".into(),
                ));
            }
        }
        let block_dim = resource.total_dim().pow(n as u32);
        let mut sum = ComplexMatrix::zeros(block_dim, block_dim);
        for (_, element) in &decoder_povm {
            if element.rows() != block_dim || element.cols() != block_dim {
                return Err(Error::DimensionMismatch(format!(
                    "POVM element is {}x{}, block space has dim {block_dim}",
                    element.rows(),
                    element.cols()
                )));
            }
            if element.hermiticity_deviation() > 1e-9 {
                return Err(Error::NotHermitian {
                    deviation: element.hermiticity_deviation(),
                    tolerance: 1e-9,
                });
            }
            sum = sum.add(element)?;
        }
        let dev = sum.max_abs_diff(&ComplexMatrix::identity(block_dim));
        if dev > 1e-9 {
            return Err(Error::IncompletePovm(dev));
        }
        Ok(Self {
            n,
            resource,
            encoders1,
            encoders2,
            decoder_povm,
            rates,
        })
    }

    /// Swap in a different decoding POVM (revalidated).
    pub fn with_decoder(self, decoder_povm: Vec<(DecodeLabel, ComplexMatrix)>) -> Result<Self> {
        Self::new(
            self.n,
            self.resource,
            self.encoders1,
            self.encoders2,
            decoder_povm,
            self.rates,
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn resource(&self) -> &SharedResource {
        &self.resource
    }

    pub fn message_counts(&self) -> (usize, usize) {
        (self.encoders1.len(), self.encoders2.len())
    }

    pub fn rates(&self) -> (f64, f64) {
        self.rates
    }

    pub fn decoder_povm(&self) -> &[(DecodeLabel, ComplexMatrix)] {
        &self.decoder_povm
    }
}

/// Exact per-message error of an assisted code through a two-qubit channel:
/// the block output is the tensor product over symbols of the assisted
/// output followed by the channel (extended by the identity on the
/// receiver share), and the error is 1 − Tr(W D).
pub fn error_probability(code: &AssistedCode, channel: &QuantumChannel) -> Result<CodePerformance> {
    if channel.in_dim() != 4 || channel.out_dim() != 4 {
        return Err(Error::DimensionMismatch(
            "the transmission channel acts on the two sender qubits".into(),
        ));
    }
    let extended = channel.tensor_identity(code.resource.receiver_dim())?;

    let (m1, m2) = code.message_counts();
    let mut matrix = Vec::with_capacity(m1);
    for msg1 in 0..m1 {
        let mut row = Vec::with_capacity(m2);
        for msg2 in 0..m2 {
            let mut block: Option<ComplexMatrix> = None;
            for t in 0..code.n {
                let encoded = assisted_output(
                    &code.encoders1[msg1][t],
                    &code.encoders2[msg2][t],
                    &code.resource,
                )?;
                let out = apply_channel(&extended, &encoded)?;
                block = Some(match block {
                    None => out.matrix().clone(),
                    Some(acc) => kron(&acc, out.matrix())?,
                });
            }
            let w = block.expect("block length is at least 1");
            let mut success = 0.0;
            for (label, element) in &code.decoder_povm {
                if *label == DecodeLabel::Message(msg1, msg2) {
                    success += w.trace_product(element)?.re;
                }
            }
            row.push((1.0 - success).max(0.0));
        }
        matrix.push(row);
    }
    Ok(CodePerformance::from_matrix(matrix))
}

/// The corner (2, 0) code: sender 1 modulates a shared Bell pair with one
/// of the four Paulis, sender 2 does nothing, and the receiver measures in
/// the Bell basis. Bell states are channel fixed points, so all four
/// messages pass error-free.
pub fn dense_coding_code() -> AssistedCode {
    let bells = bell_states();
    let resource =
        SharedResource::new(bells[0].clone(), 1).expect("Bell pair with trivial receiver");
    let encoders1 = (0..4)
        .map(|i| vec![QuantumChannel::unitary(pauli_matrix(i)).expect("Pauli is unitary")])
        .collect();
    let encoders2 = vec![vec![QuantumChannel::identity(2)]];
    // Pauli_m ⊗ 1 maps Φ⁺ to the Bell state at this index.
    let bell_of_pauli = [0usize, 2, 3, 1];
    let decoder_povm = bell_of_pauli
        .iter()
        .enumerate()
        .map(|(message, &bell)| (DecodeLabel::Message(message, 0), bells[bell].projector()))
        .collect();
    AssistedCode::new(1, resource, encoders1, encoders2, decoder_povm, (2.0, 0.0))
        .expect("dense coding code is well formed")
}

/// The 2x2 block is (symbol-wise) sender1 ⊗ sender2 ⊗ receiver, dim 8.
/// CNOTs from the receiver qubit onto both channel qubits.
fn receiver_controlled_nots() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(8, 8);
    for s1 in 0..2usize {
        for s2 in 0..2usize {
            for r in 0..2usize {
                let col = s1 * 4 + s2 * 2 + r;
                let row = if r == 1 {
                    (1 - s1) * 4 + (1 - s2) * 2 + 1
                } else {
                    col
                };
                m.set(row, col, Complex64::ONE);
            }
        }
    }
    m
}

/// Basis vectors (|ab0⟩ ± |āb̄1⟩)/√2 of the phase subspaces.
fn phase_subspace_vector(a: usize, b: usize, positive: bool) -> PureState {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut amplitudes = vec![Complex64::ZERO; 8];
    amplitudes[a * 4 + b * 2] = Complex64::new(h, 0.0);
    amplitudes[(1 - a) * 4 + (1 - b) * 2 + 1] = Complex64::new(if positive { h } else { -h }, 0.0);
    PureState::new(amplitudes).expect("normalized")
}

/// Projectors onto the two phase subspaces (positive first).
pub fn phase_subspace_projectors() -> (ComplexMatrix, ComplexMatrix) {
    let mut pos = ComplexMatrix::zeros(8, 8);
    let mut neg = ComplexMatrix::zeros(8, 8);
    for a in 0..2 {
        for b in 0..2 {
            pos = pos
                .add(&phase_subspace_vector(a, b, true).projector())
                .expect("8x8");
            neg = neg
                .add(&phase_subspace_vector(a, b, false).projector())
                .expect("8x8");
        }
    }
    (pos, neg)
}

/// Per-symbol decoding POVM of the lifted code, indexed by
/// (phase bit c, symbol sum y): project onto a phase subspace, rotate the
/// negative branch back, apply the receiver-controlled NOTs, and read the
/// channel qubits in the computational basis.
fn lifted_symbol_povm() -> Vec<ComplexMatrix> {
    let (pos, neg) = phase_subspace_projectors();
    let cnots = receiver_controlled_nots();
    let id2 = ComplexMatrix::identity(2);
    let z = pauli_matrix(3);
    let correction = kron(&kron(&id2, &id2).expect("4x4"), &z).expect("8x8");

    let mut elements = Vec::with_capacity(6);
    for (c, subspace) in [(0usize, &pos), (1usize, &neg)] {
        // measurement branch: project, correct the phase, apply the CNOTs
        let branch = if c == 0 {
            cnots.mul(subspace).expect("8x8")
        } else {
            cnots
                .mul(&correction)
                .expect("8x8")
                .mul(subspace)
                .expect("8x8")
        };
        for y in 0..3usize {
            let mut readout = ComplexMatrix::zeros(8, 8);
            for u in 0..2usize {
                for v in 0..2usize {
                    if u + v != y {
                        continue;
                    }
                    let bits = PureState::basis(4, u * 2 + v).projector();
                    readout = readout.add(&kron(&bits, &id2).expect("8x8")).expect("8x8");
                }
            }
            // E = branch† · readout · branch
            let element = branch
                .adjoint()
                .mul(&readout)
                .expect("8x8")
                .mul(&branch)
                .expect("8x8");
            elements.push(element.hermitized());
        }
    }
    elements
}

/// Lift a classical adder code onto per-symbol GHZ resources: each sender
/// sends her bit as an X flip, sender 1 adds one extra phase bit per symbol
/// as a Z flip, and the receiver separates the phase subspaces before
/// reading the classical sums. The lifted rates are (1 + R1, R2) and the
/// lifted per-message error equals the base code's.
///
/// Uses the code's decoder table, or the inverse table when the code is
/// zero-error and carries none. Block lengths are capped at 2 so the block
/// space stays within the 256-dimension budget.
pub fn ghz_lift(base: &AdderCode) -> Result<AssistedCode> {
    let n = base.n();
    if n > 2 {
        return Err(Error::TooLarge(format!(
            "block length {n} needs dimension {} beyond the 256 cap",
            8usize.pow(n as u32)
        )));
    }
    let decoder: Decoder = match base.decoder() {
        Some(d) => d.clone(),
        None => inverse_decoder(base)?,
    };

    let phase_words = 1usize << n;
    let x = pauli_matrix(1);
    let z = pauli_matrix(3);
    let id2 = ComplexMatrix::identity(2);
    let symbol_unitary = |flip: u8, phase: usize| -> QuantumChannel {
        let mut u = id2.clone();
        if flip == 1 {
            u = x.mul(&u).expect("2x2");
        }
        if phase == 1 {
            u = z.mul(&u).expect("2x2");
        }
        QuantumChannel::unitary(u).expect("Pauli products are unitary")
    };

    let mut encoders1 = Vec::with_capacity(base.book1().len() * phase_words);
    for word in base.book1() {
        for c in 0..phase_words {
            let phase_bit = |t: usize| (c >> (n - 1 - t)) & 1;
            encoders1.push(
                (0..n)
                    .map(|t| symbol_unitary(word[t], phase_bit(t)))
                    .collect(),
            );
        }
    }
    let encoders2 = base
        .book2()
        .iter()
        .map(|word| (0..n).map(|t| symbol_unitary(word[t], 0)).collect())
        .collect();

    // Block POVM: tensor the per-symbol elements over all (c, y) words and
    // group them by the decoded message.
    let symbol_elements = lifted_symbol_povm();
    let mut grouped: BTreeMap<DecodeLabel, ComplexMatrix> = BTreeMap::new();
    let mut outcome = vec![0usize; n]; // index c*3 + y per symbol
    loop {
        let mut block: Option<ComplexMatrix> = None;
        for &idx in &outcome {
            let element = &symbol_elements[idx];
            block = Some(match block {
                None => element.clone(),
                Some(acc) => kron(&acc, element)?,
            });
        }
        let block = block.expect("n >= 1");

        let c_word: usize = outcome.iter().fold(0, |acc, &idx| (acc << 1) | (idx / 3));
        let y_word: Vec<u8> = outcome.iter().map(|&idx| (idx % 3) as u8).collect();
        let label = match decoder.get(&y_word) {
            Some(&(m1, m2)) => DecodeLabel::Message(m1 * phase_words + c_word, m2),
            None => DecodeLabel::Fail,
        };
        match grouped.remove(&label) {
            Some(acc) => {
                grouped.insert(label, acc.add(&block)?);
            }
            None => {
                grouped.insert(label, block);
            }
        }

        // next outcome word
        let mut t = n;
        loop {
            if t == 0 {
                break;
            }
            t -= 1;
            outcome[t] += 1;
            if outcome[t] < 6 {
                break;
            }
            outcome[t] = 0;
        }
        if outcome.iter().all(|&i| i == 0) {
            break;
        }
    }

    let rates = {
        let (r1, r2) = base.rates();
        (r1 + 1.0, r2)
    };
    AssistedCode::new(
        n,
        ghz_state(),
        encoders1,
        encoders2,
        grouped.into_iter().collect(),
        rates,
    )
}
