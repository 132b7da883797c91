//! Quantum states and channels of the adder-channel setting: permutation
//! operators, the adder channel averaging over all qubit permutations, Bell
//! and GHZ resources, Pauli encodings, and the assisted-channel output map.
//!
//! Qubit ordering is fixed everywhere: sender 1, sender 2 (… sender L), then
//! the receiver factor, with big-endian basis indexing.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{kron, ComplexMatrix, DensityMatrix, PureState};

/// Completeness tolerance Σ K†K = I for channels and POVMs.
pub const CHANNEL_TOL: f64 = 1e-9;

/// A completely positive trace-preserving map as a finite Kraus list.
#[derive(Debug, Clone)]
pub struct QuantumChannel {
    in_dim: usize,
    out_dim: usize,
    kraus: Vec<ComplexMatrix>,
}

impl QuantumChannel {
    /// Build from Kraus operators, checking Σ K†K = I within 1e−9.
    pub fn new(kraus: Vec<ComplexMatrix>) -> Result<Self> {
        let first = kraus.first().ok_or_else(|| {
            Error::InvalidParameter("channel needs at least one Kraus operator".into())
        })?;
        let (out_dim, in_dim) = (first.rows(), first.cols());
        let mut sum = ComplexMatrix::zeros(in_dim, in_dim);
        for k in &kraus {
            if k.rows() != out_dim || k.cols() != in_dim {
                return Err(Error::DimensionMismatch(
                    "Kraus operators must share one shape".into(),
                ));
            }
            sum = sum.add(&k.adjoint().mul(k)?)?;
        }
        let dev = sum.max_abs_diff(&ComplexMatrix::identity(in_dim));
        if dev > CHANNEL_TOL {
            return Err(Error::IncompletePovm(dev));
        }
        Ok(Self {
            in_dim,
            out_dim,
            kraus,
        })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            in_dim: dim,
            out_dim: dim,
            kraus: vec![ComplexMatrix::identity(dim)],
        }
    }

    /// Conjugation ρ ↦ UρU† by a unitary.
    pub fn unitary(u: ComplexMatrix) -> Result<Self> {
        let dim = u.rows();
        let utu = u.adjoint().mul(&u)?;
        let dev = utu.max_abs_diff(&ComplexMatrix::identity(dim));
        if dev > CHANNEL_TOL {
            return Err(Error::InvalidParameter(format!(
                "matrix is not unitary, residual {dev:.3e}"
            )));
        }
        Ok(Self {
            in_dim: dim,
            out_dim: dim,
            kraus: vec![u],
        })
    }

    /// Replacement channel ρ ↦ |φ⟩⟨φ|, Kraus operators |φ⟩⟨i|.
    pub fn prepare(state: &PureState) -> Self {
        let dim = state.dim();
        let kraus = (0..dim)
            .map(|i| {
                let mut k = ComplexMatrix::zeros(dim, dim);
                for (row, amp) in state.amplitudes().iter().enumerate() {
                    k.set(row, i, *amp);
                }
                k
            })
            .collect();
        Self {
            in_dim: dim,
            out_dim: dim,
            kraus,
        }
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    /// Extend by an identity factor on the right: K ↦ K ⊗ I.
    pub fn tensor_identity(&self, dim: usize) -> Result<Self> {
        if dim == 1 {
            return Ok(self.clone());
        }
        let id = ComplexMatrix::identity(dim);
        let kraus = self
            .kraus
            .iter()
            .map(|k| kron(k, &id))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            in_dim: self.in_dim * dim,
            out_dim: self.out_dim * dim,
            kraus,
        })
    }
}

/// Apply a channel: ρ ↦ Σ K ρ K†.
pub fn apply_channel(channel: &QuantumChannel, rho: &DensityMatrix) -> Result<DensityMatrix> {
    if channel.in_dim != rho.dim() {
        return Err(Error::DimensionMismatch(format!(
            "channel input dim {} vs state dim {}",
            channel.in_dim,
            rho.dim()
        )));
    }
    let mut acc = ComplexMatrix::zeros(channel.out_dim, channel.out_dim);
    for k in &channel.kraus {
        acc = acc.add(&k.conjugate_with(rho.matrix())?)?;
    }
    Ok(DensityMatrix::trusted(acc.hermitized()))
}

/// A permutation of L qubit slots with its unitary matrix on (ℂ²)^⊗L.
///
/// `permutation[l] = m` means output slot `l` carries the state that was in
/// input slot `m`, so the operator maps |ψ_0⟩⊗⋯ to `⊗_l ψ_{permutation[l]}`.
#[derive(Debug, Clone)]
pub struct PermutationOperator {
    permutation: Vec<usize>,
    matrix: ComplexMatrix,
}

impl PermutationOperator {
    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }
}

/// Build the permuting operator F for a permutation of `senders` qubits.
pub fn permutation_operator(permutation: &[usize], senders: usize) -> Result<PermutationOperator> {
    if senders > 8 {
        return Err(Error::TooLarge(format!(
            "{senders} qubits exceeds the 8-qubit cap"
        )));
    }
    if permutation.len() != senders {
        return Err(Error::InvalidPermutation(format!(
            "permutation of length {} for {} slots",
            permutation.len(),
            senders
        )));
    }
    let mut seen = vec![false; senders];
    for &m in permutation {
        if m >= senders || seen[m] {
            return Err(Error::InvalidPermutation(format!(
                "{permutation:?} is not a bijection"
            )));
        }
        seen[m] = true;
    }

    let dim = 1usize << senders;
    let mut matrix = ComplexMatrix::zeros(dim, dim);
    for col in 0..dim {
        // bit l (big-endian) of the input index
        let bit = |idx: usize, l: usize| (idx >> (senders - 1 - l)) & 1;
        let mut row = 0usize;
        for l in 0..senders {
            row = (row << 1) | bit(col, permutation[l]);
        }
        matrix.set(row, col, Complex64::ONE);
    }
    Ok(PermutationOperator {
        permutation: permutation.to_vec(),
        matrix,
    })
}

/// All permutations of {0, …, n−1} in a deterministic order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, remaining: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..remaining.len() {
            let x = remaining.remove(i);
            prefix.push(x);
            go(prefix, remaining, out);
            prefix.pop();
            remaining.insert(i, x);
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut (0..n).collect(), &mut out);
    out
}

/// The adder channel on L qubits: σ ↦ (1/L!) Σ_π F_π σ F_π†.
pub fn adder_channel(senders: usize) -> Result<QuantumChannel> {
    if senders == 0 || senders > 4 {
        return Err(Error::TooLarge(format!(
            "adder channel supports 1 to 4 senders, got {senders}"
        )));
    }
    let perms = all_permutations(senders);
    let weight = 1.0 / (perms.len() as f64).sqrt();
    let kraus = perms
        .iter()
        .map(|p| {
            Ok(permutation_operator(p, senders)?
                .matrix()
                .scale_real(weight))
        })
        .collect::<Result<Vec<_>>>()?;
    QuantumChannel::new(kraus)
}

/// The two-qubit flip operator F: |u⟩⊗|v⟩ ↦ |v⟩⊗|u⟩.
pub fn flip_operator() -> ComplexMatrix {
    permutation_operator(&[1, 0], 2)
        .expect("swap is a bijection")
        .matrix()
        .clone()
}

/// The four Bell states in the order Φ⁺, Φ⁻, Ψ⁺, Ψ⁻.
///
/// These diagonalize the flip operator with phases (+1, +1, +1, −1):
/// Ψ⁻ = (|01⟩ − |10⟩)/√2 is the antisymmetric vector, the other three span
/// the symmetric subspace.
pub fn bell_states() -> [PureState; 4] {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let c = |re: f64| Complex64::new(re, 0.0);
    let z = Complex64::ZERO;
    [
        PureState::new(vec![c(h), z, z, c(h)]).expect("normalized"),
        PureState::new(vec![c(h), z, z, c(-h)]).expect("normalized"),
        PureState::new(vec![z, c(h), c(h), z]).expect("normalized"),
        PureState::new(vec![z, c(h), c(-h), z]).expect("normalized"),
    ]
}

/// Projectors onto the symmetric subspace span{Φ⁺, Φ⁻, Ψ⁺} and its
/// complement ℂΨ⁻. The two-sender adder channel is exactly the pinching
/// that kills coherence between them.
pub fn pinching_projectors() -> (ComplexMatrix, ComplexMatrix) {
    let bells = bell_states();
    let mut sym = ComplexMatrix::zeros(4, 4);
    for b in &bells[..3] {
        sym = sym.add(&b.projector()).expect("same shape");
    }
    (sym, bells[3].projector())
}

/// The Pauli matrices in the order 1, σ_x, σ_y, σ_z.
pub fn pauli_matrix(index: usize) -> ComplexMatrix {
    let z = Complex64::ZERO;
    let one = Complex64::ONE;
    let i = Complex64::I;
    let entries = match index {
        0 => vec![one, z, z, one],
        1 => vec![z, one, one, z],
        2 => vec![z, -i, i, z],
        3 => vec![one, z, z, -one],
        _ => panic!("Pauli index {index} out of range"),
    };
    ComplexMatrix::new(2, 2, entries).expect("2x2")
}

/// The four single-qubit Pauli conjugation channels.
pub fn pauli_channels() -> [QuantumChannel; 4] {
    [0, 1, 2, 3].map(|i| QuantumChannel::unitary(pauli_matrix(i)).expect("Pauli is unitary"))
}

/// An initially shared pure state on sender 1 ⊗ sender 2 ⊗ receiver.
#[derive(Debug, Clone)]
pub struct SharedResource {
    state: PureState,
    receiver_dim: usize,
}

impl SharedResource {
    pub fn new(state: PureState, receiver_dim: usize) -> Result<Self> {
        if ![1, 2, 4].contains(&receiver_dim) {
            return Err(Error::InvalidParameter(format!(
                "receiver dimension {receiver_dim} not in {{1, 2, 4}}"
            )));
        }
        if state.dim() != 4 * receiver_dim {
            return Err(Error::DimensionMismatch(format!(
                "resource state dim {} vs 2·2·{receiver_dim}",
                state.dim()
            )));
        }
        Ok(Self {
            state,
            receiver_dim,
        })
    }

    /// |00⟩ with a trivial receiver system: the unassisted setting.
    pub fn unassisted() -> Self {
        Self {
            state: PureState::basis(4, 0),
            receiver_dim: 1,
        }
    }

    pub fn state(&self) -> &PureState {
        &self.state
    }

    pub fn receiver_dim(&self) -> usize {
        self.receiver_dim
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (2, 2, self.receiver_dim)
    }

    pub fn total_dim(&self) -> usize {
        4 * self.receiver_dim
    }
}

/// The GHZ resource (|000⟩ + |111⟩)/√2: the receiver holds the third qubit,
/// and every single-qubit marginal is maximally mixed.
pub fn ghz_state() -> SharedResource {
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut amplitudes = vec![Complex64::ZERO; 8];
    amplitudes[0] = h;
    amplitudes[7] = h;
    SharedResource::new(PureState::new(amplitudes).expect("normalized"), 2).expect("valid dims")
}

/// The two-ebit resource ½ Σ_i Bell_i ⊗ |u_i⟩ with orthonormal receiver
/// states u_i: maximally entangled across the (senders | receiver) cut.
pub fn max_entangled_resource() -> SharedResource {
    let bells = bell_states();
    let mut amplitudes = vec![Complex64::ZERO; 16];
    for (r, bell) in bells.iter().enumerate() {
        for (s, amp) in bell.amplitudes().iter().enumerate() {
            amplitudes[s * 4 + r] = amp * 0.5;
        }
    }
    SharedResource::new(PureState::new(amplitudes).expect("normalized"), 4).expect("valid dims")
}

/// The sender-sender resource α|00⟩ + β|11⟩ with β = √(1−α²) and trivial
/// receiver; requires 1/√2 ≤ α ≤ 1.
pub fn partial_entangled_resource(alpha: f64) -> Result<SharedResource> {
    // rounding slack admits truncated decimal spellings of 1/sqrt(2)
    let lo = std::f64::consts::FRAC_1_SQRT_2;
    if !(lo - 1e-6..=1.0 + 1e-6).contains(&alpha) {
        return Err(Error::InvalidParameter(format!(
            "alpha {alpha} outside [1/sqrt(2), 1]"
        )));
    }
    let alpha = alpha.clamp(lo, 1.0);
    let beta = (1.0 - alpha * alpha).max(0.0).sqrt();
    let mut amplitudes = vec![Complex64::ZERO; 4];
    amplitudes[0] = Complex64::new(alpha, 0.0);
    amplitudes[3] = Complex64::new(beta, 0.0);
    SharedResource::new(PureState::new(amplitudes).expect("normalized"), 1)
}

/// Assisted-channel output
/// W_fg = ½( (f⊗g⊗id)(|ι⟩⟨ι|) + (S⊗id)(f⊗g⊗id)(|ι⟩⟨ι|) ),
/// with the swap S acting on the two sender qubits only.
pub fn assisted_output(
    f: &QuantumChannel,
    g: &QuantumChannel,
    iota: &SharedResource,
) -> Result<DensityMatrix> {
    if f.in_dim() != 2 || f.out_dim() != 2 || g.in_dim() != 2 || g.out_dim() != 2 {
        return Err(Error::DimensionMismatch(
            "assisted output needs single-qubit encoding channels".into(),
        ));
    }
    let receiver_id = ComplexMatrix::identity(iota.receiver_dim());
    let total = iota.total_dim();

    // (f⊗g⊗id)(|ι⟩⟨ι|) accumulated from Kraus-product images of the vector.
    let mut encoded = ComplexMatrix::zeros(total, total);
    for kf in f.kraus() {
        for kg in g.kraus() {
            let op = kron(&kron(kf, kg)?, &receiver_id)?;
            let image = iota.state().apply(&op)?;
            encoded = encoded.add(&image.projector())?;
        }
    }

    let swap = kron(&flip_operator(), &receiver_id)?;
    let swapped = swap.conjugate_with(&encoded)?;
    let w = encoded.add(&swapped)?.scale_real(0.5);
    Ok(DensityMatrix::trusted(w.hermitized()))
}
