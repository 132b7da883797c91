//! The four studied settings (unassisted, sender-sender entanglement, GHZ,
//! two ebits), their encoding label sets, signal-state construction, the
//! three-constraint pentagon of a product ensemble, and the unassisted
//! upper-bound expression.

use num_complex::Complex64;

use crate::channels::{
    assisted_output, ghz_state, max_entangled_resource, partial_entangled_resource, pauli_matrix,
    QuantumChannel, SharedResource,
};
use crate::error::{Error, Result};
use crate::info::{conditional_holevo_1, conditional_holevo_2, holevo, ProductEnsemble};
use crate::linalg::{kron, von_neumann_entropy, ComplexMatrix, DensityMatrix, PureState};

use super::region::RateRegion;

/// How the senders act on their shares: preparing pure qubit states,
/// applying arbitrary unitaries, or applying Pauli unitaries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EncodingMode {
    Prepare,
    Unitary,
    Pauli,
}

/// Which entanglement resource the parties start from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScenarioKind {
    Unassisted,
    SenderSender { alpha: f64 },
    Ghz,
    TwoEbit,
}

/// A setting together with its resource state and allowed encodings.
#[derive(Debug, Clone)]
pub struct Scenario {
    kind: ScenarioKind,
    mode: EncodingMode,
    resource: SharedResource,
}

impl Scenario {
    /// Preparation encodings only make sense without entanglement; assisted
    /// settings modulate the shared state with unitaries or Paulis.
    pub fn new(kind: ScenarioKind, mode: EncodingMode) -> Result<Self> {
        let prepare_ok = matches!(kind, ScenarioKind::Unassisted);
        match (mode, prepare_ok) {
            (EncodingMode::Prepare, false) => {
                return Err(Error::InvalidParameter(
                    "preparation encodings require the unassisted setting".into(),
                ))
            }
            (EncodingMode::Unitary | EncodingMode::Pauli, true) => {
                return Err(Error::InvalidParameter(
                    "the unassisted setting uses preparation encodings".into(),
                ))
            }
            _ => {}
        }
        let resource = match kind {
            ScenarioKind::Unassisted => SharedResource::unassisted(),
            ScenarioKind::SenderSender { alpha } => partial_entangled_resource(alpha)?,
            ScenarioKind::Ghz => ghz_state(),
            ScenarioKind::TwoEbit => max_entangled_resource(),
        };
        Ok(Self {
            kind,
            mode,
            resource,
        })
    }

    pub fn kind(&self) -> ScenarioKind {
        self.kind
    }

    pub fn mode(&self) -> EncodingMode {
        self.mode
    }

    pub fn resource(&self) -> &SharedResource {
        &self.resource
    }

    /// Dimension of the channel output states for this setting.
    pub fn output_dim(&self) -> usize {
        self.resource.total_dim()
    }
}

/// One sender action: a Bloch-sphere preparation, a unitary given by Euler
/// angles, or a Pauli index.
#[derive(Debug, Clone, PartialEq)]
pub enum EncodingLabel {
    Prepare { theta: f64, phi: f64 },
    Unitary { angles: [f64; 3] },
    Pauli(usize),
}

impl EncodingLabel {
    fn matches(&self, mode: EncodingMode) -> bool {
        matches!(
            (self, mode),
            (EncodingLabel::Prepare { .. }, EncodingMode::Prepare)
                | (EncodingLabel::Unitary { .. }, EncodingMode::Unitary)
                | (EncodingLabel::Pauli(_), EncodingMode::Pauli)
        )
    }

    /// The single-qubit channel this action applies.
    pub fn channel(&self) -> Result<QuantumChannel> {
        match self {
            EncodingLabel::Prepare { theta, phi } => {
                Ok(QuantumChannel::prepare(&PureState::bloch(*theta, *phi)))
            }
            EncodingLabel::Unitary { angles } => QuantumChannel::unitary(euler_unitary(angles)),
            EncodingLabel::Pauli(i) => {
                if *i >= 4 {
                    return Err(Error::InvalidParameter(format!(
                        "Pauli index {i} out of range"
                    )));
                }
                QuantumChannel::unitary(pauli_matrix(*i))
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            EncodingLabel::Prepare { theta, phi } => format!("prep(theta={theta:.6},phi={phi:.6})"),
            EncodingLabel::Unitary { angles } => {
                format!("u({:.6},{:.6},{:.6})", angles[0], angles[1], angles[2])
            }
            EncodingLabel::Pauli(i) => ["I", "X", "Y", "Z"][*i].to_string(),
        }
    }
}

/// One sender side of a search: weighted encoding actions.
pub type WeightedActions = Vec<(f64, EncodingLabel)>;

/// SU(2) element e^{−iaσ_z/2} e^{−ibσ_y/2} e^{−icσ_z/2}; the global phase
/// never matters here.
pub fn euler_unitary(angles: &[f64; 3]) -> ComplexMatrix {
    let rz = |t: f64| {
        let mut m = ComplexMatrix::zeros(2, 2);
        m.set(0, 0, Complex64::from_polar(1.0, -t / 2.0));
        m.set(1, 1, Complex64::from_polar(1.0, t / 2.0));
        m
    };
    let ry = |t: f64| {
        let (s, c) = (t / 2.0).sin_cos();
        ComplexMatrix::new(
            2,
            2,
            vec![
                Complex64::new(c, 0.0),
                Complex64::new(-s, 0.0),
                Complex64::new(s, 0.0),
                Complex64::new(c, 0.0),
            ],
        )
        .expect("2x2")
    };
    rz(angles[0])
        .mul(&ry(angles[1]))
        .and_then(|m| m.mul(&rz(angles[2])))
        .expect("2x2 products")
}

/// The channel output state for one pair of sender actions.
pub fn scenario_signal(
    scenario: &Scenario,
    label1: &EncodingLabel,
    label2: &EncodingLabel,
) -> Result<DensityMatrix> {
    if !label1.matches(scenario.mode()) || !label2.matches(scenario.mode()) {
        return Err(Error::InvalidParameter(format!(
            "labels {} / {} do not fit encoding mode {:?}",
            label1.describe(),
            label2.describe(),
            scenario.mode()
        )));
    }
    assisted_output(&label1.channel()?, &label2.channel()?, scenario.resource())
}

/// Build the product ensemble of a pair of weighted action lists.
pub fn scenario_ensemble(
    scenario: &Scenario,
    sender1: &[(f64, EncodingLabel)],
    sender2: &[(f64, EncodingLabel)],
) -> Result<ProductEnsemble> {
    let p = sender1
        .iter()
        .enumerate()
        .map(|(i, (w, l))| (*w, format!("a{i}:{}", l.describe())))
        .collect();
    let q = sender2
        .iter()
        .enumerate()
        .map(|(j, (w, l))| (*w, format!("b{j}:{}", l.describe())))
        .collect();
    let mut signals = Vec::with_capacity(sender1.len());
    for (_, l1) in sender1 {
        let mut row = Vec::with_capacity(sender2.len());
        for (_, l2) in sender2 {
            row.push(scenario_signal(scenario, l1, l2)?);
        }
        signals.push(row);
    }
    ProductEnsemble::new(p, q, signals)
}

/// Weighted Bloch-sphere supports for the two senders (at most eight points
/// each).
#[derive(Debug, Clone)]
pub struct BlochEnsembleParams {
    pub sender1: Vec<(f64, f64, f64)>,
    pub sender2: Vec<(f64, f64, f64)>,
}

impl BlochEnsembleParams {
    /// Each entry is (weight, theta, phi); weights must each be a
    /// distribution and supports are capped at eight points.
    pub fn new(sender1: Vec<(f64, f64, f64)>, sender2: Vec<(f64, f64, f64)>) -> Result<Self> {
        for side in [&sender1, &sender2] {
            if side.is_empty() || side.len() > 8 {
                return Err(Error::InvalidParameter(format!(
                    "support size {} outside 1..=8",
                    side.len()
                )));
            }
            let sum: f64 = side.iter().map(|(w, _, _)| *w).sum();
            if (sum - 1.0).abs() > 1e-9 || side.iter().any(|(w, _, _)| *w < -1e-12) {
                return Err(Error::InvalidDistribution(format!("weights sum to {sum}")));
            }
        }
        Ok(Self { sender1, sender2 })
    }

    pub fn labels(&self) -> (WeightedActions, WeightedActions) {
        let to = |side: &[(f64, f64, f64)]| {
            side.iter()
                .map(|&(w, theta, phi)| (w, EncodingLabel::Prepare { theta, phi }))
                .collect::<Vec<_>>()
        };
        (to(&self.sender1), to(&self.sender2))
    }

    /// Ensemble-average input states ρ_P and ρ_Q of the two senders.
    pub fn average_inputs(&self) -> (DensityMatrix, DensityMatrix) {
        let avg = |side: &[(f64, f64, f64)]| {
            let states: Vec<(f64, DensityMatrix)> = side
                .iter()
                .map(|&(w, theta, phi)| {
                    (w, DensityMatrix::from_pure(&PureState::bloch(theta, phi)))
                })
                .collect();
            let refs: Vec<(f64, &DensityMatrix)> =
                states.iter().map(|(w, rho)| (*w, rho)).collect();
            DensityMatrix::mixture(&refs).expect("weights are a distribution")
        };
        (avg(&self.sender1), avg(&self.sender2))
    }
}

/// The three-constraint rate region of a product ensemble: individual rates
/// bounded by the conditional Holevo quantities, the sum by the joint one.
pub fn pentagon(pe: &ProductEnsemble) -> Result<RateRegion> {
    let r1 = conditional_holevo_1(pe)?;
    let r2 = conditional_holevo_2(pe)?;
    let sum = holevo(&pe.joint())?;
    RateRegion::from_constraints(vec![(1.0, 0.0, r1), (0.0, 1.0, r2), (1.0, 1.0, sum)])
}

/// The unassisted upper-bound expression
/// H(½ ρ_P⊗ρ_Q + ½ ρ_Q⊗ρ_P) − 1 + Tr(ρ_P ρ_Q) for single-qubit inputs.
pub fn unassisted_upper_expr(rho_p: &DensityMatrix, rho_q: &DensityMatrix) -> Result<f64> {
    if rho_p.dim() != 2 || rho_q.dim() != 2 {
        return Err(Error::DimensionMismatch(
            "the upper-bound expression takes single-qubit states".into(),
        ));
    }
    let pq = kron(rho_p.matrix(), rho_q.matrix())?;
    let qp = kron(rho_q.matrix(), rho_p.matrix())?;
    let mixed = DensityMatrix::trusted(pq.add(&qp)?.scale_real(0.5).hermitized());
    Ok(von_neumann_entropy(&mixed)? - 1.0 + rho_p.overlap(rho_q)?)
}
