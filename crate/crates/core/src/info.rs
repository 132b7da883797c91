//! Information quantities: Holevo information of finite ensembles,
//! conditional Holevo information of product ensembles, the closed-form
//! entropy of a rank-two pure-state mixture, the quadratic entropy sandwich,
//! and the measurement-entropy decomposition.
//!
//! Ensembles are finite-support by design: every integral in scope reduces
//! to a finite sum.

use crate::error::{Error, Result};
use crate::linalg::{
    binary_entropy, kron, psd_sqrt, von_neumann_entropy, ComplexMatrix, DensityMatrix, PureState,
};

/// A finite ensemble of labeled states with probabilities.
#[derive(Debug, Clone)]
pub struct Ensemble {
    items: Vec<(f64, String, DensityMatrix)>,
}

impl Ensemble {
    /// Probabilities must be nonnegative and sum to one within 1e−9; labels
    /// must be unique; all states must share one dimension.
    pub fn new(items: Vec<(f64, String, DensityMatrix)>) -> Result<Self> {
        if items.is_empty() {
            return Err(Error::InvalidParameter("empty ensemble".into()));
        }
        let mut sum = 0.0;
        for (p, _, _) in &items {
            if *p < -1e-12 {
                return Err(Error::InvalidDistribution(format!(
                    "negative weight {p:.3e}"
                )));
            }
            sum += p;
        }
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidDistribution(format!("weights sum to {sum}")));
        }
        let dim = items[0].2.dim();
        if items.iter().any(|(_, _, rho)| rho.dim() != dim) {
            return Err(Error::DimensionMismatch(
                "ensemble states differ in dimension".into(),
            ));
        }
        for (i, (_, a, _)) in items.iter().enumerate() {
            if items[i + 1..].iter().any(|(_, b, _)| a == b) {
                return Err(Error::InvalidParameter(format!("duplicate label {a:?}")));
            }
        }
        Ok(Self { items })
    }

    pub fn items(&self) -> &[(f64, String, DensityMatrix)] {
        &self.items
    }

    pub fn dim(&self) -> usize {
        self.items[0].2.dim()
    }

    /// The barycenter Σ p ρ.
    pub fn average_state(&self) -> DensityMatrix {
        let parts: Vec<(f64, &DensityMatrix)> =
            self.items.iter().map(|(p, _, rho)| (*p, rho)).collect();
        DensityMatrix::mixture(&parts).expect("ensemble weights are a distribution")
    }
}

/// Product of two marginal action distributions with a signal state for
/// every label pair.
#[derive(Debug, Clone)]
pub struct ProductEnsemble {
    p: Vec<(f64, String)>,
    q: Vec<(f64, String)>,
    signals: Vec<Vec<DensityMatrix>>,
}

impl ProductEnsemble {
    /// `signals[i][j]` is the output state for sender-1 action `i` and
    /// sender-2 action `j`; a state is required for every label pair.
    pub fn new(
        p: Vec<(f64, String)>,
        q: Vec<(f64, String)>,
        signals: Vec<Vec<DensityMatrix>>,
    ) -> Result<Self> {
        check_marginal(&p)?;
        check_marginal(&q)?;
        if signals.len() != p.len() || signals.iter().any(|row| row.len() != q.len()) {
            return Err(Error::DimensionMismatch(
                "signal table must cover every label pair".into(),
            ));
        }
        let dim = signals[0][0].dim();
        if signals.iter().flatten().any(|rho| rho.dim() != dim) {
            return Err(Error::DimensionMismatch(
                "signal states differ in dimension".into(),
            ));
        }
        Ok(Self { p, q, signals })
    }

    pub fn sender1(&self) -> &[(f64, String)] {
        &self.p
    }

    pub fn sender2(&self) -> &[(f64, String)] {
        &self.q
    }

    pub fn signal(&self, i: usize, j: usize) -> &DensityMatrix {
        &self.signals[i][j]
    }

    /// Flatten to the joint ensemble with weights p_i q_j.
    pub fn joint(&self) -> Ensemble {
        let mut items = Vec::with_capacity(self.p.len() * self.q.len());
        for (i, (pi, la)) in self.p.iter().enumerate() {
            for (j, (qj, lb)) in self.q.iter().enumerate() {
                items.push((pi * qj, format!("{la}|{lb}"), self.signals[i][j].clone()));
            }
        }
        Ensemble::new(items).expect("joint of valid marginals is valid")
    }

    /// The two marginal weight vectors, in label order.
    pub fn marginal_weights(&self) -> (Vec<f64>, Vec<f64>) {
        (
            self.p.iter().map(|(w, _)| *w).collect(),
            self.q.iter().map(|(w, _)| *w).collect(),
        )
    }
}

fn check_marginal(m: &[(f64, String)]) -> Result<()> {
    if m.is_empty() {
        return Err(Error::InvalidParameter("empty marginal".into()));
    }
    let mut sum = 0.0;
    for (w, _) in m {
        if *w < -1e-12 {
            return Err(Error::InvalidDistribution(format!(
                "negative weight {w:.3e}"
            )));
        }
        sum += w;
    }
    if (sum - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidDistribution(format!("weights sum to {sum}")));
    }
    for (i, (_, a)) in m.iter().enumerate() {
        if m[i + 1..].iter().any(|(_, b)| a == b) {
            return Err(Error::InvalidParameter(format!("duplicate label {a:?}")));
        }
    }
    Ok(())
}

/// Holevo information H(Σ p ρ) − Σ p H(ρ) in bits.
pub fn holevo(ensemble: &Ensemble) -> Result<f64> {
    let avg = ensemble.average_state();
    let mut value = von_neumann_entropy(&avg)?;
    for (p, _, rho) in ensemble.items() {
        if *p <= 0.0 {
            continue;
        }
        value -= p * von_neumann_entropy(rho)?;
    }
    Ok(value.max(0.0))
}

/// Conditional Holevo information of sender 1 given sender 2,
/// Σ_j q_j · I(P; W_{·j}).
pub fn conditional_holevo_1(pe: &ProductEnsemble) -> Result<f64> {
    let mut total = 0.0;
    for (j, (qj, _)) in pe.sender2().iter().enumerate() {
        if *qj <= 0.0 {
            continue;
        }
        let items = pe
            .sender1()
            .iter()
            .enumerate()
            .map(|(i, (pi, label))| (*pi, label.clone(), pe.signal(i, j).clone()))
            .collect();
        total += qj * holevo(&Ensemble::new(items)?)?;
    }
    Ok(total)
}

/// Conditional Holevo information of sender 2 given sender 1,
/// Σ_i p_i · I(Q; W_{i·}).
pub fn conditional_holevo_2(pe: &ProductEnsemble) -> Result<f64> {
    let mut total = 0.0;
    for (i, (pi, _)) in pe.sender1().iter().enumerate() {
        if *pi <= 0.0 {
            continue;
        }
        let items = pe
            .sender2()
            .iter()
            .enumerate()
            .map(|(j, (qj, label))| (*qj, label.clone(), pe.signal(i, j).clone()))
            .collect();
        total += pi * holevo(&Ensemble::new(items)?)?;
    }
    Ok(total)
}

/// Entropy of the equal mixture of two pure states, in closed form:
/// H(½(|v⟩⟨v| + |w⟩⟨w|)) = H₂((1−t)/2) with t = |⟨v|w⟩|.
pub fn pair_mixture_entropy(v: &PureState, w: &PureState) -> Result<f64> {
    let t = v.inner(w)?.norm().min(1.0);
    Ok(binary_entropy((1.0 - t) / 2.0))
}

/// The quadratic sandwich 1−x² ≤ H₂((1−x)/2) ≤ 1−x²/2 on [0, 1],
/// returned as (lower, mid, upper).
pub fn entropy_sandwich(x: f64) -> Result<(f64, f64, f64)> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::InvalidParameter(format!("x = {x} outside [0, 1]")));
    }
    Ok((
        1.0 - x * x,
        binary_entropy((1.0 - x) / 2.0),
        1.0 - 0.5 * x * x,
    ))
}

/// Measurement of the second factor of a bipartite state: outcome
/// probabilities λ_i = Tr(ρ(1⊗E_i)) and post-measurement states
/// σ_i = √(1⊗E_i) ρ √(1⊗E_i) / λ_i. Outcomes with λ_i < 1e−12 are dropped.
pub fn measurement_decomposition(
    rho: &DensityMatrix,
    povm: &[ComplexMatrix],
    dims: (usize, usize),
) -> Result<Vec<(f64, DensityMatrix)>> {
    let (d1, d2) = dims;
    if d1 * d2 != rho.dim() {
        return Err(Error::DimensionMismatch(format!(
            "state dim {} vs {}x{} factors",
            rho.dim(),
            d1,
            d2
        )));
    }
    let mut completeness = ComplexMatrix::zeros(d2, d2);
    for e in povm {
        if e.rows() != d2 || e.cols() != d2 {
            return Err(Error::DimensionMismatch(
                "POVM elements must act on the second factor".into(),
            ));
        }
        completeness = completeness.add(e)?;
    }
    let dev = completeness.max_abs_diff(&ComplexMatrix::identity(d2));
    if dev > 1e-9 {
        return Err(Error::IncompletePovm(dev));
    }

    let id1 = ComplexMatrix::identity(d1);
    let mut outcomes = Vec::with_capacity(povm.len());
    for e in povm {
        let lifted = kron(&id1, e)?;
        let lambda = lifted.trace_product(rho.matrix())?.re;
        if lambda < 1e-12 {
            continue;
        }
        let root = psd_sqrt(&lifted)?;
        let post = root.mul(rho.matrix())?.mul(&root)?;
        // Renormalize by the exact trace so σ_i is a unit-trace state.
        let tr = post.trace().re;
        outcomes.push((
            lambda,
            DensityMatrix::trusted(post.scale_real(1.0 / tr).hermitized()),
        ));
    }
    Ok(outcomes)
}
