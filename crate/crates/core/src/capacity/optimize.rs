//! Multistart derivative-free maximization of the joint Holevo quantity
//! over product ensembles of sender actions.
//!
//! Each restart runs a Nelder-Mead simplex search over unconstrained
//! parameters (softmax weights, Bloch or Euler angles) with a deterministic
//! sub-seed derived from (seed, restart index). Restart 0 starts from the
//! canonical configuration of the scenario (classical basis states, uniform
//! Paulis, identity-plus-flip unitaries); later restarts start at random.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::info::{holevo, ProductEnsemble};
use crate::linalg::{von_neumann_entropy, ComplexMatrix, DensityMatrix};

use super::scenario::{
    scenario_ensemble, scenario_signal, EncodingLabel, EncodingMode, Scenario, WeightedActions,
};

/// Objective stall tolerance: the simplex is converged once its value
/// spread drops below this.
const STALL_TOL: f64 = 1e-8;

/// Result of a multistart search.
#[derive(Debug, Clone)]
pub struct OptimizeOutcome {
    /// The largest joint Holevo quantity found, in bits.
    pub best_value: f64,
    /// The product ensemble achieving it.
    pub best_ensemble: ProductEnsemble,
    /// Total objective evaluations across all restarts.
    pub evaluations: u64,
    /// Index of the restart that produced the best value.
    pub best_restart: usize,
}

/// Maximize the joint Holevo quantity of the scenario over its encoding
/// ensembles. Deterministic given (seed, restarts, budget).
pub fn optimize_rate_sum(
    scenario: &Scenario,
    restarts: usize,
    seed: u64,
    budget: u64,
) -> Result<OptimizeOutcome> {
    if restarts == 0 {
        return Err(Error::InvalidParameter(
            "restarts must be at least 1".into(),
        ));
    }
    let mut evaluations = 0u64;
    let mut best: Option<(f64, WeightedActions, WeightedActions, usize)> = None;

    for restart in 0..restarts {
        let search = SearchSpace::for_restart(scenario, restart)?;
        let (x0, radius) = if restart == 0 {
            (search.canonical_start(), 0.25)
        } else {
            let sub_seed = seed.wrapping_add((restart as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            let mut rng = ChaCha12Rng::seed_from_u64(sub_seed);
            (search.random_start(&mut rng), 0.6)
        };

        let mut remaining = budget;
        let mut objective = |x: &[f64]| {
            evaluations += 1;
            -search.value(x)
        };
        let (x_best, neg_value) = nelder_mead(&mut objective, &x0, radius, &mut remaining);
        let value = -neg_value;

        let replace = match &best {
            None => true,
            Some((current, ..)) => value > *current,
        };
        if replace {
            let (s1, s2) = search.decode(&x_best);
            best = Some((value, s1, s2, restart));
        }
    }

    let (_, sender1, sender2, best_restart) = best.expect("at least one restart ran");
    let best_ensemble = scenario_ensemble(scenario, &sender1, &sender2)?;
    let best_value = holevo(&best_ensemble.joint())?;
    Ok(OptimizeOutcome {
        best_value,
        best_ensemble,
        evaluations,
        best_restart,
    })
}

/// Signal table with precomputed entropies, indexed [sender-1][sender-2].
struct SignalTable {
    states: Vec<Vec<DensityMatrix>>,
    entropies: Vec<Vec<f64>>,
}

/// One restart's parametrization: support sizes and the decoding of the
/// flat parameter vector.
struct SearchSpace<'a> {
    scenario: &'a Scenario,
    support1: usize,
    support2: usize,
    // Pauli signals never change, so their states and entropies are fixed
    // per restart and the search runs over weights alone.
    pauli_signals: Option<SignalTable>,
}

impl<'a> SearchSpace<'a> {
    fn for_restart(scenario: &'a Scenario, restart: usize) -> Result<Self> {
        let support = match scenario.mode() {
            EncodingMode::Prepare => [2, 3, 4][restart % 3],
            EncodingMode::Unitary => [2, 3][restart % 2],
            EncodingMode::Pauli => 4,
        };
        let pauli_signals = if scenario.mode() == EncodingMode::Pauli {
            let mut states = Vec::with_capacity(4);
            let mut entropies = Vec::with_capacity(4);
            for i in 0..4 {
                let mut row_s = Vec::with_capacity(4);
                let mut row_h = Vec::with_capacity(4);
                for j in 0..4 {
                    let w = scenario_signal(
                        scenario,
                        &EncodingLabel::Pauli(i),
                        &EncodingLabel::Pauli(j),
                    )?;
                    row_h.push(von_neumann_entropy(&w)?);
                    row_s.push(w);
                }
                states.push(row_s);
                entropies.push(row_h);
            }
            Some(SignalTable { states, entropies })
        } else {
            None
        };
        Ok(Self {
            scenario,
            support1: support,
            support2: support,
            pauli_signals,
        })
    }

    /// Parameters per sender: one raw weight per point, plus the angles the
    /// encoding needs (Bloch: 2, Euler: 3, Pauli: 0).
    fn angles_per_point(&self) -> usize {
        match self.scenario.mode() {
            EncodingMode::Prepare => 2,
            EncodingMode::Unitary => 3,
            EncodingMode::Pauli => 0,
        }
    }

    fn dim(&self) -> usize {
        (self.support1 + self.support2) * (1 + self.angles_per_point())
    }

    fn canonical_start(&self) -> Vec<f64> {
        let mut x = vec![0.0; self.dim()];
        let a = self.angles_per_point();
        let flipped_point = 1;
        for (offset, support) in [(0, self.support1), (self.support1 * (1 + a), self.support2)] {
            if support < 2 {
                continue;
            }
            let angle_block = offset + support;
            match self.scenario.mode() {
                // classical basis: point 0 at |0>, point 1 at |1> (theta = pi)
                EncodingMode::Prepare => {
                    x[angle_block + 2 * flipped_point] = std::f64::consts::PI;
                }
                // identity and a bit flip (middle Euler angle = pi)
                EncodingMode::Unitary => {
                    x[angle_block + 3 * flipped_point + 1] = std::f64::consts::PI;
                }
                EncodingMode::Pauli => {}
            }
        }
        x
    }

    fn random_start(&self, rng: &mut ChaCha12Rng) -> Vec<f64> {
        let a = self.angles_per_point();
        let mut x = Vec::with_capacity(self.dim());
        for support in [self.support1, self.support2] {
            for _ in 0..support {
                x.push(rng.random::<f64>() * 2.0 - 1.0); // raw weight
            }
            for _ in 0..(support * a) {
                x.push(rng.random::<f64>() * std::f64::consts::TAU - std::f64::consts::PI);
            }
        }
        x
    }

    /// Split the flat vector into per-sender (weights, angle block) parts.
    fn split<'x>(&self, x: &'x [f64]) -> [(&'x [f64], &'x [f64]); 2] {
        let a = self.angles_per_point();
        let len1 = self.support1 * (1 + a);
        let (x1, x2) = x.split_at(len1);
        let (w1, a1) = x1.split_at(self.support1);
        let (w2, a2) = x2.split_at(self.support2);
        [(w1, a1), (w2, a2)]
    }

    fn decode(&self, x: &[f64]) -> (WeightedActions, WeightedActions) {
        let [(w1, a1), (w2, a2)] = self.split(x);
        let labels = |raw_w: &[f64], raw_a: &[f64], support: usize| {
            let weights = softmax(raw_w);
            (0..support)
                .map(|k| {
                    let label = match self.scenario.mode() {
                        EncodingMode::Prepare => EncodingLabel::Prepare {
                            theta: raw_a[2 * k],
                            phi: raw_a[2 * k + 1],
                        },
                        EncodingMode::Unitary => EncodingLabel::Unitary {
                            angles: [raw_a[3 * k], raw_a[3 * k + 1], raw_a[3 * k + 2]],
                        },
                        EncodingMode::Pauli => EncodingLabel::Pauli(k),
                    };
                    (weights[k], label)
                })
                .collect::<Vec<_>>()
        };
        (labels(w1, a1, self.support1), labels(w2, a2, self.support2))
    }

    /// Joint Holevo quantity at the decoded parameters; mirrors the
    /// arithmetic of `holevo` on the flattened product ensemble exactly.
    fn value(&self, x: &[f64]) -> f64 {
        let (sender1, sender2) = self.decode(x);
        let dim = self.scenario.output_dim();
        let mut average = ComplexMatrix::zeros(dim, dim);
        let mut conditional = 0.0;

        match &self.pauli_signals {
            Some(table) => {
                for (i, (wi, _)) in sender1.iter().enumerate() {
                    for (j, (wj, _)) in sender2.iter().enumerate() {
                        let w = wi * wj;
                        average = average
                            .add(&table.states[i][j].matrix().scale_real(w))
                            .expect("fixed dims");
                        if w > 0.0 {
                            conditional += w * table.entropies[i][j];
                        }
                    }
                }
            }
            None => {
                for (wi, li) in &sender1 {
                    for (wj, lj) in &sender2 {
                        let w = wi * wj;
                        let state = match scenario_signal(self.scenario, li, lj) {
                            Ok(s) => s,
                            Err(_) => return f64::NEG_INFINITY,
                        };
                        average = average
                            .add(&state.matrix().scale_real(w))
                            .expect("fixed dims");
                        if w > 0.0 {
                            match von_neumann_entropy(&state) {
                                Ok(h) => conditional += w * h,
                                Err(_) => return f64::NEG_INFINITY,
                            }
                        }
                    }
                }
            }
        }
        let avg = DensityMatrix::trusted(average.hermitized());
        match von_neumann_entropy(&avg) {
            Ok(h) => (h - conditional).max(0.0),
            Err(_) => f64::NEG_INFINITY,
        }
    }
}

fn softmax(raw: &[f64]) -> Vec<f64> {
    let max = raw.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = raw.iter().map(|&r| (r - max).exp()).collect();
    let sum: f64 = exps.iter().sum();
    exps.into_iter().map(|e| e / sum).collect()
}

/// Nelder-Mead minimization with a hard evaluation budget. Returns the best
/// point seen and its value.
fn nelder_mead<F: FnMut(&[f64]) -> f64>(
    f: &mut F,
    x0: &[f64],
    radius: f64,
    budget: &mut u64,
) -> (Vec<f64>, f64) {
    let n = x0.len();
    let mut eval = |x: &[f64], budget: &mut u64| -> Option<f64> {
        if *budget == 0 {
            return None;
        }
        *budget -= 1;
        Some(f(x))
    };

    let f0 = match eval(x0, budget) {
        Some(v) => v,
        None => return (x0.to_vec(), f64::INFINITY),
    };
    let mut simplex: Vec<(Vec<f64>, f64)> = vec![(x0.to_vec(), f0)];
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += radius;
        match eval(&x, budget) {
            Some(v) => simplex.push((x, v)),
            None => break,
        }
    }
    if simplex.len() < n + 1 {
        simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
        return simplex.swap_remove(0);
    }

    loop {
        simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
        if simplex[n].1 - simplex[0].1 < STALL_TOL || *budget == 0 {
            break;
        }

        let centroid: Vec<f64> = (0..n)
            .map(|d| simplex[..n].iter().map(|(x, _)| x[d]).sum::<f64>() / n as f64)
            .collect();
        let worst = simplex[n].clone();
        let combine = |t: f64| -> Vec<f64> {
            (0..n)
                .map(|d| centroid[d] + t * (centroid[d] - worst.0[d]))
                .collect()
        };

        let reflected = combine(1.0);
        let fr = match eval(&reflected, budget) {
            Some(v) => v,
            None => break,
        };

        if fr < simplex[0].1 {
            let expanded = combine(2.0);
            match eval(&expanded, budget) {
                Some(fe) if fe < fr => simplex[n] = (expanded, fe),
                Some(_) | None => simplex[n] = (reflected, fr),
            }
            continue;
        }
        if fr < simplex[n - 1].1 {
            simplex[n] = (reflected, fr);
            continue;
        }

        // Contract toward the better of the worst point and its reflection.
        let contracted = if fr < worst.1 {
            combine(0.5)
        } else {
            combine(-0.5)
        };
        let fc = match eval(&contracted, budget) {
            Some(v) => v,
            None => break,
        };
        if fc < worst.1.min(fr) {
            simplex[n] = (contracted, fc);
            continue;
        }

        // Shrink everything toward the best point.
        let best = simplex[0].0.clone();
        let mut shrunk = true;
        for entry in simplex.iter_mut().skip(1) {
            let x: Vec<f64> = (0..n)
                .map(|d| best[d] + 0.5 * (entry.0[d] - best[d]))
                .collect();
            match eval(&x, budget) {
                Some(v) => *entry = (x, v),
                None => {
                    shrunk = false;
                    break;
                }
            }
        }
        if !shrunk {
            break;
        }
    }

    simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
    simplex.swap_remove(0)
}
