//! Built-in verification suites: numerical identities re-checked from a
//! caller-chosen seed. Every suite verifies a mathematical truth, so any
//! seed must pass.

use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha12Rng;

use qadder::channels::{
    adder_channel, apply_channel, bell_states, flip_operator, pinching_projectors,
};
use qadder::codes::{classical_code_performance, error_probability, ghz_lift, AdderCode, Decoder};
use qadder::info::{entropy_sandwich, measurement_decomposition, pair_mixture_entropy};
use qadder::linalg::{
    hermitian_eigensystem, random_density, random_pure, shannon_entropy, von_neumann_entropy,
    ComplexMatrix, DensityMatrix, PureState,
};
use qadder::{quantum_rate_sum, tau_entropy_oracle};

#[derive(Debug, Clone)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: usize,
    pub total: usize,
}

impl SuiteResult {
    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

/// Run every suite; the Bell set is injectable so a deliberately corrupted
/// basis can demonstrate that the checks really bite.
pub fn run_all(seed: u64, bells: &[PureState; 4]) -> Vec<SuiteResult> {
    vec![
        pair_mixture_suite(seed),
        sandwich_suite(),
        measurement_bound_suite(seed),
        bell_invariance_suite(seed, bells),
        pinching_suite(seed),
        schur_oracle_suite(),
        lift_error_equality_suite(seed),
    ]
}

/// The four Bell vectors with the antisymmetric sign flipped on the last:
/// a negative control that must make the invariance suite fail.
pub fn corrupted_bells() -> [PureState; 4] {
    let mut bells = bell_states();
    let flipped: Vec<Complex64> = bells[3]
        .amplitudes()
        .iter()
        .map(|z| Complex64::new(z.norm(), 0.0))
        .collect();
    bells[3] = PureState::new(flipped).expect("still normalized");
    bells
}

fn pair_mixture_suite(seed: u64) -> SuiteResult {
    let mut passed = 0;
    let total = 500;
    for round in 0..total as u64 {
        let dim = if round % 2 == 0 { 2 } else { 4 };
        let v = random_pure(dim, seed.wrapping_add(round * 2 + 1));
        let w = random_pure(dim, seed.wrapping_add(round * 2 + 2).wrapping_mul(31));
        let closed = pair_mixture_entropy(&v, &w).unwrap();
        let mixture = DensityMatrix::mixture(&[
            (0.5, &DensityMatrix::from_pure(&v)),
            (0.5, &DensityMatrix::from_pure(&w)),
        ])
        .unwrap();
        let direct = von_neumann_entropy(&mixture).unwrap();
        if (closed - direct).abs() <= 1e-10 {
            passed += 1;
        }
    }
    SuiteResult {
        name: "pair_mixture_entropy",
        passed,
        total,
    }
}

fn sandwich_suite() -> SuiteResult {
    let mut passed = 0;
    let total = 101;
    for step in 0..total {
        let x = step as f64 / 100.0;
        let (lower, mid, upper) = entropy_sandwich(x).unwrap();
        if lower <= mid && mid <= upper {
            passed += 1;
        }
    }
    SuiteResult {
        name: "entropy_sandwich_grid",
        passed,
        total,
    }
}

fn measurement_bound_suite(seed: u64) -> SuiteResult {
    let mut passed = 0;
    let total = 200;
    for round in 0..total as u64 {
        let (d1, d2) = if round % 2 == 0 { (2, 2) } else { (2, 4) };
        let instance_seed = seed.wrapping_mul(1_000_003).wrapping_add(round);
        let rho = random_density(d1 * d2, instance_seed).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(instance_seed ^ 0xfeed);
        let outcomes = 2 + (rng.random::<u32>() % 3) as usize;
        let raw: Vec<ComplexMatrix> = (0..outcomes)
            .map(|i| {
                random_density(d2, instance_seed.wrapping_mul(7).wrapping_add(i as u64))
                    .unwrap()
                    .matrix()
                    .clone()
            })
            .collect();
        let mut total_op = ComplexMatrix::zeros(d2, d2);
        for g in &raw {
            total_op = total_op.add(g).unwrap();
        }
        let eig = hermitian_eigensystem(&total_op).unwrap();
        let mut inv_root = ComplexMatrix::zeros(d2, d2);
        for i in 0..d2 {
            for j in 0..d2 {
                let mut acc = Complex64::ZERO;
                for (k, &lambda) in eig.values.iter().enumerate() {
                    acc += eig.vectors.get(i, k)
                        * (1.0 / lambda.sqrt())
                        * eig.vectors.get(j, k).conj();
                }
                inv_root.set(i, j, acc);
            }
        }
        let povm: Vec<ComplexMatrix> = raw
            .iter()
            .map(|g| {
                inv_root
                    .mul(g)
                    .unwrap()
                    .mul(&inv_root)
                    .unwrap()
                    .hermitized()
            })
            .collect();

        let decomposition = measurement_decomposition(&rho, &povm, (d1, d2)).unwrap();
        let lambdas: Vec<f64> = decomposition.iter().map(|(l, _)| *l).collect();
        let mut rhs = shannon_entropy(&lambdas).unwrap();
        for (lambda, sigma) in &decomposition {
            rhs += lambda * von_neumann_entropy(sigma).unwrap();
        }
        if von_neumann_entropy(&rho).unwrap() <= rhs + 1e-10 {
            passed += 1;
        }
    }
    SuiteResult {
        name: "measurement_entropy_bound",
        passed,
        total,
    }
}

fn bell_invariance_suite(seed: u64, bells: &[PureState; 4]) -> SuiteResult {
    let mut passed = 0;
    let mut total = 0;
    let alpha = adder_channel(2).unwrap();
    let flip = flip_operator();

    // orthonormality
    for (i, a) in bells.iter().enumerate() {
        for (j, b) in bells.iter().enumerate() {
            total += 1;
            let overlap = a.inner(b).unwrap().norm();
            let expected = if i == j { 1.0 } else { 0.0 };
            if (overlap - expected).abs() <= 1e-10 {
                passed += 1;
            }
        }
    }
    // flip phases (+1, +1, +1, -1) and channel fixed points
    for (k, bell) in bells.iter().enumerate() {
        let phase = if k == 3 { -1.0 } else { 1.0 };
        total += 1;
        let flipped = bell.apply(&flip).unwrap();
        let deviation = flipped
            .amplitudes()
            .iter()
            .zip(bell.amplitudes())
            .map(|(x, y)| (x - y * phase).norm())
            .fold(0.0, f64::max);
        if deviation <= 1e-10 {
            passed += 1;
        }

        total += 1;
        let state = DensityMatrix::from_pure(bell);
        let through = apply_channel(&alpha, &state).unwrap();
        if through.matrix().max_abs_diff(state.matrix()) <= 1e-10 {
            passed += 1;
        }
    }
    // random Bell-diagonal mixtures stay fixed
    for round in 0..200u64 {
        total += 1;
        let mut rng = ChaCha12Rng::seed_from_u64(seed.wrapping_add(round).wrapping_mul(97));
        let raw: Vec<f64> = (0..4).map(|_| rng.random::<f64>() + 1e-3).collect();
        let norm: f64 = raw.iter().sum();
        let parts: Vec<(f64, DensityMatrix)> = bells
            .iter()
            .zip(&raw)
            .map(|(b, w)| (w / norm, DensityMatrix::from_pure(b)))
            .collect();
        let refs: Vec<(f64, &DensityMatrix)> = parts.iter().map(|(w, s)| (*w, s)).collect();
        let mixture = match DensityMatrix::mixture(&refs) {
            Ok(m) => m,
            Err(_) => continue,
        };
        let through = apply_channel(&alpha, &mixture).unwrap();
        if through.matrix().max_abs_diff(mixture.matrix()) <= 1e-10 {
            passed += 1;
        }
    }
    SuiteResult {
        name: "bell_invariance",
        passed,
        total,
    }
}

fn pinching_suite(seed: u64) -> SuiteResult {
    let mut passed = 0;
    let total = 200;
    let alpha = adder_channel(2).unwrap();
    let (symmetric, antisymmetric) = pinching_projectors();
    for round in 0..total as u64 {
        let rho = random_density(4, seed.wrapping_mul(613).wrapping_add(round)).unwrap();
        let direct = apply_channel(&alpha, &rho).unwrap();
        let pinched = symmetric
            .conjugate_with(rho.matrix())
            .unwrap()
            .add(&antisymmetric.conjugate_with(rho.matrix()).unwrap())
            .unwrap();
        if direct.matrix().max_abs_diff(&pinched) <= 1e-10 {
            passed += 1;
        }
    }
    SuiteResult {
        name: "pinching_identity",
        passed,
        total,
    }
}

fn schur_oracle_suite() -> SuiteResult {
    let mut passed = 0;
    let total = 4;
    for senders in 1..=4usize {
        let formula = quantum_rate_sum(senders);
        let oracle = 2.0 * senders as f64 - tau_entropy_oracle(senders).unwrap();
        if (formula - oracle).abs() <= 1e-9 {
            passed += 1;
        }
    }
    SuiteResult {
        name: "schur_oracle",
        passed,
        total,
    }
}

fn random_small_code(rng: &mut ChaCha12Rng) -> (AdderCode, Decoder) {
    let n = 1 + (rng.random::<u32>() % 2) as usize;
    let max_words = 1usize << n;
    let mut books: Vec<Vec<Vec<u8>>> = Vec::new();
    for _ in 0..2 {
        let size = 1 + (rng.random::<u32>() as usize % max_words.min(4));
        let mut words: Vec<usize> = (0..max_words).collect();
        for i in 0..size {
            let j = i + rng.random::<u32>() as usize % (max_words - i);
            words.swap(i, j);
        }
        books.push(
            words[..size]
                .iter()
                .map(|&w| (0..n).map(|t| ((w >> (n - 1 - t)) & 1) as u8).collect())
                .collect(),
        );
    }
    let code = AdderCode::new(n, books[0].clone(), books[1].clone()).unwrap();
    let (m1, m2) = (code.book1().len(), code.book2().len());
    let mut decoder = Decoder::new();
    for w1 in code.book1() {
        for w2 in code.book2() {
            let sum = qadder::classical_adder_output(w1, w2).unwrap();
            if rng.random::<f64>() < 0.85 {
                decoder.insert(
                    sum,
                    (
                        rng.random::<u32>() as usize % m1,
                        rng.random::<u32>() as usize % m2,
                    ),
                );
            }
        }
    }
    (code.with_decoder(decoder.clone()), decoder)
}

fn lift_error_equality_suite(seed: u64) -> SuiteResult {
    let mut passed = 0;
    let total = 20;
    let alpha = adder_channel(2).unwrap();
    let mut rng = ChaCha12Rng::seed_from_u64(seed.wrapping_mul(31).wrapping_add(5));
    for _ in 0..total {
        let (code, decoder) = random_small_code(&mut rng);
        let base_perf = classical_code_performance(&code, &decoder).unwrap();
        let lifted = ghz_lift(&code).unwrap();
        let lifted_perf = error_probability(&lifted, &alpha).unwrap();
        let phase_words = 1usize << code.n();
        let mut all_match = true;
        for (m1, row) in base_perf.per_message_errors.iter().enumerate() {
            for (m2, &base_error) in row.iter().enumerate() {
                for c in 0..phase_words {
                    let lifted_error = lifted_perf.per_message_errors[m1 * phase_words + c][m2];
                    if (lifted_error - base_error).abs() > 1e-10 {
                        all_match = false;
                    }
                }
            }
        }
        if all_match {
            passed += 1;
        }
    }
    SuiteResult {
        name: "ghz_lift_error_equality",
        passed,
        total,
    }
}
