//! Classical block codes for the binary adder channel: codebooks, the
//! deterministic sum output, zero-error checking by exhaustive enumeration,
//! exact per-message error evaluation, and the shared-randomness wrapper
//! that flattens per-message errors to the average.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// A codeword is a block of bits.
pub type Word = Vec<u8>;
/// Channel outputs are componentwise sums in {0, 1, 2}.
pub type SumWord = Vec<u8>;
/// Decoders map reachable sum words to message pairs; unmapped sums count
/// as errors.
pub type Decoder = BTreeMap<SumWord, (usize, usize)>;

/// Exhaustive checks are capped at this many codeword pairs.
const MAX_PAIRS: usize = 1 << 20;

/// The deterministic two-sender adder output y = x1 + x2, componentwise.
pub fn classical_adder_output(x1: &[u8], x2: &[u8]) -> Result<SumWord> {
    if x1.len() != x2.len() {
        return Err(Error::DimensionMismatch(format!(
            "codeword lengths {} and {} differ",
            x1.len(),
            x2.len()
        )));
    }
    if x1.iter().chain(x2).any(|&b| b > 1) {
        return Err(Error::InvalidParameter("codewords must be bits".into()));
    }
    Ok(x1.iter().zip(x2).map(|(a, b)| a + b).collect())
}

/// A pair of codebooks with an optional decoder table.
#[derive(Debug, Clone)]
pub struct AdderCode {
    n: usize,
    book1: Vec<Word>,
    book2: Vec<Word>,
    decoder: Option<Decoder>,
}

impl AdderCode {
    /// Words must all have length `n`, be bits, and be distinct within each
    /// book.
    pub fn new(n: usize, book1: Vec<Word>, book2: Vec<Word>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "block length must be at least 1".into(),
            ));
        }
        for (name, book) in [("book1", &book1), ("book2", &book2)] {
            if book.is_empty() {
                return Err(Error::InvalidParameter(format!("{name} is empty")));
            }
            for word in book {
                if word.len() != n {
                    return Err(Error::DimensionMismatch(format!(
                        "{name} word {word:?} does not have length {n}"
                    )));
                }
                if word.iter().any(|&b| b > 1) {
                    return Err(Error::InvalidParameter(format!(
                        "{name} word {word:?} has a non-bit entry"
                    )));
                }
            }
            for (i, word) in book.iter().enumerate() {
                if book[i + 1..].contains(word) {
                    return Err(Error::InvalidParameter(format!(
                        "{name} repeats the word {word:?}"
                    )));
                }
            }
        }
        Ok(Self {
            n,
            book1,
            book2,
            decoder: None,
        })
    }

    pub fn with_decoder(mut self, decoder: Decoder) -> Self {
        self.decoder = Some(decoder);
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn book1(&self) -> &[Word] {
        &self.book1
    }

    pub fn book2(&self) -> &[Word] {
        &self.book2
    }

    pub fn decoder(&self) -> Option<&Decoder> {
        self.decoder.as_ref()
    }

    /// (log₂|book1|/n, log₂|book2|/n) in bits per channel use.
    pub fn rates(&self) -> (f64, f64) {
        (
            (self.book1.len() as f64).log2() / self.n as f64,
            (self.book2.len() as f64).log2() / self.n as f64,
        )
    }
}

/// Outcome of the exhaustive distinct-sums check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroErrorReport {
    pub zero_error: bool,
    /// The first two message pairs found to collide, if any.
    pub collision: Option<((usize, usize), (usize, usize))>,
}

/// A code is zero-error exactly when all pairwise sums are distinct; the
/// inverse sum table is then an error-free decoder.
pub fn zero_error_check(code: &AdderCode) -> Result<ZeroErrorReport> {
    if code.book1.len() * code.book2.len() > MAX_PAIRS {
        return Err(Error::TooLarge(format!(
            "{} codeword pairs exceed the exhaustive-check cap",
            code.book1.len() * code.book2.len()
        )));
    }
    let mut seen: BTreeMap<SumWord, (usize, usize)> = BTreeMap::new();
    for (i, w1) in code.book1.iter().enumerate() {
        for (j, w2) in code.book2.iter().enumerate() {
            let sum = classical_adder_output(w1, w2)?;
            if let Some(&first) = seen.get(&sum) {
                return Ok(ZeroErrorReport {
                    zero_error: false,
                    collision: Some((first, (i, j))),
                });
            }
            seen.insert(sum, (i, j));
        }
    }
    Ok(ZeroErrorReport {
        zero_error: true,
        collision: None,
    })
}

/// The inverse sum table of a zero-error code; fails on codes with
/// colliding sums.
pub fn inverse_decoder(code: &AdderCode) -> Result<Decoder> {
    let report = zero_error_check(code)?;
    if !report.zero_error {
        return Err(Error::InvalidParameter(format!(
            "code is not zero-error: messages {:?} and {:?} collide",
            report.collision.unwrap().0,
            report.collision.unwrap().1
        )));
    }
    let mut decoder = Decoder::new();
    for (i, w1) in code.book1.iter().enumerate() {
        for (j, w2) in code.book2.iter().enumerate() {
            decoder.insert(classical_adder_output(w1, w2)?, (i, j));
        }
    }
    Ok(decoder)
}

/// Exact per-message error probabilities with their average and maximum.
#[derive(Debug, Clone, PartialEq)]
pub struct CodePerformance {
    pub per_message_errors: Vec<Vec<f64>>,
    pub average_error: f64,
    pub max_message_error: f64,
}

impl CodePerformance {
    pub fn from_matrix(per_message_errors: Vec<Vec<f64>>) -> Self {
        let count: usize = per_message_errors.iter().map(Vec::len).sum();
        let sum: f64 = per_message_errors.iter().flatten().sum();
        let max = per_message_errors
            .iter()
            .flatten()
            .copied()
            .fold(0.0, f64::max);
        Self {
            per_message_errors,
            average_error: sum / count as f64,
            max_message_error: max,
        }
    }
}

/// Evaluate a classical code against a decoder table by enumeration; the
/// channel is deterministic, so every per-message error is 0 or 1.
pub fn classical_code_performance(code: &AdderCode, decoder: &Decoder) -> Result<CodePerformance> {
    let mut matrix = Vec::with_capacity(code.book1.len());
    for (i, w1) in code.book1.iter().enumerate() {
        let mut row = Vec::with_capacity(code.book2.len());
        for (j, w2) in code.book2.iter().enumerate() {
            let sum = classical_adder_output(w1, w2)?;
            let correct = decoder.get(&sum) == Some(&(i, j));
            row.push(if correct { 0.0 } else { 1.0 });
        }
        matrix.push(row);
    }
    Ok(CodePerformance::from_matrix(matrix))
}

/// A base code wrapped with per-sender shared randomness X_i uniform on the
/// message range: messages are sent as m_i + X_i mod M_i and unshifted after
/// decoding.
#[derive(Debug, Clone)]
pub struct SharedRandomnessCode {
    base: AdderCode,
    randomness: (usize, usize),
}

/// Wrap a code; the randomness ranges equal the base message counts.
pub fn wrap_shared_randomness(base: AdderCode) -> SharedRandomnessCode {
    let randomness = (base.book1.len(), base.book2.len());
    SharedRandomnessCode { base, randomness }
}

impl SharedRandomnessCode {
    pub fn base(&self) -> &AdderCode {
        &self.base
    }

    pub fn randomness_ranges(&self) -> (usize, usize) {
        self.randomness
    }

    /// Exact per-message error of the wrapped scheme, computed as the full
    /// expectation over all (X₁, X₂) values, never by sampling. Every
    /// message pair ends up with the base code's average error.
    pub fn performance(&self, decoder: &Decoder) -> Result<CodePerformance> {
        let base_perf = classical_code_performance(&self.base, decoder)?;
        let (m1, m2) = self.randomness;
        let scale = 1.0 / (m1 * m2) as f64;
        let mut matrix = Vec::with_capacity(m1);
        for msg1 in 0..m1 {
            let mut row = Vec::with_capacity(m2);
            for msg2 in 0..m2 {
                let mut acc = 0.0;
                for x1 in 0..m1 {
                    for x2 in 0..m2 {
                        acc += base_perf.per_message_errors[(msg1 + x1) % m1][(msg2 + x2) % m2];
                    }
                }
                row.push(acc * scale);
            }
            matrix.push(row);
        }
        Ok(CodePerformance::from_matrix(matrix))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(list: &[&str]) -> Vec<Word> {
        list.iter()
            .map(|s| s.bytes().map(|b| b - b'0').collect())
            .collect()
    }

    #[test]
    fn adder_output_basics() {
        assert_eq!(classical_adder_output(&[0], &[0]).unwrap(), vec![0]);
        assert_eq!(classical_adder_output(&[1], &[1]).unwrap(), vec![2]);
        assert_eq!(
            classical_adder_output(&[0, 1], &[1, 0]).unwrap(),
            vec![1, 1]
        );
        assert!(classical_adder_output(&[0, 1], &[1]).is_err());
    }

    #[test]
    fn sixteen_pairs_make_nine_distinct_sums() {
        let all = words(&["00", "01", "10", "11"]);
        let mut sums = std::collections::BTreeSet::new();
        for a in &all {
            for b in &all {
                sums.insert(classical_adder_output(a, b).unwrap());
            }
        }
        assert_eq!(sums.len(), 9);
    }

    #[test]
    fn zero_error_code_detected() {
        let code = AdderCode::new(2, words(&["00", "11"]), words(&["00", "01", "10"])).unwrap();
        let report = zero_error_check(&code).unwrap();
        assert!(report.zero_error);
        let decoder = inverse_decoder(&code).unwrap();
        assert_eq!(decoder.len(), 6);
        let perf = classical_code_performance(&code, &decoder).unwrap();
        assert_eq!(perf.max_message_error, 0.0);
    }

    #[test]
    fn uncoded_bit_pair_collides() {
        let code = AdderCode::new(1, words(&["0", "1"]), words(&["0", "1"])).unwrap();
        let report = zero_error_check(&code).unwrap();
        assert!(!report.zero_error);
        // y = 1 is reachable as (0,1) and (1,0)
        assert_eq!(report.collision, Some(((0, 1), (1, 0))));
    }

    #[test]
    fn singleton_book_is_always_zero_error() {
        let code = AdderCode::new(2, words(&["00", "01", "10", "11"]), words(&["10"])).unwrap();
        assert!(zero_error_check(&code).unwrap().zero_error);
    }

    #[test]
    fn guessing_decoder_quarter_error() {
        let code = AdderCode::new(1, words(&["0", "1"]), words(&["0", "1"])).unwrap();
        let mut decoder = Decoder::new();
        decoder.insert(vec![0], (0, 0));
        decoder.insert(vec![1], (0, 1)); // the guess sacrifices (1, 0)
        decoder.insert(vec![2], (1, 1));
        let perf = classical_code_performance(&code, &decoder).unwrap();
        assert_eq!(
            perf.per_message_errors,
            vec![vec![0.0, 0.0], vec![1.0, 0.0]]
        );
        assert!((perf.average_error - 0.25).abs() < 1e-15);
    }

    #[test]
    fn rejects_duplicate_words() {
        assert!(AdderCode::new(1, words(&["0", "0"]), words(&["1"])).is_err());
    }

    #[test]
    fn wrapper_flattens_biased_errors() {
        let code = AdderCode::new(1, words(&["0", "1"]), words(&["0", "1"])).unwrap();
        let mut decoder = Decoder::new();
        decoder.insert(vec![0], (0, 0));
        decoder.insert(vec![1], (0, 1));
        decoder.insert(vec![2], (1, 1));
        let wrapped = wrap_shared_randomness(code);
        let perf = wrapped.performance(&decoder).unwrap();
        for row in &perf.per_message_errors {
            for &e in row {
                assert!((e - 0.25).abs() < 1e-15);
            }
        }
        assert!((perf.max_message_error - 0.25).abs() < 1e-15);
    }

    #[test]
    fn wrapper_preserves_uniform_errors() {
        let code = AdderCode::new(2, words(&["00", "11"]), words(&["00", "01", "10"])).unwrap();
        let decoder = inverse_decoder(&code).unwrap();
        let wrapped = wrap_shared_randomness(code);
        let perf = wrapped.performance(&decoder).unwrap();
        assert_eq!(perf.max_message_error, 0.0);
    }
}
