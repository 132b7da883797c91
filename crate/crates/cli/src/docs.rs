//! Machine-readable output documents. JSON keys are lower_snake_case and
//! every document carries `schema_version: 1`; CSV uses '.' decimals with
//! nine significant digits.

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Constraint {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionDocument {
    pub schema_version: u32,
    pub scenario: String,
    pub constraints: Vec<Constraint>,
    pub vertices: Vec<[f64; 2]>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedAction {
    pub weight: f64,
    pub action: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizeDocument {
    pub schema_version: u32,
    pub scenario: String,
    pub mode: String,
    pub seed: u64,
    pub restarts: usize,
    pub budget: u64,
    pub evaluations: u64,
    pub best_restart: usize,
    pub best_value: f64,
    pub sender1: Vec<WeightedAction>,
    pub sender2: Vec<WeightedAction>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateSumRowDocument {
    pub senders: usize,
    pub quantum_sum: f64,
    pub classical_sum: f64,
    pub asymptote: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateSumDocument {
    pub schema_version: u32,
    pub rows: Vec<RateSumRowDocument>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulateDocument {
    pub schema_version: u32,
    pub code: String,
    pub rates: [f64; 2],
    pub average_error: f64,
    pub max_message_error: f64,
    pub per_message_errors: Vec<Vec<f64>>,
    pub zero_error: bool,
}

/// Input schema for code files: bit-string codebooks with an optional
/// decoder table keyed by comma-joined sum words ("0,2" decodes to a
/// message index pair).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CodeFile {
    pub n: usize,
    pub book1: Vec<String>,
    pub book2: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decoder: Option<std::collections::BTreeMap<String, (usize, usize)>>,
}

/// Format a value with nine significant digits, plain decimal where that is
/// readable and scientific notation for extreme magnitudes.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    if (-4..9).contains(&magnitude) {
        let decimals = (8 - magnitude).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.8e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn region_document_round_trips() {
        let doc = RegionDocument {
            schema_version: SCHEMA_VERSION,
            scenario: "classical".into(),
            constraints: vec![Constraint {
                a: 1.0,
                b: 0.0,
                c: 1.0,
            }],
            vertices: vec![[0.0, 0.0], [1.0, 0.5]],
            notes: vec!["note".into()],
        };
        let text = serde_json::to_string(&doc).unwrap();
        let back: RegionDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(doc, back);
    }

    #[test]
    fn ratesum_document_round_trips_with_missing_oracle() {
        let doc = RateSumDocument {
            schema_version: SCHEMA_VERSION,
            rows: vec![
                RateSumRowDocument {
                    senders: 2,
                    quantum_sum: 3.1887,
                    classical_sum: 1.5,
                    asymptote: 1.5,
                    oracle: Some(3.1887),
                },
                RateSumRowDocument {
                    senders: 512,
                    quantum_sum: 12.0,
                    classical_sum: 4.0,
                    asymptote: 13.5,
                    oracle: None,
                },
            ],
        };
        let text = serde_json::to_string(&doc).unwrap();
        let back: RateSumDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(doc, back);
    }

    #[test]
    fn optimize_and_simulate_documents_round_trip() {
        let opt = OptimizeDocument {
            schema_version: SCHEMA_VERSION,
            scenario: "2ebit".into(),
            mode: "pauli".into(),
            seed: 42,
            restarts: 8,
            budget: 20_000,
            evaluations: 812,
            best_restart: 0,
            best_value: 3.188721875540867,
            sender1: vec![WeightedAction {
                weight: 0.25,
                action: "I".into(),
            }],
            sender2: vec![WeightedAction {
                weight: 0.25,
                action: "Z".into(),
            }],
        };
        let back: OptimizeDocument =
            serde_json::from_str(&serde_json::to_string(&opt).unwrap()).unwrap();
        assert_eq!(opt, back);

        let sim = SimulateDocument {
            schema_version: SCHEMA_VERSION,
            code: "dense".into(),
            rates: [2.0, 0.0],
            average_error: 0.0,
            max_message_error: 0.0,
            per_message_errors: vec![vec![0.0]; 4],
            zero_error: true,
        };
        let back: SimulateDocument =
            serde_json::from_str(&serde_json::to_string(&sim).unwrap()).unwrap();
        assert_eq!(sim, back);

        let code = CodeFile {
            n: 2,
            book1: vec!["00".into(), "11".into()],
            book2: vec!["01".into()],
            decoder: Some(
                [("0,1".to_string(), (0usize, 0usize))]
                    .into_iter()
                    .collect(),
            ),
        };
        let back: CodeFile = serde_json::from_str(&serde_json::to_string(&code).unwrap()).unwrap();
        assert_eq!(code, back);
    }

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(fmt_sig(0.0), "0");
        assert_eq!(fmt_sig(1.5), "1.50000000");
        assert_eq!(fmt_sig(3.188721875540867), "3.18872188");
        assert_eq!(fmt_sig(0.000123456789), "0.000123456789");
        assert!(fmt_sig(1e-15).contains('e'));
    }
}
