//! Command implementations: argument validation, document assembly, and
//! output emission.

use std::path::{Path, PathBuf};

use qadder::capacity::{
    named_region, optimize_rate_sum, time_sharing_region, EncodingMode, NamedRegion, RateRegion,
    Scenario, ScenarioKind, TimeSharingParams,
};
use qadder::channels::{adder_channel, bell_states};
use qadder::codes::{
    classical_code_performance, dense_coding_code, error_probability, ghz_lift, inverse_decoder,
    wrap_shared_randomness, AdderCode, CodePerformance, Decoder,
};
use qadder::rate_sum_table;

use crate::docs::{
    fmt_sig, CodeFile, Constraint, OptimizeDocument, RateSumDocument, RateSumRowDocument,
    RegionDocument, SimulateDocument, WeightedAction, SCHEMA_VERSION,
};
use crate::verify;
use crate::{Format, OptimizeArgs, RatesumArgs, RegionArgs, SimulateArgs, VerifyArgs};

/// Usage problems exit with 2, runtime failures with 1.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failure(String),
}

pub type CmdResult = Result<i32, CliError>;

fn usage(message: impl Into<String>) -> CliError {
    CliError::Usage(message.into())
}

/// Errors out of the library are almost always bad arguments or bad input
/// files, so they map to usage errors.
fn lib_err(err: qadder::Error) -> CliError {
    usage(err.to_string())
}

/// Print a line, exiting quietly when the downstream reader has gone away
/// (standard pipeline behavior, e.g. piping into `head`).
pub fn print_stdout(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let result = out
        .write_all(text.as_bytes())
        .and_then(|_| out.write_all(b"\n"))
        .and_then(|_| out.flush());
    if let Err(e) = result {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: cannot write to stdout: {e}");
        std::process::exit(1);
    }
}

fn emit(text: String, out: &Option<PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Failure(format!("cannot write {}: {e}", path.display()))),
        None => {
            print_stdout(&text);
            Ok(())
        }
    }
}

fn to_json<T: serde::Serialize>(doc: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(doc)
        .map_err(|e| CliError::Failure(format!("serialization failed: {e}")))
}

/// Scenario strings: `classical`, `unassisted`, `ghz`, `2ebit`, `ss`,
/// `ss:<alpha>`.
fn parse_scenario_tag(
    raw: &str,
    alpha_flag: Option<f64>,
) -> Result<(String, Option<f64>), CliError> {
    if let Some(rest) = raw.strip_prefix("ss:") {
        let alpha: f64 = rest
            .parse()
            .map_err(|_| usage(format!("cannot parse entanglement amplitude {rest:?}")))?;
        return Ok(("ss".into(), Some(alpha)));
    }
    if raw == "ss" {
        let alpha =
            alpha_flag.ok_or_else(|| usage("scenario ss needs --alpha or the ss:<alpha> form"))?;
        return Ok(("ss".into(), Some(alpha)));
    }
    Ok((raw.to_string(), alpha_flag))
}

pub fn cmd_region(args: &RegionArgs) -> CmdResult {
    let (tag, alpha) = parse_scenario_tag(&args.scenario, args.alpha)?;
    let (region, notes): (RateRegion, Vec<String>) = match tag.as_str() {
        "classical" => (
            named_region(NamedRegion::Classical),
            vec!["unassisted product-state encodings; the proved two-sender region".into()],
        ),
        "ghz" => (
            named_region(NamedRegion::Ghz),
            vec!["shared GHZ state; the rate-sum cap 5/2 is proved tight".into()],
        ),
        "2ebit" => (
            named_region(NamedRegion::TwoEbitUnitary),
            vec!["maximal sender-receiver entanglement, unitary encodings".into()],
        ),
        "ss" => {
            let params = TimeSharingParams::new(alpha.expect("alpha parsed")).map_err(lib_err)?;
            (
                time_sharing_region(params),
                vec![
                    format!(
                        "sender-sender entanglement amplitude {} (entropy {} bits)",
                        fmt_sig(params.alpha()),
                        fmt_sig(params.entropy())
                    ),
                    "achievable by time sharing; the rate-sum bound is a conjectured converse"
                        .into(),
                ],
            )
        }
        other => return Err(usage(format!("unknown scenario {other:?}"))),
    };

    let doc = RegionDocument {
        schema_version: SCHEMA_VERSION,
        scenario: args.scenario.clone(),
        constraints: region
            .constraints()
            .iter()
            .map(|&(a, b, c)| Constraint { a, b, c })
            .collect(),
        vertices: region.vertices().iter().map(|&(x, y)| [x, y]).collect(),
        notes,
    };
    let text = match args.format {
        Format::Json => to_json(&doc)?,
        Format::Csv => {
            let mut lines = vec!["record,a_or_r1,b_or_r2,c".to_string()];
            for c in &doc.constraints {
                lines.push(format!(
                    "constraint,{},{},{}",
                    fmt_sig(c.a),
                    fmt_sig(c.b),
                    fmt_sig(c.c)
                ));
            }
            for v in &doc.vertices {
                lines.push(format!("vertex,{},{},", fmt_sig(v[0]), fmt_sig(v[1])));
            }
            lines.join("\n")
        }
    };
    emit(text, &args.out)?;
    Ok(0)
}

pub fn cmd_optimize(args: &OptimizeArgs) -> CmdResult {
    let (tag, alpha) = parse_scenario_tag(&args.scenario, args.alpha)?;
    let kind = match tag.as_str() {
        "unassisted" => ScenarioKind::Unassisted,
        "ghz" => ScenarioKind::Ghz,
        "2ebit" => ScenarioKind::TwoEbit,
        "ss" => ScenarioKind::SenderSender {
            alpha: alpha.expect("alpha parsed"),
        },
        other => return Err(usage(format!("unknown scenario {other:?}"))),
    };
    let mode = match (&args.mode, &kind) {
        (Some(m), _) => match m.as_str() {
            "prepare" => EncodingMode::Prepare,
            "unitary" => EncodingMode::Unitary,
            "pauli" => EncodingMode::Pauli,
            other => return Err(usage(format!("unknown encoding mode {other:?}"))),
        },
        (None, ScenarioKind::Unassisted) => EncodingMode::Prepare,
        (None, _) => EncodingMode::Unitary,
    };
    if args.restarts == 0 || args.budget == 0 {
        return Err(usage("restarts and budget must be positive"));
    }

    let scenario = Scenario::new(kind, mode).map_err(lib_err)?;
    let outcome =
        optimize_rate_sum(&scenario, args.restarts, args.seed, args.budget).map_err(lib_err)?;

    let actions = |side: &[(f64, String)]| {
        side.iter()
            .map(|(w, label)| WeightedAction {
                weight: *w,
                action: label.clone(),
            })
            .collect::<Vec<_>>()
    };
    let doc = OptimizeDocument {
        schema_version: SCHEMA_VERSION,
        scenario: args.scenario.clone(),
        mode: format!("{mode:?}").to_lowercase(),
        seed: args.seed,
        restarts: args.restarts,
        budget: args.budget,
        evaluations: outcome.evaluations,
        best_restart: outcome.best_restart,
        best_value: outcome.best_value,
        sender1: actions(outcome.best_ensemble.sender1()),
        sender2: actions(outcome.best_ensemble.sender2()),
    };
    let text = match args.format {
        Format::Json => to_json(&doc)?,
        Format::Csv => {
            let mut lines = vec!["field,value".to_string()];
            lines.push(format!("best_value,{}", fmt_sig(doc.best_value)));
            lines.push(format!("evaluations,{}", doc.evaluations));
            lines.push(format!("best_restart,{}", doc.best_restart));
            lines.push(format!("seed,{}", doc.seed));
            lines.push(format!("restarts,{}", doc.restarts));
            lines.push(format!("budget,{}", doc.budget));
            for (name, side) in [("sender1", &doc.sender1), ("sender2", &doc.sender2)] {
                for (i, wa) in side.iter().enumerate() {
                    lines.push(format!("{name}[{i}],{}:{}", fmt_sig(wa.weight), wa.action));
                }
            }
            lines.join("\n")
        }
    };
    emit(text, &args.out)?;
    Ok(0)
}

pub fn cmd_ratesum(args: &RatesumArgs) -> CmdResult {
    let senders: Vec<usize> = match (&args.max, &args.list) {
        (Some(max), None) => {
            if *max == 0 {
                return Err(usage("--max must be at least 1"));
            }
            (1..=*max).collect()
        }
        (None, Some(list)) => list
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<usize>()
                    .map_err(|_| usage(format!("cannot parse sender count {part:?}")))
            })
            .collect::<Result<_, _>>()?,
        _ => return Err(usage("pass exactly one of --max or --list")),
    };
    let table = rate_sum_table(&senders).map_err(lib_err)?;
    let rows: Vec<RateSumRowDocument> = table
        .rows
        .iter()
        .map(|r| RateSumRowDocument {
            senders: r.senders,
            quantum_sum: r.quantum_sum,
            classical_sum: r.classical_sum,
            asymptote: r.asymptote,
            oracle: r.oracle,
        })
        .collect();
    let doc = RateSumDocument {
        schema_version: SCHEMA_VERSION,
        rows,
    };

    let text = match args.format {
        Format::Json => to_json(&doc)?,
        Format::Csv => {
            let mut lines = vec!["L,quantum_sum,classical_sum,asymptote,oracle".to_string()];
            for row in &doc.rows {
                lines.push(format!(
                    "{},{},{},{},{}",
                    row.senders,
                    fmt_sig(row.quantum_sum),
                    fmt_sig(row.classical_sum),
                    fmt_sig(row.asymptote),
                    row.oracle.map(fmt_sig).unwrap_or_default()
                ));
            }
            lines.join("\n")
        }
    };
    emit(text, &args.out)?;

    if let Some(script_path) = &args.plot_script {
        let data = args
            .out
            .as_deref()
            .map(Path::to_path_buf)
            .unwrap_or_else(|| PathBuf::from("ratesum.csv"));
        let script = format!(
            "set datafile separator ','\n\
             set logscale x 2\n\
             set xlabel 'senders L'\n\
             set ylabel 'achievable rate sum [bits]'\n\
             set key left top\n\
             plot '{data}' every ::1 using 1:2 with points title 'assisted', \\\n\
             \x20    '{data}' every ::1 using 1:4 with lines title '1.5 log2(L)', \\\n\
             \x20    '{data}' every ::1 using 1:3 with points title 'classical'\n",
            data = data.display()
        );
        std::fs::write(script_path, script).map_err(|e| {
            CliError::Failure(format!("cannot write {}: {e}", script_path.display()))
        })?;
    }
    Ok(0)
}

fn load_code_file(path: &str) -> Result<(AdderCode, Option<Decoder>), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read code file {path}: {e}")))?;
    let file: CodeFile = serde_json::from_str(&text).map_err(|e| {
        usage(format!(
            "malformed code file {path} at line {}: {e}",
            e.line()
        ))
    })?;

    let parse_book = |book: &[String], name: &str| -> Result<Vec<Vec<u8>>, CliError> {
        book.iter()
            .map(|word| {
                word.bytes()
                    .map(|b| match b {
                        b'0' => Ok(0u8),
                        b'1' => Ok(1u8),
                        other => Err(usage(format!(
                            "{name} word {word:?} has a non-bit character {:?}",
                            other as char
                        ))),
                    })
                    .collect()
            })
            .collect()
    };
    let code = AdderCode::new(
        file.n,
        parse_book(&file.book1, "book1")?,
        parse_book(&file.book2, "book2")?,
    )
    .map_err(lib_err)?;

    let decoder = match &file.decoder {
        None => None,
        Some(map) => {
            let mut decoder = Decoder::new();
            for (key, &(m1, m2)) in map {
                let sum: Vec<u8> = key
                    .split(',')
                    .map(|d| {
                        d.trim()
                            .parse::<u8>()
                            .ok()
                            .filter(|&v| v <= 2)
                            .ok_or_else(|| usage(format!("bad decoder key {key:?}")))
                    })
                    .collect::<Result<_, _>>()?;
                if sum.len() != file.n {
                    return Err(usage(format!("decoder key {key:?} has wrong length")));
                }
                decoder.insert(sum, (m1, m2));
            }
            Some(decoder)
        }
    };
    Ok((code, decoder))
}

fn decoder_or_inverse(code: &AdderCode, decoder: Option<Decoder>) -> Result<Decoder, CliError> {
    match decoder {
        Some(d) => Ok(d),
        None => inverse_decoder(code).map_err(|_| {
            usage("code file has no decoder and is not zero-error; supply a decoder table")
        }),
    }
}

pub fn cmd_simulate(args: &SimulateArgs) -> CmdResult {
    let (performance, rates): (CodePerformance, (f64, f64)) = match args.code.as_str() {
        "dense" => {
            let code = dense_coding_code();
            let alpha = adder_channel(2).map_err(lib_err)?;
            let perf = error_probability(&code, &alpha).map_err(lib_err)?;
            (perf, code.rates())
        }
        spec => {
            let (kind, path) = spec
                .split_once(':')
                .ok_or_else(|| usage(format!("unknown code {spec:?}; use dense, classical:<file>, ghz-lift:<file>, or wrap:<file>")))?;
            let (code, decoder) = load_code_file(path)?;
            match kind {
                "classical" => {
                    let decoder = decoder_or_inverse(&code, decoder)?;
                    let rates = code.rates();
                    (
                        classical_code_performance(&code, &decoder).map_err(lib_err)?,
                        rates,
                    )
                }
                "ghz-lift" => {
                    let decoder = decoder_or_inverse(&code, decoder)?;
                    let lifted = ghz_lift(&code.with_decoder(decoder)).map_err(lib_err)?;
                    let alpha = adder_channel(2).map_err(lib_err)?;
                    let rates = lifted.rates();
                    (error_probability(&lifted, &alpha).map_err(lib_err)?, rates)
                }
                "wrap" => {
                    let decoder = decoder_or_inverse(&code, decoder)?;
                    let rates = code.rates();
                    let wrapped = wrap_shared_randomness(code);
                    (wrapped.performance(&decoder).map_err(lib_err)?, rates)
                }
                other => return Err(usage(format!("unknown code kind {other:?}"))),
            }
        }
    };

    let doc = SimulateDocument {
        schema_version: SCHEMA_VERSION,
        code: args.code.clone(),
        rates: [rates.0, rates.1],
        average_error: performance.average_error,
        max_message_error: performance.max_message_error,
        per_message_errors: performance.per_message_errors.clone(),
        zero_error: performance.max_message_error <= 1e-12,
    };
    let text = match args.format {
        Format::Json => to_json(&doc)?,
        Format::Csv => {
            let mut lines = vec!["field,value".to_string()];
            lines.push(format!("rate1,{}", fmt_sig(doc.rates[0])));
            lines.push(format!("rate2,{}", fmt_sig(doc.rates[1])));
            lines.push(format!("average_error,{}", fmt_sig(doc.average_error)));
            lines.push(format!(
                "max_message_error,{}",
                fmt_sig(doc.max_message_error)
            ));
            lines.push(format!("zero_error,{}", doc.zero_error));
            for (i, row) in doc.per_message_errors.iter().enumerate() {
                for (j, &e) in row.iter().enumerate() {
                    lines.push(format!("error[{i}][{j}],{}", fmt_sig(e)));
                }
            }
            lines.join("\n")
        }
    };
    emit(text, &args.out)?;
    Ok(0)
}

pub fn cmd_verify(args: &VerifyArgs) -> CmdResult {
    let bells = if args.corrupt_bell {
        verify::corrupted_bells()
    } else {
        bell_states()
    };
    let results = verify::run_all(args.seed, &bells);
    let mut all_ok = true;
    for suite in &results {
        let status = if suite.ok() { "pass" } else { "FAIL" };
        print_stdout(&format!(
            "{status} {name}: {passed}/{total}",
            name = suite.name,
            passed = suite.passed,
            total = suite.total
        ));
        all_ok &= suite.ok();
    }
    if all_ok {
        print_stdout(&format!(
            "verification passed ({} suites, seed {})",
            results.len(),
            args.seed
        ));
        Ok(0)
    } else {
        print_stdout(&format!("verification FAILED (seed {})", args.seed));
        Ok(1)
    }
}
