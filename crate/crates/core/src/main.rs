//! Command-line front end for the perpendicular generating-function
//! library. Every subcommand supports `--format text` (default) and
//! `--format json`; JSON output is a stable envelope whose payload
//! numbers are decimal strings, so arbitrary precision survives any JSON
//! parser. Exit codes: 0 pass, 1 verification failure, 2 usage error.

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use perpgf::bigpoly::{gaussian_poly, Poly};
use perpgf::identities::{
    check_golden_tables, check_identity_catalog, congruence_scan, quasipolynomial_extract,
    IdentityError, IdentityReport, CATALOG,
};
use perpgf::partitions::p_bounded;
use perpgf::perpgf::{factors_text, perp_gf, PerpError, RationalGF};
use serde::Serialize;
use serde_json::{json, Map, Value};
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "perpgf", version, about = "Exact perpendicular generating functions for Gaussian polynomial coefficients")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for sweep subcommands (default: one per core).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum QuasiStyle {
    /// Perpendicular series for (m, A).
    Perp,
    /// Partitions into at most m parts, shifted by A: z^A / prod(1-z^k).
    Atmost,
}

#[derive(Clone, Copy, ValueEnum)]
enum GoldenWhich {
    M5,
    M6,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Print the coefficient row of the Gaussian polynomial for (m, N).
    Qbin {
        #[arg(long)]
        m: u64,
        #[arg(long = "N")]
        n: u64,
    },
    /// Construct the perpendicular generating function for (m, A) and
    /// print its numerator, denominator factors, and leading series.
    Perp {
        #[arg(long)]
        m: u64,
        #[arg(long = "A", allow_negative_numbers = true)]
        a: i64,
        #[arg(long, default_value_t = 12)]
        terms: usize,
    },
    /// Expand an explicit rational function: numerator coefficients over
    /// a product of (1 - z^k)^mult factors.
    Expand {
        /// Comma-separated numerator coefficients, constant term first.
        #[arg(long, allow_negative_numbers = true)]
        num: String,
        /// Comma-separated denominator factors as k:mult pairs.
        #[arg(long, default_value = "")]
        den: String,
        #[arg(long)]
        terms: usize,
    },
    /// Compare every series coefficient against the brute-force partition
    /// oracle for N <= max-N and A <= max-A.
    Verify {
        #[arg(long)]
        m: u64,
        #[arg(long = "max-N")]
        max_n: u64,
        /// Defaults to floor(m * max-N / 2).
        #[arg(long = "max-A")]
        max_a: Option<u64>,
    },
    /// Extract the quasipolynomial description of a series.
    Quasi {
        #[arg(long)]
        m: u64,
        #[arg(long = "A", allow_negative_numbers = true, default_value_t = 0)]
        a: i64,
        #[arg(long, value_enum, default_value_t = QuasiStyle::Perp)]
        style: QuasiStyle,
    },
    /// Check one first-difference identity from the catalog, or all.
    Identity {
        #[arg(long, default_value = "all")]
        id: String,
        #[arg(long = "max-N", default_value_t = 100)]
        max_n: u64,
    },
    /// Scan both congruence families for a prime modulus.
    Congruence {
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value_t = 1)]
        j: u64,
        #[arg(long = "max-N", default_value_t = 100)]
        max_n: u64,
    },
    /// Validate the stored m = 5, 6 generating-function tables against
    /// freshly constructed ones.
    Golden {
        #[arg(long, value_enum, default_value_t = GoldenWhich::All)]
        which: GoldenWhich,
        #[arg(long = "max-a", default_value_t = 3)]
        max_a: u64,
        #[arg(long, default_value_t = 300)]
        terms: usize,
    },
}

#[derive(Serialize)]
struct Envelope {
    command: String,
    parameters: Map<String, Value>,
    result: Value,
    status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    error_detail: Option<String>,
}

struct CmdError {
    message: String,
    code: u8,
}

/// A finished command: JSON payload, text rendering, and whether every
/// check it ran passed (pass/fail drives the exit code, not the status).
struct CmdOutput {
    result: Value,
    text: String,
    passed: bool,
}

fn ok(result: Value, text: String) -> Result<CmdOutput, CmdError> {
    Ok(CmdOutput {
        result,
        text,
        passed: true,
    })
}

fn usage(message: String) -> CmdError {
    CmdError { message, code: 2 }
}

impl From<PerpError> for CmdError {
    fn from(e: PerpError) -> Self {
        let code = match e {
            PerpError::NegativeA { .. } => 2,
            _ => 1,
        };
        CmdError {
            message: e.to_string(),
            code,
        }
    }
}

impl From<IdentityError> for CmdError {
    fn from(e: IdentityError) -> Self {
        let code = match &e {
            IdentityError::UnknownIdentity(_)
            | IdentityError::NotPrime(_)
            | IdentityError::GoldenIo { .. }
            | IdentityError::GoldenParse { .. } => 2,
            IdentityError::FitFailure(_) => 1,
            IdentityError::Engine(PerpError::NegativeA { .. }) => 2,
            IdentityError::Engine(_) => 1,
        };
        CmdError {
            message: e.to_string(),
            code,
        }
    }
}

/// Replaces every JSON number in the payload by its decimal-string form.
fn stringify_numbers(v: Value) -> Value {
    match v {
        Value::Number(n) => Value::String(n.to_string()),
        Value::Array(a) => Value::Array(a.into_iter().map(stringify_numbers).collect()),
        Value::Object(o) => Value::Object(
            o.into_iter()
                .map(|(k, x)| (k, stringify_numbers(x)))
                .collect(),
        ),
        other => other,
    }
}

fn series_text(series: &[BigInt]) -> String {
    series
        .iter()
        .map(BigInt::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn series_json(series: &[BigInt]) -> Value {
    Value::Array(
        series
            .iter()
            .map(|c| Value::String(c.to_string()))
            .collect(),
    )
}

fn golden_dir() -> PathBuf {
    std::env::var_os("PERPGF_GOLDEN_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("./golden"))
}

fn parse_bigint_list(text: &str) -> Result<Vec<BigInt>, CmdError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<BigInt>()
                .map_err(|_| usage(format!("invalid integer in --num: {s:?}")))
        })
        .collect()
}

fn parse_factor_list(text: &str) -> Result<Vec<(u64, u32)>, CmdError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            let bad = || usage(format!("invalid --den factor {s:?}, expected k:mult"));
            let (k, mult) = s.split_once(':').ok_or_else(bad)?;
            let k: u64 = k.trim().parse().map_err(|_| bad())?;
            let mult: u32 = mult.trim().parse().map_err(|_| bad())?;
            if k == 0 || mult == 0 {
                return Err(bad());
            }
            Ok((k, mult))
        })
        .collect()
}

fn gf_payload(gf: &RationalGF, series: &[BigInt]) -> Value {
    json!({
        "numerator_coefficients": gf.numerator().coeffs().iter()
            .map(|c| Value::String(c.to_string())).collect::<Vec<_>>(),
        "denominator_factors": gf.denominator(),
        "series": series_json(series),
    })
}

fn identity_text(r: &IdentityReport) -> String {
    match &r.counterexample {
        None => format!("{}: pass ({} checks, N <= {})", r.id, r.checked, r.max_n),
        Some(cx) => format!(
            "{}: FAIL at {}: lhs {} != rhs {}",
            r.id, cx.location, cx.lhs, cx.rhs
        ),
    }
}

fn run(cli: &Cli) -> Result<CmdOutput, CmdError> {
    match &cli.command {
        Command::Qbin { m, n } => {
            let poly = gaussian_poly(*m, *n);
            let text = series_text(poly.coeffs());
            ok(json!({ "coefficients": series_json(poly.coeffs()) }), text)
        }
        Command::Perp { m, a, terms } => {
            if *m == 0 {
                return Err(usage("m must be at least 1".to_string()));
            }
            let gf = perp_gf(*m, *a)?;
            let series = gf.expand(*terms);
            let text = format!(
                "numerator: {}\ndenominator: {}\nseries: {}",
                gf.numerator().to_text(),
                factors_text(gf.denominator()),
                series_text(&series)
            );
            ok(gf_payload(&gf, &series), text)
        }
        Command::Expand { num, den, terms } => {
            let coeffs = parse_bigint_list(num)?;
            if coeffs.is_empty() {
                return Err(usage("--num must contain at least one coefficient".to_string()));
            }
            let factors = parse_factor_list(den)?;
            let gf = RationalGF::new(Poly::from_coeffs(coeffs), factors);
            let series = gf.expand(*terms);
            ok(json!({ "series": series_json(&series) }), series_text(&series))
        }
        Command::Verify { m, max_n, max_a } => {
            if *m == 0 {
                return Err(usage("m must be at least 1".to_string()));
            }
            run_verify(*m, *max_n, *max_a)
        }
        Command::Quasi { m, a, style } => {
            let (style_name, gf) = match style {
                QuasiStyle::Perp => {
                    if *m == 0 {
                        return Err(usage("m must be at least 1".to_string()));
                    }
                    ("perp", perp_gf(*m, *a)?)
                }
                QuasiStyle::Atmost => {
                    if *a < 0 {
                        return Err(usage("--A must be nonnegative with --style atmost".to_string()));
                    }
                    let num = Poly::monomial(BigInt::from(1), *a as usize);
                    ("atmost", RationalGF::new(num, (1..=*m).map(|k| (k, 1)).collect()))
                }
            };
            let qp = quasipolynomial_extract(&gf)?;
            let mut text = format!(
                "period: {}\ndegree: {}\nvalid from: {}",
                qp.period,
                qp.degree().map_or_else(|| "-".to_string(), |d| d.to_string()),
                qp.valid_from
            );
            for i in 0..qp.period as usize {
                write!(text, "\nn = {}k + {}: {}", qp.period, i, qp.constituent_text(i)).unwrap();
            }
            let constituents: Vec<Vec<String>> = qp
                .constituents
                .iter()
                .map(|c| c.iter().map(|x| x.to_string()).collect())
                .collect();
            ok(
                json!({
                    "style": style_name,
                    "period": qp.period,
                    "degree": qp.degree(),
                    "valid_from": qp.valid_from,
                    "constituents": constituents,
                }),
                text,
            )
        }
        Command::Identity { id, max_n } => {
            let reports: Vec<IdentityReport> = if id == "all" {
                CATALOG
                    .iter()
                    .map(|id| check_identity_catalog(id, *max_n))
                    .collect::<Result<_, _>>()?
            } else {
                vec![check_identity_catalog(id, *max_n)?]
            };
            let passed = reports.iter().all(|r| r.passed);
            let text = reports
                .iter()
                .map(identity_text)
                .collect::<Vec<_>>()
                .join("\n");
            Ok(CmdOutput {
                result: json!({
                    "passed": passed,
                    "reports": serde_json::to_value(&reports).expect("serializable"),
                }),
                text,
                passed,
            })
        }
        Command::Congruence { prime, j, max_n } => {
            if *j == 0 {
                return Err(usage("--j must be at least 1".to_string()));
            }
            let report = congruence_scan(*prime, *j, *max_n)?;
            let text = match &report.counterexample {
                None => format!(
                    "congruence mod {} (j = {}, a = {}/{}): pass ({} checks, N <= {})",
                    report.prime,
                    report.j,
                    report.a_even_family,
                    report.a_odd_family,
                    report.checked,
                    report.max_n
                ),
                Some(cx) => format!(
                    "congruence mod {}: FAIL at {}: {} != {}",
                    report.prime, cx.location, cx.lhs, cx.rhs
                ),
            };
            let passed = report.passed;
            Ok(CmdOutput {
                result: serde_json::to_value(&report).expect("serializable"),
                text,
                passed,
            })
        }
        Command::Golden {
            which,
            max_a,
            terms,
        } => {
            let which = match which {
                GoldenWhich::M5 => "m5",
                GoldenWhich::M6 => "m6",
                GoldenWhich::All => "all",
            };
            let report = check_golden_tables(&golden_dir(), which, *max_a, *terms)?;
            let text = match &report.failure {
                None => format!(
                    "golden {}: pass ({} cases, {} instances, {}-term series)",
                    report.which, report.cases, report.instances, report.series_terms
                ),
                Some(f) => format!("golden {}: FAIL: {f}", report.which),
            };
            let passed = report.passed;
            Ok(CmdOutput {
                result: serde_json::to_value(&report).expect("serializable"),
                text,
                passed,
            })
        }
    }
}

fn run_verify(m: u64, max_n: u64, max_a: Option<u64>) -> Result<CmdOutput, CmdError> {
    use rayon::prelude::*;
    let top_a = max_a.unwrap_or(m * max_n / 2);
    // One generating function per offset; each worker compares a whole
    // column against the oracle. First mismatch in (A, N) order wins.
    let mismatches: Vec<(u64, u64, BigInt, BigInt)> = (0..=top_a)
        .into_par_iter()
        .filter_map(|a| {
            let series = match perp_gf(m, a as i64) {
                Ok(gf) => gf.expand(max_n as usize + 1),
                Err(_) => unreachable!("a >= 0"),
            };
            for n in 0..=max_n {
                let oracle = p_bounded((m * n / 2) as i64 - a as i64, m, n);
                if oracle != series[n as usize] {
                    return Some((a, n, series[n as usize].clone(), oracle));
                }
            }
            None
        })
        .collect();
    let first = mismatches.into_iter().min();
    let comparisons = (top_a + 1) * (max_n + 1);
    match first {
        None => {
            let text = format!(
                "verify m={m} max-N={max_n} max-A={top_a}: ok ({comparisons} comparisons)"
            );
            ok(
                json!({
                    "m": m, "max_n": max_n, "max_a": top_a,
                    "comparisons": comparisons, "passed": true,
                }),
                text,
            )
        }
        Some((a, n, series, oracle)) => {
            let text = format!(
                "verify m={m}: mismatch at N={n}, A={a}: series={series}, oracle={oracle}"
            );
            Ok(CmdOutput {
                result: json!({
                    "m": m, "max_n": max_n, "max_a": top_a,
                    "comparisons": comparisons, "passed": false,
                    "mismatch": {
                        "N": n, "A": a,
                        "series": series.to_string(),
                        "oracle": oracle.to_string(),
                    },
                }),
                text,
                passed: false,
            })
        }
    }
}

fn parameters_of(cli: &Cli) -> (String, Map<String, Value>) {
    let mut p = Map::new();
    let mut put = |k: &str, v: String| {
        p.insert(k.to_string(), Value::String(v));
    };
    let name = match &cli.command {
        Command::Qbin { m, n } => {
            put("m", m.to_string());
            put("N", n.to_string());
            "qbin"
        }
        Command::Perp { m, a, terms } => {
            put("m", m.to_string());
            put("A", a.to_string());
            put("terms", terms.to_string());
            "perp"
        }
        Command::Expand { num, den, terms } => {
            put("num", num.clone());
            put("den", den.clone());
            put("terms", terms.to_string());
            "expand"
        }
        Command::Verify { m, max_n, max_a } => {
            put("m", m.to_string());
            put("max-N", max_n.to_string());
            if let Some(a) = max_a {
                put("max-A", a.to_string());
            }
            "verify"
        }
        Command::Quasi { m, a, style } => {
            put("m", m.to_string());
            put("A", a.to_string());
            put(
                "style",
                match style {
                    QuasiStyle::Perp => "perp".to_string(),
                    QuasiStyle::Atmost => "atmost".to_string(),
                },
            );
            "quasi"
        }
        Command::Identity { id, max_n } => {
            put("id", id.clone());
            put("max-N", max_n.to_string());
            "identity"
        }
        Command::Congruence { prime, j, max_n } => {
            put("prime", prime.to_string());
            put("j", j.to_string());
            put("max-N", max_n.to_string());
            "congruence"
        }
        Command::Golden {
            which,
            max_a,
            terms,
        } => {
            put(
                "which",
                match which {
                    GoldenWhich::M5 => "m5".to_string(),
                    GoldenWhich::M6 => "m6".to_string(),
                    GoldenWhich::All => "all".to_string(),
                },
            );
            put("max-a", max_a.to_string());
            put("terms", terms.to_string());
            "golden"
        }
    };
    (name.to_string(), p)
}

/// Prints one line to stdout, staying quiet if the pipe has been
/// closed early (e.g. `perpgf ... | head`).
fn emit(text: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        // Ignore failure: the global pool can only be set once.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    let (command, parameters) = parameters_of(&cli);
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => emit(&out.text),
                Format::Json => {
                    let envelope = Envelope {
                        command,
                        parameters,
                        result: stringify_numbers(out.result),
                        status: "ok".to_string(),
                        error_detail: None,
                    };
                    emit(&serde_json::to_string_pretty(&envelope).expect("serializable"));
                }
            }
            ExitCode::from(u8::from(!out.passed))
        }
        Err(e) => {
            match cli.format {
                Format::Text => eprintln!("error: {}", e.message),
                Format::Json => {
                    let envelope = Envelope {
                        command,
                        parameters,
                        result: Value::Null,
                        status: "error".to_string(),
                        error_detail: Some(e.message.clone()),
                    };
                    emit(&serde_json::to_string_pretty(&envelope).expect("serializable"));
                }
            }
            ExitCode::from(e.code)
        }
    }
}
