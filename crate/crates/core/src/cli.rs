//! The `anth` command-line tool.
//!
//! Exit codes: 0 success, 1 when a prover is inconclusive (or a document
//! carries no certificate), 2 on invalid input, 3 on an internal invariant
//! failure. `ANTH_MAX_STEPS` overrides the engine's step budget.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::certificates::{self, Certificate};
use crate::convergents::{convergents, pell_residual};
use crate::engine::{anthyphairesis, sqrt_trace, verdict, AnthTrace, Termination, Verdict};
use crate::euclid::{anth_nat, gcd_of};
use crate::exec::Exec;
use crate::reconstructions::{
    modern_oracle, parity_proof, residue_prover, theodorus_table_with, ProofOutcome, TableRow,
};
use crate::surd::{exact_sqrt, Magnitude};
use crate::{Error, Natural, Rational};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INCONCLUSIVE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

pub const MAX_STEPS_ENV: &str = "ANTH_MAX_STEPS";

#[derive(Debug, Parser)]
#[command(
    name = "anth",
    version,
    about = "Exact anthyphairesis and incommensurability certificates"
)]
struct Cli {
    /// Emit a single JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Anthyphairesis of √C against the unit.
    Anth { c: u64 },
    /// Anthyphairesis of two positive fractions, written p/q or p.
    Pair { a: String, b: String },
    /// Greatest common divisor, optionally with the division chain.
    Gcd {
        m: Natural,
        n: Natural,
        #[arg(long)]
        trace: bool,
    },
    /// Convergents of √C with their Pell residuals p² − C·q².
    Convergents {
        c: u64,
        #[arg(short = 'n', default_value_t = 10)]
        count: usize,
    },
    /// Prove √C irrational with one method and print its certificate.
    Certify {
        c: u64,
        #[arg(long, value_enum)]
        method: Method,
    },
    /// Parse and replay a certificate document.
    Check { file: std::path::PathBuf },
    /// Run every method for each C in the inclusive range.
    Table {
        #[arg(long, default_value_t = 2)]
        from: u64,
        #[arg(long, default_value_t = 17)]
        to: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Anth,
    Parity,
    Residue,
    Oracle,
}

/// What a subcommand produced: text and JSON renderings plus an exit code.
struct Report {
    text: String,
    json: Value,
    code: i32,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report {
            text,
            json,
            code: EXIT_OK,
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Budget { .. } | Error::Internal(_) => EXIT_INTERNAL,
        Error::Domain(_) | Error::Parse { .. } | Error::Semantic(_) => EXIT_INVALID,
    }
}

/// Runs the tool with process stdout/stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let budget = std::env::var(MAX_STEPS_ENV).ok();
    run_with(
        args,
        budget.as_deref(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}

/// Runs the tool against explicit streams. `max_steps` is the raw value of
/// `ANTH_MAX_STEPS`, if set.
pub fn run_with<I, T>(
    args: I,
    max_steps: Option<&str>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let budget = match max_steps.map(str::parse::<u64>).transpose() {
        Ok(b) => b,
        Err(_) => {
            let _ = writeln!(err, "error: {MAX_STEPS_ENV} must be a nonnegative integer");
            return EXIT_INVALID;
        }
    };
    match dispatch(cli.command, budget) {
        Ok(report) => {
            let written = if cli.json {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&report.json).expect("json")
                )
            } else {
                out.write_all(report.text.as_bytes())
            };
            if written.is_err() {
                return EXIT_INTERNAL;
            }
            report.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(command: Command, budget: Option<u64>) -> crate::Result<Report> {
    match command {
        Command::Anth { c } => cmd_anth(c, budget),
        Command::Pair { a, b } => cmd_pair(&a, &b, budget),
        Command::Gcd { m, n, trace } => cmd_gcd(&m, &n, trace),
        Command::Convergents { c, count } => cmd_convergents(c, count, budget),
        Command::Certify { c, method } => cmd_certify(c, method, budget),
        Command::Check { file } => cmd_check(&file),
        Command::Table { from, to } => cmd_table(from, to, budget),
    }
}

fn strings(xs: &[Natural]) -> Value {
    Value::Array(xs.iter().map(|x| Value::String(x.to_string())).collect())
}

fn certificate_json(cert: &Certificate) -> Value {
    serde_json::to_value(cert).expect("certificates always serialize")
}

fn trace_json(trace: &AnthTrace) -> Value {
    match &trace.termination {
        Termination::Finite => json!({
            "termination": "finite",
            "quotients": strings(&trace.quotients),
            "steps_executed": trace.steps_executed.to_string(),
        }),
        Termination::EventuallyPeriodic {
            preperiod_len,
            period_len,
            witness_state,
        } => json!({
            "termination": "eventually_periodic",
            "quotients": strings(&trace.quotients),
            "preperiod": strings(trace.preperiod()),
            "period": strings(trace.period()),
            "preperiod_len": preperiod_len.to_string(),
            "period_len": period_len.to_string(),
            "witness_state": witness_json(witness_state),
            "steps_executed": trace.steps_executed.to_string(),
        }),
    }
}

fn witness_json(s: &crate::surd::QuadraticSurd) -> Value {
    serde_json::to_value(certificates::WitnessState::from(s)).expect("witness serializes")
}

fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::Incommensurable => json!({ "verdict": "incommensurable" }),
        Verdict::Commensurable { common_measure, .. } => json!({
            "verdict": "commensurable",
            "a_multiple": common_measure.a_multiple.to_string(),
            "b_multiple": common_measure.b_multiple.to_string(),
        }),
    }
}

fn sqrt_certificate(c: u64, trace: &AnthTrace) -> crate::Result<Certificate> {
    let cn = Natural::from(c);
    match exact_sqrt(&cn) {
        Some(k) => Certificate::finite_anth(&k, &Natural::from(1u32)),
        None => Certificate::periodic_anth(&cn, trace),
    }
}

fn cmd_anth(c: u64, budget: Option<u64>) -> crate::Result<Report> {
    let trace = sqrt_trace(c, budget)?;
    let v = verdict(&trace);
    let cert = sqrt_certificate(c, &trace)?;
    let mut text = format!("√{c} = {trace}\n");
    if let Termination::EventuallyPeriodic {
        preperiod_len,
        period_len,
        ..
    } = &trace.termination
    {
        text += &format!("preperiod {preperiod_len}, period {period_len}\n");
    }
    text += &format!("verdict: {v}\n");
    let json = json!({
        "C": c.to_string(),
        "trace": trace_json(&trace),
        "verdict": verdict_json(&v),
        "certificate": certificate_json(&cert),
    });
    Ok(Report::ok(text, json))
}

fn parse_fraction(s: &str) -> crate::Result<Rational> {
    let bad = || Error::domain(format!("expected a positive fraction p/q, got {s:?}"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let p: crate::Integer = p.trim().parse().map_err(|_| bad())?;
    let q: crate::Integer = q.trim().parse().map_err(|_| bad())?;
    if q.is_zero() || p.is_zero() || p.is_positive() != q.is_positive() {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

fn cmd_pair(a: &str, b: &str, budget: Option<u64>) -> crate::Result<Report> {
    let (ra, rb) = (parse_fraction(a)?, parse_fraction(b)?);
    let trace = anthyphairesis(
        &Magnitude::rational(ra.clone())?,
        &Magnitude::rational(rb.clone())?,
        budget,
    )?;
    let v = verdict(&trace);
    let Verdict::Commensurable { common_measure, .. } = &v else {
        return Err(Error::Internal("rational pair expanded infinitely".into()));
    };
    let measure = &rb / Rational::from_integer(common_measure.b_multiple.clone().into());
    // clear denominators so the certificate is a pair of naturals
    let scale = Rational::from_integer(ra.denom() * rb.denom());
    let to_nat = |r: Rational| r.to_integer().to_biguint().expect("positive");
    let cert = Certificate::finite_anth(&to_nat(&ra * &scale), &to_nat(&rb * &scale))?;
    let text = format!(
        "Anth({ra}, {rb}) = {trace}\nverdict: {v}\ncommon measure: c = {measure} (a = {}·c, b = {}·c)\n",
        common_measure.a_multiple, common_measure.b_multiple
    );
    let json = json!({
        "a": ra.to_string(),
        "b": rb.to_string(),
        "trace": trace_json(&trace),
        "verdict": verdict_json(&v),
        "common_measure": measure.to_string(),
        "certificate": certificate_json(&cert),
    });
    Ok(Report::ok(text, json))
}

fn cmd_gcd(m: &Natural, n: &Natural, trace: bool) -> crate::Result<Report> {
    let g = gcd_of(m, n)?;
    let mut text = String::new();
    let mut chain_json = Vec::new();
    if trace && m != n && !m.is_zero() && !n.is_zero() {
        let (big, small) = if m > n { (m, n) } else { (n, m) };
        let chain = anth_nat(big, small)?;
        let (mut a, mut b) = (big.clone(), small.clone());
        for q in &chain.quotients {
            let r = &a - q * &b;
            text += &format!("{a} = {q}·{b} + {r}\n");
            chain_json.push(json!({
                "dividend": a.to_string(),
                "quotient": q.to_string(),
                "divisor": b.to_string(),
                "remainder": r.to_string(),
            }));
            a = std::mem::replace(&mut b, r);
        }
    }
    text += &format!("gcd({m}, {n}) = {g}\n");
    let mut json = json!({ "m": m.to_string(), "n": n.to_string(), "gcd": g.to_string() });
    if trace {
        json["trace"] = Value::Array(chain_json);
    }
    Ok(Report::ok(text, json))
}

fn cmd_convergents(c: u64, count: usize, budget: Option<u64>) -> crate::Result<Report> {
    let trace = sqrt_trace(c, budget)?;
    let quotients = trace.expanded(count);
    let cs = convergents(&quotients, quotients.len())?;
    let cn = Natural::from(c);
    let mut text = format!("convergents of √{c} = {trace}\n");
    let mut rows = Vec::new();
    for (conv, i) in cs.iter().zip(&quotients) {
        let residual = pell_residual(&conv.p, &conv.q, &cn);
        text += &format!(
            "{:>3}  I={:<4} {}/{}  p²−{c}q² = {residual}\n",
            conv.index, i, conv.p, conv.q
        );
        rows.push(json!({
            "index": conv.index.to_string(),
            "quotient": i.to_string(),
            "p": conv.p.to_string(),
            "q": conv.q.to_string(),
            "pell_residual": residual.to_string(),
        }));
    }
    Ok(Report::ok(
        text,
        json!({ "C": c.to_string(), "convergents": rows }),
    ))
}

fn outcome_json(c: u64, method: &str, outcome: &ProofOutcome) -> Value {
    match outcome {
        ProofOutcome::Proved { certificate } => certificate_json(certificate),
        ProofOutcome::Inconclusive {
            class,
            descent_chain,
        } => json!({
            "outcome": "inconclusive",
            "method": method,
            "C": c.to_string(),
            "class_label": class.label(),
            "descent_chain": strings(descent_chain),
        }),
        ProofOutcome::NotApplicable { reason } => json!({
            "outcome": "not_applicable",
            "method": method,
            "C": c.to_string(),
            "reason": reason,
        }),
    }
}

fn outcome_text(c: u64, outcome: &ProofOutcome) -> String {
    match outcome {
        ProofOutcome::Proved { certificate } => {
            let mut text = format!("√{c}: {outcome}\n");
            if let Certificate::Parity { steps, .. } | Certificate::ResidueDescent { steps, .. } =
                certificate
            {
                for (i, step) in steps.iter().enumerate() {
                    text += &format!("  {}. {step}\n", i + 1);
                }
            }
            text
        }
        ProofOutcome::Inconclusive { descent_chain, .. } => {
            let chain: Vec<_> = descent_chain.iter().map(ToString::to_string).collect();
            format!(
                "√{c}: {outcome}\n  descent {}; m, n both odd gives m^2 ≡ {}·n^2 ≡ 1 (mod 8), no contradiction\n",
                chain.join(" -> "),
                descent_chain.last().expect("nonempty chain")
            )
        }
        ProofOutcome::NotApplicable { reason } => format!("√{c}: {outcome} ({reason})\n"),
    }
}

fn outcome_code(outcome: &ProofOutcome) -> i32 {
    if outcome.is_proved() {
        EXIT_OK
    } else {
        EXIT_INCONCLUSIVE
    }
}

fn cmd_certify(c: u64, method: Method, budget: Option<u64>) -> crate::Result<Report> {
    let cn = Natural::from(c);
    match method {
        Method::Anth => {
            let trace = sqrt_trace(c, budget)?;
            let cert = sqrt_certificate(c, &trace)?;
            if !certificates::check(&cert)? {
                return Err(Error::Internal(format!(
                    "emitted certificate for √{c} fails its check"
                )));
            }
            let text = format!(
                "√{c} = {trace}\nverdict: {}\n{}",
                verdict(&trace),
                certificates::serialize(&cert)
            );
            Ok(Report::ok(text, certificate_json(&cert)))
        }
        Method::Parity | Method::Residue => {
            let (name, outcome) = if method == Method::Parity {
                ("parity", parity_proof(&cn)?)
            } else {
                ("residue", residue_prover(&cn)?)
            };
            if let Some(cert) = outcome.certificate() {
                if !certificates::check(cert)? {
                    return Err(Error::Internal(format!(
                        "{name} certificate for √{c} fails its check"
                    )));
                }
            }
            Ok(Report {
                text: outcome_text(c, &outcome),
                json: outcome_json(c, name, &outcome),
                code: outcome_code(&outcome),
            })
        }
        Method::Oracle => {
            let irrational = modern_oracle(&cn);
            let text = format!(
                "√{c} is {} (modern divisibility oracle; no certificate)\n",
                if irrational { "irrational" } else { "rational" }
            );
            let json = json!({
                "outcome": "oracle",
                "method": "oracle",
                "C": c.to_string(),
                "irrational": irrational,
            });
            Ok(Report::ok(text, json))
        }
    }
}

fn cmd_check(file: &std::path::Path) -> crate::Result<Report> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Error::domain(format!("cannot read {}: {e}", file.display())))?;
    // Outcome documents from `certify --json` carry no certificate.
    if let Ok(Value::Object(map)) = serde_json::from_str::<Value>(&text) {
        if !map.contains_key("kind") {
            if let Some(outcome) = map.get("outcome").and_then(Value::as_str) {
                return Ok(Report {
                    text: format!(
                        "{}: no certificate to check (outcome {outcome})\n",
                        file.display()
                    ),
                    json: json!({ "file": file.display().to_string(), "outcome": outcome, "valid": false }),
                    code: EXIT_INCONCLUSIVE,
                });
            }
        }
    }
    let cert = certificates::parse(&text)?;
    let valid = certificates::check(&cert)?;
    let kind = cert.kind().tag();
    Ok(Report {
        text: format!(
            "{}: {kind} certificate {}\n",
            file.display(),
            if valid { "is valid" } else { "FAILED replay" }
        ),
        json: json!({ "file": file.display().to_string(), "kind": kind, "valid": valid }),
        code: if valid { EXIT_OK } else { EXIT_INVALID },
    })
}

fn row_json(row: &TableRow) -> Value {
    let outcome = |o: &ProofOutcome, method: &str| match o {
        ProofOutcome::Proved { certificate } => json!({
            "outcome": "proved",
            "certificate": certificate_json(certificate),
        }),
        other => outcome_json(row.c, method, other),
    };
    json!({
        "C": row.c.to_string(),
        "is_square": row.is_square,
        "anth": {
            "trace": trace_json(&row.anth.trace),
            "verdict": verdict_json(&row.anth.verdict),
            "certificate": certificate_json(&row.anth.certificate),
            "certificate_checked": row.anth.certificate_checked,
        },
        "parity": outcome(&row.parity, "parity"),
        "residue": outcome(&row.residue, "residue"),
        "oracle": row.oracle,
    })
}

fn short_outcome(o: &ProofOutcome) -> String {
    match o {
        ProofOutcome::Proved { .. } => "Proved".into(),
        ProofOutcome::Inconclusive { class, .. } => format!("Inconclusive({class})"),
        ProofOutcome::NotApplicable { .. } => "-".into(),
    }
}

fn cmd_table(from: u64, to: u64, budget: Option<u64>) -> crate::Result<Report> {
    let rows = theodorus_table_with(from, to, Exec::default(), budget)?;
    let mut text = format!(
        "{:>4}  {:<6}  {:<24}  {:<16}  {:<5}  {:<8}  {:<20}  {}\n",
        "C", "square", "Anth(√C, 1)", "verdict", "cert", "parity", "residue", "oracle"
    );
    for row in &rows {
        text += &format!(
            "{:>4}  {:<6}  {:<24}  {:<16}  {:<5}  {:<8}  {:<20}  {}\n",
            row.c,
            if row.is_square { "yes" } else { "no" },
            row.anth.trace.to_string(),
            row.anth.verdict.to_string(),
            if row.anth.certificate_checked {
                "ok"
            } else {
                "FAIL"
            },
            short_outcome(&row.parity),
            short_outcome(&row.residue),
            if row.oracle { "irrational" } else { "rational" },
        );
    }
    let code = if rows.iter().all(|r| r.anth.certificate_checked) {
        EXIT_OK
    } else {
        EXIT_INTERNAL
    };
    let json = json!({
        "from": from.to_string(),
        "to": to.to_string(),
        "rows": rows.iter().map(row_json).collect::<Vec<_>>(),
    });
    Ok(Report { text, json, code })
}
