//! The `dungeonlab` command line.

mod cache;
mod output;
mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};

pub use cache::{TermCache, CACHE_ENV};
pub use output::{to_csv, CheckRow, Format, OutputRecord, Payload, SCHEMA_VERSION};
pub use verify::{run_suite, Suite, VerifyOptions, INITIAL_TERMS, MAGNITUDES};

use crate::dynamics::{
    class_scan, cobweb_points, fixed_point, trajectory, two_cycle, FixedPointResult,
    TrajectoryOptions, Witness,
};
use crate::error::{Error, Result};
use crate::expansion::{parse_decimal, parse_rational};
use crate::laurent::{laurent_eval, Scalar};
use crate::radix::{from_decimal_str, to_decimal_string};
use crate::real::Fixed;
use crate::reinterpret::reinterpret;
use crate::seq::{
    pow_modulus, sequence_mod_stream, sequence_stream, stabilization_of, SequenceId,
    SequenceStream, Stabilization, DEFAULT_DIGIT_BUDGET,
};
use crate::{Nat, Rat};
use output::*;

pub const PRECISION_ENV: &str = "DUNGEONLAB_PRECISION_MAX";

/// Decimal places printed for real values.
const PLACES: u32 = 30;

pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const USAGE: i32 = 1;
    pub const VERIFY_FAILED: i32 = 2;
    pub const RESOURCE: i32 = 3;
}

#[derive(Debug, Parser)]
#[command(name = "dungeonlab", version, about = "Base reinterpretation, dungeon sequences and the a_a_a_... map")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    /// Print elapsed time to stderr.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// a_b for integers, or L<a>(b) when a is a decimal expansion.
    Term {
        a: String,
        b: String,
    },
    /// Terms of alpha, beta, gamma or delta from n = 10.
    Seq {
        #[arg(long)]
        name: SequenceId,
        #[arg(long)]
        to: u32,
        /// Digit count and leading digits instead of the full term.
        #[arg(long)]
        digits_only: bool,
        /// Largest term size attempted, in decimal digits.
        #[arg(long, default_value_t = DEFAULT_DIGIT_BUDGET)]
        budget: u64,
        #[arg(long)]
        no_cache: bool,
    },
    /// Residues of alpha or gamma modulo m and where they stop changing.
    Padic {
        #[arg(long)]
        name: SequenceId,
        /// `1e10`, `10^10`, `2^20` or a plain integer.
        #[arg(long = "mod")]
        modulus: String,
        #[arg(long, default_value_t = 500)]
        to: u32,
        #[arg(long, default_value_t = 100)]
        window: u32,
    },
    /// The iteration x -> L<a>(x).
    Dynamics {
        #[command(subcommand)]
        action: DynamicsCommand,
    },
    /// Staircase and curve data for a cobweb plot, as CSV.
    Cobweb {
        #[arg(long)]
        a: String,
        #[arg(long, default_value = "10")]
        x0: String,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        steps: u32,
        /// Write the CSV here instead of emitting the record's rows.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs a check suite; exits 2 if any check fails.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Random instances per lemma.
        #[arg(long, default_value_t = 10_000)]
        instances: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum DynamicsCommand {
    /// Classify the orbit starting at x0 (default 10, so x1 = a).
    Classify {
        #[arg(long)]
        a: String,
        #[arg(long)]
        x0: Option<String>,
        #[arg(long)]
        max_iter: Option<usize>,
        #[arg(long)]
        tol_digits: Option<u32>,
    },
    /// A pair u < omega < v with L(u) = v and L(v) = u.
    TwoCycle {
        #[arg(long)]
        a: String,
        #[arg(long, default_value_t = 20)]
        tol_digits: u32,
    },
    /// Classify every a on a grid.
    Scan {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        step: String,
    },
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Resource(_) | Error::PrecisionExhausted(_) | Error::DigitBudget { .. } => {
            exit::RESOURCE
        }
        _ => exit::USAGE,
    }
}

/// Parses `args` (program name first), runs the command and writes to
/// `out`/`err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::SUCCESS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let echo = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let start = Instant::now();
    let result = execute(&cli, echo, err);
    if cli.timing {
        let _ = writeln!(err, "elapsed: {:.3} ms", start.elapsed().as_secs_f64() * 1e3);
    }
    let record = match result {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_code(&e);
        }
    };
    if let Err(e) = record.emit(cli.format, out, err) {
        let _ = writeln!(err, "error: {e}");
        return exit::USAGE;
    }
    match &record.payload {
        Payload::Verify { passed: false, .. } => exit::VERIFY_FAILED,
        _ => exit::SUCCESS,
    }
}

fn execute(cli: &Cli, echo: Vec<String>, err: &mut impl Write) -> Result<OutputRecord> {
    match &cli.command {
        Command::Term { a, b } => cmd_term(echo, a, b),
        Command::Seq {
            name,
            to,
            digits_only,
            budget,
            no_cache,
        } => {
            let cache = if *no_cache { None } else { TermCache::from_env() };
            cmd_seq(echo, *name, *to, *digits_only, *budget, cache.as_ref(), err)
        }
        Command::Padic {
            name,
            modulus,
            to,
            window,
        } => cmd_padic(echo, *name, modulus, *to, *window),
        Command::Dynamics { action } => match action {
            DynamicsCommand::Classify {
                a,
                x0,
                max_iter,
                tol_digits,
            } => cmd_classify(echo, a, x0.as_deref(), *max_iter, *tol_digits),
            DynamicsCommand::TwoCycle { a, tol_digits } => cmd_two_cycle(echo, a, *tol_digits),
            DynamicsCommand::Scan { from, to, step } => cmd_scan(echo, from, to, step),
        },
        Command::Cobweb { a, x0, steps, out } => {
            cmd_cobweb(echo, a, x0, *steps as usize, out.as_deref(), cli.format)
        }
        Command::Verify {
            suite,
            instances,
            seed,
        } => {
            let opts = VerifyOptions {
                instances: *instances,
                seed: *seed,
                ..VerifyOptions::default()
            };
            cmd_verify(echo, *suite, &opts)
        }
    }
}

fn is_integer_literal(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

fn parse_nat(s: &str) -> Result<Nat> {
    from_decimal_str(s).ok_or_else(|| Error::Parse {
        token: s.into(),
        reason: "not a non-negative integer".into(),
    })
}

pub fn cmd_term(echo: Vec<String>, a: &str, b: &str) -> Result<OutputRecord> {
    let value = if is_integer_literal(a) && is_integer_literal(b) {
        to_decimal_string(&reinterpret(&parse_nat(a)?, &parse_nat(b)?)?)
    } else {
        laurent_eval(&parse_decimal(a)?, &parse_rational(b)?)?.to_string()
    };
    Ok(OutputRecord::new(
        echo,
        Payload::Term {
            rows: vec![TermRow {
                a: a.into(),
                b: b.into(),
                value,
            }],
        },
    ))
}

fn seq_row(n: u32, v: &Nat, digits_only: bool) -> SeqRow {
    let text = to_decimal_string(v);
    SeqRow {
        n,
        digits: text.len() as u64,
        sci: sci_echo(&text),
        leading: digits_only.then(|| text[..text.len().min(8)].to_string()),
        value: (!digits_only).then_some(text),
    }
}

/// Terms `10..=to`, read from `cache` while it has them and computed (and
/// stored) from the first miss on.
pub fn cmd_seq(
    echo: Vec<String>,
    id: SequenceId,
    to: u32,
    digits_only: bool,
    budget: u64,
    cache: Option<&TermCache>,
    err: &mut impl Write,
) -> Result<OutputRecord> {
    let mut stream = sequence_stream(id, to)?.with_budget(budget);
    let mut rows = Vec::new();
    let mut warnings = Vec::new();
    let mut last_complete = None;
    let mut n = 10;
    if let Some(c) = cache {
        let mut prev = None;
        while n <= to {
            match c.get(id, n) {
                Some(v) => {
                    rows.push(seq_row(n, &v, digits_only));
                    prev = Some(v);
                    n += 1;
                }
                None => break,
            }
        }
        if let Some(v) = prev {
            if n <= to {
                stream = SequenceStream::resume(id, n - 1, v, to)?.with_budget(budget);
            }
        }
    }
    if n <= to {
        for item in stream {
            match item {
                Ok((k, v)) => {
                    if let Some(c) = cache {
                        if let Err(e) = c.put(id, k, &v) {
                            let _ = writeln!(err, "warning: cache write failed: {e}");
                        }
                    }
                    rows.push(seq_row(k, &v, digits_only));
                }
                Err(e @ Error::DigitBudget { last_complete: k, .. }) => {
                    last_complete = Some(k);
                    warnings.push(format!("truncated: {e}"));
                }
                Err(e) => return Err(e),
            }
        }
    }
    let mut record = OutputRecord::new(
        echo,
        Payload::Sequence {
            name: id.name().into(),
            oeis: id.oeis().into(),
            digits_only,
            last_complete,
            rows,
        },
    );
    record.warnings = warnings;
    Ok(record)
}

/// `1e10`, `10^10`, `2^20` or a plain integer.
pub fn parse_modulus(s: &str) -> Result<Nat> {
    let bad = || Error::Parse {
        token: s.into(),
        reason: "expected a modulus like 1e10, 10^10, 2^20 or 1000".into(),
    };
    let small = |t: &str| t.parse::<u32>().map_err(|_| bad());
    if let Some((m, e)) = s.split_once(['e', 'E']) {
        return Ok(parse_nat(m).map_err(|_| bad())? * pow_modulus(10, small(e)?));
    }
    if let Some((b, e)) = s.split_once('^') {
        return Ok(pow_modulus(small(b)?, small(e)?));
    }
    parse_nat(s).map_err(|_| bad())
}

pub fn cmd_padic(
    echo: Vec<String>,
    id: SequenceId,
    modulus: &str,
    to: u32,
    window: u32,
) -> Result<OutputRecord> {
    let m = parse_modulus(modulus)?;
    let residues: Vec<(u32, Nat)> = sequence_mod_stream(id, &m, to)?.collect();
    let stabilization = match stabilization_of(&residues, window)? {
        Stabilization::Stabilized { n0, residue } => StabilizationRow {
            stabilized: true,
            n0: Some(n0),
            residue: Some(to_decimal_string(&residue)),
            window,
        },
        Stabilization::NotStabilized => StabilizationRow {
            stabilized: false,
            n0: None,
            residue: None,
            window,
        },
    };
    Ok(OutputRecord::new(
        echo,
        Payload::Residues {
            name: id.name().into(),
            modulus: to_decimal_string(&m),
            stabilization,
            rows: residues
                .into_iter()
                .map(|(n, r)| ResidueRow {
                    n,
                    residue: to_decimal_string(&r),
                })
                .collect(),
        },
    ))
}

fn fixed(x: &Fixed) -> String {
    x.to_decimal(PLACES)
}

fn scalar(s: &Scalar) -> String {
    match s {
        Scalar::Exact(q) => q.to_string(),
        Scalar::Approx(f) => fixed(f),
    }
}

fn fixed_point_row(fp: &FixedPointResult) -> FixedPointRow {
    FixedPointRow {
        omega: fixed(&fp.omega),
        exact: fp.omega_exact.as_ref().map(Rat::to_string),
        derivative: scalar(&fp.derivative),
        local_class: label(&fp.local_class),
        numerically_neutral: fp.numerically_neutral,
    }
}

/// The kebab-case name serde gives a unit variant.
fn label<T: serde::Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(serde_json::Value::String(s)) => s,
        _ => String::new(),
    }
}

/// Trajectory options from the flags plus `DUNGEONLAB_PRECISION_MAX`.
fn trajectory_options(
    x0: Option<&str>,
    max_iter: Option<usize>,
    tol_digits: Option<u32>,
) -> Result<TrajectoryOptions> {
    let mut opts = TrajectoryOptions::default();
    if let Some(x0) = x0 {
        opts.x0 = Some(parse_rational(x0)?);
    }
    if let Some(m) = max_iter {
        opts.max_iter = m;
    }
    if let Some(t) = tol_digits {
        opts.tol_digits = t;
        opts.policy.start_digits = opts.policy.start_digits.max(t + 8);
    }
    if let Some(v) = std::env::var_os(PRECISION_ENV) {
        let text = v.to_string_lossy();
        opts.policy.max_digits = text.parse().map_err(|_| Error::Parse {
            token: text.to_string(),
            reason: format!("{PRECISION_ENV} must be a digit count"),
        })?;
    }
    Ok(opts)
}

pub fn cmd_classify(
    echo: Vec<String>,
    a: &str,
    x0: Option<&str>,
    max_iter: Option<usize>,
    tol_digits: Option<u32>,
) -> Result<OutputRecord> {
    let expansion = parse_decimal(a)?;
    let opts = trajectory_options(x0, max_iter, tol_digits)?;
    let report = trajectory(&expansion, &opts)?;
    let fp = fixed_point(&expansion, opts.tol_digits.max(PLACES)).ok();
    let witness = match &report.witness {
        Witness::Fixed { omega, exact } => WitnessRow::Fixed {
            omega: fixed(omega),
            exact: exact.as_ref().map(Rat::to_string),
        },
        Witness::Cycle { u, v, exact } => WitnessRow::Cycle {
            u: fixed(u),
            v: fixed(v),
            exact: exact.as_ref().map(|(p, q)| (p.to_string(), q.to_string())),
        },
        Witness::Divergence { min_low, max_high } => WitnessRow::Divergence {
            min_low: fixed(min_low),
            max_high: fixed(max_high),
        },
        Witness::None => WitnessRow::None,
    };
    Ok(OutputRecord::new(
        echo,
        Payload::Trajectory {
            a: expansion.to_string(),
            class: report.class.label().into(),
            precision_used: report.precision_used,
            iterations_used: report.iterations_used,
            witness,
            fixed_point: fp.as_ref().map(fixed_point_row),
            notes: report.notes.clone(),
            rows: report
                .iterates
                .iter()
                .enumerate()
                .map(|(n, x)| IterateRow { n, x: fixed(x) })
                .collect(),
        },
    ))
}

pub fn cmd_two_cycle(echo: Vec<String>, a: &str, tol_digits: u32) -> Result<OutputRecord> {
    let expansion = parse_decimal(a)?;
    let rows = two_cycle(&expansion, tol_digits)?
        .map(|c| CycleRow {
            u: c.u.to_decimal(tol_digits),
            v: c.v.to_decimal(tol_digits),
            exact: c.exact.as_ref().map(|(p, q)| (p.to_string(), q.to_string())),
            residual: c.residual.to_decimal(tol_digits + 10),
        })
        .into_iter()
        .collect();
    Ok(OutputRecord::new(
        echo,
        Payload::TwoCycle {
            a: expansion.to_string(),
            rows,
        },
    ))
}

pub fn cmd_scan(echo: Vec<String>, from: &str, to: &str, step: &str) -> Result<OutputRecord> {
    let opts = trajectory_options(None, None, None)?;
    // the fixed point is only located to the tolerance
    let places = |x: &Fixed| x.to_decimal(opts.tol_digits);
    let rows = class_scan(&parse_decimal(from)?, &parse_decimal(to)?, &parse_rational(step)?, &opts)?
        .into_iter()
        .map(|r| ScanRow {
            a: r.a.to_string(),
            class: r.class.label().into(),
            omega: r.omega.as_ref().map(places),
            derivative: r.derivative.as_ref().map(places),
            local_class: label(&r.local_class),
            error: r.error,
        })
        .collect();
    Ok(OutputRecord::new(echo, Payload::Scan { rows }))
}

pub fn cmd_cobweb(
    echo: Vec<String>,
    a: &str,
    x0: &str,
    steps: usize,
    out: Option<&std::path::Path>,
    format: Format,
) -> Result<OutputRecord> {
    let expansion = parse_decimal(a)?;
    let start = parse_rational(x0)?;
    let web = cobweb_points(&expansion, &start, steps)?;
    let point = |(x, y): &(Fixed, Fixed)| PointRow {
        x: fixed(x),
        y: fixed(y),
    };
    let mut payload = Payload::Cobweb {
        a: expansion.to_string(),
        x0: start.to_string(),
        written_to: None,
        rows: web
            .segments
            .iter()
            .map(|s| SegmentRow {
                x1: fixed(&s.from.0),
                y1: fixed(&s.from.1),
                x2: fixed(&s.to.0),
                y2: fixed(&s.to.1),
            })
            .collect(),
        curve: web.curve.iter().map(point).collect(),
    };
    if let Some(path) = out {
        std::fs::write(path, to_csv(&payload)?)
            .map_err(|e| Error::Io(format!("cannot write {}: {e}", path.display())))?;
        if let Payload::Cobweb {
            written_to, rows, curve, ..
        } = &mut payload
        {
            *written_to = Some(path.display().to_string());
            // the data went to the file; keep stdout short
            if format == Format::Json {
                rows.clear();
                curve.clear();
            }
        }
    }
    Ok(OutputRecord::new(echo, payload))
}

pub fn cmd_verify(echo: Vec<String>, suite: Suite, opts: &VerifyOptions) -> Result<OutputRecord> {
    let rows = run_suite(suite, opts)?;
    let failures = rows.iter().filter(|r| !r.passed).count();
    Ok(OutputRecord::new(
        echo,
        Payload::Verify {
            suite: label(&suite),
            passed: failures == 0,
            checks: rows.len(),
            failures,
            rows,
        },
    ))
}
