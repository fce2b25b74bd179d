//! The `dyckbij` command line.
//!
//! Exit codes: 0 on success or passing verification, 1 when a verification
//! check fails, 2 on usage, parse and precondition errors. Every error is a
//! single line on stderr starting with a reason prefix (`usage-error:`,
//! `parse-error:`, `class-error:`, `cap-error:`, `io-error:`).

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use dyckbij_core::{
    enumerate_avoiding, knu, knu_inverse, krar, krar_inverse, theta, theta_inverse, Check,
    DyckPath, Filters, Oracle, Permutation, Stat, VerificationReport,
};

use crate::format;

/// Environment variable overriding the oracle's cap on `n`.
pub const CAP_ENV: &str = "DYCKBIJ_MAX_N";

#[derive(Debug, Parser)]
#[command(
    name = "dyckbij",
    version,
    about = "321/132-avoiding permutations, Dyck path tunnels and the bijection between them"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// fp, exc, antiexc, lis, rank and involution flag of a permutation
    Stats {
        /// e.g. 2,3,5,1,4,6,8,7
        perm: String,
    },
    /// Apply one of the bijections
    Map {
        #[arg(long, value_enum)]
        via: Via,
        /// permutation for knu/krar/theta/theta-inv, Dyck word for knu-inv/krar-inv
        input: String,
    },
    /// List the tunnels of a Dyck word
    Tunnels { word: String },
    /// Permutations of length n avoiding a pattern, one per line
    Enumerate {
        #[arg(long)]
        n: usize,
        /// pattern, e.g. 321 or 3,2,1
        #[arg(long)]
        avoid: String,
        #[arg(long)]
        fp_free: bool,
        #[arg(long)]
        involutions: bool,
        #[arg(long)]
        count_only: bool,
    },
    /// Joint distribution of statistics over a pattern class
    Table {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        avoid: String,
        /// comma-separated subset of fp,exc,lis,rank
        #[arg(long)]
        stats: String,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
        #[arg(long)]
        fp_free: bool,
        #[arg(long)]
        involutions: bool,
    },
    /// Exhaustive verification sweeps
    Verify {
        #[arg(long, default_value = "all")]
        check: String,
        #[arg(long)]
        max_n: usize,
        /// write a JSON report (with timings) to this file
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Via {
    Knu,
    Krar,
    Theta,
    KnuInv,
    KrarInv,
    ThetaInv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug)]
struct Failure {
    kind: &'static str,
    message: String,
}

impl Failure {
    fn new(kind: &'static str, message: impl std::fmt::Display) -> Self {
        Failure {
            kind,
            message: message.to_string(),
        }
    }
}

fn parse_perm(text: &str) -> Result<Permutation, Failure> {
    text.parse()
        .map_err(|e| Failure::new("parse-error", format!("permutation {text:?}: {e}")))
}

fn parse_word(text: &str) -> Result<DyckPath, Failure> {
    text.parse()
        .map_err(|e| Failure::new("parse-error", format!("dyck word {text:?}: {e}")))
}

fn parse_pattern(text: &str) -> Result<Permutation, Failure> {
    format::parse_pattern(text)
        .map_err(|e| Failure::new("parse-error", format!("pattern {text:?}: {e}")))
}

fn class_error(map: &str) -> impl Fn(dyckbij_core::BijectionError) -> Failure + '_ {
    move |e| Failure::new("class-error", format!("{map}: {e}"))
}

fn io_error(e: impl std::fmt::Display) -> Failure {
    Failure::new("io-error", e)
}

/// Oracle with the cap taken from [`CAP_ENV`] when set.
fn oracle(err: &mut dyn Write) -> Result<Oracle, Failure> {
    let Ok(raw) = std::env::var(CAP_ENV) else {
        return Ok(Oracle::new());
    };
    let cap: usize = raw
        .trim()
        .parse()
        .map_err(|_| Failure::new("usage-error", format!("{CAP_ENV}={raw:?} is not a number")))?;
    if cap > Oracle::DEFAULT_CAP {
        writeln!(err, "warning: n cap raised to {cap}; this may be slow").map_err(io_error)?;
    }
    Ok(Oracle::new().with_cap(cap))
}

fn filters(fp_free: bool, involutions: bool) -> Filters {
    Filters {
        fixed_point_free: fp_free,
        involutions_only: involutions,
    }
}

/// Parses `args` (program name first) and runs the command. Data goes to
/// `out`; diagnostics, warnings and timings go to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let rendered = e.to_string();
            let first = rendered.lines().next().unwrap_or_default();
            let _ = writeln!(err, "usage-error: {}", first.trim_start_matches("error: "));
            return 2;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "{}: {}", f.kind, f.message);
            2
        }
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Stats { perm } => {
            let s = parse_perm(&perm)?;
            writeln!(
                out,
                "fp={} exc={} antiexc={} lis={} rank={} involution={}",
                s.fixed_points(),
                s.excedances(),
                s.antiexcedances(),
                s.lis(),
                s.rank(),
                s.is_involution()
            )
            .map_err(io_error)?;
        }
        Command::Map { via, input } => {
            let text = match via {
                Via::Knu => knu(&parse_perm(&input)?)
                    .map_err(class_error("knu"))?
                    .to_string(),
                Via::Krar => krar(&parse_perm(&input)?)
                    .map_err(class_error("krar"))?
                    .to_string(),
                Via::Theta => theta(&parse_perm(&input)?)
                    .map_err(class_error("theta"))?
                    .to_string(),
                Via::ThetaInv => theta_inverse(&parse_perm(&input)?)
                    .map_err(class_error("theta-inv"))?
                    .to_string(),
                Via::KnuInv => knu_inverse(&parse_word(&input)?).to_string(),
                Via::KrarInv => krar_inverse(&parse_word(&input)?).to_string(),
            };
            writeln!(out, "{text}").map_err(io_error)?;
        }
        Command::Tunnels { word } => {
            let path = parse_word(&word)?;
            for t in path.tunnels() {
                writeln!(out, "{t}").map_err(io_error)?;
            }
            let c = path.tunnel_counts();
            writeln!(
                out,
                "ct={} rt={} (side={} across={}) lt={} he={}",
                c.ct(),
                c.rt(),
                c.right_side,
                c.right_across,
                c.lt(),
                path.he()
            )
            .map_err(io_error)?;
        }
        Command::Enumerate {
            n,
            avoid,
            fp_free,
            involutions,
            count_only,
        } => {
            let pattern = parse_pattern(&avoid)?;
            let perms = enumerate_avoiding(n, &pattern, filters(fp_free, involutions));
            if count_only {
                writeln!(out, "{}", perms.count()).map_err(io_error)?;
            } else {
                let mut w = std::io::BufWriter::new(out);
                for s in perms {
                    writeln!(w, "{s}").map_err(io_error)?;
                }
                w.flush().map_err(io_error)?;
            }
        }
        Command::Table {
            n,
            avoid,
            stats,
            format: fmt,
            fp_free,
            involutions,
        } => {
            let pattern = parse_pattern(&avoid)?;
            let stats = stats
                .split(',')
                .map(|s| s.parse::<Stat>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Failure::new("parse-error", format!("--stats: {e}")))?;
            let table = oracle(err)?
                .distribution(n, &pattern, &stats, filters(fp_free, involutions))
                .map_err(|e| match e {
                    dyckbij_core::OracleError::OverCap { .. } => {
                        Failure::new("cap-error", format!("{e} (set {CAP_ENV} to raise it)"))
                    }
                    other => Failure::new("usage-error", other),
                })?;
            match fmt {
                TableFormat::Csv => format::write_table_csv(&table, out).map_err(io_error)?,
                TableFormat::Json => out
                    .write_all(format::table_json(&table).as_bytes())
                    .map_err(io_error)?,
            }
        }
        Command::Verify {
            check,
            max_n,
            report,
        } => {
            let checks: Vec<Check> = if check == "all" {
                Check::ALL.to_vec()
            } else {
                vec![check
                    .parse()
                    .map_err(|e| Failure::new("usage-error", format!("--check: {e}")))?]
            };
            let oracle = oracle(err)?;
            let mut reports = Vec::with_capacity(checks.len());
            for c in checks {
                let r = timed_verify(&oracle, c, max_n).map_err(|e| {
                    Failure::new("cap-error", format!("{e} (set {CAP_ENV} to raise it)"))
                })?;
                write_report(&r, out).map_err(io_error)?;
                writeln!(err, "{} elapsed {:.3}s", r.check, r.elapsed.as_secs_f64())
                    .map_err(io_error)?;
                reports.push(r);
            }
            let all_passed = reports.iter().all(VerificationReport::passed);
            writeln!(out, "overall {}", if all_passed { "pass" } else { "fail" })
                .map_err(io_error)?;
            if let Some(path) = report {
                let doc = serde_json::json!({
                    "max_n": max_n,
                    "status": if all_passed { "pass" } else { "fail" },
                    "reports": reports.iter().map(format::report_json).collect::<Vec<_>>(),
                });
                let text = serde_json::to_string_pretty(&doc).expect("plain JSON values");
                std::fs::write(&path, text + "\n")
                    .map_err(|e| io_error(format!("{}: {e}", path.display())))?;
            }
            return Ok(if all_passed { 0 } else { 1 });
        }
    }
    Ok(0)
}

/// Runs one check and records its wall-clock time in the report.
pub fn timed_verify(
    oracle: &Oracle,
    check: Check,
    n_max: usize,
) -> Result<VerificationReport, dyckbij_core::OracleError> {
    let start = Instant::now();
    let mut report = oracle.verify(check, n_max)?;
    report.elapsed = start.elapsed();
    Ok(report)
}

/// `<check> <status> n=<lo>..=<hi> failures=<k>`, then one `note` or
/// `counterexample` line each.
fn write_report(r: &VerificationReport, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(
        out,
        "{} {} n={}..={} failures={}",
        r.check,
        r.status(),
        r.n_range.start(),
        r.n_range.end(),
        r.failures
    )?;
    for note in &r.notes {
        writeln!(out, "{} note {note}", r.check)?;
    }
    for c in &r.counterexamples {
        writeln!(out, "{} counterexample {c}", r.check)?;
    }
    Ok(())
}
