//! `hilbaut`: classify automorphisms of Hilbert schemes of points on K3
//! surfaces of Picard rank one.
//!
//! Exit codes: 0 on success, 1 on malformed input, 2 when an internal
//! consistency check fails or an arithmetic precondition is violated.

use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hilbaut_core::aut::{AutVariant, Mode};
use hilbaut_core::pell::{congruent_search, fundamental_solutions, generate_solutions, PellSolution, ORBIT_CAP_ENV};
use hilbaut_core::report::{analyze, family, render_text, scan, table, table_csv, Analysis, TableCell};
use hilbaut_core::{Error, Params};
use num_bigint::BigInt;
use serde_json::json;

#[derive(Parser)]
#[command(name = "hilbaut", version, about = "Automorphisms of Hilbert schemes of points on K3 surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one instance (n points, degree 2t).
    Analyze {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        t: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Classify every t in a range for fixed n.
    Scan {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        t_min: u64,
        #[arg(long)]
        t_max: u64,
        /// Number of worker threads.
        #[arg(long, value_name = "N")]
        parallel: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Minimal t admitting an involution, per invariant square.
    Table {
        #[arg(long)]
        n_min: u64,
        #[arg(long)]
        n_max: u64,
        #[arg(long, default_value_t = 120)]
        t_max: u64,
        #[arg(long, conflicts_with = "json")]
        csv: bool,
        #[arg(long)]
        json: bool,
        #[arg(long, value_name = "N")]
        parallel: Option<usize>,
    },
    /// Check the family t = (n-1)k^2 + 1 over a range of k.
    Family {
        #[arg(long)]
        n: u64,
        /// A single k or a range A..B.
        #[arg(long, value_parser = parse_range)]
        k: RangeInclusive<u64>,
        #[command(flatten)]
        out: Output,
    },
    /// Solve X^2 - dY^2 = m.
    Pell {
        #[arg(long)]
        d: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        m: BigInt,
        /// Only solutions with X = +-c (mod M).
        #[arg(long, num_args = 2, value_names = ["M", "c"])]
        congruence: Option<Vec<BigInt>>,
        /// Number of positive solutions to list.
        #[arg(long, default_value_t = 1)]
        limit: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct Output {
    /// Emit JSON (one document per line).
    #[arg(long)]
    json: bool,
    /// Re-derive every invariant of each result.
    #[arg(long)]
    verify: bool,
}

impl Output {
    fn mode(&self) -> Mode {
        if self.verify {
            Mode::Verify
        } else {
            Mode::Fast
        }
    }
}

fn parse_range(s: &str) -> Result<RangeInclusive<u64>, String> {
    let bad = |e: std::num::ParseIntError| format!("invalid range {s:?}: {e}");
    match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            let (a, b) = (a.trim().parse().map_err(bad)?, b.trim().parse().map_err(bad)?);
            if a > b {
                return Err(format!("empty range {s:?}"));
            }
            Ok(a..=b)
        }
        None => {
            let k = s.trim().parse().map_err(bad)?;
            Ok(k..=k)
        }
    }
}

enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) => Failure::Usage(e.to_string()),
            Error::PerfectSquare { .. } | Error::ContractViolation(_) | Error::OrbitCapExceeded { .. } => {
                Failure::Internal(e.to_string())
            }
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Internal(format!("write failed: {e}"))
    }
}

fn summary_line(a: &Analysis) -> String {
    let mut s = format!("n={} t={} {}", a.n, a.t, a.aut);
    if let (Some(sq), Some(div)) = (a.nu_square, a.nu_divisibility) {
        s.push_str(&format!(" square={sq} divisibility={div}"));
    }
    s
}

fn pair(s: &PellSolution) -> String {
    format!("({}, {})", s.x(), s.y())
}

fn run(cli: Cli, out: &mut impl Write) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze { n, t, out: o } => {
            let a = analyze(&Params::new(n, t)?, o.mode())?;
            if o.json {
                writeln!(out, "{}", serde_json::to_string(&a).expect("serializable"))?;
            } else {
                write!(out, "{}", render_text(&a))?;
            }
        }
        Command::Scan {
            n,
            t_min,
            t_max,
            parallel,
            out: o,
        } => {
            for a in scan(n, t_min, t_max, o.mode(), parallel)? {
                if o.json {
                    writeln!(out, "{}", serde_json::to_string(&a).expect("serializable"))?;
                } else {
                    writeln!(out, "{}", summary_line(&a))?;
                }
            }
        }
        Command::Table {
            n_min,
            n_max,
            t_max,
            csv,
            json,
            parallel,
        } => {
            let rows = table(n_min, n_max, t_max, parallel)?;
            if json {
                writeln!(out, "{}", serde_json::to_string(&rows).expect("serializable"))?;
            } else if csv {
                write!(out, "{}", table_csv(&rows))?;
            } else {
                let cell = |c: &TableCell| match c {
                    TableCell::NotFound(limit) => format!("not found ≤ {limit}"),
                    other => other.to_string(),
                };
                writeln!(out, "{:>4}  {:>16}  {:>16}", "n", "square 2", "square 2(n-1)")?;
                for r in &rows {
                    writeln!(out, "{:>4}  {:>16}  {:>16}", r.n, cell(&r.min_t_sq2), cell(&r.min_t_sq2n2))?;
                }
            }
        }
        Command::Family { n, k, out: o } => {
            let checks = family(n, *k.start(), *k.end(), o.mode())?;
            let mut failed = Vec::new();
            for c in &checks {
                let status = match c.passed {
                    Some(true) => "pass",
                    Some(false) => {
                        failed.push(c.k);
                        "FAIL"
                    }
                    None => "info",
                };
                let inv = c.result.variant.involution();
                if o.json {
                    let line = json!({
                        "n": c.n,
                        "k": c.k,
                        "t": c.t,
                        "aut": c.result.variant.label(),
                        "nu_square": inv.map(|d| d.nu_square.to_string()),
                        "z": inv.map(|d| d.z.to_string()),
                        "w": inv.map(|d| d.w.to_string()),
                        "expected": c.expected,
                        "status": status,
                    });
                    writeln!(out, "{line}")?;
                } else {
                    let detail = match (&c.result.variant, inv) {
                        (AutVariant::NonNaturalInvolution(_), Some(d)) => {
                            format!(" square={} (z, w)=({}, {})", d.nu_square, d.z, d.w)
                        }
                        _ => String::new(),
                    };
                    writeln!(
                        out,
                        "k={} t={} {}{} {status}",
                        c.k,
                        c.t,
                        c.result.variant.label(),
                        detail
                    )?;
                }
            }
            if !failed.is_empty() {
                return Err(Failure::Internal(format!(
                    "no square-2 involution for n={n}, k in {failed:?}"
                )));
            }
        }
        Command::Pell {
            d,
            m,
            congruence,
            limit,
            json,
        } => {
            if let Some(cm) = congruence {
                let found = congruent_search(&d, &m, &cm[0], &cm[1], None)?;
                if found.cap_hit {
                    return Err(Failure::Internal(format!(
                        "orbit cap reached before every class closed (see {ORBIT_CAP_ENV})"
                    )));
                }
                let sol = found.solution;
                if json {
                    writeln!(out, "{}", serde_json::to_string(&json!({ "solution": sol })).expect("serializable"))?;
                } else {
                    match sol {
                        Some(s) => writeln!(out, "{}", pair(&s))?,
                        None => writeln!(out, "none")?,
                    }
                }
                return Ok(());
            }
            let set = fundamental_solutions(&d, &m)?;
            let sols = generate_solutions(&set, limit);
            if json {
                let doc = json!({
                    "resolvent": set.resolvent(),
                    "fundamentals": set.fundamentals(),
                    "solutions": sols,
                });
                writeln!(out, "{doc}")?;
            } else {
                writeln!(out, "X^2 - {d}Y^2 = {m}")?;
                let list = |v: &[PellSolution]| v.iter().map(pair).collect::<Vec<_>>().join(" ");
                writeln!(out, "fundamental: {}", if set.is_empty() { "none".into() } else { list(set.fundamentals()) })?;
                writeln!(out, "solutions: {}", if sols.is_empty() { "none".into() } else { list(&sols) })?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(cli, &mut out);
    let flushed = out.flush();
    match result {
        Ok(()) if flushed.is_ok() => ExitCode::SUCCESS,
        Ok(()) => ExitCode::from(2),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
