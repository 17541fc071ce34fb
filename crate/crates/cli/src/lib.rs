//! Driver behind the `weil-euler` binary: argument validation, parallel
//! verification, and text/table/JSON output.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::Parser;
use rayon::prelude::*;
use thiserror::Error;
use weil_euler::number_field::{is_fundamental, Field};
use weil_euler::weil_cohomology::{
    verify_field, ReportRecord, Verdict, VerificationReport, WeilError,
};

pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Parser, Debug, Clone)]
#[command(
    name = "weil-euler",
    version,
    about = "Check |chi(H*_c)| = |zeta*_F(0)| for Q and quadratic fields"
)]
pub struct Cli {
    /// Fundamental discriminant, or Q for the rationals. Repeatable.
    #[arg(long = "field", value_name = "d|Q", allow_negative_numbers = true)]
    pub fields: Vec<String>,
    /// Every fundamental discriminant with |d| <= N, plus Q.
    #[arg(long, value_name = "N")]
    pub range: Option<u64>,
    /// Relative tolerance for |chi| / |zeta*(0)|.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    /// Write reports as a JSON array; `-` for stdout.
    #[arg(long, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Aligned table instead of one line per field.
    #[arg(long)]
    pub table: bool,
    /// Worker threads.
    #[arg(long, value_name = "N")]
    pub jobs: Option<usize>,
    /// Print the cohomology groups of each field.
    #[arg(long)]
    pub show_profile: bool,
}

#[derive(Debug, Error, PartialEq)]
pub enum UsageError {
    #[error("nothing to verify: pass --field or --range")]
    NoTargets,
    #[error("--tol must be positive and finite, got {0}")]
    Tolerance(f64),
    #[error("--range must be at least 3, got {0}")]
    Range(u64),
    #[error("--jobs must be at least 1")]
    Jobs,
    #[error("--field {value}: {reason}")]
    Field { value: String, reason: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Lines,
    Table,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    /// Sorted by [`Field::sort_key`], without duplicates.
    pub targets: Vec<Field>,
    pub range: Option<u64>,
    pub tolerance: f64,
    pub json: Option<PathBuf>,
    pub format: OutputFormat,
    pub show_profile: bool,
    pub jobs: Option<usize>,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, UsageError> {
        if !(cli.tol > 0.0 && cli.tol.is_finite()) {
            return Err(UsageError::Tolerance(cli.tol));
        }
        if cli.jobs == Some(0) {
            return Err(UsageError::Jobs);
        }
        let mut targets = Vec::new();
        for value in &cli.fields {
            let field: Field = value.parse().map_err(|e| UsageError::Field {
                value: value.clone(),
                reason: format!("{e}"),
            })?;
            targets.push(field);
        }
        if let Some(n) = cli.range {
            if n < 3 {
                return Err(UsageError::Range(n));
            }
            targets.extend(Field::corpus(n));
        }
        if targets.is_empty() {
            return Err(UsageError::NoTargets);
        }
        targets.sort_by_key(|f| f.sort_key());
        targets.dedup();
        Ok(Self {
            targets,
            range: cli.range,
            tolerance: cli.tol,
            json: cli.json.clone(),
            format: if cli.table {
                OutputFormat::Table
            } else {
                OutputFormat::Lines
            },
            show_profile: cli.show_profile,
            jobs: cli.jobs,
        })
    }
}

/// Integers `2 <= |d| <= n` that are not fundamental discriminants.
pub fn skipped_in_range(n: u64) -> u64 {
    let n = n as i64;
    (2..=n)
        .flat_map(|k| [-k, k])
        .filter(|&d| !is_fundamental(d))
        .count() as u64
}

#[derive(Debug)]
pub struct RunOutcome {
    /// In target order.
    pub results: Vec<(Field, Result<VerificationReport, WeilError>)>,
}

impl RunOutcome {
    pub fn passed(&self) -> usize {
        self.results
            .iter()
            .filter(|(_, r)| matches!(r, Ok(rep) if rep.verdict == Verdict::Pass))
            .count()
    }

    pub fn failed(&self) -> usize {
        self.results.len() - self.passed()
    }

    pub fn max_relative_error(&self) -> f64 {
        self.results
            .iter()
            .filter_map(|(_, r)| r.as_ref().ok())
            .map(VerificationReport::relative_error)
            .fold(0.0, f64::max)
    }

    pub fn exit_code(&self) -> i32 {
        if self.failed() == 0 {
            0
        } else {
            1
        }
    }

    pub fn records(&self) -> Vec<ReportRecord> {
        self.results
            .iter()
            .filter_map(|(_, r)| r.as_ref().ok())
            .map(ReportRecord::from)
            .collect()
    }
}

/// Verifies every target; results come back in target order whatever the
/// completion order.
pub fn verify_all(config: &RunConfig) -> RunOutcome {
    let work = || -> Vec<_> {
        config
            .targets
            .par_iter()
            .map(|&f| (f, verify_field(f, config.tolerance)))
            .collect()
    };
    let results = match config.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map(|pool| pool.install(work))
            .unwrap_or_else(|_| work()),
        None => work(),
    };
    RunOutcome { results }
}

fn write_line(out: &mut dyn Write, r: &VerificationReport) -> io::Result<()> {
    let inv = &r.invariants;
    writeln!(
        out,
        "{:>6}  h={} w={} R={:.12} |chi|={:.15} |zeta*|={:.15} rel.err={:.2e} {}",
        inv.field.to_string(),
        inv.h,
        inv.w,
        inv.regulator,
        r.chi.abs(),
        r.zeta_star.leading.abs(),
        r.relative_error(),
        r.verdict.as_str()
    )
}

fn write_table_header(out: &mut dyn Write) -> io::Result<()> {
    writeln!(
        out,
        "{:>6} {:>4} {:>18} {:>3} {:>20} {:>20} {:>10} {:>7}",
        "d", "h", "R", "w", "|chi|", "|zeta*(0)|", "rel.err", "verdict"
    )
}

fn write_table_row(out: &mut dyn Write, r: &VerificationReport) -> io::Result<()> {
    let inv = &r.invariants;
    writeln!(
        out,
        "{:>6} {:>4} {:>18.12} {:>3} {:>20.15} {:>20.15} {:>10.2e} {:>7}",
        inv.field.to_string(),
        inv.h,
        inv.regulator,
        inv.w,
        r.chi.abs(),
        r.zeta_star.leading.abs(),
        r.relative_error(),
        r.verdict.as_str()
    )
}

fn write_profile(out: &mut dyn Write, r: &VerificationReport) -> io::Result<()> {
    let p = &r.profile;
    for (q, (c, o)) in p.compact.iter().zip(&p.open).enumerate() {
        writeln!(out, "        H^{q}_c = {:<14} H^{q} = {o}", c.to_string())?;
    }
    Ok(())
}

/// Writes the human-readable report and summary, then the JSON if asked.
/// Returns the process exit code.
pub fn run(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<i32> {
    if let Some(n) = config.range {
        writeln!(
            err,
            "note: --range {n} skips {} non-fundamental values",
            skipped_in_range(n)
        )?;
    }
    let outcome = verify_all(config);
    let json_to_stdout = config.json.as_deref() == Some(std::path::Path::new("-"));
    // JSON on stdout keeps stdout machine-readable; text moves to stderr.
    let text: &mut dyn Write = if json_to_stdout { err } else { out };

    if config.format == OutputFormat::Table {
        write_table_header(text)?;
    }
    for (field, result) in &outcome.results {
        match result {
            Ok(r) => {
                match config.format {
                    OutputFormat::Lines => write_line(text, r)?,
                    OutputFormat::Table => write_table_row(text, r)?,
                }
                if config.show_profile {
                    write_profile(text, r)?;
                }
            }
            Err(e) => writeln!(text, "{:>6}  error: {e}", field.to_string())?,
        }
    }
    if config.show_profile {
        for line in weil_euler::weil_cohomology::PROFILE_METADATA {
            writeln!(text, "note: {line}")?;
        }
    }
    writeln!(
        text,
        "summary: {} passed, {} failed, max relative error {:.3e}",
        outcome.passed(),
        outcome.failed(),
        outcome.max_relative_error()
    )?;

    if let Some(path) = &config.json {
        let records = outcome.records();
        if json_to_stdout {
            serde_json::to_writer_pretty(&mut *out, &records).map_err(io::Error::other)?;
            writeln!(out)?;
        } else {
            let mut file = BufWriter::new(File::create(path)?);
            serde_json::to_writer_pretty(&mut file, &records).map_err(io::Error::other)?;
            writeln!(file)?;
            file.flush()?;
        }
    }
    Ok(outcome.exit_code())
}
