use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use superspecial::counting::count_points_brute_with_gate;
use superspecial::hassewitt::DEFAULT_EXPANSION_GATE;
use superspecial::{
    count_points_fast, density_scan, emit, is_superspecial, run_survey_with,
    verify_smoothness_certificate, CurveDefinition, ExpansionOracle, OutputFormat, PrimeModulus,
    SuperspecialReport, SurveyOptions,
};

#[derive(Parser)]
#[command(
    name = "superspecial",
    version,
    about = "Superspeciality and F_{p^2} point counts of x^3+y^3+w^3 = 2yw+z^2 = 0"
)]
struct Cli {
    /// Worker threads (default: one per core).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Largest prime accepted.
    #[arg(long, global = true, default_value_t = superspecial::ff::DEFAULT_PRIME_BOUND)]
    prime_bound: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Superspeciality verdict and the 16 criterion coefficients.
    Check {
        p: u64,
        #[arg(long)]
        json: bool,
    },
    /// The 16 (monomial, coefficient) pairs in criterion order.
    Coeffs {
        p: u64,
        #[arg(long)]
        json: bool,
    },
    /// Number of F_{p^2}-rational points and Hasse-Weil classification.
    Count {
        p: u64,
        #[arg(long, value_enum, default_value_t = Method::Fast)]
        method: Method,
        /// Largest p the brute-force method accepts.
        #[arg(long, default_value_t = superspecial::counting::DEFAULT_BRUTE_GATE)]
        brute_gate: u64,
        #[arg(long)]
        json: bool,
    },
    /// Survey table over a range of primes.
    Table {
        #[arg(long, default_value_t = 3)]
        min: u64,
        #[arg(long, default_value_t = 269)]
        max: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Skip point counting.
        #[arg(long)]
        no_counts: bool,
        /// Add a note column flagging rows that differ from the reference table.
        #[arg(long)]
        paper_table: bool,
        /// JSON-lines cache of point counts.
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Proportion of primes p > 3 up to N with p = 2 mod 3.
    Density {
        #[arg(long)]
        limit: u64,
    },
    /// Smoothness certificate (radical membership of x, y, z, w).
    Verify { p: u64 },
    /// Print (QP)^(p-1) in full (small p only).
    Expand {
        p: u64,
        #[arg(long, default_value_t = DEFAULT_EXPANSION_GATE)]
        gate: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Fast,
    Brute,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
    Md,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
            Format::Md => OutputFormat::Md,
        }
    }
}

const EXIT_USAGE: u8 = 1;
const EXIT_INCONSISTENT: u8 = 2;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if let Some(n) = cli.jobs {
        // ignore the error if a pool was already set up
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn prime(cli: &Cli, p: u64) -> Result<PrimeModulus> {
    PrimeModulus::with_bound(p, cli.prime_bound).with_context(|| format!("invalid prime {p}"))
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let mut out = std::io::stdout().lock();
    match &cli.command {
        Command::Check { p, json } => {
            let report = is_superspecial(prime(cli, *p)?)?;
            if *json {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&report_json(&report))?
                )?;
            } else {
                writeln!(
                    out,
                    "p = {} (p mod 3 = {})",
                    report.p,
                    report.p.residue_mod_3()
                )?;
                writeln!(
                    out,
                    "superspecial: {} (predicted from p mod 3: {}; {})",
                    report.superspecial,
                    report.predicted,
                    if report.agrees { "agrees" } else { "DISAGREES" }
                )?;
                writeln!(out, "coefficients of (QP)^(p-1):")?;
                write_coefficients(&mut out, &report)?;
            }
            if !report.agrees {
                eprintln!("internal inconsistency: verdict disagrees with p mod 3");
                return Ok(ExitCode::from(EXIT_INCONSISTENT));
            }
        }
        Command::Coeffs { p, json } => {
            let report = is_superspecial(prime(cli, *p)?)?;
            if *json {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&report_json(&report)["coefficients"])?
                )?;
            } else {
                write_coefficients(&mut out, &report)?;
            }
        }
        Command::Count {
            p,
            method,
            brute_gate,
            json,
        } => {
            let p = prime(cli, *p)?;
            let record = match method {
                Method::Fast => count_points_fast(p)?,
                Method::Brute => count_points_brute_with_gate(p, *brute_gate)?,
            };
            if *json {
                let value = json!({
                    "p": record.p.get(),
                    "q": record.q,
                    "count": record.count,
                    "hw_upper": record.hw_upper,
                    "hw_lower": record.hw_lower,
                    "classification": record.classification,
                    "method": record.method,
                });
                writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
            } else {
                writeln!(out, "p = {}, q = {}", record.p, record.q)?;
                writeln!(out, "#C_p(F_q) = {}", record.count)?;
                writeln!(
                    out,
                    "Hasse-Weil interval: [{}, {}]",
                    record.hw_lower, record.hw_upper
                )?;
                writeln!(out, "classification: {}", record.classification)?;
            }
        }
        Command::Table {
            min,
            max,
            format,
            no_counts,
            paper_table,
            cache,
        } => {
            let opts = SurveyOptions {
                with_counts: !no_counts,
                jobs: cli.jobs,
                cache: cache.clone(),
                paper_table: *paper_table,
            };
            let rows = run_survey_with(*min, *max, &opts)?;
            out.write_all(emit(&rows, (*format).into(), *paper_table).as_bytes())?;
            if rows
                .iter()
                .any(|r| r.p > 3 && r.superspecial != (r.p_mod_3 == 2))
            {
                eprintln!("internal inconsistency: a verdict disagrees with p mod 3");
                return Ok(ExitCode::from(EXIT_INCONSISTENT));
            }
        }
        Command::Density { limit } => {
            let d = density_scan(*limit)?;
            let (num, den) = d.fraction();
            writeln!(out, "limit: {}", d.limit)?;
            writeln!(out, "primes 3 < p <= limit: {den}")?;
            writeln!(out, "p = 2 mod 3: {num}")?;
            writeln!(out, "ratio: {num}/{den} = {:.6}", d.ratio)?;
            writeln!(out, "expected density: {}", d.expected)?;
        }
        Command::Verify { p } => {
            let p = prime(cli, *p)?;
            let report = verify_smoothness_certificate(&CurveDefinition::new(p))?;
            writeln!(out, "{report}")?;
            if !report.passed() {
                bail!("smoothness certificate failed for p = {p}");
            }
        }
        Command::Expand { p, gate } => {
            let oracle = ExpansionOracle::with_gate(prime(cli, *p)?, *gate)?;
            writeln!(out, "{}", oracle.polynomial())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn write_coefficients(out: &mut impl Write, report: &SuperspecialReport) -> Result<()> {
    for (ev, c) in &report.coefficients {
        writeln!(out, "  {ev}  {c}")?;
    }
    Ok(())
}

fn report_json(report: &SuperspecialReport) -> serde_json::Value {
    let coefficients: Vec<_> = report
        .coefficients
        .iter()
        .map(|(ev, c)| {
            json!({
                "monomial": ev.to_string(),
                "exponent": ev.0,
                "coefficient": c.value(),
            })
        })
        .collect();
    json!({
        "p": report.p.get(),
        "p_mod_3": report.p.residue_mod_3(),
        "superspecial": report.superspecial,
        "predicted": report.predicted,
        "agrees": report.agrees,
        "coefficients": coefficients,
    })
}
