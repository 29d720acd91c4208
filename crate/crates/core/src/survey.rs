//! Batch survey over a range of primes, the density statistic, and the
//! CSV / JSON / Markdown emitters used by the CLI.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::counting::{
    classify, count_points_fast, hasse_weil_bounds, Classification, CountMethod, PointCountRecord,
};
use crate::error::SurveyError;
use crate::ff::PrimeModulus;
use crate::hassewitt::is_superspecial;

pub const CSV_HEADER: &str = "p,p_mod_3,superspecial,count_fp2,classification,hw_upper,hw_lower";

/// Reference rows for `3 <= p <= 100`, as `(p, superspecial, #C_p(F_{p^2}))`,
/// compared against by `--paper-table`. The `p = 37` row is kept as
/// printed: it claims superspecial although `37 = 1 mod 3`, and its count
/// 1334 is not divisible by 3 (the computed count is 1344).
pub const REFERENCE_TABLE: [(u64, bool, u64); 24] = [
    (3, false, 10),
    (5, true, 66),
    (7, false, 48),
    (11, true, 210),
    (13, false, 192),
    (17, true, 426),
    (19, false, 336),
    (23, true, 714),
    (29, true, 1074),
    (31, false, 1146),
    (37, true, 1334),
    (41, true, 2010),
    (43, false, 1938),
    (47, true, 2586),
    (53, true, 3234),
    (59, true, 3954),
    (61, false, 3648),
    (67, false, 4368),
    (71, true, 5610),
    (73, false, 5376),
    (79, false, 6384),
    (83, true, 7554),
    (89, true, 8634),
    (97, false, 9408),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurveyRow {
    pub p: u64,
    pub p_mod_3: u64,
    pub superspecial: bool,
    pub count_fp2: Option<u64>,
    pub classification: Option<Classification>,
    pub hw_upper: i64,
    pub hw_lower: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct SurveyOptions {
    pub with_counts: bool,
    /// Worker threads; `None` uses the global rayon pool.
    pub jobs: Option<usize>,
    /// JSON-lines file of previously computed counts.
    pub cache: Option<PathBuf>,
    /// Fill [`SurveyRow::note`] by comparing with [`REFERENCE_TABLE`].
    pub paper_table: bool,
}

/// Sieve of Eratosthenes.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut m = i * i;
        while m <= n {
            composite[m] = true;
            m += i;
        }
    }
    out
}

pub fn run_survey(
    min_p: u64,
    max_p: u64,
    with_counts: bool,
) -> Result<Vec<SurveyRow>, SurveyError> {
    run_survey_with(
        min_p,
        max_p,
        &SurveyOptions {
            with_counts,
            ..SurveyOptions::default()
        },
    )
}

pub fn run_survey_with(
    min_p: u64,
    max_p: u64,
    opts: &SurveyOptions,
) -> Result<Vec<SurveyRow>, SurveyError> {
    if min_p < 3 || min_p > max_p {
        return Err(SurveyError::InvalidRange {
            min: min_p,
            max: max_p,
        });
    }
    // validate the upper end once, before fanning out
    let primes: Vec<PrimeModulus> = primes_up_to(max_p)
        .into_iter()
        .filter(|&p| p >= min_p)
        .map(|p| PrimeModulus::with_bound(p, max_p.max(crate::ff::DEFAULT_PRIME_BOUND)))
        .collect::<Result<_, _>>()?;

    let cache = match &opts.cache {
        Some(path) => CountCache::load(path)?,
        None => CountCache::default(),
    };

    let compute = || -> Result<Vec<SurveyRow>, SurveyError> {
        primes
            .par_iter()
            .map(|&p| survey_row(p, opts.with_counts, &cache))
            .collect()
    };
    let mut rows = match opts.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .expect("thread pool")
            .install(compute)?,
        None => compute()?,
    };
    rows.sort_by_key(|r| r.p);

    if let Some(path) = &opts.cache {
        let fresh: Vec<(u64, u64)> = rows
            .iter()
            .filter_map(|r| Some((r.p, r.count_fp2?)))
            .filter(|(p, _)| !cache.counts.contains_key(p))
            .collect();
        CountCache::append(path, &fresh)?;
    }
    if opts.paper_table {
        for row in &mut rows {
            row.note = Some(paper_note(row));
        }
    }
    Ok(rows)
}

fn survey_row(
    p: PrimeModulus,
    with_counts: bool,
    cache: &CountCache,
) -> Result<SurveyRow, SurveyError> {
    let superspecial = if p.get() == 3 {
        false
    } else {
        is_superspecial(p)?.superspecial
    };
    let (hw_lower, hw_upper) = hasse_weil_bounds(p);
    let record = if with_counts {
        Some(match cache.counts.get(&p.get()) {
            Some(&count) => classify(PointCountRecord::unclassified(p, count, CountMethod::Fast))?,
            None => count_points_fast(p)?,
        })
    } else {
        None
    };
    Ok(SurveyRow {
        p: p.get(),
        p_mod_3: p.residue_mod_3(),
        superspecial,
        count_fp2: record.map(|r| r.count),
        classification: record.map(|r| r.classification),
        hw_upper,
        hw_lower,
        note: None,
    })
}

/// Empty when the row agrees with the reference table or is outside it.
fn paper_note(row: &SurveyRow) -> String {
    let Some(&(_, printed, count)) = REFERENCE_TABLE.iter().find(|(p, _, _)| *p == row.p) else {
        return String::new();
    };
    let mut notes = Vec::new();
    if printed != row.superspecial {
        notes.push(format!(
            "reference table prints {}",
            if printed { "S.sp." } else { "Not S.sp." }
        ));
    }
    if let Some(c) = row.count_fp2 {
        if c != count {
            notes.push(format!("reference count {count}"));
        }
    }
    notes.join("; ")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
    Md,
}

impl FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            "md" => Ok(OutputFormat::Md),
            other => Err(format!(
                "unknown format '{other}' (expected csv, json or md)"
            )),
        }
    }
}

/// Serialises rows. The note column is written only when `note_column` is set.
pub fn emit(rows: &[SurveyRow], format: OutputFormat, note_column: bool) -> String {
    match format {
        OutputFormat::Csv => emit_csv(rows, note_column),
        OutputFormat::Json => emit_json(rows, note_column),
        OutputFormat::Md => emit_md(rows, note_column),
    }
}

fn emit_csv(rows: &[SurveyRow], note_column: bool) -> String {
    let mut out = String::from(CSV_HEADER);
    if note_column {
        out.push_str(",note");
    }
    out.push('\n');
    for r in rows {
        let count = r.count_fp2.map(|c| c.to_string()).unwrap_or_default();
        let class = r.classification.map(|c| c.as_str()).unwrap_or_default();
        write!(
            out,
            "{},{},{},{},{},{},{}",
            r.p, r.p_mod_3, r.superspecial, count, class, r.hw_upper, r.hw_lower
        )
        .unwrap();
        if note_column {
            out.push(',');
            out.push_str(&csv_field(r.note.as_deref().unwrap_or("")));
        }
        out.push('\n');
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn emit_json(rows: &[SurveyRow], note_column: bool) -> String {
    let rows: Vec<SurveyRow> = rows
        .iter()
        .cloned()
        .map(|mut r| {
            if note_column {
                r.note.get_or_insert_with(String::new);
            } else {
                r.note = None;
            }
            r
        })
        .collect();
    let mut out = serde_json::to_string_pretty(&rows).expect("rows serialise");
    out.push('\n');
    out
}

fn emit_md(rows: &[SurveyRow], note_column: bool) -> String {
    let mut out = String::from("| p | p mod 3 | S.sp. or not | #C_p(F_{p^2}) |");
    if note_column {
        out.push_str(" note |");
    }
    out.push('\n');
    out.push_str("|---|---|---|---|");
    if note_column {
        out.push_str("---|");
    }
    out.push('\n');
    for r in rows {
        let verdict = if r.superspecial { "S.sp." } else { "Not S.sp." };
        let count = match (r.count_fp2, r.classification) {
            (Some(c), Some(Classification::Maximal)) => format!("{c} (Max.)"),
            (Some(c), Some(Classification::Minimal)) => format!("{c} (Min.)"),
            (Some(c), _) => c.to_string(),
            (None, _) => "-".to_string(),
        };
        write!(out, "| {} | {} | {} | {} |", r.p, r.p_mod_3, verdict, count).unwrap();
        if note_column {
            write!(out, " {} |", r.note.as_deref().unwrap_or("")).unwrap();
        }
        out.push('\n');
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityReport {
    pub limit: u64,
    /// Primes `p` with `3 < p <= limit`.
    pub primes_considered: u64,
    /// Those with `p = 2 mod 3`.
    pub superspecial_count: u64,
    pub ratio: f64,
    pub expected: f64,
}

impl DensityReport {
    /// The ratio as an unreduced fraction.
    pub fn fraction(&self) -> (u64, u64) {
        (self.superspecial_count, self.primes_considered)
    }
}

pub fn density_scan(limit: u64) -> Result<DensityReport, SurveyError> {
    if limit < 5 {
        return Err(SurveyError::LimitTooSmall(limit));
    }
    let primes: Vec<u64> = primes_up_to(limit).into_iter().filter(|&p| p > 3).collect();
    let superspecial_count = primes.iter().filter(|&&p| p % 3 == 2).count() as u64;
    let primes_considered = primes.len() as u64;
    Ok(DensityReport {
        limit,
        primes_considered,
        superspecial_count,
        ratio: superspecial_count as f64 / primes_considered as f64,
        expected: 0.5,
    })
}

#[derive(Serialize, Deserialize)]
struct CacheLine {
    version: String,
    p: u64,
    count: u64,
}

/// Point counts keyed by `p`, read from a JSON-lines file. Lines written by
/// a different crate version are ignored.
#[derive(Clone, Debug, Default)]
pub struct CountCache {
    counts: BTreeMap<u64, u64>,
}

impl CountCache {
    pub fn load(path: &Path) -> Result<Self, SurveyError> {
        let mut counts = BTreeMap::new();
        let file = match File::open(path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(CountCache { counts }),
            Err(e) => return Err(e.into()),
        };
        for line in BufReader::new(file).lines() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let entry: CacheLine = serde_json::from_str(&line)?;
            if entry.version == env!("CARGO_PKG_VERSION") {
                counts.insert(entry.p, entry.count);
            }
        }
        Ok(CountCache { counts })
    }

    pub fn get(&self, p: u64) -> Option<u64> {
        self.counts.get(&p).copied()
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    fn append(path: &Path, entries: &[(u64, u64)]) -> Result<(), SurveyError> {
        if entries.is_empty() {
            return Ok(());
        }
        let mut file = OpenOptions::new().create(true).append(true).open(path)?;
        for &(p, count) in entries {
            let line = CacheLine {
                version: env!("CARGO_PKG_VERSION").to_string(),
                p,
                count,
            };
            writeln!(file, "{}", serde_json::to_string(&line)?)?;
        }
        Ok(())
    }
}
