//! Command-line front end: count tables, record export and verification runs.
//!
//! Data is written to the output stream and diagnostics to the error stream.
//! Exit codes: 0 all checks passed, 1 a mismatch was found, 2 usage error,
//! 3 a request exceeded the oracle caps.

use std::collections::BTreeSet;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::dihedral::{Dihedral, MAX_N};
use crate::hgs::{closed_form_count, enumerate_hgs, verify_record, CountBreakdown, HgsError, HgsRecord, Params};
use crate::oracle::{ambient_checks, oracle_enumerate, OracleConfig, OracleError, AMBIENT_LIMIT, PAIRSEARCH_LIMIT};
use crate::perm::{FiniteGroup, Permutation};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_REFUSED: i32 = 3;

/// Environment variable that may raise the oracle caps (up to their hard limits).
pub const MAX_ORACLE_ENV: &str = "HGS_MAX_ORACLE_N";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Count,
    Enumerate,
    Verify,
}

/// A validated invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliRequest {
    pub command: Command,
    pub ns: Vec<usize>,
    pub format: Format,
    pub labels: bool,
    pub oracle: bool,
    pub ambient: bool,
    pub caps: OracleConfig,
}

#[derive(Parser, Debug)]
#[command(name = "dihedral-hgs", version, about = "Dihedral Hopf-Galois structures on dihedral extensions")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Closed-form counts per block.
    Count(Common),
    /// Every regular dihedral N normalized by lambda(D_n).
    Enumerate {
        #[command(flatten)]
        common: Common,
        /// Render points as dihedral elements (1, x, tx^2, ...).
        #[arg(long)]
        labels: bool,
    },
    /// Cross-check the formula, the enumeration and optionally the oracles.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Compare against the exhaustive pair search.
        #[arg(long)]
        oracle: bool,
        /// Sweep the full symmetric group for normalizer checks.
        #[arg(long)]
        ambient: bool,
        /// Largest n for the pair search.
        #[arg(long, value_name = "N")]
        max_n_pairsearch: Option<usize>,
        /// Largest n for the ambient sweep.
        #[arg(long, value_name = "N")]
        max_n_ambient: Option<usize>,
        /// Raise both caps to their hard limits.
        #[arg(long)]
        extended: bool,
        /// Run the oracles on a single thread.
        #[arg(long)]
        sequential: bool,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// A single n >= 3.
    #[arg(long, conflicts_with = "range", required_unless_present = "range")]
    n: Option<usize>,
    /// Inclusive range `a..b`.
    #[arg(long, value_name = "A..B")]
    range: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

fn parse_range(text: &str) -> Result<Vec<usize>, String> {
    let (a, b) = text
        .split_once("..")
        .ok_or_else(|| format!("range '{text}' must look like a..b"))?;
    let parse = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| format!("range bound '{s}' is not a non-negative integer"))
    };
    let (a, b) = (parse(a)?, parse(b)?);
    if a > b {
        return Err(format!("range {a}..{b} is empty"));
    }
    Ok((a..=b).collect())
}

impl Common {
    fn ns(&self) -> Result<Vec<usize>, String> {
        let ns = match (&self.n, &self.range) {
            (Some(n), None) => vec![*n],
            (None, Some(r)) => parse_range(r)?,
            _ => return Err("exactly one of --n and --range is required".into()),
        };
        if let Some(bad) = ns.iter().find(|&&n| !(3..=MAX_N).contains(&n)) {
            return Err(format!("n={bad} is outside 3..={MAX_N}"));
        }
        Ok(ns)
    }
}

fn env_cap() -> Result<Option<usize>, String> {
    match std::env::var(MAX_ORACLE_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| format!("{MAX_ORACLE_ENV}='{v}' is not a non-negative integer")),
        Err(_) => Ok(None),
    }
}

/// Parses the arguments (program name first) into a request. `Err` carries
/// the clap error so that help and version output can be distinguished.
pub fn parse_request<I, T>(args: I) -> Result<CliRequest, ParseFailure>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(ParseFailure::Clap)?;
    let usage = ParseFailure::Usage;
    let base = |command, common: &Common| -> Result<CliRequest, ParseFailure> {
        Ok(CliRequest {
            command,
            ns: common.ns().map_err(usage)?,
            format: common.format,
            labels: false,
            oracle: false,
            ambient: false,
            caps: OracleConfig::default(),
        })
    };
    match cli.command {
        Sub::Count(common) => base(Command::Count, &common),
        Sub::Enumerate { common, labels } => Ok(CliRequest {
            labels,
            ..base(Command::Enumerate, &common)?
        }),
        Sub::Verify {
            common,
            oracle,
            ambient,
            max_n_pairsearch,
            max_n_ambient,
            extended,
            sequential,
        } => {
            let mut caps = if extended {
                OracleConfig::extended()
            } else {
                OracleConfig::default()
            };
            if let Some(cap) = env_cap().map_err(usage)? {
                caps.max_n_pairsearch = caps.max_n_pairsearch.max(cap.min(PAIRSEARCH_LIMIT));
                caps.max_n_ambient = caps.max_n_ambient.max(cap.min(AMBIENT_LIMIT));
            }
            caps = OracleConfig::new(
                max_n_pairsearch.unwrap_or(caps.max_n_pairsearch),
                max_n_ambient.unwrap_or(caps.max_n_ambient),
                !sequential,
            )
            .map_err(|e| usage(e.to_string()))?;
            Ok(CliRequest {
                oracle,
                ambient,
                caps,
                ..base(Command::Verify, &common)?
            })
        }
    }
}

#[derive(Debug)]
pub enum ParseFailure {
    Clap(clap::Error),
    Usage(String),
}

/// JSON form of the generating parameters; absent fields are omitted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsJson {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub u: Option<usize>,
    pub v: usize,
    pub r: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub s: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub w: Option<usize>,
}

impl From<Params> for ParamsJson {
    fn from(p: Params) -> Self {
        match p {
            Params::Block0 { u, v, r } => Self { u: Some(u), v, r, s: None, w: None },
            Params::Block12 { s, v, w, r } => Self { u: None, v, r, s: Some(s), w: Some(w) },
        }
    }
}

impl ParamsJson {
    pub fn to_params(self) -> Option<Params> {
        match (self.u, self.s, self.w) {
            (Some(u), None, None) => Some(Params::Block0 { u, v: self.v, r: self.r }),
            (None, Some(s), Some(w)) => Some(Params::Block12 { s, v: self.v, w, r: self.r }),
            _ => None,
        }
    }
}

/// Serialized form of an [`HgsRecord`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordJson {
    pub n: usize,
    pub block: usize,
    pub params: ParamsJson,
    pub k: String,
    pub tau: String,
    pub group_order: usize,
    pub in_multiple_holomorph: bool,
}

impl From<&HgsRecord> for RecordJson {
    fn from(rec: &HgsRecord) -> Self {
        Self {
            n: rec.n,
            block: rec.block_index,
            params: rec.params.into(),
            k: rec.k.format_cycles(),
            tau: rec.tau.format_cycles(),
            group_order: rec.group.order(),
            in_multiple_holomorph: rec.in_multiple_holomorph,
        }
    }
}

impl RecordJson {
    /// Rebuilds the full record, regenerating the group from `k` and `tau`.
    pub fn to_record(&self) -> Result<HgsRecord, String> {
        let degree = 2 * self.n;
        let k = Permutation::parse_cycles(&self.k, degree).map_err(|e| e.to_string())?;
        let tau = Permutation::parse_cycles(&self.tau, degree).map_err(|e| e.to_string())?;
        let group = FiniteGroup::generate(degree, &[k.clone(), tau.clone()]).map_err(|e| e.to_string())?;
        if group.order() != self.group_order {
            return Err(format!("group order {} != {}", group.order(), self.group_order));
        }
        Ok(HgsRecord {
            n: self.n,
            block_index: self.block,
            params: self.params.to_params().ok_or("inconsistent params")?,
            k,
            tau,
            group,
            in_multiple_holomorph: self.in_multiple_holomorph,
        })
    }
}

#[derive(Debug, Serialize)]
struct CheckResult {
    n: usize,
    check: String,
    passed: bool,
    detail: String,
}

/// Row of the CSV count table; `mu` is 0 for odd `n`.
#[derive(Serialize)]
struct CountRow {
    n: usize,
    upsilon: usize,
    mu: usize,
    block0: usize,
    block1: usize,
    block2: usize,
    total: usize,
}

impl From<&CountBreakdown> for CountRow {
    fn from(c: &CountBreakdown) -> Self {
        Self {
            n: c.n,
            upsilon: c.upsilon_size,
            mu: c.mu.unwrap_or(0),
            block0: c.block0,
            block1: c.block1,
            block2: c.block2,
            total: c.total,
        }
    }
}

enum Failure {
    Refused(String),
    Other(String),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Other(format!("write failed: {e}"))
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Other(format!("csv output failed: {e}"))
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Other(format!("json output failed: {e}"))
    }
}

impl From<HgsError> for Failure {
    fn from(e: HgsError) -> Self {
        Failure::Other(e.to_string())
    }
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn run_count(req: &CliRequest, out: &mut dyn Write) -> Result<bool, Failure> {
    let rows: Vec<CountBreakdown> = req
        .ns
        .iter()
        .map(|&n| closed_form_count(n))
        .collect::<Result<_, _>>()?;
    match req.format {
        Format::Json => write_json(out, &rows)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for row in &rows {
                w.serialize(CountRow::from(row))?;
            }
            w.flush()?;
        }
        Format::Text => {
            writeln!(out, "{:>4} {:>7} {:>4} {:>7} {:>7} {:>7} {:>7}", "n", "upsilon", "mu", "block0", "block1", "block2", "total")?;
            for c in &rows {
                let mu = c.mu.map_or_else(|| "-".to_string(), |m| m.to_string());
                writeln!(
                    out,
                    "{:>4} {:>7} {:>4} {:>7} {:>7} {:>7} {:>7}",
                    c.n, c.upsilon_size, mu, c.block0, c.block1, c.block2, c.total
                )?;
            }
        }
    }
    Ok(true)
}

fn params_text(p: &Params) -> String {
    match p {
        Params::Block0 { u, v, r } => format!("u={u} v={v} r={r}"),
        Params::Block12 { s, v, w, r } => format!("s={s} v={v} w={w} r={r}"),
    }
}

fn run_enumerate(req: &CliRequest, out: &mut dyn Write) -> Result<bool, Failure> {
    let mut all = Vec::new();
    for &n in &req.ns {
        all.push((n, enumerate_hgs(n)?));
    }
    match req.format {
        Format::Json => {
            let records: Vec<RecordJson> = all.iter().flat_map(|(_, recs)| recs.iter().map(RecordJson::from)).collect();
            write_json(out, &records)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["n", "block", "u", "v", "r", "s", "w", "k", "tau", "group_order", "in_multiple_holomorph"])?;
            let opt = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
            for (_, recs) in &all {
                for rec in recs {
                    let j = RecordJson::from(rec);
                    w.write_record([
                        j.n.to_string(),
                        j.block.to_string(),
                        opt(j.params.u),
                        j.params.v.to_string(),
                        j.params.r.to_string(),
                        opt(j.params.s),
                        opt(j.params.w),
                        j.k,
                        j.tau,
                        j.group_order.to_string(),
                        j.in_multiple_holomorph.to_string(),
                    ])?;
                }
            }
            w.flush()?;
        }
        Format::Text => {
            for (n, recs) in &all {
                let d = Dihedral::new(*n).map_err(|e| Failure::Other(e.to_string()))?;
                let render = |p: &Permutation| {
                    if req.labels {
                        p.format_cycles_with(|z| d.label(z))
                    } else {
                        p.format_cycles()
                    }
                };
                writeln!(out, "n={n}: {} records", recs.len())?;
                for rec in recs {
                    writeln!(
                        out,
                        "block={} {} hol={}",
                        rec.block_index,
                        params_text(&rec.params),
                        rec.in_multiple_holomorph
                    )?;
                    writeln!(out, "  k   = {}", render(&rec.k))?;
                    writeln!(out, "  tau = {}", render(&rec.tau))?;
                }
            }
        }
    }
    Ok(true)
}

fn verify_n(n: usize, req: &CliRequest, results: &mut Vec<CheckResult>) -> Result<(), Failure> {
    let mut push = |check: &str, passed: bool, detail: String| {
        results.push(CheckResult { n, check: check.into(), passed, detail });
    };
    let expected = closed_form_count(n)?;
    let d = Dihedral::new(n).map_err(|e| Failure::Other(e.to_string()))?;
    let records = match enumerate_hgs(n) {
        Ok(recs) => recs,
        Err(e @ HgsError::CountMismatch { .. }) => {
            push("formula-vs-enumeration", false, e.to_string());
            return Ok(());
        }
        Err(e) => return Err(e.into()),
    };
    let mut blocks = [0usize; 3];
    for rec in &records {
        blocks[rec.block_index] += 1;
    }
    push(
        "formula-vs-enumeration",
        blocks == expected.blocks() && records.len() == expected.total,
        format!("blocks={blocks:?} expected={:?} total={}", expected.blocks(), expected.total),
    );

    let bad: Vec<String> = records
        .iter()
        .filter_map(|rec| verify_record(rec, &d).err().map(|e| e.to_string()))
        .collect();
    push("record-invariants", bad.is_empty(), bad.first().cloned().unwrap_or_else(|| format!("{} records", records.len())));

    let groups: BTreeSet<&[Permutation]> = records.iter().map(|r| r.group.elements()).collect();
    push("distinct-groups", groups.len() == records.len(), format!("{} distinct", groups.len()));

    if req.oracle {
        let found = oracle_enumerate(n, &req.caps).map_err(oracle_failure)?;
        let oracle_set: BTreeSet<&[Permutation]> = found.iter().map(|g| g.elements()).collect();
        push(
            "oracle-equivalence",
            oracle_set == groups && found.len() == records.len(),
            format!("oracle={} enumeration={}", found.len(), records.len()),
        );
    }
    if req.ambient {
        let report = ambient_checks(n, &req.caps).map_err(oracle_failure)?;
        for c in report.checks {
            push(
                &format!("ambient {}", c.name),
                c.passed,
                format!("size={} expected={} disagreements={}", c.normalizer_size, c.expected_size, c.disagreements),
            );
        }
    }
    Ok(())
}

fn oracle_failure(e: OracleError) -> Failure {
    match e {
        OracleError::RefusedScale { .. } => Failure::Refused(e.to_string()),
        e => Failure::Other(e.to_string()),
    }
}

fn run_verify(req: &CliRequest, out: &mut dyn Write) -> Result<bool, Failure> {
    if let Some(&n) = req.ns.iter().max() {
        if req.oracle && n > req.caps.max_n_pairsearch {
            return Err(oracle_failure(OracleError::RefusedScale { what: "pair search", n, cap: req.caps.max_n_pairsearch }));
        }
        if req.ambient && n > req.caps.max_n_ambient {
            return Err(oracle_failure(OracleError::RefusedScale { what: "ambient sweep", n, cap: req.caps.max_n_ambient }));
        }
    }
    let mut results = Vec::new();
    for &n in &req.ns {
        verify_n(n, req, &mut results)?;
    }
    match req.format {
        Format::Json => write_json(out, &results)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for r in &results {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        Format::Text => {
            for r in &results {
                let tag = if r.passed { "PASS" } else { "FAIL" };
                writeln!(out, "{tag} n={} {}: {}", r.n, r.check, r.detail)?;
            }
        }
    }
    Ok(results.iter().all(|r| r.passed))
}

/// Executes a request and returns the process exit code.
pub fn run(req: &CliRequest, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let outcome = match req.command {
        Command::Count => run_count(req, out),
        Command::Enumerate => run_enumerate(req, out),
        Command::Verify => run_verify(req, out),
    };
    match outcome {
        Ok(true) => EXIT_OK,
        Ok(false) => {
            let _ = writeln!(err, "verification failed");
            EXIT_MISMATCH
        }
        Err(Failure::Refused(msg)) => {
            let _ = writeln!(err, "refused: {msg}");
            EXIT_REFUSED
        }
        Err(Failure::Other(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_MISMATCH
        }
    }
}

/// Parses `args` and runs the request.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match parse_request(args) {
        Ok(req) => run(&req, out, err),
        Err(ParseFailure::Clap(e)) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            code
        }
        Err(ParseFailure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}
