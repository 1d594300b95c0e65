//! The `cnslab` command line: argument parsing, dispatch and report
//! rendering as JSON, CSV or plain text.
//!
//! Exit codes: 0 when every claim holds or the query succeeded, 1 on a
//! violation or disagreement, 2 on usage errors and bad parameters, 3 on
//! internal failures.

use std::collections::BTreeMap;
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::coeff::{Method, Verdict};
use crate::conjecture::{family_report, search, special_pairs, SearchMode};
use crate::constructions::{ModelParams, Theorem};
use crate::error::{Error, Result};
use crate::field::Prime;
use crate::limits::Limits;
use crate::subsums::{restricted_sumset, sumset, FpSet, SubsumTable};
use crate::theorem::{construction_audit, exhaustive_verify, hypothesis_audit, random_verify};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[command(
    name = "cnslab",
    version,
    about = "Restricted subset sums over F_p and their Nullstellensatz certificates"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalOpts,
}

#[derive(Args, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalOpts {
    /// Emit a JSON report.
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,
    /// Emit CSV rows.
    #[arg(long, global = true)]
    pub csv: bool,
    /// Cap on worker threads (default: all cores).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Largest grid enumerated by the coefficient formula.
    #[arg(long, global = true, env = "CNSLAB_MAX_GRID")]
    pub max_grid: Option<u64>,
    /// Dense expansion: maximum number of variables.
    #[arg(long, global = true)]
    pub max_expand_vars: Option<usize>,
    /// Dense expansion: maximum total degree.
    #[arg(long, global = true)]
    pub max_expand_degree: Option<u64>,
    /// Largest exhaustive enumeration, in (instance, parameter) pairs.
    #[arg(long, global = true)]
    pub max_instances: Option<u64>,
    /// Add wall-clock time to the report (makes output non-reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl GlobalOpts {
    pub fn format(&self) -> Format {
        if self.json {
            Format::Json
        } else if self.csv {
            Format::Csv
        } else {
            Format::Text
        }
    }

    pub fn limits(&self) -> Limits {
        let d = Limits::default();
        Limits {
            max_grid: self.max_grid.unwrap_or(d.max_grid),
            max_expand_vars: self.max_expand_vars.unwrap_or(d.max_expand_vars),
            max_expand_degree: self.max_expand_degree.unwrap_or(d.max_expand_degree),
            max_instances: self.max_instances.unwrap_or(d.max_instances),
        }
    }
}

#[derive(Subcommand, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "lowercase")]
pub enum Command {
    /// A + B, or the restricted sumset with --restricted.
    Sumset(SumsetArgs),
    /// h^A: sums of h pairwise distinct elements.
    Hfold(HfoldArgs),
    /// Σ_α^β(A): subsums of between α and |A| - β distinct elements.
    Sigma(SigmaArgs),
    /// Certificate coefficient of a witness model by each method.
    Coeff(CoeffArgs),
    /// Check a theorem's bound exhaustively or on random instances.
    Verify(VerifyArgs),
    /// Nullstellensatz audit of a hypothesis model.
    Audit(AuditArgs),
    /// The double-bound estimate and its exceptions.
    #[command(subcommand)]
    Conjecture(ConjectureCommand),
}

#[derive(Args, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumsetArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub a: Vec<i64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub b: Vec<i64>,
    #[arg(long)]
    pub restricted: bool,
}

#[derive(Args, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HfoldArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub set: Vec<i64>,
    #[arg(long)]
    pub h: usize,
}

#[derive(Args, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub set: Vec<i64>,
    #[arg(long, default_value_t = 0)]
    pub alpha: usize,
    #[arg(long, default_value_t = 0)]
    pub beta: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TheoremArg {
    Cd,
    Dsh,
    Main,
}

impl From<TheoremArg> for Theorem {
    fn from(t: TheoremArg) -> Theorem {
        match t {
            TheoremArg::Cd => Theorem::Cd,
            TheoremArg::Dsh => Theorem::Dsh,
            TheoremArg::Main => Theorem::Main,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodArg {
    Sum,
    Point,
    Closed,
    Expand,
    All,
}

impl MethodArg {
    pub fn methods(self) -> Vec<Method> {
        match self {
            MethodArg::Sum => vec![Method::FullSum],
            MethodArg::Point => vec![Method::SinglePoint],
            MethodArg::Closed => vec![Method::ClosedForm],
            MethodArg::Expand => vec![Method::Expansion],
            MethodArg::All => Method::ALL.to_vec(),
        }
    }
}

#[derive(Args, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffArgs {
    #[arg(value_enum)]
    pub theorem: TheoremArg,
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub m: Option<u64>,
    #[arg(long)]
    pub d: Option<u64>,
    #[arg(long)]
    pub h: Option<u64>,
    #[arg(long)]
    pub alpha: Option<u64>,
    #[arg(long, value_enum, default_value_t = MethodArg::All)]
    pub method: MethodArg,
}

#[derive(Args, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[command(group(ArgGroup::new("mode").required(true).args(["exhaustive", "samples"])))]
pub struct SearchOpts {
    /// Enumerate the whole space.
    #[arg(long)]
    pub exhaustive: bool,
    /// Number of random instances.
    #[arg(long)]
    pub samples: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub theorem: TheoremArg,
    #[arg(long)]
    pub p: u64,
    #[command(flatten)]
    pub mode: SearchOpts,
}

#[derive(Args, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditArgs {
    #[arg(value_enum)]
    pub theorem: TheoremArg,
    #[arg(long)]
    pub p: u64,
    /// The set A (DSH and MAIN).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub set: Vec<i64>,
    /// The sets A and B (CD).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub a: Vec<i64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub b: Vec<i64>,
    #[arg(long)]
    pub h: Option<usize>,
    #[arg(long)]
    pub alpha: Option<usize>,
    /// Candidate cover C; defaults to the smallest elements of the true set.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub cover: Option<Vec<i64>>,
}

#[derive(Subcommand, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "subcommand", rename_all = "lowercase")]
pub enum ConjectureCommand {
    /// Special pairs (k, p) with p = k(k+1)/2 - 4 prime.
    Pairs {
        #[arg(long, default_value_t = 1000)]
        limit: u64,
    },
    /// Double-bound table of {1, -2, 3, ..., k} in F_p.
    Family {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        p: u64,
    },
    /// Search for violations of the double bound.
    Search {
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        mode: SearchOpts,
    },
}

pub fn parse_args<I, T>(argv: I) -> std::result::Result<RunConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    RunConfig::try_parse_from(argv)
}

/// Rows for CSV and text rendering.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(headers: &[&'static str]) -> Self {
        Table {
            headers: headers.to_vec(),
            rows: Vec::new(),
        }
    }

    fn push<I: IntoIterator<Item = String>>(&mut self, row: I) {
        self.rows.push(row.into_iter().collect());
    }
}

/// Everything a command produced, before rendering.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub params: Value,
    pub results: Value,
    pub violations: Vec<Value>,
    pub timing: BTreeMap<String, Value>,
    pub table: Table,
    pub exit_code: i32,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    command: &'a str,
    params: &'a Value,
    results: &'a Value,
    violations: &'a [Value],
    timing: &'a BTreeMap<String, Value>,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let doc = JsonReport {
                    command: &self.command,
                    params: &self.params,
                    results: &self.results,
                    violations: &self.violations,
                    timing: &self.timing,
                };
                let mut s = serde_json::to_string_pretty(&doc).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.table.headers).expect("in-memory write");
                for row in &self.table.rows {
                    w.write_record(row).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
            }
            Format::Text => self.render_text(),
        }
    }

    fn render_text(&self) -> String {
        let widths: Vec<usize> = (0..self.table.headers.len())
            .map(|i| {
                self.table
                    .rows
                    .iter()
                    .map(|r| r[i].len())
                    .chain([self.table.headers[i].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: Vec<&str>| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c:<w$}"))
                .collect();
            padded.join("  ").trim_end().to_string() + "\n"
        };
        let mut out = format!("# {}\n", self.command);
        out += &line(self.table.headers.clone());
        for row in &self.table.rows {
            out += &line(row.iter().map(String::as_str).collect());
        }
        if !self.violations.is_empty() {
            out += &format!("{} violation(s)\n", self.violations.len());
        }
        if let Some(ms) = self.timing.get("wall_ms") {
            out += &format!("wall time: {ms} ms\n");
        }
        out
    }
}

fn residues(s: &FpSet) -> String {
    s.residues().iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

/// Reads a set literal, reducing each entry mod `p`; duplicates after
/// reduction are rejected.
pub fn parse_set(p: Prime, items: &[i64], what: &str) -> Result<FpSet> {
    let set = FpSet::from_ints(p, items.iter().copied());
    if set.len() != items.len() {
        return Err(Error::BadParams(format!("--{what} has repeated elements mod {p}")));
    }
    Ok(set)
}

fn need<T>(v: Option<T>, flag: &str, theorem: TheoremArg) -> Result<T> {
    v.ok_or_else(|| Error::BadParams(format!("--{flag} is required for {theorem:?}").to_lowercase()))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

/// Executes `config` and returns the report, or a library error.
pub fn execute(config: &RunConfig) -> Result<Report> {
    let limits = config.global.limits();
    let start = Instant::now();
    let mut report = match &config.command {
        Command::Sumset(args) => run_sumset(args)?,
        Command::Hfold(args) => run_hfold(args)?,
        Command::Sigma(args) => run_sigma(args)?,
        Command::Coeff(args) => run_coeff(args, &limits)?,
        Command::Verify(args) => run_verify(args, &limits)?,
        Command::Audit(args) => run_audit(args, &limits)?,
        Command::Conjecture(cmd) => run_conjecture(cmd, &limits)?,
    };
    if config.global.timing {
        report
            .timing
            .insert("wall_ms".into(), json!(start.elapsed().as_millis() as u64));
    }
    Ok(report)
}

fn report(command: &str, params: Value, results: Value, table: Table) -> Report {
    Report {
        command: command.into(),
        params,
        results,
        violations: Vec::new(),
        timing: BTreeMap::new(),
        table,
        exit_code: EXIT_OK,
    }
}

fn run_sumset(args: &SumsetArgs) -> Result<Report> {
    let p = Prime::new(args.p)?;
    let a = parse_set(p, &args.a, "a")?;
    let b = parse_set(p, &args.b, "b")?;
    let out = if args.restricted {
        restricted_sumset(&a, &b)?
    } else {
        sumset(&a, &b)?
    };
    let mut table = Table::new(&["p", "a", "b", "restricted", "size", "set"]);
    table.push([
        p.to_string(),
        residues(&a),
        residues(&b),
        args.restricted.to_string(),
        out.len().to_string(),
        residues(&out),
    ]);
    let results = json!({ "a": a, "b": b, "size": out.len(), "set": out });
    Ok(report("sumset", to_value(args), results, table))
}

fn run_hfold(args: &HfoldArgs) -> Result<Report> {
    let p = Prime::new(args.p)?;
    let a = parse_set(p, &args.set, "set")?;
    let out = SubsumTable::new(&a).hfold(args.h)?;
    let mut table = Table::new(&["p", "set", "h", "size", "result"]);
    table.push([
        p.to_string(),
        residues(&a),
        args.h.to_string(),
        out.len().to_string(),
        residues(&out),
    ]);
    let results = json!({ "a": a, "size": out.len(), "set": out });
    Ok(report("hfold", to_value(args), results, table))
}

fn run_sigma(args: &SigmaArgs) -> Result<Report> {
    let p = Prime::new(args.p)?;
    let a = parse_set(p, &args.set, "set")?;
    let out = SubsumTable::new(&a).sigma_double(args.alpha, args.beta)?;
    let mut table = Table::new(&["p", "set", "alpha", "beta", "size", "result"]);
    table.push([
        p.to_string(),
        residues(&a),
        args.alpha.to_string(),
        args.beta.to_string(),
        out.len().to_string(),
        residues(&out),
    ]);
    let results = json!({ "a": a, "size": out.len(), "set": out });
    Ok(report("sigma", to_value(args), results, table))
}

fn model_params(args: &CoeffArgs) -> Result<ModelParams> {
    let t = args.theorem;
    Ok(match t {
        TheoremArg::Cd => ModelParams::Cd {
            n: need(args.n, "n", t)?,
            m: need(args.m, "m", t)?,
        },
        TheoremArg::Dsh => ModelParams::Dsh {
            d: need(args.d, "d", t)?,
            h: need(args.h, "h", t)?,
        },
        TheoremArg::Main => ModelParams::Main {
            d: need(args.d, "d", t)?,
            alpha: need(args.alpha, "alpha", t)?,
        },
    })
}

fn run_coeff(args: &CoeffArgs, limits: &Limits) -> Result<Report> {
    let p = Prime::new(args.p)?;
    let params = model_params(args)?;
    let methods = args.method.methods();
    let audit = construction_audit(params, p, &methods, limits)?;
    if audit.methods.is_empty() {
        let reasons: Vec<_> = audit.skipped.values().cloned().collect();
        return Err(Error::TooLarge(reasons.join("; ")));
    }
    let mut table = Table::new(&["method", "value", "note"]);
    for m in &methods {
        let name = to_value(m).as_str().unwrap_or_default().to_string();
        match (audit.methods.get(m), audit.skipped.get(m)) {
            (Some(v), _) => table.push([name, v.value().to_string(), String::new()]),
            (None, Some(why)) => table.push([name, String::new(), format!("skipped: {why}")]),
            (None, None) => {}
        }
    }
    if let Some(c) = audit.nonzero_point_count {
        table.push(["census".into(), c.to_string(), "non-vanishing grid points".into()]);
    }
    let mut violations = Vec::new();
    if !audit.agreement {
        violations.push(json!({ "kind": "disagreement", "methods": audit.methods }));
    }
    if !audit.nonzero {
        violations.push(json!({ "kind": "zero_certificate" }));
    }
    if !audit.census_ok() {
        violations.push(json!({ "kind": "census", "nonzero_points": audit.nonzero_point_count }));
    }
    let mut r = report(&format!("coeff {}", params.theorem().name()), to_value(args), to_value(&audit), table);
    r.exit_code = if violations.is_empty() { EXIT_OK } else { EXIT_VIOLATION };
    r.violations = violations;
    Ok(r)
}

fn run_verify(args: &VerifyArgs, limits: &Limits) -> Result<Report> {
    let p = Prime::new(args.p)?;
    let theorem: Theorem = args.theorem.into();
    let out = if args.mode.exhaustive {
        exhaustive_verify(p, theorem, limits)?
    } else {
        random_verify(p, theorem, args.mode.samples.unwrap_or(0), args.mode.seed)
    };
    let mut table = Table::new(&["theorem", "p", "mode", "sets", "instances", "tight", "violations"]);
    table.push([
        theorem.name().into(),
        p.to_string(),
        if args.mode.exhaustive { "exhaustive" } else { "random" }.into(),
        out.sets_checked.to_string(),
        out.instances_checked.to_string(),
        out.tight.to_string(),
        out.violation_count.to_string(),
    ]);
    let mut r = report(&format!("verify {}", theorem.name()), to_value(args), to_value(&out), table);
    r.violations = out.violations.iter().map(to_value).collect();
    r.timing.insert("sets_checked".into(), json!(out.sets_checked));
    r.timing.insert("instances_checked".into(), json!(out.instances_checked));
    r.exit_code = if out.holds() { EXIT_OK } else { EXIT_VIOLATION };
    Ok(r)
}

fn run_audit(args: &AuditArgs, limits: &Limits) -> Result<Report> {
    let p = Prime::new(args.p)?;
    let t = args.theorem;
    let (sets, param) = match t {
        TheoremArg::Cd => (vec![parse_set(p, &args.a, "a")?, parse_set(p, &args.b, "b")?], 0),
        TheoremArg::Dsh => (vec![parse_set(p, &args.set, "set")?], need(args.h, "h", t)?),
        TheoremArg::Main => (vec![parse_set(p, &args.set, "set")?], need(args.alpha, "alpha", t)?),
    };
    let cover = args.cover.as_ref().map(|c| parse_set(p, c, "cover")).transpose()?;
    let audit = hypothesis_audit(t.into(), &sets, param, cover, limits)?;
    let rep = &audit.report;
    let mut table = Table::new(&["verdict", "coefficient", "grid_points", "nonzero_points", "witness", "escaping_value"]);
    let witness = rep
        .witness
        .as_ref()
        .map(|w| w.iter().map(|x| x.value().to_string()).collect::<Vec<_>>().join(" "))
        .unwrap_or_default();
    table.push([
        to_value(&rep.verdict).as_str().unwrap_or_default().to_string(),
        rep.coefficient.value().to_string(),
        rep.grid_points.to_string(),
        rep.nonzero_points.to_string(),
        witness,
        rep.escaping_value.map(|x| x.value().to_string()).unwrap_or_default(),
    ]);
    let theorem: Theorem = t.into();
    let mut r = report(&format!("audit {}", theorem.name()), to_value(args), to_value(&audit), table);
    r.exit_code = match rep.verdict {
        Verdict::Contradiction => EXIT_OK,
        Verdict::Consistent => EXIT_VIOLATION,
        Verdict::DegreeMismatch | Verdict::NullstellensatzViolated => EXIT_INTERNAL,
    };
    if r.exit_code != EXIT_OK {
        r.violations.push(json!({ "kind": "verdict", "verdict": rep.verdict }));
    }
    Ok(r)
}

fn search_mode(opts: &SearchOpts) -> SearchMode {
    if opts.exhaustive {
        SearchMode::Exhaustive
    } else {
        SearchMode::Sampled {
            samples: opts.samples.unwrap_or(0),
            seed: opts.seed,
        }
    }
}

fn run_conjecture(cmd: &ConjectureCommand, limits: &Limits) -> Result<Report> {
    match cmd {
        ConjectureCommand::Pairs { limit } => {
            let pairs = special_pairs(*limit);
            let mut table = Table::new(&["k", "p"]);
            for (k, p) in &pairs {
                table.push([k.to_string(), p.to_string()]);
            }
            let results = json!({
                "pairs": pairs.iter().map(|&(k, p)| json!({ "k": k, "p": p })).collect::<Vec<_>>()
            });
            Ok(report("conjecture pairs", to_value(cmd), results, table))
        }
        ConjectureCommand::Family { k, p } => {
            let fam = family_report(*k, Prime::new(*p)?)?;
            let mut table = Table::new(&["alpha", "beta", "observed", "conjectured_bound", "violation"]);
            for row in &fam.rows {
                table.push([
                    row.alpha.to_string(),
                    row.beta.to_string(),
                    row.observed.to_string(),
                    row.conjectured_bound.to_string(),
                    row.violation.to_string(),
                ]);
            }
            Ok(report("conjecture family", to_value(cmd), to_value(&fam), table))
        }
        ConjectureCommand::Search { p, mode } => {
            let out = search(Prime::new(*p)?, search_mode(mode), limits)?;
            let mut table = Table::new(&["set", "alpha", "beta", "observed", "conjectured_bound", "known_family"]);
            for h in &out.hits {
                table.push([
                    residues(&h.set),
                    h.alpha.to_string(),
                    h.beta.to_string(),
                    h.observed.to_string(),
                    h.conjectured_bound.to_string(),
                    h.matches_known_family.to_string(),
                ]);
            }
            let mut r = report("conjecture search", to_value(cmd), to_value(&out), table);
            r.violations = out.unexplained().map(to_value).collect();
            r.timing.insert("sets_checked".into(), json!(out.sets_checked));
            r.timing.insert("instances_checked".into(), json!(out.instances_checked));
            r.exit_code = if r.violations.is_empty() { EXIT_OK } else { EXIT_VIOLATION };
            Ok(r)
        }
    }
}

pub fn exit_code_for(e: &Error) -> i32 {
    if e.is_internal() {
        EXIT_INTERNAL
    } else {
        EXIT_USAGE
    }
}

/// Output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs `config` on a pool of `--workers` threads.
pub fn run(config: &RunConfig) -> Outcome {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = config.global.workers {
        builder = builder.num_threads(n.max(1));
    }
    let pool = match builder.build() {
        Ok(pool) => pool,
        Err(e) => {
            return Outcome {
                code: EXIT_INTERNAL,
                stdout: String::new(),
                stderr: format!("error: thread pool: {e}\n"),
            }
        }
    };
    match pool.install(|| execute(config)) {
        Ok(report) => Outcome {
            code: report.exit_code,
            stdout: report.render(config.global.format()),
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: exit_code_for(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Parses `argv` and runs it; clap's help and usage errors are rendered
/// with their usual exit codes.
pub fn run_args<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match parse_args(argv) {
        Ok(config) => run(&config),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> RunConfig {
        parse_args(std::iter::once("cnslab").chain(s.split_whitespace())).unwrap()
    }

    #[test]
    fn parses_spec_examples() {
        let c = parse("sigma --p 11 --set 1,-2,3,4,5 --alpha 1 --beta 1 --json");
        assert!(c.global.json);
        match &c.command {
            Command::Sigma(a) => assert_eq!((a.set.clone(), a.alpha, a.beta), (vec![1, -2, 3, 4, 5], 1, 1)),
            other => panic!("{other:?}"),
        }
        let c = parse("coeff main --p 7 --d 2 --alpha 1 --method all");
        assert!(matches!(c.command, Command::Coeff(CoeffArgs { theorem: TheoremArg::Main, .. })));
        let c = parse("verify main --p 11 --exhaustive");
        assert!(matches!(c.command, Command::Verify(VerifyArgs { mode: SearchOpts { exhaustive: true, .. }, .. })));
    }

    #[test]
    fn config_round_trips() {
        for s in [
            "sigma --p 11 --set 1,-2,3,4,5 --alpha 1 --beta 1 --json",
            "verify dsh --p 101 --samples 50 --seed 3 --workers 2 --csv",
            "conjecture search --p 11 --exhaustive",
            "audit cd --p 11 --a 0,1,5 --b 2,3 --cover 2,3,4",
        ] {
            let c = parse(s);
            let text = serde_json::to_string(&c).unwrap();
            assert_eq!(serde_json::from_str::<RunConfig>(&text).unwrap(), c);
        }
    }

    #[test]
    fn usage_errors() {
        let bad = |s: &str| parse_args(std::iter::once("cnslab").chain(s.split_whitespace())).is_err();
        assert!(bad("verify main --p 11"));
        assert!(bad("verify main --p 11 --exhaustive --samples 3"));
        assert!(bad("coeff xyz --p 7"));
        assert!(bad("sigma --p 11 --set 1,2 --json --csv"));
        let out = run(&parse("hfold --p 7 --set 1,8 --h 1"));
        assert_eq!(out.code, EXIT_USAGE);
        let out = run(&parse("coeff dsh --p 11 --d 3"));
        assert_eq!(out.code, EXIT_USAGE);
    }
}
