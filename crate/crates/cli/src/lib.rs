//! Command-line front end for `coho-core`.
//!
//! Every subcommand reads its inputs into a [`Request`], hands them to the
//! library and serializes whatever comes back. Batch mode feeds one
//! [`Request`] per JSON line through the same path.

use std::fs;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use coho_core::autoinduct::{hecke_infinity_type, induced_pi_infinity, ramakrishnan_transfer};
use coho_core::cohomrep::{generic_cohomological_rep, Place};
use coho_core::endotransfer::{middle_degree, so2n_obstruction, CaseKind, Obstruction, TransferCase};
use coho_core::weightcalc::{enumerate_strongly_pure, DEFAULT_SEARCH_CAP};
use coho_core::{ArchField, FieldSpec, Induced, StrongPurity, TransferReport, Weight, DEFAULT_CLOSURE_CAP};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub mod table;

pub const CLOSURE_CAP_VAR: &str = "COHO_CLOSURE_CAP";

#[derive(Debug, Parser)]
#[command(name = "coho", version, about = "Exact weight calculus for cohomological representations of GL(N)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    pub output: Output,

    /// File of JSON lines, one request per line; results come back in input order.
    #[arg(long, global = true, value_name = "PATH")]
    pub batch: Option<String>,

    /// Wrap the result as {"meta": {...}, "data": ...} with a timestamp.
    #[arg(long, global = true)]
    pub meta: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseArg {
    Sp2n,
    SoOdd,
    Unitary,
    SoEven,
}

impl From<CaseArg> for CaseKind {
    fn from(c: CaseArg) -> CaseKind {
        match c {
            CaseArg::Sp2n => CaseKind::Sp2n,
            CaseArg::SoOdd => CaseKind::SoOdd,
            CaseArg::Unitary => CaseKind::Unitary,
            CaseArg::SoEven => CaseKind::SoEven,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct FieldWeight {
    /// Field as JSON, or a path to a JSON file. Defaults to totally real of
    /// the weight's degree.
    #[arg(long, value_name = "JSON|PATH")]
    pub field: Option<String>,
    /// Weight as JSON, or a path to a JSON file.
    #[arg(long, value_name = "JSON|PATH")]
    pub weight: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Purity, strong purity and parallelism of a weight.
    Classify(FieldWeight),
    /// Endoscopic transfer at every relevant place, compared with J(μ).
    Transfer {
        #[command(flatten)]
        io: FieldWeight,
        #[arg(long, value_enum)]
        case: Option<CaseArg>,
    },
    /// The generic cohomological representation J(μ) at each place.
    Cohomological {
        #[command(flatten)]
        io: FieldWeight,
        /// Restrict to one embedding.
        #[arg(long)]
        embedding: Option<usize>,
    },
    /// The SO(2n) parity obstruction at each real place.
    Obstruction(FieldWeight),
    /// Hecke infinity type and induced archimedean components for a parallel weight.
    Induce(FieldWeight),
    /// Tate-twist calculator for GL(2) x GL(2) -> GL(4).
    Ramakrishnan { k1: Option<i64>, k2: Option<i64> },
    /// Strongly pure dominant weights in a box.
    Enumerate {
        #[arg(long, value_name = "JSON|PATH")]
        field: Option<String>,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long)]
        bound: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        purity_weight: Option<i64>,
        /// Print at most this many weights; the count is always complete.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Middle degree q_0 of the cuspidal range for a case and GL(N).
    MiddleDegree {
        #[arg(long, value_enum)]
        case: Option<CaseArg>,
        /// N, the rank of the general linear group.
        #[arg(long)]
        rank: Option<usize>,
    },
}

/// The union of every subcommand's inputs. Command-line flags fill one of
/// these; in batch mode each line overrides it field by field.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Request {
    pub field: Option<Value>,
    pub weight: Option<Value>,
    pub case: Option<CaseArg>,
    pub embedding: Option<usize>,
    pub k1: Option<i64>,
    pub k2: Option<i64>,
    pub rank: Option<usize>,
    pub bound: Option<u32>,
    pub purity_weight: Option<i64>,
    pub limit: Option<usize>,
}

impl Request {
    fn overlay(&self, line: Request) -> Request {
        Request {
            field: line.field.or_else(|| self.field.clone()),
            weight: line.weight.or_else(|| self.weight.clone()),
            case: line.case.or(self.case),
            embedding: line.embedding.or(self.embedding),
            k1: line.k1.or(self.k1),
            k2: line.k2.or(self.k2),
            rank: line.rank.or(self.rank),
            bound: line.bound.or(self.bound),
            purity_weight: line.purity_weight.or(self.purity_weight),
            limit: line.limit.or(self.limit),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Classify,
    Transfer,
    Cohomological,
    Obstruction,
    Induce,
    Ramakrishnan,
    Enumerate,
    MiddleDegree,
}

/// A failure together with the process exit code it maps to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub const PARSE: i32 = 1;
    pub const DOMAIN: i32 = 2;
    pub const CASE: i32 = 3;
    pub const RESOURCE: i32 = 4;

    fn parse(message: impl Into<String>) -> Self {
        CliError { code: Self::PARSE, message: message.into() }
    }
}

impl From<coho_core::Error> for CliError {
    fn from(e: coho_core::Error) -> Self {
        let code = if e.is_resource() {
            Self::RESOURCE
        } else if e.is_case_mismatch() {
            Self::CASE
        } else if e.is_input() {
            Self::PARSE
        } else {
            Self::DOMAIN
        };
        CliError { code, message: e.to_string() }
    }
}

type CliResult<T> = Result<T, CliError>;

/// What the process should print and return.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Process-level settings read from the environment.
#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub closure_cap: usize,
}

impl Settings {
    pub fn from_env() -> CliResult<Self> {
        let closure_cap = match std::env::var(CLOSURE_CAP_VAR) {
            Ok(s) => s
                .trim()
                .parse()
                .map_err(|_| CliError::parse(format!("{CLOSURE_CAP_VAR}={s:?} is not a non-negative integer")))?,
            Err(_) => DEFAULT_CLOSURE_CAP,
        };
        Ok(Settings { closure_cap })
    }
}

impl Default for Settings {
    fn default() -> Self {
        Settings { closure_cap: DEFAULT_CLOSURE_CAP }
    }
}

/// Reads a flag that is either inline JSON or a path to a JSON file.
fn json_or_path(flag: &str, raw: &str) -> CliResult<Value> {
    let trimmed = raw.trim_start();
    let text = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        raw.to_owned()
    } else {
        fs::read_to_string(Path::new(raw)).map_err(|e| CliError::parse(format!("--{flag}: cannot read {raw}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::parse(format!("--{flag}: malformed JSON: {e}")))
}

fn base_request(cli: &Cli) -> CliResult<(Kind, Request)> {
    let opt = |flag: &str, v: &Option<String>| v.as_deref().map(|s| json_or_path(flag, s)).transpose();
    let fw = |io: &FieldWeight| -> CliResult<Request> {
        Ok(Request { field: opt("field", &io.field)?, weight: opt("weight", &io.weight)?, ..Request::default() })
    };
    Ok(match &cli.command {
        Command::Classify(io) => (Kind::Classify, fw(io)?),
        Command::Transfer { io, case } => (Kind::Transfer, Request { case: *case, ..fw(io)? }),
        Command::Cohomological { io, embedding } => (Kind::Cohomological, Request { embedding: *embedding, ..fw(io)? }),
        Command::Obstruction(io) => (Kind::Obstruction, fw(io)?),
        Command::Induce(io) => (Kind::Induce, fw(io)?),
        Command::Ramakrishnan { k1, k2 } => (Kind::Ramakrishnan, Request { k1: *k1, k2: *k2, ..Request::default() }),
        Command::Enumerate { field, rank, bound, purity_weight, limit } => (
            Kind::Enumerate,
            Request {
                field: opt("field", field)?,
                rank: *rank,
                bound: *bound,
                purity_weight: *purity_weight,
                limit: *limit,
                ..Request::default()
            },
        ),
        Command::MiddleDegree { case, rank } => {
            (Kind::MiddleDegree, Request { case: *case, rank: *rank, ..Request::default() })
        }
    })
}

fn parse_field(value: &Value, settings: Settings) -> CliResult<ArchField> {
    let spec: FieldSpec = serde_json::from_value(value.clone()).map_err(|e| CliError::parse(format!("field: {e}")))?;
    Ok(ArchField::from_spec(spec, settings.closure_cap)?)
}

/// Accepts the full form `{"n": .., "components": {"0": [..], ..}}`, a list
/// of components, or a single component (repeated over every embedding).
fn parse_weight(value: &Value, degree: Option<usize>) -> CliResult<Weight> {
    let bad = |e: serde_json::Error| CliError::parse(format!("weight: {e}"));
    match value {
        Value::Object(_) => serde_json::from_value(value.clone()).map_err(bad),
        Value::Array(items) if items.iter().all(Value::is_array) => {
            let comps: Vec<Vec<i64>> = serde_json::from_value(value.clone()).map_err(bad)?;
            let n = comps.first().map_or(0, Vec::len);
            Ok(Weight::new(n, comps)?)
        }
        Value::Array(_) => {
            let comp: Vec<i64> = serde_json::from_value(value.clone()).map_err(bad)?;
            Ok(Weight::parallel(degree.unwrap_or(1), comp)?)
        }
        _ => Err(CliError::parse("weight: expected an object or an array")),
    }
}

fn field_and_weight(req: &Request, settings: Settings) -> CliResult<(ArchField, Weight)> {
    let field = req.field.as_ref().map(|f| parse_field(f, settings)).transpose()?;
    let raw = req.weight.as_ref().ok_or_else(|| CliError::parse("missing --weight"))?;
    let mu = parse_weight(raw, field.as_ref().map(ArchField::degree))?;
    let field = match field {
        Some(f) => f,
        None => ArchField::totally_real(mu.embeddings())?,
    };
    Ok((field, mu))
}

fn to_value<S: Serialize + ?Sized>(s: &S) -> Value {
    serde_json::to_value(s).expect("report types serialize infallibly")
}

#[derive(Serialize)]
struct PlaceTransfer {
    #[serde(flatten)]
    report: TransferReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    obstruction: Option<Obstruction<i64>>,
}

#[derive(Serialize)]
struct PlaceRep {
    embedding: usize,
    place: Place,
    rep: Induced,
}

fn execute(kind: Kind, req: &Request, settings: Settings) -> CliResult<Value> {
    match kind {
        Kind::Classify => {
            let (field, mu) = field_and_weight(req, settings)?;
            let report = StrongPurity::with_cap(&field, settings.closure_cap)?.check(&mu)?;
            Ok(to_value(&report))
        }
        Kind::Transfer => {
            let case = req.case.ok_or_else(|| CliError::parse("missing --case"))?;
            let (field, mu) = field_and_weight(req, settings)?;
            let kind = CaseKind::from(case);
            let places = TransferReport::for_field(kind, &field, &mu)?
                .into_iter()
                .map(|report| {
                    let obstruction = match kind {
                        CaseKind::SoEven => Some(so2n_obstruction(&field, &mu, report.embedding)?),
                        _ => None,
                    };
                    Ok(PlaceTransfer { report, obstruction })
                })
                .collect::<CliResult<Vec<_>>>()?;
            Ok(json!({ "case": kind, "places": to_value(&places) }))
        }
        Kind::Cohomological => {
            let (field, mu) = field_and_weight(req, settings)?;
            let embeddings: Vec<usize> = match req.embedding {
                Some(e) => vec![e],
                None => field.real_embeddings().chain(field.complex_places()).collect(),
            };
            let reps = embeddings
                .into_iter()
                .map(|e| {
                    let (place, rep) = generic_cohomological_rep(&field, &mu, e)?;
                    Ok(PlaceRep { embedding: e, place, rep })
                })
                .collect::<CliResult<Vec<_>>>()?;
            Ok(json!({ "places": to_value(&reps) }))
        }
        Kind::Obstruction => {
            let (field, mu) = field_and_weight(req, settings)?;
            let places = field
                .real_embeddings()
                .map(|e| Ok(json!({ "embedding": e, "obstruction": to_value(&so2n_obstruction(&field, &mu, e)?) })))
                .collect::<CliResult<Vec<_>>>()?;
            if places.is_empty() {
                return Err(coho_core::Error::CaseMismatch("field has no real place".into()).into());
            }
            Ok(json!({ "places": places }))
        }
        Kind::Induce => {
            let (_, mu) = field_and_weight(req, settings)?;
            let hecke = hecke_infinity_type(&mu)?;
            Ok(json!({
                "f": hecke.f,
                "real": to_value(&induced_pi_infinity(&mu, Place::Real)?),
                "complex": to_value(&induced_pi_infinity(&mu, Place::Complex)?),
            }))
        }
        Kind::Ramakrishnan => {
            let (k1, k2) = match (req.k1, req.k2) {
                (Some(a), Some(b)) => (a, b),
                _ => return Err(CliError::parse("ramakrishnan needs K1 and K2")),
            };
            Ok(to_value(&ramakrishnan_transfer(k1, k2)?))
        }
        Kind::Enumerate => {
            let field = match &req.field {
                Some(f) => parse_field(f, settings)?,
                None => ArchField::totally_real(1)?,
            };
            let rank = req.rank.ok_or_else(|| CliError::parse("missing --rank"))?;
            let bound = req.bound.ok_or_else(|| CliError::parse("missing --bound"))?;
            let w = req.purity_weight.unwrap_or(0);
            let all = enumerate_strongly_pure(&field, rank, bound, &w, DEFAULT_SEARCH_CAP)?;
            let count = all.len();
            let shown = req.limit.unwrap_or(count).min(count);
            Ok(json!({
                "count": count,
                "truncated": shown < count,
                "weights": to_value(&all[..shown]),
            }))
        }
        Kind::MiddleDegree => {
            let case = req.case.ok_or_else(|| CliError::parse("missing --case"))?;
            let big_n = req.rank.ok_or_else(|| CliError::parse("missing --rank"))?;
            let tc = TransferCase::for_total_rank(case.into(), big_n)?;
            Ok(json!({ "case": tc.kind, "n": tc.n, "N": big_n, "middle_degree": middle_degree(tc) }))
        }
    }
}

fn wrap_meta(data: Value) -> Value {
    let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    json!({
        "meta": { "tool": "coho", "version": env!("CARGO_PKG_VERSION"), "timestamp": timestamp },
        "data": data,
    })
}

fn render(value: &Value, output: Output) -> String {
    match output {
        Output::Json => serde_json::to_string(value).expect("values serialize"),
        Output::Table => table::render(value),
    }
}

fn run_batch(cli: &Cli, kind: Kind, base: &Request, path: &str, settings: Settings) -> Outcome {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            return Outcome {
                stdout: String::new(),
                stderr: format!("error: --batch: cannot read {path}: {e}\n"),
                code: 1,
            }
        }
    };
    let lines: Vec<(usize, &str)> = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()).collect();
    let results: Vec<(usize, CliResult<Value>)> = lines
        .par_iter()
        .map(|&(no, line)| {
            let res = serde_json::from_str::<Request>(line)
                .map_err(|e| CliError::parse(format!("malformed request: {e}")))
                .and_then(|r| execute(kind, &base.overlay(r), settings));
            (no + 1, res)
        })
        .collect();

    let mut out = Outcome { stdout: String::new(), stderr: String::new(), code: 0 };
    for (line_no, res) in results {
        let value = match res {
            Ok(v) => v,
            Err(e) => {
                out.stderr.push_str(&format!("error: line {line_no}: {}\n", e.message));
                if out.code == 0 {
                    out.code = e.code;
                }
                json!({ "error": { "code": e.code, "message": e.message } })
            }
        };
        let value = if cli.meta { wrap_meta(value) } else { value };
        out.stdout.push_str(&render(&value, cli.output));
        out.stdout.push('\n');
    }
    out
}

/// Runs a parsed command line to completion without touching the process.
pub fn run(cli: &Cli, settings: Settings) -> Outcome {
    let (kind, base) = match base_request(cli) {
        Ok(x) => x,
        Err(e) => return Outcome { stdout: String::new(), stderr: format!("error: {}\n", e.message), code: e.code },
    };
    if let Some(path) = &cli.batch {
        return run_batch(cli, kind, &base, path, settings);
    }
    match execute(kind, &base, settings) {
        Ok(value) => {
            let value = if cli.meta { wrap_meta(value) } else { value };
            let mut stdout = render(&value, cli.output);
            stdout.push('\n');
            Outcome { stdout, stderr: String::new(), code: 0 }
        }
        Err(e) => Outcome { stdout: String::new(), stderr: format!("error: {}\n", e.message), code: e.code },
    }
}
