//! The `sympquot` command line.
//!
//! Exit codes: `0` success, `2` usage or parse error, `3` membership false,
//! `4` a dimension formula mismatch (which can only be a bug).

mod render;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::Error;
use crate::linalg::ScalarMatrix;
use crate::local_model::format::{
    scalar_matrix_from_doc, scalar_matrix_to_doc, LagrangianTupleDoc, QuotPointDoc,
};
use crate::local_model::sample::SampleKind;
use crate::local_model::{default_order, DivisorMultiset, QuotPoint};
use crate::rng::seeded;
use crate::symplectic::{SymplecticMatrix, SymplecticSpace};
use crate::tangent::{
    build_tangent_system, dimension_report_with_order, expected_hom_dimension,
    expected_tangent_dimension, hom_space_dimension,
};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Environment variable raising the truncation order above `2rd + 1`.
pub const MAX_K_VAR: &str = "SYMPQUOT_MAX_K";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_MEMBER: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "sympquot",
    version,
    about = "Exact local models of the symplectic Quot scheme"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    /// Point of the symplectic Quot scheme over a reduced divisor.
    Reduced,
    /// Point of the symplectic Quot scheme with random multiplicities.
    Member,
    /// Point of the full Quot scheme of torsion quotients.
    Tilde,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide membership of a point file.
    Check {
        #[arg(long)]
        input: PathBuf,
    },
    /// Compute the divisor of a point file.
    Divisor {
        #[arg(long)]
        input: PathBuf,
    },
    /// Tangent space dimensions at a point file.
    Tangent {
        #[arg(long)]
        input: PathBuf,
    },
    /// Build the fiber point attached to support points and Lagrangians.
    Fiber {
        /// JSON list of support points.
        #[arg(long, requires = "lagrangians")]
        points: Option<PathBuf>,
        /// JSON list of 2r x r Lagrangian bases.
        #[arg(long, requires = "points")]
        lagrangians: Option<PathBuf>,
        /// A combined {points, lagrangians} document.
        #[arg(long, conflicts_with_all = ["points", "lagrangians"])]
        input: Option<PathBuf>,
    },
    /// Sample a random point.
    Sample {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Kind::Reduced)]
        kind: Kind,
    },
    /// Tangent dimension report over the grid 1..=r x 1..=d.
    Report {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Search for Lagrangians moved by symplectic matrices.
    Effectiveness {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        /// Number of random non-central matrices to test.
        #[arg(long, default_value_t = 20)]
        samples: usize,
        /// Test this 2r x 2r matrix instead of random ones.
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

/// Provenance embedded in every output document.
#[derive(Debug, Clone, Serialize)]
struct Provenance {
    r: Option<usize>,
    d: Option<usize>,
    #[serde(rename = "K")]
    k: Option<usize>,
    seed: Option<u64>,
    tool_version: &'static str,
}

/// A failure that maps to an exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl ToString) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.to_string(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::usage(e)
    }
}

/// Result of a command: the document and the exit code to report.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub document: Value,
    /// Pre-rendered text, for commands with a dedicated table layout.
    pub text: Option<String>,
}

/// Parses `args`, runs the command and writes its output. Returns the exit
/// code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let max_k = match std::env::var(MAX_K_VAR) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(k) => Some(k),
            Err(_) => {
                eprintln!("error: {MAX_K_VAR} must be a positive integer, got {v:?}");
                return EXIT_USAGE;
            }
        },
        Err(_) => None,
    };
    match execute(&cli, max_k) {
        Ok(outcome) => {
            let body = match cli.format {
                OutputFormat::Json => {
                    let mut s = serde_json::to_string_pretty(&outcome.document)
                        .expect("serializable document");
                    s.push('\n');
                    s
                }
                OutputFormat::Text => outcome
                    .text
                    .clone()
                    .unwrap_or_else(|| render::render_text(&outcome.document)),
            };
            if let Err(e) = emit(cli.output.as_deref(), &body) {
                eprintln!("error: {e}");
                return EXIT_USAGE;
            }
            outcome.code
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

fn emit(path: Option<&Path>, body: &str) -> std::io::Result<()> {
    match path {
        Some(p) => fs::write(p, body),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(body.as_bytes())
        }
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| {
        CliError::usage(format!(
            "{}: line {} column {}: {e}",
            path.display(),
            e.line(),
            e.column()
        ))
    })
}

/// Truncation order for `(r, d)`, honouring the environment override.
fn order_for(r: usize, d: usize, max_k: Option<usize>) -> Result<usize, CliError> {
    let base = default_order(r, d);
    match max_k {
        None => Ok(base),
        Some(k) if k >= base => Ok(k),
        Some(k) => Err(CliError::usage(format!(
            "{MAX_K_VAR}={k} is below the required truncation order {base}"
        ))),
    }
}

fn load_point(path: &Path, max_k: Option<usize>) -> Result<QuotPoint, CliError> {
    let doc: QuotPointDoc = read_json(path)?;
    let q = doc
        .to_point()
        .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    match max_k {
        Some(k) if k > q.order() => Ok(q.with_order(k)?),
        _ => Ok(q),
    }
}

fn divisor_json(div: &DivisorMultiset) -> Value {
    Value::Array(
        div.entries()
            .iter()
            .map(|(p, m)| json!({"point": p.to_string(), "mult": m}))
            .collect(),
    )
}

fn with_provenance(prov: Provenance, body: Value) -> Value {
    let mut doc = serde_json::to_value(prov).expect("provenance");
    if let (Value::Object(dst), Value::Object(src)) = (&mut doc, body) {
        dst.extend(src);
    }
    doc
}

fn point_provenance(q: &QuotPoint, seed: Option<u64>) -> Provenance {
    Provenance {
        r: Some(q.r()),
        d: Some(q.d()),
        k: Some(q.order()),
        seed,
        tool_version: TOOL_VERSION,
    }
}

fn point_document(q: &QuotPoint, seed: Option<u64>) -> Value {
    let mut doc = QuotPointDoc::from_point(q);
    doc.seed = seed;
    doc.tool_version = Some(TOOL_VERSION.to_string());
    serde_json::to_value(&doc).expect("point document")
}

/// Runs a parsed command. `max_k` is the value of the truncation override.
pub fn execute(cli: &Cli, max_k: Option<usize>) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Check { input } => cmd_check(&load_point(input, max_k)?),
        Command::Divisor { input } => cmd_divisor(&load_point(input, max_k)?),
        Command::Tangent { input } => cmd_tangent(&load_point(input, max_k)?),
        Command::Fiber {
            points,
            lagrangians,
            input,
        } => {
            let doc = match (points, lagrangians, input) {
                (_, _, Some(path)) => read_json::<LagrangianTupleDoc>(path)?,
                (Some(p), Some(l), None) => LagrangianTupleDoc {
                    points: read_json::<PointsFile>(p)?.into_inner(),
                    lagrangians: read_json::<LagrangiansFile>(l)?.into_inner(),
                },
                _ => {
                    return Err(CliError::usage(
                        "fiber needs --points and --lagrangians, or --input",
                    ))
                }
            };
            cmd_fiber(&doc, max_k)
        }
        Command::Sample { r, d, seed, kind } => cmd_sample(*r, *d, *seed, *kind, max_k),
        Command::Report {
            r,
            d,
            samples,
            seed,
        } => cmd_report(*r, *d, *samples, *seed, max_k),
        Command::Effectiveness {
            r,
            trials,
            seed,
            samples,
            input,
        } => {
            let explicit = match input {
                Some(path) => Some(read_json::<Vec<Vec<String>>>(path)?),
                None => None,
            };
            cmd_effectiveness(*r, *trials, *seed, *samples, explicit.as_deref())
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PointsFile {
    List(Vec<String>),
    Doc { points: Vec<String> },
}

impl PointsFile {
    fn into_inner(self) -> Vec<String> {
        match self {
            PointsFile::List(v) | PointsFile::Doc { points: v } => v,
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum LagrangiansFile {
    List(Vec<Vec<Vec<String>>>),
    Doc { lagrangians: Vec<Vec<Vec<String>>> },
}

impl LagrangiansFile {
    fn into_inner(self) -> Vec<Vec<Vec<String>>> {
        match self {
            LagrangiansFile::List(v) | LagrangiansFile::Doc { lagrangians: v } => v,
        }
    }
}

pub fn cmd_check(q: &QuotPoint) -> Result<Outcome, CliError> {
    let in_q = q.is_in_q();
    let perfect = if in_q {
        Some(q.perfect_pairing_check()?)
    } else {
        None
    };
    let body = json!({
        "in_tilde_q": q.is_in_tilde_q(),
        "in_q": in_q,
        "total_colength": q.total_colength(),
        "divisor": divisor_json(&q.divisor_map()),
        "perfect_pairing": perfect,
    });
    Ok(Outcome {
        code: if in_q { EXIT_OK } else { EXIT_NOT_MEMBER },
        document: with_provenance(point_provenance(q, None), body),
        text: None,
    })
}

pub fn cmd_divisor(q: &QuotPoint) -> Result<Outcome, CliError> {
    let div = q.divisor_map();
    let body = json!({
        "divisor": divisor_json(&div),
        "degree": div.degree(),
        "reduced": div.is_reduced(),
        "in_q": q.is_in_q(),
    });
    Ok(Outcome {
        code: EXIT_OK,
        document: with_provenance(point_provenance(q, None), body),
        text: None,
    })
}

pub fn cmd_tangent(q: &QuotPoint) -> Result<Outcome, CliError> {
    let (r, d) = (q.r(), q.d());
    let hom = if q.is_in_tilde_q() {
        Some(hom_space_dimension(q)?)
    } else {
        None
    };
    let in_q = q.is_in_q();
    let mut body = json!({
        "in_tilde_q": q.is_in_tilde_q(),
        "in_q": in_q,
        "hom_dim": hom,
        "hom_expected": expected_hom_dimension(r, d),
    });
    let code = if in_q {
        let system = build_tangent_system(q)?;
        let reduced = q.divisor_map().is_reduced();
        let extra = json!({
            "divisor_type": if reduced { "reduced" } else { "non-reduced" },
            "tangent_dim": system.tangent_dimension(),
            "tangent_expected": reduced.then(|| expected_tangent_dimension(r, d)),
            "fiber_dim": system.fiber_tangent_dimension(),
            "constraint_rows": system.raw_matrix.rows(),
            "constraint_rank": system.constraint_matrix.rank(),
        });
        if let (Value::Object(dst), Value::Object(src)) = (&mut body, extra) {
            dst.extend(src);
        }
        EXIT_OK
    } else {
        EXIT_NOT_MEMBER
    };
    Ok(Outcome {
        code,
        document: with_provenance(point_provenance(q, None), body),
        text: None,
    })
}

pub fn cmd_fiber(doc: &LagrangianTupleDoc, max_k: Option<usize>) -> Result<Outcome, CliError> {
    let (space, points, subspaces) = doc.to_tuple()?;
    let order = order_for(space.r(), points.len(), max_k)?;
    let q = QuotPoint::from_lagrangians_with_order(&space, &points, &subspaces, order)?;
    Ok(Outcome {
        code: EXIT_OK,
        document: point_document(&q, None),
        text: None,
    })
}

pub fn cmd_sample(
    r: usize,
    d: usize,
    seed: u64,
    kind: Kind,
    max_k: Option<usize>,
) -> Result<Outcome, CliError> {
    let space = SymplecticSpace::standard(r)?;
    if d == 0 {
        return Err(CliError::usage("d must be at least 1"));
    }
    let order = order_for(r, d, max_k)?;
    let kind = match kind {
        Kind::Reduced => SampleKind::Reduced,
        Kind::Member => SampleKind::Member,
        Kind::Tilde => SampleKind::Tilde,
    };
    let q = kind.sample(&mut seeded(seed), &space, d, Some(order))?;
    Ok(Outcome {
        code: EXIT_OK,
        document: point_document(&q, Some(seed)),
        text: None,
    })
}

pub fn cmd_report(
    r_max: usize,
    d_max: usize,
    samples: usize,
    seed: u64,
    max_k: Option<usize>,
) -> Result<Outcome, CliError> {
    if r_max == 0 || d_max == 0 || samples == 0 {
        return Err(CliError::usage("--r, --d and --samples must be at least 1"));
    }
    let top = order_for(r_max, d_max, max_k)?;
    let report = dimension_report_with_order(r_max, d_max, samples, seed, |r, d| {
        max_k.unwrap_or_else(|| default_order(r, d))
    })?;
    let code = if report.all_reduced_match() {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    };
    let prov = Provenance {
        r: Some(r_max),
        d: Some(d_max),
        k: Some(top),
        seed: Some(seed),
        tool_version: TOOL_VERSION,
    };
    let body = json!({
        "samples": samples,
        "all_match": report.all_reduced_match(),
        "grid": serde_json::to_value(&report.grid).expect("rows"),
    });
    Ok(Outcome {
        code,
        document: with_provenance(prov, body),
        text: Some(report.to_text()),
    })
}

pub fn cmd_effectiveness(
    r: usize,
    trials: usize,
    seed: u64,
    samples: usize,
    explicit: Option<&[Vec<String>]>,
) -> Result<Outcome, CliError> {
    if trials == 0 {
        return Err(CliError::usage("--trials must be at least 1"));
    }
    let space = SymplecticSpace::standard(r)?;
    let mut rng = seeded(seed);
    let matrices: Vec<SymplecticMatrix> = match explicit {
        Some(rows) => {
            let m = scalar_matrix_from_doc("matrix", rows)?;
            vec![SymplecticMatrix::new(&space, m)?]
        }
        None => (0..samples)
            .map(|_| space.sample_noncentral(&mut rng))
            .collect(),
    };
    let mut entries = Vec::new();
    let mut all_witnessed = true;
    for (index, m) in matrices.iter().enumerate() {
        let witness =
            space.effectiveness_witness(m, trials, seed.wrapping_add(index as u64 + 1))?;
        if !m.is_central() {
            all_witnessed &= witness.is_some();
        }
        entries.push(json!({
            "index": index,
            "matrix": scalar_matrix_to_doc(m.matrix()),
            "central": m.is_central(),
            "witness": witness.map(|v| scalar_matrix_to_doc(v.basis())),
        }));
    }
    let mut central = Vec::new();
    let mut false_witnesses = 0;
    for (name, m) in [
        ("identity", ScalarMatrix::identity(space.dim())),
        ("minus_identity", ScalarMatrix::identity(space.dim()).neg()),
    ] {
        let g = SymplecticMatrix::new(&space, m)?;
        let moved = space.moved_count(&g, trials, seed)?;
        let witness = space.effectiveness_witness(&g, trials, seed)?;
        false_witnesses += moved + usize::from(witness.is_some());
        central.push(json!({"element": name, "moved": moved, "witness_found": witness.is_some()}));
    }
    let ok = all_witnessed && false_witnesses == 0;
    let prov = Provenance {
        r: Some(r),
        d: None,
        k: None,
        seed: Some(seed),
        tool_version: TOOL_VERSION,
    };
    let body = json!({
        "trials": trials,
        "matrices": entries,
        "central": central,
        "all_witnessed": all_witnessed,
        "false_witnesses": false_witnesses,
    });
    Ok(Outcome {
        code: if ok { EXIT_OK } else { EXIT_MISMATCH },
        document: with_provenance(prov, body),
        text: None,
    })
}
