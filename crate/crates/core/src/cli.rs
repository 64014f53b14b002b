//! Command-line front end. Every subcommand writes one JSON document (or its
//! text rendering) to `--output` or stdout and maps library errors to exit
//! codes.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{parse_rational, MatQ, Rational};
use crate::curves::{
    epsilon_threshold, lemma_sample, scaling_check, CurveSpec, SampleReport, ScalingReport,
};
use crate::error::{Error, Result};
use crate::identity::{verify_identity, IdentityCertificate};
use crate::totalpos::{
    check_tp_config, lw_factor_with, random_tp_instance, ConfigBlocks, LowerChart, LwParams,
    TpReport,
};
use crate::transversal::{solve_transversals, TransversalSolution};

pub const EXIT_OK: i32 = 0;
pub const EXIT_OTHER: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_HYPOTHESIS: i32 = 3;
pub const EXIT_DEGENERATE: i32 = 4;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum ChartArg {
    #[default]
    Standard,
    AsPrinted,
}

impl From<ChartArg> for LowerChart {
    fn from(c: ChartArg) -> Self {
        match c {
            ChartArg::Standard => LowerChart::Standard,
            ChartArg::AsPrinted => LowerChart::AsPrinted,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "tplines",
    version,
    about = "Exact transversals to four lines in RP^3"
)]
pub struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that all 70 maximal minors of [W1 W2 W3 W4] are positive.
    CheckTp {
        #[arg(long)]
        input: PathBuf,
    },
    /// Factor a 4x4 totally positive matrix into chart parameters a..p.
    Factor {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = ChartArg::Standard)]
        chart: ChartArg,
    },
    /// Compute both transversal lines of an instance, or of every
    /// `*.json` file in a directory.
    Solve {
        #[arg(long, required_unless_present = "batch", conflicts_with = "batch")]
        input: Option<PathBuf>,
        #[arg(long)]
        batch: Option<PathBuf>,
    },
    /// Expand both sides of the discriminant factorization and compare.
    VerifyIdentity {
        #[arg(long, default_value_t = 10)]
        spots: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = ChartArg::Standard)]
        chart: ChartArg,
    },
    /// Sample four tangent lines of a curve and check the 70 minors.
    CurveSample {
        /// Four comma-separated rationals, e.g. 1/10,3/10,5/10,7/10.
        #[arg(long)]
        ts: String,
        /// `auto` or a positive rational.
        #[arg(long, default_value = "auto")]
        epsilon: String,
        /// CurveSpec JSON file; defaults to the moment curve.
        #[arg(long)]
        curve: Option<PathBuf>,
    },
    /// Degree of the Grassmannian of projective k-planes in P^n.
    SchubertCount {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        n: u64,
    },
    /// Generate a random totally positive instance.
    RandomInstance {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        bound: u32,
    },
}

/// Instance file: the four blocks, plus provenance when generated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<LwParams>,
    pub blocks: Vec<MatQ>,
}

impl InstanceFile {
    pub fn config(&self) -> Result<ConfigBlocks> {
        let arr: [MatQ; 4] =
            self.blocks.clone().try_into().map_err(|v: Vec<MatQ>| {
                Error::Input(format!("expected 4 blocks, got {}", v.len()))
            })?;
        ConfigBlocks::new(arr)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixFile {
    #[serde(rename = "X")]
    pub x: MatQ,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorReport {
    pub chart: LowerChart,
    pub params: LwParams,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSampleReport {
    pub epsilon_source: String,
    pub sample: SampleReport,
    pub scaling: ScalingReport,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BatchEntry {
    pub file: String,
    pub exit_code: i32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solution: Option<TransversalSolution>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BatchReport {
    pub entries: Vec<BatchEntry>,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Input(_)
        | Error::Parse(_)
        | Error::Dimension(_)
        | Error::Domain(_)
        | Error::Io(_) => EXIT_INPUT,
        Error::HypothesisViolation { .. }
        | Error::NotTotallyPositive { .. }
        | Error::NoRealSolution(_) => EXIT_HYPOTHESIS,
        Error::DegenerateConfiguration(_)
        | Error::DegeneratePencil
        | Error::DoubleRoot
        | Error::DegenerateLine
        | Error::NonGeneric(_)
        | Error::Singular { .. } => EXIT_DEGENERATE,
        _ => EXIT_OTHER,
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

fn parse_ts(s: &str) -> Result<[Rational; 4]> {
    let v: Vec<Rational> = s
        .split(',')
        .map(|p| parse_rational(p.trim()))
        .collect::<Result<_>>()?;
    v.try_into()
        .map_err(|v: Vec<Rational>| Error::Input(format!("--ts needs 4 values, got {}", v.len())))
}

fn matrix_text(m: &MatQ) -> String {
    m.to_rows()
        .iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(ToString::to_string).collect();
            format!("  [{}]", cells.join(", "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn tp_text(r: &TpReport) -> String {
    match &r.witness {
        None => "totally positive: yes\n".into(),
        Some(w) => format!("totally positive: no\nwitness: {w}\nminor: {}\n", w.minor),
    }
}

fn solution_text(s: &TransversalSolution) -> String {
    let mut out = String::new();
    let qd = &s.quadratic;
    let _ = writeln!(
        out,
        "A = {}, B = {}, C = {}, D = {}",
        qd.a, qd.b, qd.c, qd.d
    );
    for (k, (root, line)) in s.roots.iter().zip(&s.lines).enumerate() {
        let x = root
            .x
            .as_ref()
            .map_or("inf".to_string(), ToString::to_string);
        let _ = writeln!(out, "line {}: x = {x}, y = {}", k + 1, root.y);
        let p: Vec<String> = line.plucker().iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "  plucker: [{}]", p.join(", "));
    }
    let _ = writeln!(out, "incidence determinants: all zero");
    for w in &s.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    out
}

fn identity_text(c: &IdentityCertificate) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "chart: {:?}", c.chart);
    let _ = writeln!(out, "equal: {}", c.equal);
    let _ = writeln!(
        out,
        "lhs: {} terms, sha256 {}",
        c.lhs_summary.terms, c.lhs_summary.sha256
    );
    let _ = writeln!(
        out,
        "rhs: {} terms, sha256 {}",
        c.rhs_summary.terms, c.rhs_summary.sha256
    );
    let _ = writeln!(out, "difference: {} terms", c.difference_summary.terms);
    for s in &c.spot_evaluations {
        let _ = writeln!(out, "spot: lhs {} rhs {}", s.lhs, s.rhs);
    }
    out
}

fn sample_text(r: &CurveSampleReport) -> String {
    let mut out = String::new();
    let ts: Vec<String> = r.sample.ts.iter().map(ToString::to_string).collect();
    let _ = writeln!(out, "ts: {}", ts.join(", "));
    let _ = writeln!(out, "epsilon: {} ({})", r.sample.epsilon, r.epsilon_source);
    let _ = writeln!(out, "W:\n{}", matrix_text(&r.sample.w));
    let positive = r
        .sample
        .minors
        .iter()
        .filter(|m| m.value > Rational::from_integer(0.into()));
    let _ = writeln!(
        out,
        "positive minors: {}/{}",
        positive.count(),
        r.sample.minors.len()
    );
    let _ = writeln!(
        out,
        "scaling check: {}",
        if r.scaling.ok { "pass" } else { "fail" }
    );
    out
}

struct Outcome {
    json: String,
    text: String,
    code: i32,
    message: Option<String>,
}

impl Outcome {
    fn ok<T: Serialize>(value: &T, text: String) -> Self {
        Outcome {
            json: to_json(value),
            text,
            code: EXIT_OK,
            message: None,
        }
    }
}

fn solve_file(path: &Path) -> Result<TransversalSolution> {
    let inst: InstanceFile = read_json(path)?;
    solve_transversals(&inst.config()?)
}

fn batch(dir: &Path) -> Result<Outcome> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let entries: Vec<BatchEntry> = files
        .par_iter()
        .map(|p| {
            let file = p
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default();
            match solve_file(p) {
                Ok(s) => BatchEntry {
                    file,
                    exit_code: EXIT_OK,
                    error: None,
                    solution: Some(s),
                },
                Err(e) => BatchEntry {
                    file,
                    exit_code: exit_code(&e),
                    error: Some(e.to_string()),
                    solution: None,
                },
            }
        })
        .collect();
    let mut text = String::new();
    for e in &entries {
        let status = e.error.as_deref().unwrap_or("ok");
        let _ = writeln!(text, "{}: {status}", e.file);
    }
    let first_bad = entries.iter().find(|e| e.exit_code != EXIT_OK);
    let code = first_bad.map_or(EXIT_OK, |e| e.exit_code);
    let message = first_bad.map(|e| format!("{}: {}", e.file, e.error.clone().unwrap_or_default()));
    let report = BatchReport { entries };
    Ok(Outcome {
        json: to_json(&report),
        text,
        code,
        message,
    })
}

fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::CheckTp { input } => {
            let inst: InstanceFile = read_json(input)?;
            let report = check_tp_config(&inst.config()?)?;
            let mut out = Outcome::ok(&report, tp_text(&report));
            if let Some(w) = &report.witness {
                out.code = EXIT_HYPOTHESIS;
                out.message = Some(format!("minor {w} is {}", w.minor));
            }
            Ok(out)
        }
        Command::Factor { input, chart } => {
            let m: MatrixFile = read_json(input)?;
            let chart = LowerChart::from(*chart);
            let params = lw_factor_with(&m.x, chart)?;
            let report = FactorReport { chart, params };
            let text = crate::poly::VAR_NAMES
                .iter()
                .map(|&c| format!("{c} = {}\n", report.params.get(c)))
                .collect();
            Ok(Outcome::ok(&report, text))
        }
        Command::Solve { input, batch: dir } => match (input, dir) {
            (_, Some(dir)) => batch(dir),
            (Some(input), None) => {
                let s = solve_file(input)?;
                Ok(Outcome::ok(&s, solution_text(&s)))
            }
            (None, None) => Err(Error::Input("solve needs --input or --batch".into())),
        },
        Command::VerifyIdentity { spots, seed, chart } => {
            let cert = verify_identity(*spots, *seed, (*chart).into());
            Ok(Outcome::ok(&cert, identity_text(&cert)))
        }
        Command::CurveSample { ts, epsilon, curve } => {
            let ts = parse_ts(ts)?;
            let c = match curve {
                Some(p) => read_json(p)?,
                None => CurveSpec::moment(),
            };
            let (eps, source) = if epsilon == "auto" {
                (epsilon_threshold(&c, &ts)?, "auto")
            } else {
                (parse_rational(epsilon)?, "given")
            };
            let report = CurveSampleReport {
                epsilon_source: source.into(),
                sample: lemma_sample(&c, &ts, &eps)?,
                scaling: scaling_check(&c, &ts, &eps)?,
            };
            let mut out = Outcome::ok(&report, sample_text(&report));
            if !report.sample.ok {
                out.code = EXIT_HYPOTHESIS;
                out.message = Some(format!(
                    "not all sampled minors are positive at epsilon = {eps}"
                ));
            }
            Ok(out)
        }
        Command::SchubertCount { k, n } => {
            let count = crate::curves::schubert_count(*k, *n)?;
            // a bare integer is valid JSON
            Ok(Outcome {
                json: format!("{count}\n"),
                text: format!("{count}\n"),
                code: EXIT_OK,
                message: None,
            })
        }
        Command::RandomInstance { seed, bound } => {
            let (params, blocks) = random_tp_instance(*seed, *bound)?;
            let inst = InstanceFile {
                seed: Some(*seed),
                bound: Some(*bound),
                params: Some(params),
                blocks: blocks.blocks().to_vec(),
            };
            let text = blocks
                .blocks()
                .iter()
                .enumerate()
                .map(|(k, b)| format!("W{}:\n{}\n", k + 1, matrix_text(b)))
                .collect();
            Ok(Outcome::ok(&inst, text))
        }
    }
}

/// Parses `args` (including the program name) and runs; returns the exit
/// code. Diagnostics go to stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let body = match cli.format {
        Format::Json => &outcome.json,
        Format::Text => &outcome.text,
    };
    match &cli.output {
        Some(path) => {
            if let Err(e) = fs::write(path, body) {
                eprintln!("error: {}: {e}", path.display());
                return EXIT_INPUT;
            }
        }
        None => print!("{body}"),
    }
    if let Some(m) = &outcome.message {
        eprintln!("error: {m}");
    }
    outcome.code
}
