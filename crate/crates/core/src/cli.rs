//! Command-line front end. Every subcommand emits one newline-terminated
//! JSON object whose last field records the run configuration.

use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bounds::{certify_hypersurface, CertificateReport, CertifyOptions};
use crate::corpus::{run_cycle_corpus, run_hypersurface_corpus, HypersurfaceSpec};
use crate::cycles::{analyze_cycle, cayley_form, parse_cycle};
use crate::error::Error;
use crate::heights::{height_report, MahlerOptions, ZeroNormOptions};
use crate::modp::oracle_bad_primes;
use crate::poly::parse::infer_nvars;
use crate::poly::{format_poly, parse_poly, HomPoly};
use crate::primes::factor;
use crate::resultant::{derivation_resultants, sylvester_resultant, ResultantValue};

#[derive(Debug, Parser)]
#[command(name = "badprimes", version, about = "Certify and bound the primes of bad reduction of hypersurfaces and point cycles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Common {
    /// Largest prime scanned by the oracle.
    #[arg(long, global = true)]
    pub pmax: Option<u64>,
    /// Monte Carlo samples for the 0-norm.
    #[arg(long, global = true, default_value_t = 20_000)]
    pub samples: usize,
    /// Cap on the quadrature grid side per variable.
    #[arg(long, global = true)]
    pub grid: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Target accuracy of the Mahler quadrature, in bits.
    #[arg(long, global = true, default_value_t = 20)]
    pub precision: u32,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    /// Worker threads; defaults to the number of logical cores.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certify the bad primes of a hypersurface and check the bounds.
    Analyze { input: PathBuf },
    /// Heights of a homogeneous polynomial and their inequalities.
    Heights { input: PathBuf },
    /// Cayley form, bad primes, height and bound of a point cycle.
    Cycle { input: PathBuf },
    /// Resultant of two polynomials, or of one with its derivative.
    Resultant {
        input: PathBuf,
        /// Eliminated variable index; defaults to the one of highest degree.
        #[arg(long)]
        var: Option<usize>,
        /// Declared degrees `m n` (two-polynomial input only).
        #[arg(long, num_args = 2, value_names = ["M", "N"])]
        degrees: Option<Vec<u32>>,
    },
    /// Brute-force bad primes of a hypersurface up to --pmax.
    Oracle { input: PathBuf },
    /// Run a seeded random corpus.
    Corpus {
        #[arg(long, value_enum, default_value_t = CorpusKind::Hypersurface)]
        kind: CorpusKind,
        #[arg(long)]
        count: Option<usize>,
        #[arg(long, default_value_t = 2)]
        min_degree: u32,
        #[arg(long)]
        max_degree: Option<u32>,
        /// Largest projective dimension n.
        #[arg(long, default_value_t = 3)]
        max_n: usize,
        /// Largest absolute coefficient or coordinate.
        #[arg(long)]
        coeff: Option<i64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CorpusKind {
    Hypersurface,
    Cycle,
}

/// A finished run: the JSON text and the process exit code.
#[derive(Debug)]
pub struct Outcome {
    pub json: String,
    pub code: i32,
}

#[derive(Serialize)]
struct Config<'a> {
    subcommand: &'static str,
    #[serde(flatten)]
    common: &'a Common,
}

#[derive(Serialize)]
struct Output<'a, T: Serialize> {
    #[serde(flatten)]
    report: T,
    config: Config<'a>,
}

fn render<T: Serialize>(report: T, subcommand: &'static str, common: &Common, ok: bool) -> Outcome {
    let out = Output { report, config: Config { subcommand, common } };
    let mut json = serde_json::to_string_pretty(&out).expect("serializable");
    json.push('\n');
    Outcome { json, code: if ok { 0 } else { 1 } }
}

/// Exit codes: 2 for unreadable or malformed input, 3 when the input
/// violates a hypothesis (square factor, non-reduced cycle), 4 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::PointSyntax { .. } => 2,
        Error::SquareFactor | Error::NonReducedCycle | Error::NotHomogeneous => 3,
        _ => 4,
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 2,
            CliError::Core(e) => exit_code(e),
        }
    }
}

fn read_input(path: &PathBuf) -> Result<String, CliError> {
    let io = |source| CliError::Io { path: path.display().to_string(), source };
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

/// Non-empty, non-comment lines.
fn poly_lines(text: &str) -> Vec<&str> {
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect()
}

fn read_polys(path: &PathBuf) -> Result<Vec<HomPoly>, CliError> {
    let text = read_input(path)?;
    let lines = poly_lines(&text);
    if lines.is_empty() {
        return Err(Error::Parse { pos: 0, msg: "no polynomial in input".into() }.into());
    }
    let nvars = lines.iter().map(|l| infer_nvars(l)).max().unwrap_or(1).max(2);
    Ok(lines.iter().map(|l| parse_poly(l, nvars)).collect::<Result<Vec<_>, _>>()?)
}

fn read_poly(path: &PathBuf) -> Result<HomPoly, CliError> {
    let mut ps = read_polys(path)?;
    if ps.len() != 1 {
        return Err(Error::Parse { pos: 0, msg: "expected exactly one polynomial".into() }.into());
    }
    Ok(ps.remove(0))
}

#[derive(Serialize)]
struct ResultantReport {
    f: String,
    g: String,
    var: usize,
    m: u32,
    n: u32,
    det: String,
    content: String,
    content_factorization: crate::primes::Factorization,
    is_zero_ideal: bool,
}

#[derive(Serialize)]
struct OracleReport {
    input: String,
    pmax: u64,
    bad_primes: Vec<u64>,
}

fn max_degree_var(f: &HomPoly) -> usize {
    let degs = f.degrees();
    let best = degs.iter().copied().max().unwrap_or(0);
    (0..degs.len()).rev().find(|&v| degs[v] == best).unwrap_or(0)
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let common = &cli.common;
    let mahler = MahlerOptions { max_side: common.grid, ..MahlerOptions::with_precision_bits(common.precision) };
    let zero = ZeroNormOptions { samples: common.samples, seed: common.seed };
    Ok(match &cli.command {
        Command::Analyze { input } => {
            let f = read_poly(input)?;
            let opts = CertifyOptions { pmax: common.pmax.unwrap_or(CertifyOptions::default().pmax) };
            let (certificate, verdict) = certify_hypersurface(&f, &opts)?;
            let ok = verdict.pass.all();
            render(CertificateReport { certificate: &certificate, verdict: &verdict }, "analyze", common, ok)
        }
        Command::Heights { input } => {
            let report = height_report(&read_poly(input)?, &mahler, &zero)?;
            let ok = report.all_pass();
            render(report, "heights", common, ok)
        }
        Command::Cycle { input } => {
            let text = read_input(input)?;
            let c = parse_cycle(&text)?;
            if !c.is_reduced() {
                eprintln!("Cayley form: {}", format_poly(&cayley_form(&c), "u"));
                return Err(Error::NonReducedCycle.into());
            }
            let report = analyze_cycle(&c, common.pmax)?;
            let ok = report.pass.oracle_agrees && report.pass.product;
            render(report, "cycle", common, ok)
        }
        Command::Resultant { input, var, degrees } => {
            let ps = read_polys(input)?;
            let (value, f, g, v, m, n): (ResultantValue, _, _, usize, u32, u32) = match ps.as_slice() {
                [f] => {
                    let v = var.unwrap_or_else(|| max_degree_var(f));
                    let d = f.degree_in(v);
                    let g = f.derivative(v);
                    (derivation_resultants(f, v)?, f.clone(), g, v, d, d.saturating_sub(1))
                }
                [f, g] => {
                    let v = var.unwrap_or_else(|| max_degree_var(&f.add(g)));
                    let (m, n) = match degrees.as_deref() {
                        Some([m, n]) => (*m, *n),
                        _ => (f.degree_in(v), g.degree_in(v)),
                    };
                    (sylvester_resultant(f, g, v, m, n)?, f.clone(), g.clone(), v, m, n)
                }
                _ => return Err(Error::Parse { pos: 0, msg: "expected one or two polynomials".into() }.into()),
            };
            let report = ResultantReport {
                f: format_poly(&f, "T"),
                g: format_poly(&g, "T"),
                var: v,
                m,
                n,
                det: format_poly(&value.det, "T"),
                content: value.content.to_string(),
                content_factorization: factor(&value.content),
                is_zero_ideal: value.is_zero_ideal,
            };
            render(report, "resultant", common, true)
        }
        Command::Oracle { input } => {
            let f = read_poly(input)?;
            let pmax = common.pmax.unwrap_or(CertifyOptions::default().pmax);
            let bad_primes = oracle_bad_primes(&f, pmax)?;
            render(OracleReport { input: format_poly(&f, "T"), pmax, bad_primes }, "oracle", common, true)
        }
        Command::Corpus { kind, count, min_degree, max_degree, max_n, coeff } => {
            let summary = match kind {
                CorpusKind::Hypersurface => {
                    let spec = HypersurfaceSpec {
                        min_vars: 2,
                        max_vars: max_n + 1,
                        min_degree: *min_degree,
                        max_degree: max_degree.unwrap_or(5).max(*min_degree),
                        coeff: coeff.unwrap_or(99),
                        ..Default::default()
                    };
                    let opts = CertifyOptions { pmax: common.pmax.unwrap_or(CertifyOptions::default().pmax) };
                    run_hypersurface_corpus(count.unwrap_or(200), common.seed, &spec, &opts)
                }
                CorpusKind::Cycle => run_cycle_corpus(
                    count.unwrap_or(500),
                    common.seed,
                    *max_n,
                    max_degree.unwrap_or(6),
                    coeff.unwrap_or(50),
                ),
            };
            let ok = summary.all_passed();
            render(summary, "corpus", common, ok)
        }
    })
}
