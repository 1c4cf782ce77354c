//! Command-line front end: CSV ingestion, classification reports, route
//! cross-checks and a randomized benchmark.

mod bench;
mod io;
mod random;
mod report;

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::classify::{classify_all_rdse_pareto, classify_all_unified, classify_three_pass, compare_routes};
use crate::config::ToleranceConfig;
use crate::dataset::Dataset;
use crate::error::{DeaError, Result};

pub use bench::{run_bench, BenchSummary};
pub use io::{bundled_example, load_csv, parse_csv, write_csv, EXAMPLE_NEGATIVE, EXAMPLE_NONNEGATIVE};
pub use random::random_dataset;
pub use report::{
    fmt_num, render_csv, render_json, render_markdown, Agreement, ClassificationReport, Columns,
    SolveSummary, UnitRecord,
};

/// Exit status for a run that completed but whose routes disagreed.
pub const EXIT_DISAGREEMENT: i32 = 1;
/// Exit status for invalid input or a solver failure.
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "dea", version, about = "Classify decision-making units by efficiency")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify every unit of a dataset
    Classify(ClassifyArgs),
    /// Compare both routes on random datasets
    Bench(BenchArgs),
    /// Write a random dataset as CSV
    Gen(GenArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Markdown,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// One dominance program per unit
    Unified,
    /// Radial and Pareto super-efficiency passes
    Rdse,
    /// Both routes, compared unit by unit
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrientationFilter {
    Input,
    Output,
    Both,
}

#[derive(Debug, Clone, Args)]
pub struct ToleranceArgs {
    /// Feasibility tolerance
    #[arg(long = "tol", env = "DEA_TOL")]
    pub feas_tol: Option<f64>,
    /// Threshold below which a value counts as zero
    #[arg(long)]
    pub pos_tol: Option<f64>,
    /// Simplex iteration cap per LP
    #[arg(long)]
    pub max_iterations: Option<usize>,
}

impl ToleranceArgs {
    pub fn resolve(&self) -> Result<ToleranceConfig> {
        let mut cfg = ToleranceConfig::default();
        if let Some(t) = self.feas_tol {
            cfg.feas_tol = t;
        }
        if let Some(t) = self.pos_tol {
            cfg.pos_tol = t;
        }
        if let Some(k) = self.max_iterations {
            cfg.max_iterations = k;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, Args)]
pub struct ClassifyArgs {
    /// CSV file with header `dmu,x1..xm,y1..ys`
    #[arg(required_unless_present = "example", conflicts_with = "example")]
    pub file: Option<PathBuf>,
    /// Use a bundled dataset instead of a file
    #[arg(long, value_parser = ["4.1", "4.2"])]
    pub example: Option<String>,
    #[arg(long, value_enum, default_value = "markdown")]
    pub format: Format,
    #[arg(long, value_enum, default_value = "unified")]
    pub method: Method,
    /// Oriented label groups shown in markdown and CSV tables
    #[arg(long, value_enum, default_value = "both")]
    pub orientation: OrientationFilter,
    #[command(flatten)]
    pub tolerance: ToleranceArgs,
}

/// Inclusive size range, written `k` or `lo..hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeRange {
    pub lo: usize,
    pub hi: usize,
}

impl SizeRange {
    pub const fn exactly(k: usize) -> Self {
        Self { lo: k, hi: k }
    }
}

impl FromStr for SizeRange {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
            None => {
                let k = parse(s)?;
                (k, k)
            }
        };
        if lo == 0 || lo > hi {
            return Err(format!("`{s}` is not a nonempty range of positive sizes"));
        }
        Ok(Self { lo, hi })
    }
}

fn density(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(format!("{v} is outside [0, 1]"))
    }
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub instances: usize,
    /// Units per dataset, `k` or `lo..hi`
    #[arg(long, default_value = "10")]
    pub n: SizeRange,
    #[arg(long, default_value = "2")]
    pub m: SizeRange,
    #[arg(long, default_value = "2")]
    pub s: SizeRange,
    /// Probability that an entry is zero
    #[arg(long, default_value_t = 0.2, value_parser = density)]
    pub zeros: f64,
    /// Constant subtracted from every entry
    #[arg(long, default_value_t = 0.0)]
    pub shift: f64,
    #[arg(long, value_enum, default_value = "markdown")]
    pub format: Format,
    #[command(flatten)]
    pub tolerance: ToleranceArgs,
}

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    #[arg(long, default_value_t = 2)]
    pub s: usize,
    #[arg(long, default_value_t = 0.2, value_parser = density)]
    pub zeros: f64,
    #[arg(long, default_value_t = 0.0)]
    pub shift: f64,
    /// Output file; standard output if omitted
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

/// Text for standard output and the process exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub stdout: String,
    pub status: i32,
}

pub fn run(cli: &Cli) -> Result<RunOutput> {
    match &cli.command {
        Command::Classify(args) => run_classify(args),
        Command::Bench(args) => run_bench(args),
        Command::Gen(args) => run_gen(args),
    }
}

fn load_input(args: &ClassifyArgs) -> Result<Dataset> {
    match (&args.example, &args.file) {
        (Some(id), _) => bundled_example(id),
        (None, Some(path)) => load_csv(path),
        (None, None) => Err(DeaError::InvalidDataset("no input file given".into())),
    }
}

pub fn run_classify(args: &ClassifyArgs) -> Result<RunOutput> {
    let config = args.tolerance.resolve()?;
    let ds = load_input(args)?;
    let rdse_route = |ds: &Dataset| {
        if ds.is_nonnegative() {
            classify_three_pass(ds, &config)
        } else {
            classify_all_rdse_pareto(ds, &config)
        }
    };
    let (unified, rdse) = match args.method {
        Method::Unified => (Some(classify_all_unified(&ds, &config)?), None),
        Method::Rdse => (None, Some(rdse_route(&ds)?)),
        Method::Both => (Some(classify_all_unified(&ds, &config)?), Some(rdse_route(&ds)?)),
    };
    let comparison = match (&unified, &rdse) {
        (Some(u), Some(r)) => Some(compare_routes(u.clone(), r.clone())?),
        _ => None,
    };
    let report = ClassificationReport::assemble(&ds, unified.as_ref(), rdse.as_ref(), comparison.as_ref())?;
    let columns = Columns {
        input: args.orientation != OrientationFilter::Output,
        output: args.orientation != OrientationFilter::Input,
    };
    let stdout = match args.format {
        Format::Markdown => render_markdown(&report, columns),
        Format::Json => render_json(&report)?,
        Format::Csv => render_csv(&report, columns)?,
    };
    let status = if report.fully_agrees() {
        0
    } else {
        EXIT_DISAGREEMENT
    };
    Ok(RunOutput { stdout, status })
}

pub fn run_gen(args: &GenArgs) -> Result<RunOutput> {
    let ds = random_dataset(args.seed, args.n, args.m, args.s, args.zeros, args.shift)?;
    let mut buf = Vec::new();
    write_csv(&ds, &mut buf)?;
    let text = String::from_utf8(buf).map_err(|e| DeaError::Internal(e.to_string()))?;
    match &args.output {
        Some(path) => {
            std::fs::write(path, &text)?;
            Ok(RunOutput {
                stdout: String::new(),
                status: 0,
            })
        }
        None => Ok(RunOutput {
            stdout: text,
            status: 0,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_ranges() {
        assert_eq!("3".parse::<SizeRange>().unwrap(), SizeRange::exactly(3));
        assert_eq!("2..10".parse::<SizeRange>().unwrap(), SizeRange { lo: 2, hi: 10 });
        assert_eq!("2..=4".parse::<SizeRange>().unwrap(), SizeRange { lo: 2, hi: 4 });
        assert!("0".parse::<SizeRange>().is_err());
        assert!("5..2".parse::<SizeRange>().is_err());
        assert!("a".parse::<SizeRange>().is_err());
    }

    #[test]
    fn densities_are_bounded() {
        assert!(density("0.2").is_ok());
        assert!(density("1.2").is_err());
    }

    #[test]
    fn parses_classify_command() {
        let cli = Cli::try_parse_from(["dea", "classify", "--example", "4.1", "--method", "both"]).unwrap();
        match cli.command {
            Command::Classify(a) => {
                assert_eq!(a.method, Method::Both);
                assert_eq!(a.example.as_deref(), Some("4.1"));
            }
            other => panic!("{other:?}"),
        }
        assert!(Cli::try_parse_from(["dea", "classify"]).is_err());
        assert!(Cli::try_parse_from(["dea", "classify", "--example", "9"]).is_err());
    }

    #[test]
    fn tolerance_flag_overrides_default() {
        let t = ToleranceArgs {
            feas_tol: Some(1e-8),
            pos_tol: None,
            max_iterations: None,
        };
        assert_eq!(t.resolve().unwrap().feas_tol, 1e-8);
        let bad = ToleranceArgs {
            feas_tol: Some(-1.0),
            ..t
        };
        assert!(bad.resolve().is_err());
    }
}
