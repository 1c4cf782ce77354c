use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{random_dataset, BenchArgs, Format, RunOutput, SizeRange, EXIT_DISAGREEMENT};
use crate::classify::{classify_all_rdse_pareto, classify_all_unified, classify_three_pass, compare_routes};
use crate::error::{DeaError, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchSummary {
    pub instances: usize,
    pub units: usize,
    pub agreeing_instances: usize,
    pub agreeing_units: usize,
    pub mean_unified_solves: f64,
    pub mean_three_pass_stage_one: f64,
    pub mean_three_pass_stage_two: f64,
    pub unified_seconds: f64,
    pub rdse_seconds: f64,
    /// Instances whose unified solve count differed from `n`.
    pub unified_count_violations: usize,
}

impl BenchSummary {
    pub fn agreement_rate(&self) -> f64 {
        if self.instances == 0 {
            1.0
        } else {
            self.agreeing_instances as f64 / self.instances as f64
        }
    }

    pub fn passed(&self) -> bool {
        self.agreeing_instances == self.instances && self.unified_count_violations == 0
    }
}

fn pick(rng: &mut ChaCha8Rng, r: SizeRange) -> usize {
    rng.random_range(r.lo..=r.hi)
}

pub fn run_bench(args: &BenchArgs) -> Result<RunOutput> {
    let summary = bench(args)?;
    let stdout = match args.format {
        Format::Json => {
            let mut s =
                serde_json::to_string_pretty(&summary).map_err(|e| DeaError::Internal(e.to_string()))?;
            s.push('\n');
            s
        }
        Format::Markdown | Format::Csv => render(&summary, args),
    };
    let status = if summary.passed() { 0 } else { EXIT_DISAGREEMENT };
    Ok(RunOutput { stdout, status })
}

fn bench(args: &BenchArgs) -> Result<BenchSummary> {
    let config = args.tolerance.resolve()?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut unified_time = Duration::ZERO;
    let mut rdse_time = Duration::ZERO;
    let mut s = BenchSummary {
        instances: args.instances,
        units: 0,
        agreeing_instances: 0,
        agreeing_units: 0,
        mean_unified_solves: 0.0,
        mean_three_pass_stage_one: 0.0,
        mean_three_pass_stage_two: 0.0,
        unified_seconds: 0.0,
        rdse_seconds: 0.0,
        unified_count_violations: 0,
    };
    for _ in 0..args.instances {
        let (n, m, k) = (
            pick(&mut rng, args.n),
            pick(&mut rng, args.m),
            pick(&mut rng, args.s),
        );
        let ds = random_dataset(rng.random(), n, m, k, args.zeros, args.shift)?;

        let start = Instant::now();
        let unified = classify_all_unified(&ds, &config)?;
        unified_time += start.elapsed();

        let start = Instant::now();
        let rdse = if ds.is_nonnegative() {
            classify_three_pass(&ds, &config)?
        } else {
            classify_all_rdse_pareto(&ds, &config)?
        };
        rdse_time += start.elapsed();

        s.units += n;
        s.mean_unified_solves += unified.lp_solves.total() as f64;
        s.mean_three_pass_stage_one += rdse.lp_solves.stage_one as f64;
        s.mean_three_pass_stage_two += rdse.lp_solves.stage_two as f64;
        if unified.lp_solves.total() != n {
            s.unified_count_violations += 1;
        }
        let report = compare_routes(unified, rdse)?;
        s.agreeing_units += report.agreement_count();
        if report.passed() {
            s.agreeing_instances += 1;
        }
    }
    let count = args.instances.max(1) as f64;
    s.mean_unified_solves /= count;
    s.mean_three_pass_stage_one /= count;
    s.mean_three_pass_stage_two /= count;
    s.unified_seconds = unified_time.as_secs_f64();
    s.rdse_seconds = rdse_time.as_secs_f64();
    Ok(s)
}

fn range(r: SizeRange) -> String {
    if r.lo == r.hi {
        r.lo.to_string()
    } else {
        format!("{}..{}", r.lo, r.hi)
    }
}

fn render(s: &BenchSummary, args: &BenchArgs) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "seed {}, {} instances, n={}, m={}, s={}, zeros={}, shift={}\n",
        args.seed,
        s.instances,
        range(args.n),
        range(args.m),
        range(args.s),
        args.zeros,
        args.shift
    );
    let _ = writeln!(
        out,
        "| route | mean LP solves | slack-stage solves | wall time (s) |"
    );
    let _ = writeln!(out, "| --- | --- | --- | --- |");
    let _ = writeln!(
        out,
        "| dominance program | {:.2} | 0 | {:.3} |",
        s.mean_unified_solves, s.unified_seconds
    );
    let _ = writeln!(
        out,
        "| super-efficiency | {:.2} | {:.2} | {:.3} |",
        s.mean_three_pass_stage_one, s.mean_three_pass_stage_two, s.rdse_seconds
    );
    let _ = writeln!(
        out,
        "\nAgreement: {}/{} instances ({:.1}%), {}/{} units",
        s.agreeing_instances,
        s.instances,
        100.0 * s.agreement_rate(),
        s.agreeing_units,
        s.units
    );
    if s.unified_count_violations > 0 {
        let _ = writeln!(
            out,
            "Unified solve count differed from n on {} instances",
            s.unified_count_violations
        );
    }
    out
}
