//! `qaoa-fipso` command-line interface.
//!
//! Exit codes: 0 on success, 1 on runtime failure, 2 on usage errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::experiment::{
    aggregate_report, aggregate_rows, read_result_rows, run_suite_with, Model, ResultsWriter, SuiteConfig,
};
use crate::graph::{max_cut_bruteforce, read_graph};
use crate::optimizer::{adam_fipso_optimize, approx_ratio, SwarmConfig};
use crate::qaoasim::{landscape_grid, DEFAULT_LANDSCAPE_RESOLUTION};

pub const SEED_ENV: &str = "QAOA_FIPSO_SEED";

#[derive(Debug, Parser)]
#[command(name = "qaoa-fipso", version, about = "QAOA MaxCut parameter search with Adam-assisted FIPSO")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the ER/WS sweep and write results CSV plus a JSON-lines sidecar.
    RunSuite(RunSuiteArgs),
    /// Optimise QAOA angles for one graph and print the result as JSON.
    Optimize(OptimizeArgs),
    /// Print the exact MaxCut value and one optimal partition.
    Maxcut(MaxcutArgs),
    /// Export the p = 1 expectation landscape as CSV.
    Landscape(LandscapeArgs),
    /// Print mean-improvement tables from a results CSV.
    Report(ReportArgs),
}

/// Inclusive `lo..hi` node range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodeRange(pub usize, pub usize);

impl FromStr for NodeRange {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (lo, hi) = match s.split_once("..") {
            Some((lo, hi)) => (lo, hi),
            None => (s, s),
        };
        let parse = |v: &str| v.trim().parse::<usize>().map_err(|e| format!("bad node count `{v}`: {e}"));
        let (lo, hi) = (parse(lo)?, parse(hi)?);
        if lo > hi {
            return Err(format!("empty node range {lo}..{hi}"));
        }
        Ok(NodeRange(lo, hi))
    }
}

/// Closed angle interval `lo..hi` (or `lo,hi`); `pi` and `-pi` are accepted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleRange(pub f64, pub f64);

fn parse_angle(v: &str) -> std::result::Result<f64, String> {
    match v.trim() {
        "pi" => Ok(std::f64::consts::PI),
        "-pi" => Ok(-std::f64::consts::PI),
        other => other.parse::<f64>().map_err(|e| format!("bad angle `{other}`: {e}")),
    }
}

impl FromStr for AngleRange {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (lo, hi) = s
            .split_once("..")
            .or_else(|| s.split_once(','))
            .ok_or_else(|| format!("expected `lo..hi`, got `{s}`"))?;
        let (lo, hi) = (parse_angle(lo)?, parse_angle(hi)?);
        if !(lo < hi) {
            return Err(format!("range must satisfy lo < hi, got {lo}..{hi}"));
        }
        Ok(AngleRange(lo, hi))
    }
}

fn parse_resolution(s: &str) -> std::result::Result<usize, String> {
    let r: usize = s.trim().parse().map_err(|e| format!("bad resolution `{s}`: {e}"))?;
    if r < 2 {
        return Err(format!("resolution must be at least 2, got {r}"));
    }
    Ok(r)
}

fn parse_model(s: &str) -> std::result::Result<Model, String> {
    s.parse::<Model>().map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
pub struct SeedArg {
    /// Seed for every stochastic choice.
    #[arg(long, env = SEED_ENV)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct RunSuiteArgs {
    #[arg(long, value_delimiter = ',', default_value = "er,ws", value_parser = parse_model)]
    pub models: Vec<Model>,
    /// Inclusive node range `lo..hi`.
    #[arg(long, default_value = "3..16")]
    pub nodes: NodeRange,
    #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
    pub depths: Vec<usize>,
    /// Graph instances per node size.
    #[arg(long, default_value_t = 5)]
    pub instances: usize,
    #[command(flatten)]
    pub seed: SeedArg,
    #[arg(long, default_value = "results.csv")]
    pub out: PathBuf,
    /// Swarm configuration JSON.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Worker threads (output is identical for any value).
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub depth: usize,
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub seed: SeedArg,
}

#[derive(Debug, Args)]
pub struct MaxcutArgs {
    #[arg(long)]
    pub graph: PathBuf,
}

#[derive(Debug, Args)]
pub struct LandscapeArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, default_value_t = DEFAULT_LANDSCAPE_RESOLUTION, value_parser = parse_resolution)]
    pub resolution: usize,
    #[arg(long, default_value = "-pi..pi", allow_hyphen_values = true)]
    pub gamma_range: AngleRange,
    #[arg(long, default_value = "-pi..pi", allow_hyphen_values = true)]
    pub beta_range: AngleRange,
    /// Output CSV; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Results CSV written by `run-suite`.
    #[arg(long = "input", alias = "in")]
    pub input: PathBuf,
    /// Also write the tables as CSV.
    #[arg(long)]
    pub csv_out: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct OptimizeOutput {
    opt_params: Vec<f64>,
    opt_cut: f64,
    opt_ar: f64,
    opt_loss: f64,
    max_cut: usize,
    iterations: usize,
    evaluations: usize,
}

fn load_swarm_config(path: Option<&Path>) -> Result<SwarmConfig> {
    match path {
        Some(p) => SwarmConfig::from_json_file(p),
        None => Ok(SwarmConfig::default()),
    }
}

fn run_suite_cmd(args: RunSuiteArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let cfg = SuiteConfig {
        models: args.models,
        node_range: (args.nodes.0, args.nodes.1),
        instances_per_size: args.instances,
        depths: args.depths,
        base_seed: args.seed.seed.unwrap_or(0),
        swarm: load_swarm_config(args.config.as_deref())?,
        ..Default::default()
    };
    for warning in cfg.validate()? {
        let _ = writeln!(err, "warning: {warning}");
    }
    let jobs = args
        .jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let mut writer = ResultsWriter::create(&args.out)?;
    let records = run_suite_with(&cfg, jobs, |r| writer.write(r))?;

    let report = aggregate_report(&records)?;
    for table in &report.tables {
        for (&(n, p), cell) in &table.cells {
            let mean = cell
                .mean_improvement_pct
                .map_or("n/a".to_string(), |v| format!("{v:.1}%"));
            let _ = writeln!(
                out,
                "{} n={n} p={p}: mean improvement {mean} ({} used, {} flagged)",
                table.model, cell.used, cell.flagged
            );
        }
    }
    let _ = writeln!(
        out,
        "wrote {} records to {} and {}",
        records.len(),
        args.out.display(),
        writer.sidecar().display()
    );
    Ok(())
}

fn optimize_cmd(args: OptimizeArgs, out: &mut dyn Write) -> Result<()> {
    let g = read_graph(&args.graph)?;
    let mut cfg = load_swarm_config(args.config.as_deref())?;
    if let Some(seed) = args.seed.seed {
        cfg.seed = seed;
    }
    let max_cut = max_cut_bruteforce(&g)?.value;
    let result = adam_fipso_optimize(&g, args.depth, max_cut as f64, &cfg)?;
    let opt_cut = result.best_expectation.unwrap_or(f64::NAN);
    let report = OptimizeOutput {
        opt_ar: approx_ratio(opt_cut, max_cut as f64),
        opt_params: result.best_position,
        opt_cut,
        opt_loss: result.best_loss,
        max_cut,
        iterations: result.trace.len(),
        evaluations: result.evaluations,
    };
    let _ = writeln!(out, "{}", serde_json::to_string(&report)?);
    Ok(())
}

fn maxcut_cmd(args: MaxcutArgs, out: &mut dyn Write) -> Result<()> {
    let g = read_graph(&args.graph)?;
    let best = max_cut_bruteforce(&g)?;
    let _ = writeln!(out, "{}\n{}", best.value, best.bitstring(g.n()));
    Ok(())
}

fn landscape_cmd(args: LandscapeArgs, out: &mut dyn Write) -> Result<()> {
    let g = read_graph(&args.graph)?;
    let scan = landscape_grid(
        &g,
        (args.gamma_range.0, args.gamma_range.1),
        (args.beta_range.0, args.beta_range.1),
        args.resolution,
    )?;
    match &args.out {
        Some(path) => {
            let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
            scan.write_csv(std::io::BufWriter::new(file))
        }
        None => scan.write_csv(out),
    }
}

fn report_cmd(args: ReportArgs, out: &mut dyn Write) -> Result<()> {
    let file = std::fs::File::open(&args.input).map_err(|e| Error::io(&args.input, e))?;
    let rows = read_result_rows(file)?;
    let report = aggregate_rows(&rows)?;
    let _ = write!(out, "{}", report.render_text());
    if let Some(path) = &args.csv_out {
        let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
        report.write_csv(file)?;
    }
    Ok(())
}

/// Parses `args` (program name first) and runs the subcommand, writing to the
/// given streams. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    let result = match cli.command {
        Command::RunSuite(a) => run_suite_cmd(a, out, err),
        Command::Optimize(a) => optimize_cmd(a, out),
        Command::Maxcut(a) => maxcut_cmd(a, out),
        Command::Landscape(a) => landscape_cmd(a, out),
        Command::Report(a) => report_cmd(a, out),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
