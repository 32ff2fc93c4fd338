//! The ER/WS parameter-search sweep: graph instances x node sizes x depths,
//! each compared against a single random draw of QAOA angles.
//!
//! Every stochastic choice is seeded from `(base_seed, model, graph_index, n,
//! p, role)` through [`derive_seed`], so each cell can be recomputed alone and
//! cells can run in any order or in parallel.

mod persist;
mod report;
mod seeds;

pub use persist::{read_result_rows, sidecar_path, ResultRow, ResultsWriter, RESULTS_HEADER};
pub use report::{aggregate_report, aggregate_rows, ModelTable, Report, ReportCell};
pub use seeds::{derive_seed, SeedRole};

use std::fmt;
use std::str::FromStr;
use std::sync::mpsc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{
    generate_er, generate_ws, max_cut_bruteforce, one_exchange_cut, ws_k_for, Graph,
};
use crate::optimizer::{adam_fipso_optimize, approx_ratio, random_params, Mode, SwarmConfig};
use crate::qaoasim::QaoaSimulator;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Model {
    #[serde(rename = "ER")]
    Er,
    #[serde(rename = "WS")]
    Ws,
}

impl Model {
    pub fn as_str(&self) -> &'static str {
        match self {
            Model::Er => "ER",
            Model::Ws => "WS",
        }
    }

    pub(crate) fn tag(&self) -> u64 {
        match self {
            Model::Er => 1,
            Model::Ws => 2,
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "er" => Ok(Model::Er),
            "ws" => Ok(Model::Ws),
            other => Err(Error::InvalidArgument(format!("unknown graph model `{other}`"))),
        }
    }
}

/// Node count above which a warning is issued (exhaustive MaxCut and the
/// statevector both grow as `2^n`).
pub const DEFAULT_MAX_SUITE_NODES: usize = 16;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub models: Vec<Model>,
    /// Inclusive node-count range.
    pub node_range: (usize, usize),
    pub instances_per_size: usize,
    pub depths: Vec<usize>,
    pub er_edge_prob: f64,
    pub ws_rewire_prob: f64,
    pub base_seed: u64,
    pub swarm: SwarmConfig,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            models: vec![Model::Er, Model::Ws],
            node_range: (3, DEFAULT_MAX_SUITE_NODES),
            instances_per_size: 5,
            depths: vec![1, 2, 3],
            er_edge_prob: 0.5,
            ws_rewire_prob: 0.3,
            base_seed: 0,
            swarm: SwarmConfig::default(),
        }
    }
}

/// One `(model, graph_index, n, p)` cell of a suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub model: Model,
    pub graph_index: usize,
    pub n: usize,
    pub p: usize,
}

impl SuiteConfig {
    /// Checks the configuration; returns warnings for oversized sweeps.
    pub fn validate(&self) -> Result<Vec<String>> {
        let (lo, hi) = self.node_range;
        if self.models.is_empty() || self.depths.is_empty() || self.instances_per_size == 0 {
            return Err(Error::InvalidArgument(
                "suite needs at least one model, depth and instance".into(),
            ));
        }
        if lo < 3 || lo > hi {
            return Err(Error::InvalidArgument(format!(
                "node range must satisfy 3 <= lo <= hi, got {lo}..{hi}"
            )));
        }
        if hi > crate::graph::MAX_BRUTEFORCE_NODES {
            return Err(Error::Capacity {
                n: hi,
                max: crate::graph::MAX_BRUTEFORCE_NODES,
            });
        }
        if let Some(&p) = self.depths.iter().find(|&&p| !(1..=8).contains(&p)) {
            return Err(Error::InvalidArgument(format!("depth must lie in 1..=8, got {p}")));
        }
        for (name, prob) in [("er_edge_prob", self.er_edge_prob), ("ws_rewire_prob", self.ws_rewire_prob)] {
            if !(0.0..=1.0).contains(&prob) {
                return Err(Error::InvalidArgument(format!("{name} must lie in [0, 1], got {prob}")));
            }
        }
        self.swarm.validate()?;
        let mut warnings = Vec::new();
        if hi > DEFAULT_MAX_SUITE_NODES {
            warnings.push(format!(
                "node sizes up to {hi} exceed the default cap of {DEFAULT_MAX_SUITE_NODES}; \
                 simulation cost grows as 2^n"
            ));
        }
        Ok(warnings)
    }

    /// All cells in canonical order: model, graph index, node count, depth.
    pub fn cells(&self) -> Vec<Cell> {
        let mut models = self.models.clone();
        models.sort();
        models.dedup();
        let mut depths = self.depths.clone();
        depths.sort();
        depths.dedup();
        let mut cells = Vec::new();
        for &model in &models {
            for graph_index in 1..=self.instances_per_size {
                for n in self.node_range.0..=self.node_range.1 {
                    for &p in &depths {
                        cells.push(Cell {
                            model,
                            graph_index,
                            n,
                            p,
                        });
                    }
                }
            }
        }
        cells
    }
}

/// Seeds that reproduce one record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordSeeds {
    /// Seed that actually produced the graph (after any edgeless resampling).
    pub graph: u64,
    pub baseline: u64,
    pub swarm: u64,
}

/// A single random draw of QAOA angles and its quality.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Baseline {
    pub params: Vec<f64>,
    pub cut: f64,
    pub ar: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub model: Model,
    pub graph_index: usize,
    pub n: usize,
    pub p: usize,
    pub edges: usize,
    pub max_cut: usize,
    pub classical_cut: usize,
    pub rand_params: Vec<f64>,
    pub rand_cut: f64,
    pub rand_ar: f64,
    pub opt_params: Vec<f64>,
    pub opt_cut: f64,
    pub opt_ar: f64,
    pub opt_loss: f64,
    /// `None` when the baseline ratio is zero (record is flagged).
    pub improvement_pct: Option<f64>,
    pub seeds: RecordSeeds,
    pub mode: Mode,
    pub swarm: SwarmConfig,
    pub iterations: usize,
    pub evaluations: usize,
    /// Empty for a clean record; otherwise why it is excluded from aggregates.
    pub flag: Option<String>,
}

impl ExperimentRecord {
    fn failed(cell: Cell, seeds: RecordSeeds, swarm: &SwarmConfig, err: &Error) -> Self {
        Self {
            model: cell.model,
            graph_index: cell.graph_index,
            n: cell.n,
            p: cell.p,
            edges: 0,
            max_cut: 0,
            classical_cut: 0,
            rand_params: Vec::new(),
            rand_cut: f64::NAN,
            rand_ar: f64::NAN,
            opt_params: Vec::new(),
            opt_cut: f64::NAN,
            opt_ar: f64::NAN,
            opt_loss: f64::NAN,
            improvement_pct: None,
            seeds,
            mode: swarm.mode,
            swarm: swarm.clone(),
            iterations: 0,
            evaluations: 0,
            flag: Some(format!("error: {err}")),
        }
    }

    pub fn cell(&self) -> Cell {
        Cell {
            model: self.model,
            graph_index: self.graph_index,
            n: self.n,
            p: self.p,
        }
    }
}

/// Relative gain of the optimised ratio over the baseline, in percent.
pub fn improvement(ar_opt: f64, ar_rand: f64) -> Result<f64> {
    if ar_rand == 0.0 || !ar_rand.is_finite() {
        return Err(Error::UndefinedImprovement);
    }
    Ok((ar_opt - ar_rand) / ar_rand * 100.0)
}

/// Evaluates a fixed parameter vector as a baseline against a known MaxCut.
pub fn baseline_at(g: &Graph, theta: &[f64], max_cut: usize) -> Result<Baseline> {
    if g.edge_count() == 0 || max_cut == 0 {
        return Err(Error::InvalidArgument(
            "baseline approximation ratio is undefined on an edgeless graph".into(),
        ));
    }
    let cut = QaoaSimulator::new(g)?.expectation_vec(theta)?;
    Ok(Baseline {
        params: theta.to_vec(),
        cut,
        ar: approx_ratio(cut, max_cut as f64),
    })
}

fn baseline_with(g: &Graph, p: usize, seed: u64, max_cut: usize) -> Result<Baseline> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    baseline_at(g, &random_params(p, &mut rng), max_cut)
}

/// One uniform draw of `2p` angles in `[-pi, pi]`, scored against MaxCut.
pub fn random_baseline(g: &Graph, p: usize, seed: u64) -> Result<Baseline> {
    if p == 0 {
        return Err(Error::InvalidArgument("QAOA depth must be at least 1".into()));
    }
    let max_cut = max_cut_bruteforce(g)?.value;
    baseline_with(g, p, seed, max_cut)
}

/// Generates the instance for `(model, n)` from `seed`, stepping the seed
/// until the graph has at least one edge. Returns the graph and the seed used.
pub fn generate_instance(model: Model, n: usize, seed: u64, cfg: &SuiteConfig) -> Result<(Graph, u64)> {
    let mut seed = seed;
    loop {
        let g = match model {
            Model::Er => generate_er(n, cfg.er_edge_prob, seed)?,
            Model::Ws => generate_ws(n, ws_k_for(n)?, cfg.ws_rewire_prob, seed)?,
        };
        if g.edge_count() > 0 {
            return Ok((g, seed));
        }
        if model == Model::Er && cfg.er_edge_prob == 0.0 {
            return Err(Error::InvalidArgument(
                "edge probability 0 can never produce an edge".into(),
            ));
        }
        seed = seed.wrapping_add(1);
    }
}

fn cell_seeds(cfg: &SuiteConfig, cell: Cell) -> RecordSeeds {
    let derive = |p, role| derive_seed(cfg.base_seed, cell.model, cell.graph_index, cell.n, p, role);
    RecordSeeds {
        graph: derive(0, SeedRole::Graph),
        baseline: derive(cell.p, SeedRole::Baseline),
        swarm: derive(cell.p, SeedRole::Swarm),
    }
}

/// Runs one cell: graph, exact and one-exchange cuts, random baseline and
/// the swarm search with `c_target = MaxCut`.
pub fn run_instance(model: Model, graph_index: usize, n: usize, p: usize, cfg: &SuiteConfig) -> Result<ExperimentRecord> {
    let cell = Cell {
        model,
        graph_index,
        n,
        p,
    };
    let mut seeds = cell_seeds(cfg, cell);
    let (g, graph_seed) = generate_instance(model, n, seeds.graph, cfg)?;
    seeds.graph = graph_seed;

    let max_cut = max_cut_bruteforce(&g)?.value;
    let classical_cut = one_exchange_cut(&g, graph_seed).value;
    let baseline = baseline_with(&g, p, seeds.baseline, max_cut)?;

    let swarm = SwarmConfig {
        seed: seeds.swarm,
        ..cfg.swarm.clone()
    };
    let result = adam_fipso_optimize(&g, p, max_cut as f64, &swarm)?;
    let opt_cut = result
        .best_expectation
        .expect("QAOA optimisation reports an expectation");
    let opt_ar = approx_ratio(opt_cut, max_cut as f64);
    let (improvement_pct, flag) = match improvement(opt_ar, baseline.ar) {
        Ok(v) => (Some(v), None),
        Err(e) => (None, Some(e.to_string())),
    };

    Ok(ExperimentRecord {
        model,
        graph_index,
        n,
        p,
        edges: g.edge_count(),
        max_cut,
        classical_cut,
        rand_params: baseline.params,
        rand_cut: baseline.cut,
        rand_ar: baseline.ar,
        opt_params: result.best_position,
        opt_cut,
        opt_ar,
        opt_loss: result.best_loss,
        improvement_pct,
        seeds,
        mode: swarm.mode,
        iterations: result.trace.len(),
        evaluations: result.evaluations,
        swarm,
        flag,
    })
}

fn run_cell(cfg: &SuiteConfig, cell: Cell) -> ExperimentRecord {
    run_instance(cell.model, cell.graph_index, cell.n, cell.p, cfg).unwrap_or_else(|e| {
        let seeds = cell_seeds(cfg, cell);
        ExperimentRecord::failed(cell, seeds, &SwarmConfig { seed: seeds.swarm, ..cfg.swarm.clone() }, &e)
    })
}

fn check_seed_collisions(cfg: &SuiteConfig, cells: &[Cell]) -> Result<()> {
    let mut seen = std::collections::HashMap::new();
    for &cell in cells {
        let seeds = cell_seeds(cfg, cell);
        for (role, seed) in [(SeedRole::Baseline, seeds.baseline), (SeedRole::Swarm, seeds.swarm)] {
            if let Some(other) = seen.insert(seed, (cell, role)) {
                return Err(Error::Validation(format!(
                    "derived seed collision between {other:?} and {:?}",
                    (cell, role)
                )));
            }
        }
    }
    Ok(())
}

/// Runs every cell of the suite on `jobs` worker threads.
///
/// `sink` sees each record exactly once, in canonical cell order, as soon as
/// all earlier cells have finished. Failed cells yield flagged records rather
/// than aborting the suite.
pub fn run_suite_with<S>(cfg: &SuiteConfig, jobs: usize, mut sink: S) -> Result<Vec<ExperimentRecord>>
where
    S: FnMut(&ExperimentRecord) -> Result<()>,
{
    cfg.validate()?;
    let cells = cfg.cells();
    check_seed_collisions(cfg, &cells)?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(format!("cannot start worker pool: {e}")))?;

    let (tx, rx) = mpsc::channel::<(usize, ExperimentRecord)>();
    let mut records: Vec<Option<ExperimentRecord>> = vec![None; cells.len()];
    let mut emitted = Vec::with_capacity(cells.len());
    std::thread::scope(|scope| -> Result<()> {
        let cells = &cells;
        scope.spawn(move || {
            pool.install(|| {
                use rayon::prelude::*;
                cells.par_iter().enumerate().for_each_with(tx, |tx, (i, &cell)| {
                    // the receiver only disappears if the sink failed
                    let _ = tx.send((i, run_cell(cfg, cell)));
                });
            });
        });
        let mut next = 0;
        for (i, record) in rx {
            records[i] = Some(record);
            while next < records.len() {
                let Some(record) = records[next].take() else { break };
                sink(&record)?;
                emitted.push(record);
                next += 1;
            }
        }
        Ok(())
    })?;
    Ok(emitted)
}

/// [`run_suite_with`] on the current rayon pool size, collecting records only.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Vec<ExperimentRecord>> {
    run_suite_with(cfg, rayon::current_num_threads(), |_| Ok(()))
}
