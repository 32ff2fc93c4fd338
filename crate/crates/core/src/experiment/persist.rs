//! Results CSV (one record per row) plus a JSON-lines sidecar holding the
//! full records, parameter vectors included.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use serde::Deserialize;

use super::{ExperimentRecord, Model};
use crate::error::{Error, Result};

pub const RESULTS_HEADER: [&str; 16] = [
    "model",
    "graph_index",
    "n",
    "p",
    "max_cut",
    "classical_cut",
    "rand_cut",
    "rand_ar",
    "opt_cut",
    "opt_ar",
    "opt_loss",
    "improvement_pct",
    "graph_seed",
    "baseline_seed",
    "swarm_seed",
    "flag",
];

/// `results.csv` -> `results.jsonl`.
pub fn sidecar_path(csv_path: &Path) -> PathBuf {
    csv_path.with_extension("jsonl")
}

fn csv_fields(r: &ExperimentRecord) -> [String; 16] {
    [
        r.model.to_string(),
        r.graph_index.to_string(),
        r.n.to_string(),
        r.p.to_string(),
        r.max_cut.to_string(),
        r.classical_cut.to_string(),
        r.rand_cut.to_string(),
        r.rand_ar.to_string(),
        r.opt_cut.to_string(),
        r.opt_ar.to_string(),
        r.opt_loss.to_string(),
        r.improvement_pct.map(|v| v.to_string()).unwrap_or_default(),
        r.seeds.graph.to_string(),
        r.seeds.baseline.to_string(),
        r.seeds.swarm.to_string(),
        r.flag.clone().unwrap_or_default(),
    ]
}

/// Streams records to the CSV and its sidecar, flushing after each one.
pub struct ResultsWriter {
    csv: csv::Writer<BufWriter<File>>,
    jsonl: BufWriter<File>,
    csv_path: PathBuf,
    jsonl_path: PathBuf,
}

impl ResultsWriter {
    pub fn create(csv_path: impl AsRef<Path>) -> Result<Self> {
        let csv_path = csv_path.as_ref().to_path_buf();
        let jsonl_path = sidecar_path(&csv_path);
        let csv_file = File::create(&csv_path).map_err(|e| Error::io(&csv_path, e))?;
        let jsonl_file = File::create(&jsonl_path).map_err(|e| Error::io(&jsonl_path, e))?;
        let mut csv = csv::Writer::from_writer(BufWriter::new(csv_file));
        csv.write_record(RESULTS_HEADER)?;
        Ok(Self {
            csv,
            jsonl: BufWriter::new(jsonl_file),
            csv_path,
            jsonl_path,
        })
    }

    pub fn write(&mut self, record: &ExperimentRecord) -> Result<()> {
        self.csv.write_record(csv_fields(record))?;
        self.csv.flush().map_err(|e| Error::io(&self.csv_path, e))?;
        serde_json::to_writer(&mut self.jsonl, record)?;
        self.jsonl
            .write_all(b"\n")
            .and_then(|_| self.jsonl.flush())
            .map_err(|e| Error::io(&self.jsonl_path, e))
    }

    pub fn sidecar(&self) -> &Path {
        &self.jsonl_path
    }
}

/// The CSV columns of one result row.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct ResultRow {
    pub model: Model,
    pub graph_index: usize,
    pub n: usize,
    pub p: usize,
    pub max_cut: usize,
    pub classical_cut: usize,
    pub rand_cut: f64,
    pub rand_ar: f64,
    pub opt_cut: f64,
    pub opt_ar: f64,
    pub opt_loss: f64,
    pub improvement_pct: Option<f64>,
    pub graph_seed: u64,
    pub baseline_seed: u64,
    pub swarm_seed: u64,
    pub flag: String,
}

impl From<&ExperimentRecord> for ResultRow {
    fn from(r: &ExperimentRecord) -> Self {
        Self {
            model: r.model,
            graph_index: r.graph_index,
            n: r.n,
            p: r.p,
            max_cut: r.max_cut,
            classical_cut: r.classical_cut,
            rand_cut: r.rand_cut,
            rand_ar: r.rand_ar,
            opt_cut: r.opt_cut,
            opt_ar: r.opt_ar,
            opt_loss: r.opt_loss,
            improvement_pct: r.improvement_pct,
            graph_seed: r.seeds.graph,
            baseline_seed: r.seeds.baseline,
            swarm_seed: r.seeds.swarm,
            flag: r.flag.clone().unwrap_or_default(),
        }
    }
}

/// Reads a results CSV, checking that every expected column is present.
pub fn read_result_rows<R: Read>(input: R) -> Result<Vec<ResultRow>> {
    let mut reader = csv::Reader::from_reader(input);
    let headers = reader.headers()?.clone();
    if let Some(missing) = RESULTS_HEADER.iter().find(|col| !headers.iter().any(|h| h == **col)) {
        return Err(Error::MissingColumn(missing.to_string()));
    }
    reader
        .deserialize()
        .map(|row| row.map_err(Error::from))
        .collect()
}
