//! Graph JSON files: `{"n": <int>, "edges": [[i, j], ...]}`.
//!
//! Vertices are 0-indexed. Readers accept either endpoint order; writers
//! always emit `i < j` in sorted order.

use std::collections::HashSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

#[derive(Deserialize)]
#[serde(try_from = "[usize; 2]")]
struct EdgeRecord(usize, usize);

impl TryFrom<[usize; 2]> for EdgeRecord {
    type Error = String;

    fn try_from([i, j]: [usize; 2]) -> std::result::Result<Self, String> {
        if i == j {
            return Err(format!("self-loop on vertex {i}"));
        }
        Ok(EdgeRecord(i, j))
    }
}

#[derive(Deserialize)]
#[serde(try_from = "Vec<EdgeRecord>")]
struct EdgeList(Vec<(usize, usize)>);

impl TryFrom<Vec<EdgeRecord>> for EdgeList {
    type Error = String;

    fn try_from(raw: Vec<EdgeRecord>) -> std::result::Result<Self, String> {
        let mut seen = HashSet::new();
        let mut edges = Vec::with_capacity(raw.len());
        for EdgeRecord(i, j) in raw {
            if !seen.insert((i.min(j), i.max(j))) {
                return Err(format!("duplicate edge ({i}, {j})"));
            }
            edges.push((i, j));
        }
        Ok(EdgeList(edges))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    n: usize,
    edges: EdgeList,
}

#[derive(Serialize)]
struct GraphFileOut {
    n: usize,
    edges: Vec<[usize; 2]>,
}

/// Parses a graph from JSON text.
pub fn read_graph_str(text: &str) -> Result<Graph> {
    let file: GraphFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    if let Some(&(i, j)) = file
        .edges
        .0
        .iter()
        .find(|&&(i, j)| i >= file.n || j >= file.n)
    {
        return Err(Error::Validation(format!(
            "edge ({i}, {j}) references a vertex outside 0..{}",
            file.n
        )));
    }
    Graph::new(file.n, file.edges.0)
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<Graph> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    read_graph_str(&text)
}

pub fn write_graph_string(g: &Graph) -> String {
    let out = GraphFileOut {
        n: g.n(),
        edges: g.edges().iter().map(|&(i, j)| [i, j]).collect(),
    };
    serde_json::to_string(&out).expect("graph serialisation is infallible")
}

pub fn write_graph(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, write_graph_string(g) + "\n").map_err(|e| Error::io(path, e))
}
