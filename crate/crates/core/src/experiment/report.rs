use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::io::Write;

use super::{ExperimentRecord, Model, ResultRow};
use crate::error::{Error, Result};

/// Mean improvement over the unflagged instances of one `(model, n, p)` cell.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ReportCell {
    /// `None` when every instance in the cell was flagged.
    pub mean_improvement_pct: Option<f64>,
    pub used: usize,
    pub flagged: usize,
}

/// Node x depth table for one graph model.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelTable {
    pub model: Model,
    pub nodes: Vec<usize>,
    pub depths: Vec<usize>,
    pub cells: BTreeMap<(usize, usize), ReportCell>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub tables: Vec<ModelTable>,
}

pub fn aggregate_report(records: &[ExperimentRecord]) -> Result<Report> {
    let rows: Vec<ResultRow> = records.iter().map(ResultRow::from).collect();
    aggregate_rows(&rows)
}

/// Averages `improvement_pct` per `(model, n, p)`; flagged rows are counted
/// but excluded from the mean.
pub fn aggregate_rows(rows: &[ResultRow]) -> Result<Report> {
    if rows.is_empty() {
        return Err(Error::InvalidArgument("no result records to aggregate".into()));
    }
    let mut sums: BTreeMap<Model, BTreeMap<(usize, usize), (f64, usize, usize)>> = BTreeMap::new();
    for row in rows {
        let entry = sums
            .entry(row.model)
            .or_default()
            .entry((row.n, row.p))
            .or_insert((0.0, 0, 0));
        match row.improvement_pct {
            Some(v) if row.flag.is_empty() && v.is_finite() => {
                entry.0 += v;
                entry.1 += 1;
            }
            _ => entry.2 += 1,
        }
    }
    let tables = sums
        .into_iter()
        .map(|(model, cells)| {
            let nodes: BTreeSet<usize> = cells.keys().map(|&(n, _)| n).collect();
            let depths: BTreeSet<usize> = cells.keys().map(|&(_, p)| p).collect();
            let cells = cells
                .into_iter()
                .map(|(key, (sum, used, flagged))| {
                    let mean = (used > 0).then(|| sum / used as f64);
                    (
                        key,
                        ReportCell {
                            mean_improvement_pct: mean,
                            used,
                            flagged,
                        },
                    )
                })
                .collect();
            ModelTable {
                model,
                nodes: nodes.into_iter().collect(),
                depths: depths.into_iter().collect(),
                cells,
            }
        })
        .collect();
    Ok(Report { tables })
}

impl ModelTable {
    fn row_counts(&self, n: usize) -> (usize, usize) {
        self.depths
            .iter()
            .filter_map(|&p| self.cells.get(&(n, p)))
            .fold((0, 0), |(u, f), c| (u + c.used, f + c.flagged))
    }

    fn cell_text(&self, n: usize, p: usize) -> String {
        match self.cells.get(&(n, p)).and_then(|c| c.mean_improvement_pct) {
            Some(v) => format!("{v:.1}%"),
            None => "-".to_string(),
        }
    }
}

impl Report {
    pub fn table(&self, model: Model) -> Option<&ModelTable> {
        self.tables.iter().find(|t| t.model == model)
    }

    /// Aligned plain-text tables, one per model.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for (k, table) in self.tables.iter().enumerate() {
            if k > 0 {
                out.push('\n');
            }
            let name = match table.model {
                Model::Er => "Erdos-Renyi",
                Model::Ws => "Watts-Strogatz",
            };
            let _ = writeln!(out, "Adam-FIPSO mean improvement over random baseline: {name} graphs");
            let _ = write!(out, "{:<8}", "Node");
            for p in &table.depths {
                let _ = write!(out, " {:>10}", format!("p={p}"));
            }
            let _ = writeln!(out, " {:>6} {:>8}", "used", "flagged");
            for &n in &table.nodes {
                let _ = write!(out, "{:<8}", format!("Node {n}"));
                for &p in &table.depths {
                    let _ = write!(out, " {:>10}", table.cell_text(n, p));
                }
                let (used, flagged) = table.row_counts(n);
                let _ = writeln!(out, " {used:>6} {flagged:>8}");
            }
        }
        out
    }

    /// Machine-readable mirror: `model,node,p=1,...,used,flagged`, means in full precision.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let depths: BTreeSet<usize> = self.tables.iter().flat_map(|t| t.depths.iter().copied()).collect();
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["model".to_string(), "node".to_string()];
        header.extend(depths.iter().map(|p| format!("p={p}")));
        header.extend(["used".to_string(), "flagged".to_string()]);
        w.write_record(&header)?;
        for table in &self.tables {
            for &n in &table.nodes {
                let mut row = vec![table.model.to_string(), n.to_string()];
                for p in &depths {
                    row.push(
                        table
                            .cells
                            .get(&(n, *p))
                            .and_then(|c| c.mean_improvement_pct)
                            .map(|v| v.to_string())
                            .unwrap_or_default(),
                    );
                }
                let (used, flagged) = table.row_counts(n);
                row.extend([used.to_string(), flagged.to_string()]);
                w.write_record(&row)?;
            }
        }
        w.flush().map_err(|e| Error::io("<report csv>", e))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(model: Model, n: usize, p: usize, imp: Option<f64>, flag: &str) -> ResultRow {
        ResultRow {
            model,
            graph_index: 1,
            n,
            p,
            max_cut: 2,
            classical_cut: 2,
            rand_cut: 1.0,
            rand_ar: 0.5,
            opt_cut: 2.0,
            opt_ar: 1.0,
            opt_loss: 0.0,
            improvement_pct: imp,
            graph_seed: 0,
            baseline_seed: 0,
            swarm_seed: 0,
            flag: flag.into(),
        }
    }

    #[test]
    fn mean_of_five() {
        let rows: Vec<_> = [10.0, 20.0, 30.0, 40.0, 50.0]
            .iter()
            .map(|&v| row(Model::Er, 3, 1, Some(v), ""))
            .collect();
        let report = aggregate_rows(&rows).unwrap();
        assert_eq!(report.tables.len(), 1);
        let t = report.table(Model::Er).unwrap();
        assert_eq!(t.nodes, vec![3]);
        assert_eq!(t.depths, vec![1]);
        let cell = t.cells[&(3, 1)];
        assert_eq!(cell.mean_improvement_pct, Some(30.0));
        assert_eq!((cell.used, cell.flagged), (5, 0));
    }

    #[test]
    fn flagged_rows_excluded_and_counted() {
        let rows = vec![
            row(Model::Ws, 4, 2, Some(10.0), ""),
            row(Model::Ws, 4, 2, None, "improvement undefined"),
            row(Model::Ws, 4, 3, None, "error: boom"),
        ];
        let report = aggregate_rows(&rows).unwrap();
        let t = report.table(Model::Ws).unwrap();
        assert_eq!(t.cells[&(4, 2)].mean_improvement_pct, Some(10.0));
        assert_eq!(t.cells[&(4, 2)].flagged, 1);
        assert_eq!(t.cells[&(4, 3)].mean_improvement_pct, None);
        let text = report.render_text();
        assert!(text.contains("Watts-Strogatz"));
        assert!(text.contains("Node 4"));
        assert!(text.contains("10.0%"));
    }

    #[test]
    fn empty_input_rejected() {
        assert!(aggregate_rows(&[]).is_err());
    }

    #[test]
    fn csv_layout() {
        let rows = vec![
            row(Model::Er, 3, 1, Some(1.5), ""),
            row(Model::Er, 3, 2, Some(2.5), ""),
            row(Model::Er, 4, 1, Some(3.0), ""),
        ];
        let mut buf = Vec::new();
        aggregate_rows(&rows).unwrap().write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "model,node,p=1,p=2,used,flagged\nER,3,1.5,2.5,2,0\nER,4,3,,1,0\n"
        );
    }
}
