use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use super::config::{from_pairs, RunConfig};
use super::experiment::run_experiment;
use crate::error::{Error, Result};

pub const SUMMARY_FILE: &str = "summary.csv";

/// One swept key and the values it takes, as config text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepAxis {
    pub key: String,
    pub values: Vec<String>,
}

impl std::str::FromStr for SweepAxis {
    type Err = Error;

    /// `section.key=v1,v2,...`
    fn from_str(s: &str) -> Result<Self> {
        let (key, values) = s
            .split_once('=')
            .ok_or_else(|| Error::config(s, "expected `section.key=v1,v2,...`"))?;
        let key = key.trim().to_string();
        let values: Vec<String> = values
            .split(',')
            .map(|v| v.trim().to_string())
            .filter(|v| !v.is_empty())
            .collect();
        Ok(SweepAxis { key, values })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub run: usize,
    /// Values of the swept keys, in axis order.
    pub point: Vec<String>,
    pub replicate: usize,
    pub seed: u64,
    pub output_dir: PathBuf,
    /// Final metrics on success, the error message otherwise.
    pub outcome: std::result::Result<Vec<(String, Option<f64>)>, String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSummary {
    pub axes: Vec<SweepAxis>,
    pub rows: Vec<SweepRow>,
}

impl SweepSummary {
    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| r.outcome.is_err()).count()
    }

    /// Columns: run, one per swept key, replicate, seed, status, error, then
    /// the final metrics sorted by name.
    pub fn to_csv(&self) -> String {
        let mut metric_names: Vec<String> = self
            .rows
            .iter()
            .filter_map(|r| r.outcome.as_ref().ok())
            .flat_map(|m| m.iter().map(|(k, _)| k.clone()))
            .collect();
        metric_names.sort();
        metric_names.dedup();

        let mut header = vec!["run".to_string()];
        header.extend(self.axes.iter().map(|a| a.key.clone()));
        header.extend(["replicate", "seed", "status", "error"].map(String::from));
        header.extend(metric_names.iter().cloned());

        let mut out = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let mut write = |record: Vec<String>| out.write_record(&record).expect("in-memory write");
        write(header);
        for r in &self.rows {
            let mut cells = vec![r.run.to_string()];
            cells.extend(r.point.iter().cloned());
            cells.push(r.replicate.to_string());
            cells.push(r.seed.to_string());
            match &r.outcome {
                Ok(metrics) => {
                    cells.push("ok".into());
                    cells.push(String::new());
                    for name in &metric_names {
                        let v = metrics
                            .iter()
                            .find(|(k, _)| k == name)
                            .and_then(|(_, v)| *v);
                        cells.push(v.map(|v| v.to_string()).unwrap_or_default());
                    }
                }
                Err(msg) => {
                    cells.push("error".into());
                    cells.push(msg.clone());
                    cells.extend(metric_names.iter().map(|_| String::new()));
                }
            }
            write(cells);
        }
        String::from_utf8(out.into_inner().expect("in-memory flush")).expect("utf-8 fields")
    }
}

/// Runs every grid point `replicates` times and writes `summary.csv` into
/// the base output directory.
///
/// Grid points are the Cartesian product of the axes, first axis slowest.
/// Replicate `r` uses seed `base.seed + r` and writes into
/// `<output_dir>/run_<index>`. Runs execute in parallel; a failed run is
/// recorded in its row and the rest continue.
pub fn sweep(base: &RunConfig, axes: &[SweepAxis], replicates: usize) -> Result<SweepSummary> {
    if axes.is_empty() {
        return Err(Error::config("--param", "empty parameter grid"));
    }
    for a in axes {
        if a.values.is_empty() {
            return Err(Error::config(&a.key, "no values given"));
        }
        if matches!(a.key.as_str(), "model" | "seed" | "output_dir") {
            return Err(Error::config(&a.key, "cannot be swept"));
        }
    }
    if replicates == 0 {
        return Err(Error::config("--replicates", "must be at least 1"));
    }

    let points = cartesian(axes);
    let base_pairs = base.to_pairs();
    let root = base.output_dir.clone();
    let jobs: Vec<(usize, Vec<String>, usize)> = points
        .into_iter()
        .flat_map(|p| (0..replicates).map(move |r| (p.clone(), r)))
        .enumerate()
        .map(|(i, (p, r))| (i, p, r))
        .collect();

    let rows: Vec<SweepRow> = jobs
        .into_par_iter()
        .map(|(run, point, replicate)| {
            let seed = base.seed.wrapping_add(replicate as u64);
            let output_dir = root.join(format!("run_{run:04}"));
            let outcome = configure(&base_pairs, axes, &point, seed, &output_dir)
                .and_then(|c| run_experiment(&c))
                .map(|m| m.final_metrics.into_iter().collect())
                .map_err(|e| e.to_string());
            SweepRow {
                run,
                point,
                replicate,
                seed,
                output_dir,
                outcome,
            }
        })
        .collect();

    let summary = SweepSummary {
        axes: axes.to_vec(),
        rows,
    };
    write_summary(&root, &summary)?;
    Ok(summary)
}

fn write_summary(root: &Path, summary: &SweepSummary) -> Result<()> {
    fs::create_dir_all(root).map_err(|e| Error::io(root, e))?;
    let path = root.join(SUMMARY_FILE);
    fs::write(&path, summary.to_csv()).map_err(|e| Error::io(&path, e))
}

fn configure(
    base: &[(String, String)],
    axes: &[SweepAxis],
    point: &[String],
    seed: u64,
    output_dir: &Path,
) -> Result<RunConfig> {
    let mut pairs: std::collections::BTreeMap<String, String> = base.iter().cloned().collect();
    for (axis, value) in axes.iter().zip(point) {
        pairs.insert(axis.key.clone(), value.clone());
    }
    pairs.insert("seed".into(), seed.to_string());
    pairs.insert("output_dir".into(), output_dir.display().to_string());
    // A rule switch can make an inherited preference key invalid.
    if pairs.get("schelling.rule").map(String::as_str) == Some("threshold-table")
        && !axes.iter().any(|a| a.key == "schelling.preference")
    {
        pairs.remove("schelling.preference");
    }
    from_pairs(pairs)
}

fn cartesian(axes: &[SweepAxis]) -> Vec<Vec<String>> {
    axes.iter().fold(vec![Vec::new()], |acc, axis| {
        acc.into_iter()
            .flat_map(|prefix| {
                axis.values.iter().map(move |v| {
                    let mut p = prefix.clone();
                    p.push(v.clone());
                    p
                })
            })
            .collect()
    })
}
