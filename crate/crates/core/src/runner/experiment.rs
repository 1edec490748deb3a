use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::config::{ModelConfig, RunConfig};
use crate::ant::AntModel;
use crate::engine::{drive, write_pgrid, Metrics, Schedule, Simulation, RNG_ALGORITHM};
use crate::error::{Error, Result};
use crate::impact::ImpactModel;
use crate::schelling::SchellingModel;

pub const TOOLKIT: &str = env!("CARGO_PKG_NAME");
pub const TOOLKIT_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const METRICS_FILE: &str = "metrics.csv";
pub const MANIFEST_FILE: &str = "manifest.json";

/// Everything needed to reproduce a run, written next to its outputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub toolkit: String,
    pub toolkit_version: String,
    pub rng_algorithm: String,
    /// Full config echo, defaults included.
    pub config: BTreeMap<String, String>,
    pub start_tick: u64,
    pub end_tick: u64,
    pub settled: bool,
    /// Paths relative to the output directory, in write order.
    pub files: Vec<String>,
    /// Metrics of the final state; `None` where undefined.
    pub final_metrics: BTreeMap<String, Option<f64>>,
}

pub fn snapshot_file_name(tick: u64) -> String {
    format!("snapshot_{tick:010}.pgrid")
}

/// Runs the configured model and writes `metrics.csv`, one snapshot file
/// per recorded tick and `manifest.json` into `config.output_dir`.
pub fn run_experiment(config: &RunConfig) -> Result<RunManifest> {
    config.validate()?;
    let dir = config.output_dir.as_path();
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    match &config.model {
        ModelConfig::Ant(p) => execute(AntModel::new(p.clone(), config.seed)?, config, dir),
        ModelConfig::Schelling(p) => {
            execute(SchellingModel::new(p.clone(), config.seed)?, config, dir)
        }
        ModelConfig::Impact(p) => execute(ImpactModel::new(p.clone(), config.seed)?, config, dir),
    }
}

fn execute<S: Simulation>(mut sim: S, config: &RunConfig, dir: &Path) -> Result<RunManifest> {
    let csv_path = dir.join(METRICS_FILE);
    let mut csv = BufWriter::new(File::create(&csv_path).map_err(|e| Error::io(&csv_path, e))?);
    let mut files = vec![METRICS_FILE.to_string()];
    let mut columns: Option<Vec<String>> = None;
    let start_tick = sim.tick();

    let schedule = Schedule {
        ticks: config.ticks,
        snapshot_every: config.snapshot_every,
        stop_when_settled: config.stop_when_settled,
    };
    let outcome = drive(&mut sim, schedule, |tick, grid, metrics| {
        let cols = columns.get_or_insert_with(|| metrics.keys().cloned().collect());
        if files.len() == 1 {
            writeln!(csv, "tick,{}", cols.join(",")).map_err(|e| Error::io(&csv_path, e))?;
        }
        writeln!(csv, "{}", csv_row(tick, cols, &metrics)).map_err(|e| Error::io(&csv_path, e))?;

        let name = snapshot_file_name(tick);
        let path = dir.join(&name);
        fs::write(&path, write_pgrid(grid, tick)).map_err(|e| Error::io(&path, e))?;
        files.push(name);
        Ok(())
    })?;
    csv.flush().map_err(|e| Error::io(&csv_path, e))?;
    drop(csv);

    files.push(MANIFEST_FILE.to_string());
    let manifest = RunManifest {
        toolkit: TOOLKIT.to_string(),
        toolkit_version: TOOLKIT_VERSION.to_string(),
        rng_algorithm: RNG_ALGORITHM.to_string(),
        config: config.to_pairs().into_iter().collect(),
        start_tick,
        end_tick: outcome.end_tick,
        settled: outcome.settled,
        files,
        final_metrics: sim
            .metrics()
            .into_iter()
            .map(|(k, v)| (k, v.is_finite().then_some(v)))
            .collect(),
    };
    let path = dir.join(MANIFEST_FILE);
    let mut json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    json.push('\n');
    fs::write(&path, json).map_err(|e| Error::io(&path, e))?;
    Ok(manifest)
}

/// `f64` `Display` is the shortest text that parses back to the same value,
/// so rows are byte-stable.
pub(crate) fn csv_row(tick: u64, columns: &[String], metrics: &Metrics) -> String {
    let mut row = tick.to_string();
    for c in columns {
        row.push(',');
        // undefined metrics (NaN) are left empty
        if let Some(v) = metrics.get(c).filter(|v| !v.is_nan()) {
            row.push_str(&v.to_string());
        }
    }
    row
}
