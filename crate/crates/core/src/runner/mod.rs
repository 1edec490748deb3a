//! Batch experiments: config parsing, single runs with reproducibility
//! manifests, and parameter sweeps.

pub mod config;
pub mod experiment;
pub mod sweep;

pub use config::{parse_config, ModelConfig, ModelKind, RunConfig};
pub use experiment::{run_experiment, RunManifest};
pub use sweep::{sweep, SweepAxis, SweepSummary};

/// Environment variable that, when set, is prefixed to relative output
/// directories by the command-line front end.
pub const OUTPUT_ROOT_ENV: &str = "ARTSOC_OUTPUT_ROOT";
