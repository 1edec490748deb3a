//! Observation layer: clusters as second-order structures, aggregate
//! metrics, the emergence predicate and nested hyperstructures.

mod clusters;
mod hyper;
mod metrics;
mod predicate;

pub use clusters::{detect_clusters, largest_cluster_fraction, Cluster};
pub use hyper::{build_hyperstructure, Structure, StructureLevel};
pub use metrics::{like_fraction_by, mean_like_neighbor_fraction, spatial_entropy, LikeFraction};
pub use predicate::{emergence_test, Arity, EmergenceVerdict, PropertyEvaluator, Truth};

/// Metric names used in traces, CSV headers and manifests.
pub mod names {
    pub const CLUSTER_COUNT: &str = "cluster_count";
    pub const LARGEST_CLUSTER_FRACTION: &str = "largest_cluster_fraction";
    pub const SPATIAL_ENTROPY: &str = "spatial_entropy";
    pub const MEAN_LIKE_FRACTION: &str = "mean_like_fraction";
    pub const MINORITY_FRACTION: &str = "minority_fraction";
    pub const MOVES: &str = "moves";
    pub const FLIPS: &str = "flips";
    pub const CARRIED: &str = "carried";
}
