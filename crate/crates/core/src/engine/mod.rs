//! Shared simulation substrate: the lattice, neighborhoods, seeded
//! randomness, run traces and the snapshot text format.

mod grid;
mod neighborhood;
pub mod pgrid;
pub mod rng;
mod sim;
mod trace;

pub use grid::{Boundary, Grid, Position};
pub use neighborhood::{neighborhood, neighborhood_into, NeighborhoodKind, NeighborhoodSpec};
pub use pgrid::{parse_pgrid, write_pgrid, CellCode};
pub use rng::{random_permutation, uniform_index, RngStream, RNG_ALGORITHM};
pub use sim::{drive, run_to_trace, Outcome, Schedule, Simulation};
pub use trace::{Metrics, Trace, TraceEntry};
