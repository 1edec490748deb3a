use super::grid::Grid;
use super::pgrid::CellCode;
use super::trace::{Metrics, Trace};
use crate::error::{Error, Result};

/// A model that advances in discrete ticks and can be observed.
pub trait Simulation {
    type Cell: Clone + CellCode;

    /// Ticks completed so far.
    fn tick(&self) -> u64;

    /// Advances one tick. Returns `true` when nothing changed, i.e. the
    /// model has reached a fixed point.
    fn step(&mut self) -> bool;

    fn view(&self) -> Grid<Self::Cell>;

    fn metrics(&self) -> Metrics;
}

/// Observation schedule for [`drive`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Schedule {
    pub ticks: u64,
    pub snapshot_every: u64,
    /// Stop at the first tick that changes nothing.
    pub stop_when_settled: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Outcome {
    pub end_tick: u64,
    /// The final step changed nothing.
    pub settled: bool,
}

/// Runs `sim` for up to `schedule.ticks` ticks, handing `record` the state
/// at tick 0, at every multiple of `snapshot_every`, and at the settling
/// tick when the run stops early.
pub fn drive<S, F>(sim: &mut S, schedule: Schedule, mut record: F) -> Result<Outcome>
where
    S: Simulation,
    F: FnMut(u64, &Grid<S::Cell>, Metrics) -> Result<()>,
{
    if schedule.snapshot_every == 0 {
        return Err(Error::config("snapshot_every", "must be at least 1"));
    }
    record(sim.tick(), &sim.view(), sim.metrics())?;
    let mut settled = false;
    while sim.tick() < schedule.ticks {
        settled = sim.step();
        let stop = settled && schedule.stop_when_settled;
        if sim.tick().is_multiple_of(schedule.snapshot_every) || stop {
            record(sim.tick(), &sim.view(), sim.metrics())?;
        }
        if stop {
            break;
        }
    }
    Ok(Outcome {
        end_tick: sim.tick(),
        settled,
    })
}

/// [`drive`] into an in-memory [`Trace`].
pub fn run_to_trace<S: Simulation>(sim: &mut S, schedule: Schedule) -> Result<Trace<S::Cell>> {
    let mut trace = Trace::new();
    drive(sim, schedule, |tick, grid, metrics| {
        trace.record_snapshot(grid, tick, metrics)
    })?;
    Ok(trace)
}
