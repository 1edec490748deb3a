use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::grid::Grid;
use crate::error::{Error, Result};

/// Named scalar observations; sorted by name so CSV columns are stable.
pub type Metrics = BTreeMap<String, f64>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry<T> {
    pub tick: u64,
    pub snapshot: Grid<T>,
    pub metrics: Metrics,
}

/// Ordered record of a run: snapshots and metrics at strictly increasing ticks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trace<T> {
    entries: Vec<TraceEntry<T>>,
}

impl<T> Default for Trace<T> {
    fn default() -> Self {
        Trace {
            entries: Vec::new(),
        }
    }
}

impl<T: Clone> Trace<T> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends a copy of `world` at `tick`.
    pub fn record_snapshot(&mut self, world: &Grid<T>, tick: u64, metrics: Metrics) -> Result<()> {
        if let Some(last) = self.entries.last() {
            if tick <= last.tick {
                return Err(Error::TraceOrder {
                    last: last.tick,
                    got: tick,
                });
            }
            assert_eq!(
                (world.width(), world.height()),
                (last.snapshot.width(), last.snapshot.height()),
                "snapshot dimensions changed mid-trace"
            );
        }
        self.entries.push(TraceEntry {
            tick,
            snapshot: world.clone(),
            metrics,
        });
        Ok(())
    }
}

impl<T> Trace<T> {
    pub fn entries(&self) -> &[TraceEntry<T>] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn first(&self) -> Option<&TraceEntry<T>> {
        self.entries.first()
    }

    pub fn last(&self) -> Option<&TraceEntry<T>> {
        self.entries.last()
    }

    pub fn ticks(&self) -> Vec<u64> {
        self.entries.iter().map(|e| e.tick).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{Boundary, Position};

    fn world() -> Grid<u8> {
        Grid::from_fn(4, 3, Boundary::Toroidal, |p| (p.x * 3 + p.y) as u8).unwrap()
    }

    #[test]
    fn first_snapshot() {
        let mut t = Trace::new();
        t.record_snapshot(&world(), 0, Metrics::new()).unwrap();
        assert_eq!(t.len(), 1);
    }

    #[test]
    fn ticks_recorded_in_order() {
        let mut t = Trace::new();
        t.record_snapshot(&world(), 0, Metrics::new()).unwrap();
        t.record_snapshot(&world(), 5, Metrics::new()).unwrap();
        assert_eq!(t.ticks(), vec![0, 5]);
    }

    #[test]
    fn non_increasing_tick_rejected() {
        let mut t = Trace::new();
        t.record_snapshot(&world(), 3, Metrics::new()).unwrap();
        assert!(matches!(
            t.record_snapshot(&world(), 3, Metrics::new()),
            Err(Error::TraceOrder { last: 3, got: 3 })
        ));
        assert!(t.record_snapshot(&world(), 1, Metrics::new()).is_err());
        assert_eq!(t.len(), 1);
    }

    #[test]
    fn snapshot_matches_world_and_does_not_alias() {
        let mut w = world();
        let mut t = Trace::new();
        let mut m = Metrics::new();
        m.insert("x".into(), 1.5);
        t.record_snapshot(&w, 0, m.clone()).unwrap();
        let snap = &t.entries()[0].snapshot;
        for pos in w.positions() {
            assert_eq!(snap.get(pos), w.get(pos));
        }
        assert_eq!(t.entries()[0].metrics, m);

        let before = t.entries()[0].snapshot.clone();
        w.set(Position::new(1, 1), 200);
        assert_eq!(t.entries()[0].snapshot, before);
        assert_ne!(t.entries()[0].snapshot, w);
    }
}
