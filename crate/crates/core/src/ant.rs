//! Corpse clustering and sorting by memory-driven ants.
//!
//! Each tick an ant steps to a random Moore neighbor and remembers what item
//! type (if any) lay in the cell it entered. `f` for a type is the number of
//! such sightings over the last `T` ticks divided by `T`, the most it could
//! have met walking one cell per tick. An unladen ant standing on an item of
//! type `t` picks it up with probability `(k1 / (k1 + f_t))^2`; a laden ant on
//! an empty cell drops its item with probability `(f_t / (k2 + f_t))^2`.
//! Isolated items get lifted and deposited where the same type is dense.

use serde::{Deserialize, Serialize};

use crate::emergence::{detect_clusters, largest_cluster_fraction, names, spatial_entropy};
use crate::engine::{
    neighborhood_into, run_to_trace, Boundary, CellCode, Grid, Metrics, NeighborhoodSpec, Position,
    RngStream, Schedule, Simulation, Trace,
};
use crate::error::{Error, Result};

pub type ItemType = u8;

/// Item types are rendered `A`, `B`, ... so at most 26 exist.
pub const MAX_ITEM_TYPES: usize = 26;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AntParams {
    pub width: usize,
    pub height: usize,
    pub boundary: Boundary,
    pub n_ants: usize,
    pub item_types: usize,
    pub items_per_type: usize,
    /// Pickup threshold constant.
    pub k1: f64,
    /// Drop threshold constant.
    pub k2: f64,
    /// Perception window `T` in ticks.
    pub memory_length: usize,
    /// Block side for the spatial entropy metric.
    pub entropy_block: usize,
}

impl Default for AntParams {
    fn default() -> Self {
        AntParams {
            width: 50,
            height: 50,
            boundary: Boundary::Toroidal,
            n_ants: 10,
            item_types: 1,
            items_per_type: 200,
            k1: 0.1,
            k2: 0.3,
            memory_length: 50,
            entropy_block: 10,
        }
    }
}

impl AntParams {
    pub fn validate(&self) -> Result<()> {
        if self.width == 0 || self.height == 0 {
            return Err(Error::config(
                "ant.width",
                "grid dimensions must be at least 1",
            ));
        }
        if !(self.k1 > 0.0 && self.k1.is_finite()) {
            return Err(Error::config("ant.k1", "must be a positive number"));
        }
        if !(self.k2 > 0.0 && self.k2.is_finite()) {
            return Err(Error::config("ant.k2", "must be a positive number"));
        }
        if self.memory_length == 0 {
            return Err(Error::config("ant.memory_length", "must be at least 1"));
        }
        if self.n_ants == 0 {
            return Err(Error::config("ant.n_ants", "must be at least 1"));
        }
        if self.item_types == 0 || self.item_types > MAX_ITEM_TYPES {
            return Err(Error::config(
                "ant.item_types",
                format!("must be between 1 and {MAX_ITEM_TYPES}"),
            ));
        }
        let cells = self.width * self.height;
        if self.items_per_type * self.item_types > cells {
            return Err(Error::config(
                "ant.items_per_type",
                format!(
                    "{} items of {} types do not fit on {cells} cells",
                    self.items_per_type, self.item_types
                ),
            ));
        }
        if self.entropy_block == 0
            || !self.width.is_multiple_of(self.entropy_block)
            || !self.height.is_multiple_of(self.entropy_block)
        {
            return Err(Error::config(
                "ant.entropy_block",
                format!("must divide {}x{}", self.width, self.height),
            ));
        }
        Ok(())
    }

    pub fn total_items(&self) -> usize {
        self.items_per_type * self.item_types
    }
}

/// The last `T` perceptions, one per tick, as a ring buffer.
///
/// Since a cell holds at most one item, one slot per tick records the
/// perception bit of every type at once; `counts[t]` is the number of set
/// bits for type `t` currently in the window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerceptionMemory {
    slots: Vec<Option<ItemType>>,
    head: usize,
    counts: Vec<usize>,
}

impl PerceptionMemory {
    /// An empty (all-zero) memory of `window` ticks.
    pub fn new(window: usize, item_types: usize) -> Self {
        assert!(window >= 1, "memory window must be at least 1");
        PerceptionMemory {
            slots: vec![None; window],
            head: 0,
            counts: vec![0; item_types],
        }
    }

    pub fn window(&self) -> usize {
        self.slots.len()
    }

    /// Pushes this tick's perception, evicting the oldest.
    pub fn record(&mut self, seen: Option<ItemType>) {
        if let Some(old) = self.slots[self.head] {
            self.counts[old as usize] -= 1;
        }
        if let Some(t) = seen {
            self.counts[t as usize] += 1;
        }
        self.slots[self.head] = seen;
        self.head = (self.head + 1) % self.slots.len();
    }

    /// Sightings of `item` within the window.
    pub fn count(&self, item: ItemType) -> usize {
        self.counts.get(item as usize).copied().unwrap_or(0)
    }
}

/// Sightings of `item` over the window divided by the window length.
/// Unfilled slots count as zero.
pub fn perceived_fraction(memory: &PerceptionMemory, item: ItemType) -> f64 {
    memory.count(item) as f64 / memory.window() as f64
}

pub fn pickup_probability(f: f64, k1: f64) -> Result<f64> {
    if k1.is_nan() || k1 <= 0.0 {
        return Err(Error::config("ant.k1", "must be positive"));
    }
    Ok(pickup(f, k1))
}

pub fn drop_probability(f: f64, k2: f64) -> Result<f64> {
    if k2.is_nan() || k2 <= 0.0 {
        return Err(Error::config("ant.k2", "must be positive"));
    }
    Ok(deposit(f, k2))
}

#[inline]
fn pickup(f: f64, k1: f64) -> f64 {
    let r = k1 / (k1 + f);
    r * r
}

#[inline]
fn deposit(f: f64, k2: f64) -> f64 {
    let r = f / (k2 + f);
    r * r
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AntState {
    pub position: Position,
    pub carrying: Option<ItemType>,
    pub memory: PerceptionMemory,
}

impl AntState {
    pub fn new(position: Position, memory_length: usize, item_types: usize) -> Self {
        AntState {
            position,
            carrying: None,
            memory: PerceptionMemory::new(memory_length, item_types),
        }
    }
}

/// What an ant did during one tick.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AntAction {
    Walked,
    PickedUp(ItemType),
    Dropped(ItemType),
}

/// One activation of one ant: move, perceive, then maybe pick up or drop.
///
/// Other ants and items never block movement. A laden ant cannot drop on an
/// occupied cell.
pub fn ant_tick(
    items: &mut Grid<Option<ItemType>>,
    ant: &mut AntState,
    params: &AntParams,
    rng: &mut RngStream,
    scratch: &mut Vec<Position>,
) -> AntAction {
    neighborhood_into(items, ant.position, NeighborhoodSpec::MOORE, scratch);
    if let Ok(&next) = rng.choose(scratch) {
        ant.position = next;
    }

    let underfoot = *items.get(ant.position);
    ant.memory.record(underfoot);

    match (ant.carrying, underfoot) {
        (None, Some(t)) => {
            let f = perceived_fraction(&ant.memory, t);
            if rng.bernoulli(pickup(f, params.k1)) {
                items.set(ant.position, None);
                ant.carrying = Some(t);
                return AntAction::PickedUp(t);
            }
        }
        (Some(t), None) => {
            let f = perceived_fraction(&ant.memory, t);
            if rng.bernoulli(deposit(f, params.k2)) {
                items.set(ant.position, Some(t));
                ant.carrying = None;
                return AntAction::Dropped(t);
            }
        }
        _ => {}
    }
    AntAction::Walked
}

/// Composite snapshot cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AntCell {
    Empty,
    Ant,
    Item(ItemType),
    AntOnItem(ItemType),
}

impl AntCell {
    pub fn item(&self) -> Option<ItemType> {
        match *self {
            AntCell::Item(t) | AntCell::AntOnItem(t) => Some(t),
            _ => None,
        }
    }
}

impl CellCode for AntCell {
    fn code(&self) -> char {
        match *self {
            AntCell::Empty => '.',
            AntCell::Ant => 'a',
            AntCell::Item(t) => (b'A' + t) as char,
            AntCell::AntOnItem(_) => '*',
        }
    }
}

/// Ants plus the item field they rearrange.
#[derive(Debug, Clone)]
pub struct AntModel {
    params: AntParams,
    items: Grid<Option<ItemType>>,
    ants: Vec<AntState>,
    rng: RngStream,
    tick: u64,
    scratch: Vec<Position>,
}

impl AntModel {
    /// Scatters items on distinct uniformly chosen cells (type 0 first), then
    /// drops each ant on a uniformly chosen cell.
    pub fn new(params: AntParams, seed: u64) -> Result<Self> {
        params.validate()?;
        let mut rng = RngStream::new(seed);
        let mut items = Grid::new(params.width, params.height, params.boundary, None)?;
        let cells = items.len();
        let picks = rng.sample_distinct(cells, params.total_items());
        for (n, idx) in picks.into_iter().enumerate() {
            let pos = items.position_of(idx);
            items.set(pos, Some((n / params.items_per_type) as ItemType));
        }
        let ants = (0..params.n_ants)
            .map(|_| {
                let idx = rng.uniform_index(cells).expect("grid is non-empty");
                AntState::new(
                    items.position_of(idx),
                    params.memory_length,
                    params.item_types,
                )
            })
            .collect();
        Ok(AntModel {
            params,
            items,
            ants,
            rng,
            tick: 0,
            scratch: Vec::with_capacity(8),
        })
    }

    pub fn params(&self) -> &AntParams {
        &self.params
    }

    pub fn tick(&self) -> u64 {
        self.tick
    }

    pub fn items(&self) -> &Grid<Option<ItemType>> {
        &self.items
    }

    pub fn ants(&self) -> &[AntState] {
        &self.ants
    }

    /// Activates every ant once in a fresh random order.
    pub fn run_tick(&mut self) {
        let order = self.rng.random_permutation(self.ants.len());
        for i in order {
            ant_tick(
                &mut self.items,
                &mut self.ants[i],
                &self.params,
                &mut self.rng,
                &mut self.scratch,
            );
        }
        self.tick += 1;
    }

    /// Items per type, on the grid plus carried.
    pub fn item_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.params.item_types];
        for t in self.items.cells().iter().flatten() {
            counts[*t as usize] += 1;
        }
        for t in self.ants.iter().filter_map(|a| a.carrying) {
            counts[t as usize] += 1;
        }
        counts
    }

    pub fn view(&self) -> Grid<AntCell> {
        let mut view = self.items.map(|_, c| match c {
            Some(t) => AntCell::Item(*t),
            None => AntCell::Empty,
        });
        for ant in &self.ants {
            let cell = view.get_mut(ant.position);
            *cell = match *cell {
                AntCell::Item(t) | AntCell::AntOnItem(t) => AntCell::AntOnItem(t),
                _ => AntCell::Ant,
            };
        }
        view
    }

    /// cluster_count, largest_cluster_fraction, spatial_entropy and carried.
    ///
    /// Clusters are Moore-connected same-type items on the grid. Entropy is
    /// NaN when no item lies on the grid.
    pub fn metrics(&self) -> Metrics {
        let clusters = detect_clusters(&self.items, |c| *c, NeighborhoodSpec::MOORE);
        let entropy = spatial_entropy(&self.items, self.params.entropy_block, Option::is_some)
            .unwrap_or(f64::NAN);
        let carried = self.ants.iter().filter(|a| a.carrying.is_some()).count();
        Metrics::from([
            (names::CLUSTER_COUNT.to_string(), clusters.len() as f64),
            (
                names::LARGEST_CLUSTER_FRACTION.to_string(),
                largest_cluster_fraction(&clusters, self.params.total_items()),
            ),
            (names::SPATIAL_ENTROPY.to_string(), entropy),
            (names::CARRIED.to_string(), carried as f64),
        ])
    }
}

impl Simulation for AntModel {
    type Cell = AntCell;

    fn tick(&self) -> u64 {
        self.tick
    }

    /// The item field never settles for good; always `false`.
    fn step(&mut self) -> bool {
        self.run_tick();
        false
    }

    fn view(&self) -> Grid<AntCell> {
        AntModel::view(self)
    }

    fn metrics(&self) -> Metrics {
        AntModel::metrics(self)
    }
}

/// Runs `ticks` ticks, recording the composite view and metrics at tick 0
/// and every `snapshot_every` ticks.
pub fn run_ant_model(
    params: AntParams,
    seed: u64,
    ticks: u64,
    snapshot_every: u64,
) -> Result<Trace<AntCell>> {
    let mut model = AntModel::new(params, seed)?;
    run_to_trace(
        &mut model,
        Schedule {
            ticks,
            snapshot_every,
            stop_when_settled: false,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractions_from_memory() {
        let mut m = PerceptionMemory::new(10, 2);
        assert_eq!(perceived_fraction(&m, 0), 0.0);
        for i in 0..10 {
            m.record(if i % 4 == 0 { Some(0) } else { None });
        }
        // sightings at i = 0, 4, 8
        assert_eq!(m.count(0), 3);
        assert!((perceived_fraction(&m, 0) - 0.3).abs() < 1e-15);
        assert_eq!(perceived_fraction(&m, 1), 0.0);

        let mut full = PerceptionMemory::new(10, 1);
        for _ in 0..10 {
            full.record(Some(0));
        }
        assert_eq!(perceived_fraction(&full, 0), 1.0);
    }

    #[test]
    fn memory_evicts_oldest() {
        let mut m = PerceptionMemory::new(3, 1);
        m.record(Some(0));
        m.record(None);
        m.record(None);
        assert_eq!(m.count(0), 1);
        m.record(None);
        assert_eq!(m.count(0), 0);
    }

    #[test]
    fn probability_examples() {
        assert_eq!(pickup_probability(0.0, 0.1).unwrap(), 1.0);
        assert_eq!(pickup_probability(0.2, 0.2).unwrap(), 0.25);
        assert!((pickup_probability(0.3, 0.1).unwrap() - 0.0625).abs() < 1e-15);
        assert_eq!(drop_probability(0.0, 0.3).unwrap(), 0.0);
        assert_eq!(drop_probability(0.3, 0.3).unwrap(), 0.25);
        assert!((drop_probability(0.45, 0.15).unwrap() - 0.5625).abs() < 1e-15);
    }

    #[test]
    fn non_positive_constants_rejected() {
        assert!(pickup_probability(0.5, 0.0).is_err());
        assert!(pickup_probability(0.5, -1.0).is_err());
        assert!(drop_probability(0.5, 0.0).is_err());
        assert!(drop_probability(0.5, f64::NAN).is_err());
    }

    #[test]
    fn too_many_items_rejected() {
        let p = AntParams {
            width: 5,
            height: 5,
            items_per_type: 13,
            item_types: 2,
            entropy_block: 5,
            ..AntParams::default()
        };
        let err = AntModel::new(p, 1).unwrap_err();
        assert!(err.is_config());
    }

    fn one_item_world() -> (Grid<Option<ItemType>>, AntParams) {
        let params = AntParams {
            width: 3,
            height: 3,
            boundary: Boundary::Toroidal,
            items_per_type: 8,
            entropy_block: 3,
            ..AntParams::default()
        };
        // every cell but the centre holds an item
        let g = Grid::from_fn(3, 3, Boundary::Toroidal, |p| {
            (p != Position::new(1, 1)).then_some(0)
        })
        .unwrap();
        (g, params)
    }

    #[test]
    fn laden_ant_cannot_drop_on_item() {
        let (mut g, params) = one_item_world();
        let mut rng = RngStream::new(4);
        let mut scratch = Vec::new();
        for _ in 0..200 {
            let mut ant = AntState::new(Position::new(1, 1), 5, 1);
            ant.carrying = Some(0);
            let action = ant_tick(&mut g, &mut ant, &params, &mut rng, &mut scratch);
            assert_eq!(action, AntAction::Walked);
            assert_eq!(ant.carrying, Some(0));
        }
    }

    #[test]
    fn fresh_ant_with_long_memory_always_picks_up() {
        // f = 1/T after perceiving the item itself; p -> 1 as T grows.
        let (g0, params) = one_item_world();
        let mut scratch = Vec::new();
        for seed in 0..200 {
            let mut g = g0.clone();
            let mut rng = RngStream::new(seed);
            let mut ant = AntState::new(Position::new(1, 1), 10_000_000, 1);
            let action = ant_tick(&mut g, &mut ant, &params, &mut rng, &mut scratch);
            assert_eq!(action, AntAction::PickedUp(0));
            assert_eq!(ant.carrying, Some(0));
            assert_eq!(*g.get(ant.position), None);
        }
    }

    #[test]
    fn pickup_rate_matches_probability() {
        let (g0, params) = one_item_world();
        let t = 10;
        let p = pickup(1.0 / t as f64, params.k1);
        let mut rng = RngStream::new(77);
        let mut scratch = Vec::new();
        let trials = 20_000;
        let mut hits = 0;
        for _ in 0..trials {
            let mut g = g0.clone();
            let mut ant = AntState::new(Position::new(1, 1), t, 1);
            if let AntAction::PickedUp(_) =
                ant_tick(&mut g, &mut ant, &params, &mut rng, &mut scratch)
            {
                hits += 1;
            }
        }
        let rate = hits as f64 / trials as f64;
        let sd = (p * (1.0 - p) / trials as f64).sqrt();
        assert!((rate - p).abs() < 5.0 * sd, "rate {rate} vs p {p}");
    }

    #[test]
    fn items_conserved_every_tick() {
        let params = AntParams {
            width: 20,
            height: 20,
            n_ants: 15,
            item_types: 3,
            items_per_type: 30,
            entropy_block: 10,
            ..AntParams::default()
        };
        let mut m = AntModel::new(params, 9).unwrap();
        assert_eq!(m.item_counts(), vec![30, 30, 30]);
        for _ in 0..2_000 {
            m.run_tick();
            assert_eq!(m.item_counts(), vec![30, 30, 30]);
            assert!(m.ants().iter().all(|a| a.memory.window() == 50));
        }
    }

    #[test]
    fn zero_ticks_only_initial_snapshot() {
        let trace = run_ant_model(AntParams::default(), 1, 0, 10).unwrap();
        assert_eq!(trace.ticks(), vec![0]);
    }

    #[test]
    fn same_seed_same_trace() {
        let p = AntParams {
            width: 20,
            height: 20,
            items_per_type: 40,
            ..AntParams::default()
        };
        let a = run_ant_model(p.clone(), 5, 500, 100).unwrap();
        let b = run_ant_model(p, 5, 500, 100).unwrap();
        assert_eq!(a.ticks(), vec![0, 100, 200, 300, 400, 500]);
        assert_eq!(a, b);
    }

    #[test]
    fn view_codes() {
        assert_eq!(AntCell::Item(2).code(), 'C');
        assert_eq!(AntCell::AntOnItem(0).code(), '*');
        assert_eq!(AntCell::Ant.code(), 'a');
        assert_eq!(AntCell::Empty.code(), '.');
    }
}
