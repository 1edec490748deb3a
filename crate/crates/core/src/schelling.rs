//! Schelling's two-color segregation automaton.
//!
//! Residents look at their eight Moore neighbors. Under the threshold table a
//! resident with `n` occupied neighbors needs at least `r(n)` of its own
//! color: `r(2) = 1`, `r(3..=5) = 2`, `r(6..=8) = 3`, and `r(0) = r(1) = 0`.
//! The fraction rule instead needs a like fraction of at least `p`. An
//! unhappy resident moves to a vacancy where it would be happy.

use serde::{Deserialize, Serialize};

use crate::emergence::{
    detect_clusters, largest_cluster_fraction, like_fraction_by, mean_like_neighbor_fraction,
    names, LikeFraction,
};
use crate::engine::{
    neighborhood_into, run_to_trace, Boundary, CellCode, Grid, Metrics, NeighborhoodSpec, Position,
    RngStream, Schedule, Simulation, Trace,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Color {
    Black,
    White,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SchellingCell {
    Vacant,
    Resident(Color),
}

impl SchellingCell {
    pub fn color(&self) -> Option<Color> {
        match *self {
            SchellingCell::Resident(c) => Some(c),
            SchellingCell::Vacant => None,
        }
    }
}

impl CellCode for SchellingCell {
    fn code(&self) -> char {
        match self {
            SchellingCell::Vacant => '.',
            SchellingCell::Resident(Color::Black) => 'B',
            SchellingCell::Resident(Color::White) => 'W',
        }
    }
}

fn color_of(c: &SchellingCell) -> Option<Color> {
    c.color()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum RuleVariant {
    /// The 2 / 3-5 / 6-8 neighbor table.
    ThresholdTable,
    /// Satisfied when the like fraction is at least the preference.
    Fraction(f64),
}

/// Where an unhappy resident goes among the vacancies that would satisfy it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relocation {
    /// Smallest Chebyshev distance, ties broken uniformly at random.
    #[default]
    Nearest,
    /// Uniformly random.
    Random,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchellingParams {
    pub width: usize,
    pub height: usize,
    pub boundary: Boundary,
    /// Share of cells left vacant in the initial layout, in `[0, 1)`.
    pub vacancy_fraction: f64,
    pub rule: RuleVariant,
    pub relocation: Relocation,
    /// Share of residents removed from the integrated layout before running.
    pub perturb_fraction: f64,
}

impl Default for SchellingParams {
    fn default() -> Self {
        SchellingParams {
            width: 20,
            height: 20,
            boundary: Boundary::Toroidal,
            vacancy_fraction: 0.1,
            rule: RuleVariant::ThresholdTable,
            relocation: Relocation::Nearest,
            perturb_fraction: 0.05,
        }
    }
}

impl SchellingParams {
    pub fn validate(&self) -> Result<()> {
        if self.width == 0 || self.height == 0 {
            return Err(Error::config(
                "schelling.width",
                "grid dimensions must be at least 1",
            ));
        }
        if !self.width.is_multiple_of(2) || !self.height.is_multiple_of(2) {
            return Err(Error::config(
                "schelling.width",
                format!(
                    "checkerboard layout needs even dimensions, got {}x{}",
                    self.width, self.height
                ),
            ));
        }
        if !(0.0..1.0).contains(&self.vacancy_fraction) {
            return Err(Error::config(
                "schelling.vacancy_fraction",
                "must lie in [0, 1)",
            ));
        }
        if !(0.0..=1.0).contains(&self.perturb_fraction) {
            return Err(Error::config(
                "schelling.perturb_fraction",
                "must lie in [0, 1]",
            ));
        }
        if let RuleVariant::Fraction(p) = self.rule {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::config("schelling.preference", "must lie in [0, 1]"));
            }
        }
        Ok(())
    }
}

/// Like-color counts among the occupied Moore neighbors of the resident at `pos`.
pub fn like_fraction(world: &Grid<SchellingCell>, pos: Position) -> Result<LikeFraction> {
    like_fraction_by(world, pos, color_of)
}

/// Same-color neighbors required under the threshold table.
pub fn required_same(occupied_neighbors: usize) -> usize {
    match occupied_neighbors {
        0 | 1 => 0,
        2 => 1,
        3..=5 => 2,
        _ => 3,
    }
}

pub fn satisfied_with(lf: LikeFraction, rule: RuleVariant) -> bool {
    match rule {
        RuleVariant::ThresholdTable => lf.same >= required_same(lf.total),
        RuleVariant::Fraction(p) => lf.fraction.is_none_or(|f| f >= p),
    }
}

pub fn is_satisfied(world: &Grid<SchellingCell>, pos: Position, rule: RuleVariant) -> Result<bool> {
    Ok(satisfied_with(like_fraction(world, pos)?, rule))
}

/// Like counts for a `color` resident standing at `at`, treating `ignore`
/// (the mover's current cell) as vacant.
fn hypothetical(
    world: &Grid<SchellingCell>,
    at: Position,
    color: Color,
    ignore: Position,
    scratch: &mut Vec<Position>,
) -> LikeFraction {
    neighborhood_into(world, at, NeighborhoodSpec::MOORE, scratch);
    let (mut same, mut total) = (0, 0);
    for &n in scratch.iter() {
        if n == ignore {
            continue;
        }
        if let Some(c) = world.get(n).color() {
            total += 1;
            if c == color {
                same += 1;
            }
        }
    }
    LikeFraction::new(same, total)
}

/// A vacancy that would satisfy the resident at `pos`, or `None` if there is none.
///
/// Every vacancy is evaluated as though the resident already stood there
/// with its current cell vacated. Candidates are scanned in row-major order;
/// `Nearest` keeps those at minimal Chebyshev distance and draws one of them
/// with `uniform_index`, `Random` draws among all of them.
pub fn find_relocation(
    world: &Grid<SchellingCell>,
    pos: Position,
    rule: RuleVariant,
    policy: Relocation,
    rng: &mut RngStream,
) -> Result<Option<Position>> {
    let color = world.get(pos).color().ok_or(Error::NoResident(pos))?;
    let mut scratch = Vec::with_capacity(8);
    let mut best = u64::MAX;
    let mut candidates = Vec::new();
    for (v, cell) in world.iter() {
        if v == pos || *cell != SchellingCell::Vacant {
            continue;
        }
        if !satisfied_with(hypothetical(world, v, color, pos, &mut scratch), rule) {
            continue;
        }
        match policy {
            Relocation::Random => candidates.push(v),
            Relocation::Nearest => {
                let d = world.chebyshev_distance(pos, v);
                if d < best {
                    best = d;
                    candidates.clear();
                }
                if d == best {
                    candidates.push(v);
                }
            }
        }
    }
    if candidates.is_empty() {
        return Ok(None);
    }
    Ok(Some(*rng.choose(&candidates)?))
}

/// One asynchronous sweep: each resident, in a fresh random order, moves if
/// unhappy and a satisfying vacancy exists. Returns the number of moves.
pub fn schelling_sweep(
    world: &mut Grid<SchellingCell>,
    rule: RuleVariant,
    policy: Relocation,
    rng: &mut RngStream,
) -> usize {
    let mut residents: Vec<Position> = world
        .iter()
        .filter(|(_, c)| c.color().is_some())
        .map(|(p, _)| p)
        .collect();
    let order = rng.random_permutation(residents.len());
    let mut moves = 0;
    for i in order {
        let pos = residents[i];
        if is_satisfied(world, pos, rule).expect("tracked position holds a resident") {
            continue;
        }
        if let Some(dest) = find_relocation(world, pos, rule, policy, rng).expect("resident") {
            world.swap(pos, dest);
            residents[i] = dest;
            moves += 1;
        }
    }
    moves
}

/// Checkerboard coloring with `round(vacancy_fraction * cells)` cells,
/// chosen uniformly, left vacant. `(x + y)` even is black.
pub fn integrated_initial(
    params: &SchellingParams,
    rng: &mut RngStream,
) -> Result<Grid<SchellingCell>> {
    params.validate()?;
    let mut grid = Grid::from_fn(params.width, params.height, params.boundary, |p| {
        SchellingCell::Resident(if (p.x + p.y) % 2 == 0 {
            Color::Black
        } else {
            Color::White
        })
    })?;
    let vacancies = (params.vacancy_fraction * grid.len() as f64).round() as usize;
    for idx in rng.sample_distinct(grid.len(), vacancies) {
        let pos = grid.position_of(idx);
        grid.set(pos, SchellingCell::Vacant);
    }
    Ok(grid)
}

/// `[black, white]` resident counts.
pub fn color_counts(world: &Grid<SchellingCell>) -> [usize; 2] {
    world.cells().iter().fold([0, 0], |[b, w], c| match c {
        SchellingCell::Resident(Color::Black) => [b + 1, w],
        SchellingCell::Resident(Color::White) => [b, w + 1],
        SchellingCell::Vacant => [b, w],
    })
}

/// Removes `k` uniformly chosen residents. Returns the new color counts.
pub fn perturb(
    world: &mut Grid<SchellingCell>,
    k: usize,
    rng: &mut RngStream,
) -> Result<[usize; 2]> {
    let residents: Vec<Position> = world
        .iter()
        .filter(|(_, c)| c.color().is_some())
        .map(|(p, _)| p)
        .collect();
    if k > residents.len() {
        return Err(Error::config(
            "schelling.perturb_fraction",
            format!("cannot remove {k} of {} residents", residents.len()),
        ));
    }
    for i in rng.sample_distinct(residents.len(), k) {
        world.set(residents[i], SchellingCell::Vacant);
    }
    Ok(color_counts(world))
}

#[derive(Debug, Clone)]
pub struct SchellingModel {
    params: SchellingParams,
    grid: Grid<SchellingCell>,
    rng: RngStream,
    sweep: u64,
    last_moves: usize,
    counts: [usize; 2],
}

impl SchellingModel {
    /// The integrated layout with `round(perturb_fraction * residents)`
    /// residents removed.
    pub fn new(params: SchellingParams, seed: u64) -> Result<Self> {
        let mut rng = RngStream::new(seed);
        let mut grid = integrated_initial(&params, &mut rng)?;
        let residents: usize = color_counts(&grid).iter().sum();
        let k = (params.perturb_fraction * residents as f64).round() as usize;
        let counts = perturb(&mut grid, k, &mut rng)?;
        Ok(SchellingModel {
            params,
            grid,
            rng,
            sweep: 0,
            last_moves: 0,
            counts,
        })
    }

    pub fn grid(&self) -> &Grid<SchellingCell> {
        &self.grid
    }

    pub fn params(&self) -> &SchellingParams {
        &self.params
    }

    pub fn sweep_count(&self) -> u64 {
        self.sweep
    }

    /// Color totals fixed after perturbation.
    pub fn conserved_counts(&self) -> [usize; 2] {
        self.counts
    }

    /// Runs one sweep and returns the number of moves.
    pub fn sweep(&mut self) -> usize {
        self.last_moves = schelling_sweep(
            &mut self.grid,
            self.params.rule,
            self.params.relocation,
            &mut self.rng,
        );
        self.sweep += 1;
        self.last_moves
    }

    /// mean_like_fraction (NaN when undefined), cluster_count,
    /// largest_cluster_fraction and moves of the latest sweep.
    pub fn metrics(&self) -> Metrics {
        schelling_metrics(&self.grid, self.last_moves)
    }
}

pub fn schelling_metrics(grid: &Grid<SchellingCell>, moves: usize) -> Metrics {
    let clusters = detect_clusters(grid, color_of, NeighborhoodSpec::MOORE);
    let residents: usize = color_counts(grid).iter().sum();
    Metrics::from([
        (
            names::MEAN_LIKE_FRACTION.to_string(),
            mean_like_neighbor_fraction(grid, color_of).unwrap_or(f64::NAN),
        ),
        (names::CLUSTER_COUNT.to_string(), clusters.len() as f64),
        (
            names::LARGEST_CLUSTER_FRACTION.to_string(),
            largest_cluster_fraction(&clusters, residents),
        ),
        (names::MOVES.to_string(), moves as f64),
    ])
}

impl Simulation for SchellingModel {
    type Cell = SchellingCell;

    fn tick(&self) -> u64 {
        self.sweep_count()
    }

    /// One sweep; settled when it changed nothing.
    fn step(&mut self) -> bool {
        self.sweep() == 0
    }

    fn view(&self) -> Grid<SchellingCell> {
        self.grid.clone()
    }

    fn metrics(&self) -> Metrics {
        SchellingModel::metrics(self)
    }
}

/// Sweeps until one makes no change or `max_sweeps` is reached. Records sweep
/// 0, every `snapshot_every`-th sweep, and the settled state if the run ends
/// between snapshot ticks.
pub fn run_schelling(
    params: SchellingParams,
    seed: u64,
    max_sweeps: u64,
    snapshot_every: u64,
) -> Result<Trace<SchellingCell>> {
    let mut model = SchellingModel::new(params, seed)?;
    run_to_trace(
        &mut model,
        Schedule {
            ticks: max_sweeps,
            snapshot_every,
            stop_when_settled: true,
        },
    )
}
