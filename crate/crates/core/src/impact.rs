//! Dynamic social impact on a fully occupied torus.
//!
//! Every agent holds a binary attitude and two fixed strengths. The pull to
//! change comes from all opposing agents, each weighted by persuasiveness
//! over distance^e; the pull to stay comes from the agent's own
//! supportiveness (at distance 1) plus all like-minded agents weighted by
//! supportiveness over distance^e. All agents update at once and flip when
//! the net impact is strictly positive. Nobody moves.
//!
//! Sources combine linearly by default. [`Aggregation::RootSumSquare`]
//! instead takes the square root of the summed squared terms, the
//! diminishing-returns form of Nowak, Szamrej and Latane (1990). Either way
//! the formula is an implementation choice; the qualitative behavior
//! (clustering of attitudes, survival of a minority) is what is studied.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::emergence::{
    detect_clusters, largest_cluster_fraction, mean_like_neighbor_fraction, names,
};
use crate::engine::{
    run_to_trace, Boundary, CellCode, Grid, Metrics, NeighborhoodSpec, Position, RngStream,
    Schedule, Simulation, Trace,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Attitude {
    Positive,
    Negative,
}

impl Attitude {
    pub fn flipped(self) -> Self {
        match self {
            Attitude::Positive => Attitude::Negative,
            Attitude::Negative => Attitude::Positive,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SocialAgent {
    pub attitude: Attitude,
    pub persuasiveness: f64,
    pub supportiveness: f64,
}

impl CellCode for SocialAgent {
    fn code(&self) -> char {
        match self.attitude {
            Attitude::Positive => '+',
            Attitude::Negative => '-',
        }
    }
}

fn attitude_of(a: &SocialAgent) -> Option<Attitude> {
    Some(a.attitude)
}

/// How individual source terms `strength / d^e` combine into one impact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Aggregation {
    /// Plain sum.
    #[default]
    Linear,
    /// `sqrt(sum of squares)`.
    RootSumSquare,
}

impl Aggregation {
    pub fn as_str(self) -> &'static str {
        match self {
            Aggregation::Linear => "linear",
            Aggregation::RootSumSquare => "root-sum-square",
        }
    }
}

impl std::str::FromStr for Aggregation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "linear" => Ok(Aggregation::Linear),
            "root-sum-square" => Ok(Aggregation::RootSumSquare),
            other => Err(format!(
                "expected `linear` or `root-sum-square`, got `{other}`"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImpactParams {
    pub width: usize,
    pub height: usize,
    pub distance_exponent: f64,
    pub aggregation: Aggregation,
    /// Strengths are drawn uniformly from `(0, p_max]` and `(0, s_max]`.
    pub p_max: f64,
    pub s_max: f64,
    /// Share of agents starting with the negative (minority) attitude.
    pub minority_fraction: f64,
}

impl Default for ImpactParams {
    fn default() -> Self {
        ImpactParams {
            width: 20,
            height: 20,
            distance_exponent: 2.0,
            aggregation: Aggregation::Linear,
            p_max: 1.0,
            s_max: 1.0,
            minority_fraction: 0.3,
        }
    }
}

impl ImpactParams {
    pub fn validate(&self) -> Result<()> {
        if self.width == 0 || self.height == 0 {
            return Err(Error::config(
                "impact.width",
                "grid dimensions must be at least 1",
            ));
        }
        if !(self.distance_exponent >= 0.0 && self.distance_exponent.is_finite()) {
            return Err(Error::config(
                "impact.distance_exponent",
                "must be a finite value >= 0",
            ));
        }
        if !(self.p_max > 0.0 && self.p_max.is_finite()) {
            return Err(Error::config("impact.p_max", "must be positive"));
        }
        if !(self.s_max > 0.0 && self.s_max.is_finite()) {
            return Err(Error::config("impact.s_max", "must be positive"));
        }
        if !(0.0..=1.0).contains(&self.minority_fraction) {
            return Err(Error::config(
                "impact.minority_fraction",
                "must lie in [0, 1]",
            ));
        }
        Ok(())
    }
}

/// Persuasive minus supportive impact on the agent at `pos`.
///
/// `d` is the minimum-image Euclidean distance on the torus. Positive means
/// the agent is pushed to flip.
pub fn net_impact(world: &Grid<SocialAgent>, pos: Position, params: &ImpactParams) -> f64 {
    let me = world.get(pos);
    let mut acc = Impact::new(params.aggregation, me.supportiveness);
    for (q, other) in world.iter() {
        if q == pos {
            continue;
        }
        let w = world
            .euclidean_distance(pos, q)
            .powf(params.distance_exponent);
        if other.attitude == me.attitude {
            acc.support(other.supportiveness / w);
        } else {
            acc.persuade(other.persuasiveness / w);
        }
    }
    acc.net()
}

struct Impact {
    aggregation: Aggregation,
    persuasive: f64,
    supportive: f64,
}

impl Impact {
    fn new(aggregation: Aggregation, self_support: f64) -> Self {
        let mut acc = Impact {
            aggregation,
            persuasive: 0.0,
            supportive: 0.0,
        };
        acc.support(self_support);
        acc
    }

    #[inline]
    fn term(&self, x: f64) -> f64 {
        match self.aggregation {
            Aggregation::Linear => x,
            Aggregation::RootSumSquare => x * x,
        }
    }

    #[inline]
    fn support(&mut self, x: f64) {
        self.supportive += self.term(x);
    }

    #[inline]
    fn persuade(&mut self, x: f64) {
        self.persuasive += self.term(x);
    }

    fn net(&self) -> f64 {
        match self.aggregation {
            Aggregation::Linear => self.persuasive - self.supportive,
            Aggregation::RootSumSquare => self.persuasive.sqrt() - self.supportive.sqrt(),
        }
    }
}

/// Precomputed `1 / d^e` for every torus displacement.
#[derive(Debug, Clone)]
struct Kernel {
    width: usize,
    height: usize,
    aggregation: Aggregation,
    weights: Vec<f64>,
}

impl Kernel {
    fn new(world: &Grid<SocialAgent>, params: &ImpactParams) -> Self {
        let exponent = params.distance_exponent;
        let origin = Position::new(0, 0);
        let weights = world
            .positions()
            .map(|p| {
                if p == origin {
                    0.0
                } else {
                    1.0 / world.euclidean_distance(origin, p).powf(exponent)
                }
            })
            .collect();
        Kernel {
            width: world.width(),
            height: world.height(),
            aggregation: params.aggregation,
            weights,
        }
    }

    fn weight(&self, from: Position, to: Position) -> f64 {
        let dx = (to.x + self.width - from.x) % self.width;
        let dy = (to.y + self.height - from.y) % self.height;
        self.weights[dy * self.width + dx]
    }

    fn net(&self, world: &Grid<SocialAgent>, pos: Position) -> f64 {
        let me = world.get(pos);
        let mut acc = Impact::new(self.aggregation, me.supportiveness);
        for (q, other) in world.iter() {
            if q == pos {
                continue;
            }
            let w = self.weight(pos, q);
            if other.attitude == me.attitude {
                acc.support(other.supportiveness * w);
            } else {
                acc.persuade(other.persuasiveness * w);
            }
        }
        acc.net()
    }
}

fn sweep_with(world: &mut Grid<SocialAgent>, kernel: &Kernel) -> usize {
    let frozen = &*world;
    let flips: Vec<bool> = (0..frozen.len())
        .into_par_iter()
        .map(|i| kernel.net(frozen, frozen.position_of(i)) > 0.0)
        .collect();
    let mut count = 0;
    for (i, flip) in flips.into_iter().enumerate() {
        if flip {
            let pos = world.position_of(i);
            let agent = world.get_mut(pos);
            agent.attitude = agent.attitude.flipped();
            count += 1;
        }
    }
    count
}

/// Synchronous update on the pre-sweep state. Returns the number of flips.
pub fn impact_sweep(world: &mut Grid<SocialAgent>, params: &ImpactParams) -> usize {
    let kernel = Kernel::new(world, params);
    sweep_with(world, &kernel)
}

/// `min(#positive, #negative) / #agents`.
pub fn minority_fraction(world: &Grid<SocialAgent>) -> f64 {
    let positive = world
        .cells()
        .iter()
        .filter(|a| a.attitude == Attitude::Positive)
        .count();
    positive.min(world.len() - positive) as f64 / world.len() as f64
}

#[derive(Debug, Clone)]
pub struct ImpactModel {
    params: ImpactParams,
    grid: Grid<SocialAgent>,
    kernel: Kernel,
    sweep: u64,
    last_flips: usize,
}

impl ImpactModel {
    /// `round(minority_fraction * N)` uniformly chosen agents start negative.
    /// Strengths are then drawn per cell in row-major order, persuasiveness
    /// before supportiveness.
    pub fn new(params: ImpactParams, seed: u64) -> Result<Self> {
        params.validate()?;
        let mut rng = RngStream::new(seed);
        let n = params.width * params.height;
        let k = (params.minority_fraction * n as f64).round() as usize;
        let mut negative = vec![false; n];
        for i in rng.sample_distinct(n, k) {
            negative[i] = true;
        }
        let grid = Grid::from_fn(params.width, params.height, Boundary::Toroidal, |p| {
            let i = p.y * params.width + p.x;
            SocialAgent {
                attitude: if negative[i] {
                    Attitude::Negative
                } else {
                    Attitude::Positive
                },
                persuasiveness: params.p_max * rng.next_f64_open_closed(),
                supportiveness: params.s_max * rng.next_f64_open_closed(),
            }
        })?;
        Ok(Self::from_grid(params, grid))
    }

    /// Wraps an existing population; the grid is treated as a torus.
    pub fn from_grid(params: ImpactParams, grid: Grid<SocialAgent>) -> Self {
        let kernel = Kernel::new(&grid, &params);
        ImpactModel {
            params,
            grid,
            kernel,
            sweep: 0,
            last_flips: 0,
        }
    }

    pub fn grid(&self) -> &Grid<SocialAgent> {
        &self.grid
    }

    pub fn params(&self) -> &ImpactParams {
        &self.params
    }

    pub fn sweep_count(&self) -> u64 {
        self.sweep
    }

    /// Runs one sweep and returns the number of flips.
    pub fn sweep(&mut self) -> usize {
        self.last_flips = sweep_with(&mut self.grid, &self.kernel);
        self.sweep += 1;
        self.last_flips
    }

    pub fn metrics(&self) -> Metrics {
        impact_metrics(&self.grid, self.last_flips)
    }
}

/// minority_fraction, mean_like_fraction (same-attitude Moore neighbors),
/// cluster_count, largest_cluster_fraction and flips.
pub fn impact_metrics(grid: &Grid<SocialAgent>, flips: usize) -> Metrics {
    let clusters = detect_clusters(grid, attitude_of, NeighborhoodSpec::MOORE);
    Metrics::from([
        (
            names::MINORITY_FRACTION.to_string(),
            minority_fraction(grid),
        ),
        (
            names::MEAN_LIKE_FRACTION.to_string(),
            mean_like_neighbor_fraction(grid, attitude_of).unwrap_or(f64::NAN),
        ),
        (names::CLUSTER_COUNT.to_string(), clusters.len() as f64),
        (
            names::LARGEST_CLUSTER_FRACTION.to_string(),
            largest_cluster_fraction(&clusters, grid.len()),
        ),
        (names::FLIPS.to_string(), flips as f64),
    ])
}

impl Simulation for ImpactModel {
    type Cell = SocialAgent;

    fn tick(&self) -> u64 {
        self.sweep_count()
    }

    /// One sweep; settled when it changed nothing.
    fn step(&mut self) -> bool {
        self.sweep() == 0
    }

    fn view(&self) -> Grid<SocialAgent> {
        self.grid.clone()
    }

    fn metrics(&self) -> Metrics {
        ImpactModel::metrics(self)
    }
}

/// Sweeps until one makes no change or `max_sweeps` is reached. Records sweep
/// 0, every `snapshot_every`-th sweep, and the settled state if the run ends
/// between snapshot ticks.
pub fn run_impact(
    params: ImpactParams,
    seed: u64,
    max_sweeps: u64,
    snapshot_every: u64,
) -> Result<Trace<SocialAgent>> {
    let mut model = ImpactModel::new(params, seed)?;
    run_to_trace(
        &mut model,
        Schedule {
            ticks: max_sweeps,
            snapshot_every,
            stop_when_settled: true,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn agent(attitude: Attitude, p: f64, s: f64) -> SocialAgent {
        SocialAgent {
            attitude,
            persuasiveness: p,
            supportiveness: s,
        }
    }

    #[test]
    fn unanimous_world_has_no_persuasion() {
        let params = ImpactParams::default();
        let g = Grid::new(
            6,
            6,
            Boundary::Toroidal,
            agent(Attitude::Positive, 0.5, 0.5),
        )
        .unwrap();
        for pos in g.positions() {
            assert!(net_impact(&g, pos, &params) < 0.0);
        }
        let mut g2 = g.clone();
        for _ in 0..10 {
            assert_eq!(impact_sweep(&mut g2, &params), 0);
        }
        assert_eq!(g2, g);
    }

    #[test]
    fn root_sum_square_two_agents() {
        let params = ImpactParams {
            aggregation: Aggregation::RootSumSquare,
            ..ImpactParams::default()
        };
        let g = Grid::from_fn(2, 1, Boundary::Toroidal, |q| {
            agent(
                if q.x == 0 {
                    Attitude::Positive
                } else {
                    Attitude::Negative
                },
                0.9,
                0.3,
            )
        })
        .unwrap();
        assert!((net_impact(&g, Position::new(1, 0), &params) - 0.6).abs() < 1e-15);
        // 3x1: a partner on each side at distance 1, one agreeing, one not
        let g = Grid::from_fn(3, 1, Boundary::Toroidal, |q| {
            agent(
                [Attitude::Positive, Attitude::Positive, Attitude::Negative][q.x],
                0.4,
                0.3,
            )
        })
        .unwrap();
        let expect = 0.4 - (0.3f64.powi(2) * 2.0).sqrt();
        assert!((net_impact(&g, Position::new(0, 0), &params) - expect).abs() < 1e-15);
    }

    #[test]
    fn two_agents_at_distance_one() {
        // 2x1 torus: the pair sits at distance 1 both ways round, but the
        // minimum image counts the partner once.
        let params = ImpactParams::default();
        let (p, s) = (0.7, 0.4);
        let g = Grid::from_fn(2, 1, Boundary::Toroidal, |q| {
            agent(
                if q.x == 0 {
                    Attitude::Positive
                } else {
                    Attitude::Negative
                },
                p,
                s,
            )
        })
        .unwrap();
        let net = net_impact(&g, Position::new(0, 0), &params);
        assert!((net - (p - s)).abs() < 1e-15);
    }

    #[test]
    fn symmetric_tie_does_not_flip() {
        let params = ImpactParams::default();
        let mut g = Grid::from_fn(2, 1, Boundary::Toroidal, |q| {
            agent(
                if q.x == 0 {
                    Attitude::Positive
                } else {
                    Attitude::Negative
                },
                0.5,
                0.5,
            )
        })
        .unwrap();
        assert_eq!(net_impact(&g, Position::new(0, 0), &params), 0.0);
        assert_eq!(impact_sweep(&mut g, &params), 0);
    }

    #[test]
    fn kernel_matches_direct_sum() {
        for aggregation in [Aggregation::Linear, Aggregation::RootSumSquare] {
            let m = ImpactModel::new(
                ImpactParams {
                    width: 9,
                    height: 7,
                    aggregation,
                    ..ImpactParams::default()
                },
                3,
            )
            .unwrap();
            let kernel = Kernel::new(m.grid(), m.params());
            for pos in m.grid().positions() {
                let a = net_impact(m.grid(), pos, m.params());
                let b = kernel.net(m.grid(), pos);
                assert!(
                    (a - b).abs() < 1e-12 * a.abs().max(1.0),
                    "{pos}: {a} vs {b}"
                );
            }
        }
    }

    #[test]
    fn scaling_strengths_keeps_signs() {
        for aggregation in [Aggregation::Linear, Aggregation::RootSumSquare] {
            let m = ImpactModel::new(
                ImpactParams {
                    width: 10,
                    height: 10,
                    aggregation,
                    ..ImpactParams::default()
                },
                6,
            )
            .unwrap();
            let scaled = m.grid().map(|_, a| SocialAgent {
                persuasiveness: a.persuasiveness * 2.0,
                supportiveness: a.supportiveness * 2.0,
                ..*a
            });
            for pos in m.grid().positions() {
                let a = net_impact(m.grid(), pos, m.params());
                let b = net_impact(&scaled, pos, m.params());
                assert!((b - 2.0 * a).abs() < 1e-12 * a.abs().max(1.0));
                assert_eq!(a > 0.0, b > 0.0);
            }
        }
    }

    #[test]
    fn synchronous_update_uses_pre_sweep_state() {
        let params = ImpactParams {
            width: 8,
            height: 8,
            ..ImpactParams::default()
        };
        let m = ImpactModel::new(params.clone(), 12).unwrap();
        let expected: Vec<bool> = m
            .grid()
            .positions()
            .map(|p| net_impact(m.grid(), p, &params) > 0.0)
            .collect();
        let mut g = m.grid().clone();
        let flips = impact_sweep(&mut g, &params);
        assert_eq!(flips, expected.iter().filter(|&&f| f).count());
        for (i, (before, after)) in m.grid().cells().iter().zip(g.cells()).enumerate() {
            assert_eq!(before.attitude != after.attitude, expected[i]);
            assert_eq!(before.persuasiveness, after.persuasiveness);
        }
    }

    #[test]
    fn minority_fraction_values() {
        let mk = |neg: usize| {
            Grid::from_fn(10, 1, Boundary::Toroidal, |p| {
                agent(
                    if p.x < neg {
                        Attitude::Negative
                    } else {
                        Attitude::Positive
                    },
                    1.0,
                    1.0,
                )
            })
            .unwrap()
        };
        assert_eq!(minority_fraction(&mk(0)), 0.0);
        assert_eq!(minority_fraction(&mk(5)), 0.5);
        assert_eq!(minority_fraction(&mk(3)), 0.3);
        assert_eq!(minority_fraction(&mk(7)), 0.3);
    }

    #[test]
    fn initial_population() {
        let m = ImpactModel::new(ImpactParams::default(), 1).unwrap();
        assert_eq!(minority_fraction(m.grid()), 0.3);
        for a in m.grid().cells() {
            assert!(a.persuasiveness > 0.0 && a.persuasiveness <= 1.0);
            assert!(a.supportiveness > 0.0 && a.supportiveness <= 1.0);
        }
        assert!(ImpactModel::new(
            ImpactParams {
                distance_exponent: -1.0,
                ..ImpactParams::default()
            },
            1
        )
        .is_err());
    }
}
