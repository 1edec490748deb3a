use crate::engine::{neighborhood_into, Grid, NeighborhoodSpec, Position};
use crate::error::{Error, Result};

/// Same-kind counts among the occupied Moore neighbors of a cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LikeFraction {
    pub same: usize,
    pub total: usize,
    /// `same / total`; `None` when no neighbor is occupied.
    pub fraction: Option<f64>,
}

impl LikeFraction {
    pub fn new(same: usize, total: usize) -> Self {
        let fraction = (total > 0).then(|| same as f64 / total as f64);
        LikeFraction {
            same,
            total,
            fraction,
        }
    }
}

/// Like-neighbor counts for the occupant at `pos`.
///
/// `kind` returns `None` for unoccupied cells; those are excluded from both
/// counts. Errors with [`Error::NoResident`] if `pos` itself is unoccupied.
pub fn like_fraction_by<T, K, F>(world: &Grid<T>, pos: Position, kind: F) -> Result<LikeFraction>
where
    K: PartialEq,
    F: Fn(&T) -> Option<K>,
{
    let own = kind(world.get(pos)).ok_or(Error::NoResident(pos))?;
    let mut around = Vec::with_capacity(8);
    neighborhood_into(world, pos, NeighborhoodSpec::MOORE, &mut around);
    let (mut same, mut total) = (0, 0);
    for n in around {
        if let Some(k) = kind(world.get(n)) {
            total += 1;
            if k == own {
                same += 1;
            }
        }
    }
    Ok(LikeFraction::new(same, total))
}

/// Mean like-neighbor fraction over all occupants with at least one
/// occupied neighbor.
pub fn mean_like_neighbor_fraction<T, K, F>(world: &Grid<T>, kind: F) -> Result<f64>
where
    K: PartialEq,
    F: Fn(&T) -> Option<K>,
{
    let (mut sum, mut n) = (0.0, 0usize);
    for pos in world.positions() {
        if kind(world.get(pos)).is_none() {
            continue;
        }
        if let Some(f) = like_fraction_by(world, pos, &kind)?.fraction {
            sum += f;
            n += 1;
        }
    }
    if n == 0 {
        return Err(Error::MetricUndefined("mean_like_fraction"));
    }
    Ok(sum / n as f64)
}

/// Normalized Shannon entropy of the item distribution over square blocks.
///
/// The grid is cut into `(w/block) x (h/block)` blocks; with `q_i` the share
/// of items in block `i` the result is `-sum q_i ln q_i / ln(#blocks)`, in
/// `[0, 1]`. A single block yields 0.
pub fn spatial_entropy<T, F>(world: &Grid<T>, block: usize, is_item: F) -> Result<f64>
where
    F: Fn(&T) -> bool,
{
    if block == 0 || !world.width().is_multiple_of(block) || !world.height().is_multiple_of(block) {
        return Err(Error::config(
            "entropy_block",
            format!(
                "block side {block} must divide both grid dimensions {}x{}",
                world.width(),
                world.height()
            ),
        ));
    }
    let bw = world.width() / block;
    let bh = world.height() / block;
    let mut counts = vec![0usize; bw * bh];
    let mut total = 0usize;
    for (pos, cell) in world.iter() {
        if is_item(cell) {
            counts[(pos.y / block) * bw + pos.x / block] += 1;
            total += 1;
        }
    }
    if total == 0 {
        return Err(Error::MetricUndefined("spatial_entropy"));
    }
    if counts.len() == 1 {
        return Ok(0.0);
    }
    let h: f64 = counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let q = c as f64 / total as f64;
            -q * q.ln()
        })
        .sum();
    Ok((h / (counts.len() as f64).ln()).clamp(0.0, 1.0))
}
