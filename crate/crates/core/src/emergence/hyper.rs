//! Nested structures: cells form clusters, clusters near one another form
//! groups, groups form groups of groups, up to a requested depth.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::clusters::Cluster;
use crate::engine::Position;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Structure {
    /// Indices into the previous level; empty at level 1.
    pub members: Vec<usize>,
    /// All cells covered, row-major sorted.
    pub cells: Vec<Position>,
    /// Cell-count weighted mean of member centroids.
    pub centroid: (f64, f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructureLevel {
    pub level: usize,
    pub structures: Vec<Structure>,
}

/// Builds levels `1..` from `clusters`.
///
/// Level 1 holds one structure per clustered cell and level 2 one per
/// cluster. Level `k + 1` groups the level-`k` structures into connected
/// components of the relation "centroid distance <= `linking_distance * (k - 1)`"
/// (plain Euclidean distance). Construction stops at `max_level`, or as
/// soon as a built level above 2 holds at most one structure.
///
/// Panics if `max_level < 2` or `linking_distance` is not positive.
pub fn build_hyperstructure<L>(
    clusters: &[Cluster<L>],
    linking_distance: f64,
    max_level: usize,
) -> Vec<StructureLevel> {
    assert!(max_level >= 2, "max_level must be at least 2");
    assert!(linking_distance > 0.0, "linking_distance must be positive");

    let mut cells: Vec<Position> = clusters.iter().flat_map(|c| c.members.clone()).collect();
    cells.sort_unstable_by_key(|p| (p.y, p.x));
    let level1 = StructureLevel {
        level: 1,
        structures: cells
            .iter()
            .map(|&p| Structure {
                members: Vec::new(),
                cells: vec![p],
                centroid: (p.x as f64, p.y as f64),
            })
            .collect(),
    };
    let cell_index = |p: &Position| {
        cells
            .binary_search_by_key(&(p.y, p.x), |q| (q.y, q.x))
            .unwrap()
    };
    let level2 = StructureLevel {
        level: 2,
        structures: clusters
            .iter()
            .map(|c| Structure {
                members: c.members.iter().map(cell_index).collect(),
                cells: c.members.clone(),
                centroid: c.centroid,
            })
            .collect(),
    };

    let mut levels = vec![level1, level2];
    for k in 2..max_level {
        let threshold = linking_distance * (k - 1) as f64;
        let next = link(&levels[k - 1].structures, threshold);
        let done = next.len() <= 1;
        levels.push(StructureLevel {
            level: k + 1,
            structures: next,
        });
        if done {
            break;
        }
    }
    levels
}

fn link(prev: &[Structure], threshold: f64) -> Vec<Structure> {
    let n = prev.len();
    let close = |a: &Structure, b: &Structure| {
        let dx = a.centroid.0 - b.centroid.0;
        let dy = a.centroid.1 - b.centroid.1;
        (dx * dx + dy * dy).sqrt() <= threshold
    };
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut members = Vec::new();
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            members.push(i);
            for j in 0..n {
                if !seen[j] && close(&prev[i], &prev[j]) {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        members.sort_unstable();
        let mut cells: Vec<Position> = members
            .iter()
            .flat_map(|&i| prev[i].cells.clone())
            .collect();
        cells.sort_unstable_by_key(|p| (p.y, p.x));
        let total: f64 = members.iter().map(|&i| prev[i].cells.len() as f64).sum();
        let (sx, sy) = members.iter().fold((0.0, 0.0), |(sx, sy), &i| {
            let w = prev[i].cells.len() as f64;
            (sx + w * prev[i].centroid.0, sy + w * prev[i].centroid.1)
        });
        out.push(Structure {
            members,
            cells,
            centroid: (sx / total, sy / total),
        });
    }
    out
}
