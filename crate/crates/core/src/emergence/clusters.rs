use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::engine::{neighborhood_into, Grid, NeighborhoodSpec, Position};

/// A maximal connected set of same-label cells.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cluster<L> {
    pub label: L,
    /// Row-major sorted.
    pub members: Vec<Position>,
    /// Mean member coordinate `(x, y)`. On a torus the members are unwrapped
    /// around the first member before averaging and the result is wrapped
    /// back into the grid.
    pub centroid: (f64, f64),
}

impl<L> Cluster<L> {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Connected components of the cells `selector` maps to a label.
///
/// Two selected cells are connected when they carry equal labels and one lies
/// in the other's `adjacency` neighborhood. Clusters come out ordered by their
/// smallest row-major member.
pub fn detect_clusters<T, L, F>(
    world: &Grid<T>,
    selector: F,
    adjacency: NeighborhoodSpec,
) -> Vec<Cluster<L>>
where
    L: PartialEq + Clone,
    F: Fn(&T) -> Option<L>,
{
    let labels: Vec<Option<L>> = world.cells().iter().map(&selector).collect();
    let mut seen = vec![false; world.len()];
    let mut clusters = Vec::new();
    let mut queue = VecDeque::new();
    let mut around = Vec::with_capacity(8);

    for start in 0..world.len() {
        let Some(label) = labels[start].clone() else {
            continue;
        };
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let origin = world.position_of(start);
        // (position, unwrapped x, unwrapped y)
        queue.push_back((origin, origin.x as i64, origin.y as i64));
        let mut members = Vec::new();
        let (mut sx, mut sy) = (0i64, 0i64);

        while let Some((pos, ux, uy)) = queue.pop_front() {
            members.push(pos);
            sx += ux;
            sy += uy;
            neighborhood_into(world, pos, adjacency, &mut around);
            for &n in &around {
                let i = world.index_of(n);
                if seen[i] || labels[i].as_ref() != Some(&label) {
                    continue;
                }
                seen[i] = true;
                let (dx, dy) = world.displacement(pos, n);
                queue.push_back((n, ux + dx, uy + dy));
            }
        }

        let k = members.len() as f64;
        let (mut cx, mut cy) = (sx as f64 / k, sy as f64 / k);
        if world.boundary() == crate::engine::Boundary::Toroidal {
            cx = cx.rem_euclid(world.width() as f64);
            cy = cy.rem_euclid(world.height() as f64);
        }
        members.sort_unstable_by_key(|p| (p.y, p.x));
        clusters.push(Cluster {
            label,
            members,
            centroid: (cx, cy),
        });
    }
    clusters
}

/// Size of the largest cluster divided by `total`; 0 when there are none.
pub fn largest_cluster_fraction<L>(clusters: &[Cluster<L>], total: usize) -> f64 {
    if total == 0 {
        return 0.0;
    }
    clusters.iter().map(Cluster::size).max().unwrap_or(0) as f64 / total as f64
}
