use serde::{Deserialize, Serialize};

use super::grid::{Grid, Position};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NeighborhoodKind {
    /// Chebyshev ball: the eight surrounding cells at radius 1.
    Moore,
    /// Manhattan ball: the four orthogonal cells at radius 1.
    VonNeumann,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeighborhoodSpec {
    pub kind: NeighborhoodKind,
    pub radius: u32,
}

impl NeighborhoodSpec {
    pub const MOORE: NeighborhoodSpec = NeighborhoodSpec {
        kind: NeighborhoodKind::Moore,
        radius: 1,
    };
    pub const VON_NEUMANN: NeighborhoodSpec = NeighborhoodSpec {
        kind: NeighborhoodKind::VonNeumann,
        radius: 1,
    };

    pub fn new(kind: NeighborhoodKind, radius: u32) -> Self {
        assert!(radius >= 1, "neighborhood radius must be at least 1");
        NeighborhoodSpec { kind, radius }
    }

    fn includes(&self, dx: i64, dy: i64) -> bool {
        let r = self.radius as i64;
        match self.kind {
            NeighborhoodKind::Moore => dx.abs().max(dy.abs()) <= r,
            NeighborhoodKind::VonNeumann => dx.abs() + dy.abs() <= r,
        }
    }
}

/// Positions around `pos` within the neighborhood, excluding `pos` itself.
///
/// Toroidal grids wrap; bounded grids drop out-of-range cells. The result
/// is sorted row-major by resolved coordinate and contains no duplicates, so
/// on a torus with a side of at most `2 * radius` the count shrinks below
/// the nominal `(2r+1)^2 - 1` (Moore) because wrapped offsets coincide.
pub fn neighborhood<T>(world: &Grid<T>, pos: Position, spec: NeighborhoodSpec) -> Vec<Position> {
    let mut out = Vec::with_capacity(8);
    neighborhood_into(world, pos, spec, &mut out);
    out
}

/// Like [`neighborhood`], reusing `out`'s allocation.
pub fn neighborhood_into<T>(
    world: &Grid<T>,
    pos: Position,
    spec: NeighborhoodSpec,
    out: &mut Vec<Position>,
) {
    debug_assert!(world.contains(pos));
    out.clear();
    let r = spec.radius as i64;
    let (cx, cy) = (pos.x as i64, pos.y as i64);
    for dy in -r..=r {
        for dx in -r..=r {
            if (dx, dy) == (0, 0) || !spec.includes(dx, dy) {
                continue;
            }
            if let Some(p) = world.resolve(cx + dx, cy + dy) {
                if p != pos {
                    out.push(p);
                }
            }
        }
    }
    out.sort_unstable_by_key(|p| (p.y, p.x));
    out.dedup();
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::Boundary;

    fn grid(w: usize, h: usize, b: Boundary) -> Grid<()> {
        Grid::new(w, h, b, ()).unwrap()
    }

    #[test]
    fn interior_moore_has_eight() {
        let g = grid(10, 10, Boundary::Bounded);
        assert_eq!(
            neighborhood(&g, Position::new(5, 5), NeighborhoodSpec::MOORE).len(),
            8
        );
    }

    #[test]
    fn bounded_corner_and_edge() {
        let g = grid(10, 10, Boundary::Bounded);
        let corner = neighborhood(&g, Position::new(0, 0), NeighborhoodSpec::MOORE);
        assert_eq!(
            corner,
            vec![
                Position::new(1, 0),
                Position::new(0, 1),
                Position::new(1, 1)
            ]
        );
        assert_eq!(
            neighborhood(&g, Position::new(4, 0), NeighborhoodSpec::MOORE).len(),
            5
        );
        assert_eq!(
            neighborhood(&g, Position::new(9, 4), NeighborhoodSpec::MOORE).len(),
            5
        );
    }

    #[test]
    fn torus_corner_wraps() {
        let g = grid(10, 10, Boundary::Toroidal);
        let n = neighborhood(&g, Position::new(0, 0), NeighborhoodSpec::MOORE);
        assert_eq!(n.len(), 8);
        assert!(n.contains(&Position::new(9, 9)));
        // row-major
        assert_eq!(n[0], Position::new(1, 0));
        assert_eq!(n[7], Position::new(9, 9));
    }

    #[test]
    fn von_neumann_counts() {
        let g = grid(10, 10, Boundary::Bounded);
        assert_eq!(
            neighborhood(&g, Position::new(5, 5), NeighborhoodSpec::VON_NEUMANN).len(),
            4
        );
        assert_eq!(
            neighborhood(&g, Position::new(0, 0), NeighborhoodSpec::VON_NEUMANN).len(),
            2
        );
        let r2 = NeighborhoodSpec::new(NeighborhoodKind::VonNeumann, 2);
        assert_eq!(neighborhood(&g, Position::new(5, 5), r2).len(), 12);
    }

    #[test]
    fn small_torus_deduplicates() {
        // 2x2 torus: every other cell is a neighbor, reached several ways.
        let g = grid(2, 2, Boundary::Toroidal);
        assert_eq!(
            neighborhood(&g, Position::new(0, 0), NeighborhoodSpec::MOORE).len(),
            3
        );
        // 1x1 torus: no neighbors at all.
        let g = grid(1, 1, Boundary::Toroidal);
        assert!(neighborhood(&g, Position::new(0, 0), NeighborhoodSpec::MOORE).is_empty());
        // 3-wide, radius 2: 3x5 torus has 14 other cells, all within reach.
        let g = grid(3, 5, Boundary::Toroidal);
        let r2 = NeighborhoodSpec::new(NeighborhoodKind::Moore, 2);
        assert_eq!(neighborhood(&g, Position::new(1, 2), r2).len(), 14);
    }
}
